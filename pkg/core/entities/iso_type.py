"""
同构类型实体模型
符号化的同构标签：单个单李代数、两个的直和，或零代数
"""
import re
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from core.entities.errors import ContractViolation, ParseError

# 厄米单李代数用 (实秩 r, Peirce 常数 d) 唯一确定；r = 1 时 d 记为 0
HERMITIAN_FAMILIES = ("sl2", "sp", "su", "sostar", "so2", "e7")
# 非厄米（τ-不动部分）族
NONHERMITIAN_FAMILIES = ("soqq", "spqq", "soc", "so11", "sustar")
# 仅用于展示的命名标签（如不动代数 so(2,2)、sl(2,C)×R）
NAMED = "named"
UNIDENTIFIED = "unidentified"

_SUMMAND = re.compile(r"\s*(sl2|e7|so\*|su\*|su|sp|so)\s*(?:\(([^)]*)\))?\s*")


@dataclass(frozen=True)
class SimpleType:
    """单个（或已知的非单）李代数标签"""

    family: str
    params: Tuple[int, ...] = ()
    invariants: Tuple[Tuple[str, str], ...] = field(default=(), compare=False)

    def __post_init__(self):
        """验证数据"""
        if self.family not in HERMITIAN_FAMILIES + NONHERMITIAN_FAMILIES + (UNIDENTIFIED, NAMED):
            raise ContractViolation(f"未知的李代数族: {self.family}")
        object.__setattr__(self, "params", tuple(int(p) for p in self.params))
        self._validate_params()

    def _validate_params(self):
        """参数范围"""
        f, p = self.family, self.params
        expected = {"sl2": 0, "e7": 0, "so11": 0, "sp": 1, "sostar": 1, "so2": 1,
                    "soqq": 1, "spqq": 1, "soc": 1, "sustar": 1, "su": 2}
        if f in (UNIDENTIFIED, NAMED):
            return
        if len(p) != expected[f]:
            raise ContractViolation(f"{f} 需要 {expected[f]} 个参数, 实际 {len(p)}")
        if any(v < 1 for v in p):
            raise ContractViolation(f"{f} 的参数必须为正整数: {p}")
        if f == "su" and p[0] < p[1]:
            raise ContractViolation(f"su(p,q) 要求 p ≥ q: {p}")
        if f == "sostar" and p[0] < 3:
            raise ContractViolation(f"so*(2n) 要求 n ≥ 3: n = {p[0]}")
        if f == "sustar" and p[0] < 2:
            raise ContractViolation(f"su*(2n) 要求 n ≥ 2: n = {p[0]}")
        if f == "so2" and p[0] == 2:
            raise ContractViolation("so(2,2) 不是单李代数")

    def key(self) -> tuple:
        """
        规范键：同构的标签给出相同的键

        厄米管型用 (r, d)；非管型 su(p,q)、so*(4n+2) 单独编号，so*(6) ≅ su(3,1)
        """
        f, p = self.family, self.params
        if f == "sl2":
            return ("herm", 1, 0)
        if f == "sp":
            return ("herm", p[0], 1) if p[0] > 1 else ("herm", 1, 0)
        if f == "su":
            if p[0] == p[1]:
                return ("herm", p[0], 2) if p[0] > 1 else ("herm", 1, 0)
            return ("su", p[0], p[1])
        if f == "sostar":
            n = p[0]
            if n == 3:
                return ("su", 3, 1)
            if n % 2 == 0:
                return ("herm", n // 2, 4)
            return ("sostar", n)
        if f == "so2":
            n = p[0]
            if n == 1:
                return ("herm", 1, 0)
            return ("herm", 2, n - 2)
        if f == "e7":
            return ("herm", 3, 8)
        if f == "so11":
            return ("soqq", 1)
        return (f,) + p

    def canonical(self) -> 'SimpleType':
        """以规范代表元表示"""
        k = self.key()
        if k[0] == "herm":
            return SimpleType.from_rank_and_peirce(k[1], k[2])
        if k == ("su", 3, 1):
            return SimpleType("su", (3, 1))
        if k == ("soqq", 1):
            return SimpleType("so11")
        return self

    @classmethod
    def from_rank_and_peirce(cls, r: int, d: int) -> 'SimpleType':
        """
        由 (r, d) 得到厄米管型单李代数

        Raises:
            ContractViolation: (r, d) 不对应任何管型厄米单李代数
        """
        if r == 1:
            return cls("sl2")
        if d == 1:
            return cls("sp", (r,))
        if d == 2:
            return cls("su", (r, r))
        if d == 4:
            return cls("sostar", (2 * r,))
        if r == 2:
            return cls("so2", (d + 2,))
        if r == 3 and d == 8:
            return cls("e7")
        raise ContractViolation(f"(r, d) = ({r}, {d}) 不对应管型厄米单李代数")

    @property
    def is_hermitian(self) -> bool:
        """是否厄米单李代数"""
        return self.family in HERMITIAN_FAMILIES

    def display(self) -> str:
        """文本标签"""
        f, p = self.family, self.params
        if f in ("sl2", "e7"):
            return f
        if f == "sp":
            return f"sp({2 * p[0]})"
        if f == "su":
            return f"su({p[0]},{p[1]})"
        if f == "sostar":
            return f"so*({2 * p[0]})"
        if f == "so2":
            return f"so(2,{p[0]})"
        if f == "soqq":
            return f"so({p[0]},{p[0]})"
        if f == "so11":
            return "so(1,1)"
        if f == "spqq":
            return f"sp({p[0]},{p[0]})"
        if f == "soc":
            return f"so({p[0]},C)"
        if f == "sustar":
            return f"su*({2 * p[0]})"
        if f == NAMED:
            return dict(self.invariants).get("name", "?")
        details = ", ".join(f"{k}={v}" for k, v in self.invariants)
        return f"unidentified[{details}]"

    def to_dict(self) -> dict:
        """转换为字典"""
        data = {"family": self.family, "params": list(self.params)}
        if self.invariants:
            data["invariants"] = dict(self.invariants)
        return data

    @classmethod
    def from_dict(cls, data: dict) -> 'SimpleType':
        """从字典创建"""
        invariants = tuple(sorted((str(k), str(v)) for k, v in data.get("invariants", {}).items()))
        return cls(data["family"], tuple(data.get("params", [])), invariants)


@dataclass(frozen=True)
class IsoType:
    """同构类型：单李代数的形式直和（空表示零代数）"""

    summands: Tuple[SimpleType, ...] = ()

    @classmethod
    def zero(cls) -> 'IsoType':
        """零代数"""
        return cls(())

    @classmethod
    def of(cls, *summands: SimpleType) -> 'IsoType':
        """由若干单项组成"""
        return cls(tuple(summands))

    @property
    def is_zero(self) -> bool:
        """是否零代数"""
        return not self.summands

    @property
    def identified(self) -> bool:
        """全部单项均已识别"""
        return all(s.family != UNIDENTIFIED for s in self.summands)

    def key(self) -> tuple:
        """与直和次序无关的规范键（同构的标签给出相同的键）"""
        return tuple(s.key() for s in self.canonical().summands)

    def canonical(self) -> 'IsoType':
        """各单项取规范代表元并排序；非单的 so(2,2)、so(4,C) 展开为两个单项"""
        items = []
        for s in self.summands:
            items.extend(_expand(s.canonical()))
        items.sort(key=lambda s: s.key())
        return IsoType(tuple(items))

    def display(self) -> str:
        """文本标签，如 su(2,2)、sl2+sl2、0"""
        if self.is_zero:
            return "0"
        return "+".join(s.display() for s in self.summands)

    def to_list(self) -> List[dict]:
        """JSON 形式 [{family, params}]"""
        return [s.to_dict() for s in self.summands]

    @classmethod
    def from_list(cls, data: List[dict]) -> 'IsoType':
        """从 JSON 列表创建"""
        return cls(tuple(SimpleType.from_dict(item) for item in data))

    @classmethod
    def parse(cls, text: str) -> 'IsoType':
        """
        解析文本标签

        支持 sl2、e7、sp(2n)、sp(q,q)、su(p,q)、so*(2n)、su*(2n)、so(2,n)、so(q,q)、so(1,1)、
        so(m,C)，以 + 连接直和，0 表示零代数

        Raises:
            ParseError: 无法解析，附带出错位置
        """
        raw = text.strip()
        if raw == "0":
            return cls.zero()
        summands = []
        pos = 0
        for part in text.split("+"):
            summands.append(_parse_summand(part, text, pos))
            pos += len(part) + 1
        return cls(tuple(summands))


def _expand(s: SimpleType) -> List[SimpleType]:
    """so(2,2) ≅ sl2 ⊕ sl2，so(4,C) ≅ so(3,C) ⊕ so(3,C)"""
    if s.family == "soqq" and s.params == (2,):
        return [SimpleType("sl2"), SimpleType("sl2")]
    if s.family == "soc" and s.params == (4,):
        return [SimpleType("soc", (3,)), SimpleType("soc", (3,))]
    return [s]


def _parse_summand(part: str, text: str, offset: int) -> SimpleType:
    """解析单个直和项"""
    match = _SUMMAND.fullmatch(part)
    if not match:
        lead = len(part) - len(part.lstrip())
        raise ParseError("无法识别的李代数标签", text, offset + lead)
    name, arg_text = match.group(1), match.group(2)
    args: List[str] = [a.strip() for a in arg_text.split(",")] if arg_text else []
    arg_pos = offset + part.index("(") + 1 if arg_text is not None else offset
    if name in ("sl2", "e7"):
        if args:
            raise ParseError(f"{name} 不带参数", text, arg_pos)
        return SimpleType(name)
    complex_form = name == "so" and len(args) == 2 and args[1].upper() == "C"
    if complex_form:
        args = args[:1]
    if not all(re.fullmatch(r"\d+", a) for a in args):
        raise ParseError("参数必须为整数", text, arg_pos)
    values = [int(a) for a in args]
    if complex_form:
        return SimpleType("soc", (values[0],))
    try:
        return _summand_from_values(name, values, text, arg_pos)
    except ContractViolation as e:
        raise ParseError(str(e), text, arg_pos)


def _summand_from_values(name: str, values: List[int], text: str, pos: int) -> SimpleType:
    """按族名与整数参数构造"""
    if name == "su" and len(values) == 2:
        return SimpleType("su", (max(values), min(values)))
    if name == "sp" and len(values) == 1:
        if values[0] % 2:
            raise ParseError("sp(2n) 的参数必须为偶数", text, pos)
        return SimpleType("sp", (values[0] // 2,))
    if name == "sp" and len(values) == 2 and values[0] == values[1]:
        return SimpleType("spqq", (values[0],))
    if name == "so*" and len(values) == 1:
        if values[0] % 2:
            raise ParseError("so*(2n) 的参数必须为偶数", text, pos)
        return SimpleType("sostar", (values[0] // 2,))
    if name == "su*" and len(values) == 1:
        if values[0] % 2:
            raise ParseError("su*(2n) 的参数必须为偶数", text, pos)
        return SimpleType("sustar", (values[0] // 2,))
    if name == "so" and len(values) == 2:
        a, b = values
        if a == b == 1:
            return SimpleType("so11")
        if a == b:
            return SimpleType("soqq", (a,))
        if a == 2:
            return SimpleType("so2", (b,))
    raise ParseError(f"不支持的参数组合 {name}{tuple(values)}", text, pos)


def parse_iso(text: str) -> IsoType:
    """IsoType.parse 的函数形式"""
    return IsoType.parse(text)


def hermitian_from_key(key: tuple) -> Optional[SimpleType]:
    """规范键 → 厄米单李代数（非厄米键返回 None）"""
    if key and key[0] == "herm":
        return SimpleType.from_rank_and_peirce(key[1], key[2])
    return None


def named_type(text: str) -> IsoType:
    """仅用于展示的命名标签"""
    return IsoType.of(SimpleType(NAMED, (), (("name", text),)))
