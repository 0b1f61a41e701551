"""
楔形实体模型
分类输入、分类结果（带追踪记录）与命令行用例规格
"""
import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

from core.entities.errors import ContractViolation, ParseError
from core.entities.iso_type import IsoType
from core.entities.realization_model import InvolutionRecord, Realization
from core.entities.scalar import Scalar, format_qq, parse_qq, to_qq
from core.entities.subspace import Subspace

SCHEMA_VERSION = 1

# --tau 的别名
TAU_ALIASES = {"slc": "spc"}

_FAMILY = re.compile(r"[A-Za-z][A-Za-z0-9]*")


@dataclass
class WedgeInput:
    """
    一个分类用例：实现、对合与 𝔞_𝔥 坐标下的 h

    h_coords 的个数必须等于对合记录中 𝔞_𝔥 的维数
    """

    realization: Realization
    tau: InvolutionRecord
    h_coords: Tuple[Scalar, ...]

    def __post_init__(self):
        """验证数据"""
        self.h_coords = tuple(to_qq(c) for c in self.h_coords)
        if len(self.h_coords) != len(self.tau.a_h_basis):
            raise ContractViolation(
                f"h 的坐标个数 {len(self.h_coords)} 与 𝔞_𝔥 的维数 {len(self.tau.a_h_basis)} 不一致"
            )

    def a_coords(self) -> Tuple[Scalar, ...]:
        """
        h 在 𝔞 = span{H_k} 中的坐标

        𝔞_𝔥 的基元素是余根轨道和，因此 λ 在每条轨道上取常值
        """
        r = self.realization
        lam = [to_qq(0)] * r.rank
        perm = self.tau.coroot_perm or tuple(range(r.rank))
        index = 0
        for k, target in enumerate(perm):
            if target == k:
                lam[k] = self.h_coords[index]
                index += 1
            elif k < target:
                lam[k] = lam[target] = self.h_coords[index]
                index += 1
        return tuple(lam)

    def describe(self) -> str:
        """简短描述"""
        coords = ",".join(format_qq(c) for c in self.h_coords)
        return f"{self.realization.label}/{self.tau.name} h=({coords})"


@dataclass
class WedgeResult:
    """
    𝔤(τ, h) = 𝔤₋ ⊕ [𝔤₋, 𝔤₊] ⊕ 𝔤₊ 的计算结果

    c_plus / c_minus 为锥 C± 的线性张成，bracket_part 为 [𝔤₋, 𝔤₊]，
    trace 按步骤追加记录（h → h₀、𝔤_t、V^{−τ}、所用标架）
    """

    algebra: str
    params: Tuple[int, ...]
    tau_name: str
    tau_class: str
    h: Tuple[Scalar, ...]
    h0: Tuple[Scalar, ...]
    c_plus: Subspace
    c_minus: Subspace
    bracket_part: Subspace
    g_tau_h: Subspace
    iso: IsoType
    trace: List[Dict[str, object]] = field(default_factory=list)

    def __post_init__(self):
        """验证数据"""
        dims = {s.ambient_dim for s in (self.c_plus, self.c_minus, self.bracket_part, self.g_tau_h)}
        if len(dims) != 1:
            raise ContractViolation("结果子空间的环境维数不一致")
        if self.g_tau_h.dim != self.c_plus.dim + self.c_minus.dim + self.bracket_part.dim:
            raise ContractViolation("𝔤(τ,h) 的维数不等于三部分维数之和")

    @property
    def is_zero(self) -> bool:
        """楔形是否平凡"""
        return self.g_tau_h.is_zero()

    def to_dict(self) -> dict:
        """转换为字典（JSON 输出格式）"""
        return {
            "schema_version": SCHEMA_VERSION,
            "algebra": self.algebra,
            "params": list(self.params),
            "tau": self.tau_name,
            "tau_class": self.tau_class,
            "h": [format_qq(c) for c in self.h],
            "h0": [format_qq(c) for c in self.h0],
            "g_tau_h_dim": self.g_tau_h.dim,
            "c_plus_dim": self.c_plus.dim,
            "c_minus_dim": self.c_minus.dim,
            "bracket_dim": self.bracket_part.dim,
            "iso": self.iso.to_list(),
            "iso_display": self.iso.display(),
            "trace": list(self.trace),
        }


@dataclass(frozen=True)
class CaseSpec:
    """
    命令行用例规格

    algebra 形如 su:2,2 / sp:2 / sostar:4 / so2:5 / sl2:2 / kkt:hermO3 / kkt:sym:2；
    tau 为对合名或下标；h 为逗号分隔的有理数，或 enumerate
    """

    family: str
    params: Tuple[int, ...]
    tau: Union[str, int, None] = None
    h: Optional[Tuple[Scalar, ...]] = None
    enumerate_all: bool = False

    @classmethod
    def parse_algebra(cls, text: str) -> Tuple[str, Tuple[int, ...]]:
        """
        解析代数规格

        Raises:
            ParseError: 格式错误，附带位置
        """
        raw = text.strip()
        if not raw:
            raise ParseError("代数规格为空", text, 0)
        parts = raw.split(":")
        starts = []
        pos = 0
        for part in parts:
            starts.append(pos)
            pos += len(part) + 1
        name_count = 2 if parts[0] == "kkt" else 1
        if len(parts) < name_count or len(parts) > name_count + 1:
            raise ParseError("代数规格应为 族名[:参数] 或 kkt:Jordan族[:参数]", text, 0)
        for part, start in zip(parts[:name_count], starts):
            if not _FAMILY.fullmatch(part):
                raise ParseError("族名只能包含字母与数字", text, start)
        family = ":".join(parts[:name_count])
        if len(parts) == name_count:
            return family, ()
        params = []
        offset = starts[name_count]
        for item in parts[name_count].split(","):
            if not re.fullmatch(r"\s*\d+\s*", item):
                raise ParseError("参数必须为非负整数", text, offset)
            params.append(int(item))
            offset += len(item) + 1
        return family, tuple(params)

    @classmethod
    def parse(cls, algebra: str, tau: Optional[str] = None, h: Optional[str] = None) -> 'CaseSpec':
        """
        解析完整用例

        Raises:
            ParseError: 任一字段格式错误
        """
        family, params = cls.parse_algebra(algebra)
        tau_value: Union[str, int, None] = None
        if tau is not None:
            stripped = tau.strip()
            if not stripped:
                raise ParseError("对合选择为空", tau, 0)
            tau_value = int(stripped) if stripped.isdigit() else TAU_ALIASES.get(stripped, stripped)
        coords = None
        enumerate_all = False
        if h is not None:
            if h.strip() == "enumerate":
                enumerate_all = True
            else:
                coords = parse_h(h)
        return cls(family=family, params=params, tau=tau_value, h=coords, enumerate_all=enumerate_all)

    def label(self) -> str:
        """规格文本"""
        if not self.params:
            return self.family
        return f"{self.family}:{','.join(str(p) for p in self.params)}"


def parse_h(text: str) -> Tuple[Scalar, ...]:
    """
    解析逗号分隔的有理数列表

    Raises:
        ParseError: 某一项不是 num/den 形式的有理数
    """
    out = []
    offset = 0
    for item in text.split(","):
        stripped = item.strip()
        if not re.fullmatch(r"[+-]?\d+(/\d+)?", stripped):
            raise ParseError("h 的分量必须是 num/den 形式的有理数", text, offset)
        try:
            out.append(parse_qq(stripped))
        except ContractViolation as e:
            raise ParseError(str(e), text, offset) from e
        offset += len(item) + 1
    return tuple(out)
