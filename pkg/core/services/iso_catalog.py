"""
同构类型目录
按 (维数, 实秩, 限制根重数分布) 识别单李代数，目录由各族的维数与重数公式生成
"""
from collections import Counter
from typing import Dict, Iterable, Optional, Set, Tuple

from core.entities.errors import ContractViolation
from core.entities.iso_type import SimpleType
from infrastructure.logger import get_logger

logger = get_logger()

# (dim, rank, ((重数, 根个数), …))
Signature = Tuple[int, int, Tuple[Tuple[int, int], ...]]


def signature_of(dim: int, rank: int, multiplicities: Iterable[int]) -> Signature:
    """由各非零限制根的重数得到签名"""
    counts = Counter(int(m) for m in multiplicities)
    return dim, rank, tuple(sorted(counts.items()))


def _signature(dim: int, rank: int, counts: Dict[int, int]) -> Signature:
    """按重数合并根个数"""
    merged: Counter = Counter()
    for mult, number in counts.items():
        if mult and number:
            merged[mult] += number
    return dim, rank, tuple(sorted(merged.items()))


def simple_dim(t: SimpleType) -> int:
    """
    单李代数的实维数

    Raises:
        ContractViolation: 未识别的类型
    """
    f, p = t.family, t.params
    if f == "sl2":
        return 3
    if f == "e7":
        return 133
    if f == "sp":
        return p[0] * (2 * p[0] + 1)
    if f == "su":
        return (p[0] + p[1]) ** 2 - 1
    if f == "sostar":
        return p[0] * (2 * p[0] - 1)
    if f == "so2":
        return (p[0] + 2) * (p[0] + 1) // 2
    if f == "soqq":
        return p[0] * (2 * p[0] - 1)
    if f == "spqq":
        return 2 * p[0] * (4 * p[0] + 1)
    if f == "soc":
        return p[0] * (p[0] - 1)
    if f == "so11":
        return 1
    if f == "sustar":
        return 4 * p[0] * p[0] - 1
    raise ContractViolation(f"无法计算 {t.display()} 的维数")


def tube_signature(r: int, d: int) -> Signature:
    """管型 (r, d)：长根 ±2ε_k 重数 1，中根 ±ε_k±ε_l 重数 d"""
    t = SimpleType.from_rank_and_peirce(r, d)
    counts: Counter = Counter({1: 2 * r})
    counts[d] += 2 * r * (r - 1)
    return _signature(simple_dim(t), r, counts)


def su_signature(p: int, q: int) -> Signature:
    """su(p,q)，p > q：BC_q，短根 ±ε_k 重数 2(p−q)"""
    counts: Counter = Counter({1: 2 * q})
    counts[2] += 2 * q * (q - 1)
    counts[2 * (p - q)] += 2 * q
    return _signature((p + q) ** 2 - 1, q, counts)


def sostar_odd_signature(n: int) -> Signature:
    """so*(2n)，n 为奇数：BC_r，r = (n−1)/2，中根与短根重数 4"""
    r = (n - 1) // 2
    counts: Counter = Counter({1: 2 * r})
    counts[4] += 2 * r * (r - 1) + 2 * r
    return _signature(n * (2 * n - 1), r, counts)


class IsoCatalog:
    """
    签名 → 单李代数

    同一签名对应互不同构的类型时，该签名记为歧义，查询返回 None
    """

    def __init__(self, max_rank: int = 8, max_peirce: int = 16):
        self.max_rank = max_rank
        self.max_peirce = max_peirce
        self._entries: Dict[Signature, SimpleType] = {}
        self._ambiguous: Set[Signature] = set()
        self._build()

    def _add(self, signature: Signature, t: SimpleType) -> None:
        existing = self._entries.get(signature)
        if existing is None:
            self._entries[signature] = t
        elif existing.key() != t.key():
            logger.warning(f"签名 {signature} 同时对应 {existing.display()} 与 {t.display()}")
            self._ambiguous.add(signature)

    def _build(self) -> None:
        """依次加入管型、非管型厄米代数与非厄米代数"""
        self._add(tube_signature(1, 0), SimpleType("sl2"))
        for d in range(1, self.max_peirce + 1):
            self._add(tube_signature(2, d), SimpleType.from_rank_and_peirce(2, d))
        for r in range(3, self.max_rank + 1):
            for d in (1, 2, 4):
                self._add(tube_signature(r, d), SimpleType.from_rank_and_peirce(r, d))
        self._add(tube_signature(3, 8), SimpleType("e7"))

        for q in range(1, self.max_rank + 1):
            for p in range(q + 1, q + self.max_peirce + 1):
                self._add(su_signature(p, q), SimpleType("su", (p, q)))
        for n in range(3, 2 * self.max_rank + 2, 2):
            self._add(sostar_odd_signature(n), SimpleType("sostar", (n,)))

        for q in range(1, self.max_rank + 1):
            if q >= 3:
                self._add(_signature(q * (2 * q - 1), q, {1: 2 * q * (q - 1)}),
                          SimpleType("soqq", (q,)))
            self._add(_signature(2 * q * (4 * q + 1), q, {3: 2 * q, 4: 2 * q * (q - 1)}),
                      SimpleType("spqq", (q,)))
            if q >= 3:
                self._add(_signature(2 * q * (2 * q - 1), q, {2: 2 * q * (q - 1)}),
                          SimpleType("soc", (2 * q,)))
            self._add(_signature(2 * q * (2 * q + 1), q, {2: 2 * q * q}),
                      SimpleType("soc", (2 * q + 1,)))
        # su*(2n)：A_{n−1}，全部根重数 4
        for n in range(2, self.max_rank + 2):
            self._add(_signature(4 * n * n - 1, n - 1, {4: n * (n - 1)}), SimpleType("sustar", (n,)))
        logger.debug(f"同构目录: {len(self._entries)} 个签名, {len(self._ambiguous)} 个歧义")

    def lookup(self, signature: Signature) -> Optional[SimpleType]:
        """按签名查找（无匹配或歧义时返回 None）"""
        if signature in self._ambiguous:
            return None
        return self._entries.get(signature)

    def signature(self, t: SimpleType) -> Optional[Signature]:
        """类型在目录中的签名（反查）"""
        for signature, entry in self._entries.items():
            if entry.key() == t.key():
                return signature
        return None

    def __len__(self) -> int:
        return len(self._entries)


_default_catalog: Optional[IsoCatalog] = None


def default_catalog() -> IsoCatalog:
    """全局目录实例"""
    global _default_catalog
    if _default_catalog is None:
        _default_catalog = IsoCatalog()
    return _default_catalog
