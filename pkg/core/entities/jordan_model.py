"""
Jordan 代数实体模型
欧氏 Jordan 代数、Jordan 标架、Peirce 分解与 Jordan 对合
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from core.entities.errors import ContractViolation
from core.entities.scalar import Scalar, ZERO, format_qq, to_qq
from core.entities.subspace import Subspace

ProductTable = Dict[Tuple[int, int], Dict[int, Scalar]]

# 对合分类
SPLIT_SIMPLE = "split-simple"
PEIRCE_REFLECTION = "split-peirce-reflection"
NONSPLIT = "nonsplit"
INVOLUTION_CLASSES = (SPLIT_SIMPLE, PEIRCE_REFLECTION, NONSPLIT)

PROVENANCE_DIRECT = "direct"
PROVENANCE_GRADING = "from-grading"


@dataclass
class JordanAlgebra:
    """
    结构常数 Jordan 代数实体

    product 只保存 i ≤ j 的非零乘积 e_i·e_j，对称部分在 table 中补齐；
    inner 为内积的 Gram 矩阵，unit 为单位元坐标。
    由李代数分次抽取时 embedding 记录 𝔤₁(h) 在李代数坐标中的子空间。
    """

    dim: int
    product: ProductTable
    unit: Tuple[Scalar, ...]
    inner: DomainMatrix
    label: str = ""
    provenance: str = PROVENANCE_DIRECT
    rank: Optional[int] = None
    embedding: Optional[Subspace] = None
    table: ProductTable = field(init=False, repr=False, compare=False)
    cache: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        """验证数据并补齐对称表"""
        if self.dim < 0:
            raise ContractViolation(f"Jordan 代数维数不能为负: {self.dim}")
        table: ProductTable = {}
        for (i, j), out in self.product.items():
            if not (0 <= i <= j < self.dim):
                raise ContractViolation(f"乘积下标必须满足 0 ≤ i ≤ j < dim: ({i}, {j})")
            clean = {k: to_qq(v) for k, v in out.items() if v}
            if any(not (0 <= k < self.dim) for k in clean):
                raise ContractViolation(f"乘积 e_{i}·e_{j} 的输出下标越界")
            if clean:
                table[(i, j)] = clean
                table[(j, i)] = clean
        self.product = {key: val for key, val in table.items() if key[0] <= key[1]}
        self.table = table
        self.cache = {}
        self.unit = tuple(to_qq(v) for v in self.unit)
        if len(self.unit) != self.dim:
            raise ContractViolation(f"单位元坐标个数 {len(self.unit)} 与维数 {self.dim} 不一致")
        if self.inner.shape != (self.dim, self.dim):
            raise ContractViolation(f"内积 Gram 矩阵形状 {self.inner.shape} 与维数不符")
        if self.provenance not in (PROVENANCE_DIRECT, PROVENANCE_GRADING):
            raise ContractViolation(f"未知的来源: {self.provenance}")
        if self.embedding is not None and self.embedding.dim != self.dim:
            raise ContractViolation("嵌入子空间的维数与 Jordan 代数维数不一致")

    def basis_vector(self, i: int) -> Tuple[Scalar, ...]:
        """第 i 个基向量"""
        return tuple(to_qq(1) if k == i else ZERO for k in range(self.dim))

    def zero(self) -> Tuple[Scalar, ...]:
        """零元素"""
        return (ZERO,) * self.dim

    def to_dict(self) -> dict:
        """转换为字典"""
        return {
            "label": self.label,
            "dim": self.dim,
            "rank": self.rank,
            "provenance": self.provenance,
            "unit": [format_qq(v) for v in self.unit],
            "product": [
                {"i": i, "j": j, "out": {str(k): format_qq(v) for k, v in sorted(out.items())}}
                for (i, j), out in sorted(self.product.items())
            ],
        }


@dataclass(frozen=True)
class JordanType:
    """单 Jordan 代数的类型：秩 r、Peirce 常数 d 与族标签"""

    rank: int
    peirce: int
    family: str
    params: Tuple[int, ...] = ()

    def display(self) -> str:
        """文本标签，如 Herm(3,O)、M^10"""
        names = {"R": "R", "sym": "Sym", "hermC": "Herm", "hermH": "Herm", "hermO": "Herm"}
        fields = {"sym": "R", "hermC": "C", "hermH": "H", "hermO": "O"}
        if self.family == "R":
            return "R"
        if self.family == "mink":
            return f"M^{self.params[0]}"
        if self.family in fields:
            return f"{names[self.family]}({self.params[0]},{fields[self.family]})"
        return f"unidentified(r={self.rank}, d={self.peirce})"

    def to_dict(self) -> dict:
        """转换为字典"""
        return {"rank": self.rank, "d": self.peirce, "family": self.family,
                "params": list(self.params), "display": self.display()}


@dataclass
class JordanFrame:
    """Jordan 标架：两两正交的本原幂等元，和为单位元"""

    idempotents: List[Tuple[Scalar, ...]]

    def __post_init__(self):
        """验证数据"""
        self.idempotents = [tuple(to_qq(v) for v in c) for c in self.idempotents]
        if len({len(c) for c in self.idempotents}) > 1:
            raise ContractViolation("标架元素的坐标长度不一致")

    @property
    def rank(self) -> int:
        """标架大小"""
        return len(self.idempotents)

    def partial_sum(self, j: int) -> Tuple[Scalar, ...]:
        """c_1 + … + c_j"""
        if not self.idempotents:
            return ()
        n = len(self.idempotents[0])
        out = [ZERO] * n
        for c in self.idempotents[:j]:
            for k, v in enumerate(c):
                out[k] += v
        return tuple(out)

    def to_dict(self) -> dict:
        """转换为字典"""
        return {"idempotents": [[format_qq(v) for v in c] for c in self.idempotents]}


@dataclass
class PeirceDecomposition:
    """
    标架的 Peirce 分解 V = ⊕V_i ⊕ ⊕_{i<j} V_ij

    diagonal[i] = V₁(c_i)，off[(i, j)] = V_½(c_i) ∩ V_½(c_j)
    """

    frame: JordanFrame
    diagonal: List[Subspace]
    off: Dict[Tuple[int, int], Subspace]

    def __post_init__(self):
        """验证数据"""
        if len(self.diagonal) != self.frame.rank:
            raise ContractViolation("对角块个数与标架大小不一致")
        for (i, j) in self.off:
            if not (0 <= i < j < self.frame.rank):
                raise ContractViolation(f"非对角块下标无效: ({i}, {j})")

    def blocks(self) -> Dict[Tuple[int, ...], Subspace]:
        """下标集合 → 块（对角块用单元素元组）"""
        out: Dict[Tuple[int, ...], Subspace] = {(i,): s for i, s in enumerate(self.diagonal)}
        out.update(self.off)
        return out

    def off_dims(self) -> List[int]:
        """非对角块维数（按下标排序）"""
        return [space.dim for _, space in sorted(self.off.items())]

    def to_dict(self) -> dict:
        """转换为字典"""
        return {
            "rank": self.frame.rank,
            "diagonal_dims": [s.dim for s in self.diagonal],
            "off_dims": {f"{i},{j}": s.dim for (i, j), s in sorted(self.off.items())},
        }


@dataclass
class JordanInvolution:
    """Jordan 代数的对合自同构及其分类"""

    matrix: DomainMatrix
    classification: str
    fixed_subalgebra: JordanAlgebra
    fixed_types: List[JordanType] = field(default_factory=list)
    fixed_rank: int = 0
    ambient_rank: int = 0
    idempotent: Optional[Tuple[Scalar, ...]] = None
    frame: Optional[JordanFrame] = None

    def __post_init__(self):
        """验证数据"""
        if self.classification not in INVOLUTION_CLASSES:
            raise ContractViolation(f"未知的 Jordan 对合分类: {self.classification}")
        if self.classification == NONSPLIT and 2 * self.fixed_rank != self.ambient_rank:
            raise ContractViolation("非分裂对合要求 2·rank V^σ = rank V")
        if self.classification != NONSPLIT and self.fixed_rank != self.ambient_rank:
            raise ContractViolation("分裂对合要求 rank V^σ = rank V")

    @property
    def is_split(self) -> bool:
        """是否分裂"""
        return self.classification != NONSPLIT

    def fixed_label(self) -> str:
        """不动子代数的文本标签"""
        return "+".join(t.display() for t in self.fixed_types) or "0"

    def to_dict(self) -> dict:
        """转换为字典"""
        return {
            "classification": self.classification,
            "fixed_dim": self.fixed_subalgebra.dim,
            "fixed_rank": self.fixed_rank,
            "fixed_types": [t.to_dict() for t in self.fixed_types],
        }


def vector_sum(vectors: Sequence[Sequence]) -> Tuple[Scalar, ...]:
    """坐标向量之和"""
    vectors = list(vectors)
    if not vectors:
        return ()
    out = [ZERO] * len(vectors[0])
    for v in vectors:
        for k, x in enumerate(v):
            out[k] += to_qq(x)
    return tuple(out)
