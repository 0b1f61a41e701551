"""
李代数实体模型
结构常数李代数、元素、分次与线性自同构
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from core.entities.errors import ContractViolation
from core.entities.scalar import Scalar, ZERO, format_qq, to_qq
from core.entities.subspace import Subspace

StructureTable = Dict[Tuple[int, int], Dict[int, Scalar]]


@dataclass
class LieAlgebra:
    """
    结构常数李代数实体

    structure 只保存 i < j 的非零括号 [e_i, e_j] = Σ_k c(i,j,k) e_k，
    反对称部分在 table 中自动补齐。
    """

    dim: int
    structure: StructureTable
    label: str = ""
    theta: Optional[DomainMatrix] = None
    matrix_realization: Optional[List[DomainMatrix]] = None
    table: StructureTable = field(init=False, repr=False, compare=False)
    cache: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        """验证数据并补齐反对称表"""
        if self.dim < 0:
            raise ContractViolation(f"李代数维数不能为负: {self.dim}")
        table: StructureTable = {}
        for (i, j), out in self.structure.items():
            if not (0 <= i < self.dim and 0 <= j < self.dim):
                raise ContractViolation(f"结构常数下标越界: ({i}, {j})")
            if i >= j:
                raise ContractViolation(f"结构常数只能给出 i < j 的括号: ({i}, {j})")
            clean = {k: to_qq(v) for k, v in out.items() if v}
            if any(not (0 <= k < self.dim) for k in clean):
                raise ContractViolation(f"括号 [{i}, {j}] 的输出下标越界")
            if clean:
                table[(i, j)] = clean
                table[(j, i)] = {k: -v for k, v in clean.items()}
        self.structure = {key: val for key, val in table.items() if key[0] < key[1]}
        self.table = table
        self.cache = {}
        if self.theta is not None and self.theta.shape != (self.dim, self.dim):
            raise ContractViolation(f"Cartan 对合矩阵形状 {self.theta.shape} 与维数不符")
        if self.matrix_realization is not None and len(self.matrix_realization) != self.dim:
            raise ContractViolation("矩阵实现的个数与维数不一致")

    def basis_element(self, i: int) -> 'LieElement':
        """第 i 个基向量"""
        return LieElement.unit(self.dim, i)

    def zero(self) -> 'LieElement':
        """零元素"""
        return LieElement.zero(self.dim)

    def to_dict(self) -> dict:
        """转换为字典"""
        return {
            "label": self.label,
            "dim": self.dim,
            "structure": [
                {"i": i, "j": j, "out": {str(k): format_qq(v) for k, v in sorted(out.items())}}
                for (i, j), out in sorted(self.structure.items())
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'LieAlgebra':
        """从字典创建（不含矩阵实现与 θ）"""
        structure = {
            (item["i"], item["j"]): {int(k): to_qq(v) for k, v in item["out"].items()}
            for item in data.get("structure", [])
        }
        return cls(dim=data.get("dim", 0), structure=structure, label=data.get("label", ""))


@dataclass(frozen=True)
class LieElement:
    """李代数元素（坐标向量）"""

    coords: Tuple[Scalar, ...]

    def __post_init__(self):
        """规范化坐标"""
        object.__setattr__(self, "coords", tuple(to_qq(c) for c in self.coords))

    @classmethod
    def zero(cls, dim: int) -> 'LieElement':
        """零元素"""
        return cls((ZERO,) * dim)

    @classmethod
    def unit(cls, dim: int, i: int) -> 'LieElement':
        """单位坐标向量"""
        coords = [ZERO] * dim
        coords[i] = to_qq(1)
        return cls(tuple(coords))

    @classmethod
    def from_sparse(cls, vec: Dict[int, Scalar], dim: int) -> 'LieElement':
        """由稀疏字典创建"""
        return cls(tuple(vec.get(i, ZERO) for i in range(dim)))

    @property
    def dim(self) -> int:
        """所在代数的维数"""
        return len(self.coords)

    def sparse(self) -> Dict[int, Scalar]:
        """稀疏字典表示"""
        return {i: c for i, c in enumerate(self.coords) if c}

    def is_zero(self) -> bool:
        """是否为零"""
        return not any(self.coords)

    def _check(self, other: 'LieElement'):
        if other.dim != self.dim:
            raise ContractViolation(f"元素维数不一致: {self.dim} 与 {other.dim}")

    def __add__(self, other: 'LieElement') -> 'LieElement':
        self._check(other)
        return LieElement(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: 'LieElement') -> 'LieElement':
        self._check(other)
        return LieElement(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> 'LieElement':
        return LieElement(tuple(-a for a in self.coords))

    def scale(self, factor) -> 'LieElement':
        """数乘"""
        q = to_qq(factor)
        return LieElement(tuple(q * a for a in self.coords))

    def to_list(self) -> List[str]:
        """文本坐标"""
        return [format_qq(c) for c in self.coords]


@dataclass
class Grading:
    """ad(h) 特征值分次"""

    generator: LieElement
    parts: Dict[Scalar, Subspace]
    scale: Scalar = field(default_factory=lambda: to_qq(1))

    def __post_init__(self):
        """验证数据"""
        dims = {space.ambient_dim for space in self.parts.values()}
        if len(dims) > 1:
            raise ContractViolation("分次各部分的环境维数不一致")

    @property
    def spectrum(self) -> List[Scalar]:
        """升序特征值"""
        return sorted(self.parts)

    def part(self, lam) -> Subspace:
        """特征值 λ 对应的子空间（不存在时为零子空间）"""
        lam = to_qq(lam)
        if lam in self.parts:
            return self.parts[lam]
        return Subspace.zero(self.generator.dim)

    def dims(self) -> Dict[str, int]:
        """各部分维数"""
        return {format_qq(lam): space.dim for lam, space in sorted(self.parts.items())}


@dataclass
class LinearAutomorphism:
    """作用在坐标上的线性映射"""

    matrix: DomainMatrix
    label: str = ""

    def __post_init__(self):
        """验证数据"""
        if not self.matrix.is_square:
            raise ContractViolation(f"自同构矩阵必须为方阵: {self.matrix.shape}")

    @property
    def dim(self) -> int:
        """作用空间维数"""
        return self.matrix.shape[0]


@dataclass
class RootData:
    """限制根数据：非零泛函 → 重数，零泛函单独记为中心化子维数"""

    roots: Dict[Tuple[Scalar, ...], int]
    centralizer_dim: int

    def multiplicities(self) -> List[int]:
        """去重后的重数集合（升序）"""
        return sorted(set(self.roots.values()))

    def to_dict(self) -> dict:
        """转换为字典"""
        return {
            "roots": [
                {"functional": [format_qq(v) for v in key], "mult": mult}
                for key, mult in sorted(self.roots.items())
            ],
            "centralizer_dim": self.centralizer_dim,
        }


def element_list(vectors: Sequence[Sequence]) -> List[LieElement]:
    """坐标序列转为元素列表"""
    return [LieElement(tuple(v)) for v in vectors]
