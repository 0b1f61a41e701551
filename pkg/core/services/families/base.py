"""
矩阵族抽象基类
定义厄米单李代数矩阵实现的统一接口
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from core.entities.errors import ContractViolation
from core.entities.iso_type import IsoType
from core.entities.realization_model import CLASS_CAYLEY
from core.entities.scalar import Scalar, to_qq
from core.services.exact_linalg import SparseVector
from infrastructure.logger import get_logger

logger = get_logger()

Entries = Dict[Tuple[int, int], object]


# ---------------------------------------------------------------------------
# 矩阵工具
# ---------------------------------------------------------------------------

def from_entries(size: int, entries: Entries) -> DomainMatrix:
    """由 {(i, j): 值} 构造 size×size 稀疏矩阵"""
    dod: Dict[int, Dict[int, Scalar]] = {}
    for (i, j), v in entries.items():
        q = to_qq(v)
        if q:
            dod.setdefault(i, {})[j] = dod.get(i, {}).get(j, QQ(0)) + q
    dod = {i: {j: v for j, v in row.items() if v} for i, row in dod.items()}
    return DomainMatrix.from_dod({i: r for i, r in dod.items() if r}, (size, size), QQ)


def elementary(size: int, i: int, j: int) -> DomainMatrix:
    """矩阵单位 E_ij"""
    return from_entries(size, {(i, j): 1})


def diagonal(values) -> DomainMatrix:
    """对角矩阵"""
    values = list(values)
    return from_entries(len(values), {(i, i): v for i, v in enumerate(values)})


def block_diag(*blocks: DomainMatrix) -> DomainMatrix:
    """分块对角矩阵"""
    size = sum(b.shape[0] for b in blocks)
    entries: Entries = {}
    offset = 0
    for b in blocks:
        for i, row in b.to_dod().items():
            for j, v in row.items():
                entries[(offset + i, offset + j)] = v
        offset += b.shape[0]
    return from_entries(size, entries)


def block_2x2(a: DomainMatrix, b: DomainMatrix, c: DomainMatrix, d: DomainMatrix) -> DomainMatrix:
    """[[A, B], [C, D]]（各块同为 n×n）"""
    n = a.shape[0]
    entries: Entries = {}
    for block, (di, dj) in ((a, (0, 0)), (b, (0, n)), (c, (n, 0)), (d, (n, n))):
        for i, row in block.to_dod().items():
            for j, v in row.items():
                entries[(di + i, dj + j)] = v
    return from_entries(2 * n, entries)


def zero_matrix(n: int) -> DomainMatrix:
    """零矩阵（稀疏）"""
    return from_entries(n, {})


def realify(real: DomainMatrix, imag: Optional[DomainMatrix] = None) -> DomainMatrix:
    """复矩阵 A + iB 的实化 [[A, −B], [B, A]]"""
    n = real.shape[0]
    imag = imag if imag is not None else zero_matrix(n)
    return block_2x2(real, -imag, imag, real)


def flatten(m: DomainMatrix) -> SparseVector:
    """按行展开为长度 size² 的稀疏向量"""
    size = m.shape[1]
    return {i * size + j: v for i, row in m.to_dod().items() for j, v in row.items() if v}


def unflatten(vec, size: int) -> DomainMatrix:
    """flatten 的逆"""
    items = vec.items() if isinstance(vec, dict) else enumerate(vec)
    return from_entries(size, {(k // size, k % size): v for k, v in items if v})


def commutator(a: DomainMatrix, b: DomainMatrix) -> DomainMatrix:
    """[A, B] = AB − BA"""
    return a * b - b * a


def linear_constraints(size: int, f: Callable[[DomainMatrix], DomainMatrix]) -> List[SparseVector]:
    """
    线性条件 f(X) = 0 的方程组（未知数为 X 的 size² 个元素）

    对每个矩阵单位 E_rc 计算 f(E_rc)，按输出位置收集系数
    """
    rows: Dict[int, SparseVector] = {}
    for r in range(size):
        for c in range(size):
            image = f(elementary(size, r, c))
            for a, row in image.to_dod().items():
                for b, v in row.items():
                    if v:
                        rows.setdefault(a * size + b, {})[r * size + c] = v
    return list(rows.values())


# ---------------------------------------------------------------------------
# 对合规格
# ---------------------------------------------------------------------------

@dataclass
class InvolutionSpec:
    """
    标准对合的构造规格

    conjugator 为 None 表示 Cayley 型 τ_H = exp(iπ ad H)；
    否则 τ = Ad(P)，P 为实矩阵（P² 为数量矩阵）
    """

    name: str
    tau_class: str
    fixed_label: IsoType
    fixed_dim: int
    fixed_rank: int
    coroot_perm: Tuple[int, ...]
    conjugator: Optional[DomainMatrix] = None
    alternate: Optional[str] = None

    @property
    def is_cayley(self) -> bool:
        """是否 Cayley 型"""
        return self.tau_class == CLASS_CAYLEY


class MatrixFamily(ABC):
    """厄米单李代数矩阵族抽象基类"""

    family = ""

    def __init__(self, params: Tuple[int, ...]):
        """
        初始化矩阵族

        Args:
            params: 族参数

        Raises:
            ContractViolation: 参数超出有效范围
        """
        self.params = tuple(int(p) for p in params)
        self.validate_params()
        self.logger = logger

    @abstractmethod
    def validate_params(self) -> None:
        """
        校验参数范围

        Raises:
            ContractViolation: 参数无效
        """
        raise NotImplementedError

    @property
    @abstractmethod
    def size(self) -> int:
        """实矩阵的阶"""
        raise NotImplementedError

    @abstractmethod
    def constraints(self) -> List[SparseVector]:
        """定义该李代数的线性方程（未知数为矩阵元素）"""
        raise NotImplementedError

    @abstractmethod
    def coroots(self) -> List[DomainMatrix]:
        """余根 H_1, …, H_r"""
        raise NotImplementedError

    @abstractmethod
    def h_element(self) -> DomainMatrix:
        """H-元素 H₀"""
        raise NotImplementedError

    @abstractmethod
    def expected_dim(self) -> int:
        """维数公式"""
        raise NotImplementedError

    @abstractmethod
    def iso_type(self) -> IsoType:
        """同构类型"""
        raise NotImplementedError

    @abstractmethod
    def is_tube(self) -> bool:
        """是否管型"""
        raise NotImplementedError

    @abstractmethod
    def expected_multiplicities(self) -> Dict[str, int]:
        """
        限制根重数：long（±2ε_k）、middle（±ε_k±ε_l）、short（±ε_k）

        Returns:
            各类根的重数，0 表示不出现
        """
        raise NotImplementedError

    def involution_specs(self) -> List[InvolutionSpec]:
        """标准对合规格（默认无）"""
        return []

    @property
    def label(self) -> str:
        """名称"""
        return self.iso_type().display()

    def _require(self, condition: bool, message: str) -> None:
        """参数校验辅助"""
        if not condition:
            raise ContractViolation(f"{self.family}{self.params}: {message}")
