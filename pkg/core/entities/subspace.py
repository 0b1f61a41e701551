"""
子空间实体模型
以唯一的简化行阶梯形 (RREF) 表示有理向量空间的子空间
"""
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from core.entities.errors import ContractViolation
from core.entities.scalar import Scalar, ZERO, format_qq, to_qq

Vector = Tuple[Scalar, ...]


def vectors_to_matrix(vectors: Sequence[Sequence], ncols: int) -> DomainMatrix:
    """把若干向量按行组成稀疏 DomainMatrix"""
    dod: Dict[int, Dict[int, Scalar]] = {}
    for i, vec in enumerate(vectors):
        row = {j: to_qq(v) for j, v in enumerate(vec) if v}
        if row:
            dod[i] = row
    return DomainMatrix.from_dod(dod, (len(vectors), ncols), QQ)


def rref_rows(vectors: Sequence[Sequence], ncols: int) -> Tuple[Vector, ...]:
    """
    计算若干向量张成空间的 RREF 行（去掉零行）

    Args:
        vectors: 行向量序列
        ncols: 向量长度

    Returns:
        RREF 非零行，按主元列升序
    """
    nonzero = [vec for vec in vectors if any(vec)]
    if not nonzero:
        return ()
    reduced, pivots = vectors_to_matrix(nonzero, ncols).rref()
    dod = reduced.to_dod()
    rows = []
    for i in range(len(pivots)):
        entries = dod.get(i, {})
        rows.append(tuple(entries.get(j, ZERO) for j in range(ncols)))
    # 稀疏实现不保证行序，按首个非零列排序
    rows.sort(key=lambda r: next(j for j, v in enumerate(r) if v))
    return tuple(rows)


@dataclass(frozen=True)
class Subspace:
    """子空间实体（RREF 基，表示唯一）"""

    ambient_dim: int
    rows: Tuple[Vector, ...] = field(default=())

    def __post_init__(self):
        """验证数据"""
        if self.ambient_dim < 0:
            raise ContractViolation(f"环境维数不能为负: {self.ambient_dim}")
        last = -1
        for row in self.rows:
            if len(row) != self.ambient_dim:
                raise ContractViolation(
                    f"行长度 {len(row)} 与环境维数 {self.ambient_dim} 不一致"
                )
            lead = next((j for j, v in enumerate(row) if v), None)
            if lead is None or lead <= last or row[lead] != 1:
                raise ContractViolation("基不是简化行阶梯形")
            last = lead

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Sequence]) -> 'Subspace':
        """由任意向量组张成"""
        vectors = [tuple(to_qq(v) for v in vec) for vec in vectors]
        for vec in vectors:
            if len(vec) != ambient_dim:
                raise ContractViolation(
                    f"向量长度 {len(vec)} 与环境维数 {ambient_dim} 不一致"
                )
        return cls(ambient_dim, rref_rows(vectors, ambient_dim))

    @classmethod
    def zero(cls, ambient_dim: int) -> 'Subspace':
        """零子空间"""
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> 'Subspace':
        """全空间"""
        rows = tuple(
            tuple(QQ(1) if i == j else ZERO for j in range(ambient_dim))
            for i in range(ambient_dim)
        )
        return cls(ambient_dim, rows)

    @property
    def dim(self) -> int:
        """子空间维数"""
        return len(self.rows)

    @cached_property
    def pivots(self) -> Tuple[int, ...]:
        """各行主元所在列"""
        return tuple(next(j for j, v in enumerate(row) if v) for row in self.rows)

    @cached_property
    def matrix(self) -> DomainMatrix:
        """基向量按行组成的 DomainMatrix"""
        return vectors_to_matrix(self.rows, self.ambient_dim)

    @cached_property
    def sparse_rows(self) -> Tuple[Tuple[Tuple[int, Scalar], ...], ...]:
        """各基向量的非零分量 (列, 值)"""
        return tuple(tuple((j, v) for j, v in enumerate(row) if v) for row in self.rows)

    def is_zero(self) -> bool:
        """是否为零子空间"""
        return not self.rows

    def is_full(self) -> bool:
        """是否为全空间"""
        return self.dim == self.ambient_dim

    def basis(self) -> List[Vector]:
        """基向量列表"""
        return list(self.rows)

    def combine(self, coeffs: Sequence) -> Vector:
        """基向量的线性组合"""
        if len(coeffs) != self.dim:
            raise ContractViolation(f"系数个数 {len(coeffs)} 与维数 {self.dim} 不一致")
        out = [ZERO] * self.ambient_dim
        for c, row in zip(coeffs, self.sparse_rows):
            c = to_qq(c)
            if not c:
                continue
            for j, v in row:
                out[j] += c * v
        return tuple(out)

    def try_coordinates(self, vec: Sequence):
        """
        在 RREF 基下的坐标；不在子空间内时返回 None

        坐标即主元位置上的分量，再通过重构校验成员关系
        """
        if len(vec) != self.ambient_dim:
            raise ContractViolation(f"向量长度 {len(vec)} 与环境维数 {self.ambient_dim} 不一致")
        vec = tuple(to_qq(v) for v in vec)
        coeffs = tuple(vec[p] for p in self.pivots)
        if self.combine(coeffs) != vec:
            return None
        return coeffs

    def coordinates(self, vec: Sequence) -> Vector:
        """在 RREF 基下的坐标，不在子空间内时报错"""
        coeffs = self.try_coordinates(vec)
        if coeffs is None:
            raise ContractViolation("向量不在子空间内")
        return coeffs

    def contains(self, vec: Sequence) -> bool:
        """成员判定"""
        return self.try_coordinates(vec) is not None

    def contains_subspace(self, other: 'Subspace') -> bool:
        """other ⊆ self"""
        return all(self.contains(row) for row in other.rows)

    def join(self, *others: 'Subspace') -> 'Subspace':
        """子空间之和"""
        vectors = list(self.rows)
        for other in others:
            if other.ambient_dim != self.ambient_dim:
                raise ContractViolation("环境维数不一致，无法求和")
            vectors.extend(other.rows)
        return Subspace(self.ambient_dim, rref_rows(vectors, self.ambient_dim))

    def to_dict(self) -> dict:
        """转换为字典"""
        return {
            "ambient_dim": self.ambient_dim,
            "basis": [[format_qq(v) for v in row] for row in self.rows],
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'Subspace':
        """从字典创建"""
        return cls.span(data.get("ambient_dim", 0), data.get("basis", []))
