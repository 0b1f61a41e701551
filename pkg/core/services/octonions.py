"""
合成代数服务
由 Cayley–Dickson 倍增得到 ℝ、ℂ、ℍ、𝕆 的乘法表，以及共轭、范数与交错律校验
"""
import random
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from sympy.polys.domains import QQ

from core.entities.errors import ContractViolation, ValidationError
from core.entities.scalar import Scalar, ZERO, to_qq

# 维数 → 名称
ALGEBRA_NAMES = {1: "R", 2: "C", 4: "H", 8: "O"}

Vector = Tuple[Scalar, ...]


def _level(dim: int) -> int:
    """倍增次数"""
    levels = {1: 0, 2: 1, 4: 2, 8: 3}
    if dim not in levels:
        raise ContractViolation(f"合成代数的维数只能是 1, 2, 4, 8，实际 {dim}")
    return levels[dim]


def _cd_conj(x: Vector) -> Vector:
    """(a, b)* = (a*, −b)"""
    return (x[0],) + tuple(-v for v in x[1:])


def _cd_mul(x: Vector, y: Vector) -> Vector:
    """
    (a, b)(c, d) = (ac − d*b, da + bc*)

    向量前一半为 a，后一半为 b
    """
    n = len(x)
    if n == 1:
        return (x[0] * y[0],)
    half = n // 2
    a, b = x[:half], x[half:]
    c, d = y[:half], y[half:]
    left = tuple(u - v for u, v in zip(_cd_mul(a, c), _cd_mul(_cd_conj(d), b)))
    right = tuple(u + v for u, v in zip(_cd_mul(d, a), _cd_mul(b, _cd_conj(c))))
    return left + right


@lru_cache(maxsize=None)
def multiplication_table(dim: int) -> Tuple[Tuple[Tuple[int, int], ...], ...]:
    """
    基 e_0 … e_{dim−1} 的乘法表

    Returns:
        table[i][j] = (sign, k)，表示 e_i e_j = sign · e_k
    """
    _level(dim)
    rows = []
    for i in range(dim):
        row = []
        for j in range(dim):
            ei = tuple(QQ(1) if k == i else ZERO for k in range(dim))
            ej = tuple(QQ(1) if k == j else ZERO for k in range(dim))
            product = _cd_mul(ei, ej)
            support = [(k, v) for k, v in enumerate(product) if v]
            if len(support) != 1 or abs(support[0][1]) != 1:
                raise ValidationError(f"e_{i} e_{j} 不是带符号的基元素")
            k, v = support[0]
            row.append((1 if v > 0 else -1, k))
        rows.append(tuple(row))
    return tuple(rows)


class CompositionAlgebra:
    """ℝ、ℂ、ℍ、𝕆 中的一个，元素为长度 dim 的有理向量"""

    def __init__(self, dim: int):
        _level(dim)
        self.dim = dim
        self.name = ALGEBRA_NAMES[dim]
        self.table = multiplication_table(dim)

    def unit(self, k: int) -> Vector:
        """基元素 e_k"""
        return tuple(QQ(1) if i == k else ZERO for i in range(self.dim))

    def zero(self) -> Vector:
        """零元"""
        return (ZERO,) * self.dim

    def mul(self, x: Sequence, y: Sequence) -> Vector:
        """乘法（查表）"""
        out = [ZERO] * self.dim
        for i, a in enumerate(x):
            if not a:
                continue
            row = self.table[i]
            for j, b in enumerate(y):
                if b:
                    sign, k = row[j]
                    out[k] += sign * a * b
        return tuple(out)

    def add(self, x: Sequence, y: Sequence) -> Vector:
        """加法"""
        return tuple(a + b for a, b in zip(x, y))

    def conj(self, x: Sequence) -> Vector:
        """共轭：实部不变，虚部取反"""
        return _cd_conj(tuple(x))

    def norm(self, x: Sequence) -> Scalar:
        """N(x) = x x̄ = Σ x_k²"""
        return sum((to_qq(a) ** 2 for a in x), ZERO)

    def real_part(self, x: Sequence) -> Scalar:
        """实部"""
        return to_qq(x[0])

    def associator(self, x: Sequence, y: Sequence, z: Sequence) -> Vector:
        """(xy)z − x(yz)"""
        left = self.mul(self.mul(x, y), z)
        right = self.mul(x, self.mul(y, z))
        return tuple(a - b for a, b in zip(left, right))

    def is_commutative(self) -> bool:
        """基元素两两可交换"""
        return all(self.table[i][j] == self.table[j][i]
                   for i in range(self.dim) for j in range(self.dim))

    def is_associative(self) -> bool:
        """基元素上结合律成立"""
        units = [self.unit(k) for k in range(self.dim)]
        return all(not any(self.associator(a, b, c))
                   for a in units for b in units for c in units)

    def check(self, samples: int = 20, seed: int = 0) -> None:
        """
        校验交错律、共轭反自同构与范数可乘性

        交错律在基元素对与随机有理元素上检查；
        范数可乘性 N(xy) = N(x)N(y) 在随机元素上检查。

        Raises:
            ValidationError: 任一恒等式不成立
        """
        units = [self.unit(k) for k in range(self.dim)]
        for k, a in enumerate(units):
            if self.mul(a, self.conj(a)) != self.unit(0):
                raise ValidationError(f"{self.name}: e_{k} ē_{k} ≠ 1")
        rng = random.Random(seed)
        pairs: List[Tuple[Vector, Vector]] = [(a, b) for a in units for b in units]
        for _ in range(samples):
            pairs.append((self._random(rng), self._random(rng)))
        for x, y in pairs:
            if any(self.associator(x, x, y)) or any(self.associator(y, x, x)):
                raise ValidationError(f"{self.name}: 交错律不成立")
            if self.conj(self.mul(x, y)) != self.mul(self.conj(y), self.conj(x)):
                raise ValidationError(f"{self.name}: 共轭不是反自同构")
            if self.norm(self.mul(x, y)) != self.norm(x) * self.norm(y):
                raise ValidationError(f"{self.name}: 范数不可乘")

    def _random(self, rng: random.Random) -> Vector:
        """小整数系数的随机元素"""
        return tuple(QQ(rng.randint(-3, 3)) for _ in range(self.dim))

    def to_dict(self) -> Dict[str, object]:
        """乘法表的字典形式"""
        return {
            "name": self.name,
            "dim": self.dim,
            "table": [[list(entry) for entry in row] for row in self.table],
        }


@lru_cache(maxsize=None)
def composition_algebra(dim: int) -> CompositionAlgebra:
    """按维数取合成代数（缓存）"""
    return CompositionAlgebra(dim)


def octonions() -> CompositionAlgebra:
    """八元数 𝕆"""
    return composition_algebra(8)
