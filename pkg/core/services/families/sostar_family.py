"""
so*(2n) 矩阵族
{Z ∈ so(2n,ℂ) : Z*·I_{n,n} + I_{n,n}·Z = 0}，实化为 4n 阶实矩阵
"""
from typing import Dict, List

from sympy.polys.domains import QQ

from core.entities.iso_type import IsoType, SimpleType, named_type
from core.entities.realization_model import CLASS_CAYLEY, CLASS_SPLIT
from core.services.families.base import (
    InvolutionSpec, MatrixFamily, block_2x2, diagonal, from_entries,
    linear_constraints, realify, zero_matrix,
)


class SoStarFamily(MatrixFamily):
    """so*(2n)，n ≥ 3"""

    family = "sostar"

    def validate_params(self) -> None:
        self._require(len(self.params) == 1, "需要一个参数 n")
        self._require(self.params[0] >= 3, "要求 n ≥ 3")

    @property
    def n(self) -> int:
        return self.params[0]

    @property
    def size(self) -> int:
        return 4 * self.n

    def conjugation(self):
        """复共轭对应 Ad(K)"""
        m = 2 * self.n
        return diagonal([1] * m + [-1] * m)

    def constraints(self):
        n, size = self.n, self.size
        m = 2 * n
        j = realify(diagonal([0] * m), diagonal([1] * m))
        t = realify(diagonal([1] * n + [-1] * n))
        eye = diagonal([1] * n)
        s = realify(block_2x2(zero_matrix(n), eye, eye, zero_matrix(n)))
        k = self.conjugation()
        rows = linear_constraints(size, lambda x: x * j - j * x)
        # Z*·T + T·Z = 0
        rows += linear_constraints(size, lambda x: x.transpose() * t + t * x)
        # Zᵀ·S + S·Z = 0，实化下 R(Zᵀ) = K·R(Z)ᵀ·K
        rows += linear_constraints(size, lambda x: k * x.transpose() * k * s + s * x)
        return rows

    def coroots(self):
        n = self.n
        out = []
        for k in range(n // 2):
            a, b = 2 * k, 2 * k + 1
            # [[0, B_k], [−B_k, 0]]，B_k = E_ab − E_ba
            real = from_entries(2 * n, {(a, n + b): 1, (b, n + a): -1,
                                        (n + a, b): -1, (n + b, a): 1})
            out.append(realify(real))
        return out

    def h_element(self):
        n = self.n
        half = QQ(1, 2)
        return realify(diagonal([0] * (2 * n)), diagonal([half] * n + [-half] * n))

    def expected_dim(self) -> int:
        return self.n * (2 * self.n - 1)

    def iso_type(self) -> IsoType:
        return IsoType.of(SimpleType("sostar", self.params))

    def is_tube(self) -> bool:
        return self.n % 2 == 0

    def expected_multiplicities(self) -> Dict[str, int]:
        r = self.n // 2
        return {"long": 1, "middle": 4 if r > 1 else 0, "short": 0 if self.is_tube() else 4}

    def involution_specs(self) -> List[InvolutionSpec]:
        n = self.n
        r = n // 2
        specs = []
        if self.is_tube():
            specs.append(InvolutionSpec(
                name="cayley", tau_class=CLASS_CAYLEY,
                fixed_label=named_type(f"su*({n})+R"),
                fixed_dim=n * n, fixed_rank=r,
                coroot_perm=tuple(range(r)),
            ))
        specs.append(InvolutionSpec(
            name="soc", tau_class=CLASS_SPLIT,
            fixed_label=named_type(f"so({n},C)"),
            fixed_dim=n * (n - 1), fixed_rank=r,
            coroot_perm=tuple(range(r)),
            conjugator=self.conjugation(),
        ))
        return specs
