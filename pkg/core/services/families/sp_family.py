"""
sp(2n,ℝ) 矩阵族
"""
from typing import Dict, List

from sympy.polys.domains import QQ

from core.entities.iso_type import IsoType, SimpleType, named_type
from core.entities.realization_model import CLASS_CAYLEY, CLASS_NONSPLIT
from core.services.families.base import (
    InvolutionSpec, MatrixFamily, block_2x2, block_diag, diagonal, from_entries,
    linear_constraints, zero_matrix,
)
from core.services.families.su_family import symplectic_pairing


class SpFamily(MatrixFamily):
    """sp(2n,ℝ)，n ≥ 1"""

    family = "sp"

    def validate_params(self) -> None:
        self._require(len(self.params) == 1, "需要一个参数 n")
        self._require(self.params[0] >= 1, "要求 n ≥ 1")

    @property
    def n(self) -> int:
        return self.params[0]

    @property
    def size(self) -> int:
        return 2 * self.n

    def form(self):
        """J = [[0, I], [−I, 0]]"""
        n = self.n
        eye = diagonal([1] * n)
        return block_2x2(zero_matrix(n), eye, -eye, zero_matrix(n))

    def constraints(self):
        j = self.form()
        return linear_constraints(self.size, lambda x: x.transpose() * j + j * x)

    def coroots(self):
        n = self.n
        return [from_entries(2 * n, {(k, k): 1, (n + k, n + k): -1}) for k in range(n)]

    def h_element(self):
        return self.form() * QQ(1, 2)

    def expected_dim(self) -> int:
        return self.n * (2 * self.n + 1)

    def iso_type(self) -> IsoType:
        return IsoType.of(SimpleType("sp", self.params))

    def is_tube(self) -> bool:
        return True

    def expected_multiplicities(self) -> Dict[str, int]:
        return {"long": 1, "middle": 1 if self.n > 1 else 0, "short": 0}

    def involution_specs(self) -> List[InvolutionSpec]:
        n = self.n
        specs = [InvolutionSpec(
            name="cayley", tau_class=CLASS_CAYLEY,
            fixed_label=named_type(f"gl({n},R)"),
            fixed_dim=n * n, fixed_rank=n,
            coroot_perm=tuple(range(n)),
        )]
        if n % 2 == 0:
            g = symplectic_pairing(n)
            specs.append(InvolutionSpec(
                name="spc", tau_class=CLASS_NONSPLIT,
                fixed_label=named_type(f"sp({n},C)"),
                fixed_dim=n * (n + 1), fixed_rank=n // 2,
                coroot_perm=tuple(k ^ 1 for k in range(n)),
                conjugator=block_diag(g, -g),
            ))
        return specs
