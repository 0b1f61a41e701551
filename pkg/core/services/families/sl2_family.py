"""
sl(2,ℝ)^r 矩阵族
r 个 sl(2,ℝ) 的直和，用于理想分解等测试
"""
from typing import Dict, List

from sympy.polys.domains import QQ

from core.entities.iso_type import IsoType, SimpleType, named_type
from core.entities.realization_model import CLASS_CAYLEY
from core.services.families.base import InvolutionSpec, MatrixFamily, from_entries


class Sl2PowerFamily(MatrixFamily):
    """sl(2,ℝ)^r，r ≥ 1"""

    family = "sl2"

    def validate_params(self) -> None:
        self._require(len(self.params) == 1, "需要一个参数 r")
        self._require(self.params[0] >= 1, "要求 r ≥ 1")

    @property
    def r(self) -> int:
        return self.params[0]

    @property
    def size(self) -> int:
        return 2 * self.r

    def constraints(self):
        size = self.size
        rows = []
        for i in range(size):
            for j in range(size):
                if i // 2 != j // 2:
                    rows.append({i * size + j: QQ(1)})
        for k in range(self.r):
            a = 2 * k
            rows.append({a * size + a: QQ(1), (a + 1) * size + a + 1: QQ(1)})
        return rows

    def coroots(self):
        return [from_entries(self.size, {(2 * k, 2 * k): 1, (2 * k + 1, 2 * k + 1): -1})
                for k in range(self.r)]

    def h_element(self):
        half = QQ(1, 2)
        entries = {}
        for k in range(self.r):
            entries[(2 * k, 2 * k + 1)] = half
            entries[(2 * k + 1, 2 * k)] = -half
        return from_entries(self.size, entries)

    def expected_dim(self) -> int:
        return 3 * self.r

    def iso_type(self) -> IsoType:
        return IsoType.of(*[SimpleType("sl2")] * self.r)

    def is_tube(self) -> bool:
        return True

    def expected_multiplicities(self) -> Dict[str, int]:
        return {"long": 1, "middle": 0, "short": 0}

    def involution_specs(self) -> List[InvolutionSpec]:
        r = self.r
        return [InvolutionSpec(
            name="cayley", tau_class=CLASS_CAYLEY,
            fixed_label=named_type("+".join(["so(1,1)"] * r)),
            fixed_dim=r, fixed_rank=r,
            coroot_perm=tuple(range(r)),
        )]
