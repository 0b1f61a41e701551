"""
so(2,n) 矩阵族
"""
from typing import Dict, List

from core.entities.iso_type import IsoType, SimpleType, named_type
from core.entities.realization_model import CLASS_CAYLEY, CLASS_NONSPLIT, CLASS_SPLIT
from core.services.families.base import (
    InvolutionSpec, MatrixFamily, diagonal, from_entries, linear_constraints,
)


class So2Family(MatrixFamily):
    """so(2,n)，n ≥ 1 且 n ≠ 2"""

    family = "so2"

    def validate_params(self) -> None:
        self._require(len(self.params) == 1, "需要一个参数 n")
        n = self.params[0]
        self._require(n >= 1, "要求 n ≥ 1")
        self._require(n != 2, "so(2,2) 不是单李代数")

    @property
    def n(self) -> int:
        return self.params[0]

    @property
    def size(self) -> int:
        return self.n + 2

    def constraints(self):
        form = diagonal([1, 1] + [-1] * self.n)
        return linear_constraints(self.size, lambda x: x.transpose() * form + form * x)

    def _boosts(self):
        """A1 = E13 + E31，A2 = E24 + E42"""
        size = self.size
        a1 = from_entries(size, {(0, 2): 1, (2, 0): 1})
        if self.n == 1:
            return a1, None
        a2 = from_entries(size, {(1, 3): 1, (3, 1): 1})
        return a1, a2

    def coroots(self):
        a1, a2 = self._boosts()
        if a2 is None:
            return [a1 + a1]
        return [a1 + a2, a1 - a2]

    def h_element(self):
        return from_entries(self.size, {(0, 1): 1, (1, 0): -1})

    def expected_dim(self) -> int:
        return (self.n + 2) * (self.n + 1) // 2

    def iso_type(self) -> IsoType:
        return IsoType.of(SimpleType("so2", self.params))

    def is_tube(self) -> bool:
        return True

    def expected_multiplicities(self) -> Dict[str, int]:
        return {"long": 1, "middle": self.n - 2 if self.n > 1 else 0, "short": 0}

    def reflection(self, plus: int):
        """
        D = diag(1, −1, d_3, …)，d_3 = +1

        Args:
            plus: 后 n 个坐标中取 +1 的个数（含第 3 个坐标）
        """
        n = self.n
        tail = [1] * plus + [-1] * (n - plus)
        if n >= 2 and plus < n:
            # 保证 d_4 = −1：把第一个 −1 挪到第 4 个坐标
            tail = [1] + [-1] + [1] * (plus - 1) + [-1] * (n - plus - 1)
        return diagonal([1, -1] + tail)

    def involution_specs(self) -> List[InvolutionSpec]:
        n = self.n
        r = 2 if n > 1 else 1
        specs = [InvolutionSpec(
            name="cayley", tau_class=CLASS_CAYLEY,
            fixed_label=named_type(f"so(1,1)+so(1,{n - 1})"),
            fixed_dim=1 + n * (n - 1) // 2, fixed_rank=r,
            coroot_perm=tuple(range(r)),
        )]
        if n >= 3:
            specs.append(InvolutionSpec(
                name="so1n", tau_class=CLASS_NONSPLIT,
                fixed_label=named_type(f"so(1,{n})"),
                fixed_dim=n * (n + 1) // 2, fixed_rank=1,
                coroot_perm=(1, 0),
                conjugator=self.reflection(n),
            ))
        for a in range(2, n - 1):
            specs.append(InvolutionSpec(
                name=f"so1a:{a}", tau_class=CLASS_SPLIT,
                fixed_label=named_type(f"so(1,{a})+so(1,{n - a})"),
                fixed_dim=a * (a + 1) // 2 + (n - a) * (n - a + 1) // 2, fixed_rank=2,
                coroot_perm=(0, 1),
                conjugator=self.reflection(a),
                alternate=f"so1a:{n - a}",
            ))
        return specs
