"""
su(p,q) 矩阵族
复矩阵实化为 2(p+q) 阶实矩阵
"""
from typing import Dict, List

from sympy.polys.domains import QQ

from core.entities.iso_type import IsoType, SimpleType, named_type
from core.entities.realization_model import CLASS_CAYLEY, CLASS_NONSPLIT, CLASS_SPLIT
from core.services.families.base import (
    InvolutionSpec, MatrixFamily, block_diag, diagonal, from_entries,
    linear_constraints, realify,
)


def symplectic_pairing(m: int):
    """⊕[[0, −1], [1, 0]]（m 为偶数）"""
    entries = {}
    for k in range(0, m, 2):
        entries[(k, k + 1)] = -1
        entries[(k + 1, k)] = 1
    return from_entries(m, entries)


class SuFamily(MatrixFamily):
    """su(p,q)，p ≥ q ≥ 1"""

    family = "su"

    def validate_params(self) -> None:
        self._require(len(self.params) == 2, "需要两个参数 p,q")
        p, q = self.params
        self._require(p >= q >= 1, "要求 p ≥ q ≥ 1")

    @property
    def n(self) -> int:
        """复矩阵的阶 p+q"""
        return sum(self.params)

    @property
    def size(self) -> int:
        return 2 * self.n

    def signature(self):
        """I_{p,q}"""
        p, q = self.params
        return diagonal([1] * p + [-1] * q)

    def complex_unit(self):
        """i·I 的实化"""
        n = self.n
        return realify(diagonal([0] * n), diagonal([1] * n))

    def conjugation(self):
        """复共轭 Z ↦ Z̄ 对应 Ad(K)，K = diag(I, −I)"""
        n = self.n
        return diagonal([1] * n + [-1] * n)

    def constraints(self):
        size, n = self.size, self.n
        j = self.complex_unit()
        s = realify(self.signature())
        rows = linear_constraints(size, lambda x: x * j - j * x)
        rows += linear_constraints(size, lambda x: x.transpose() * s + s * x)
        # 复迹为零：实部与虚部
        rows.append({i * size + i: QQ(1) for i in range(n)})
        rows.append({(n + i) * size + i: QQ(1) for i in range(n)})
        return rows

    def coroots(self):
        p, q = self.params
        n = self.n
        out = []
        for k in range(q):
            real = from_entries(n, {(k, p + k): 1, (p + k, k): 1})
            out.append(realify(real))
        return out

    def h_element(self):
        p, q = self.params
        n = self.n
        values = [QQ(q, n)] * p + [QQ(-p, n)] * q
        return realify(diagonal([0] * n), diagonal(values))

    def expected_dim(self) -> int:
        return self.n ** 2 - 1

    def iso_type(self) -> IsoType:
        return IsoType.of(SimpleType("su", self.params))

    def is_tube(self) -> bool:
        p, q = self.params
        return p == q

    def expected_multiplicities(self) -> Dict[str, int]:
        p, q = self.params
        return {"long": 1, "middle": 2 if q > 1 else 0, "short": 2 * (p - q)}

    def involution_specs(self) -> List[InvolutionSpec]:
        p, q = self.params
        n = self.n
        specs = []
        if p == q:
            specs.append(InvolutionSpec(
                name="cayley", tau_class=CLASS_CAYLEY,
                fixed_label=named_type(f"sl({p},C)+R"),
                fixed_dim=2 * p * p - 1, fixed_rank=p,
                coroot_perm=tuple(range(q)),
            ))
        specs.append(InvolutionSpec(
            name="so", tau_class=CLASS_SPLIT,
            fixed_label=named_type(f"so({p},{q})"),
            fixed_dim=n * (n - 1) // 2, fixed_rank=q,
            coroot_perm=tuple(range(q)),
            conjugator=self.conjugation(),
        ))
        if p % 2 == 0 and q % 2 == 0:
            m = n // 2
            pairing = block_diag(symplectic_pairing(p), symplectic_pairing(q))
            specs.append(InvolutionSpec(
                name="sp", tau_class=CLASS_NONSPLIT,
                fixed_label=named_type(f"sp({p // 2},{q // 2})"),
                fixed_dim=m * (2 * m + 1), fixed_rank=q // 2,
                coroot_perm=tuple(k ^ 1 for k in range(q)),
                conjugator=realify(pairing) * self.conjugation(),
            ))
        return specs
