"""
实现实体模型
厄米单李代数的具体实现及其标准对合记录
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from core.entities.errors import ContractViolation
from core.entities.iso_type import IsoType
from core.entities.lie_algebra import LieAlgebra, LieElement, LinearAutomorphism
from core.entities.scalar import Scalar, ZERO, format_qq, to_qq

# 对合分类
CLASS_CAYLEY = "cayley"
CLASS_SPLIT = "split-type"
CLASS_NONSPLIT = "nonsplit-type"


@dataclass
class InvolutionRecord:
    """
    标准对合记录

    phi 满足 φ² = id、φ(H₀) = −H₀ 且与 θ 交换；
    a_h_basis 是 𝔥∩𝔭 中极大交换子空间 𝔞_𝔥 的基 K_ℓ，
    coroot_perm 记录 τ 在余根上诱导的置换。
    """

    name: str
    phi: LinearAutomorphism
    fixed_algebra_label: IsoType
    tau_class: str
    commutes_with_theta: bool
    a_h_basis: List[LieElement] = field(default_factory=list)
    coroot_perm: Tuple[int, ...] = ()
    fixed_dim: int = 0
    fixed_rank: int = 0
    alternate: Optional[str] = None

    def __post_init__(self):
        """验证数据"""
        if self.tau_class not in (CLASS_CAYLEY, CLASS_SPLIT, CLASS_NONSPLIT):
            raise ContractViolation(f"未知的对合类别: {self.tau_class}")
        if not self.name:
            raise ContractViolation("对合名称不能为空")

    @property
    def is_cayley(self) -> bool:
        """是否 Cayley 型"""
        return self.tau_class == CLASS_CAYLEY

    def to_dict(self) -> dict:
        """转换为字典"""
        return {
            "name": self.name,
            "class": self.tau_class,
            "fixed_algebra": self.fixed_algebra_label.display(),
            "fixed_dim": self.fixed_dim,
            "fixed_rank": self.fixed_rank,
            "commutes_with_theta": self.commutes_with_theta,
            "coroot_perm": list(self.coroot_perm),
        }


@dataclass
class Realization:
    """厄米单李代数的矩阵实现（或 KKT 构造）及其结构数据"""

    algebra: LieAlgebra
    family: str
    params: Tuple[int, ...]
    theta: LinearAutomorphism
    a_basis: List[LieElement]
    h_element: LieElement
    grid: List[Tuple[LieElement, LieElement]]
    tube: bool
    iso: IsoType
    involutions: List[InvolutionRecord] = field(default_factory=list)
    extras: Dict[str, object] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        """验证数据"""
        if len(self.grid) != len(self.a_basis):
            raise ContractViolation("sl(2) 网格的个数必须等于实秩")
        for el in self.a_basis + [self.h_element]:
            if el.dim != self.algebra.dim:
                raise ContractViolation("结构元素的维数与代数不一致")

    @property
    def rank(self) -> int:
        """实秩"""
        return len(self.a_basis)

    @property
    def label(self) -> str:
        """名称"""
        return self.algebra.label

    def epsilon_duals(self) -> List[Tuple[Scalar, ...]]:
        """ε_k(H_ℓ) = δ_kℓ 的对偶表（在余根坐标下即单位阵）"""
        r = self.rank
        return [tuple(to_qq(1) if k == l else ZERO for l in range(r)) for k in range(r)]

    def element_from_coords(self, coords) -> LieElement:
        """
        由 𝔞 坐标 λ 得到 h = Σ λ_k H_k

        Raises:
            ContractViolation: 坐标个数与实秩不符
        """
        coords = [to_qq(c) for c in coords]
        if len(coords) != self.rank:
            raise ContractViolation(f"𝔞 坐标个数 {len(coords)} 与实秩 {self.rank} 不一致")
        out = self.algebra.zero()
        for c, h in zip(coords, self.a_basis):
            if c:
                out = out + h.scale(c)
        return out

    def involution(self, selector) -> InvolutionRecord:
        """
        按名称或下标选取标准对合

        Raises:
            ContractViolation: 不存在该对合
        """
        if isinstance(selector, int):
            if not 0 <= selector < len(self.involutions):
                raise ContractViolation(f"对合下标越界: {selector}")
            return self.involutions[selector]
        for record in self.involutions:
            if record.name == selector:
                return record
        names = ", ".join(r.name for r in self.involutions) or "无"
        raise ContractViolation(f"{self.label} 没有名为 {selector} 的标准对合（可选: {names}）")

    def to_dict(self) -> dict:
        """转换为字典"""
        return {
            "algebra": self.label,
            "family": self.family,
            "params": list(self.params),
            "dim": self.algebra.dim,
            "rank": self.rank,
            "tube": self.tube,
            "iso": self.iso.display(),
            "h_element": [format_qq(c) for c in self.h_element.coords],
            "involutions": [r.to_dict() for r in self.involutions],
        }
