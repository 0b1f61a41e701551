"""
实现服务
厄米单李代数的精确矩阵实现、结构数据校验、标准对合目录与整双曲元判定
"""
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from core.entities.errors import ContractViolation, ValidationError
from core.entities.iso_type import IsoType, named_type
from core.entities.lie_algebra import LieAlgebra, LieElement, LinearAutomorphism, RootData
from core.entities.realization_model import (
    CLASS_CAYLEY, InvolutionRecord, Realization,
)
from core.entities.scalar import HALF, Scalar, ZERO, format_qq, is_half_odd, to_qq
from core.entities.subspace import Subspace
from core.services.exact_linalg import (
    SparseVector, eigenspace, from_sparse_columns, intersect, kernel,
    mat_equal, sparse_kernel, to_dense,
)
from core.services.families.base import (
    InvolutionSpec, MatrixFamily, commutator, flatten, unflatten,
)
from core.services.lie_core import (
    apply_map, bracket, centralizer, exp_i_pi_ad, fixed_space, grading_of,
    is_involutive_automorphism, make_algebra, ad_matrix, restricted_root_data,
)
from infrastructure.logger import get_logger

logger = get_logger()

KKT_PREFIX = "kkt:"


class MatrixCoordinates:
    """矩阵在实现基下的坐标（基为展开向量空间的 RREF 行）"""

    def __init__(self, space: Subspace, size: int):
        self.space = space
        self.size = size
        self.rows: List[SparseVector] = [
            {k: v for k, v in enumerate(row) if v} for row in space.rows
        ]
        self.pivots = space.pivots

    def basis_matrices(self) -> List[DomainMatrix]:
        """基矩阵"""
        return [unflatten(row, self.size) for row in self.rows]

    def coords(self, m: DomainMatrix) -> SparseVector:
        """
        矩阵的坐标

        Raises:
            ValidationError: 矩阵不在该李代数中
        """
        flat = flatten(m)
        coeffs = {i: flat[p] for i, p in enumerate(self.pivots) if flat.get(p)}
        rebuilt: SparseVector = {}
        for i, c in coeffs.items():
            for k, v in self.rows[i].items():
                value = rebuilt.get(k, ZERO) + c * v
                if value:
                    rebuilt[k] = value
                else:
                    rebuilt.pop(k, None)
        if rebuilt != flat:
            raise ValidationError("矩阵不在实现的李代数中")
        return coeffs

    def element(self, m: DomainMatrix) -> LieElement:
        """矩阵对应的李代数元素"""
        return LieElement.from_sparse(self.coords(m), self.space.dim)


class RealizationFactory:
    """实现工厂：按族名创建矩阵族并构造实现（带缓存）"""

    FAMILIES = {
        'su': ('core.services.families.su_family', 'SuFamily'),
        'sp': ('core.services.families.sp_family', 'SpFamily'),
        'sostar': ('core.services.families.sostar_family', 'SoStarFamily'),
        'so2': ('core.services.families.so2_family', 'So2Family'),
        'sl2': ('core.services.families.sl2_family', 'Sl2PowerFamily'),
    }

    def __init__(self):
        self._cache: Dict[Tuple[str, Tuple[int, ...]], Realization] = {}

    @staticmethod
    def create_family(family: str, params: Sequence[int]) -> MatrixFamily:
        """
        创建矩阵族

        Raises:
            ContractViolation: 不支持的族或参数无效
        """
        if family not in RealizationFactory.FAMILIES:
            supported = ', '.join(RealizationFactory.FAMILIES.keys())
            raise ContractViolation(f"不支持的矩阵族: {family}。支持的族: {supported}")
        module_path, class_name = RealizationFactory.FAMILIES[family]
        module = __import__(module_path, fromlist=[class_name])
        family_class = getattr(module, class_name)
        return family_class(tuple(params))

    def build(self, family: str, params: Sequence[int], with_involutions: bool = True) -> Realization:
        """
        构造（或取缓存的）实现

        族名以 kkt: 开头时由 Jordan 代数的 KKT 构造得到，例如 kkt:hermO3
        """
        key = (family, tuple(int(p) for p in params))
        if key not in self._cache:
            if family.startswith(KKT_PREFIX):
                from core.services.kkt import kkt_realization
                self._cache[key] = kkt_realization(family[len(KKT_PREFIX):], key[1])
            else:
                self._cache[key] = build_from_family(self.create_family(family, key[1]))
        realization = self._cache[key]
        if with_involutions and not realization.involutions:
            if family.startswith(KKT_PREFIX):
                from core.services.kkt import kkt_involutions
                kkt_involutions(realization)
            else:
                standard_involutions(realization)
        return realization

    def clear(self) -> None:
        """清空缓存"""
        self._cache.clear()


_default_factory = RealizationFactory()


def build(family: str, params: Sequence[int], with_involutions: bool = True) -> Realization:
    """
    构造厄米单李代数的实现

    Args:
        family: su / sp / sostar / so2 / sl2，或 kkt:<Jordan 族>
        params: 族参数（su 为 (p, q)，其余为 (n,)；kkt:hermO3 无参数）
        with_involutions: 是否同时构造标准对合

    Returns:
        完整校验过的 Realization
    """
    return _default_factory.build(family, params, with_involutions)


def default_factory() -> RealizationFactory:
    """全局工厂实例"""
    return _default_factory


# ---------------------------------------------------------------------------
# 构造
# ---------------------------------------------------------------------------

def build_from_family(fam: MatrixFamily) -> Realization:
    """
    由矩阵族构造实现：线性约束的核给出基，括号由交换子给出

    Raises:
        ValidationError: 维数、θ、网格或根数据校验失败
    """
    size = fam.size
    n2 = size * size
    logger.info(f"构造 {fam.label}: 求解 {n2} 个未知数的线性约束")
    kernel_basis = sparse_kernel(fam.constraints(), n2, batch=4 * size)
    space = Subspace.span(n2, [to_dense(v, n2) for v in kernel_basis])
    if space.dim != fam.expected_dim():
        raise ValidationError(f"{fam.label}: 维数 {space.dim} 与公式 {fam.expected_dim()} 不一致")
    chart = MatrixCoordinates(space, size)
    basis = chart.basis_matrices()
    dim = len(basis)

    structure = {}
    for i in range(dim):
        for j in range(i + 1, dim):
            c = chart.coords(commutator(basis[i], basis[j]))
            if c:
                structure[(i, j)] = c
    theta_cols = [chart.coords(-b.transpose()) for b in basis]
    theta = from_sparse_columns(theta_cols, dim)
    algebra = make_algebra(dim, structure, label=fam.label, theta=theta,
                           matrix_realization=basis)

    h0_matrix = fam.h_element()
    coroot_matrices = fam.coroots()
    grid = []
    for hk in coroot_matrices:
        t = -commutator(h0_matrix, hk)
        u = commutator(hk, t) * HALF
        grid.append((chart.element((t + u) * HALF), chart.element((t - u) * HALF)))

    realization = Realization(
        algebra=algebra, family=fam.family, params=fam.params,
        theta=LinearAutomorphism(theta, "theta"),
        a_basis=[chart.element(h) for h in coroot_matrices],
        h_element=chart.element(h0_matrix),
        grid=grid, tube=fam.is_tube(), iso=fam.iso_type(),
        extras={"chart": chart, "family": fam},
    )
    validate_realization(realization, fam.expected_multiplicities())
    logger.info(f"{fam.label} 构造完成: dim={dim}, rank={realization.rank}")
    return realization


def assemble_realization(algebra: LieAlgebra, family: str, params: Tuple[int, ...],
                         a_basis: List[LieElement], h_element: LieElement,
                         grid: List[Tuple[LieElement, LieElement]], tube: bool,
                         iso: IsoType, expected: Dict[str, int],
                         extras: Optional[dict] = None) -> Realization:
    """由已有的结构常数代数组装并校验实现（KKT 构造使用）"""
    realization = Realization(
        algebra=algebra, family=family, params=params,
        theta=LinearAutomorphism(algebra.theta, "theta"),
        a_basis=a_basis, h_element=h_element, grid=grid, tube=tube, iso=iso,
        extras=dict(extras or {}),
    )
    validate_realization(realization, expected)
    return realization


def validate_realization(r: Realization, expected: Dict[str, int]) -> None:
    """
    校验实现的结构数据

    - sl(2) 网格关系、X_k 位于根空间 𝔤^{2ε_k}、θX_k = −Y_k
    - ad(H₀)³ = −ad(H₀)，ker ad(H₀) = 𝔨
    - 限制根的类型与重数

    Raises:
        ValidationError: 任一校验失败
    """
    g = r.algebra
    two = to_qq(2)
    for k, ((x, y), hk) in enumerate(zip(r.grid, r.a_basis)):
        checks = {
            "[H,X] = 2X": bracket(g, hk, x) == x.scale(two),
            "[H,Y] = −2Y": bracket(g, hk, y) == y.scale(-two),
            "[X,Y] = H": bracket(g, x, y) == hk,
            "θX = −Y": apply_map(g.theta, x) == -y,
        }
        for name, ok in checks.items():
            if not ok:
                raise ValidationError(f"{r.label}: 第 {k + 1} 个 sl(2) 三元组不满足 {name}")
        for l, hl in enumerate(r.a_basis):
            if l != k and not bracket(g, hl, x).is_zero():
                raise ValidationError(f"{r.label}: X_{k + 1} 不在根空间 𝔤^(2ε_{k + 1}) 中")
    ad_h0 = ad_matrix(g, r.h_element)
    if not (ad_h0 * ad_h0 * ad_h0 + ad_h0).is_zero_matrix:
        raise ValidationError(f"{r.label}: ad(H₀)³ ≠ −ad(H₀)")
    if kernel(ad_h0) != fixed_space(g.theta):
        raise ValidationError(f"{r.label}: ker ad(H₀) 不等于 𝔨")
    data = restricted_root_data(g, r.a_basis)
    check_root_pattern(r.label, r.rank, data, expected)
    r.extras["root_data"] = data
    a_span = Subspace.span(g.dim, [a.coords for a in r.a_basis])
    g.cache.setdefault("restricted_roots", {})[(Subspace.full(g.dim), a_span)] = data


def classify_root(key: Tuple[Scalar, ...]) -> str:
    """按余根坐标判断根的类型：long / middle / short / other"""
    nonzero = [abs(v) for v in key if v]
    if len(nonzero) == 1 and nonzero[0] == 2:
        return "long"
    if len(nonzero) == 2 and nonzero == [1, 1]:
        return "middle"
    if len(nonzero) == 1 and nonzero[0] == 1:
        return "short"
    return "other"


def check_root_pattern(label: str, rank: int, data: RootData, expected: Dict[str, int]) -> None:
    """
    校验限制根系为 C_r（管型）或 BC_r（非管型）并核对重数

    Raises:
        ValidationError: 出现额外的根或重数不符
    """
    counts = {"long": 0, "middle": 0, "short": 0}
    for key, mult in data.roots.items():
        kind = classify_root(key)
        if kind == "other":
            raise ValidationError(f"{label}: 出现意外的限制根 {[format_qq(v) for v in key]}")
        if mult != expected.get(kind, 0):
            raise ValidationError(
                f"{label}: {kind} 根重数 {mult} 与预期 {expected.get(kind, 0)} 不一致"
            )
        counts[kind] += 1
    wanted = {
        "long": 2 * rank if expected.get("long") else 0,
        "middle": 2 * rank * (rank - 1) if expected.get("middle") else 0,
        "short": 2 * rank if expected.get("short") else 0,
    }
    if counts != wanted:
        raise ValidationError(f"{label}: 限制根个数 {counts} 与预期 {wanted} 不一致")


def tube_type(r: Realization) -> bool:
    """是否管型"""
    return r.tube


def frame_sum_element(r: Realization) -> LieElement:
    """H = ½ΣH_k"""
    return r.element_from_coords([HALF] * r.rank)


# ---------------------------------------------------------------------------
# 标准对合
# ---------------------------------------------------------------------------

def _conjugation_map(r: Realization, p: DomainMatrix) -> DomainMatrix:
    """Ad(P) 在坐标上的矩阵"""
    chart: MatrixCoordinates = r.extras["chart"]
    p_inv = p.to_dense().inv()
    cols = [chart.coords(p * b * p_inv) for b in r.algebra.matrix_realization]
    return from_sparse_columns(cols, r.algebra.dim)


def cayley_spec(r: Realization) -> InvolutionSpec:
    """KKT 等非矩阵实现的 Cayley 对合规格"""
    grading = grading_of(r.algebra, frame_sum_element(r), check=False)
    return InvolutionSpec(
        name="cayley", tau_class=CLASS_CAYLEY,
        fixed_label=named_type(f"g0({r.label})"),
        fixed_dim=grading.part(0).dim, fixed_rank=r.rank,
        coroot_perm=tuple(range(r.rank)),
    )


def standard_involutions(r: Realization) -> List[InvolutionRecord]:
    """
    构造并校验标准对合目录

    Cayley 型为 exp(iπ ad H)，H = ½ΣH_k（仅管型）；其余为 Ad(P)。

    Raises:
        ContractViolation: 非管型上请求 Cayley 型
        ValidationError: 任一对合的校验失败
    """
    if r.involutions:
        return r.involutions
    fam = r.extras.get("family")
    specs = fam.involution_specs() if fam is not None else ([cayley_spec(r)] if r.tube else [])
    records = [make_involution(r, spec) for spec in specs]
    r.involutions = records
    logger.info(f"{r.label}: 标准对合 {[rec.name for rec in records]}")
    return records


def make_involution(r: Realization, spec: InvolutionSpec) -> InvolutionRecord:
    """按规格构造并校验一个标准对合"""
    g = r.algebra
    if spec.is_cayley:
        if not r.tube:
            raise ContractViolation(f"{r.label} 不是管型，不存在 Cayley 型对合")
        phi = exp_i_pi_ad(g, frame_sum_element(r))
    else:
        phi = _conjugation_map(r, spec.conjugator)
    return certify_involution(r, spec, phi)


def certify_involution(r: Realization, spec: InvolutionSpec, phi: DomainMatrix) -> InvolutionRecord:
    """
    校验给定的对合矩阵并生成对合记录

    检查：对合自同构、τ(H₀) = −H₀、与 θ 交换、余根置换、不动代数维数、
    𝔞_𝔥 在 𝔥∩𝔭 中极大交换

    Raises:
        ValidationError: 任一检查失败
    """
    g = r.algebra
    auto = LinearAutomorphism(phi, spec.name)
    where = f"{r.label}/{spec.name}"
    if not is_involutive_automorphism(g, auto):
        raise ValidationError(f"{where}: 不是对合自同构")
    if apply_map(phi, r.h_element) != -r.h_element:
        raise ValidationError(f"{where}: τ(H₀) ≠ −H₀")
    commutes = mat_equal(phi * g.theta, g.theta * phi)
    if not commutes:
        raise ValidationError(f"{where}: τ 与 θ 不交换")
    perm = spec.coroot_perm
    for k, target in enumerate(perm):
        if apply_map(phi, r.a_basis[k]) != r.a_basis[target]:
            raise ValidationError(f"{where}: τ(H_{k + 1}) ≠ H_{target + 1}")
        if apply_map(phi, r.grid[k][0]) != -r.grid[target][0]:
            raise ValidationError(f"{where}: τ(X_{k + 1}) ≠ −X_{target + 1}")
    fixed = fixed_space(phi)
    if fixed.dim != spec.fixed_dim:
        raise ValidationError(f"{where}: 不动代数维数 {fixed.dim} 与预期 {spec.fixed_dim} 不一致")
    a_h = a_h_basis(r, perm)
    h_cap_p = intersect(fixed, eigenspace(g.theta, -1))
    a_span = Subspace.span(g.dim, [k.coords for k in a_h])
    if centralizer(g, a_span, within=h_cap_p) != a_span:
        raise ValidationError(f"{where}: 𝔞_𝔥 在 𝔥∩𝔭 中不是极大交换的")
    if len(a_h) != spec.fixed_rank:
        raise ValidationError(f"{where}: 不动代数实秩 {len(a_h)} 与预期 {spec.fixed_rank} 不一致")
    return InvolutionRecord(
        name=spec.name, phi=auto, fixed_algebra_label=spec.fixed_label,
        tau_class=spec.tau_class, commutes_with_theta=commutes,
        a_h_basis=a_h, coroot_perm=tuple(perm),
        fixed_dim=fixed.dim, fixed_rank=len(a_h), alternate=spec.alternate,
    )


def a_h_basis(r: Realization, perm: Sequence[int]) -> List[LieElement]:
    """余根置换的轨道给出 𝔞_𝔥 的基：不动的 H_k，或成对的 H_k + H_π(k)"""
    out = []
    for k, target in enumerate(perm):
        if target == k:
            out.append(r.a_basis[k])
        elif k < target:
            out.append(r.a_basis[k] + r.a_basis[target])
    return out


# ---------------------------------------------------------------------------
# Weyl 群与整双曲元
# ---------------------------------------------------------------------------

def weyl_normalize(coords) -> Tuple[Tuple[Scalar, ...], List[Tuple[int, int]]]:
    """
    带符号置换轨道的规范代表元：绝对值降序

    Returns:
        (代表元, 带符号置换)；置换第 i 项 (j, s) 表示代表元第 i 个分量为 s·λ_j
    """
    values = [to_qq(c) for c in coords]
    order = sorted(range(len(values)), key=lambda i: (-abs(values[i]), i))
    perm = [(i, -1 if values[i] < 0 else 1) for i in order]
    rep = tuple(abs(values[i]) for i in order)
    return rep, perm


def root_values(r: Realization, coords) -> List[Scalar]:
    """全部限制根在 h = Σλ_k H_k 上的取值 α(h)"""
    lam = [to_qq(c) for c in coords]
    if len(lam) != r.rank:
        raise ContractViolation(f"𝔞 坐标个数 {len(lam)} 与实秩 {r.rank} 不一致")
    data: RootData = r.extras.get("root_data") or restricted_root_data(r.algebra, r.a_basis)
    return [sum((a * b for a, b in zip(key, lam)), ZERO) for key in data.roots]


def is_integral_hyperbolic(r: Realization, coords) -> bool:
    """全部 α(h) 为整数"""
    return all(v.denominator == 1 for v in root_values(r, coords))


def flips_wmin(r: Realization, coords) -> bool:
    """管型且全部 λ_k ∈ ℤ+½"""
    if not r.tube:
        return False
    lam = [to_qq(c) for c in coords]
    if len(lam) != r.rank:
        raise ContractViolation(f"𝔞 坐标个数 {len(lam)} 与实秩 {r.rank} 不一致")
    return all(is_half_odd(c) for c in lam)


def flip_by_exponential(r: Realization, coords) -> bool:
    """
    直接计算 exp(iπ ad h) 并检验其是否把 H₀ 变为 −H₀

    Raises:
        ContractViolation: h 不是整双曲元
    """
    if not is_integral_hyperbolic(r, coords):
        raise ContractViolation("h 不是整双曲元")
    h = r.element_from_coords(coords)
    phi = exp_i_pi_ad(r.algebra, h)
    return apply_map(phi, r.h_element) == -r.h_element


def half_spectrum_representative(coords) -> Tuple[Scalar, ...]:
    """
    μ_k = ½（λ_k − ½ 为偶数）或 −½（奇数）

    Raises:
        ContractViolation: 某个 λ_k 不属于 ℤ+½
    """
    out = []
    for c in coords:
        q = to_qq(c)
        if not is_half_odd(q):
            raise ContractViolation(f"λ = {format_qq(q)} 不属于 ℤ+½")
        shift = int(q - HALF)
        out.append(HALF if shift % 2 == 0 else -HALF)
    return tuple(out)
