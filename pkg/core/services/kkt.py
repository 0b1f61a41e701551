"""
KKT 构造服务
由欧氏 Jordan 代数构造 3-分次厄米李代数 𝔤 = V ⊕ str(V) ⊕ V̄，
Jordan 对合到李代数对合的延拓，以及单 Jordan 代数的厄米伙伴
"""
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from core.entities.errors import ContractViolation, ValidationError
from core.entities.iso_type import IsoType, SimpleType, named_type
from core.entities.jordan_model import JordanAlgebra
from core.entities.lie_algebra import LieAlgebra, LieElement, LinearAutomorphism
from core.entities.realization_model import CLASS_SPLIT, InvolutionRecord, Realization
from core.entities.scalar import HALF, ONE, Scalar, to_qq
from core.entities.subspace import Subspace
from core.services.exact_linalg import (
    SparseVector, from_sparse_columns, identity, mat_equal, to_dense,
)
from core.services.families.base import InvolutionSpec, commutator, flatten
from core.services.jordan_algebra import (
    adjoint, build_direct, classify_involution, derivation_algebra, entrywise_involution,
    identify_jordan_type, inner_derivations, jordan_from_grading, jordan_rank, left_mult,
    standard_frame,
)
from core.services.lie_core import (
    apply_map, exp_i_pi_ad, fixed_space, is_involutive_automorphism, make_algebra,
)
from core.services.realizations import (
    MatrixCoordinates, assemble_realization, certify_involution, frame_sum_element,
    standard_involutions,
)
from core.services.wedge_classifier import identify_iso_type
from infrastructure.logger import get_logger

logger = get_logger()


@dataclass
class KKTAlgebra:
    """
    KKT 李代数及其分块坐标

    基的顺序：u_1 … u_n（𝔤₁ = V），A_1 … A_m（𝔤₀ = str(V)），v̄_1 … v̄_n（𝔤₋₁ = V̄）
    """

    algebra: LieAlgebra
    jordan: JordanAlgebra
    chart: MatrixCoordinates
    derivation_dim: int
    grading_element: LieElement = field(init=False)

    def __post_init__(self):
        """验证数据"""
        if self.algebra.dim != 2 * self.n + self.m:
            raise ContractViolation("KKT 代数维数与分块不一致")
        self.grading_element = self.g0_element(identity(self.n))

    @property
    def n(self) -> int:
        """dim V"""
        return self.jordan.dim

    @property
    def m(self) -> int:
        """dim 𝔤₀"""
        return self.chart.space.dim

    def upper(self, v: Sequence) -> LieElement:
        """V 中元素在 𝔤₁ 中的像"""
        coords = [to_qq(c) for c in v]
        return LieElement(tuple(coords) + (to_qq(0),) * (self.m + self.n))

    def lower(self, v: Sequence) -> LieElement:
        """V 中元素 v 对应的 v̄ ∈ 𝔤₋₁"""
        coords = [to_qq(c) for c in v]
        return LieElement((to_qq(0),) * (self.n + self.m) + tuple(coords))

    def g0_element(self, a: DomainMatrix) -> LieElement:
        """
        str(V) 中算子对应的元素

        Raises:
            ValidationError: 算子不在 str(V) 中
        """
        coords = self.chart.coords(a)
        return LieElement.from_sparse({self.n + k: v for k, v in coords.items()}, self.algebra.dim)

    def triple(self) -> Tuple[LieElement, LieElement, LieElement]:
        """sl(2) 三元组 (2L(e), e, ē)"""
        e = self.jordan.unit
        return self.grading_element.scale(2), self.upper(e), self.lower(e)


def _shift(vec: SparseVector, offset: int, scale: Scalar = ONE) -> SparseVector:
    return {offset + k: scale * v for k, v in vec.items() if v}


def _column(a: DomainMatrix, j: int) -> SparseVector:
    """A e_j"""
    out: SparseVector = {}
    for i, row in a.to_dod().items():
        v = row.get(j)
        if v:
            out[i] = v
    return out


def structure_algebra_chart(V: JordanAlgebra, check_derivations: bool = True) -> Tuple[MatrixCoordinates, int]:
    """
    str(V) = L(V) ⊕ Der(V) 的坐标图

    Args:
        V: 欧氏 Jordan 代数
        check_derivations: 是否显式求解导子方程（否则只用内导子）

    Returns:
        (坐标图, dim Der)

    Raises:
        ValidationError: L(V) 与 Der(V) 的和不是直和
    """
    n = V.dim
    if check_derivations:
        derivations = derivation_algebra(V, cross_check=True)
    else:
        derivations = inner_derivations(V)
    ops = [left_mult(V, V.basis_vector(i)) for i in range(n)] + derivations
    space = Subspace.span(n * n, [to_dense(flatten(a), n * n) for a in ops])
    if space.dim != n + len(derivations):
        raise ValidationError(
            f"{V.label}: dim str(V) = {space.dim} ≠ dim V + dim Der = {n + len(derivations)}"
        )
    return MatrixCoordinates(space, n), len(derivations)


def kkt_lie(V: JordanAlgebra, check_derivations: bool = True, validate: bool = True) -> KKTAlgebra:
    """
    KKT 构造

    括号：[A, u] = Au，[A, v̄] = −(A^♯v)‾，[A, B] = AB − BA，
    [u, v̄] = 2(L(uv) + [L(u), L(v)])，[u, u'] = [v̄, v̄'] = 0；
    θ: u ↦ −ū，v̄ ↦ −v，A ↦ −A^♯。

    构造后重新由 (L(e), e, ē) 抽取 Jordan 代数，要求乘法表与 V 完全一致。

    Raises:
        ValidationError: Jacobi、θ、str(V) 封闭性或回抽校验失败
    """
    n = V.dim
    chart, der_dim = structure_algebra_chart(V, check_derivations)
    basis = chart.basis_matrices()
    m = len(basis)
    dim = 2 * n + m
    up, mid, low = 0, n, n + m
    logger.info(f"KKT({V.label}): dim = {n} + {m} + {n} = {dim}")

    sharp = [adjoint(V, a) for a in basis]
    lefts = [left_mult(V, V.basis_vector(i)) for i in range(n)]

    structure: Dict[Tuple[int, int], SparseVector] = {}
    # [u_j, A_k] = −A_k e_j
    for j in range(n):
        for k, a in enumerate(basis):
            c = _shift(_column(a, j), up, -ONE)
            if c:
                structure[(up + j, mid + k)] = c
    # [u_i, v̄_j] = 2(L(e_i e_j) + [L(e_i), L(e_j)])
    for i in range(n):
        for j in range(n):
            prod = V.table.get((i, j), {})
            op = commutator(lefts[i], lefts[j])
            for k, v in prod.items():
                op = op + lefts[k] * v
            c = _shift(chart.coords(op), mid, to_qq(2))
            if c:
                structure[(up + i, low + j)] = c
    # [A_k, A_l]
    for k in range(m):
        for l in range(k + 1, m):
            c = _shift(chart.coords(commutator(basis[k], basis[l])), mid)
            if c:
                structure[(mid + k, mid + l)] = c
    # [A_k, v̄_j] = −(A_k^♯ e_j)‾
    for k in range(m):
        for j in range(n):
            c = _shift(_column(sharp[k], j), low, -ONE)
            if c:
                structure[(mid + k, low + j)] = c

    theta_cols: List[SparseVector] = [{low + i: -ONE} for i in range(n)]
    for k in range(m):
        theta_cols.append(_shift(chart.coords(-sharp[k]), mid))
    theta_cols.extend({up + i: -ONE} for i in range(n))
    theta = from_sparse_columns(theta_cols, dim)

    algebra = make_algebra(dim, structure, label=f"KKT({V.label})", theta=theta, validate=validate)
    K = KKTAlgebra(algebra=algebra, jordan=V, chart=chart, derivation_dim=der_dim)
    if validate:
        _check_round_trip(K)
    return K


def _check_round_trip(K: KKTAlgebra) -> None:
    """由 (L(e), e, ē) 重新抽取 Jordan 代数并比对乘法表"""
    V = K.jordan
    _, x, y = K.triple()
    W = jordan_from_grading(K.algebra, K.grading_element, x, y, label=f"V({K.algebra.label})",
                            require_simple=False)
    if W.dim != V.dim or W.table != V.table or W.unit != V.unit:
        raise ValidationError(f"{K.algebra.label}: 回抽的 Jordan 乘法与 {V.label} 不一致")


def kkt_partner(V: JordanAlgebra) -> SimpleType:
    """
    单欧氏 Jordan 代数的厄米伙伴：由秩与 Peirce 常数查表

    Raises:
        ContractViolation: V 的类型无法识别
    """
    t = identify_jordan_type(V)
    if t.family == "unidentified":
        raise ContractViolation(f"{V.label}: 无法识别的 Jordan 代数类型")
    return SimpleType.from_rank_and_peirce(t.rank, t.peirce)


# ---------------------------------------------------------------------------
# 实现
# ---------------------------------------------------------------------------

def kkt_realization(family: str, params: Sequence[int] = ()) -> Realization:
    """
    KKT 李代数的实现：X_k = c_k，Y_k = c̄_k，H_k = 2L(c_k)，H₀ = ½(e − ē)

    Args:
        family: Jordan 族名（sym / hermC / hermH / hermO3 / mink）
        params: Jordan 族参数

    Raises:
        ContractViolation: 族或参数无效
        ValidationError: 结构数据校验失败
    """
    V = build_direct(family, params)
    if family == "mink" and V.dim == 2:
        raise ContractViolation("M^2 = R × R 不是单 Jordan 代数")
    K = kkt_lie(V)
    frame = standard_frame(V)
    grid = [(K.upper(c), K.lower(c)) for c in frame.idempotents]
    a_basis = [K.g0_element(left_mult(V, c) * to_qq(2)) for c in frame.idempotents]
    _, x, y = K.triple()
    h0 = (x - y).scale(HALF)
    r = jordan_rank(V)
    jtype = identify_jordan_type(V)
    partner = kkt_partner(V)
    expected = {"long": 1, "middle": jtype.peirce if r > 1 else 0, "short": 0}
    realization = assemble_realization(
        K.algebra, f"kkt:{family}", tuple(int(p) for p in params), a_basis, h0, grid,
        tube=True, iso=IsoType.of(partner), expected=expected,
        extras={"kkt": K, "source_jordan": V},
    )
    logger.info(f"{realization.label}: 实秩 {r}，同构于 {partner.display()}")
    return realization


def extend_involution_to_lie(K: KKTAlgebra, sigma: DomainMatrix, label: str = "sigma") -> LinearAutomorphism:
    """
    Jordan 对合 σ 延拓到 𝔤：u ↦ σu，v̄ ↦ (σv)‾，A ↦ σAσ

    Raises:
        ValidationError: 延拓不是与 θ 交换、固定 L(e) 的对合自同构
    """
    n, m = K.n, K.m
    basis = K.chart.basis_matrices()
    cols: List[SparseVector] = []
    for j in range(n):
        cols.append(_column(sigma, j))
    for a in basis:
        cols.append(_shift(K.chart.coords(sigma * a * sigma), n))
    for j in range(n):
        cols.append(_shift(_column(sigma, j), n + m))
    phi = from_sparse_columns(cols, K.algebra.dim)
    auto = LinearAutomorphism(phi, label)
    g = K.algebra
    where = f"{g.label}/{label}"
    if not is_involutive_automorphism(g, auto):
        raise ValidationError(f"{where}: 延拓不是对合自同构")
    if not mat_equal(phi * g.theta, g.theta * phi):
        raise ValidationError(f"{where}: 延拓与 θ 不交换")
    if apply_map(phi, K.grading_element) != K.grading_element:
        raise ValidationError(f"{where}: 延拓不固定 L(e)")
    return auto


def fixed_algebra_type(r: Realization, fixed: Subspace, jordan_label: str) -> IsoType:
    """
    不动代数的类型：按 𝔞 上的根数据签名查目录

    不是单代数、𝔞 不在其中极大或目录中没有该签名时，退回 g^tau(实现, V^σ) 形式的描述性标签
    """
    g = r.algebra
    a_span = Subspace.span(g.dim, [a.coords for a in r.a_basis])
    found = identify_iso_type(g, fixed, a_span)
    if found.identified:
        return found
    return named_type(f"g^tau({r.label}, {jordan_label})")


def kkt_involutions(r: Realization) -> List[InvolutionRecord]:
    """
    KKT 实现的标准对合：Cayley 型，以及由逐元素 Jordan 对合 σ 得到的 τ = τ_h ∘ σ_𝔤

    τ_h = exp(iπ ad ½ΣH_k)，τ 在 V 上等于 −σ。
    """
    if r.involutions:
        return r.involutions
    records = list(standard_involutions(r))
    K: KKTAlgebra = r.extras["kkt"]
    V = K.jordan
    try:
        sigma = entrywise_involution(V)
    except ContractViolation:
        sigma = None
    if sigma is not None:
        info = classify_involution(V, sigma, frame=standard_frame(V))
        sigma_g = extend_involution_to_lie(K, sigma, label="half")
        tau_h = exp_i_pi_ad(r.algebra, frame_sum_element(r))
        phi = tau_h * sigma_g.matrix
        # 𝔤₀ 上取 σ 的不动部分，𝔤_{±1} 上各取 −σ 的不动部分
        n_minus = V.dim - info.fixed_subalgebra.dim
        fixed_dim = fixed_space(sigma_g.matrix).dim - 2 * info.fixed_subalgebra.dim + 2 * n_minus
        spec = InvolutionSpec(
            name="half", tau_class=CLASS_SPLIT,
            fixed_label=fixed_algebra_type(r, fixed_space(phi), info.fixed_label()),
            fixed_dim=fixed_dim, fixed_rank=r.rank,
            coroot_perm=tuple(range(r.rank)),
        )
        records.append(certify_involution(r, spec, phi))
    r.involutions = records
    logger.info(f"{r.label}: 标准对合 {[rec.name for rec in records]}")
    return records
