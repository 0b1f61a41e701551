"""
楔形分类服务
由对合 τ 与 h ∈ 𝔞_𝔥 计算 𝔤(τ, h) = 𝔤₋ ⊕ [𝔤₋, 𝔤₊] ⊕ 𝔤₊ 并识别其同构类型
"""
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product as cartesian
from typing import Dict, List, Optional, Sequence, Tuple, Union

from sympy.polys.matrices import DomainMatrix

from core.entities.errors import ContractViolation, SpectrumError, ValidationError
from core.entities.iso_type import UNIDENTIFIED, IsoType, SimpleType
from core.entities.jordan_model import JordanAlgebra
from core.entities.lie_algebra import Grading, LieAlgebra, LieElement
from core.entities.realization_model import InvolutionRecord, Realization
from core.entities.scalar import HALF, ZERO, Scalar, format_qq, to_qq
from core.entities.subspace import Subspace
from core.entities.wedge_model import WedgeInput, WedgeResult
from core.services.exact_linalg import from_sparse_columns, intersect, lift, to_sparse
from core.services.iso_catalog import IsoCatalog, default_catalog, signature_of
from core.services.jordan_algebra import (
    apply_linear, check_frame, classify_involution, in_cone_closure, jordan_coords_of,
    jordan_from_grading, jordan_ideals, random_element, restrict_jordan, square,
)
from core.services.lie_core import (
    apply_map, apply_to_subspace, bracket_span, centralizer, eigen_part, fixed_space,
    grading_of, ideal_decomposition, is_abelian, is_subalgebra, restricted_root_data,
)
from core.services.realizations import frame_sum_element, root_values
from infrastructure.logger import get_logger

logger = get_logger()

# 不超过该维数的子代数直接做理想分解，更大的依赖 Jordan 理想给出的候选
REFINE_LIMIT = 30

_HALF_GRADING = tuple(to_qq(v) for v in (-1, -HALF, 0, HALF, 1))
_PATTERN_VALUES = (-HALF, ZERO, HALF)


@dataclass
class Reduction:
    """h 约化为 h₀ 的结果"""

    lam: Tuple[Scalar, ...]
    lam0: Tuple[Scalar, ...]
    h: LieElement
    h0: LieElement
    grading: Optional[Grading] = None
    grading0: Optional[Grading] = None

    @property
    def is_trivial(self) -> bool:
        """h₀ = 0"""
        return not any(self.lam0)


def reduced_coords(lam: Sequence) -> Tuple[Scalar, ...]:
    """λ′_k = λ_k（|λ_k| = ½），否则为 0"""
    out = []
    for c in lam:
        q = to_qq(c)
        out.append(q if q in (HALF, -HALF) else ZERO)
    return tuple(out)


def _reduce(inp: WedgeInput, trace: List[dict]) -> Reduction:
    """
    h → h₀，并校验 𝔤_{±1}(h₀) ⊆ 𝔤_{±1}(h)

    Raises:
        ValidationError: 包含关系不成立
    """
    r = inp.realization
    g = r.algebra
    lam = inp.a_coords()
    lam0 = reduced_coords(lam)
    reduction = Reduction(lam=lam, lam0=lam0, h=r.element_from_coords(lam),
                          h0=r.element_from_coords(lam0))
    step = {
        "step": "reduce_h",
        "lambda": [format_qq(c) for c in lam],
        "lambda0": [format_qq(c) for c in lam0],
    }
    if reduction.is_trivial:
        step["trivial"] = True
        trace.append(step)
        return reduction

    values = set(root_values(r, lam)) | {ZERO}
    reduction.grading = grading_of(g, reduction.h, candidates=values, check=False)
    reduction.grading0 = grading_of(g, reduction.h0, candidates=_HALF_GRADING, check=False)
    for sign in (1, -1):
        if not reduction.grading.part(sign).contains_subspace(reduction.grading0.part(sign)):
            trace.append(step)
            raise ValidationError(f"{inp.describe()}: 𝔤_{sign}(h₀) ⊄ 𝔤_{sign}(h)", trace)
    step["g1_dim"] = reduction.grading.part(1).dim
    step["g1_h0_dim"] = reduction.grading0.part(1).dim
    trace.append(step)
    return reduction


def reduce_h(inp: WedgeInput, trace: Optional[List[dict]] = None) -> LieElement:
    """
    h₀ = Σ λ′_k H_k

    Raises:
        ValidationError: 𝔤_{±1}(h₀) ⊄ 𝔤_{±1}(h)
    """
    return _reduce(inp, trace if trace is not None else []).h0


# ---------------------------------------------------------------------------
# 管型子代数与锥
# ---------------------------------------------------------------------------

def tube_subalgebra(g: LieAlgebra, h0: LieElement, grading: Optional[Grading] = None) -> Subspace:
    """
    𝔤_t(h₀) = 𝔤₋₁ ⊕ [𝔤₋₁, 𝔤₁] ⊕ 𝔤₁

    Raises:
        ContractViolation: ad(h₀) 的谱不在 {0, ±½, ±1} 中，或 𝔤_{±1}(h₀) 为零
        ValidationError: 结果不对括号封闭
    """
    if grading is None:
        try:
            grading = grading_of(g, h0, candidates=_HALF_GRADING, check=False)
        except SpectrumError as e:
            raise ContractViolation(f"{g.label}: ad(h₀) 的谱不在 {{0, ±½, ±1}} 中") from e
    if set(grading.parts) - set(_HALF_GRADING):
        raise ContractViolation(f"{g.label}: ad(h₀) 的谱不在 {{0, ±½, ±1}} 中")
    up, down = grading.part(1), grading.part(-1)
    if up.is_zero() or down.is_zero():
        raise ContractViolation(f"{g.label}: 𝔤_{{±1}}(h₀) 为零")
    gt = down.join(bracket_span(g, down, up), up)
    if not is_subalgebra(g, gt):
        raise ValidationError(f"{g.label}: 𝔤_t(h₀) 不对括号封闭")
    return gt


def cone_section_span(V: JordanAlgebra, sub: Subspace, sigma=None,
                      samples: int = 50, seed: int = 0) -> Subspace:
    """
    子代数 sub 中平方元（均位于 V 的闭锥中）的线性张成

    取基元素 b 的 b²、(e + b)² 以及至少 max(samples, 3·dim) 个随机元素的平方，
    逐个校验落在 sub 内且属于闭锥，最后要求张成等于 sub。

    Raises:
        ValidationError: sub 不是子代数、不被 σ 固定，或平方元不满足上述条件
    """
    if sub.is_zero():
        return sub
    try:
        W = restrict_jordan(V, sub)
    except ContractViolation as e:
        raise ValidationError(f"{V.label}: 锥截面所在子空间不是 Jordan 子代数: {e}") from e
    if sigma is not None and any(apply_linear(sigma, row) != row for row in sub.rows):
        raise ValidationError(f"{V.label}: 子空间不被 σ 逐点固定")

    rng = random.Random(seed)
    candidates = []
    for row in sub.rows:
        candidates.append(row)
        candidates.append(tuple(a + b for a, b in zip(V.unit, row)))
    for _ in range(max(samples, 3 * sub.dim)):
        candidates.append(sub.combine(random_element(W, rng)))

    squares = []
    for x in candidates:
        s = square(V, x)
        if not sub.contains(s):
            raise ValidationError(f"{V.label}: 平方元不在子代数中")
        if not in_cone_closure(V, s):
            raise ValidationError(f"{V.label}: 平方元不在闭锥中")
        squares.append(s)
    span = Subspace.span(V.dim, squares)
    if span != sub:
        raise ValidationError(f"{V.label}: 锥截面张成维数 {span.dim} ≠ {sub.dim}")
    return span


def _sigma_on(V: JordanAlgebra, g: LieAlgebra, tau: InvolutionRecord) -> DomainMatrix:
    """σ = −τ 在 V = 𝔤₁(h₀) 上的矩阵"""
    columns = []
    for row in V.embedding.rows:
        image = apply_map(tau.phi.matrix, LieElement(row))
        coords = V.embedding.try_coordinates(image.coords)
        if coords is None:
            raise ValidationError(f"{g.label}: τ 不保持 𝔤₁(h₀)")
        columns.append(to_sparse([-c for c in coords]))
    return from_sparse_columns(columns, V.dim)


# ---------------------------------------------------------------------------
# 同构识别
# ---------------------------------------------------------------------------

def _noncompact_part(g: LieAlgebra) -> Subspace:
    """𝔭 = {θ = −1}（缓存于代数上）"""
    p = g.cache.get("p")
    if p is None:
        p = eigen_part(g.theta, -1)
        g.cache["p"] = p
    return p


def _root_data(g: LieAlgebra, ideal: Subspace, a_part: Subspace):
    """理想上的限制根数据（缓存于代数上）"""
    cache: Dict = g.cache.setdefault("restricted_roots", {})
    key = (ideal, a_part)
    data = cache.get(key)
    if data is None:
        data = restricted_root_data(g, [LieElement(row) for row in a_part.rows],
                                    within=None if ideal.is_full() else ideal)
        cache[key] = data
    return data


def _identify_simple(g: LieAlgebra, ideal: Subspace, abelian: Subspace,
                     catalog: IsoCatalog) -> SimpleType:
    """按 (维数, 实秩, 重数分布) 识别一个单理想"""
    a_part = abelian if ideal.is_full() else intersect(ideal, abelian)
    if ideal.dim == 1 and a_part.dim == 1:
        return SimpleType("so11")
    p_part = intersect(ideal, _noncompact_part(g))
    if centralizer(g, a_part, within=p_part) != a_part:
        return SimpleType(UNIDENTIFIED, invariants=(
            ("dim", str(ideal.dim)), ("reason", "a not maximal abelian in p"),
        ))
    data = _root_data(g, ideal, a_part)
    signature = signature_of(ideal.dim, a_part.dim, data.roots.values())
    found = catalog.lookup(signature)
    if found is not None:
        return found
    mults = ",".join(f"{m}x{n}" for m, n in signature[2])
    return SimpleType(UNIDENTIFIED, invariants=(
        ("dim", str(signature[0])), ("mults", mults), ("rank", str(signature[1])),
    ))


def identify_iso_type(g: LieAlgebra, sub: Subspace, abelian: Subspace,
                      hints: Optional[Sequence[Subspace]] = None,
                      catalog: Optional[IsoCatalog] = None) -> IsoType:
    """
    识别 θ-稳定子代数的同构类型

    abelian 为 𝔭 中包含 sub 的极大交换子空间部分的环境交换子空间（通常为 𝔞 或 𝔞_𝔥）。
    给出 hints（候选理想）时只校验不再细分；否则较小的子代数直接分解，较大的视为单代数。

    Args:
        g: 带 Cartan 对合的李代数
        sub: 括号封闭的 θ-稳定子空间
        abelian: 交换子空间，sub ∩ abelian 应在 sub ∩ 𝔭 中极大交换
        hints: 候选理想（环境坐标）
        catalog: 签名目录（默认全局目录）

    Returns:
        规范形式的 IsoType；无法识别的单项标为 unidentified 并附不变量
    """
    catalog = catalog or default_catalog()
    if sub.is_zero():
        return IsoType.zero()
    if sub.dim == 1 and abelian.contains_subspace(sub):
        return IsoType.of(SimpleType("so11"))
    if is_abelian(g, sub):
        return IsoType.of(SimpleType(UNIDENTIFIED, invariants=(
            ("dim", str(sub.dim)), ("reason", "abelian"),
        )))
    if hints:
        ideals = ideal_decomposition(g, within=sub, hints=hints, refine=False)
    elif sub.dim <= REFINE_LIMIT:
        try:
            ideals = ideal_decomposition(g, within=sub)
        except ContractViolation:
            return IsoType.of(SimpleType(UNIDENTIFIED, invariants=(
                ("dim", str(sub.dim)), ("reason", "not semisimple"),
            )))
    else:
        ideals = ideal_decomposition(g, within=sub, hints=[sub], refine=False)
    summands = [_identify_simple(g, ideal, abelian, catalog) for ideal in ideals]
    return IsoType(tuple(summands)).canonical()


# ---------------------------------------------------------------------------
# 主流程
# ---------------------------------------------------------------------------

def _zero_result(inp: WedgeInput, red: Reduction, trace: List[dict]) -> WedgeResult:
    zero = Subspace.zero(inp.realization.algebra.dim)
    return WedgeResult(
        algebra=inp.realization.family, params=inp.realization.params,
        tau_name=inp.tau.name, tau_class=inp.tau.tau_class,
        h=inp.h_coords, h0=red.lam0, c_plus=zero, c_minus=zero,
        bracket_part=zero, g_tau_h=zero, iso=IsoType.zero(), trace=trace,
    )


def _frame_elements(r: Realization, lam0: Sequence[Scalar]) -> List[LieElement]:
    """λ′_k > 0 取 X_k，λ′_k < 0 取 −Y_k"""
    out = []
    for c, (xk, yk) in zip(lam0, r.grid):
        if c > 0:
            out.append(xk)
        elif c < 0:
            out.append(-yk)
    return out


def _predicted_type(info) -> Optional[IsoType]:
    """由不动 Jordan 子代数各单因子的 (r, d) 预测 𝔤(τ, h) 的类型"""
    try:
        return IsoType(tuple(SimpleType.from_rank_and_peirce(t.rank, t.peirce)
                             for t in info.fixed_types)).canonical()
    except ContractViolation:
        return None


def compute_wedge(inp: WedgeInput, samples: int = 50, seed: int = 0,
                  catalog: Optional[IsoCatalog] = None) -> WedgeResult:
    """
    计算 𝔤(τ, h) 及其同构类型

    步骤：h → h₀；𝔤_t(h₀)；V = 𝔤₁(h₀) 上的 Jordan 结构；σ = −τ|_V 的分类；
    锥截面 C₊ = V^σ 的张成；C₋ = θC₊；最后识别同构类型并与 V^σ 的预测比对。

    Args:
        inp: 分类输入
        samples: 锥截面随机采样个数下限
        seed: 随机种子
        catalog: 签名目录

    Returns:
        WedgeResult（trace 记录每一步）

    Raises:
        ContractViolation: 输入不满足前提
        ValidationError: 任一中间校验失败，附带已完成步骤的 trace
    """
    r = inp.realization
    g = r.algebra
    trace: List[dict] = []
    red = _reduce(inp, trace)
    if red.is_trivial:
        logger.debug(f"{inp.describe()}: h₀ = 0，楔形平凡")
        return _zero_result(inp, red, trace)

    try:
        gt = tube_subalgebra(g, red.h0, red.grading0)
        if apply_to_subspace(inp.tau.phi.matrix, gt) != gt:
            raise ValidationError(f"{inp.describe()}: 𝔤_t(h₀) 不是 τ-不变的")
        trace.append({"step": "tube_subalgebra", "dim": gt.dim})

        frame_lie = _frame_elements(r, red.lam0)
        x = g.zero()
        for xk in frame_lie:
            x = x + xk
        y = -apply_map(g.theta, x)
        V = jordan_from_grading(g, red.h0, x, y, label=f"V({r.label}, h₀)",
                                require_simple=False, allow_half=True)
        trace.append({"step": "jordan", "dim": V.dim})

        sigma = _sigma_on(V, g, inp.tau)
        frame = check_frame(V, [jordan_coords_of(V, xk) for xk in frame_lie])
        info = classify_involution(V, sigma, frame)
        trace.append({"step": "involution", "classification": info.classification,
                      "fixed_dim": info.fixed_subalgebra.dim, "fixed": info.fixed_label()})
        trace.append({"step": "frame", "rank": frame.rank,
                      "fixed_frame_rank": info.frame.rank if info.frame else info.fixed_rank})

        cone = cone_section_span(V, fixed_space(sigma), sigma, samples=samples, seed=seed)
        c_plus = lift(V.embedding, cone)
        up = red.grading.part(1)
        for row in c_plus.rows:
            b = LieElement(row)
            if apply_map(inp.tau.phi.matrix, b) != -b or not up.contains(row):
                raise ValidationError(f"{inp.describe()}: C₊ 中的元素不满足 τb = −b, b ∈ 𝔤₁(h)")
        c_minus = apply_to_subspace(g.theta, c_plus)
        bracket_part = bracket_span(g, c_minus, c_plus)
        g_tau_h = c_minus.join(bracket_part, c_plus)
        if not is_abelian(g, c_plus) or not is_abelian(g, c_minus):
            raise ValidationError(f"{inp.describe()}: 𝔤₊ 或 𝔤₋ 不交换")
        if g_tau_h.dim != c_plus.dim + c_minus.dim + bracket_part.dim:
            raise ValidationError(f"{inp.describe()}: 三部分之和不是直和")
        if not is_subalgebra(g, g_tau_h) or not gt.contains_subspace(g_tau_h):
            raise ValidationError(f"{inp.describe()}: 𝔤(τ,h) 不是 𝔤_t(h₀) 的子代数")
        trace.append({"step": "cones", "c_plus_dim": c_plus.dim, "bracket_dim": bracket_part.dim,
                      "dim": g_tau_h.dim})

        Vs = info.fixed_subalgebra
        hints = []
        for J in jordan_ideals(Vs):
            J_amb = lift(Vs.embedding, J)
            J_minus = apply_to_subspace(g.theta, J_amb)
            hints.append(J_minus.join(bracket_span(g, J_minus, J_amb), J_amb))
        a_span = Subspace.span(g.dim, [a.coords for a in r.a_basis])
        iso = identify_iso_type(g, g_tau_h, a_span, hints, catalog)
        predicted = _predicted_type(info)
        trace.append({"step": "identify", "iso": iso.display(),
                      "predicted": predicted.display() if predicted else None})
        if predicted is not None and iso.identified and predicted.key() != iso.key():
            raise ValidationError(
                f"{inp.describe()}: 识别结果 {iso.display()} 与 V^σ 的预测 {predicted.display()} 不一致",
                trace,
            )
    except ValidationError as e:
        if not e.trace:
            e.trace = trace
        raise

    logger.debug(f"{inp.describe()}: 𝔤(τ,h) = {iso.display()} (dim {g_tau_h.dim})")
    return WedgeResult(
        algebra=r.family, params=r.params, tau_name=inp.tau.name, tau_class=inp.tau.tau_class,
        h=inp.h_coords, h0=red.lam0, c_plus=c_plus, c_minus=c_minus,
        bracket_part=bracket_part, g_tau_h=g_tau_h, iso=iso, trace=trace,
    )


# ---------------------------------------------------------------------------
# 枚举与表格辅助
# ---------------------------------------------------------------------------

def canonical_pattern(tau: InvolutionRecord, pattern: Sequence[Scalar]) -> Tuple[Scalar, ...]:
    """
    模式在对称下的代表元

    Cayley 型时 𝔞_𝔥 = 𝔞，Weyl 群可任意置换分量，取降序；
    h 与 −h 给出同一楔形，取两者中的较大者
    """
    def transform(p):
        return tuple(sorted(p, reverse=True)) if tau.is_cayley else tuple(p)

    p = tuple(to_qq(c) for c in pattern)
    return max(transform(p), transform(tuple(-c for c in p)))


def enumeration_patterns(tau: InvolutionRecord) -> List[Tuple[Scalar, ...]]:
    """{−½, 0, ½}^{dim 𝔞_𝔥} 的规范代表元（确定顺序，降序）"""
    found = {canonical_pattern(tau, p)
             for p in cartesian(_PATTERN_VALUES, repeat=len(tau.a_h_basis))}
    return sorted(found, reverse=True)


def enumerate_table(r: Realization, tau: InvolutionRecord, threads: int = 1,
                    samples: int = 50, seed: int = 0,
                    catalog: Optional[IsoCatalog] = None) -> List[WedgeResult]:
    """
    遍历全部 h 模式，按同构类型去重（保留第一个出现的结果，包括零代数）
    """
    patterns = enumeration_patterns(tau)
    logger.info(f"{r.label}/{tau.name}: 枚举 {len(patterns)} 个模式, 线程数 {threads}")

    def run(pattern):
        return compute_wedge(WedgeInput(r, tau, pattern), samples=samples, seed=seed,
                             catalog=catalog)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, patterns))
    else:
        results = [run(p) for p in patterns]
    seen = set()
    unique = []
    for res in results:
        key = res.iso.key()
        if key not in seen:
            seen.add(key)
            unique.append(res)
    return unique


def partial_sum_patterns(r: Realization) -> List[Tuple[Scalar, ...]]:
    """(½^j, 0^{r−j})，j = r, …, 1"""
    return [tuple([HALF] * j + [ZERO] * (r.rank - j)) for j in range(r.rank, 0, -1)]


def tube_part_type(r: Realization, catalog: Optional[IsoCatalog] = None) -> IsoType:
    """𝔤_t(½ΣH_k) 的同构类型"""
    g = r.algebra
    gt = tube_subalgebra(g, frame_sum_element(r))
    a_span = Subspace.span(g.dim, [a.coords for a in r.a_basis])
    return identify_iso_type(g, gt, a_span, catalog=catalog)


def nontube_restriction_check(r: Realization, tau: InvolutionRecord,
                              catalog: Optional[IsoCatalog] = None) -> Tuple[IsoType, IsoType]:
    """
    τ 限制到 𝔤_t(½ΣH_k)：返回 (𝔤_t 的类型, 𝔤_t^τ 的类型)

    Raises:
        ValidationError: 𝔤_t 不是 τ-不变的
    """
    g = r.algebra
    gt = tube_subalgebra(g, frame_sum_element(r))
    tau_m = tau.phi.matrix
    if apply_to_subspace(tau_m, gt) != gt:
        raise ValidationError(f"{r.label}/{tau.name}: 𝔤_t 不是 τ-不变的")
    fixed = intersect(fixed_space(tau_m), gt)
    a_span = Subspace.span(g.dim, [a.coords for a in r.a_basis])
    ah_span = Subspace.span(g.dim, [a.coords for a in tau.a_h_basis])
    gt_type = identify_iso_type(g, gt, a_span, catalog=catalog)
    fixed_type = identify_iso_type(g, fixed, ah_span, catalog=catalog)
    logger.debug(f"{r.label}/{tau.name}: 𝔤_t = {gt_type.display()}, 𝔤_t^τ = {fixed_type.display()}")
    return gt_type, fixed_type


class WedgeClassifier:
    """
    分类器：固定采样参数、线程数与签名目录

    Example:
        classifier = WedgeClassifier(threads=4)
        result = classifier.classify(classifier.input_for(r, "cayley", ["1/2", "0"]))
    """

    def __init__(self, samples: int = 50, seed: int = 0, threads: int = 1,
                 catalog: Optional[IsoCatalog] = None):
        self.samples = samples
        self.seed = seed
        self.threads = max(1, int(threads))
        self.catalog = catalog or default_catalog()

    @staticmethod
    def input_for(r: Realization, tau: Union[str, int, InvolutionRecord],
                  h: Sequence) -> WedgeInput:
        """由对合名（或下标）与 𝔞_𝔥 坐标构造输入"""
        record = tau if isinstance(tau, InvolutionRecord) else r.involution(tau)
        return WedgeInput(r, record, tuple(to_qq(c) for c in h))

    def classify(self, inp: WedgeInput) -> WedgeResult:
        """单个用例"""
        return compute_wedge(inp, samples=self.samples, seed=self.seed, catalog=self.catalog)

    def enumerate(self, r: Realization, tau: Union[str, int, InvolutionRecord]) -> List[WedgeResult]:
        """全部模式，按同构类型去重"""
        record = tau if isinstance(tau, InvolutionRecord) else r.involution(tau)
        return enumerate_table(r, record, threads=self.threads, samples=self.samples,
                               seed=self.seed, catalog=self.catalog)

    def partial_sums(self, r: Realization, tau: Union[str, int] = "cayley") -> List[WedgeResult]:
        """(½^j, 0^{r−j}) 的楔形，j 从 r 递减到 1"""
        return [self.classify(self.input_for(r, tau, p)) for p in partial_sum_patterns(r)]

    def tube_part(self, r: Realization) -> IsoType:
        """𝔤_t(½ΣH_k) 的类型"""
        return tube_part_type(r, self.catalog)

    def restriction(self, r: Realization, tau: Union[str, int]) -> Tuple[IsoType, IsoType]:
        """τ 在 𝔤_t 上的限制"""
        return nontube_restriction_check(r, r.involution(tau), self.catalog)
