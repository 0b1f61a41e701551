"""
性质测试服务
固定种子的随机性质测试：Jordan 公理、Peirce 规则、平方引理、锥判定、
翻转判据、约化可靠性、三分次、KKT 往返与对合三分法
"""
import random
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from core.entities.errors import LieWedgeError
from core.entities.iso_type import IsoType
from core.entities.jordan_model import (
    NONSPLIT, PEIRCE_REFLECTION, SPLIT_SIMPLE, JordanAlgebra, PeirceDecomposition,
)
from core.entities.realization_model import CLASS_CAYLEY, CLASS_NONSPLIT, CLASS_SPLIT, Realization
from core.entities.report_model import PropsReport, SuiteOutcome
from core.entities.scalar import HALF, ZERO, Scalar, format_qq, to_qq
from core.entities.subspace import Subspace
from core.entities.wedge_model import CaseSpec, WedgeInput, WedgeResult
from core.services.exact_linalg import eigenspace, intersect
from core.services.iso_catalog import simple_dim
from core.services.jordan_algebra import (
    JordanFactory, check_jordan_axioms, frame_from_grid, in_cone_closure, peirce_components,
    peirce_frame, random_element, realization_jordan, square, standard_frame,
)
from core.services.kkt import kkt_partner
from core.services.lie_core import grading_of, is_abelian
from core.services.realizations import (
    KKT_PREFIX, RealizationFactory, flip_by_exponential, flips_wmin, root_values,
)
from core.services.wedge_classifier import compute_wedge, identify_iso_type
from infrastructure.logger import get_logger

logger = get_logger()

# 直接构造的 Jordan 代数 (族, 参数)
JORDAN_CASES: Tuple[Tuple[str, Tuple[int, ...]], ...] = (
    ("sym", (2,)), ("sym", (3,)), ("hermC", (2,)), ("hermH", (2,)), ("mink", (4,)), ("hermO3", ()),
)

KKT_CASES: Tuple[Tuple[str, Tuple[int, ...]], ...] = (
    ("sym", (1,)), ("sym", (2,)), ("sym", (3,)),
    ("hermC", (1,)), ("hermC", (2,)), ("hermC", (3,)),
    ("hermH", (1,)), ("hermH", (2,)), ("hermH", (3,)),
    ("mink", (3,)), ("hermO3", ()),
)

TUBE_CASES = ("su:1,1", "su:2,2", "sp:2", "so2:3", "so2:4", "sostar:4")

FLIP_CASES = ("su:1,1", "su:2,2", "sp:2", "so2:3")

# (实现, 对合)
REDUCTION_CASES = (
    ("su:2,2", "cayley"), ("su:2,2", "sp"), ("sp:2", "cayley"), ("sp:2", "spc"),
    ("so2:3", "so1n"), ("su:2,1", "so"),
)

_GRID_VALUES = tuple(to_qq(v) for v in ("-3/2", -1, "-1/2", 0, "1/2", 1, "3/2"))
_INTEGER_VALUES = tuple(to_qq(v) for v in (-2, -1, 0, 1, 2))
_HALF_ODD_VALUES = tuple(to_qq(v) for v in ("-3/2", "-1/2", "1/2", "3/2"))

# 各类对合下 V^σ 允许的分类
_EXPECTED_CLASSES = {
    CLASS_CAYLEY: (PEIRCE_REFLECTION,),
    CLASS_SPLIT: (SPLIT_SIMPLE, PEIRCE_REFLECTION),
    CLASS_NONSPLIT: (NONSPLIT,),
}

MAX_FAILURES = 20


def _coords_text(coords: Sequence[Scalar]) -> str:
    return ",".join(format_qq(c) for c in coords)


class PropertySuites:
    """
    性质测试集合

    每个套件用 random.Random(f"{seed}:{name}") 独立取样，结果与运行顺序无关；
    代价高的楔形计算按 (用例, 对合, h) 缓存，count 次抽样只计算不同的 h。

    Example:
        suites = PropertySuites(RealizationFactory(), JordanFactory())
        report = suites.run(seed=20240607, count=1000)
    """

    def __init__(self, realizations: RealizationFactory, jordans: JordanFactory,
                 samples: int = 50, exceptional: bool = True):
        """
        初始化

        Args:
            realizations: 实现工厂
            jordans: Jordan 代数工厂
            samples: 楔形计算中锥截面的采样数
            exceptional: 是否包含 Herm(3,O) 及其 KKT 代数（e7，较慢）
        """
        self.realizations = realizations
        self.jordans = jordans
        self.samples = samples
        self.exceptional = exceptional
        self._wedges: Dict[tuple, WedgeResult] = {}
        self._peirce: Dict[str, PeirceDecomposition] = {}
        self._suites: Dict[str, Callable[[random.Random, int, SuiteOutcome], None]] = {
            "jordan-axioms": self._jordan_axioms,
            "peirce-rules": self._peirce_rules,
            "squares-peirce": self._squares_peirce,
            "cone-test": self._cone_test,
            "flip-criterion": self._flip_criterion,
            "reduction-soundness": self._reduction_soundness,
            "trichotomy": self._trichotomy,
            "three-graded": self._three_graded,
            "kkt-round-trip": self._kkt_round_trip,
        }

    @property
    def names(self) -> List[str]:
        """套件名（运行顺序）"""
        return list(self._suites)

    def run(self, seed: int, count: int, only: Optional[Sequence[str]] = None) -> PropsReport:
        """
        运行性质测试

        Args:
            seed: 随机种子
            count: 每个随机套件的抽样次数
            only: 只运行这些套件（None 表示全部）

        Returns:
            PropsReport

        Raises:
            ValueError: 未知套件名
        """
        selected = list(only) if only else self.names
        unknown = [name for name in selected if name not in self._suites]
        if unknown:
            raise ValueError(f"未知的性质套件: {', '.join(unknown)}（可选: {', '.join(self.names)}）")
        report = PropsReport(seed=seed, count=count)
        for name in self.names:
            if name not in selected:
                continue
            outcome = SuiteOutcome(name=name)
            rng = random.Random(f"{seed}:{name}")
            try:
                self._suites[name](rng, count, outcome)
            except LieWedgeError as e:
                outcome.failures.append(f"套件中断: {e}")
            logger.info(f"性质套件 {name}: {outcome.cases} 例, {len(outcome.failures)} 失败")
            report.suites.append(outcome)
        return report

    # ------------------------------------------------------------------
    # 公共取样
    # ------------------------------------------------------------------

    def _jordan_algebras(self) -> List[JordanAlgebra]:
        return [self.jordans.build(family, params) for family, params in JORDAN_CASES
                if self.exceptional or family != "hermO3"]

    def _decomposition(self, V: JordanAlgebra) -> PeirceDecomposition:
        if V.label not in self._peirce:
            self._peirce[V.label] = peirce_frame(V, standard_frame(V))
        return self._peirce[V.label]

    def _realization(self, case: str) -> Realization:
        spec = CaseSpec.parse(case)
        return self.realizations.build(spec.family, spec.params)

    def _wedge(self, case: str, tau: str, h: Tuple[Scalar, ...]) -> WedgeResult:
        key = (case, tau, h)
        if key not in self._wedges:
            r = self._realization(case)
            self._wedges[key] = compute_wedge(WedgeInput(r, r.involution(tau), h),
                                              samples=self.samples)
        return self._wedges[key]

    @staticmethod
    def _fail(outcome: SuiteOutcome, message: str) -> None:
        if len(outcome.failures) < MAX_FAILURES:
            logger.warning(f"{outcome.name}: {message}")
        outcome.failures.append(message)

    # ------------------------------------------------------------------
    # Jordan 代数
    # ------------------------------------------------------------------

    def _jordan_axioms(self, rng: random.Random, count: int, outcome: SuiteOutcome) -> None:
        """单位律、Jordan 恒等式与内积结合性（基元素与随机元素）"""
        algebras = self._jordan_algebras()
        per_algebra = max(1, count // len(algebras))
        for V in algebras:
            try:
                check_jordan_axioms(V, samples=per_algebra, seed=rng.randrange(2 ** 31))
            except LieWedgeError as e:
                self._fail(outcome, str(e))
            outcome.cases += per_algebra

    def _peirce_rules(self, rng: random.Random, count: int, outcome: SuiteOutcome) -> None:
        """标准标架与实现网格标架上的 Peirce 乘法规则（全部基对）"""
        for V in self._jordan_algebras():
            outcome.cases += 1
            try:
                self._decomposition(V)
            except LieWedgeError as e:
                self._fail(outcome, str(e))
        for case in TUBE_CASES:
            outcome.cases += 1
            r = self._realization(case)
            try:
                V = realization_jordan(r)
                peirce_frame(V, frame_from_grid(r, V))
            except LieWedgeError as e:
                self._fail(outcome, f"{case}: {e}")

    def _squares_peirce(self, rng: random.Random, count: int, outcome: SuiteOutcome) -> None:
        """
        平方 y = x² 的 Peirce 分量：对角系数非负；若 λ_i = 0 则含 i 的非对角块为零

        一半样本取一般的 x，另一半取落在不含下标 i 的块之和中的 x（此时 λ_i = 0）。
        """
        algebras = self._jordan_algebras()
        for n in range(count):
            V = algebras[n % len(algebras)]
            decomposition = self._decomposition(V)
            frame = decomposition.frame
            if n % 2 == 0:
                x = random_element(V, rng)
            else:
                avoid = rng.randrange(frame.rank)
                x = [ZERO] * V.dim
                for key, block in decomposition.blocks().items():
                    if avoid in key:
                        continue
                    for row in block.rows:
                        c = to_qq(rng.randint(-3, 3))
                        x = [a + c * b for a, b in zip(x, row)]
                x = tuple(x)
            y = square(V, x)
            parts = peirce_components(decomposition, y)
            outcome.cases += 1
            for i, c in enumerate(frame.idempotents):
                pivot = next(k for k, v in enumerate(c) if v)
                lam = parts[(i,)][pivot] / c[pivot]
                if lam < 0:
                    self._fail(outcome, f"{V.label}: x = ({_coords_text(x)}) 时 λ_{i + 1} = {format_qq(lam)} < 0")
                if lam == 0:
                    nonzero = [key for key, part in parts.items() if len(key) == 2 and i in key and any(part)]
                    if nonzero:
                        self._fail(outcome, f"{V.label}: x = ({_coords_text(x)}) 时 λ_{i + 1} = 0 但块 {nonzero[0]} 非零")

    def _cone_test(self, rng: random.Random, count: int, outcome: SuiteOutcome) -> None:
        """x² 属于锥闭包；带负系数的标架组合不属于"""
        algebras = self._jordan_algebras()
        for n in range(count):
            V = algebras[n % len(algebras)]
            frame = standard_frame(V)
            outcome.cases += 1
            x = random_element(V, rng)
            if not in_cone_closure(V, square(V, x)):
                self._fail(outcome, f"{V.label}: x² 不在锥闭包中，x = ({_coords_text(x)})")
            coeffs = [to_qq(rng.randint(-3, 3)) for _ in range(frame.rank)]
            coeffs[rng.randrange(frame.rank)] = to_qq(rng.randint(-3, -1))
            combo = tuple(sum((a * c[k] for a, c in zip(coeffs, frame.idempotents)), ZERO)
                          for k in range(V.dim))
            if in_cone_closure(V, combo):
                self._fail(outcome, f"{V.label}: 系数 ({_coords_text(coeffs)}) 的标架组合落在锥闭包中")
            positive = [abs(a) for a in coeffs]
            combo = tuple(sum((a * c[k] for a, c in zip(positive, frame.idempotents)), ZERO)
                          for k in range(V.dim))
            if not in_cone_closure(V, combo):
                self._fail(outcome, f"{V.label}: 系数 ({_coords_text(positive)}) 的标架组合不在锥闭包中")

    # ------------------------------------------------------------------
    # 实现与楔形
    # ------------------------------------------------------------------

    def _flip_criterion(self, rng: random.Random, count: int, outcome: SuiteOutcome) -> None:
        """flips_wmin(λ) 与 exp(iπ ad h) 对 H₀ 的直接作用一致"""
        memo: Dict[tuple, bool] = {}
        for n in range(count):
            case = FLIP_CASES[n % len(FLIP_CASES)]
            r = self._realization(case)
            values = _INTEGER_VALUES if rng.random() < 0.5 else _HALF_ODD_VALUES
            lam = tuple(rng.choice(values) for _ in range(r.rank))
            key = (case, lam)
            if key not in memo:
                memo[key] = flip_by_exponential(r, lam)
            outcome.cases += 1
            if memo[key] != flips_wmin(r, lam):
                self._fail(outcome, f"{case}: λ = ({_coords_text(lam)}) 时翻转判据与 exp(iπ ad h) 不一致")

    def _direct_cone_span(self, case: str, tau: str, h: Tuple[Scalar, ...]) -> Subspace:
        """
        不经 λ 的约化，直接由 ad h 的分次求 span C₊

        框架元 X_k 落在 𝔤₁(h)（或 𝔤₋₁(h)）中时 h′ 取 ½H_k（或 −½H_k），
        span C₊ = {b ∈ 𝔤₁(h′) : τb = −b}
        """
        r = self._realization(case)
        record = r.involution(tau)
        g = r.algebra
        lam = WedgeInput(r, record, h).a_coords()
        grading = grading_of(g, r.element_from_coords(lam),
                             candidates=set(root_values(r, lam)) | {ZERO}, check=False)
        lam0 = []
        for xk, _ in r.grid:
            if grading.part(1).contains(xk.coords):
                lam0.append(HALF)
            elif grading.part(-1).contains(xk.coords):
                lam0.append(-HALF)
            else:
                lam0.append(ZERO)
        if not any(lam0):
            return Subspace.zero(g.dim)
        grading0 = grading_of(g, r.element_from_coords(lam0),
                              candidates=set(root_values(r, lam0)) | {ZERO}, check=False)
        return intersect(grading0.part(1), eigenspace(record.phi.matrix, -1))

    def _reduction_soundness(self, rng: random.Random, count: int, outcome: SuiteOutcome) -> None:
        """span C₊ 与直接由 ad h 分次求得的一致，且 𝔤(τ, −h) = 𝔤(τ, h)"""
        for n in range(count):
            case, tau = REDUCTION_CASES[n % len(REDUCTION_CASES)]
            r = self._realization(case)
            size = len(r.involution(tau).a_h_basis)
            h = tuple(rng.choice(_GRID_VALUES) for _ in range(size))
            outcome.cases += 1
            try:
                res = self._wedge(case, tau, h)
                neg = self._wedge(case, tau, tuple(-c for c in h))
                expected = self._direct_cone_span(case, tau, h)
            except LieWedgeError as e:
                self._fail(outcome, f"{case}/{tau} h = ({_coords_text(h)}): {e}")
                continue
            if res.c_plus != expected:
                self._fail(outcome, f"{case}/{tau} h = ({_coords_text(h)}): "
                                    f"C₊ 维数 {res.c_plus.dim}，直接由 ad h 求得 {expected.dim}，张成不一致")
            if neg.g_tau_h != res.g_tau_h:
                self._fail(outcome, f"{case}/{tau} h = ({_coords_text(h)}): 𝔤(τ,−h) ≠ 𝔤(τ,h)")

    def _trichotomy(self, rng: random.Random, count: int, outcome: SuiteOutcome) -> None:
        """
        管型实现的每个标准对合，h 在 𝔞_𝔥 坐标下全为 ½：
        Cayley 型给出 Peirce 反射（且 𝔤(τ,h) = 𝔤），分裂型给出分裂对合，非分裂型给出非分裂对合
        """
        for case in TUBE_CASES:
            r = self._realization(case)
            for tau in r.involutions:
                outcome.cases += 1
                h = tuple([HALF] * len(tau.a_h_basis))
                try:
                    res = self._wedge(case, tau.name, h)
                except LieWedgeError as e:
                    self._fail(outcome, f"{case}/{tau.name}: {e}")
                    continue
                step = next((s for s in res.trace if s.get("step") == "involution"), None)
                got = step.get("classification") if step else None
                if got not in _EXPECTED_CLASSES[tau.tau_class]:
                    self._fail(outcome, f"{case}/{tau.name} ({tau.tau_class}): V^σ 的分类为 {got}")
                if tau.tau_class == CLASS_CAYLEY and not res.g_tau_h.is_full():
                    self._fail(outcome, f"{case}/{tau.name}: Cayley 型时 𝔤(τ,h) ≠ 𝔤")

    def _three_graded(self, rng: random.Random, count: int, outcome: SuiteOutcome) -> None:
        """已计算的全部楔形（不足时补算）中 𝔤₊、𝔤₋ 交换"""
        if not self._wedges:
            self._trichotomy(random.Random(0), count, SuiteOutcome(name="trichotomy"))
        for key in sorted(self._wedges, key=lambda k: (k[0], k[1], tuple(map(str, k[2])))):
            res = self._wedges[key]
            case, tau, h = key
            g = self._realization(case).algebra
            outcome.cases += 1
            if not is_abelian(g, res.c_plus) or not is_abelian(g, res.c_minus):
                self._fail(outcome, f"{case}/{tau} h = ({_coords_text(h)}): 𝔤₊ 或 𝔤₋ 不交换")

    def _kkt_round_trip(self, rng: random.Random, count: int, outcome: SuiteOutcome) -> None:
        """KKT 构造（构造内校验 Jordan 乘法回抽）：由根数据识别的类型等于厄米伙伴"""
        for family, params in KKT_CASES:
            if family == "hermO3" and not self.exceptional:
                continue
            outcome.cases += 1
            V = self.jordans.build(family, params)
            try:
                partner = IsoType.of(kkt_partner(V)).canonical()
                r = self.realizations.build(f"{KKT_PREFIX}{family}", params, with_involutions=False)
                g = r.algebra
                full = Subspace.full(g.dim)
                a_span = Subspace.span(g.dim, [a.coords for a in r.a_basis])
                found = identify_iso_type(g, full, a_span, hints=[full])
            except LieWedgeError as e:
                self._fail(outcome, f"{V.label}: {e}")
                continue
            if g.dim != simple_dim(partner.summands[0]):
                self._fail(outcome, f"{V.label}: KKT 维数 {g.dim} 与 {partner.display()} 不符")
            elif found.key() != partner.key():
                self._fail(outcome, f"{V.label}: KKT 代数识别为 {found.display()}，厄米伙伴为 {partner.display()}")
