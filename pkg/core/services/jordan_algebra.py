"""
Jordan 代数服务
直接构造的欧氏 Jordan 代数族、由 3-分次抽取、公理校验、乘法算子与锥判定、
Peirce 分解、秩与类型识别、理想分解、对合分类与导子代数
"""
import random
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from core.entities.errors import ContractViolation, SpectrumError, ValidationError
from core.entities.jordan_model import (
    NONSPLIT, PEIRCE_REFLECTION, PROVENANCE_DIRECT, PROVENANCE_GRADING, SPLIT_SIMPLE,
    JordanAlgebra, JordanFrame, JordanInvolution, JordanType, PeirceDecomposition,
    ProductTable, vector_sum,
)
from core.entities.lie_algebra import LieAlgebra, LieElement
from core.entities.scalar import HALF, ONE, Scalar, ZERO, to_qq
from core.entities.subspace import Subspace
from core.services.exact_linalg import (
    EchelonAccumulator, SpanBasis, SparseVector, eigen_decomposition, eigenspace,
    identity, intersect, is_pd_symmetric, is_psd_symmetric, is_symmetric, lift,
    mat_equal, mat_vec_sparse, sparse_axpy, sparse_kernel, to_dense, to_sparse, zeros,
)
from core.services.families.base import commutator, flatten, unflatten
from core.services.lie_core import (
    bracket, bracket_sparse, fixed_space, grading_of, killing_matrix, normalized_grading,
)
from core.services.octonions import CompositionAlgebra, composition_algebra
from infrastructure.logger import get_logger

logger = get_logger()

Vector = Tuple[Scalar, ...]


# ---------------------------------------------------------------------------
# 构造与公理校验
# ---------------------------------------------------------------------------

def make_jordan(dim: int, product: ProductTable, unit: Sequence, inner: DomainMatrix,
                label: str = "", provenance: str = PROVENANCE_DIRECT,
                embedding: Optional[Subspace] = None, validate: bool = True) -> JordanAlgebra:
    """
    创建并校验 Jordan 代数

    Args:
        dim: 维数
        product: i ≤ j 的乘积表
        unit: 单位元坐标
        inner: 内积 Gram 矩阵
        label: 名称
        provenance: direct / from-grading
        embedding: 李代数中的嵌入子空间（由分次抽取时）
        validate: 是否校验 Jordan 公理与内积

    Raises:
        ValidationError: 公理校验失败
    """
    V = JordanAlgebra(dim=dim, product=product, unit=tuple(unit), inner=inner, label=label,
                      provenance=provenance, embedding=embedding)
    if validate:
        check_jordan_axioms(V)
    logger.debug(f"Jordan 代数 {label or '<未命名>'} 构造完成, dim={dim}")
    return V


def trace_gram(dim: int, product: ProductTable, trace: Sequence) -> DomainMatrix:
    """迹型 ⟨a, b⟩ = tr(a·b) 的 Gram 矩阵，tr 为给定的线性泛函"""
    trace = [to_qq(t) for t in trace]
    dod: Dict[int, Dict[int, Scalar]] = {}
    for (i, j), out in product.items():
        value = sum((trace[k] * v for k, v in out.items()), ZERO)
        if value:
            dod.setdefault(i, {})[j] = value
            dod.setdefault(j, {})[i] = value
    return DomainMatrix.from_dod(dod, (dim, dim), QQ)


def check_jordan_axioms(V: JordanAlgebra, samples: int = 8, seed: int = 0) -> None:
    """
    校验单位律、Jordan 恒等式、内积正定与结合性

    Jordan 恒等式以 [L(x), L(x²)] = 0 的形式在基元素、基元素两两之和
    以及若干随机元素上检查。

    Raises:
        ValidationError: 任一条件不成立
    """
    name = V.label or "<未命名>"
    if not mat_equal(left_mult(V, V.unit), identity(V.dim)):
        raise ValidationError(f"{name}: 单位元不满足 e·x = x")
    tests: List[SparseVector] = [{i: ONE} for i in range(V.dim)]
    tests.extend({i: ONE, j: ONE} for i, j in combinations(range(V.dim), 2))
    rng = random.Random(seed)
    for _ in range(samples):
        tests.append(to_sparse(random_element(V, rng)))
    for x in tests:
        lx = _left_mult_sparse(V, x)
        lx2 = _left_mult_sparse(V, product_sparse(V, x, x))
        if not (lx * lx2 - lx2 * lx).is_zero_matrix:
            raise ValidationError(f"{name}: Jordan 恒等式在 {dict(x)} 处不成立")
    if not is_symmetric(V.inner) or not is_pd_symmetric(V.inner):
        raise ValidationError(f"{name}: 内积不是对称正定的")
    for i in range(V.dim):
        if not is_symmetric(V.inner * _left_mult_sparse(V, {i: ONE})):
            raise ValidationError(f"{name}: 内积不满足 ⟨x·y, z⟩ = ⟨y, x·z⟩（e_{i}）")


# ---------------------------------------------------------------------------
# 乘法与算子
# ---------------------------------------------------------------------------

def product_sparse(V: JordanAlgebra, a: SparseVector, b: SparseVector) -> SparseVector:
    """稀疏坐标下的 Jordan 乘积"""
    out: SparseVector = {}
    table = V.table
    for i, x in a.items():
        for j, y in b.items():
            entry = table.get((i, j))
            if entry:
                sparse_axpy(out, x * y, entry)
    return out


def product(V: JordanAlgebra, a: Sequence, b: Sequence) -> Vector:
    """Jordan 乘积 a·b"""
    _require_vector(V, a)
    _require_vector(V, b)
    return to_dense(product_sparse(V, to_sparse(a), to_sparse(b)), V.dim)


def square(V: JordanAlgebra, a: Sequence) -> Vector:
    """a²"""
    return product(V, a, a)


def inner_product(V: JordanAlgebra, a: Sequence, b: Sequence) -> Scalar:
    """⟨a, b⟩"""
    dod = V.inner.to_dod()
    acc = ZERO
    for i, x in to_sparse(a).items():
        row = dod.get(i, {})
        for j, y in to_sparse(b).items():
            v = row.get(j)
            if v:
                acc += x * v * y
    return acc


def _left_mult_sparse(V: JordanAlgebra, x: SparseVector) -> DomainMatrix:
    """L(x)：第 j 列为 x·e_j"""
    dod: Dict[int, Dict[int, Scalar]] = {}
    for i, a in x.items():
        for j in range(V.dim):
            entry = V.table.get((i, j))
            if not entry:
                continue
            for k, c in entry.items():
                row = dod.setdefault(k, {})
                value = row.get(j, ZERO) + a * c
                if value:
                    row[j] = value
                else:
                    row.pop(j, None)
    return DomainMatrix.from_dod({k: r for k, r in dod.items() if r}, (V.dim, V.dim), QQ)


def left_mult(V: JordanAlgebra, x: Sequence) -> DomainMatrix:
    """左乘算子 L(x) 的矩阵"""
    _require_vector(V, x)
    return _left_mult_sparse(V, to_sparse(x))


def quadratic_rep(V: JordanAlgebra, x: Sequence) -> DomainMatrix:
    """二次表示 P(x) = 2L(x)² − L(x²)"""
    lx = left_mult(V, x)
    return lx * lx * QQ(2) - left_mult(V, square(V, x))


def in_cone_closure(V: JordanAlgebra, x: Sequence) -> bool:
    """
    x 是否属于对称锥的闭包

    L(x) 在 Peirce 分解上的特征值为 (λ_i + λ_j)/2，故 x 的谱非负当且仅当
    L(x) 关于内积半正定，即 G·L(x) 为半正定对称矩阵。
    """
    return is_psd_symmetric(V.inner * left_mult(V, x))


def apply_linear(m: DomainMatrix, x: Sequence) -> Vector:
    """矩阵作用于坐标向量"""
    n = m.shape[0]
    return to_dense(mat_vec_sparse(m.to_dod(), to_sparse(x)), n)


def random_element(V: JordanAlgebra, rng: random.Random, bound: int = 3) -> Vector:
    """小整数系数的随机元素"""
    return tuple(QQ(rng.randint(-bound, bound)) for _ in range(V.dim))


def _require_vector(V: JordanAlgebra, x: Sequence) -> None:
    """坐标长度校验"""
    if len(x) != V.dim:
        raise ContractViolation(f"元素坐标个数 {len(x)} 与 Jordan 代数维数 {V.dim} 不一致")


# ---------------------------------------------------------------------------
# 直接构造的族
# ---------------------------------------------------------------------------

class JordanFactory:
    """按族名构造欧氏 Jordan 代数（带缓存）"""

    FAMILIES = {
        'sym': 1,
        'hermC': 2,
        'hermH': 4,
        'hermO3': 8,
        'mink': None,
    }

    def __init__(self):
        self._cache: Dict[Tuple[str, Tuple[int, ...]], JordanAlgebra] = {}

    def build(self, family: str, params: Sequence[int] = ()) -> JordanAlgebra:
        """
        构造（或取缓存的）Jordan 代数

        Args:
            family: sym / hermC / hermH / hermO3 / mink
            params: 矩阵阶数 n（hermO3 不带参数，mink 为总维数）

        Raises:
            ContractViolation: 不支持的族或参数无效
        """
        if family not in self.FAMILIES:
            supported = ', '.join(self.FAMILIES.keys())
            raise ContractViolation(f"不支持的 Jordan 族: {family}。支持的族: {supported}")
        params = tuple(int(p) for p in params)
        key = (family, params)
        if key not in self._cache:
            if family == 'mink':
                if len(params) != 1 or params[0] < 1:
                    raise ContractViolation(f"mink 需要一个正整数参数（总维数），实际 {params}")
                self._cache[key] = minkowski_algebra(params[0])
            elif family == 'hermO3':
                if params not in ((), (3,)):
                    raise ContractViolation(f"hermO3 不带参数，实际 {params}")
                self._cache[key] = hermitian_matrix_algebra(3, 8)
            else:
                if len(params) != 1 or params[0] < 1:
                    raise ContractViolation(f"{family} 需要一个正整数参数 n，实际 {params}")
                self._cache[key] = hermitian_matrix_algebra(params[0], self.FAMILIES[family])
        return self._cache[key]

    def clear(self) -> None:
        """清空缓存"""
        self._cache.clear()


_default_factory = JordanFactory()


def build_direct(family: str, params: Sequence[int] = ()) -> JordanAlgebra:
    """按族名直接构造 Jordan 代数"""
    return _default_factory.build(family, params)


def default_jordan_factory() -> JordanFactory:
    """全局工厂实例"""
    return _default_factory


def direct_label(n: int, adim: int) -> str:
    """Sym(n,R) / Herm(n,C) / Herm(n,H) / Herm(n,O)"""
    if adim == 1:
        return f"Sym({n},R)"
    return f"Herm({n},{composition_algebra(adim).name})"


def hermitian_matrix_algebra(n: int, adim: int) -> JordanAlgebra:
    """
    合成代数 A 上 n 阶厄米矩阵的 Jordan 代数，乘积 X∘Y = ½(XY + YX)

    基为 E_ii 以及 uE_ij + ūE_ji（i < j，u 取 A 的基元素）；
    内积为迹型 Re tr(X∘Y)。

    Raises:
        ContractViolation: n < 1，或八元数时 n > 3
    """
    if n < 1:
        raise ContractViolation(f"矩阵阶数必须为正: {n}")
    if adim == 8 and n > 3:
        raise ContractViolation(f"八元数厄米矩阵只在 n ≤ 3 时构成 Jordan 代数: n = {n}")
    A = composition_algebra(adim)
    basis: List[Tuple] = [("d", i) for i in range(n)]
    basis.extend(("o", i, j, u) for i, j in combinations(range(n), 2) for u in range(adim))
    index = {b: k for k, b in enumerate(basis)}
    matrices = [_basis_matrix(A, b) for b in basis]

    product: ProductTable = {}
    for a in range(len(basis)):
        for b in range(a, len(basis)):
            xy = _matrix_mul(A, matrices[a], matrices[b], n)
            yx = _matrix_mul(A, matrices[b], matrices[a], n)
            sym = {key: tuple((u + v) * HALF for u, v in zip(xy.get(key, A.zero()), yx.get(key, A.zero())))
                   for key in set(xy) | set(yx)}
            coords = _hermitian_coords(A, sym, index, n)
            if coords:
                product[(a, b)] = coords
    unit = tuple(ONE if b[0] == "d" else ZERO for b in basis)
    trace = [ONE if b[0] == "d" else ZERO for b in basis]
    label = direct_label(n, adim)
    V = make_jordan(len(basis), product, unit, trace_gram(len(basis), product, trace),
                    label=label, provenance=PROVENANCE_DIRECT)
    V.rank = n
    V.cache["basis_labels"] = basis
    V.cache["adim"] = adim
    V.cache["frame"] = JordanFrame([V.basis_vector(i) for i in range(n)])
    logger.info(f"{label} 构造完成: dim={V.dim}")
    return V


def _basis_matrix(A: CompositionAlgebra, b: Tuple) -> Dict[Tuple[int, int], Tuple]:
    """基元素对应的矩阵（稀疏，元素为 A 中向量）"""
    if b[0] == "d":
        return {(b[1], b[1]): A.unit(0)}
    _, i, j, u = b
    return {(i, j): A.unit(u), (j, i): A.conj(A.unit(u))}


def _matrix_mul(A: CompositionAlgebra, x: Dict, y: Dict, n: int) -> Dict[Tuple[int, int], Tuple]:
    """A 值矩阵乘积"""
    out: Dict[Tuple[int, int], Tuple] = {}
    for (i, k), a in x.items():
        for (k2, j), b in y.items():
            if k != k2:
                continue
            term = A.mul(a, b)
            out[(i, j)] = A.add(out.get((i, j), A.zero()), term)
    return out


def _hermitian_coords(A: CompositionAlgebra, m: Dict, index: Dict, n: int) -> Dict[int, Scalar]:
    """
    厄米矩阵在基下的坐标

    Raises:
        ValidationError: 矩阵不是厄米的
    """
    coords: Dict[int, Scalar] = {}
    for (i, j), entry in m.items():
        if not any(entry):
            continue
        if i == j:
            if any(entry[1:]):
                raise ValidationError("对角元不是实数，矩阵不是厄米的")
            coords[index[("d", i)]] = entry[0]
        elif i < j:
            if A.conj(entry) != tuple(m.get((j, i), A.zero())):
                raise ValidationError("矩阵不是厄米的")
            for u, v in enumerate(entry):
                if v:
                    coords[index[("o", i, j, u)]] = v
    return coords


def minkowski_algebra(d: int) -> JordanAlgebra:
    """
    ℳ^d = ℝ × ℝ^{d−1}，(x, v)·(y, w) = (xy + ⟨v, w⟩, xw + yv)

    单位元 (1, 0)；内积为迹型 2(xy + ⟨v, w⟩)。
    """
    if d < 1:
        raise ContractViolation(f"ℳ^d 要求 d ≥ 1: d = {d}")
    product: ProductTable = {(0, 0): {0: ONE}}
    for k in range(1, d):
        product[(0, k)] = {k: ONE}
        product[(k, k)] = {0: ONE}
    unit = (ONE,) + (ZERO,) * (d - 1)
    trace = [QQ(2)] + [ZERO] * (d - 1)
    V = make_jordan(d, product, unit, trace_gram(d, product, trace), label=f"M^{d}",
                    provenance=PROVENANCE_DIRECT)
    V.rank = 1 if d == 1 else 2
    if d == 1:
        V.cache["frame"] = JordanFrame([unit])
    else:
        V.cache["frame"] = JordanFrame([
            (HALF, HALF) + (ZERO,) * (d - 2),
            (HALF, -HALF) + (ZERO,) * (d - 2),
        ])
    logger.info(f"M^{d} 构造完成")
    return V


def standard_frame(V: JordanAlgebra) -> JordanFrame:
    """
    直接构造族的标准标架：E_ii，或 ℳ^d 中的 ½(e₀ ± e₁)

    Raises:
        ContractViolation: V 不是直接构造的族
    """
    frame = V.cache.get("frame")
    if frame is None:
        raise ContractViolation(f"{V.label}: 只有直接构造的 Jordan 代数带标准标架")
    return frame


def entrywise_involution(V: JordanAlgebra) -> DomainMatrix:
    """
    逐元素作用的合成代数自同构 (a, b) ↦ (a, −b)

    不动子代数为半维合成代数上的厄米矩阵，例如 Herm(3,O) 中的 Herm(3,H)。

    Raises:
        ContractViolation: V 不是 ℂ、ℍ、𝕆 上的厄米矩阵代数
    """
    basis = V.cache.get("basis_labels")
    adim = V.cache.get("adim", 1)
    if basis is None or adim < 2:
        raise ContractViolation(f"{V.label}: 逐元素对合只对 ℂ、ℍ、𝕆 上的厄米矩阵代数有定义")
    half = adim // 2
    signs = {k: (-ONE if b[0] == "o" and b[3] >= half else ONE) for k, b in enumerate(basis)}
    return DomainMatrix({k: {k: s} for k, s in signs.items()}, (V.dim, V.dim), QQ)


# ---------------------------------------------------------------------------
# 由 3-分次抽取
# ---------------------------------------------------------------------------

_GRADING_CANDIDATES = (-2, -1, -HALF, 0, HALF, 1, 2)


def _three_grading(g: LieAlgebra, h: LieElement, allow_half: bool = False):
    """
    ad(h) 的分次，归一化使最高特征值为 1

    要求谱为 {−1, 0, 1}；allow_half 时允许 ±½（非管型代数中 𝔤_{±1}(h) 仍构成管型子代数的两端）
    """
    try:
        grading = grading_of(g, h, candidates=_GRADING_CANDIDATES)
        top = max(grading.parts)
        if top > 0 and top != 1:
            grading = normalized_grading(g, h)
    except SpectrumError:
        grading = normalized_grading(g, h)
    allowed = {-1, -HALF, 0, HALF, 1} if allow_half else {-1, 0, 1}
    if set(grading.parts) - allowed or 1 not in grading.parts:
        raise ContractViolation(f"{g.label}: ad(h) 归一化后的谱不是 {{−1, 0, 1}}")
    return grading


def jordan_from_grading(g: LieAlgebra, h: LieElement, x: LieElement, y: LieElement,
                        label: str = "", require_simple: bool = True,
                        allow_half: bool = False) -> JordanAlgebra:
    """
    由 3-分次抽取 Jordan 代数：V = 𝔤₁(h)，a·b = ½[[a, y], b]，单位元 x

    内积 ⟨a, b⟩ = −β(a, θb)。

    Args:
        g: 带 Cartan 对合的李代数
        h: 分次元素（按最高特征值归一化）
        x: 𝔤₁ 中的单位元
        y: 𝔤₋₁ 中的伴随元，(2h, x, y) 为 sl(2) 三元组
        label: 名称
        require_simple: 是否要求结果为单代数
        allow_half: 是否允许 ad(h) 出现 ±½ 特征值

    Raises:
        ContractViolation: 非 3-分次或缺少 θ
        ValidationError: 三元组关系或 Jordan 公理不成立
    """
    if g.theta is None:
        raise ContractViolation(f"{g.label}: 抽取 Jordan 代数需要 Cartan 对合 θ")
    grading = _three_grading(g, h, allow_half)
    h_norm = grading.generator
    v1, vm1 = grading.part(1), grading.part(-1)
    two = to_qq(2)
    checks = {
        "x ∈ 𝔤₁": v1.contains(x.coords),
        "y ∈ 𝔤₋₁": vm1.contains(y.coords),
        "[x, y] = 2h": bracket(g, x, y) == h_norm.scale(two),
        "θx = −y": to_dense(mat_vec_sparse(g.theta.to_dod(), x.sparse()), g.dim) == (-y).coords,
    }
    for name, ok in checks.items():
        if not ok:
            raise ValidationError(f"{g.label}: sl(2) 三元组不满足 {name}")

    rows = [to_sparse(r) for r in v1.rows]
    ys = y.sparse()
    ay = [bracket_sparse(g, a, ys) for a in rows]
    product: ProductTable = {}
    for i in range(len(rows)):
        for j in range(i, len(rows)):
            w = bracket_sparse(g, ay[i], rows[j])
            if not w:
                continue
            coords = v1.try_coordinates(to_dense(w, g.dim))
            if coords is None:
                raise ValidationError(f"{g.label}: ½[[a, y], b] 不在 𝔤₁ 中")
            out = {k: c * HALF for k, c in enumerate(coords) if c}
            if out:
                product[(i, j)] = out
    unit = v1.coordinates(x.coords)
    gram = -(v1.matrix * killing_matrix(g) * g.theta * v1.matrix.transpose())
    V = make_jordan(len(rows), product, unit, gram.to_sparse(), label=label or f"V({g.label})",
                    provenance=PROVENANCE_GRADING, embedding=v1)
    if require_simple and len(jordan_ideals(V)) != 1:
        raise ValidationError(f"{V.label}: 抽取的 Jordan 代数不是单的")
    return V


def lie_element_of(V: JordanAlgebra, x: Sequence) -> LieElement:
    """由分次抽取的 Jordan 代数元素在李代数中的像"""
    if V.embedding is None:
        raise ContractViolation(f"{V.label}: 不是由分次抽取的 Jordan 代数")
    return LieElement(V.embedding.combine(x))


def jordan_coords_of(V: JordanAlgebra, x: LieElement) -> Vector:
    """李代数元素在 Jordan 代数中的坐标"""
    if V.embedding is None:
        raise ContractViolation(f"{V.label}: 不是由分次抽取的 Jordan 代数")
    return V.embedding.coordinates(x.coords)


# ---------------------------------------------------------------------------
# 标架与 Peirce 分解
# ---------------------------------------------------------------------------

def peirce(V: JordanAlgebra, c: Sequence) -> Tuple[Subspace, Subspace, Subspace]:
    """
    幂等元 c 的 Peirce 分解 (V₀, V_½, V₁)

    Raises:
        ContractViolation: c 不是幂等元，或 L(c) 出现 {0, ½, 1} 以外的特征值
    """
    c = tuple(to_qq(v) for v in c)
    if square(V, c) != c:
        raise ContractViolation(f"{V.label}: 输入不是幂等元")
    try:
        parts = eigen_decomposition(left_mult(V, c), candidates=(ZERO, HALF, ONE))
    except SpectrumError as e:
        raise ContractViolation(f"{V.label}: L(c) 的特征值不在 {{0, ½, 1}} 中") from e
    zero = Subspace.zero(V.dim)
    return parts.get(ZERO, zero), parts.get(HALF, zero), parts.get(ONE, zero)


def check_frame(V: JordanAlgebra, idempotents: Sequence[Sequence]) -> JordanFrame:
    """
    校验 Jordan 标架：幂等、两两正交、和为单位元、本原（dim V₁(c_i) = 1）

    Raises:
        ContractViolation: 任一条件不成立
    """
    frame = JordanFrame([tuple(c) for c in idempotents])
    for k, c in enumerate(frame.idempotents):
        _require_vector(V, c)
        if square(V, c) != c:
            raise ContractViolation(f"{V.label}: c_{k + 1} 不是幂等元")
        if eigenspace(left_mult(V, c), 1).dim != 1:
            raise ContractViolation(f"{V.label}: c_{k + 1} 不是本原幂等元")
    for i, j in combinations(range(frame.rank), 2):
        if any(product(V, frame.idempotents[i], frame.idempotents[j])):
            raise ContractViolation(f"{V.label}: c_{i + 1}·c_{j + 1} ≠ 0")
    if frame.rank == 0 or vector_sum(frame.idempotents) != V.unit:
        raise ContractViolation(f"{V.label}: 标架元素之和不等于单位元")
    return frame


def _block_target(a: Tuple[int, ...], b: Tuple[int, ...]) -> List[Tuple[int, ...]]:
    """Peirce 乘法规则：块 a 与块 b 的乘积所在的块（空表示零）"""
    if len(a) == 1 and len(b) == 1:
        return [a] if a == b else []
    if len(a) == 1 or len(b) == 1:
        (i,), pair = (a, b) if len(a) == 1 else (b, a)
        return [pair] if i in pair else []
    if a == b:
        return [(a[0],), (a[1],)]
    shared = set(a) & set(b)
    if len(shared) == 1:
        return [tuple(sorted(set(a) ^ set(b)))]
    return []


def peirce_frame(V: JordanAlgebra, frame: JordanFrame) -> PeirceDecomposition:
    """
    标架的完整 Peirce 分解，并在全部基对上校验乘法规则

    Raises:
        ContractViolation: 标架无效
        ValidationError: 直和维数或乘法规则不成立
    """
    check_frame(V, frame.idempotents)
    halves = []
    diagonal = []
    for c in frame.idempotents:
        _, v_half, v_one = peirce(V, c)
        diagonal.append(v_one)
        halves.append(v_half)
    off = {(i, j): intersect(halves[i], halves[j])
           for i, j in combinations(range(frame.rank), 2)}
    decomposition = PeirceDecomposition(frame=frame, diagonal=diagonal, off=off)
    blocks = decomposition.blocks()
    total = sum(s.dim for s in blocks.values())
    joined = Subspace.zero(V.dim).join(*blocks.values())
    if total != V.dim or not joined.is_full():
        raise ValidationError(f"{V.label}: Peirce 块的直和维数 {total} 不等于 {V.dim}")
    keys = sorted(blocks)
    for ia, ka in enumerate(keys):
        for kb in keys[ia:]:
            targets = _block_target(ka, kb)
            target = Subspace.zero(V.dim).join(*(blocks[t] for t in targets))
            for u in blocks[ka].rows:
                for v in blocks[kb].rows:
                    w = product(V, u, v)
                    if any(w) and not target.contains(w):
                        raise ValidationError(f"{V.label}: Peirce 乘法规则在块 {ka}·{kb} 处不成立")
    return decomposition


def peirce_components(decomposition: PeirceDecomposition, x: Sequence) -> Dict[Tuple[int, ...], Vector]:
    """x 在各 Peirce 块中的分量"""
    blocks = decomposition.blocks()
    keys = sorted(blocks)
    vectors: List[SparseVector] = []
    owner: List[Tuple[int, ...]] = []
    for key in keys:
        for row in blocks[key].rows:
            vectors.append(to_sparse(row))
            owner.append(key)
    n = len(x)
    coeffs = SpanBasis(vectors, n).coordinates(to_sparse(x))
    parts: Dict[Tuple[int, ...], SparseVector] = {key: {} for key in keys}
    for i, c in coeffs.items():
        sparse_axpy(parts[owner[i]], c, vectors[i])
    return {key: to_dense(v, n) for key, v in parts.items()}


def frame_from_grid(r, V: JordanAlgebra) -> JordanFrame:
    """
    由实现的 sl(2) 网格得到 𝔤₁(½ΣH_k) 上的标架 {X_1, …, X_r}

    Raises:
        ValidationError: 网格元素不是本原幂等元（实现有误）
    """
    idempotents = [jordan_coords_of(V, x) for x, _ in r.grid]
    try:
        return check_frame(V, idempotents)
    except ContractViolation as e:
        raise ValidationError(f"{r.label}: 网格给出的不是 Jordan 标架: {e}") from e


def realization_jordan(r) -> JordanAlgebra:
    """管型实现的 Jordan 代数 V = 𝔤₁(½ΣH_k)，单位元 ΣX_k"""
    cached = r.extras.get("jordan")
    if cached is not None:
        return cached
    g = r.algebra
    h = r.element_from_coords([HALF] * r.rank)
    x = LieElement.zero(g.dim)
    y = LieElement.zero(g.dim)
    for xk, yk in r.grid:
        x = x + xk
        y = y + yk
    V = jordan_from_grading(g, h, x, y, label=f"V({r.label})")
    r.extras["jordan"] = V
    return V


def restrict_jordan(V: JordanAlgebra, sub: Subspace, unit: Optional[Sequence] = None,
                    label: str = "") -> JordanAlgebra:
    """
    乘法封闭子空间上的 Jordan 代数（以 RREF 基为坐标）

    Args:
        V: 环境代数
        sub: 子代数
        unit: 子代数的单位元（环境坐标，默认 V 的单位元）
        label: 名称

    Raises:
        ContractViolation: 子空间不封闭或单位元不在其中
    """
    rows = [to_sparse(r) for r in sub.rows]
    product_table: ProductTable = {}
    for i in range(len(rows)):
        for j in range(i, len(rows)):
            w = product_sparse(V, rows[i], rows[j])
            if not w:
                continue
            coords = sub.try_coordinates(to_dense(w, V.dim))
            if coords is None:
                raise ContractViolation(f"{V.label}: 子空间对 Jordan 乘积不封闭")
            out = {k: c for k, c in enumerate(coords) if c}
            if out:
                product_table[(i, j)] = out
    unit = V.unit if unit is None else tuple(to_qq(v) for v in unit)
    local_unit = sub.try_coordinates(unit) if sub.dim else ()
    if local_unit is None:
        raise ContractViolation(f"{V.label}: 单位元不在子空间中")
    gram = sub.matrix * V.inner * sub.matrix.transpose() if sub.dim else zeros(0, 0)
    embedding = lift(V.embedding, sub) if V.embedding is not None else None
    return JordanAlgebra(dim=sub.dim, product=product_table, unit=tuple(local_unit),
                         inner=gram, label=label, provenance=V.provenance, embedding=embedding)


def subalgebra_Vj(V: JordanAlgebra, frame: JordanFrame, j: int) -> JordanAlgebra:
    """
    V^(j) = V₁(c_1 + … + c_j)

    Raises:
        ContractViolation: j 越界
        ValidationError: 结果的秩不等于 j
    """
    if not 1 <= j <= frame.rank:
        raise ContractViolation(f"j = {j} 超出范围 [1, {frame.rank}]")
    c = frame.partial_sum(j)
    _, _, v_one = peirce(V, c)
    W = restrict_jordan(V, v_one, unit=c, label=f"{V.label}^({j})")
    if jordan_rank(W) != j:
        raise ValidationError(f"{W.label}: 秩 {W.rank} 不等于 {j}")
    return W


# ---------------------------------------------------------------------------
# 秩、理想与类型识别
# ---------------------------------------------------------------------------

def jordan_rank(V: JordanAlgebra, trials: int = 3, seed: int = 0) -> int:
    """
    秩：一般元素极小多项式的次数

    对若干随机元素计算幂 e, x, x², … 的线性无关个数，取最大值。
    """
    if V.rank is not None:
        return V.rank
    if V.dim == 0:
        V.rank = 0
        return 0
    rng = random.Random(seed)
    best = 0
    unit = to_sparse(V.unit)
    for _ in range(trials):
        x = to_sparse(random_element(V, rng, bound=7))
        acc = EchelonAccumulator()
        power = unit
        degree = 0
        while acc.add(power):
            degree += 1
            power = product_sparse(V, x, power)
        best = max(best, degree)
    V.rank = best
    return best


def jordan_center(V: JordanAlgebra) -> Subspace:
    """{z : [L(z), L(e_i)] = 0 ∀i}"""
    ops = [_left_mult_sparse(V, {m: ONE}) for m in range(V.dim)]
    equations: Dict[Tuple[int, int], SparseVector] = {}
    for i in range(V.dim):
        for m in range(V.dim):
            for k, v in flatten(commutator(ops[m], ops[i])).items():
                equations.setdefault((i, k), {})[m] = v
    basis = sparse_kernel(list(equations.values()), V.dim)
    return Subspace.span(V.dim, [to_dense(v, V.dim) for v in basis])


def jordan_ideals(V: JordanAlgebra, seed: int = 0) -> List[Subspace]:
    """
    半单 Jordan 代数的单理想分解

    中心 Z 由各理想的单位元张成；一般的 z ∈ Z 在第 k 个理想上作用为数乘 a_k，
    故 L(z) 的特征空间即为各理想。

    Raises:
        ValidationError: 分解失败（非半单）
    """
    if V.dim == 0:
        return []
    center = jordan_center(V)
    if center.dim == 1:
        return [Subspace.full(V.dim)]
    rng = random.Random(seed)
    for _ in range(5):
        z = center.combine([QQ(rng.randint(1, 97)) for _ in range(center.dim)])
        try:
            parts = eigen_decomposition(left_mult(V, z))
        except SpectrumError as e:
            raise ValidationError(f"{V.label}: 中心元素的乘法算子不可对角化") from e
        if len(parts) == center.dim:
            ideals = sorted(parts.values(), key=lambda s: s.pivots)
            for ideal in ideals:
                for row in ideal.rows:
                    for i in range(V.dim):
                        if not ideal.contains(product(V, V.basis_vector(i), row)):
                            raise ValidationError(f"{V.label}: 特征子空间不是理想")
            return ideals
    raise ValidationError(f"{V.label}: 无法由中心分离理想")


def ideal_units(V: JordanAlgebra, ideals: Sequence[Subspace]) -> List[Vector]:
    """单位元在各理想中的分量（即各理想的单位元）"""
    vectors: List[SparseVector] = []
    owner: List[int] = []
    for k, ideal in enumerate(ideals):
        for row in ideal.rows:
            vectors.append(to_sparse(row))
            owner.append(k)
    coeffs = SpanBasis(vectors, V.dim).coordinates(to_sparse(V.unit))
    units: List[SparseVector] = [{} for _ in ideals]
    for i, c in coeffs.items():
        sparse_axpy(units[owner[i]], c, vectors[i])
    return [to_dense(u, V.dim) for u in units]


def simple_components(V: JordanAlgebra) -> List[JordanAlgebra]:
    """各单理想对应的 Jordan 代数"""
    ideals = jordan_ideals(V)
    units = ideal_units(V, ideals)
    return [restrict_jordan(V, ideal, unit=u, label=f"{V.label}[{k}]")
            for k, (ideal, u) in enumerate(zip(ideals, units))]


def identify_jordan_type(V: JordanAlgebra) -> JordanType:
    """
    单欧氏 Jordan 代数的类型

    由秩 r 与 dim V = r + d·r(r−1)/2 得到 Peirce 常数 d，
    r = 1 为 ℝ，r = 2 为 ℳ^{d+2}，r ≥ 3 时 d = 1, 2, 4 为 Sym/Herm(ℂ)/Herm(ℍ)，
    r = 3、d = 8 为 Herm(3,𝕆)。
    """
    r = jordan_rank(V)
    if r == 1:
        if V.dim != 1:
            return JordanType(1, 0, "unidentified")
        return JordanType(1, 0, "R")
    numerator = 2 * (V.dim - r)
    denominator = r * (r - 1)
    if numerator % denominator:
        return JordanType(r, -1, "unidentified")
    d = numerator // denominator
    if r == 2:
        return JordanType(r, d, "mink", (V.dim,))
    families = {1: "sym", 2: "hermC", 4: "hermH"}
    if d in families:
        return JordanType(r, d, families[d], (r,))
    if d == 8 and r == 3:
        return JordanType(r, d, "hermO", (3,))
    return JordanType(r, d, "unidentified")


# ---------------------------------------------------------------------------
# 自同构与对合
# ---------------------------------------------------------------------------

def is_jordan_automorphism(V: JordanAlgebra, sigma: DomainMatrix) -> bool:
    """σ 可逆且在全部基对上保持乘积"""
    if sigma.shape != (V.dim, V.dim):
        raise ContractViolation(f"映射形状 {sigma.shape} 与维数 {V.dim} 不一致")
    if sigma.rank() != V.dim:
        return False
    dod = sigma.to_dod()
    cols = [mat_vec_sparse(dod, {i: ONE}) for i in range(V.dim)]
    for i in range(V.dim):
        for j in range(i, V.dim):
            lhs = mat_vec_sparse(dod, V.table.get((i, j), {}))
            if lhs != product_sparse(V, cols[i], cols[j]):
                return False
    return True


def fixed_frame(V: JordanAlgebra, sigma: DomainMatrix, frame: JordanFrame) -> List[Vector]:
    """
    σ-不变标架的轨道和：σ(c_k) = c_k 时取 c_k，σ(c_k) = c_l 时取 c_k + c_l

    Raises:
        ContractViolation: σ 不置换标架元素
    """
    items = list(frame.idempotents)
    out: List[Vector] = []
    seen = set()
    for k, c in enumerate(items):
        if k in seen:
            continue
        image = apply_linear(sigma, c)
        if image == c:
            out.append(c)
            seen.add(k)
            continue
        partner = next((l for l, d in enumerate(items) if d == image and l not in seen), None)
        if partner is None:
            raise ContractViolation(f"{V.label}: σ 不置换给定的标架")
        out.append(vector_sum([c, image]))
        seen.update((k, partner))
    return out


def classify_involution(V: JordanAlgebra, sigma: DomainMatrix,
                        frame: Optional[JordanFrame] = None) -> JordanInvolution:
    """
    Jordan 对合的分类

    rank V^σ = rank V 为分裂，2·rank V^σ = rank V 为非分裂；分裂时若 V^σ 非单，
    取其第一个理想的单位元 c 并验证 σ = P(2c − e)，即 Peirce 反射。
    给出 σ-不变标架时，V^σ 的标架由轨道和构造并校验。

    Raises:
        ContractViolation: σ 不是对合自同构
        ValidationError: 秩不满足两种算术关系之一，或不动代数非单但 σ 不是 Peirce 反射
    """
    name = V.label or "<未命名>"
    if not mat_equal(sigma * sigma, identity(V.dim)) or not is_jordan_automorphism(V, sigma):
        raise ContractViolation(f"{name}: σ 不是对合自同构")
    fixed = fixed_space(sigma)
    if not fixed.contains(V.unit):
        raise ValidationError(f"{name}: σ 不固定单位元")
    Vs = restrict_jordan(V, fixed, label=f"{name}^σ")
    rank_v = frame.rank if frame is not None else jordan_rank(V)
    frame_plus = None
    if frame is not None:
        orbit_sums = fixed_frame(V, sigma, frame)
        local = check_frame(Vs, [fixed.coordinates(c) for c in orbit_sums])
        frame_plus = JordanFrame(orbit_sums)
        Vs.rank = local.rank
    rank_s = jordan_rank(Vs)

    ideals = jordan_ideals(Vs) if Vs.dim else []
    units = ideal_units(Vs, ideals) if ideals else []
    components = [restrict_jordan(Vs, ideal, unit=u, label=f"{Vs.label}[{k}]")
                  for k, (ideal, u) in enumerate(zip(ideals, units))]
    fixed_types = [identify_jordan_type(W) for W in components]
    idempotent = None
    if 2 * rank_s == rank_v and rank_s != rank_v:
        classification = NONSPLIT
    elif rank_s == rank_v:
        if fixed.is_full():
            classification = PEIRCE_REFLECTION
            idempotent = V.unit
        elif len(components) >= 2:
            c = fixed.combine(units[0])
            p = quadratic_rep(V, tuple(2 * a - b for a, b in zip(c, V.unit)))
            if not mat_equal(p, sigma):
                raise ValidationError(f"{name}: 不动代数非单但 σ ≠ P(2c − e)")
            classification = PEIRCE_REFLECTION
            idempotent = c
        else:
            classification = SPLIT_SIMPLE
    else:
        raise ValidationError(
            f"{name}: rank V^σ = {rank_s} 与 rank V = {rank_v} 不满足分裂或非分裂的秩关系"
        )
    logger.debug(f"{name}: 对合分类 {classification}, rank V^σ = {rank_s}")
    return JordanInvolution(
        matrix=sigma, classification=classification, fixed_subalgebra=Vs,
        fixed_types=fixed_types, fixed_rank=rank_s, ambient_rank=rank_v,
        idempotent=idempotent, frame=frame_plus,
    )


# ---------------------------------------------------------------------------
# 导子代数
# ---------------------------------------------------------------------------

def derivation_equations(V: JordanAlgebra) -> List[SparseVector]:
    """
    D(e_a·e_b) = (De_a)·e_b + e_a·(De_b) 的线性方程（未知数 D_{ik} 记为 i·n + k）
    """
    n = V.dim
    rows: List[SparseVector] = []
    for a in range(n):
        for b in range(a, n):
            eqs: Dict[int, SparseVector] = {}
            for k, p in V.table.get((a, b), {}).items():
                for m in range(n):
                    sparse_axpy(eqs.setdefault(m, {}), p, {m * n + k: ONE})
            for i in range(n):
                for m, v in V.table.get((i, b), {}).items():
                    sparse_axpy(eqs.setdefault(m, {}), -v, {i * n + a: ONE})
                for m, v in V.table.get((a, i), {}).items():
                    sparse_axpy(eqs.setdefault(m, {}), -v, {i * n + b: ONE})
            rows.extend(eq for eq in eqs.values() if eq)
    return rows


def inner_derivations(V: JordanAlgebra) -> List[DomainMatrix]:
    """线性无关的内导子 [L(e_i), L(e_j)]"""
    ops = [_left_mult_sparse(V, {m: ONE}) for m in range(V.dim)]
    acc = EchelonAccumulator()
    out = []
    for i, j in combinations(range(V.dim), 2):
        d = commutator(ops[i], ops[j])
        if acc.add(flatten(d)):
            out.append(d)
    return out


def derivation_algebra(V: JordanAlgebra, cross_check: bool = True) -> List[DomainMatrix]:
    """
    导子代数 Der(V) 的基：显式求解线性方程组的核

    Args:
        V: Jordan 代数
        cross_check: 是否与内导子张成的维数比对

    Raises:
        ValidationError: 与内导子维数不一致
    """
    n = V.dim
    logger.info(f"{V.label}: 求解 {n * n} 个未知数的导子方程")
    basis = sparse_kernel(derivation_equations(V), n * n, batch=8 * n)
    derivations = [unflatten(v, n) for v in basis]
    if cross_check:
        inner = inner_derivations(V)
        if len(inner) != len(derivations):
            raise ValidationError(
                f"{V.label}: 导子代数维数 {len(derivations)} 与内导子维数 {len(inner)} 不一致"
            )
    V.cache["der_dim"] = len(derivations)
    return derivations


def adjoint(V: JordanAlgebra, a: DomainMatrix) -> DomainMatrix:
    """关于内积的伴随 A^♯ = G⁻¹AᵀG"""
    g = V.inner.to_dense()
    return (g.inv() * a.transpose() * g).to_sparse()
