"""
李代数核心服务
括号、Killing 型、ad 算子、分次、生成子代数、理想分解、自同构校验与限制根数据
"""
import random
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.factortools import dup_factor_list
from sympy.polys.matrices import DomainMatrix

from core.entities.errors import ContractViolation, SpectrumError, ValidationError
from core.entities.lie_algebra import (
    Grading, LieAlgebra, LieElement, LinearAutomorphism, RootData, StructureTable,
)
from core.entities.scalar import Scalar, ZERO, format_qq
from core.entities.subspace import Subspace
from core.services.exact_linalg import (
    EchelonAccumulator, SparseVector, columns_of, commutes, eigen_decomposition, eigenspace,
    identity, is_pd_symmetric, kernel, kernel_from_rref, lift, mat_equal, mat_vec_sparse,
    restrict, simultaneous_eigenspaces, sparse_axpy, sparse_kernel, sparse_rref, to_dense,
    to_sparse, zeros,
)
from infrastructure.logger import get_logger

logger = get_logger()


# ---------------------------------------------------------------------------
# 构造与校验
# ---------------------------------------------------------------------------

def make_algebra(dim: int, structure: StructureTable, label: str = "",
                 theta: Optional[DomainMatrix] = None,
                 matrix_realization=None, validate: bool = True) -> LieAlgebra:
    """
    创建并校验李代数

    Args:
        dim: 维数
        structure: i < j 的结构常数
        label: 名称
        theta: Cartan 对合（可选）
        matrix_realization: 矩阵实现（可选）
        validate: 是否做完整校验（Jacobi、θ）

    Returns:
        校验通过的 LieAlgebra

    Raises:
        ValidationError: Jacobi 恒等式或 θ 校验失败
    """
    g = LieAlgebra(dim=dim, structure=structure, label=label, theta=theta,
                   matrix_realization=matrix_realization)
    if validate:
        check_jacobi(g)
        if theta is not None:
            check_cartan_involution(g)
    logger.debug(f"李代数 {label or '<未命名>'} 构造完成, dim={dim}")
    return g


def check_jacobi(g: LieAlgebra) -> None:
    """对全部基三元组校验 Jacobi 恒等式"""
    table = g.table
    for i, j, k in combinations(range(g.dim), 3):
        total: SparseVector = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            inner = table.get((b, c))
            if not inner:
                continue
            for m, coeff in inner.items():
                outer = table.get((a, m))
                if outer:
                    sparse_axpy(total, coeff, outer)
        if total:
            raise ValidationError(f"{g.label}: Jacobi 恒等式在 ({i}, {j}, {k}) 处不成立")


def check_cartan_involution(g: LieAlgebra) -> None:
    """θ 为对合自同构且 B_θ(x,y) = −β(x,θy) 正定"""
    phi = LinearAutomorphism(g.theta, "theta")
    if not is_involutive_automorphism(g, phi):
        raise ValidationError(f"{g.label}: θ 不是对合自同构")
    b_theta = -(killing_matrix(g) * g.theta)
    if not is_pd_symmetric(b_theta):
        raise ValidationError(f"{g.label}: B_θ 不是正定的")


# ---------------------------------------------------------------------------
# 括号与 ad
# ---------------------------------------------------------------------------

def bracket_sparse(g: LieAlgebra, x: SparseVector, y: SparseVector) -> SparseVector:
    """稀疏坐标下的括号"""
    out: SparseVector = {}
    table = g.table
    for i, a in x.items():
        for j, b in y.items():
            entry = table.get((i, j))
            if entry:
                sparse_axpy(out, a * b, entry)
    return out


def bracket(g: LieAlgebra, x: LieElement, y: LieElement) -> LieElement:
    """
    括号 [x, y]

    Raises:
        ContractViolation: 元素维数与代数不符
    """
    if x.dim != g.dim or y.dim != g.dim:
        raise ContractViolation(f"元素维数与代数维数 {g.dim} 不一致")
    return LieElement.from_sparse(bracket_sparse(g, x.sparse(), y.sparse()), g.dim)


def ad_dod(g: LieAlgebra, x: SparseVector) -> Dict[int, Dict[int, Scalar]]:
    """ad(x) 的 dod 表示：(ad x)[k][j] = Σ_i x_i c(i,j,k)"""
    dod: Dict[int, Dict[int, Scalar]] = {}
    table = g.table
    for i, a in x.items():
        for j in range(g.dim):
            entry = table.get((i, j))
            if not entry:
                continue
            for k, c in entry.items():
                row = dod.setdefault(k, {})
                value = row.get(j, ZERO) + a * c
                if value:
                    row[j] = value
                else:
                    row.pop(j, None)
    return {k: row for k, row in dod.items() if row}


def ad_matrix(g: LieAlgebra, x: LieElement) -> DomainMatrix:
    """ad(x) 的矩阵"""
    return DomainMatrix.from_dod(ad_dod(g, x.sparse()), (g.dim, g.dim), QQ)


def killing_matrix(g: LieAlgebra) -> DomainMatrix:
    """Killing 型的 Gram 矩阵 K_ij = tr(ad e_i ∘ ad e_j)（缓存）"""
    cached = g.cache.get("killing")
    if cached is not None:
        return cached
    # (ad e_i)[a][b] = c(i,b,a)
    ads: List[Dict[Tuple[int, int], Scalar]] = []
    for i in range(g.dim):
        entries = {}
        for b in range(g.dim):
            out = g.table.get((i, b))
            if out:
                for a, c in out.items():
                    entries[(a, b)] = c
        ads.append(entries)
    dod: Dict[int, Dict[int, Scalar]] = {}
    for i in range(g.dim):
        ad_i = ads[i]
        if not ad_i:
            continue
        for j in range(i, g.dim):
            ad_j = ads[j]
            if not ad_j:
                continue
            acc = ZERO
            small, large = (ad_i, ad_j) if len(ad_i) <= len(ad_j) else (ad_j, ad_i)
            for (a, b), v in small.items():
                w = large.get((b, a))
                if w:
                    acc += v * w
            if acc:
                dod.setdefault(i, {})[j] = acc
                dod.setdefault(j, {})[i] = acc
    result = DomainMatrix.from_dod(dod, (g.dim, g.dim), QQ)
    g.cache["killing"] = result
    return result


def killing_form(g: LieAlgebra, x: LieElement, y: LieElement) -> Scalar:
    """Killing 型 β(x, y) = tr(ad x ∘ ad y)"""
    if x.dim != g.dim or y.dim != g.dim:
        raise ContractViolation(f"元素维数与代数维数 {g.dim} 不一致")
    return bilinear(killing_matrix(g), x.sparse(), y.sparse())


def bilinear(gram: DomainMatrix, x: SparseVector, y: SparseVector) -> Scalar:
    """xᵀ G y"""
    dod = gram.to_dod()
    acc = ZERO
    for i, a in x.items():
        row = dod.get(i)
        if not row:
            continue
        for j, b in y.items():
            v = row.get(j)
            if v:
                acc += a * v * b
    return acc


def apply_map(phi: DomainMatrix, x: LieElement) -> LieElement:
    """线性映射作用于元素"""
    return LieElement.from_sparse(mat_vec_sparse(phi.to_dod(), x.sparse()), x.dim)


def apply_to_subspace(phi: DomainMatrix, space: Subspace) -> Subspace:
    """线性映射作用于子空间"""
    dod = phi.to_dod()
    images = [to_dense(mat_vec_sparse(dod, to_sparse(row)), space.ambient_dim) for row in space.rows]
    return Subspace.span(space.ambient_dim, images)


# ---------------------------------------------------------------------------
# 分次
# ---------------------------------------------------------------------------

def grading_of(g: LieAlgebra, h: LieElement, candidates: Optional[Iterable] = None,
               check: bool = True) -> Grading:
    """
    ad(h) 的完整特征空间分解

    Args:
        g: 李代数
        h: 生成元
        candidates: 已知候选特征值（可选）
        check: 是否校验 [𝔤_λ, 𝔤_μ] ⊆ 𝔤_{λ+μ}

    Raises:
        SpectrumError: ad(h) 谱非有理或不可对角化，消息中给出剩余维数
    """
    if h.is_zero():
        return Grading(generator=h, parts={ZERO: Subspace.full(g.dim)})
    parts = eigen_decomposition(ad_matrix(g, h), candidates)
    grading = Grading(generator=h, parts=parts)
    if check:
        check_grading(g, grading)
    return grading


def check_grading(g: LieAlgebra, grading: Grading) -> None:
    """校验分次与括号相容"""
    h = grading.generator.sparse()
    items = sorted(grading.parts.items())
    for a, (lam, space_a) in enumerate(items):
        for mu, space_b in items[a:]:
            target = lam + mu
            for u in space_a.rows:
                su = to_sparse(u)
                for v in space_b.rows:
                    w = bracket_sparse(g, su, to_sparse(v))
                    if not w:
                        continue
                    hw = bracket_sparse(g, h, w)
                    expected = {k: target * c for k, c in w.items()} if target else {}
                    if hw != expected:
                        raise ValidationError(
                            f"分次不相容: [𝔤_{format_qq(lam)}, 𝔤_{format_qq(mu)}] ⊄ 𝔤_{format_qq(target)}"
                        )


def normalized_grading(g: LieAlgebra, h: LieElement) -> Grading:
    """缩放生成元使最大特征值为 1，并记录缩放因子"""
    grading = grading_of(g, h)
    top = max(grading.parts)
    if top <= 0:
        return grading
    factor = 1 / top
    parts = {lam * factor: space for lam, space in grading.parts.items()}
    return Grading(generator=h.scale(factor), parts=parts, scale=factor)


def exp_i_pi_ad(g: LieAlgebra, h: LieElement, grading: Optional[Grading] = None) -> DomainMatrix:
    """
    整数谱元素 h 的 exp(iπ ad h)：在 𝔤_n(h) 上作用为 (−1)^n

    Raises:
        ContractViolation: ad(h) 的谱不是整数
    """
    grading = grading or grading_of(g, h, check=False)
    blocks = []
    signs = []
    for lam, space in grading.parts.items():
        if lam.denominator != 1:
            raise ContractViolation(f"h 不是整双曲元: 出现特征值 {format_qq(lam)}")
        blocks.append(space)
        signs.append(QQ(1) if lam.numerator % 2 == 0 else QQ(-1))
    return block_map(g.dim, blocks, signs)


def block_map(dim: int, blocks: Sequence[Subspace], scalars: Sequence[Scalar]) -> DomainMatrix:
    """在直和分解 ⊕V_i 上按 V_i 作用为 s_i 的线性映射"""
    basis = []
    images = []
    for space, s in zip(blocks, scalars):
        for row in space.rows:
            basis.append(row)
            images.append(tuple(s * v for v in row))
    if len(basis) != dim:
        raise ContractViolation(f"块分解维数 {len(basis)} 与 {dim} 不一致")
    b = DomainMatrix.from_list([list(r) for r in basis], QQ).transpose()
    c = DomainMatrix.from_list([list(r) for r in images], QQ).transpose()
    return (c * b.inv()).to_sparse()


# ---------------------------------------------------------------------------
# 子空间运算
# ---------------------------------------------------------------------------

def bracket_span(g: LieAlgebra, a: Subspace, b: Subspace) -> Subspace:
    """span[A, B]"""
    vectors = []
    for u in a.rows:
        su = to_sparse(u)
        for v in b.rows:
            w = bracket_sparse(g, su, to_sparse(v))
            if w:
                vectors.append(to_dense(w, g.dim))
    return Subspace.span(g.dim, vectors)


def is_abelian(g: LieAlgebra, space: Subspace) -> bool:
    """[S, S] = 0"""
    rows = [to_sparse(r) for r in space.rows]
    return all(not bracket_sparse(g, rows[i], rows[j])
               for i in range(len(rows)) for j in range(i + 1, len(rows)))


def is_subalgebra(g: LieAlgebra, space: Subspace) -> bool:
    """子空间是否对括号封闭（全部括号张成的空间含于其中）"""
    if space.is_full():
        return True
    rows = [to_sparse(r) for r in space.rows]
    images = []
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            w = bracket_sparse(g, rows[i], rows[j])
            if w:
                images.append(to_dense(w, g.dim))
    return space.contains_subspace(Subspace.span(g.dim, images))


def subalgebra_generated(g: LieAlgebra, space: Subspace) -> Subspace:
    """
    包含 S 的最小括号封闭子空间

    逐个吸收新向量并与已有向量做括号，直到不再扩张
    """
    acc = EchelonAccumulator()
    elements: List[SparseVector] = []
    queue = [to_sparse(r) for r in space.rows]
    while queue:
        v = queue.pop(0)
        if not acc.add(v):
            continue
        for u in elements:
            w = bracket_sparse(g, u, v)
            if w:
                queue.append(w)
        elements.append(v)
    return Subspace.span(g.dim, [to_dense(v, g.dim) for v in elements])


def ideal_generated(g: LieAlgebra, vectors: Iterable[SparseVector]) -> Subspace:
    """由若干向量生成的理想（在 ad(𝔤) 下封闭）"""
    acc = EchelonAccumulator()
    kept: List[SparseVector] = []
    queue = list(vectors)
    while queue:
        v = queue.pop()
        if not acc.add(v):
            continue
        kept.append(v)
        for i in range(g.dim):
            w = bracket_sparse(g, {i: QQ(1)}, v)
            if w:
                queue.append(w)
    return Subspace.span(g.dim, [to_dense(v, g.dim) for v in kept])


def centralizer(g: LieAlgebra, space: Subspace, within: Optional[Subspace] = None) -> Subspace:
    """{x ∈ within : [x, s] = 0 ∀ s ∈ S}"""
    within = within or Subspace.full(g.dim)
    if within.is_zero():
        return within
    # x = Σ c_i w_i，方程 Σ c_i [w_i, s] = 0
    rows = [to_sparse(w) for w in within.rows]
    equations: Dict[Tuple[int, int], Dict[int, Scalar]] = {}
    for t, s in enumerate(space.rows):
        ss = to_sparse(s)
        for i, w in enumerate(rows):
            for k, v in bracket_sparse(g, w, ss).items():
                equations.setdefault((t, k), {})[i] = v
    system = DomainMatrix.from_dod(
        {n: eq for n, eq in enumerate(equations.values())}, (len(equations), within.dim), QQ
    )
    coeffs = kernel(system)
    return Subspace.span(g.dim, [within.combine(c) for c in coeffs.rows])


def killing_orthogonal(g: LieAlgebra, space: Subspace, within: Subspace) -> Subspace:
    """{x ∈ within : β(x, S) = 0}"""
    if within.is_zero() or space.is_zero():
        return within
    mixed = within.matrix * killing_matrix(g) * space.matrix.transpose()
    coeffs = kernel(mixed.transpose())
    return Subspace.span(g.dim, [within.combine(c) for c in coeffs.rows])


def restrict_to(g: LieAlgebra, space: Subspace, label: str = "") -> LieAlgebra:
    """
    括号封闭子空间上的结构常数（以其 RREF 基为坐标）

    Raises:
        ContractViolation: 子空间不对括号封闭
    """
    rows = [to_sparse(r) for r in space.rows]
    structure: StructureTable = {}
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            w = bracket_sparse(g, rows[i], rows[j])
            if not w:
                continue
            coords = space.try_coordinates(to_dense(w, g.dim))
            if coords is None:
                raise ContractViolation("子空间不对括号封闭")
            out = {k: c for k, c in enumerate(coords) if c}
            if out:
                structure[(i, j)] = out
    return LieAlgebra(dim=len(rows), structure=structure, label=label)


def is_semisimple(g: LieAlgebra) -> bool:
    """Killing 型非退化"""
    if g.dim == 0:
        return True
    return killing_matrix(g).rank() == g.dim


# ---------------------------------------------------------------------------
# 理想分解
# ---------------------------------------------------------------------------

CENTROID_SEED = 20240607
CENTROID_ATTEMPTS = 8


def _commutant_equations(a: Dict[int, Dict[int, Scalar]], n: int) -> List[SparseVector]:
    """方程 A·T − T·A = 0，未知数 T[p][q] 编号 p·n + q"""
    columns: Dict[int, Dict[int, Scalar]] = {}
    for j, row in a.items():
        for k, v in row.items():
            columns.setdefault(k, {})[j] = v
    equations = []
    for i in range(n):
        row_a = a.get(i, {})
        for k in range(n):
            eq: SparseVector = {}
            for j, v in row_a.items():
                eq[j * n + k] = eq.get(j * n + k, ZERO) + v
            for j, v in columns.get(k, {}).items():
                eq[i * n + j] = eq.get(i * n + j, ZERO) - v
            eq = {c: v for c, v in eq.items() if v}
            if eq:
                equations.append(eq)
    return equations


def _as_matrix(vec: SparseVector, n: int) -> DomainMatrix:
    dod: Dict[int, Dict[int, Scalar]] = {}
    for idx, v in vec.items():
        dod.setdefault(idx // n, {})[idx % n] = v
    return DomainMatrix.from_dod(dod, (n, n), QQ)


def centroid(g: LieAlgebra, rng: Optional[random.Random] = None) -> List[DomainMatrix]:
    """
    形心 {T ∈ End(𝔤) : T∘ad x = ad x∘T ∀x} 的基

    ad(𝔤) 生成的结合代数由少数一般元素的 ad 生成：先对随机元素求交换子，
    再对全部基元素校验，不满足时追加随机元素；多次失败后改用全部基元素。
    """
    n = g.dim
    if n == 0:
        return []
    rng = rng or random.Random(CENTROID_SEED)
    basis_ads = [DomainMatrix.from_dod(ad_dod(g, {i: QQ(1)}), (n, n), QQ) for i in range(n)]
    reduced: List[SparseVector] = []
    for attempt in range(CENTROID_ATTEMPTS):
        x = {i: QQ(rng.randint(-9, 9)) for i in range(n)}
        x = {i: v for i, v in x.items() if v}
        reduced, pivots = sparse_rref(reduced + _commutant_equations(ad_dod(g, x), n), n * n)
        if attempt == 0:
            continue
        found = [_as_matrix(v, n) for v in kernel_from_rref(reduced, pivots, n * n)]
        if all(commutes(t, a) for t in found for a in basis_ads):
            return found
    logger.debug(f"{g.label}: 随机元素未生成 ad 代数，改用全部基元素求形心")
    equations = list(reduced)
    for i in range(n):
        equations.extend(_commutant_equations(ad_dod(g, {i: QQ(1)}), n))
    return [_as_matrix(v, n) for v in sparse_kernel(equations, n * n, batch=n * n)]


def _poly_at(poly: Sequence[Scalar], t: DomainMatrix) -> DomainMatrix:
    """Horner 求 p(T)（系数高次在前）"""
    n = t.shape[0]
    out = zeros(n, n)
    for c in poly:
        out = out * t + identity(n) * c
    return out


def _centroid_split(g: LieAlgebra, ideal: Subspace, rng: random.Random) -> Optional[List[Subspace]]:
    """
    按形心一般元素的特征多项式不可约因子分裂理想

    半单代数的形心是各单理想形心（ℝ 或 ℂ）的直积。一般元素在每个单理想上
    的极小多项式是一次或不可约二次因子，互异因子的核即对应单理想之和。
    唯一因子的次数等于形心维数时理想是单的。

    Returns:
        分裂出的理想（g 的坐标）；ideal 为单理想时返回 None

    Raises:
        SpectrumError: 多次取样都未能分离
    """
    local = g if ideal.is_full() else restrict_to(g, ideal)
    basis = centroid(local, rng)
    if len(basis) <= 1:
        return None
    n = local.dim
    for _ in range(CENTROID_ATTEMPTS):
        t = zeros(n, n)
        for b in basis:
            t = t + b * QQ(rng.randint(1, 97))
        _, factors = dup_factor_list(t.charpoly(), QQ)
        if len(factors) == 1:
            if len(factors[0][0]) - 1 == len(basis):
                return None
            continue
        pieces = [kernel(_poly_at(f, t)) for f, _ in factors]
        if sum(p.dim for p in pieces) != n:
            raise ValidationError("形心元素在理想上不可对角化")
        return [lift(ideal, p) for p in pieces]
    raise SpectrumError(f"{g.label}: 形心一般元素未能分离单理想", residual_dim=ideal.dim)


def _split_once(g: LieAlgebra, ideal: Subspace) -> Optional[Tuple[Subspace, Subspace]]:
    """由基向量（及其括号）生成的理想尝试分裂；基向量跨越多个单理想时可能找不到"""
    rows = [to_sparse(r) for r in ideal.rows]
    candidates = list(rows)
    candidates.extend(bracket_sparse(g, a, b) for a, b in combinations(rows, 2))
    for v in candidates:
        if not v:
            continue
        sub = ideal_generated(g, [v])
        if 0 < sub.dim < ideal.dim:
            rest = killing_orthogonal(g, sub, ideal)
            if sub.dim + rest.dim != ideal.dim:
                raise ValidationError("理想的 Killing 正交补维数不符")
            return sub, rest
    return None


def ideal_decomposition(g: LieAlgebra, within: Optional[Subspace] = None,
                        hints: Optional[Sequence[Subspace]] = None,
                        refine: bool = True) -> List[Subspace]:
    """
    半单代数的极小理想分解

    在子代数自身的结构常数上计算：先取单个基向量（及基向量括号）生成理想，
    沿 Killing 正交补分裂；找不到时按形心一般元素的不可约因子分裂，迭代到极小。

    Args:
        g: 环境李代数
        within: 括号封闭子空间（默认整个代数）
        hints: 候选理想（环境坐标），先校验后作为初始分裂
        refine: 是否继续分裂候选理想；为 False 时候选理想直接作为结果，
            只在环境坐标中校验直和与理想性质（大维数时使用）

    Returns:
        极小理想列表（环境坐标，按主元排序）

    Raises:
        ContractViolation: Killing 型退化（非半单）
        ValidationError: 候选理想不构成直和分解
    """
    within = within or Subspace.full(g.dim)
    if within.is_zero():
        return []
    if hints and not refine:
        return _checked_hints(g, within, hints)
    local = g if within.is_full() else restrict_to(g, within)
    if not is_semisimple(local):
        raise ContractViolation(f"{g.label}: 子代数的 Killing 型退化，不是半单的")
    pending: List[Subspace] = []
    if hints:
        local_hints = [Subspace.span(local.dim, [within.coordinates(r) for r in h.rows])
                       for h in hints if not h.is_zero()]
        total = sum(h.dim for h in local_hints)
        joined = local_hints[0].join(*local_hints[1:]) if local_hints else None
        if joined is None or total != local.dim or not joined.is_full():
            raise ValidationError("候选理想不构成直和分解")
        for h in local_hints:
            if ideal_generated(local, [to_sparse(r) for r in h.rows]) != h:
                raise ValidationError("候选子空间不是理想")
        pending = local_hints
    else:
        pending = [Subspace.full(local.dim)]
    rng = random.Random(CENTROID_SEED)
    minimal: List[Subspace] = []
    while pending:
        current = pending.pop()
        split = _split_once(local, current)
        if split is None:
            split = _centroid_split(local, current, rng)
        if split is None:
            minimal.append(current)
        else:
            pending.extend(split)
    for a, b in combinations(minimal, 2):
        if bracket_span(local, a, b).dim:
            raise ValidationError("不同理想之间括号不为零")
    result = [lift(within, m) for m in minimal]
    return sorted(result, key=lambda s: s.pivots)


def _checked_hints(g: LieAlgebra, within: Subspace, hints: Sequence[Subspace]) -> List[Subspace]:
    """校验候选理想：直和等于 within，各自为 within 的理想，两两括号为零"""
    ideals = [h for h in hints if not h.is_zero()]
    if sum(h.dim for h in ideals) != within.dim or Subspace.zero(g.dim).join(*ideals) != within:
        raise ValidationError("候选理想不构成直和分解")
    for h in ideals:
        if h.is_full():
            continue
        if not h.contains_subspace(bracket_span(g, within, h)):
            raise ValidationError("候选子空间不是理想")
    for a, b in combinations(ideals, 2):
        if bracket_span(g, a, b).dim:
            raise ValidationError("不同理想之间括号不为零")
    return sorted(ideals, key=lambda s: s.pivots)


# ---------------------------------------------------------------------------
# 自同构
# ---------------------------------------------------------------------------

def is_automorphism(g: LieAlgebra, phi: LinearAutomorphism) -> bool:
    """φ 可逆且在全部基对上保持括号"""
    if phi.dim != g.dim:
        raise ContractViolation(f"映射维数 {phi.dim} 与代数维数 {g.dim} 不一致")
    if phi.matrix.rank() != g.dim:
        return False
    cols = columns_of(phi.matrix)
    dod = phi.matrix.to_dod()
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            lhs = mat_vec_sparse(dod, g.table.get((i, j), {}))
            rhs = bracket_sparse(g, cols[i], cols[j])
            if lhs != rhs:
                return False
    return True


def is_involutive_automorphism(g: LieAlgebra, phi: LinearAutomorphism) -> bool:
    """φ² = id 且保持括号"""
    if phi.dim != g.dim:
        return False
    if not mat_equal(phi.matrix * phi.matrix, identity(g.dim)):
        return False
    return is_automorphism(g, phi)


def fixed_space(phi: DomainMatrix) -> Subspace:
    """φ 的不动子空间"""
    return eigenspace(phi, 1)


def eigen_part(phi: DomainMatrix, lam) -> Subspace:
    """φ 的 λ-特征子空间"""
    return eigenspace(phi, lam)


# ---------------------------------------------------------------------------
# 限制根
# ---------------------------------------------------------------------------

def restricted_root_data(g: LieAlgebra, a_basis: Sequence[LieElement],
                         within: Optional[Subspace] = None) -> RootData:
    """
    𝔞 的联合特征泛函及其根空间维数

    Args:
        g: 李代数
        a_basis: 交换、ad-可对角化的元素
        within: 不变子代数（默认整个代数）

    Returns:
        RootData（零泛函记为中心化子维数）
    """
    within = within or Subspace.full(g.dim)
    mats = [ad_matrix(g, a) for a in a_basis]
    for i, j in combinations(range(len(a_basis)), 2):
        if bracket(g, a_basis[i], a_basis[j]).coords != LieElement.zero(g.dim).coords:
            raise ContractViolation("𝔞 的基元素不交换")
    if not mats:
        return RootData(roots={}, centralizer_dim=within.dim)
    local = [restrict(m, within) for m in mats]
    blocks = simultaneous_eigenspaces(local, Subspace.full(within.dim))
    roots: Dict[Tuple[Scalar, ...], int] = {}
    centralizer_dim = 0
    for key, space in blocks.items():
        if all(v == 0 for v in key):
            centralizer_dim = space.dim
        else:
            roots[key] = space.dim
    return RootData(roots=roots, centralizer_dim=centralizer_dim)
