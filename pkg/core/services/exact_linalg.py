"""
精确有理线性代数模块
子空间、核、特征空间、线性求解与对称矩阵半正定性的精确判定
"""
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.factortools import dup_factor_list
from sympy.polys.matrices import DomainMatrix

from core.entities.errors import ContractViolation, SpectrumError
from core.entities.scalar import Scalar, ZERO, to_qq
from core.entities.subspace import Subspace, Vector, rref_rows, vectors_to_matrix
from infrastructure.logger import get_logger

logger = get_logger()

SparseVector = Dict[int, Scalar]


# ---------------------------------------------------------------------------
# 稀疏向量工具
# ---------------------------------------------------------------------------

def to_sparse(vec: Sequence) -> SparseVector:
    """稠密向量转稀疏字典"""
    return {i: to_qq(v) for i, v in enumerate(vec) if v}


def to_dense(vec: SparseVector, n: int) -> Vector:
    """稀疏字典转稠密元组"""
    return tuple(vec.get(i, ZERO) for i in range(n))


def sparse_axpy(target: SparseVector, scale: Scalar, source: SparseVector) -> None:
    """target += scale * source（原地）"""
    if not scale:
        return
    for k, v in source.items():
        value = target.get(k, ZERO) + scale * v
        if value:
            target[k] = value
        else:
            target.pop(k, None)


def sparse_scale(vec: SparseVector, scale: Scalar) -> SparseVector:
    """数乘"""
    if not scale:
        return {}
    return {k: scale * v for k, v in vec.items()}


def sparse_combination(terms: Iterable[Tuple[Scalar, SparseVector]]) -> SparseVector:
    """线性组合 Σ c_i v_i"""
    out: SparseVector = {}
    for c, vec in terms:
        sparse_axpy(out, c, vec)
    return out


# ---------------------------------------------------------------------------
# 矩阵构造
# ---------------------------------------------------------------------------

def matrix(rows: Sequence[Sequence]) -> DomainMatrix:
    """由行列表构造 QQ 上的稀疏矩阵"""
    ncols = len(rows[0]) if rows else 0
    for row in rows:
        if len(row) != ncols:
            raise ContractViolation("矩阵各行长度不一致")
    return vectors_to_matrix(rows, ncols)


def identity(n: int) -> DomainMatrix:
    """单位矩阵"""
    return DomainMatrix.eye(n, QQ).to_sparse()


def zeros(m: int, n: int) -> DomainMatrix:
    """零矩阵"""
    return DomainMatrix.zeros((m, n), QQ)


def from_sparse_columns(columns: Sequence[SparseVector], n: int) -> DomainMatrix:
    """以稀疏向量为列构造 n×len(columns) 矩阵"""
    dod: Dict[int, Dict[int, Scalar]] = {}
    for j, col in enumerate(columns):
        for i, v in col.items():
            if v:
                dod.setdefault(i, {})[j] = v
    return DomainMatrix.from_dod(dod, (n, len(columns)), QQ)


def columns_of(m: DomainMatrix) -> List[SparseVector]:
    """矩阵各列的稀疏表示"""
    rows, cols = m.shape
    out: List[SparseVector] = [{} for _ in range(cols)]
    for i, row in m.to_dod().items():
        for j, v in row.items():
            if v:
                out[j][i] = v
    return out


def mat_vec(m: DomainMatrix, vec: Sequence) -> Vector:
    """矩阵作用于列向量"""
    rows, cols = m.shape
    if len(vec) != cols:
        raise ContractViolation(f"向量长度 {len(vec)} 与矩阵列数 {cols} 不一致")
    out = [ZERO] * rows
    for i, row in m.to_dod().items():
        acc = ZERO
        for j, v in row.items():
            if vec[j]:
                acc += v * vec[j]
        out[i] = acc
    return tuple(out)


def mat_vec_sparse(dod: Dict[int, Dict[int, Scalar]], vec: SparseVector) -> SparseVector:
    """dod 形式的矩阵作用于稀疏向量"""
    out: SparseVector = {}
    for i, row in dod.items():
        acc = ZERO
        for j, v in row.items():
            x = vec.get(j)
            if x:
                acc += v * x
        if acc:
            out[i] = acc
    return out


def is_symmetric(m: DomainMatrix) -> bool:
    """是否对称"""
    return m.is_square and (m - m.transpose()).is_zero_matrix


def commutes(a: DomainMatrix, b: DomainMatrix) -> bool:
    """两矩阵是否可交换"""
    return (a * b - b * a).is_zero_matrix


# ---------------------------------------------------------------------------
# RREF / 核 / 求解
# ---------------------------------------------------------------------------

def rref(m: DomainMatrix) -> DomainMatrix:
    """
    简化行阶梯形（保持原有行数，零行置底）

    Args:
        m: 任意有理矩阵

    Returns:
        唯一的 RREF 矩阵
    """
    nrows, ncols = m.shape
    dense = m.to_list()
    rows = list(rref_rows(dense, ncols))
    rows.extend([(ZERO,) * ncols] * (nrows - len(rows)))
    return matrix(rows) if rows else m


def sparse_rref(rows: Sequence[SparseVector], ncols: int) -> Tuple[List[SparseVector], List[int]]:
    """稀疏行的 RREF，返回非零行（按主元升序）与主元列"""
    rows = [r for r in rows if r]
    if not rows:
        return [], []
    dod = {i: dict(r) for i, r in enumerate(rows)}
    reduced, pivots = DomainMatrix.from_dod(dod, (len(rows), ncols), QQ).rref()
    out_dod = reduced.to_dod()
    out = [dict(out_dod.get(i, {})) for i in range(len(pivots))]
    order = sorted(range(len(pivots)), key=lambda i: pivots[i])
    return [out[i] for i in order], [pivots[i] for i in order]


def kernel_from_rref(rows: Sequence[SparseVector], pivots: Sequence[int], ncols: int) -> List[SparseVector]:
    """由 RREF 读出核的基（自由变量取单位向量）"""
    pivot_set = set(pivots)
    basis = []
    for j in range(ncols):
        if j in pivot_set:
            continue
        vec: SparseVector = {j: QQ(1)}
        for row, p in zip(rows, pivots):
            v = row.get(j)
            if v:
                vec[p] = -v
        basis.append(vec)
    return basis


def sparse_kernel(rows: Iterable[SparseVector], ncols: int, batch: int = 0) -> List[SparseVector]:
    """
    稀疏线性方程组 rows·x = 0 的解空间基

    Args:
        rows: 方程（稀疏行）
        ncols: 未知数个数
        batch: 分批消元的批大小（0 表示一次性）

    Returns:
        核的基向量（稀疏）
    """
    if batch <= 0:
        reduced, pivots = sparse_rref(list(rows), ncols)
        return kernel_from_rref(reduced, pivots, ncols)
    reduced: List[SparseVector] = []
    pivots: List[int] = []
    chunk: List[SparseVector] = []
    for row in rows:
        if row:
            chunk.append(row)
        if len(chunk) >= batch:
            reduced, pivots = sparse_rref(reduced + chunk, ncols)
            chunk = []
            if len(pivots) == ncols:
                return []
    if chunk:
        reduced, pivots = sparse_rref(reduced + chunk, ncols)
    return kernel_from_rref(reduced, pivots, ncols)


def kernel(m: DomainMatrix) -> Subspace:
    """右核 {x : m x = 0}"""
    nrows, ncols = m.shape
    rows = [dict(r) for r in m.to_dod().values()]
    basis = sparse_kernel(rows, ncols)
    return Subspace.span(ncols, [to_dense(v, ncols) for v in basis])


def annihilator(space: Subspace) -> Subspace:
    """标准内积下的正交补"""
    if space.is_zero():
        return Subspace.full(space.ambient_dim)
    rows = [to_sparse(r) for r in space.rows]
    basis = kernel_from_rref(rows, list(space.pivots), space.ambient_dim)
    return Subspace.span(space.ambient_dim, [to_dense(v, space.ambient_dim) for v in basis])


def intersect(*spaces: Subspace) -> Subspace:
    """子空间交：(ΣU_i^⊥)^⊥"""
    if not spaces:
        raise ContractViolation("至少需要一个子空间")
    complements = [annihilator(s) for s in spaces]
    total = complements[0].join(*complements[1:])
    return annihilator(total)


def solve(a: DomainMatrix, b: Sequence) -> Optional[Vector]:
    """
    求解 a x = b 的一个特解

    Returns:
        解向量；无解时返回 None
    """
    nrows, ncols = a.shape
    if len(b) != nrows:
        raise ContractViolation(f"右端长度 {len(b)} 与行数 {nrows} 不一致")
    rhs = DomainMatrix.from_dod(
        {i: {0: to_qq(v)} for i, v in enumerate(b) if v}, (nrows, 1), QQ
    )
    aug = a.to_sparse().hstack(rhs)
    rows, pivots = sparse_rref([dict(r) for r in aug.to_dod().values()], ncols + 1)
    if ncols in pivots:
        return None
    x = [ZERO] * ncols
    for row, p in zip(rows, pivots):
        x[p] = row.get(ncols, ZERO)
    return tuple(x)


class SpanBasis:
    """
    任意（线性无关）基下的坐标计算

    对 [B | I] 做 RREF：右半块 T 满足 T·B = RREF(B)，
    于是 v 的坐标为 v 在主元处的分量左乘 T。
    """

    def __init__(self, vectors: Sequence[SparseVector], ambient_dim: int):
        self.vectors = [dict(v) for v in vectors]
        self.ambient_dim = ambient_dim
        m = len(self.vectors)
        aug = []
        for i, vec in enumerate(self.vectors):
            row = dict(vec)
            row[ambient_dim + i] = QQ(1)
            aug.append(row)
        rows, pivots = sparse_rref(aug, ambient_dim + m)
        if len(pivots) != m or any(p >= ambient_dim for p in pivots):
            raise ContractViolation("SpanBasis 的输入向量线性相关")
        self._pivots = pivots
        self._transform = [
            {k - ambient_dim: v for k, v in row.items() if k >= ambient_dim}
            for row in rows
        ]

    @property
    def dim(self) -> int:
        """基的大小"""
        return len(self.vectors)

    def try_coordinates(self, vec: SparseVector) -> Optional[SparseVector]:
        """坐标；不在张成空间内时返回 None"""
        coeffs: SparseVector = {}
        for p, t_row in zip(self._pivots, self._transform):
            c = vec.get(p)
            if c:
                sparse_axpy(coeffs, c, t_row)
        rebuilt = sparse_combination((c, self.vectors[i]) for i, c in coeffs.items())
        if rebuilt != {k: v for k, v in vec.items() if v}:
            return None
        return coeffs

    def coordinates(self, vec: SparseVector) -> SparseVector:
        """坐标，不在张成空间内时报错"""
        coeffs = self.try_coordinates(vec)
        if coeffs is None:
            raise ContractViolation("向量不在给定基的张成空间内")
        return coeffs


class EchelonAccumulator:
    """逐个吸收向量并判断线性无关性（行阶梯形，不做回代）"""

    def __init__(self):
        self._rows: Dict[int, SparseVector] = {}

    @property
    def rank(self) -> int:
        """当前秩"""
        return len(self._rows)

    def reduce(self, vec: SparseVector) -> SparseVector:
        """对已有行做消元后的余量"""
        residual = dict(vec)
        for p in sorted(self._rows):
            c = residual.get(p)
            if c:
                sparse_axpy(residual, -c, self._rows[p])
        return residual

    def add(self, vec: SparseVector) -> bool:
        """吸收向量；线性无关时返回 True"""
        residual = self.reduce(vec)
        if not residual:
            return False
        lead = min(residual)
        self._rows[lead] = sparse_scale(residual, 1 / residual[lead])
        return True


# ---------------------------------------------------------------------------
# 特征值与特征空间
# ---------------------------------------------------------------------------

def eigenspace(m: DomainMatrix, lam) -> Subspace:
    """
    特征空间 ker(m − λ·id)

    Raises:
        ContractViolation: 非方阵
    """
    if not m.is_square:
        raise ContractViolation(f"特征空间要求方阵，实际形状 {m.shape}")
    n = m.shape[0]
    return kernel(m - identity(n) * to_qq(lam))


def _local_minimal_polynomial(dod, start: SparseVector, n: int) -> List[Scalar]:
    """Krylov 序列 v, Mv, M²v, … 的局部极小多项式（首一，高次在前）"""
    chain = [start]
    while True:
        nxt = mat_vec_sparse(dod, chain[-1])
        columns = from_sparse_columns(chain, n)
        coeffs = solve(columns, to_dense(nxt, n))
        if coeffs is not None:
            # t^d − Σ c_i t^i
            return [QQ(1)] + [-c for c in reversed(coeffs)]
        chain.append(nxt)
        if len(chain) > n:
            raise SpectrumError("Krylov 序列未终止", residual_dim=n)


def _linear_roots(poly: List[Scalar]) -> List[Scalar]:
    """分解首一多项式，要求全部为互异的有理一次因子"""
    _, factors = dup_factor_list(poly, QQ)
    roots = []
    for factor, mult in factors:
        if len(factor) != 2:
            raise SpectrumError(f"出现非有理特征值（不可约因子次数 {len(factor) - 1}）")
        if mult > 1:
            raise SpectrumError("矩阵不可对角化（极小多项式有重根）")
        roots.append(-factor[1] / factor[0])
    return roots


def rational_eigenvalues(m: DomainMatrix) -> List[Scalar]:
    """
    可对角化有理谱矩阵的全部特征值（升序）

    对每个坐标向量求局部极小多项式并分解；出现非线性因子或重根即报错。
    """
    if not m.is_square:
        raise ContractViolation(f"特征值要求方阵，实际形状 {m.shape}")
    n = m.shape[0]
    dod = m.to_dod()
    found = set()
    for j in range(n):
        found.update(_linear_roots(_local_minimal_polynomial(dod, {j: QQ(1)}, n)))
    return sorted(found)


def eigen_decomposition(m: DomainMatrix, candidates: Optional[Iterable] = None) -> Dict[Scalar, Subspace]:
    """
    完整的特征空间分解

    Args:
        m: 方阵
        candidates: 已知的候选特征值（可选，省去求根）

    Returns:
        特征值 → 特征空间（仅非零子空间）

    Raises:
        SpectrumError: 维数之和不足（谱非有理或不可对角化）
    """
    n = m.shape[0]
    values = sorted({to_qq(c) for c in candidates}) if candidates is not None else rational_eigenvalues(m)
    parts: Dict[Scalar, Subspace] = {}
    for lam in values:
        space = eigenspace(m, lam)
        if not space.is_zero():
            parts[lam] = space
    total = sum(s.dim for s in parts.values())
    if total != n:
        raise SpectrumError(
            f"特征空间维数之和 {total} 小于 {n}，剩余 {n - total} 维未分解",
            residual_dim=n - total,
        )
    return parts


def restrict(m: DomainMatrix, space: Subspace) -> DomainMatrix:
    """
    把矩阵限制到不变子空间上（以子空间 RREF 基为坐标）

    Raises:
        ContractViolation: 子空间不是不变子空间
    """
    k = space.dim
    if k == 0:
        return zeros(0, 0)
    images = space.matrix * m.transpose()
    coords = images.extract(list(range(k)), list(space.pivots))
    if not (coords * space.matrix - images).is_zero_matrix:
        raise ContractViolation("子空间在矩阵作用下不是不变的")
    return coords.transpose()


def lift(space: Subspace, sub: Subspace) -> Subspace:
    """把子空间坐标下的子空间映回环境坐标"""
    return Subspace.span(space.ambient_dim, [space.combine(row) for row in sub.rows])


def simultaneous_eigenspaces(ms: Sequence[DomainMatrix], ambient: Optional[Subspace] = None,
                             dim: Optional[int] = None) -> Dict[Tuple[Scalar, ...], Subspace]:
    """
    两两可交换矩阵族的联合特征空间分解

    空矩阵族给出 {(): 环境子空间}；此时维数无从推断，须给出 ambient 或 dim。

    Args:
        ms: 可交换矩阵族
        ambient: 作用的不变子空间（默认全空间）
        dim: 全空间维数（仅在 ms 为空且未给出 ambient 时使用）

    Returns:
        特征值元组 → 联合特征空间

    Raises:
        ContractViolation: 矩阵不可交换，或空矩阵族既无 ambient 也无 dim
        SpectrumError: 剩余子空间无法分解
    """
    if ambient is None:
        n = ms[0].shape[0] if ms else dim
        if n is None:
            raise ContractViolation("空矩阵族需要给出 ambient 或 dim")
        ambient = Subspace.full(n)
    for i in range(len(ms)):
        for j in range(i + 1, len(ms)):
            if not commutes(ms[i], ms[j]):
                raise ContractViolation(f"第 {i} 与第 {j} 个矩阵不可交换")
    blocks: Dict[Tuple[Scalar, ...], Subspace] = {(): ambient}
    for m in ms:
        refined: Dict[Tuple[Scalar, ...], Subspace] = {}
        for key, space in blocks.items():
            local = restrict(m, space)
            for lam, part in eigen_decomposition(local).items():
                refined[key + (lam,)] = lift(space, part)
        blocks = refined
    total = sum(s.dim for s in blocks.values())
    if total != ambient.dim:
        raise SpectrumError(
            f"联合特征空间维数之和 {total} 与 {ambient.dim} 不一致",
            residual_dim=ambient.dim - total,
        )
    return dict(sorted(blocks.items()))


# ---------------------------------------------------------------------------
# 半正定判定
# ---------------------------------------------------------------------------

def _ldl_pivots(m: DomainMatrix, strict: bool) -> bool:
    """
    对称主元 LDLᵀ 消元

    零主元时所在行（列）必须全为零，否则判定为非半正定；
    strict 时零主元直接判定为非正定。
    """
    if not m.is_square:
        raise ContractViolation(f"要求方阵，实际形状 {m.shape}")
    if not is_symmetric(m):
        raise ContractViolation("输入矩阵不是对称矩阵")
    a = [list(row) for row in m.to_list()]
    n = len(a)
    for k in range(n):
        d = a[k][k]
        if d < 0:
            return False
        if d == 0:
            if strict:
                return False
            if any(a[k][j] for j in range(k + 1, n)):
                return False
            continue
        for i in range(k + 1, n):
            factor = a[i][k]
            if not factor:
                continue
            factor = factor / d
            row_k = a[k]
            row_i = a[i]
            for j in range(k + 1, n):
                if row_k[j]:
                    row_i[j] -= factor * row_k[j]
    return True


def is_psd_symmetric(m: DomainMatrix) -> bool:
    """对称矩阵是否半正定（精确）"""
    return _ldl_pivots(m, strict=False)


def is_pd_symmetric(m: DomainMatrix) -> bool:
    """对称矩阵是否正定（精确）"""
    return _ldl_pivots(m, strict=True)


def mat_equal(a: DomainMatrix, b: DomainMatrix) -> bool:
    """矩阵相等（忽略稠密/稀疏存储格式）"""
    return a.shape == b.shape and (a - b).is_zero_matrix
