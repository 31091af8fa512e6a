"""Local-dimension machinery: certified spectral radii, cycle enumeration,
pseudo-norm bounds over admissible products, and report assembly.

Conventions. Matrices are the normalized ones from the graph (nonzero entries
are weights over the smallest weight, hence >= 1). The canonical per-class
quantity is the per-step spectral value sp(T)^(1/L) of a closed L-step walk;
a per-step value s translates into the local dimension
(log p_0 + log s) / log rho. Since log rho < 0, larger spectral values mean
smaller dimensions.

Spectral radii come with certified rational enclosures: Collatz-Wielandt
quotients of an exactly-computed iteration on each irreducible diagonal block,
with a unit shift to kill periodicity, and repeated squaring as a fallback
accelerator. Norm products are evaluated exactly; floating point only enters
in final roots and logarithms.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import (
    EdgesNotAdmissible,
    NotACycle,
    PathExplosion,
    SubsetInvalidForClass,
    ZeroRow,
)
from .ifsmodel import Model
from .loopclasses import LoopClass, classify_all, strongly_connected_components
from .netgraph import TransitionGraph

_EXACT_SQRT_SCALE = 10 ** 40


# ----------------------------------------------------------------------------
# small exact matrix helpers
# ----------------------------------------------------------------------------

def mat_mul(A, B):
    """Product of two row-tuple matrices with exact entries."""
    K = len(B[0])
    mid = len(B)
    out = []
    for row in A:
        acc = [0] * K
        for j in range(mid):
            a = row[j]
            if a:
                brow = B[j]
                for k in range(K):
                    if brow[k]:
                        acc[k] += a * brow[k]
        out.append(tuple(acc))
    return tuple(out)


def product_along(edges):
    """Matrix product along consecutive edges; validates adjacency."""
    if not edges:
        raise NotACycle("empty edge path")
    for e, f in zip(edges, edges[1:]):
        if e.child != f.parent:
            raise EdgesNotAdmissible(
                f"edge into {e.child} followed by edge out of {f.parent}")
    P = edges[0].matrix
    for e in edges[1:]:
        P = mat_mul(P, e.matrix)
    return P


def _vec_mat(v, M):
    K = len(M[0])
    acc = [0] * K
    for j, x in enumerate(v):
        if x:
            row = M[j]
            for k in range(K):
                if row[k]:
                    acc[k] += x * row[k]
    return acc


def _flog(x) -> float:
    """log of a positive int or Fraction without overflowing float."""
    if isinstance(x, int):
        return math.log(x)
    return math.log(x.numerator) - math.log(x.denominator)


# ----------------------------------------------------------------------------
# certified spectral radius
# ----------------------------------------------------------------------------

def _sqrt_bounds(f: Fraction, lower: bool) -> Fraction:
    """Directed rational square root via integer isqrt."""
    num = f.numerator * _EXACT_SQRT_SCALE * _EXACT_SQRT_SCALE
    q, r = divmod(num, f.denominator)
    root = math.isqrt(q)
    if lower:
        return Fraction(root, _EXACT_SQRT_SCALE)
    if root * root < q or r:
        root += 1
    return Fraction(root, _EXACT_SQRT_SCALE)


def _iter_bounds(A, n, rel_tol, max_iter):
    """Collatz-Wielandt enclosure of sp(A) for A nonnegative with positive
    diagonal (so aperiodic on each irreducible piece); A is used as given."""
    v = [1] * n
    lo = Fraction(0)
    hi = None
    for _ in range(max_iter):
        w = _vec_mat_sq(v, A)
        ratios = [Fraction(w[i], v[i]) for i in range(n)]
        lo, hi = min(ratios), max(ratios)
        if hi - lo <= rel_tol * hi:
            return lo, hi
        v = _rescale_positive(w)
    return lo, hi


def _vec_mat_sq(v, A):
    n = len(A)
    acc = [0] * n
    for j, x in enumerate(v):
        if x:
            row = A[j]
            for k in range(n):
                if row[k]:
                    acc[k] += x * row[k]
    return acc


def _rescale_positive(w):
    """Round a positive rational vector to bounded integers; keeps positivity."""
    if all(isinstance(x, int) for x in w):
        top = max(w)
        if top.bit_length() > 512:
            shift = top.bit_length() - 256
            return [max(1, x >> shift) for x in w]
        return list(w)
    scale = 1
    for x in w:
        if isinstance(x, Fraction):
            scale = scale * x.denominator // math.gcd(scale, x.denominator)
    ints = [int(x * scale) for x in w]
    top = max(ints)
    if top.bit_length() > 512:
        shift = top.bit_length() - 256
        ints = [max(1, x >> shift) for x in ints]
    return ints


def _block_spectral_bounds(block, rel_tol):
    """Certified enclosure of sp(block) for an irreducible nonnegative block."""
    n = len(block)
    if n == 1:
        x = Fraction(block[0][0])
        return x, x
    # unit shift removes periodicity; sp(block + I) = sp(block) + 1
    shifted = tuple(tuple(block[i][j] + (1 if i == j else 0) for j in range(n))
                    for i in range(n))
    exponent = 0  # bounds computed for sp(shifted ** (2 ** exponent))
    A = shifted
    while True:
        lo, hi = _iter_bounds(A, n, rel_tol / 4, max_iter=300)
        for _ in range(exponent):
            lo = _sqrt_bounds(lo, lower=True)
            hi = _sqrt_bounds(hi, lower=False)
        lo, hi = lo - 1, hi - 1
        if hi <= 0 or hi - lo <= rel_tol * hi:
            return max(lo, Fraction(0)), max(hi, Fraction(0))
        if exponent >= 6:
            return max(lo, Fraction(0)), max(hi, Fraction(0))
        A = mat_mul(A, A)
        exponent += 1


def spectral_radius(matrix, rel_tol: Fraction = Fraction(1, 10 ** 10)):
    """Certified enclosure (lo, hi) of the largest eigenvalue modulus.

    The matrix must be square and nonnegative with no all-zero row. Reducible
    matrices are split into the strongly connected blocks of their support;
    the spectral radius is the largest block value.
    """
    n = len(matrix)
    for row in matrix:
        if len(row) != n:
            raise ValueError("matrix is not square")
        if not any(row):
            raise ZeroRow("matrix has an all-zero row")
        if any(v < 0 for v in row):
            raise ValueError("matrix has a negative entry")

    def outs(v):
        return [w + 1 for w in range(n) if matrix[v - 1][w]]

    comps = strongly_connected_components(n, outs)
    best_lo = Fraction(0)
    best_hi = Fraction(0)
    for comp in comps:
        idx = [v - 1 for v in comp]
        if len(idx) == 1 and not matrix[idx[0]][idx[0]]:
            continue  # transient vertex, contributes 0
        block = tuple(tuple(matrix[i][j] for j in idx) for i in idx)
        lo, hi = _block_spectral_bounds(block, rel_tol)
        best_lo = max(best_lo, lo)
        best_hi = max(best_hi, hi)
    lo_f = math.nextafter(float(best_lo), -math.inf)
    hi_f = math.nextafter(float(best_hi), math.inf)
    return lo_f, hi_f


# ----------------------------------------------------------------------------
# dimensions of periodic points
# ----------------------------------------------------------------------------

def log_rho(model: Model) -> float:
    return math.log(float(model.rho()))


def dim_at_zero(model: Model) -> float:
    """log p_0 / log rho: the dimension at the support's left endpoint,
    always the largest attainable value."""
    p0 = model.probabilities[0]
    return _flog_frac(p0) / log_rho(model)


def _flog_frac(q: Fraction) -> float:
    return math.log(q.numerator) - math.log(q.denominator)


def dim_from_per_step(model: Model, s: float) -> float:
    """Dimension of a periodic point whose per-step spectral value is s."""
    return (_flog_frac(model.probabilities[0]) + math.log(s)) / log_rho(model)


@dataclass(frozen=True)
class CycleDim:
    vertices: tuple[int, ...]     # closed: first == last
    length: int                   # number of steps (edges)
    sp_lo: float
    sp_hi: float
    per_step_lo: float
    per_step_hi: float
    dim_lo: float
    dim_hi: float

    @property
    def per_step(self) -> float:
        return (self.per_step_lo + self.per_step_hi) / 2

    @property
    def dimension(self) -> float:
        return (self.dim_lo + self.dim_hi) / 2


def periodic_dimension(model: Model, cycle_edges) -> CycleDim:
    """Dimension of the periodic point tracing the given closed edge path."""
    edges = list(cycle_edges)
    if not edges or edges[0].parent != edges[-1].child:
        raise NotACycle("edge path does not close up")
    P = product_along(edges)
    L = len(edges)
    return _cycle_dim_from_product(model, tuple(
        [edges[0].parent] + [e.child for e in edges]), L, P)


def _cycle_dim_from_product(model, vertices, L, P) -> CycleDim:
    sp_lo, sp_hi = spectral_radius(P)
    per_lo = sp_lo ** (1.0 / L)
    per_hi = sp_hi ** (1.0 / L)
    lr = log_rho(model)
    lp0 = _flog_frac(model.probabilities[0])
    dim_hi = (lp0 + math.log(per_lo)) / lr if per_lo > 0 else math.inf
    dim_lo = (lp0 + math.log(per_hi)) / lr
    return CycleDim(vertices=vertices, length=L, sp_lo=sp_lo, sp_hi=sp_hi,
                    per_step_lo=per_lo, per_step_hi=per_hi,
                    dim_lo=dim_lo, dim_hi=dim_hi)


# ----------------------------------------------------------------------------
# cycle enumeration inside a loop class
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class CycleEnumeration:
    cycles: tuple[CycleDim, ...]
    max_len: int
    truncated: bool
    per_step_min: float | None
    per_step_max: float | None
    dim_min: float | None
    dim_max: float | None
    min_cycle: tuple[int, ...] | None
    max_cycle: tuple[int, ...] | None


def enumerate_cycles(graph: TransitionGraph, members, max_len: int,
                     budget: int = 2_000_000) -> CycleEnumeration:
    """All closed edge walks of length <= max_len inside the class, counting
    parallel edges as distinct steps, deduplicated up to cyclic rotation."""
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    ms = sorted(set(members))
    mset = set(ms)
    out_internal = {}
    for v in ms:
        lst = []
        for e in graph.out_edges(v):
            if e.child in mset:
                lst.append((graph.edges.index(e), e))
        out_internal[v] = lst

    model = graph.model
    seen_keys = set()
    found = []  # (vertices, L, product)
    steps = 0
    truncated = False

    for s in ms:
        # walks from s through vertices >= s only, so s is the walk minimum
        stack = [(s, 0, (), None)]
        while stack:
            v, depth, epath, prod = stack.pop()
            if depth >= max_len:
                continue
            for eidx, e in out_internal[v]:
                if e.child < s:
                    continue
                steps += 1
                if steps > budget:
                    truncated = True
                    stack = []
                    break
                new_prod = e.matrix if prod is None else mat_mul(prod, e.matrix)
                new_path = epath + (eidx,)
                if e.child == s:
                    key = _canonical_rotation(new_path, graph, s)
                    if key not in seen_keys:
                        seen_keys.add(key)
                        verts = [s]
                        for ei in new_path:
                            verts.append(graph.edges[ei].child)
                        found.append((tuple(verts), depth + 1, new_prod))
                if depth + 1 < max_len:
                    stack.append((e.child, depth + 1, new_path, new_prod))
        if truncated:
            break

    dims = []
    for verts, L, P in found:
        dims.append(_cycle_dim_from_product(model, verts, L, P))
    if dims:
        lo = min(dims, key=lambda c: c.per_step_lo)
        hi = max(dims, key=lambda c: c.per_step_hi)
        per_min, per_max = lo.per_step_lo, hi.per_step_hi
        dim_min = min(c.dim_lo for c in dims)
        dim_max = max(c.dim_hi for c in dims)
        min_c, max_c = lo.vertices, hi.vertices
    else:
        per_min = per_max = dim_min = dim_max = None
        min_c = max_c = None
    return CycleEnumeration(cycles=tuple(dims), max_len=max_len,
                            truncated=truncated,
                            per_step_min=per_min, per_step_max=per_max,
                            dim_min=dim_min, dim_max=dim_max,
                            min_cycle=min_c, max_cycle=max_c)


def _canonical_rotation(edge_path, graph, start):
    """Smallest rotation of the edge-index tuple among rotations anchored at
    returns to the start vertex."""
    # positions where the walk sits at `start`: after edges whose child == start
    anchors = [0]
    for i, eidx in enumerate(edge_path[:-1]):
        if graph.edges[eidx].child == start:
            anchors.append(i + 1)
    best = None
    for a in anchors:
        rot = edge_path[a:] + edge_path[:a]
        if best is None or rot < best:
            best = rot
    return best


# ----------------------------------------------------------------------------
# pseudo-norms and certified outer bounds
# ----------------------------------------------------------------------------

class NormKind(Enum):
    MIN_ROW = "MIN_ROW"
    MAX_ROW = "MAX_ROW"
    MIN_COL = "MIN_COL"
    MAX_COL = "MAX_COL"
    SUBSET_MIN = "SUBSET_MIN"
    TOTAL = "TOTAL"


def pseudo_norm(matrix, kind: NormKind, subset=None):
    """Row/column sum functionals used for product bounds; subset indices are
    1-based positions into both the row and column index sets."""
    if kind is NormKind.MIN_ROW:
        return min(sum(row) for row in matrix)
    if kind is NormKind.MAX_ROW:
        return max(sum(row) for row in matrix)
    if kind is NormKind.MIN_COL:
        return min(sum(row[k] for row in matrix) for k in range(len(matrix[0])))
    if kind is NormKind.MAX_COL:
        return max(sum(row[k] for row in matrix) for k in range(len(matrix[0])))
    if kind is NormKind.TOTAL:
        return sum(sum(row) for row in matrix)
    if kind is NormKind.SUBSET_MIN:
        if not subset:
            raise SubsetInvalidForClass("subset required for SUBSET_MIN")
        J, K = len(matrix), len(matrix[0])
        idx = sorted(set(subset))
        if idx[0] < 1 or idx[-1] > min(J, K):
            raise SubsetInvalidForClass(
                f"subset {tuple(subset)} out of range for a {J}x{K} matrix")
        return min(sum(matrix[j - 1][k - 1] for j in idx) for k in idx)
    raise ValueError(kind)


@dataclass(frozen=True)
class NormBounds:
    depth: int
    subset: tuple[int, ...] | None
    min_norm: Fraction | int          # best lower functional over all products
    max_norm: Fraction | int          # best upper functional over all products
    per_step_lo: float
    per_step_hi: float
    dim_lo: float
    dim_hi: float
    path_count: int
    functionals: dict | None = None   # per-functional aggregates, for inspection


def _mat_vec(M, v):
    out = []
    for row in M:
        acc = 0
        for k, x in enumerate(v):
            if x and row[k]:
                acc += row[k] * x
        out.append(acc)
    return out


def _aggregate_products(starts, step_edges, depth, forward, apply_edge,
                        finish, budget_state):
    """DFS over all internal paths of ``depth`` edges, folding a carried vector."""
    for s, init in starts:
        stack = [(s, 0, init)]
        while stack:
            v, d, carried = stack.pop()
            for e in step_edges(v):
                budget_state[0] += 1
                if budget_state[0] > budget_state[1]:
                    raise PathExplosion(budget_state[1])
                nxt = apply_edge(carried, e)
                if d + 1 == depth:
                    finish(nxt)
                else:
                    stack.append((e.child if forward else e.parent,
                                  d + 1, nxt))


def norm_bounds(graph: TransitionGraph, members, depth: int, subset=None,
                path_budget: int = 20_000_000) -> NormBounds:
    """Confine the class's per-step spectral range with exact pseudo-norms of
    every admissible product of ``depth`` primitive matrices.

    Because row-sum and column-sum functionals are sound simultaneously
    (min flavors are supermultiplicative lower tools, max flavors
    submultiplicative upper tools), both are evaluated and the tighter side
    kept: the lower bound is the largest of min-column, min-row, and the
    subset-restricted variants; the upper bound is the smaller of max-column
    and max-row. ``subset`` holds 1-based indices valid for every member, or
    a list of such index tuples to try in the same sweep.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    ms = sorted(set(members))
    mset = set(ms)
    min_neigh = min(len(graph.cv(v).neighbours) for v in ms)
    subsets: list[tuple[int, ...]] = []
    if subset:
        raw = [subset] if subset and isinstance(subset[0], int) else list(subset)
        for s in raw:
            idx = tuple(sorted(set(int(c) for c in s)))
            if idx[0] < 1 or idx[-1] > min_neigh:
                raise SubsetInvalidForClass(
                    f"subset {idx} invalid: some member has only "
                    f"{min_neigh} neighbours")
            if idx not in subsets:
                subsets.append(idx)

    out_internal = {v: [e for e in graph.out_edges(v) if e.child in mset]
                    for v in ms}
    in_internal = {v: [] for v in ms}
    for v in ms:
        for e in out_internal[v]:
            in_internal[e.child].append(e)
    if all(not es for es in out_internal.values()):
        raise ValueError("class has no internal edges")

    budget_state = [0, path_budget]
    agg = {"min_col": None, "max_col": None, "min_row": None, "max_row": None,
           "sub_col": [None] * len(subsets), "sub_row": [None] * len(subsets),
           "paths": 0}

    def indicator(v):
        n = len(graph.cv(v).neighbours)
        full = tuple([1] * n)
        subs = tuple(tuple(1 if (j + 1) in idx else 0 for j in range(n))
                     for idx in subsets)
        return (full,) + subs

    def fold(apply_one):
        def apply_edge(carried, e):
            return tuple(apply_one(vec, e) for vec in carried)
        return apply_edge

    # forward pass: carry (1^T P, 1_C^T P ...); column-sum functionals
    def fwd_finish(carried):
        c = carried[0]
        agg["paths"] += 1
        top, bot = max(c), min(c)
        if agg["max_col"] is None or top > agg["max_col"]:
            agg["max_col"] = top
        if agg["min_col"] is None or bot < agg["min_col"]:
            agg["min_col"] = bot
        for i, idx in enumerate(subsets):
            val = min(carried[1 + i][k - 1] for k in idx)
            if agg["sub_col"][i] is None or val < agg["sub_col"][i]:
                agg["sub_col"][i] = val

    _aggregate_products([(v, indicator(v)) for v in ms],
                        lambda v: out_internal[v], depth, True,
                        fold(lambda vec, e: tuple(_vec_mat(vec, e.matrix))),
                        fwd_finish, budget_state)

    # backward pass: carry (P 1, P 1_C ...); row-sum functionals
    def bwd_finish(carried):
        c = carried[0]
        top, bot = max(c), min(c)
        if agg["max_row"] is None or top > agg["max_row"]:
            agg["max_row"] = top
        if agg["min_row"] is None or bot < agg["min_row"]:
            agg["min_row"] = bot
        for i, idx in enumerate(subsets):
            val = min(carried[1 + i][j - 1] for j in idx)
            if agg["sub_row"][i] is None or val < agg["sub_row"][i]:
                agg["sub_row"][i] = val

    _aggregate_products([(v, indicator(v)) for v in ms],
                        lambda v: in_internal[v], depth, False,
                        fold(lambda vec, e: tuple(_mat_vec(e.matrix, vec))),
                        bwd_finish, budget_state)

    lows = [x for x in [agg["min_col"], agg["min_row"]] +
            agg["sub_col"] + agg["sub_row"] if x is not None]
    lo_best = max(lows)
    hi_best = min(agg["max_col"], agg["max_row"])
    g_lo = math.exp(_flog(lo_best) / depth) if lo_best > 0 else 0.0
    g_hi = math.exp(_flog(hi_best) / depth)
    lr = log_rho(graph.model)
    lp0 = _flog_frac(graph.model.probabilities[0])
    dim_lo = (lp0 + math.log(g_hi)) / lr
    dim_hi = (lp0 + math.log(g_lo)) / lr if g_lo > 0 else math.inf
    functionals = {
        "min_col": agg["min_col"], "max_col": agg["max_col"],
        "min_row": agg["min_row"], "max_row": agg["max_row"],
        "sub_col": dict(zip(subsets, agg["sub_col"])),
        "sub_row": dict(zip(subsets, agg["sub_row"])),
    }
    return NormBounds(depth=depth, subset=subsets[0] if subsets else None,
                      min_norm=lo_best, max_norm=hi_best,
                      per_step_lo=g_lo, per_step_hi=g_hi,
                      dim_lo=dim_lo, dim_hi=dim_hi, path_count=agg["paths"],
                      functionals=functionals)


# ----------------------------------------------------------------------------
# report assembly
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class ClassDimSet:
    loop_class: LoopClass
    spectral_inner: tuple[float, float] | None
    spectral_outer: tuple[float, float] | None
    dim_inner: tuple[float, float] | None
    dim_outer: tuple[float, float] | None
    exact_point: float | None
    exact_point_per_step: float | None
    certified_interval: bool
    min_cycle: tuple[int, ...] | None
    max_cycle: tuple[int, ...] | None
    cycle_len: int
    bound_len: int
    cycles_truncated: bool = False

    @property
    def members(self):
        return self.loop_class.members


ISOLATED = "ISOLATED"
UNDECIDED = "UNDECIDED"
NOT_ISOLATED = "NOT_ISOLATED"


@dataclass(frozen=True)
class IsolatedPoint:
    value: float
    status: str
    classes: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class DimensionReport:
    model: Model
    cv_count: int
    classes: tuple[ClassDimSet, ...]
    dim_zero: float
    isolated: tuple[IsolatedPoint, ...]
    global_inner: tuple[tuple[float, float], ...]
    global_outer: tuple[tuple[float, float], ...]

    @property
    def essential(self) -> ClassDimSet:
        for c in self.classes:
            if c.loop_class.is_essential:
                return c
        raise LookupError("no essential class in report")

    @property
    def essential_size(self) -> int:
        return len(self.essential.members)

    def isolated_values(self, status=ISOLATED):
        return [p.value for p in self.isolated if p.status == status]


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("FINITYPE_THREADS", "1")))
    except ValueError:
        return 1


def _merge_intervals(intervals, tol=1e-12):
    ivs = sorted((lo, hi) for lo, hi in intervals)
    out = []
    for lo, hi in ivs:
        if out and lo <= out[-1][1] + tol:
            out[-1] = (out[-1][0], max(out[-1][1], hi))
        else:
            out.append((lo, hi))
    return tuple(out)


def _simple_loop_cycle(graph: TransitionGraph, members):
    """The unique internal cycle of a simple-loop class, as an edge list."""
    ms = set(members)
    start = min(members)
    edges = []
    v = start
    while True:
        internal = [e for e in graph.out_edges(v) if e.child in ms]
        edges.append(internal[0])
        v = internal[0].child
        if v == start:
            return edges


def analyze_class(graph: TransitionGraph, lc: LoopClass, cycle_len: int,
                  bound_len: int, subset, cycle_budget: int,
                  path_budget: int) -> ClassDimSet:
    model = graph.model
    members = lc.members
    min_neigh = min(len(graph.cv(v).neighbours) for v in members)
    use_subset = None
    if subset and subset != "auto" and max(subset) <= min_neigh:
        use_subset = tuple(subset)
    elif subset:
        # automatic choice (also the fallback when an explicit subset is
        # invalid for this class): the full index set plus every contiguous
        # window of width two and three; weak outer columns often force the
        # full-set bound to one while some interior window does not
        cands = [tuple(range(1, min_neigh + 1))]
        for width in (3, 2):
            if min_neigh >= width:
                cands.extend(tuple(range(s, s + width))
                             for s in range(1, min_neigh - width + 2))
        use_subset = cands

    enum = enumerate_cycles(graph, members, cycle_len, budget=cycle_budget)

    bl = bound_len
    nb = None
    while bl >= 1:
        try:
            nb = norm_bounds(graph, members, bl, subset=use_subset,
                             path_budget=path_budget)
            break
        except PathExplosion:
            bl //= 2
    exact = exact_per = None
    if lc.is_simple_loop:
        cd = periodic_dimension(model, _simple_loop_cycle(graph, members))
        exact = cd.dimension
        exact_per = cd.per_step
    return ClassDimSet(
        loop_class=lc,
        spectral_inner=(enum.per_step_min, enum.per_step_max)
        if enum.per_step_min is not None else None,
        spectral_outer=(nb.per_step_lo, nb.per_step_hi) if nb else None,
        dim_inner=(enum.dim_min, enum.dim_max)
        if enum.dim_min is not None else None,
        dim_outer=(nb.dim_lo, nb.dim_hi) if nb else None,
        exact_point=exact, exact_point_per_step=exact_per,
        certified_interval=lc.positive,
        min_cycle=enum.min_cycle, max_cycle=enum.max_cycle,
        cycle_len=cycle_len, bound_len=bl if nb else 0,
        cycles_truncated=enum.truncated)


def assemble_report(model: Model, graph: TransitionGraph, classes=None,
                    cycle_len: int = 10, bound_len: int = 8, subset="auto",
                    cycle_budget: int = 2_000_000,
                    path_budget: int = 20_000_000,
                    positivity_state_cap: int = 500_000) -> DimensionReport:
    """Full per-class and global dimension analysis of a closed graph."""
    if classes is None:
        classes = classify_all(graph, state_cap=positivity_state_cap)
    dz = dim_at_zero(model)

    def work(lc):
        return analyze_class(graph, lc, cycle_len, bound_len, subset,
                             cycle_budget, path_budget)

    nworkers = _workers()
    if nworkers > 1 and len(classes) > 1:
        with ThreadPoolExecutor(max_workers=nworkers) as pool:
            sets = list(pool.map(work, classes))
    else:
        sets = [work(lc) for lc in classes]

    tol = 1e-9
    # Exact point values (simple-loop classes) grouped by value; a point is
    # isolated when it avoids the outer interval of every class that does not
    # itself sit exactly at that point, undecided when only inner intervals
    # avoid it. Classes sharing the same point never block each other.
    points = {}
    for cs in sets:
        if cs.exact_point is not None:
            points.setdefault(round(cs.exact_point, 12), []).append(cs)
    iso = []
    for val, carriers in sorted(points.items()):
        inside_outer = inside_inner = False
        for cs in sets:
            if cs.exact_point is not None:
                if abs(cs.exact_point - val) <= tol:
                    continue  # same point value, cannot block isolation
                o = i = (cs.exact_point, cs.exact_point)
            else:
                o, i = cs.dim_outer, cs.dim_inner
            if o and o[0] - tol <= val <= o[1] + tol:
                inside_outer = True
            if i and i[0] - tol <= val <= i[1] + tol:
                inside_inner = True
        status = NOT_ISOLATED if inside_inner else (
            UNDECIDED if inside_outer else ISOLATED)
        iso.append(IsolatedPoint(
            value=val, status=status,
            classes=tuple(c.members for c in carriers)))

    inner_ivs = []
    outer_ivs = []
    for cs in sets:
        if cs.exact_point is not None:
            inner_ivs.append((cs.exact_point, cs.exact_point))
            outer_ivs.append((cs.exact_point, cs.exact_point))
            continue
        if cs.dim_inner:
            inner_ivs.append(cs.dim_inner)
        if cs.dim_outer:
            outer_ivs.append(cs.dim_outer)

    return DimensionReport(
        model=model, cv_count=len(graph), classes=tuple(sets), dim_zero=dz,
        isolated=tuple(iso),
        global_inner=_merge_intervals(inner_ivs),
        global_outer=_merge_intervals(outer_ivs))
