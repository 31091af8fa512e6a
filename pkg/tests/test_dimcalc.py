"""Spectral radii, cycle dimensions, pseudo-norm bounds: frozen exact values."""

from fractions import Fraction

import numpy as np
import pytest

from finitype.dimcalc import (
    NormKind,
    assemble_report,
    dim_at_zero,
    enumerate_cycles,
    mat_mul,
    norm_bounds,
    periodic_dimension,
    product_along,
    pseudo_norm,
    spectral_radius,
)
from finitype.errors import (
    EdgesNotAdmissible,
    NotACycle,
    SubsetInvalidForClass,
    ZeroRow,
)
from finitype.loopclasses import essential_class
from finitype.netgraph import build_graph


@pytest.fixture(scope="module")
def golden_graph(golden_model):
    return build_graph(golden_model)


@pytest.fixture(scope="module")
def cantor5_graph(cantor5_binomial_model):
    return build_graph(cantor5_binomial_model)


@pytest.fixture(scope="module")
def sixmap_graph(cantor5_uniform_model):
    return build_graph(cantor5_uniform_model)


def _numpy_sp(matrix):
    a = np.array([[float(x) for x in row] for row in matrix])
    return max(abs(np.linalg.eigvals(a)))


# ------------------------------------------------------------ spectral radius

def test_spectral_radius_all_ones():
    lo, hi = spectral_radius(((1, 1), (1, 1)))
    assert lo <= 2 <= hi and hi - lo < 1e-9


def test_spectral_radius_triangular():
    lo, hi = spectral_radius(((1, 0), (1, 1)))
    assert lo <= 1 <= hi and hi - lo < 1e-9


def test_spectral_radius_worked_three_by_three():
    # characteristic polynomial (1-x)((1-x)^2 - 1): roots 0, 1, 2
    m = ((1, 0, 0), (1, 1, 1), (0, 1, 1))
    lo, hi = spectral_radius(m)
    assert lo <= 2 <= hi and hi - lo < 1e-9
    assert abs(_numpy_sp(m) - 2) < 1e-12


def test_spectral_radius_periodic_matrix():
    # antidiagonal: eigenvalues +-sqrt(2); plain power quotients oscillate
    lo, hi = spectral_radius(((0, 2), (1, 0)))
    s = 2 ** 0.5
    assert lo <= s <= hi and hi - lo < 1e-9


def test_spectral_radius_reducible():
    # block upper-triangular: radius comes from an inaccessible block
    m = ((3, 1), (0, 2))
    lo, hi = spectral_radius(m)
    assert lo <= 3 <= hi and hi - lo < 1e-9


def test_spectral_radius_matches_numpy_randomized():
    rng = np.random.default_rng(7)
    for _ in range(40):
        n = int(rng.integers(1, 6))
        m = rng.integers(0, 4, size=(n, n))
        for i in range(n):
            if not m[i].any():
                m[i][int(rng.integers(0, n))] = 1
        mt = tuple(tuple(int(x) for x in row) for row in m)
        lo, hi = spectral_radius(mt)
        ref = _numpy_sp(mt)
        assert lo - 1e-8 <= ref <= hi + 1e-8
        assert hi - lo <= 1e-9 * max(hi, 1.0)


def test_spectral_radius_zero_row():
    with pytest.raises(ZeroRow):
        spectral_radius(((0, 0), (1, 1)))


def test_spectral_radius_fractional_entries():
    m = ((Fraction(1, 2), Fraction(3, 2)), (1, 1))
    lo, hi = spectral_radius(m)
    assert abs((lo + hi) / 2 - _numpy_sp(m)) < 1e-9


# ------------------------------------------------------- periodic dimensions

def _edges_between(graph, path):
    """All edge choices along a vertex path, as one list per step."""
    out = []
    for a, b in zip(path, path[1:]):
        out.append([e for e in graph.out_edges(a) if e.child == b])
    return out


def _first_cycle(graph, path):
    return [choices[0] for choices in _edges_between(graph, path)]


def test_golden_dim_at_zero(golden_model, golden_graph):
    assert abs(dim_at_zero(golden_model) - 1.4404200904) < 1e-9
    cd = periodic_dimension(golden_model, _first_cycle(golden_graph, (2, 2)))
    assert abs(cd.dimension - 1.440420090) < 1e-8
    assert cd.length == 1


def test_golden_essential_unit_cycle(golden_model, golden_graph):
    # 3 -> 5 -> 3 with the lower-triangular return edge: radius one,
    # dimension equal to the endpoint dimension
    e35 = _edges_between(golden_graph, (3, 5))[0][0]
    e53 = [e for e in golden_graph.out_edges(5) if e.child == 3]
    cd = periodic_dimension(golden_model, [e35, e53[0]])
    assert abs(cd.dimension - 1.440420090) < 1e-8
    assert cd.sp_hi < 1 + 1e-9


def test_golden_min_dimension_cycle(golden_model, golden_graph):
    # 3 -> 5 -> 3 -> 5 -> 3 mixing both return edges: radius phi^2
    e35 = _edges_between(golden_graph, (3, 5))[0][0]
    a, b = [e for e in golden_graph.out_edges(5) if e.child == 3]
    cd = periodic_dimension(golden_model, [e35, a, e35, b])
    assert abs(cd.dimension - 0.9404200909) < 1e-8
    assert abs(cd.per_step - 1.272019649) < 1e-8


def test_periodic_dimension_rejects_open_path(golden_model, golden_graph):
    e35 = _edges_between(golden_graph, (3, 5))[0][0]
    with pytest.raises(NotACycle):
        periodic_dimension(golden_model, [e35])


def test_periodic_dimension_rejects_disconnected_edges(golden_model,
                                                       golden_graph):
    e12 = _edges_between(golden_graph, (1, 2))[0][0]
    e43 = _edges_between(golden_graph, (4, 3))[0][0]
    with pytest.raises(EdgesNotAdmissible):
        product_along([e12, e43])


# ----------------------------------------------------------- cycle search

def test_golden_cycle_enumeration(golden_model, golden_graph):
    ess = essential_class(golden_graph)
    enum = enumerate_cycles(golden_graph, ess.members, max_len=4)
    assert not enum.truncated
    assert abs(enum.per_step_min - 1.0) < 1e-9
    assert abs(enum.per_step_max - 1.272019649) < 1e-8
    assert abs(enum.dim_min - 0.9404200909) < 1e-8
    assert abs(enum.dim_max - 1.440420090) < 1e-8


def test_cantor5_cycle_enumeration(cantor5_binomial_model, cantor5_graph):
    ess = essential_class(cantor5_graph)
    assert ess.members == (4, 5)
    enum = enumerate_cycles(cantor5_graph, ess.members, max_len=3)
    assert abs(enum.per_step_min - 10.34846923) < 1e-7
    assert abs(enum.per_step_max - 10.99217650) < 1e-7
    # extremes arise from two-step self-loop walks mixing the parallel edges
    assert enum.min_cycle == (5, 5, 5)
    assert enum.max_cycle == (4, 4, 4)


def test_cycle_rotation_dedup(golden_graph):
    ess = essential_class(golden_graph)
    enum = enumerate_cycles(golden_graph, ess.members, max_len=3)
    keys = sorted(c.vertices for c in enum.cycles)
    # the two (3,5,3) walks differ in which parallel return edge they take;
    # rotations such as (5,6,3,5) never appear as separate cycles
    assert keys == [(3, 5, 3), (3, 5, 3), (3, 5, 6, 3)]
    assert {v[0] for v in keys} == {3}


def test_self_loop_cycle(sixmap_graph):
    enum = enumerate_cycles(sixmap_graph, (2,), max_len=5)
    assert all(abs(c.per_step_lo - 1) < 1e-9 for c in enum.cycles)


# ------------------------------------------------------------- pseudo-norms

def test_pseudo_norm_examples():
    m = ((1, 0), (1, 1))
    assert pseudo_norm(m, NormKind.MIN_ROW) == 1
    assert pseudo_norm(m, NormKind.MAX_ROW) == 2
    assert pseudo_norm(m, NormKind.MIN_COL) == 1
    assert pseudo_norm(m, NormKind.MAX_COL) == 2
    assert pseudo_norm(m, NormKind.SUBSET_MIN, subset=(1, 2)) == 1
    assert pseudo_norm(m, NormKind.TOTAL) == 3
    ident = ((1, 0), (0, 1))
    assert pseudo_norm(ident, NormKind.MIN_ROW) == 1
    assert pseudo_norm(ident, NormKind.MAX_ROW) == 1
    assert pseudo_norm(ident, NormKind.SUBSET_MIN, subset=(1, 2)) == 1
    all2 = ((1, 1), (1, 1))
    assert pseudo_norm(all2, NormKind.MIN_ROW) == 2
    assert pseudo_norm(all2, NormKind.MAX_ROW) == 2


def test_pseudo_norm_subset_validation():
    with pytest.raises(SubsetInvalidForClass):
        pseudo_norm(((1, 0), (1, 1)), NormKind.SUBSET_MIN, subset=(3,))


def test_pseudo_norm_supermultiplicative_on_squares():
    m = ((1, 0), (1, 1))
    sq = mat_mul(m, m)
    for kind in (NormKind.MIN_ROW, NormKind.MIN_COL):
        assert pseudo_norm(sq, kind) >= pseudo_norm(m, kind) ** 2
    assert pseudo_norm(sq, NormKind.MAX_COL) <= pseudo_norm(m, NormKind.MAX_COL) ** 2


# ------------------------------------------------------------- norm bounds

def test_cantor5_norm_bounds_depth5(cantor5_binomial_model, cantor5_graph):
    ess = essential_class(cantor5_graph)
    nb = norm_bounds(cantor5_graph, ess.members, depth=5)
    assert abs(nb.per_step_lo - 10.29826851) < 1e-7
    assert abs(nb.per_step_hi - 10.99526948) < 1e-7
    assert abs(nb.dim_lo - 0.972381959) < 1e-8
    assert abs(nb.dim_hi - 1.031992942) < 1e-8


def test_golden_norm_bounds_depth10(golden_model, golden_graph):
    ess = essential_class(golden_graph)
    nb = norm_bounds(golden_graph, ess.members, depth=10)
    assert abs(nb.per_step_lo - 1.0) < 1e-12
    assert abs(nb.per_step_hi - 1.319507911) < 1e-8
    assert abs(nb.dim_lo - 0.8642520535) < 1e-8
    assert abs(nb.dim_hi - 1.440420090) < 1e-8


def test_sixmap_norm_bounds_exact_two(sixmap_graph):
    ess = essential_class(sixmap_graph)
    nb = norm_bounds(sixmap_graph, ess.members, depth=5)
    assert nb.min_norm == 32 and nb.max_norm == 32  # exactly 2 per step
    assert abs(nb.per_step_lo - 2) < 1e-12 and abs(nb.per_step_hi - 2) < 1e-12


def test_single_edge_class_degenerate_outer(golden_model, golden_graph):
    nb = norm_bounds(golden_graph, (2,), depth=6)
    assert nb.min_norm == 1 and nb.max_norm == 1
    assert abs(nb.dim_lo - dim_at_zero(golden_model)) < 1e-9
    assert abs(nb.dim_hi - dim_at_zero(golden_model)) < 1e-9


def test_norm_bounds_monotone_width(golden_graph):
    ess = essential_class(golden_graph)
    widths = []
    for depth in (2, 4, 8):
        nb = norm_bounds(golden_graph, ess.members, depth=depth)
        widths.append(nb.dim_hi - nb.dim_lo)
    assert widths[0] >= widths[1] - 1e-12 >= widths[2] - 1e-12


def test_norm_bounds_subset_validation(golden_graph):
    ess = essential_class(golden_graph)
    with pytest.raises(SubsetInvalidForClass):
        norm_bounds(golden_graph, ess.members, depth=3, subset=(2,))
        # vertex 6 has a single neighbour, so index 2 is invalid


def test_norm_bounds_flavors_recorded(plastic_bc_model):
    # the two flavors genuinely differ here; the combined bound keeps the
    # tighter row-sum value while the functionals expose both
    g = build_graph(plastic_bc_model)
    ess = essential_class(g)
    nb = norm_bounds(g, ess.members, depth=10)
    assert nb.functionals["max_row"] == 40
    assert nb.functionals["max_col"] == 81
    assert nb.max_norm == 40
    assert abs(nb.per_step_hi - 1.446125550) < 1e-8
    nb15 = norm_bounds(g, ess.members, depth=15, subset=(2, 3, 4))
    assert nb15.functionals["sub_row"][(2, 3, 4)] == 5
    assert abs(nb15.per_step_lo - 1.113263577) < 1e-8
    assert abs(nb15.dim_hi - 1.532658865) < 1e-8
    assert abs(nb.dim_lo - 0.8483019061) < 1e-8


# ---------------------------------------------------------------- reports

def test_golden_report(golden_model, golden_graph):
    rep = assemble_report(golden_model, golden_graph, cycle_len=4, bound_len=10)
    assert rep.cv_count == 6
    assert rep.essential_size == 3
    assert abs(rep.dim_zero - 1.440420090) < 1e-8
    ess = rep.essential
    assert ess.certified_interval
    assert ess.dim_inner[0] <= 0.940420091 and ess.dim_inner[1] >= 1.440420089
    assert ess.dim_outer[0] >= 0.864252053 - 1e-8
    assert ess.dim_outer[1] <= 1.440420091
    # endpoint dimension touches the essential interval: nothing isolated
    assert rep.isolated_values() == []
    assert len(rep.global_outer) == 1


def test_sixmap_report_two_points(cantor5_uniform_model, sixmap_graph):
    rep = assemble_report(cantor5_uniform_model, sixmap_graph,
                          cycle_len=5, bound_len=5)
    ess = rep.essential
    assert ess.members == (4, 5)
    assert abs(ess.dim_inner[0] - 1.0) < 1e-9
    assert abs(ess.dim_inner[1] - 1.0) < 1e-9
    vals = rep.isolated_values()
    assert len(vals) == 1
    assert abs(vals[0] - 1.630929753) < 1e-8
    assert abs(rep.dim_zero - 1.630929753) < 1e-8


def test_inner_within_outer(golden_model, golden_graph, cantor5_binomial_model,
                            cantor5_graph):
    for model, graph in ((golden_model, golden_graph),
                         (cantor5_binomial_model, cantor5_graph)):
        rep = assemble_report(model, graph, cycle_len=4, bound_len=4)
        for cs in rep.classes:
            if cs.dim_inner and cs.dim_outer:
                assert cs.dim_inner[0] >= cs.dim_outer[0] - 1e-9
                assert cs.dim_inner[1] <= cs.dim_outer[1] + 1e-9
            assert (cs.dim_outer is None
                    or cs.dim_outer[1] <= rep.dim_zero + 1e-9)
