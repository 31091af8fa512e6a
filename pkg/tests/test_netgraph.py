"""Graph construction against hand-checked exact structure."""

from fractions import Fraction

import pytest

from finitype.errors import CapExceeded
from finitype.exactfield import make_field
from finitype.ifsmodel import Ifs, cantor_ifs, uniform_probabilities, validate
from finitype.netgraph import build_graph, children, export_dot

from conftest import golden_ifs


def _cv_tuple(graph, vid, digits=10):
    cv = graph.cv(vid)
    return (cv.length.to_decimal(digits),
            tuple(n.to_decimal(digits) for n in cv.neighbours))


def _edge_map(graph):
    out = {}
    for e in graph.edges:
        out.setdefault((e.parent, e.child), []).append(
            (e.matrix, e.multiplicity))
    return out


def test_golden_children_of_root(golden_model):
    g = build_graph(golden_model)
    root = g.cv(1)
    kids = children(root, golden_model)
    assert len(kids) == 3
    (cv1, m1, t1), (cv2, m2, t2), (cv3, m3, t3) = kids
    rho = golden_model.rho()
    one = golden_model.field.one
    assert cv1.length == rho and cv1.neighbours == (golden_model.field.zero,)
    assert m1 == ((1,),)
    assert cv2.length == one - rho
    assert cv2.neighbours == (golden_model.field.zero, rho)
    assert m2 == ((1, 1),)
    assert cv3.length == rho and cv3.neighbours == (one - rho,)
    assert m3 == ((1,),)
    assert t1.is_zero() and t2 == one - rho and t3 == rho


def test_golden_graph_structure(golden_model):
    g = build_graph(golden_model)
    assert len(g) == 6
    rho = "0.6180339887"
    one_minus = "0.3819660113"
    two_rho_minus_1 = "0.2360679775"
    assert _cv_tuple(g, 1) == ("1.0000000000", ("0.0000000000",))
    assert _cv_tuple(g, 2) == (rho, ("0.0000000000",))
    assert _cv_tuple(g, 3) == (one_minus, ("0.0000000000", rho))
    assert _cv_tuple(g, 4) == (rho, (one_minus,))
    assert _cv_tuple(g, 5) == (rho, ("0.0000000000", one_minus))
    assert _cv_tuple(g, 6) == (two_rho_minus_1, (one_minus,))


def test_golden_all_primitive_matrices(golden_model):
    g = build_graph(golden_model)
    em = _edge_map(g)
    assert em[(1, 2)] == [(((1,),), 1)]
    assert em[(1, 3)] == [(((1, 1),), 1)]
    assert em[(1, 4)] == [(((1,),), 1)]
    assert em[(2, 2)] == [(((1,),), 1)]
    assert em[(2, 3)] == [(((1, 1),), 1)]
    assert em[(3, 5)] == [(((1, 0), (0, 1)), 1)]
    assert em[(4, 3)] == [(((1, 1),), 1)]
    assert em[(4, 4)] == [(((1,),), 1)]
    # both orientations of the parallel pair, kept as distinct edges
    assert em[(5, 3)] == [(((1, 0), (1, 1)), 1), (((1, 1), (0, 1)), 1)]
    assert em[(5, 6)] == [(((1,), (1,)), 1)]
    assert em[(6, 3)] == [(((1, 1),), 1)]
    assert sum(e.multiplicity for e in g.edges) == 12


def test_worked_sixmap_example():
    # rho = 1/3, translations 2j/15, normalized weights (1, 2, 3, 3, 2, 1)
    f = make_field([-1, 3], (Fraction(1, 4), Fraction(1, 2)))
    probs = (Fraction(1, 12), Fraction(1, 6), Fraction(1, 4),
             Fraction(1, 4), Fraction(1, 6), Fraction(1, 12))
    ifs = Ifs(field=f,
              translations=tuple(f.rational(Fraction(2 * j, 15)) for j in range(6)),
              probabilities=probs)
    model = validate(ifs)
    g = build_graph(model)
    assert len(g) == 7
    em = _edge_map(g)
    # child (2/5, (0, 2/5)) of the root arrives with matrix [p_1 1] normalized
    assert (((2, 1),), 1) in em[(1, 3)]
    # four distinct single-row matrices into vertex 4 stay distinct edges
    mats = [m for (m, _) in em[(1, 4)]]
    assert sorted(mats) == sorted([((3, 2, 1),), ((3, 3, 2),),
                                   ((2, 3, 3),), ((1, 2, 3),)])


def test_sixmap_uniform_counts(cantor5_uniform_model):
    g = build_graph(cantor5_uniform_model)
    assert len(g) == 7
    assert _cv_tuple(g, 4, 6) == ("0.200000", ("0.000000", "0.400000", "0.800000"))
    assert _cv_tuple(g, 5, 6) == ("0.200000", ("0.200000", "0.600000"))
    assert _cv_tuple(g, 7, 6) == ("0.400000", ("0.600000",))
    # uniform weights merge the four identical root->4 edges into one
    em = _edge_map(g)
    assert em[(1, 4)] == [(((1, 1, 1),), 4)]


def test_children_partition_parent(golden_model, cantor5_binomial_model,
                                   golden_square_model):
    for model in (golden_model, cantor5_binomial_model, golden_square_model):
        g = build_graph(model)
        rho = model.rho()
        for vid in range(1, len(g) + 1):
            parent = g.cv(vid)
            kids = children(parent, model)
            total = model.field.zero
            cursor = model.field.zero
            for cv, _, t in kids:
                assert t == cursor  # children tile the parent, no gaps
                cursor = cursor + cv.length * rho
                total = total + cv.length * rho
            assert (total - parent.length).sign() == 0


def test_matrix_row_column_structure(golden_square_model):
    g = build_graph(golden_square_model)
    for e in g.edges:
        for row in e.matrix:
            assert any(row), "zero row"
            assert all(v >= 1 for v in row if v)
        for k in range(len(e.matrix[0])):
            assert any(row[k] for row in e.matrix), "zero column"


def test_determinism(golden_square_model):
    g1 = build_graph(golden_square_model)
    g2 = build_graph(golden_square_model)
    assert [cv.key() for cv in g1.cvs] == [cv.key() for cv in g2.cvs]
    assert [(e.parent, e.child, e.matrix, e.multiplicity) for e in g1.edges] == \
           [(e.parent, e.child, e.matrix, e.multiplicity) for e in g2.edges]


def test_cap_exceeded():
    model = validate(golden_ifs())
    with pytest.raises(CapExceeded):
        build_graph(model, cap_cvs=3)


def test_golden_square_counts(golden_square_model):
    g = build_graph(golden_square_model)
    assert len(g) == 40


def test_export_dot(golden_model):
    g = build_graph(golden_model)
    dot = export_dot(g)
    assert dot.startswith("digraph")
    assert "1 -> 2;" in dot
    assert dot.count("5 -> 3;") == 2  # parallel edges repeated
    assert "2 -> 2;" in dot


def test_export_dot_single_map_degenerate():
    # two maps shrink to one vertex chain is impossible; use a trivial check:
    # a valid graph with one self-loop style vertex set still renders
    model = validate(golden_ifs())
    g = build_graph(model)
    dot = export_dot(g, classes=None)
    assert dot.strip().endswith("}")
