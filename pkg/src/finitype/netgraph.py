"""Reduced transition graph: characteristic vectors and primitive matrices.

Working one vertex at a time in parent-normalized coordinates (origin at the
parent interval's left endpoint, one unit per current-level contraction), the
subdivision points contributed by the covering maps split the parent into its
children; each child gets a normalized length, a sorted neighbour set, and a
rational matrix whose nonzero entries are weights divided by the smallest
weight. Closure from the unit root interval yields the finite vertex set for
a finite-type system; ids are assigned in breadth-first discovery order, so
rebuilds are bit-identical.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .errors import CapExceeded, InternalInconsistency
from .ifsmodel import Model
from .exactfield import FieldElement, sort_unique


@dataclass(frozen=True)
class CharacteristicVector:
    """Normalized length and strictly increasing neighbour offsets."""

    length: FieldElement
    neighbours: tuple[FieldElement, ...]

    def key(self):
        return (self.length.coeffs, tuple(n.coeffs for n in self.neighbours))

    def describe(self, digits=6):
        ns = ", ".join(n.to_decimal(digits) for n in self.neighbours)
        return f"({self.length.to_decimal(digits)}, ({ns}))"


@dataclass(frozen=True)
class TransitionEdge:
    """Parent-to-child step; parallel identical steps are merged.

    ``offsets`` holds the parent-normalized left endpoint of each merged
    instance, left to right, so the level geometry stays reconstructible.
    """

    parent: int
    child: int
    matrix: tuple[tuple[Fraction | int, ...], ...]
    multiplicity: int
    offsets: tuple[FieldElement, ...]

    @property
    def child_offset(self) -> FieldElement:
        return self.offsets[0]


class TransitionGraph:
    """Closed reduced transition graph; vertex ids are 1-based discovery order."""

    def __init__(self, model: Model, cvs, edges):
        self.model = model
        self.cvs = list(cvs)            # cvs[i] has id i+1
        self.edges = list(edges)
        self._out = [[] for _ in range(len(self.cvs) + 1)]
        for idx, e in enumerate(self.edges):
            self._out[e.parent].append(idx)

    @property
    def root(self) -> int:
        return 1

    def cv(self, vid: int) -> CharacteristicVector:
        return self.cvs[vid - 1]

    def __len__(self):
        return len(self.cvs)

    def out_edges(self, vid: int):
        return [self.edges[i] for i in self._out[vid]]

    def children_of(self, vid: int):
        return [e.child for e in self.out_edges(vid)]

    def edge_index(self, edge: TransitionEdge) -> int:
        return self.edges.index(edge)


def children(parent: CharacteristicVector, model: Model):
    """Children of a vertex, left to right: (vector, matrix, offset) triples.

    The matrix has one row per parent neighbour and one column per child
    neighbour; the entry is the normalized weight of the unique map taking
    the row's covering interval onto the column's, else zero.
    """
    f = model.field
    rho = model.rho()
    inv_rho = f.inv_rho()
    d = model.translations
    d_scaled = [dl * inv_rho for dl in d]
    weights = [int(w) if w.denominator == 1 else w for w in model.normalized]

    ell = parent.length
    cands = []
    for dl in d:
        for c in parent.neighbours:
            base = dl - c
            cands.append(base)
            cands.append(base + rho)
    inside = [x for x in {e.coeffs: e for e in cands}.values()
              if x.sign() > 0 and (ell - x).sign() > 0]
    cuts = [f.zero] + sort_unique(inside) + [ell]

    out = []
    for i in range(len(cuts) - 1):
        t = cuts[i]
        child_len = (cuts[i + 1] - t) * inv_rho
        len_bound = f.one - child_len
        # gather neighbour values with their generating (row, map) pairs
        seen: dict = {}
        for j, c in enumerate(parent.neighbours):
            base = (t + c) * inv_rho
            for l in range(len(d)):
                a = base - d_scaled[l]
                if a.sign() < 0:
                    continue
                if (len_bound - a).sign() < 0:
                    continue
                k = a.coeffs
                if k not in seen:
                    seen[k] = (a, [])
                seen[k][1].append((j, l))
        if not seen:
            raise InternalInconsistency(
                "child interval covered by no map; invalid model or bug")
        neigh = sort_unique([v[0] for v in seen.values()])
        J, K = len(parent.neighbours), len(neigh)
        rows = [[0] * K for _ in range(J)]
        for k_idx, a in enumerate(neigh):
            for (j, l) in seen[a.coeffs][1]:
                rows[j][k_idx] = weights[l]
        matrix = tuple(tuple(r) for r in rows)
        for r in matrix:
            if not any(r):
                raise InternalInconsistency(
                    "transition matrix has an all-zero row; invalid model or bug")
        cv = CharacteristicVector(length=child_len, neighbours=tuple(neigh))
        _check_cv(cv)
        out.append((cv, matrix, t))
    return out


def _check_cv(cv: CharacteristicVector):
    if not cv.neighbours:
        raise InternalInconsistency("empty neighbour set")
    if cv.length.sign() <= 0 or (cv.length - 1).sign() > 0:
        raise InternalInconsistency("normalized length outside (0, 1]")
    if cv.neighbours[0].sign() < 0:
        raise InternalInconsistency("negative neighbour offset")
    if (cv.neighbours[-1] + cv.length - 1).sign() > 0:
        raise InternalInconsistency("neighbour offset exceeds 1 - length")


def build_graph(model: Model, cap_cvs: int = 10000) -> TransitionGraph:
    """Breadth-first closure from the unit interval's vector (1, (0))."""
    if cap_cvs < 1:
        raise ValueError("cap_cvs must be >= 1")
    f = model.field
    root = CharacteristicVector(length=f.one, neighbours=(f.zero,))
    ids = {root.key(): 1}
    cvs = [root]
    edges = []
    queue = deque([1])
    while queue:
        vid = queue.popleft()
        raw = children(cvs[vid - 1], model)
        merged: dict = {}
        order = []
        for cv, matrix, t in raw:
            ck = cv.key()
            child_id = ids.get(ck)
            if child_id is None:
                if len(cvs) >= cap_cvs:
                    raise CapExceeded(cap_cvs)
                cvs.append(cv)
                child_id = len(cvs)
                ids[ck] = child_id
                queue.append(child_id)
            ek = (child_id, matrix)
            if ek in merged:
                merged[ek].append(t)
            else:
                merged[ek] = [t]
                order.append(ek)
        for (child_id, matrix) in order:
            offs = merged[(child_id, matrix)]
            edges.append(TransitionEdge(
                parent=vid, child=child_id, matrix=matrix,
                multiplicity=len(offs), offsets=tuple(offs)))
    return TransitionGraph(model, cvs, edges)


def export_dot(graph: TransitionGraph, classes=None) -> str:
    """Graphviz DOT rendering; parallel edges repeat per multiplicity.

    ``classes`` may carry the loop-class decomposition, in which case the
    essential vertices are filled and other loop-class vertices outlined.
    """
    essential = set()
    looped = set()
    if classes:
        for c in classes:
            members = set(c.members)
            if c.is_essential:
                essential |= members
            else:
                looped |= members
    lines = ["digraph transition {", "  rankdir=LR;",
             "  node [shape=circle, fontsize=11];"]
    for i, cv in enumerate(graph.cvs, start=1):
        style = ""
        if i in essential:
            style = ', style=filled, fillcolor="lightsteelblue"'
        elif i in looped:
            style = ', style=filled, fillcolor="lightgoldenrod"'
        lines.append(f'  {i} [label="{i}", tooltip="{cv.describe()}"{style}];')
    for e in graph.edges:
        for _ in range(e.multiplicity):
            lines.append(f"  {e.parent} -> {e.child};")
    lines.append("}")
    return "\n".join(lines) + "\n"
