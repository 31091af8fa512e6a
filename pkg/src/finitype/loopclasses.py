"""Loop-class decomposition of the reduced transition graph.

Maximal loop classes are the strongly connected components that carry at
least one internal edge (self-loops count). Exactly one of them is closed
under taking children; that one is the essential class, and the theory for
regular-weight interval-supported systems guarantees it exists and is unique.

Positivity of a class is decided by a breadth-first closure over boolean
(zero/nonzero) matrix patterns of admissible products inside the class. The
pattern space is finite, so exhaustion without finding an all-nonzero
product is a proof of NOT_POSITIVE; a state cap turns the answer into
UNKNOWN instead of lying.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum

from .errors import EssentialClassNotUnique
from .netgraph import TransitionGraph


class Positivity(Enum):
    POSITIVE = "POSITIVE"
    NOT_POSITIVE = "NOT_POSITIVE"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class PositivityResult:
    verdict: Positivity
    witness: tuple[int, ...] | None = None   # vertex path whose product is positive
    explored_states: int = 0
    exhausted_length: int | None = None      # longest layer reached on NOT_POSITIVE

    def __bool__(self):
        return self.verdict is Positivity.POSITIVE


@dataclass(frozen=True)
class LoopClass:
    members: tuple[int, ...]                 # ascending vertex ids
    is_maximal: bool = True
    is_essential: bool = False
    is_simple_loop: bool = False
    positivity: PositivityResult | None = None

    @property
    def positive(self) -> bool:
        return self.positivity is not None and bool(self.positivity)

    def label(self) -> str:
        return "[" + ", ".join(str(v) for v in self.members) + "]"


def strongly_connected_components(n: int, out_neighbours) -> list[list[int]]:
    """Iterative Tarjan over vertices 1..n; components in a deterministic order."""
    index = [0] * (n + 1)
    low = [0] * (n + 1)
    on_stack = [False] * (n + 1)
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 1
    for start in range(1, n + 1):
        if index[start]:
            continue
        work = [(start, iter(out_neighbours(start)))]
        index[start] = low[start] = counter
        counter += 1
        stack.append(start)
        on_stack[start] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if not index[w]:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(out_neighbours(w))))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    return comps


def maximal_loop_classes(graph: TransitionGraph) -> list[LoopClass]:
    """SCCs with at least one internal edge, ordered by smallest member id."""
    comps = strongly_connected_components(len(graph), graph.children_of)
    classes = []
    for comp in comps:
        members = set(comp)
        internal = any(e.child in members
                       for v in comp for e in graph.out_edges(v))
        if internal:
            classes.append(LoopClass(members=tuple(comp)))
    classes.sort(key=lambda c: c.members[0])
    return classes


def essential_class(graph: TransitionGraph) -> LoopClass:
    """The unique maximal class closed under taking children."""
    candidates = []
    for c in maximal_loop_classes(graph):
        members = set(c.members)
        if all(e.child in members for v in c.members for e in graph.out_edges(v)):
            candidates.append(c)
    if len(candidates) != 1:
        raise EssentialClassNotUnique(
            f"{len(candidates)} child-closed loop classes found; the reduced "
            f"graph is malformed")
    c = candidates[0]
    return LoopClass(members=c.members, is_essential=True)


def _internal_edges(graph, members):
    ms = set(members)
    out = []
    for v in members:
        for e in graph.out_edges(v):
            if e.child in ms:
                out.append(e)
    return out


def positivity_certificate(graph: TransitionGraph, members,
                           max_len: int | None = None,
                           state_cap: int = 500_000,
                           edges=None) -> PositivityResult:
    """Search the class for an admissible product with no zero entry.

    Breadth-first over (end, boolean pattern) states of products starting at
    the smallest member, one layer per product length, memoized, so the first
    hit is a minimal-length witness from that start. One start suffices for
    the class verdict: primitive matrices have no zero row or column, so a
    positive product anywhere extends to a positive product from any start.
    The pattern space is finite, so exhaustion proves NOT_POSITIVE; UNKNOWN
    only arises past ``max_len`` or ``state_cap``.

    ``edges`` restricts the walk to an explicit edge subset; by default every
    edge between members is allowed. Restricting is how sub-loops that differ
    only in the choice among parallel edges can be probed. (The one-start
    shortcut is then skipped, since a restricted edge set may break the
    row/column structure the extension argument needs.)
    """
    members = tuple(sorted(members))
    restricted = edges is not None
    edges = list(edges) if restricted else _internal_edges(graph, members)
    if not edges:
        return PositivityResult(Positivity.NOT_POSITIVE, exhausted_length=0)

    # boolean row masks per edge matrix
    def masks(matrix):
        K = len(matrix[0])
        return tuple(sum(1 << k for k in range(K) if row[k]) for row in matrix), K

    def full(rows, K):
        want = (1 << K) - 1
        return all(r == want for r in rows)

    out_internal = {v: [e for e in edges if e.parent == v] for v in members}
    edge_masks = {}
    for v in members:
        for e in out_internal[v]:
            edge_masks[id(e)] = masks(e.matrix)

    starts = members if restricted else (min(members),)
    seen = {}
    parent = {}
    layer = deque()
    for s in starts:
        for e in out_internal[s]:
            rows, K = masks(e.matrix)
            state = (e.parent, e.child, rows)
            if full(rows, K):
                return PositivityResult(Positivity.POSITIVE,
                                        witness=(e.parent, e.child),
                                        explored_states=1)
            if state not in seen:
                seen[state] = 1
                parent[state] = (None, e)
                layer.append(state)

    length = 1
    while layer:
        if max_len is not None and length >= max_len:
            return PositivityResult(Positivity.UNKNOWN,
                                    explored_states=len(seen))
        nxt = deque()
        while layer:
            state = layer.popleft()
            s, mid, rows = state
            for e in out_internal[mid]:
                emasks, K = edge_masks[id(e)]
                new_rows = tuple(
                    _or_rows(r, emasks) for r in rows)
                new_state = (s, e.child, new_rows)
                if new_state in seen:
                    continue
                if len(seen) >= state_cap:
                    return PositivityResult(Positivity.UNKNOWN,
                                            explored_states=len(seen))
                seen[new_state] = 1
                parent[new_state] = (state, e)
                if full(new_rows, K):
                    return PositivityResult(
                        Positivity.POSITIVE,
                        witness=_witness(parent, new_state),
                        explored_states=len(seen))
                nxt.append(new_state)
        layer = nxt
        length += 1
    return PositivityResult(Positivity.NOT_POSITIVE,
                            explored_states=len(seen),
                            exhausted_length=length - 1)


def _or_rows(row_bits, next_masks):
    acc = 0
    bits = row_bits
    while bits:
        j = (bits & -bits).bit_length() - 1
        acc |= next_masks[j]
        bits &= bits - 1
    return acc


def _witness(parent, state):
    edges = []
    cur = state
    while cur is not None:
        prev, edge = parent[cur]
        edges.append(edge)
        cur = prev
    edges.reverse()
    return tuple([edges[0].parent] + [e.child for e in edges])


def _simple_loop(graph, members) -> bool:
    """One directed cycle through the members; any parallel edge disqualifies."""
    ms = set(members)
    total = 0
    for v in members:
        internal = [e for e in graph.out_edges(v) if e.child in ms]
        if len(internal) != 1 or internal[0].multiplicity != 1:
            return False
        total += 1
    # strong connectivity is given (members form an SCC); out-degree one
    # everywhere then forces a single cycle through all members
    return total == len(members)


def classify_all(graph: TransitionGraph,
                 state_cap: int = 500_000,
                 positivity_max_len: int | None = None) -> list[LoopClass]:
    """Maximal classes with essential, simple-loop and positivity flags set."""
    essential = essential_class(graph)
    out = []
    for c in maximal_loop_classes(graph):
        is_ess = c.members == essential.members
        simple = _simple_loop(graph, c.members)
        pos = positivity_certificate(graph, c.members,
                                     max_len=positivity_max_len,
                                     state_cap=state_cap)
        out.append(LoopClass(members=c.members, is_maximal=True,
                             is_essential=is_ess, is_simple_loop=simple,
                             positivity=pos))
    return out
