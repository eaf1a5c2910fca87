"""Whitney flips and 2-isomorphism.

The production test :func:`is_2_isomorphic` compares cycle matroids.  The
three graph operations (flip, identifying vertices of distinct components,
splitting at a cut vertex) are also available one step at a time so their
closure can be compared against the matroid answer on small graphs.
"""
from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass

from .budget import Budget
from .errors import InputError
from .graph_core import MultiGraph, canonical_form, components, fresh_name, relabel, sort_ids
from .matroid import cycle_matroid, is_isomorphic


@dataclass(frozen=True)
class FlipSpec:
    x1: frozenset
    x2: frozenset
    u1: object
    u2: object

    def __post_init__(self):
        object.__setattr__(self, "x1", frozenset(self.x1))
        object.__setattr__(self, "x2", frozenset(self.x2))


def _touch(h: MultiGraph, edges: Iterable) -> set:
    return {x for e in edges for x in h.ends(e)}


def whitney_flip(h: MultiGraph, f: FlipSpec) -> MultiGraph:
    """Exchange ``u1`` and ``u2`` on the ``x2`` side of the 2-separation."""
    if f.x1 & f.x2 or (f.x1 | f.x2) != set(h.edges):
        raise InputError("x1 and x2 must partition the edge set")
    if f.u1 == f.u2:
        raise InputError("hinge vertices must be distinct")
    meet = _touch(h, f.x1) & _touch(h, f.x2)
    if meet != {f.u1, f.u2}:
        raise InputError(f"the two sides meet in {sort_ids(meet)!r}, not in the hinge pair")
    swap = {f.u1: f.u2, f.u2: f.u1}
    edges = {}
    for e, (a, b) in h.edges.items():
        edges[e] = (swap.get(a, a), swap.get(b, b)) if e in f.x2 else (a, b)
    return MultiGraph(edges, vertices=h.vertices)


def is_2_isomorphic(g: MultiGraph, h: MultiGraph, budget: Budget | None = None) -> dict | None:
    """An edge bijection carrying the cycles of ``g`` onto those of ``h``, or None."""
    for name, x in (("first", g), ("second", h)):
        if x.isolated_vertices():
            raise InputError(f"the {name} graph has isolated vertices")
    if g.num_edges != h.num_edges:
        return None
    return is_isomorphic(cycle_matroid(g), cycle_matroid(h), budget)


# -- single operations -------------------------------------------------------


def _two_sided_partitions(h: MultiGraph) -> Iterator[tuple[frozenset, frozenset, set]]:
    """Partitions of E(h) into two nonempty sides, each unordered pair once,
    with the set of vertices where the sides meet."""
    edges = h.edge_ids
    m = len(edges)
    for mask in range(1, 1 << (m - 1)) if m > 1 else ():
        x2 = frozenset(edges[j] for j in range(m - 1) if (mask >> j) & 1)
        x1 = frozenset(edges) - x2
        yield x1, x2, _touch(h, x1) & _touch(h, x2)


def flips(h: MultiGraph) -> Iterator[MultiGraph]:
    for x1, x2, meet in _two_sided_partitions(h):
        if len(meet) == 2:
            u1, u2 = sort_ids(meet)
            yield whitney_flip(h, FlipSpec(x1, x2, u1, u2))


def identifications(h: MultiGraph) -> Iterator[MultiGraph]:
    """Identify one vertex of a component with one vertex of another."""
    comps = [sort_ids(vs) for vs, _ in components(h)]
    for i in range(len(comps)):
        for j in range(i + 1, len(comps)):
            for a in comps[i]:
                for b in comps[j]:
                    yield relabel(h, {b: a})


def splittings(h: MultiGraph) -> Iterator[MultiGraph]:
    """Split a vertex where two edge-disjoint sides meet in it alone."""
    taken = set(h.vertices)
    for x1, x2, meet in _two_sided_partitions(h):
        if len(meet) != 1:
            continue
        (v,) = meet
        nv = fresh_name(f"{v}'", taken)
        edges = {}
        for e, (a, b) in h.edges.items():
            edges[e] = ((nv if a == v else a), (nv if b == v else b)) if e in x2 else (a, b)
        yield MultiGraph(edges, vertices=h.vertices | {nv})


def neighbours(h: MultiGraph) -> Iterator[MultiGraph]:
    yield from flips(h)
    yield from identifications(h)
    yield from splittings(h)


def closure_classes(graphs: Iterable[MultiGraph]) -> dict:
    """Union the given graphs under the three operations.

    Returns a map from canonical form to a class representative key.  Graphs
    reached along the way (for instance disconnected ones) join the classes
    too, so reachability through them counts.
    """
    parent: dict = {}

    def find(k):
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    def join(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    todo = []
    for g in graphs:
        k = canonical_form(g)
        if k not in parent:
            parent[k] = k
            todo.append(g)
    while todo:
        g = todo.pop()
        k = canonical_form(g)
        for nb in neighbours(g):
            nk = canonical_form(nb)
            if nk not in parent:
                parent[nk] = nk
                todo.append(nb)
            join(k, nk)
    return {k: find(k) for k in parent}
