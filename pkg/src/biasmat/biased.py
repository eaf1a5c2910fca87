"""Biased graphs (a graph plus a theta-closed family of balanced cycles) and
their compact encoding as signed graphs.

A :class:`BiasedGraph` stores its balanced family extensionally.  The theta
property is *not* enforced by the constructor, so that violating families can
be represented and reported; operations that need it call
:func:`require_theta_property`.
"""
from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

from .errors import InputError, InternalError
from .graph_core import MultiGraph, popcount, restrict, sort_ids


class BiasedGraph:
    def __init__(self, graph: MultiGraph, balanced: Iterable[Iterable]):
        idx = graph.index
        masks = set()
        for c in balanced:
            em = idx.emask(c)
            if em not in idx.cycle_lookup:
                raise InputError(f"balanced member {sort_ids(c)!r} is not a cycle of the graph")
            masks.add(em)
        self.graph = graph
        self._masks = frozenset(masks)

    @classmethod
    def all_balanced(cls, graph: MultiGraph) -> BiasedGraph:
        return cls._from_masks(graph, (em for em, _ in graph.index.cycles))

    @classmethod
    def contrabalanced(cls, graph: MultiGraph) -> BiasedGraph:
        return cls._from_masks(graph, ())

    @classmethod
    def _from_masks(cls, graph: MultiGraph, masks: Iterable[int]) -> BiasedGraph:
        obj = cls.__new__(cls)
        obj.graph = graph
        obj._masks = frozenset(masks)
        return obj

    @cached_property
    def balanced(self) -> frozenset:
        idx = self.graph.index
        return frozenset(idx.edges_of(m) for m in self._masks)

    @cached_property
    def flags(self) -> list[bool]:
        """Balance flag of every cycle, aligned with ``graph.index.cycles``."""
        return [em in self._masks for em, _ in self.graph.index.cycles]

    def is_cycle_balanced(self, cycle: Iterable) -> bool:
        return self.graph.index.emask(cycle) in self._masks

    def __eq__(self, other):
        if not isinstance(other, BiasedGraph):
            return NotImplemented
        return self.graph == other.graph and self._masks == other._masks

    def __hash__(self):
        return hash((self.graph, self._masks))

    def __repr__(self):
        n = len(self.graph.index.cycles)
        return f"BiasedGraph({self.graph!r}, {len(self._masks)}/{n} cycles balanced)"


class SignedGraph:
    """A multigraph with every edge labelled +1 or -1."""

    def __init__(self, graph: MultiGraph, sign: Mapping):
        sign = dict(sign)
        missing = set(graph.edges) - set(sign)
        if missing:
            raise InputError(f"no sign for edges {sort_ids(missing)!r}")
        extra = set(sign) - set(graph.edges)
        if extra:
            raise InputError(f"signs given for unknown edges {sort_ids(extra)!r}")
        for e, s in sign.items():
            if s not in (1, -1):
                raise InputError(f"sign of {e!r} must be +1 or -1, got {s!r}")
        self.graph = graph
        self.sign = sign

    @classmethod
    def all_positive(cls, graph: MultiGraph) -> SignedGraph:
        return cls(graph, {e: 1 for e in graph.edges})

    @cached_property
    def negative_mask(self) -> int:
        idx = self.graph.index
        return idx.emask(e for e, s in self.sign.items() if s < 0)

    def negative_edges(self) -> frozenset:
        return frozenset(e for e, s in self.sign.items() if s < 0)

    def __eq__(self, other):
        if not isinstance(other, SignedGraph):
            return NotImplemented
        return self.graph == other.graph and self.sign == other.sign

    def __hash__(self):
        return hash((self.graph, frozenset(self.sign.items())))

    def __repr__(self):
        neg = sort_ids(self.negative_edges())
        return f"SignedGraph({self.graph!r}, negative={neg})"


@dataclass(frozen=True)
class Switching:
    """Vertex labelling that is -1 exactly on ``negated``."""

    negated: frozenset = frozenset()

    def __init__(self, negated: Iterable = ()):
        object.__setattr__(self, "negated", frozenset(negated))


class Handcuff(NamedTuple):
    c1: frozenset
    c2: frozenset
    path: frozenset
    kind: str  # "tight" or "loose"


class ContraBalancedTheta(NamedTuple):
    """A theta all of whose three cycles are unbalanced; blocks a signing."""

    edges: frozenset


def incidence_signs(graph: MultiGraph, negated: Iterable) -> dict:
    """Sign each edge by (-1)**(number of its ends in ``negated``).

    This is the signing obtained from all +1 by switching at ``negated``; a
    loop at a negated vertex therefore stays +1.
    """
    neg = set(negated)
    return {e: (-1) ** ((u in neg) + (v in neg)) for e, (u, v) in graph.edges.items()}


# -- operations ---------------------------------------------------------------


def from_signed(s: SignedGraph) -> BiasedGraph:
    """Balanced cycles are those with an even number of -1 edges."""
    neg = s.negative_mask
    cyc = s.graph.index.cycles
    return BiasedGraph._from_masks(s.graph, (em for em, _ in cyc if not popcount(em & neg) & 1))


def find_theta_violation(b: BiasedGraph) -> frozenset | None:
    """A theta containing exactly two balanced cycles, or None."""
    idx = b.graph.index
    flags = b.flags
    for em, (i, j, k) in idx.thetas:
        if flags[i] + flags[j] + flags[k] == 2:
            return idx.edges_of(em)
    return None


def validate_theta_property(b: BiasedGraph) -> tuple[bool, frozenset | None]:
    """``(True, None)`` if the theta property holds, else ``(False, violating_theta)``."""
    bad = find_theta_violation(b)
    return bad is None, bad


def require_theta_property(b: BiasedGraph) -> None:
    bad = find_theta_violation(b)
    if bad is not None:
        raise InputError(f"theta property fails on theta {sort_ids(bad)!r}")


def switch(s: SignedGraph, d: Switching) -> SignedGraph:
    unknown = d.negated - s.graph.vertices
    if unknown:
        raise InputError(f"switching names unknown vertices {sort_ids(unknown)!r}")
    neg = d.negated
    sign = {}
    for e, x in s.sign.items():
        u, v = s.graph.ends(e)
        if u != v and ((u in neg) != (v in neg)):
            x = -x
        sign[e] = x
    return SignedGraph(s.graph, sign)


def all_positive_switching(s: SignedGraph) -> Switching | None:
    """A switching that makes every edge +1, or None when ``s`` is unbalanced.

    Labels are propagated from a root along a spanning tree of each
    component; every remaining edge is then checked.
    """
    g = s.graph
    idx = g.index
    label = [0] * len(idx.vlist)
    signs = [s.sign[e] for e in idx.elist]
    for root in range(len(idx.vlist)):
        if label[root]:
            continue
        label[root] = 1
        frontier = [root]
        while frontier:
            x = frontier.pop()
            for k, y in idx.adj[x]:
                if not label[y]:
                    label[y] = label[x] * signs[k]
                    frontier.append(y)
    for j, (a, b) in enumerate(idx.ends):
        if signs[j] * label[a] * label[b] != 1:
            return None
    return Switching(idx.vlist[i] for i in range(len(label)) if label[i] < 0)


def _restriction_mask(b: BiasedGraph, restriction) -> int:
    idx = b.graph.index
    return idx.all_edges if restriction is None else idx.emask(restriction)


def is_balanced(b: BiasedGraph, restriction: Iterable | None = None) -> bool:
    """Every cycle inside ``restriction`` (default: the whole graph) is balanced."""
    em = _restriction_mask(b, restriction)
    return _balanced_within(b, em)


def _balanced_within(b: BiasedGraph, em: int) -> bool:
    for (c, _), ok in zip(b.graph.index.cycles, b.flags):
        if not ok and c & em == c:
            return False
    return True


def is_contra_balanced(b: BiasedGraph, restriction: Iterable | None = None) -> bool:
    """No cycle inside ``restriction`` is balanced."""
    em = _restriction_mask(b, restriction)
    for (c, _), ok in zip(b.graph.index.cycles, b.flags):
        if ok and c & em == c:
            return False
    return True


def blocking_vertices(b: BiasedGraph) -> frozenset:
    """Vertices whose deletion leaves a balanced biased graph."""
    idx = b.graph.index
    out = set()
    for i, v in enumerate(idx.vlist):
        if _balanced_within(b, idx.all_edges & ~idx.incident[i]):
            out.add(v)
    return frozenset(out)


def _handcuff_masks(b: BiasedGraph, contra_only: bool):
    """Yield ``(c1_index, c2_index, path_mask, kind)`` for every handcuff."""
    idx = b.graph.index
    cyc = idx.cycles
    pick = [i for i, ok in enumerate(b.flags) if not (contra_only and ok)]
    for a in range(len(pick)):
        i = pick[a]
        e1, v1 = cyc[i]
        for c in range(a + 1, len(pick)):
            k = pick[c]
            e2, v2 = cyc[k]
            common = v1 & v2
            if common:
                if popcount(common) == 1:
                    yield i, k, 0, "tight"
                continue
            free = idx.all_edges & ~(e1 | e2)
            for pm, _, _ in idx.paths(v1, v2, free):
                yield i, k, pm, "loose"


def enumerate_handcuffs(b: BiasedGraph, contra_balanced_only: bool = False) -> list[Handcuff]:
    idx = b.graph.index
    cyc = idx.cycles
    out = [
        Handcuff(idx.edges_of(cyc[i][0]), idx.edges_of(cyc[k][0]), idx.edges_of(pm), kind)
        for i, k, pm, kind in _handcuff_masks(b, contra_balanced_only)
    ]
    return out


def unbalanced_cycles(b: BiasedGraph) -> list[frozenset]:
    idx = b.graph.index
    return [idx.edges_of(em) for (em, _), ok in zip(idx.cycles, b.flags) if not ok]


def has_two_vertex_disjoint_unbalanced_cycles(b: BiasedGraph) -> bool:
    vms = [vm for (_, vm), ok in zip(b.graph.index.cycles, b.flags) if not ok]
    for i in range(len(vms)):
        for k in range(i + 1, len(vms)):
            if not vms[i] & vms[k]:
                return True
    return False


def contra_balanced_theta(b: BiasedGraph) -> frozenset | None:
    idx = b.graph.index
    flags = b.flags
    for em, (i, j, k) in idx.thetas:
        if not (flags[i] or flags[j] or flags[k]):
            return idx.edges_of(em)
    return None


def signed_representability(b: BiasedGraph) -> SignedGraph | ContraBalancedTheta:
    """A signing realising ``b``, or a contra-balanced theta showing none exists.

    Tree edges of a spanning forest get +1 and every other edge takes the
    sign that makes its fundamental cycle agree with ``b``; the result is
    then checked against ``b`` cycle by cycle.
    """
    require_theta_property(b)
    theta = contra_balanced_theta(b)
    if theta is not None:
        return ContraBalancedTheta(theta)
    g = b.graph
    idx = g.index
    n = len(idx.vlist)
    parent = [-1] * n  # parent vertex
    pedge = [-1] * n  # edge to parent
    depth = [-1] * n
    tree = 0
    for root in range(n):
        if depth[root] >= 0:
            continue
        depth[root] = 0
        frontier = [root]
        while frontier:
            x = frontier.pop()
            for k, y in idx.adj[x]:
                if depth[y] < 0:
                    depth[y] = depth[x] + 1
                    parent[y], pedge[y] = x, k
                    tree |= 1 << k
                    frontier.append(y)
    look = idx.cycle_lookup
    flags = b.flags
    sign = {}
    for j, e in enumerate(idx.elist):
        if (tree >> j) & 1:
            sign[e] = 1
            continue
        a, c = idx.ends[j]
        path = 0
        while a != c:
            if depth[a] < depth[c]:
                a, c = c, a
            path |= 1 << pedge[a]
            a = parent[a]
        sign[e] = 1 if flags[look[path | (1 << j)]] else -1
    s = SignedGraph(g, sign)
    if from_signed(s) != b:
        raise InternalError("constructed signing disagrees with the balanced family")
    return s


def restrict_biased(b: BiasedGraph, edges: Iterable) -> BiasedGraph:
    """The biased graph on ``graph|edges`` whose balanced cycles are those of ``b`` inside ``edges``."""
    sub = restrict(b.graph, edges)
    return BiasedGraph(sub, (c for c in b.balanced if c <= frozenset(edges)))


def restrict_signed(s: SignedGraph, edges: Iterable) -> SignedGraph:
    sub = restrict(s.graph, edges)
    return SignedGraph(sub, {e: s.sign[e] for e in sub.edges})
