"""Constructions of biased graphs whose frame matroid is the cycle matroid of
a given graph, and their constructive converses.

Every construction keeps edge ids: the returned :class:`Witness` pairs a
biased graph ``omega`` and a graph ``h`` on the same edge set, so
``F(omega) = M(h)`` is a literal equality of circuit families.

Loops at a vertex that gets negated (pinch vertex ``v1``, twisting marks)
keep sign +1: an edge is signed by the parity of its ends at negated
vertices, which is the switching convention used throughout.
"""
from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import NamedTuple

from .biased import (
    BiasedGraph,
    SignedGraph,
    all_positive_switching,
    blocking_vertices,
    from_signed,
    incidence_signs,
    is_balanced,
    restrict_signed,
    switch,
)
from .errors import InputError
from .graph_core import (
    MultiGraph,
    block_decomposition,
    fresh_name,
    is_k_connected,
    relabel,
    restrict,
    sort_ids,
    union,
)
from .matroid import circuits_under, cycle_matroid, frame_circuit_masks, frame_matroid

FAMILIES = (
    "balanced",
    "fat_theta",
    "curling",
    "simple_curling",
    "pinch",
    "four_twisting",
    "consecutive_odd_twisting",
)


@dataclass
class Witness:
    """``omega`` and ``h`` with ``edge_map`` claimed to carry F(omega) onto M(h)."""

    family: str
    omega: BiasedGraph
    h: MultiGraph
    edge_map: dict
    signed: SignedGraph | None = None
    info: dict = field(default_factory=dict)

    def verify(self) -> bool:
        if set(self.edge_map) != set(self.omega.graph.edges) or set(self.edge_map.values()) != set(self.h.edges):
            return False
        if all(k == v for k, v in self.edge_map.items()):
            # same edge set, same bit order
            return frame_circuit_masks(self.omega) == {em for em, _ in self.h.index.cycles}
        return circuits_under(frame_matroid(self.omega), self.edge_map) == cycle_matroid(self.h).circuits


def _identity(g: MultiGraph) -> dict:
    return {e: e for e in g.edges}


def _check_parts(parts: Sequence[MultiGraph], marked: Sequence, arity: int, allow_empty: bool) -> None:
    seen_v: set = set()
    seen_e: set = set()
    for i, (p, marks) in enumerate(zip(parts, marked)):
        if allow_empty and p.num_edges == 0:
            continue
        if marks is None or len(marks) != arity:
            raise InputError(f"part {i + 1} needs {arity} marked vertices")
        if len(set(marks)) != arity:
            raise InputError(f"marked vertices of part {i + 1} are not distinct")
        missing = [m for m in marks if m not in p.vertices]
        if missing:
            raise InputError(f"marked vertices {missing!r} are not in part {i + 1}")
        if seen_v & p.vertices:
            raise InputError(f"part {i + 1} shares vertices {sort_ids(seen_v & p.vertices)!r} with an earlier part")
        if seen_e & set(p.edges):
            raise InputError(f"part {i + 1} shares edge ids with an earlier part")
        seen_v |= p.vertices
        seen_e |= set(p.edges)


def _all_vertex_names(parts: Iterable[MultiGraph]) -> set:
    out: set = set()
    for p in parts:
        out |= p.vertices
    return out


# -- balanced ----------------------------------------------------------


def make_balanced(h: MultiGraph) -> Witness:
    return Witness("balanced", BiasedGraph.all_balanced(h), h, _identity(h))


# -- fat theta -----------------------------------------------------------


@dataclass(frozen=True)
class FatThetaParts:
    parts: tuple  # three MultiGraphs
    marked: tuple  # three (x_i, y_i) pairs


def make_fat_theta(p: FatThetaParts) -> Witness:
    if len(p.parts) != 3 or len(p.marked) != 3:
        raise InputError("a fat theta has exactly three parts")
    _check_parts(p.parts, p.marked, 2, allow_empty=False)
    taken = _all_vertex_names(p.parts)
    w = [fresh_name(f"w{i + 1}", taken) for i in range(3)]
    x, y = fresh_name("x", taken), fresh_name("y", taken)
    h_pieces, g_pieces = [], []
    for i, (part, (xi, yi)) in enumerate(zip(p.parts, p.marked)):
        # y_i and x_{i+1} become w_i
        h_pieces.append(relabel(part, {yi: w[i], xi: w[(i - 1) % 3]}))
        g_pieces.append(relabel(part, {xi: x, yi: y}))
    h = union(*h_pieces)
    gamma = union(*g_pieces)
    idx = gamma.index
    part_masks = [idx.emask(part.edges) for part in p.parts]
    balanced = [em for em, _ in idx.cycles if any(em & pm == em for pm in part_masks)]
    omega = BiasedGraph._from_masks(gamma, balanced)
    return Witness("fat_theta", omega, h, _identity(h), info={"x": x, "y": y, "w": tuple(w)})


# -- curling ---------------------------------------------------------------


@dataclass(frozen=True)
class CurlingSpec:
    h: MultiGraph
    v: object
    attachments: tuple  # ((v_i, frozenset of edge ids), ...)

    def __post_init__(self):
        object.__setattr__(
            self, "attachments", tuple((vi, frozenset(es)) for vi, es in self.attachments)
        )


def validate_curling(c: CurlingSpec, strict: bool = False) -> None:
    """Check the curling preconditions.

    Each piece must be connected, contain ``v`` and its ``v_i``, and meet the
    rest of the graph only inside ``{v, v_i}``; every edge at ``v`` must lie
    in a piece.  ``strict`` additionally demands that ``h`` be 2-connected and
    that each piece meets the rest in exactly ``{v, v_i}``.
    """
    h, v = c.h, c.v
    if v not in h.vertices:
        raise InputError(f"curling vertex {v!r} is not in the graph")
    if not c.attachments:
        raise InputError("a curling needs at least one piece")
    vis = [vi for vi, _ in c.attachments]
    if len(set(vis)) != len(vis) or v in vis:
        raise InputError("the attachment vertices v_i must be distinct and differ from v")
    covered: set = set()
    for vi, es in c.attachments:
        if vi not in h.vertices:
            raise InputError(f"attachment vertex {vi!r} is not in the graph")
        if not es:
            raise InputError(f"piece at {vi!r} is empty")
        if covered & es:
            raise InputError("curling pieces must be edge-disjoint")
        covered |= es
        piece = restrict(h, es)
        idx = piece.index
        if not idx.connected(idx.all_edges):
            raise InputError(f"piece at {vi!r} is not connected")
        if v not in piece.vertices or vi not in piece.vertices:
            raise InputError(f"piece at {vi!r} must contain both {v!r} and {vi!r}")
        rest = restrict(h, set(h.edges) - es)
        meet = piece.vertices & rest.vertices
        if strict and rest.num_edges:
            if meet != {v, vi}:
                raise InputError(f"piece at {vi!r} meets the rest in {sort_ids(meet)!r}, not {{v, v_i}}")
        elif not meet <= {v, vi}:
            raise InputError(f"piece at {vi!r} meets the rest outside {{v, v_i}}: {sort_ids(meet)!r}")
    for e in h.incident_edges(v):
        if h.is_loop(e):
            raise InputError(f"loop {e!r} at the curling vertex")
        if e not in covered:
            raise InputError(f"edge {e!r} at the curling vertex lies in no piece")
    if strict and not is_k_connected(h, 2):
        raise InputError("strict curlings need a 2-connected graph")


def is_simple(c: CurlingSpec) -> bool:
    """Every edge of every piece joins ``v`` to that piece's ``v_i``."""
    return all(set(c.h.ends(e)) == {c.v, vi} for vi, es in c.attachments for e in es)


def make_curling(c: CurlingSpec, strict: bool = False) -> Witness:
    validate_curling(c, strict)
    h, v = c.h, c.v
    owner = {e: vi for vi, es in c.attachments for e in es}
    edges, sign = {}, {}
    for e, (a, b) in h.edges.items():
        if v in (a, b):
            u = b if a == v else a
            edges[e] = (u, owner[e])
            sign[e] = -1
        else:
            edges[e] = (a, b)
            sign[e] = 1
    gamma = MultiGraph(edges, vertices=h.vertices - {v})
    s = SignedGraph(gamma, sign)
    family = "simple_curling" if is_simple(c) else "curling"
    return Witness(family, from_signed(s), h, _identity(h), signed=s, info={"v": v, "attachments": c.attachments})


# -- pinch ---------------------------------------------------------------


@dataclass(frozen=True)
class PinchSpec:
    h: MultiGraph
    v1: object
    v2: object


def make_pinch(p: PinchSpec) -> Witness:
    h = p.h
    if p.v1 == p.v2:
        raise InputError("pinch vertices must be distinct")
    for x in (p.v1, p.v2):
        if x not in h.vertices:
            raise InputError(f"pinch vertex {x!r} is not in the graph")
    v = fresh_name("v", set(h.vertices))
    gamma = relabel(h, {p.v1: v, p.v2: v})
    s = SignedGraph(gamma, incidence_signs(h, {p.v1}))
    return Witness("pinch", from_signed(s), h, _identity(h), signed=s, info={"v": v})


def pinch_vertex_name(w: Witness):
    return w.info["v"]


# -- 4-twisting ------------------------------------------------------------


@dataclass(frozen=True)
class FourTwistingParts:
    parts: tuple  # four MultiGraphs; a part without edges is empty
    marked: tuple  # four (x_i, y_i, z_i) triples, or None for empty parts


def _mod(j: int, k: int) -> int:
    """Reduce an index into 1..k."""
    return (j - 1) % k + 1


def make_4_twisting(p: FourTwistingParts) -> Witness:
    if len(p.parts) != 4 or len(p.marked) != 4:
        raise InputError("a 4-twisting has exactly four parts")
    _check_parts(p.parts, p.marked, 3, allow_empty=True)
    live = [i for i in range(4) if p.parts[i].num_edges]
    taken = _all_vertex_names(p.parts[i] for i in live)
    w = {j: fresh_name(f"w{j}", taken) for j in range(1, 5)}
    gx, gy, gz = (fresh_name(n, taken) for n in ("x", "y", "z"))
    negated_role = {1: 0, 2: 1, 3: 2}  # x1, y2, z3
    h_pieces, g_pieces, sign = [], [], {}
    for i in live:
        q = i + 1
        part = p.parts[i]
        xq, yq, zq = p.marked[i]
        # w_j holds x_j, y_{3-j}, z_{j+2}
        h_pieces.append(relabel(part, {xq: w[q], yq: w[_mod(3 - q, 4)], zq: w[_mod(q - 2, 4)]}))
        g_pieces.append(relabel(part, {xq: gx, yq: gy, zq: gz}))
        neg = {p.marked[i][negated_role[q]]} if q in negated_role else set()
        sign.update(incidence_signs(part, neg))
    h = union(*h_pieces) if h_pieces else MultiGraph()
    gamma = union(*g_pieces) if g_pieces else MultiGraph()
    s = SignedGraph(gamma, sign)
    return Witness(
        "four_twisting", from_signed(s), h, _identity(h), signed=s,
        info={"x": gx, "y": gy, "z": gz, "w": w},
    )


# -- consecutive twisting ------------------------------------------------------


@dataclass(frozen=True)
class ConsecutiveTwistingParts:
    parts: tuple  # k MultiGraphs, k >= 3
    marked: tuple  # k (x_i, y_i, z_i) triples

    @property
    def k(self) -> int:
        return len(self.parts)


def _check_consecutive(p: ConsecutiveTwistingParts) -> None:
    if p.k < 3:
        raise InputError(f"a consecutive twisting needs k >= 3 parts, got {p.k}")
    if len(p.marked) != p.k:
        raise InputError("one mark triple per part is required")
    _check_parts(p.parts, p.marked, 3, allow_empty=False)


def make_consecutive_twisting(p: ConsecutiveTwistingParts) -> Witness:
    """Consecutive twisting; for even ``k`` the pair carries no F = M guarantee.

    The family tag is ``consecutive_odd_twisting`` for odd ``k`` and
    ``consecutive_twisting`` otherwise.
    """
    _check_consecutive(p)
    k = p.k
    taken = _all_vertex_names(p.parts)
    z = fresh_name("z", taken)
    w = {j: fresh_name(f"w{j}", taken) for j in range(1, k + 1)}
    u = {j: fresh_name(f"u{j}", taken) for j in range(1, k + 1)}
    h_pieces, g_pieces, sign = [], [], {}
    for i, part in enumerate(p.parts):
        q = i + 1
        xq, yq, zq = p.marked[i]
        # H: z_q -> z, w_j = {y_{j-1}, x_j}
        h_pieces.append(relabel(part, {zq: z, xq: w[q], yq: w[_mod(q + 1, k)]}))
        # Gamma: u_j = {y_{j-1}, z_j, x_{j+1}}
        g_pieces.append(relabel(part, {zq: u[q], yq: u[_mod(q + 1, k)], xq: u[_mod(q - 1, k)]}))
        neg = {yq} if q == 1 else {xq} if q == 2 else set()
        sign.update(incidence_signs(part, neg))
    h = union(*h_pieces)
    gamma = union(*g_pieces)
    s = SignedGraph(gamma, sign)
    family = "consecutive_odd_twisting" if k % 2 else "consecutive_twisting"
    return Witness(family, from_signed(s), h, _identity(h), signed=s, info={"z": z, "w": w, "u": u, "k": k})


def even_twisting_condition(p: ConsecutiveTwistingParts) -> bool:
    """For even ``k``: some part has no x_i-y_i path avoiding z_i."""
    _check_consecutive(p)
    if p.k % 2:
        raise InputError("the condition is defined for even k only")
    for part, (x, y, z) in zip(p.parts, p.marked):
        idx = part.index
        if not idx.has_path(idx.vid[x], idx.vid[y], idx.all_edges, avoid_vmask=1 << idx.vid[z]):
            return True
    return False


def cycles_connected_in_gamma(w: Witness) -> bool:
    """Does every cycle of ``h`` induce a connected subgraph of omega's graph?"""
    gi = w.omega.graph.index
    inv = {b: a for a, b in w.edge_map.items()}
    hidx = w.h.index
    for em, _ in hidx.cycles:
        cyc = [inv[e] for e in hidx.edges_of(em)]
        if not gi.connected(gi.emask(cyc)):
            return False
    return True


# -- converses --------------------------------------------------------------


class PinchSplit(NamedTuple):
    h: MultiGraph
    v1: object  # receives the -1 edges
    v2: object  # receives the +1 edges
    switching: object  # the switching applied before splitting


def pinch_split(s: SignedGraph, v) -> PinchSplit:
    """Undo a pinch at the blocking vertex ``v``.

    After switching so that every -1 edge meets ``v``, the vertex is split in
    two: -1 edges go to ``v1``, +1 edges to ``v2``; an unbalanced loop at
    ``v`` becomes a ``v1 v2`` edge and a balanced one stays a loop at ``v2``.
    """
    g = s.graph
    if v not in g.vertices:
        raise InputError(f"{v!r} is not a vertex")
    b = from_signed(s)
    if is_balanced(b):
        raise InputError("pinch_split needs an unbalanced signed graph")
    if v not in blocking_vertices(b):
        raise InputError(f"{v!r} is not a blocking vertex")
    away = [e for e, (a, c) in g.edges.items() if v not in (a, c)]
    rest = SignedGraph(MultiGraph({e: g.ends(e) for e in away}, vertices=g.vertices - {v}), {e: s.sign[e] for e in away})
    d = all_positive_switching(rest)
    if d is None:  # pragma: no cover - guarded by the blocking-vertex test
        raise InputError(f"deleting {v!r} does not leave a balanced graph")
    s2 = switch(s, d)
    taken = set(g.vertices)
    v1 = fresh_name(f"{v}.1", taken)
    v2 = fresh_name(f"{v}.2", taken)
    edges = {}
    for e, (a, c) in g.edges.items():
        if v not in (a, c):
            edges[e] = (a, c)
        elif a == c:
            edges[e] = (v1, v2) if s2.sign[e] < 0 else (v2, v2)
        else:
            other = c if a == v else a
            edges[e] = (v1 if s2.sign[e] < 0 else v2, other)
    h = MultiGraph(edges, vertices=(g.vertices - {v}) | {v1, v2})
    return PinchSplit(h, v1, v2, d)


def _block_cut_structure(g: MultiGraph):
    blocks, cuts = block_decomposition(g)
    bverts = [frozenset(x for e in blk for x in g.ends(e)) for blk in blocks]
    return blocks, cuts, bverts


def _side(blocks_verts, cuts, start: int, cut) -> set[int]:
    """Blocks reachable from block ``start`` in the block-cut tree without passing ``cut``."""
    seen = {start}
    frontier = [start]
    while frontier:
        i = frontier.pop()
        for c in blocks_verts[i] & cuts:
            if c == cut:
                continue
            for j, vs in enumerate(blocks_verts):
                if j not in seen and c in vs:
                    seen.add(j)
                    frontier.append(j)
    return seen


def multi_block_structure(b: BiasedGraph):
    """For a connected biased graph with several unbalanced blocks, pick for
    each unbalanced block a cut vertex ``v_i`` that blocks it and separates it
    from the other unbalanced blocks.

    Returns a list of ``(v_i, block_edges, side_edges)`` or None when the
    structure does not exist.  ``side_edges`` is the union of the blocks on
    the block's side of ``v_i``.
    """
    g = b.graph
    blocks, cuts, bverts = _block_cut_structure(g)
    unb = [i for i, blk in enumerate(blocks) if not is_balanced(b, blk)]
    if len(unb) < 2:
        return None
    out = []
    for i in unb:
        choice = None
        for c in sort_ids(bverts[i] & cuts):
            inner = [e for e in blocks[i] if c not in g.ends(e)]
            if not is_balanced(b, inner):
                continue
            side = _side(bverts, cuts, i, c)
            if any(j in side for j in unb if j != i):
                continue
            choice = (c, blocks[i], frozenset().union(*(blocks[j] for j in side)))
            break
        if choice is None:
            return None
        out.append(choice)
    return out


def curling_decompose(s: SignedGraph) -> Witness:
    """Rebuild a graph H with F(s) = M(H) when ``s`` has several unbalanced
    blocks, each blocked by a cut vertex separating it from the others.

    Each such side is pinch-split at its cut vertex ``v_i``; the halves are
    glued back with the ``v_i``-copy at ``v_i`` and every ``-1``-copy at one
    new vertex ``v``.  Sides sharing a cut vertex form one piece.
    """
    g = s.graph
    b = from_signed(s)
    if not g.index.connected(g.index.all_edges) or g.isolated_vertices() and g.num_edges:
        raise InputError("curling_decompose needs a connected graph")
    structure = multi_block_structure(b)
    if structure is None:
        raise InputError("graph does not have several separated, blocked unbalanced blocks")
    merged: dict = {}
    for c, _, side in structure:
        merged.setdefault(c, set()).update(side)
    v = fresh_name("v", set(g.vertices))
    used = set().union(*merged.values())
    pieces = [restrict(g, [e for e in g.edges if e not in used])]
    attachments, splits = [], []
    for c in sort_ids(merged):
        side = merged[c]
        split = pinch_split(restrict_signed(s, side), c)
        pieces.append(relabel(split.h, {split.v1: v, split.v2: c}))
        attachments.append((c, frozenset(side)))
        splits.append((c, split))
    h = union(*pieces)
    spec = CurlingSpec(h, v, tuple(attachments))
    family = "simple_curling" if is_simple(spec) else "curling"
    return Witness(family, b, h, _identity(h), signed=s, info={"v": v, "attachments": spec.attachments, "splits": splits})
