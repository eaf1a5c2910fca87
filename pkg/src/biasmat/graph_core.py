"""Finite multigraphs (loops and parallel edges allowed) and the graph routines
the rest of the package is built on.

Edge and vertex identifiers are opaque hashable tokens (normally strings).
Internally every graph carries a lazily built index that maps edges and
vertices to bit positions, so edge sets and vertex sets can be handled as
Python ints.  Bit ``j`` of an edge mask is the ``j``-th edge in canonical
(sorted) order.
"""
from __future__ import annotations

import re
from collections.abc import Hashable, Iterable, Mapping
from functools import cached_property
from types import MappingProxyType

from .errors import InputError

Vertex = Hashable
EdgeId = Hashable
Cycle = frozenset  # frozenset of EdgeId

_DIGITS = re.compile(r"(\d+)")


def order_key(x):
    """Total order over the identifier types we accept; strings sort naturally (e2 < e10)."""
    if isinstance(x, bool):
        return (0, int(x), "")
    if isinstance(x, int):
        return (0, x, "")
    if isinstance(x, str):
        parts = _DIGITS.split(x)
        return (1, tuple(int(p) if i % 2 else p for i, p in enumerate(parts)), x)
    if isinstance(x, tuple):
        return (2, tuple(order_key(y) for y in x), "")
    return (3, repr(x), "")


def sort_ids(items: Iterable) -> list:
    return sorted(items, key=order_key)


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits(x: int):
    """Indices of the set bits of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


class _Index:
    """Bit-position tables for one graph; built once and shared by all routines."""

    def __init__(self, g: MultiGraph):
        self.vlist = sort_ids(g.vertices)
        self.vid = {v: i for i, v in enumerate(self.vlist)}
        self.elist = sort_ids(g.edges)
        self.eid = {e: j for j, e in enumerate(self.elist)}
        self.ends = []
        self.adj = [[] for _ in self.vlist]
        self.loops = 0
        for j, e in enumerate(self.elist):
            u, v = g.edges[e]
            a, b = self.vid[u], self.vid[v]
            self.ends.append((a, b))
            if a == b:
                self.loops |= 1 << j
                self.adj[a].append((j, a))
            else:
                self.adj[a].append((j, b))
                self.adj[b].append((j, a))
        self.all_edges = (1 << len(self.elist)) - 1
        # vertex-incidence mask of each edge
        self.evmask = [(1 << a) | (1 << b) for a, b in self.ends]
        self.incident = [0] * len(self.vlist)
        for j, (a, b) in enumerate(self.ends):
            self.incident[a] |= 1 << j
            self.incident[b] |= 1 << j

    def vmask(self, emask: int) -> int:
        out = 0
        ev = self.evmask
        for j in bits(emask):
            out |= ev[j]
        return out

    def emask(self, edges: Iterable) -> int:
        out = 0
        try:
            for e in edges:
                out |= 1 << self.eid[e]
        except KeyError as exc:
            raise InputError(f"unknown edge id {exc.args[0]!r}") from None
        return out

    def edges_of(self, emask: int) -> frozenset:
        el = self.elist
        return frozenset(el[j] for j in bits(emask))

    def vertices_of(self, vmask: int) -> frozenset:
        vl = self.vlist
        return frozenset(vl[i] for i in bits(vmask))

    @cached_property
    def cycles(self) -> list[tuple[int, int]]:
        """Every cycle as ``(edge_mask, vertex_mask)``, canonical order."""
        out = []
        for j in bits(self.loops):
            out.append((1 << j, self.evmask[j]))
        adj = self.adj
        for j, (a, b) in enumerate(self.ends):
            if a == b:
                continue
            # cycles whose smallest edge is j: paths a -> b over edges > j
            stack = [(a, 1 << a, 0)]
            while stack:
                x, vis, em = stack.pop()
                for k, y in adj[x]:
                    if k <= j or y == x:
                        continue
                    if y == b:
                        out.append((em | (1 << k) | (1 << j), vis | (1 << b)))
                    elif not (vis >> y) & 1:
                        stack.append((y, vis | (1 << y), em | (1 << k)))
        out.sort(key=lambda c: (popcount(c[0]), list(bits(c[0]))))
        return out

    @cached_property
    def cycle_lookup(self) -> dict[int, int]:
        return {em: i for i, (em, _) in enumerate(self.cycles)}

    @cached_property
    def thetas(self) -> list[tuple[int, tuple[int, int, int]]]:
        """Every theta as ``(edge_mask, (i, j, k))`` with i < j < k its three cycle indices."""
        cyc = self.cycles
        look = self.cycle_lookup
        found = {}
        for i in range(len(cyc)):
            e1, v1 = cyc[i]
            for k in range(i + 1, len(cyc)):
                e2, v2 = cyc[k]
                if not e1 & e2:
                    continue
                em = e1 | e2
                if em not in found and popcount(em) == popcount(v1 | v2) + 1:
                    found[em] = tuple(sorted((i, k, look[e1 ^ e2])))
        return sorted(found.items(), key=lambda t: (popcount(t[0]), list(bits(t[0]))))

    def components(self, emask: int | None = None) -> list[tuple[int, int]]:
        """Connected components as ``(vertex_mask, edge_mask)``.

        With ``emask`` given, the components of the restriction to those edges
        (no isolated vertices); otherwise of the whole graph.
        """
        if emask is None:
            emask = self.all_edges
            todo = (1 << len(self.vlist)) - 1
        else:
            todo = self.vmask(emask)
        out = []
        while todo:
            start = (todo & -todo).bit_length() - 1
            vm, em = 1 << start, 0
            frontier = [start]
            while frontier:
                x = frontier.pop()
                for k, y in self.adj[x]:
                    if not (emask >> k) & 1:
                        continue
                    em |= 1 << k
                    if not (vm >> y) & 1:
                        vm |= 1 << y
                        frontier.append(y)
            out.append((vm, em))
            todo &= ~vm
        return out

    def connected(self, emask: int) -> bool:
        return emask == 0 or len(self.components(emask)) == 1

    def has_path(self, a: int, b: int, emask: int, avoid_vmask: int = 0) -> bool:
        """Is there an a-b path using edges in ``emask`` whose vertices avoid ``avoid_vmask``?"""
        if a == b:
            return True
        seen = (1 << a) | avoid_vmask
        frontier = [a]
        while frontier:
            x = frontier.pop()
            for k, y in self.adj[x]:
                if not (emask >> k) & 1 or (seen >> y) & 1:
                    continue
                if y == b:
                    return True
                seen |= 1 << y
                frontier.append(y)
        return False

    def paths(self, sources: int, targets: int, emask: int, avoid_vmask: int = 0):
        """All paths starting at a vertex of ``sources`` and ending at a vertex of
        ``targets``, meeting each set only at their ends and avoiding ``avoid_vmask``.

        Yields ``(edge_mask, start, end)``.
        """
        blocked = sources | targets | avoid_vmask
        for s in bits(sources):
            stack = [(s, 1 << s, 0)]
            while stack:
                x, vis, em = stack.pop()
                for k, y in self.adj[x]:
                    if not (emask >> k) & 1 or y == x:
                        continue
                    if (targets >> y) & 1:
                        yield em | (1 << k), s, y
                    elif not (blocked >> y) & 1 and not (vis >> y) & 1:
                        stack.append((y, vis | (1 << y), em | (1 << k)))


class MultiGraph:
    """Finite multigraph with stable edge identities.

    ``edges`` is either a mapping ``edge_id -> (u, v)`` or an iterable of
    ``(edge_id, u, v)`` triples; ``u == v`` makes a loop.  When ``vertices`` is
    omitted it is the set of edge endpoints; when given it must contain them.
    """

    def __init__(self, edges=(), vertices: Iterable | None = None):
        if isinstance(edges, Mapping):
            items = [(e, uv[0], uv[1]) for e, uv in edges.items()]
        else:
            items = [tuple(t) for t in edges]
        emap: dict = {}
        ends = set()
        for item in items:
            if len(item) != 3:
                raise InputError(f"edge must be (id, u, v), got {item!r}")
            e, u, v = item
            if e in emap:
                raise InputError(f"duplicate edge id {e!r}")
            if order_key(v) < order_key(u):
                u, v = v, u
            emap[e] = (u, v)
            ends.update((u, v))
        if vertices is None:
            vset = frozenset(ends)
        else:
            vset = frozenset(vertices)
            missing = ends - vset
            if missing:
                raise InputError(f"edge endpoints not declared as vertices: {sort_ids(missing)!r}")
        self._edges = emap
        self._vertices = vset

    @property
    def vertices(self) -> frozenset:
        return self._vertices

    @property
    def edges(self) -> Mapping:
        return MappingProxyType(self._edges)

    @cached_property
    def index(self) -> _Index:
        return _Index(self)

    @property
    def edge_ids(self) -> list:
        return list(self.index.elist)

    @property
    def vertex_ids(self) -> list:
        return list(self.index.vlist)

    def ends(self, e) -> tuple:
        return self._edges[e]

    def is_loop(self, e) -> bool:
        u, v = self._edges[e]
        return u == v

    def incident_edges(self, v) -> frozenset:
        return frozenset(e for e, (a, b) in self._edges.items() if a == v or b == v)

    def degree(self, v) -> int:
        return sum((a == v) + (b == v) for a, b in self._edges.values())

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    @property
    def num_vertices(self) -> int:
        return len(self._vertices)

    def isolated_vertices(self) -> frozenset:
        used = {x for uv in self._edges.values() for x in uv}
        return self._vertices - used

    def triples(self) -> list:
        """Edges as sorted ``(id, u, v)`` triples."""
        return [(e, *self._edges[e]) for e in self.index.elist]

    def __eq__(self, other):
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self):
        return hash((self._vertices, frozenset(self._edges.items())))

    def __repr__(self):
        es = ", ".join(f"{e}:{u}-{v}" for e, u, v in self.triples())
        iso = sort_ids(self.isolated_vertices())
        extra = f"; isolated {iso}" if iso else ""
        return f"MultiGraph([{es}]{extra})"


def is_cycle(g: MultiGraph, edges: Iterable) -> bool:
    """Connected, nonempty, every vertex of degree exactly 2 (a loop counts 2)."""
    idx = g.index
    em = idx.emask(edges)
    if not em:
        return False
    deg = {}
    for j in bits(em):
        a, b = idx.ends[j]
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    return all(d == 2 for d in deg.values()) and idx.connected(em)


def restrict(g: MultiGraph, y: Iterable) -> MultiGraph:
    """``g|y``: the subgraph with edge set ``y`` and no isolated vertices."""
    y = set(y)
    unknown = [e for e in y if e not in g.edges]
    if unknown:
        raise InputError(f"unknown edge ids {sort_ids(unknown)!r}")
    return MultiGraph({e: g.ends(e) for e in y})


def vertices_of(g: MultiGraph, edges: Iterable) -> frozenset:
    return frozenset(x for e in edges for x in g.ends(e))


def delete_vertices(g: MultiGraph, vs: Iterable) -> MultiGraph:
    """``g \\ X``: drop the vertices and every edge meeting them."""
    vs = set(vs)
    keep = {e: uv for e, uv in g.edges.items() if uv[0] not in vs and uv[1] not in vs}
    return MultiGraph(keep, vertices=g.vertices - vs)


def enumerate_cycles(g: MultiGraph) -> list[Cycle]:
    """Every cycle of ``g`` exactly once, as an edge set (loops and digons included)."""
    idx = g.index
    return [idx.edges_of(em) for em, _ in idx.cycles]


def enumerate_thetas(g: MultiGraph) -> list[frozenset]:
    """Every theta subgraph of ``g`` as an edge set.

    A theta is the union of two cycles meeting in a single path with at least
    one edge; equivalently a connected union of two edge-intersecting cycles
    with |E| = |V| + 1.
    """
    idx = g.index
    return [idx.edges_of(em) for em, _ in idx.thetas]


def components(g: MultiGraph) -> list[tuple[frozenset, frozenset]]:
    """Connected components as ``(vertices, edges)``; isolated vertices are their own components."""
    idx = g.index
    return [(idx.vertices_of(vm), idx.edges_of(em)) for vm, em in idx.components()]


def is_connected(g: MultiGraph) -> bool:
    return len(g.index.components()) <= 1


def block_decomposition(g: MultiGraph) -> tuple[list[frozenset], frozenset]:
    """Blocks (as edge sets) and the vertices lying in more than one block.

    Loops are blocks of their own, as are bridges.  Isolated vertices belong
    to no block.
    """
    idx = g.index
    n = len(idx.vlist)
    disc = [-1] * n
    low = [0] * n
    blocks: list[int] = []
    counter = [0]
    estack: list[int] = []

    def dfs(x: int, parent_edge: int):
        disc[x] = low[x] = counter[0]
        counter[0] += 1
        for k, y in idx.adj[x]:
            if k == parent_edge or y == x:
                continue
            if disc[y] == -1:
                estack.append(k)
                dfs(y, k)
                low[x] = min(low[x], low[y])
                if low[y] >= disc[x]:
                    bm = 0
                    while True:
                        t = estack.pop()
                        bm |= 1 << t
                        if t == k:
                            break
                    blocks.append(bm)
            elif disc[y] < disc[x]:
                estack.append(k)
                low[x] = min(low[x], disc[y])

    for s in range(n):
        if disc[s] == -1:
            dfs(s, -1)
    for j in bits(idx.loops):
        blocks.append(1 << j)
    blocks.sort(key=lambda m: (m & -m).bit_length())
    membership = [0] * n
    for bm in blocks:
        for i in bits(idx.vmask(bm)):
            membership[i] += 1
    cuts = frozenset(idx.vlist[i] for i in range(n) if membership[i] >= 2)
    return [idx.edges_of(bm) for bm in blocks], cuts


def _simple_nx(g: MultiGraph):
    import networkx as nx

    h = nx.Graph()
    h.add_nodes_from(range(len(g.index.vlist)))
    h.add_edges_from((a, b) for a, b in g.index.ends if a != b)
    return h


def connectivity(g: MultiGraph) -> int:
    """Vertex connectivity of the underlying simple graph (K_n gives n - 1)."""
    import networkx as nx

    if g.num_vertices <= 1:
        return 0
    return nx.node_connectivity(_simple_nx(g))


def is_k_connected(g: MultiGraph, k: int) -> bool:
    return g.num_vertices >= k + 1 and connectivity(g) >= k


def relabel(g: MultiGraph, mapping: Mapping, *, keep_isolated: bool = True) -> MultiGraph:
    """Rename (possibly merge) vertices; unmapped vertices keep their names.

    Merging two vertices identifies them; an edge between them becomes a loop.
    """
    f = lambda x: mapping.get(x, x)  # noqa: E731
    edges = {e: (f(u), f(v)) for e, (u, v) in g.edges.items()}
    verts = {f(x) for x in g.vertices} if keep_isolated else None
    return MultiGraph(edges, vertices=verts)


def union(*graphs: MultiGraph) -> MultiGraph:
    """Union of graphs on disjoint edge sets; shared vertex names are glued."""
    edges: dict = {}
    verts: set = set()
    for h in graphs:
        for e, uv in h.edges.items():
            if e in edges:
                raise InputError(f"edge id {e!r} occurs in two graphs")
            edges[e] = uv
        verts |= h.vertices
    return MultiGraph(edges, vertices=verts)


def fresh_name(base: str, taken: set) -> str:
    """``base`` if unused, else ``base'``, ``base''``, ...; the result is added to ``taken``."""
    name = base
    while name in taken:
        name += "'"
    taken.add(name)
    return name


def connected_in(other: MultiGraph, edges: Iterable) -> bool:
    """Is ``other|edges`` connected?  Used to ask whether a cycle of one graph stays connected in another."""
    oi = other.index
    return oi.connected(oi.emask(edges))


# -- unlabeled canonical form -------------------------------------------------


def _refine(n: int, A: list[list[int]], colors: list[int]) -> list[int]:
    while True:
        sigs = [
            (colors[v], tuple(sorted((colors[u], A[v][u]) for u in range(n) if u != v and A[v][u])))
            for v in range(n)
        ]
        ranks = {s: r for r, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(ranks) == len(set(colors)):
            return new
        colors = new


def _canon_connected(n: int, A: list[list[int]]) -> tuple:
    init = [(A[v][v], sum(A[v]) + A[v][v]) for v in range(n)]
    ranks = {s: r for r, s in enumerate(sorted(set(init)))}
    best = [None]

    def search(colors):
        colors = _refine(n, A, colors)
        if len(set(colors)) == n:
            perm = sorted(range(n), key=lambda v: colors[v])
            enc = tuple(A[perm[i]][perm[j]] for i in range(n) for j in range(i, n))
            if best[0] is None or enc < best[0]:
                best[0] = enc
            return
        counts: dict[int, int] = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        target = min(c for c, k in counts.items() if k > 1)
        for v in range(n):
            if colors[v] == target:
                search([2 * c - (1 if u == v else 0) for u, c in enumerate(colors)])

    search([ranks[s] for s in init])
    return (n, best[0])


def canonical_form(g: MultiGraph) -> tuple:
    """Isomorphism invariant that is complete for unlabeled multigraphs.

    Two graphs are isomorphic (ignoring vertex and edge names) iff their
    canonical forms are equal.  Exponential in the worst case; intended for
    the small graphs this package works with.
    """
    idx = g.index
    out = []
    for vm, em in idx.components():
        vs = list(bits(vm))
        pos = {v: i for i, v in enumerate(vs)}
        n = len(vs)
        A = [[0] * n for _ in range(n)]
        for j in bits(em):
            a, b = idx.ends[j]
            if a == b:
                A[pos[a]][pos[a]] += 1
            else:
                A[pos[a]][pos[b]] += 1
                A[pos[b]][pos[a]] += 1
        out.append(_canon_connected(n, A))
    return tuple(sorted(out))
