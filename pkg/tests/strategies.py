"""Hypothesis strategies and brute-force oracles shared by the tests."""
from functools import lru_cache
from itertools import combinations

from hypothesis import strategies as st

from biasmat.biased import BiasedGraph, SignedGraph
from biasmat.graph_core import MultiGraph


@st.composite
def multigraphs(draw, max_vertices=5, max_edges=8, min_edges=0, loops=True):
    n = draw(st.integers(1, max_vertices))
    pair = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
    if not loops:
        pair = pair.filter(lambda p: p[0] != p[1]) if n > 1 else st.nothing()
    edges = draw(st.lists(pair, min_size=min_edges if n > 1 or loops else 0, max_size=max_edges if n > 1 or loops else 0))
    return MultiGraph({f"e{i + 1}": e for i, e in enumerate(edges)}, vertices=range(n))


@st.composite
def signed_graphs(draw, **kw):
    g = draw(multigraphs(**kw))
    signs = draw(st.lists(st.sampled_from((1, -1)), min_size=g.num_edges, max_size=g.num_edges))
    return SignedGraph(g, dict(zip(g.edge_ids, signs)))


def degree_in(g, edges):
    deg = {}
    for e in edges:
        a, b = g.ends(e)
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    return deg


def connected_edges(g, edges):
    edges = list(edges)
    if not edges:
        return True
    seen = {g.ends(edges[0])[0]}
    changed = True
    while changed:
        changed = False
        for e in edges:
            a, b = g.ends(e)
            if (a in seen) != (b in seen):
                seen |= {a, b}
                changed = True
    return all(g.ends(e)[0] in seen for e in edges)


def subsets(items):
    items = list(items)
    for r in range(len(items) + 1):
        yield from (frozenset(c) for c in combinations(items, r))


@lru_cache(maxsize=256)
def brute_cycles(g):
    """Nonempty connected edge sets where every vertex has degree 2."""
    return frozenset(
        s for s in subsets(g.edges)
        if s and connected_edges(g, s) and all(d == 2 for d in degree_in(g, s).values())
    )


def brute_thetas(g):
    """Loopless connected edge sets with two degree-3 vertices, the rest degree 2."""
    out = set()
    for s in subsets(g.edges):
        if not s or any(g.is_loop(e) for e in s) or not connected_edges(g, s):
            continue
        deg = degree_in(g, s)
        degs = sorted(deg.values())
        if degs.count(3) != 2 or not all(d in (2, 3) for d in degs):
            continue
        # a handcuff has the same degrees; a theta survives deleting either branch vertex
        branch = [v for v, d in deg.items() if d == 3]
        if all(_connected_avoiding(g, s, x) for x in branch):
            out.add(s)
    return out


def _connected_avoiding(g, edges, x):
    rest = {v for e in edges for v in g.ends(e)} - {x}
    keep = [e for e in edges if x not in g.ends(e)]
    if not rest:
        return True
    seen = {next(iter(rest))}
    changed = True
    while changed:
        changed = False
        for e in keep:
            a, b = g.ends(e)
            if (a in seen) != (b in seen):
                seen |= {a, b}
                changed = True
    return seen == rest


def _components(g, edges):
    """Edge sets of connected components of g|edges."""
    edges = set(edges)
    out = []
    while edges:
        e = edges.pop()
        comp = {e}
        verts = set(g.ends(e))
        grew = True
        while grew:
            grew = False
            for f in list(edges):
                if set(g.ends(f)) & verts:
                    edges.discard(f)
                    comp.add(f)
                    verts |= set(g.ends(f))
                    grew = True
        out.append((comp, verts))
    return out


def frame_rank(b: BiasedGraph, x) -> int:
    """|V(X)| minus the number of balanced components of X."""
    g = b.graph
    cycles = brute_cycles(g)
    total = 0
    for comp, verts in _components(g, x):
        balanced = all(c in b.balanced for c in cycles if c <= comp)
        total += len(verts) - (1 if balanced else 0)
    return total


def lift_rank(b: BiasedGraph, x) -> int:
    """|V(X)| - c(X), plus one when X contains an unbalanced cycle."""
    g = b.graph
    comps = _components(g, x)
    base = sum(len(v) - 1 for _, v in comps)
    cycles = brute_cycles(g)
    unbalanced = any(c <= set(x) and c not in b.balanced for c in cycles)
    return base + (1 if unbalanced else 0)


def circuits_from_rank(ground, rank):
    """Minimal dependent sets of a rank function."""
    dep = [s for s in subsets(ground) if rank(s) < len(s)]
    dep.sort(key=len)
    out = []
    for s in dep:
        if not any(c <= s for c in out):
            out.append(s)
    return frozenset(out)
