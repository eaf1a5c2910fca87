"""Random and exhaustive instance generators for tests and the acceptance suite.

All random generators take a ``random.Random`` so runs are reproducible from
a seed.  Edge ids are ``e1, e2, ...`` unless a prefix is given.
"""
from __future__ import annotations

import random
from collections.abc import Iterator, Sequence

from .biased import BiasedGraph, SignedGraph, Switching, from_signed, find_theta_violation
from .families import (
    ConsecutiveTwistingParts,
    CurlingSpec,
    FatThetaParts,
    FourTwistingParts,
    PinchSpec,
    make_fat_theta,
)
from .graph_core import MultiGraph, canonical_form, is_k_connected


def random_graph(rng: random.Random, vertices: Sequence, m: int, loops: float = 0.1,
                 prefix: str = "e", connected: bool = False, start: int = 1) -> MultiGraph:
    """``m`` random edges on ``vertices``; with ``connected`` a spanning tree comes first."""
    vs = list(vertices)
    edges = []
    if connected and len(vs) > 1:
        order = vs[:]
        rng.shuffle(order)
        for i in range(1, len(order)):
            edges.append((order[i], rng.choice(order[:i])))
    while len(edges) < m:
        a = rng.choice(vs)
        if len(vs) > 1 and rng.random() >= loops:
            b = rng.choice([x for x in vs if x != a])
        else:
            b = a
        edges.append((a, b))
    return MultiGraph({f"{prefix}{i + start}": e for i, e in enumerate(edges)}, vertices=vs)


def random_connected_graph(rng: random.Random, n: int, m: int, loops: float = 0.1, prefix: str = "e") -> MultiGraph:
    m = max(m, n - 1)
    return random_graph(rng, range(n), m, loops=loops, prefix=prefix, connected=True)


def random_2_connected_graph(rng: random.Random, n: int, m: int, tries: int = 200) -> MultiGraph:
    """A loopless 2-connected graph (by rejection on random connected graphs)."""
    m = max(m, n)
    for _ in range(tries):
        g = random_connected_graph(rng, n, m, loops=0.0)
        if is_k_connected(g, 2):
            return g
    # a cycle with chords is always 2-connected
    edges = [(i, (i + 1) % n) for i in range(n)]
    while len(edges) < m:
        edges.append(tuple(rng.sample(range(n), 2)))
    return MultiGraph({f"e{i + 1}": e for i, e in enumerate(edges)})


def random_signing(rng: random.Random, g: MultiGraph, p_neg: float = 0.5) -> SignedGraph:
    return SignedGraph(g, {e: -1 if rng.random() < p_neg else 1 for e in g.edges})


def random_switching(rng: random.Random, g: MultiGraph) -> Switching:
    return Switching(v for v in g.vertices if rng.random() < 0.5)


def random_balanced_signing(rng: random.Random, g: MultiGraph) -> SignedGraph:
    """A switching of the all-positive signing."""
    neg = {v for v in g.vertices if rng.random() < 0.5}
    return SignedGraph(g, {e: (-1) ** ((a in neg) + (b in neg)) for e, (a, b) in g.edges.items()})


def theta_repair(rng: random.Random, g: MultiGraph, masks: set[int]) -> BiasedGraph:
    """Drop balanced cycles until no theta has exactly two balanced cycles."""
    masks = set(masks)
    while True:
        b = BiasedGraph._from_masks(g, masks)
        bad = find_theta_violation(b)
        if bad is None:
            return b
        idx = g.index
        inside = [em for em in masks if em & idx.emask(bad) == em]
        masks.discard(rng.choice(sorted(inside)))


def random_biased_graph(rng: random.Random, max_edges: int = 8) -> BiasedGraph:
    """A theta-valid biased graph from a mixture of sources."""
    kind = rng.random()
    m = rng.randint(1, max_edges)
    n = rng.randint(1, max(1, min(m + 1, 6)))
    g = random_graph(rng, range(n), m, loops=0.15, connected=rng.random() < 0.7)
    if kind < 0.35:
        return from_signed(random_signing(rng, g, rng.choice((0.2, 0.5, 0.8))))
    if kind < 0.45:
        return BiasedGraph.contrabalanced(g) if rng.random() < 0.5 else BiasedGraph.all_balanced(g)
    if kind < 0.6 and max_edges >= 3:
        return make_fat_theta(random_fat_theta_parts(rng, max_edges)).omega
    cyc = [em for em, _ in g.index.cycles]
    p = rng.random()
    return theta_repair(rng, g, {em for em in cyc if rng.random() < p})


# -- family instances -----------------------------------------------------------


def _split_budget(rng: random.Random, total: int, parts: int, minimum: int = 0) -> list[int]:
    out = [minimum] * parts
    for _ in range(total - minimum * parts):
        out[rng.randrange(parts)] += 1
    return out


def _part(rng: random.Random, tag: str, marks: Sequence[str], m: int, extra: int, loops: float = 0.1) -> MultiGraph:
    vs = list(marks) + [f"{tag}v{j}" for j in range(extra)]
    return random_graph(rng, vs, m, loops=loops, prefix=f"{tag}e", connected=rng.random() < 0.5 and m >= len(vs) - 1)


def random_fat_theta_parts(rng: random.Random, max_edges: int = 12) -> FatThetaParts:
    total = rng.randint(3, max(3, max_edges))
    sizes = _split_budget(rng, total, 3, minimum=1)
    parts, marked = [], []
    for i, m in enumerate(sizes):
        tag = f"F{i + 1}"
        marks = (f"{tag}x", f"{tag}y")
        parts.append(_part(rng, tag, marks, m, rng.randint(0, 2)))
        marked.append(marks)
    return FatThetaParts(tuple(parts), tuple(marked))


def random_pinch_spec(rng: random.Random, max_edges: int = 12) -> PinchSpec:
    m = rng.randint(1, max_edges)
    n = rng.randint(2, max(2, min(7, m + 1)))
    g = random_graph(rng, range(n), m, loops=0.1, connected=rng.random() < 0.7)
    v1, v2 = rng.sample(range(n), 2)
    return PinchSpec(g, v1, v2)


def random_curling_spec(rng: random.Random, max_edges: int = 12) -> CurlingSpec:
    """Pieces through ``v`` and ``a_i`` plus a rest graph avoiding ``v``."""
    while True:
        spec = _curling_attempt(rng, max_edges)
        if spec.h.num_edges <= max_edges:
            return spec


def _curling_attempt(rng: random.Random, max_edges: int) -> CurlingSpec:
    k = rng.randint(1, max(1, min(3, max_edges // 2)))
    rest_m = rng.randint(0, max(0, max_edges - 2 * k))
    sizes = _split_budget(rng, max(max_edges - rest_m, 2 * k), k, minimum=2)
    edges, count = {}, 0

    def add(a, b):
        nonlocal count
        count += 1
        edges[f"e{count}"] = (a, b)

    attachments = []
    for i, m in enumerate(sizes):
        vi = f"a{i + 1}"
        internal = [f"p{i + 1}.{j}" for j in range(rng.randint(0, min(2, m - 1)))]
        vs = ["v", vi] + internal
        start = count
        # connected: walk v -> internals -> vi, then random edges without loops at v
        chain = ["v"] + internal + [vi]
        for a, b in zip(chain, chain[1:]):
            add(a, b)
        while count - start < m:
            a, b = rng.choice(vs), rng.choice(vs)
            if a == "v" and b == "v":
                b = vi
            add(a, b)
        attachments.append((vi, frozenset(f"e{j}" for j in range(start + 1, count + 1))))
    anchors = [vi for vi, _ in attachments]
    rest_vs = anchors + [f"r{j}" for j in range(rng.randint(0, 2))]
    for _ in range(rest_m):
        add(rng.choice(rest_vs), rng.choice(rest_vs))
    return CurlingSpec(MultiGraph(edges), "v", tuple(attachments))


def random_four_twisting_parts(rng: random.Random, max_edges: int = 12, p_empty: float = 0.15) -> FourTwistingParts:
    live = [rng.random() >= p_empty for _ in range(4)]
    if not any(live):
        live[rng.randrange(4)] = True
    total = rng.randint(sum(live), max(sum(live), max_edges))
    sizes = _split_budget(rng, total, sum(live), minimum=1)
    parts, marked = [], []
    it = iter(sizes)
    for i in range(4):
        tag = f"T{i + 1}"
        if not live[i]:
            parts.append(MultiGraph())
            marked.append(None)
            continue
        marks = (f"{tag}x", f"{tag}y", f"{tag}z")
        parts.append(_part(rng, tag, marks, next(it), rng.randint(0, 1)))
        marked.append(marks)
    return FourTwistingParts(tuple(parts), tuple(marked))


def random_consecutive_parts(rng: random.Random, k: int, max_edges: int = 12,
                             path_bias: float | None = None) -> ConsecutiveTwistingParts:
    """Random parts; ``path_bias`` is the chance of adding an x-y edge to a part."""
    total = rng.randint(k, max(k, max_edges))
    sizes = _split_budget(rng, total, k, minimum=1)
    parts, marked = [], []
    for i, m in enumerate(sizes):
        tag = f"C{i + 1}"
        marks = (f"{tag}x", f"{tag}y", f"{tag}z")
        p = _part(rng, tag, marks, m, rng.randint(0, 1))
        if path_bias is not None and rng.random() < path_bias:
            p = MultiGraph({**p.edges, f"{tag}xy": (marks[0], marks[1])}, vertices=p.vertices)
        parts.append(p)
        marked.append(marks)
    return ConsecutiveTwistingParts(tuple(parts), tuple(marked))


# -- exhaustive enumeration -----------------------------------------------------


def _augment(g: MultiGraph, name: str, connected: bool) -> Iterator[MultiGraph]:
    vs = sorted(g.vertices)
    n = len(vs)
    pairs = [(a, b) for i, a in enumerate(vs) for b in vs[i:]]
    pairs += [(a, n) for a in vs] if vs else []
    if not vs or not connected:
        pairs += [(n, n), (n, n + 1)]
    for a, b in pairs:
        edges = dict(g.edges)
        edges[name] = (a, b)
        yield MultiGraph(edges)


def _relabel_int(g: MultiGraph) -> MultiGraph:
    order = {v: i for i, v in enumerate(sorted(g.vertices))}
    return MultiGraph({f"e{i + 1}": (order[a], order[b]) for i, (a, b) in enumerate(g.edges.values())})


def multigraphs_up_to_iso(max_edges: int, connected: bool = False) -> dict[int, list[MultiGraph]]:
    """Multigraphs without isolated vertices, one per isomorphism class, by
    edge count (``connected`` keeps only connected ones).  Loops and
    parallel edges are included."""
    layers = {0: [MultiGraph()]}
    for m in range(1, max_edges + 1):
        seen: dict = {}
        for g in layers[m - 1]:
            for h in _augment(g, f"e{m}", connected):
                key = canonical_form(h)
                if key not in seen:
                    seen[key] = _relabel_int(h)
        layers[m] = sorted(seen.values(), key=lambda h: (h.num_vertices, canonical_form(h)))
    return layers


def theta_valid_families(g: MultiGraph) -> Iterator[BiasedGraph]:
    """Every balanced family on ``g`` satisfying the theta property."""
    cyc = [em for em, _ in g.index.cycles]
    thetas = g.index.thetas
    for pick in range(1 << len(cyc)):
        chosen = {cyc[i] for i in range(len(cyc)) if (pick >> i) & 1}
        ok = True
        for _, (i, j, k) in thetas:
            if ((cyc[i] in chosen) + (cyc[j] in chosen) + (cyc[k] in chosen)) == 2:
                ok = False
                break
        if ok:
            yield BiasedGraph._from_masks(g, chosen)
