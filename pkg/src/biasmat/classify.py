"""Binarity forms of biased graphs and a certified search for graphic witnesses.

:func:`zaslavsky_form` reports, per connected component, which of the four
binary forms it has (balanced, fat theta, several separated unbalanced
blocks, one unbalanced block without disjoint unbalanced cycles).
:func:`find_graphic_witness` turns a form into a graph ``H`` with
``F(omega) = M(H)`` and re-verifies every witness against the circuit
oracles before returning it.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .biased import (
    BiasedGraph,
    SignedGraph,
    blocking_vertices,
    from_signed,
    has_two_vertex_disjoint_unbalanced_cycles,
    is_balanced,
    require_theta_property,
    restrict_biased,
    signed_representability,
)
from .budget import Budget, resolve
from .errors import BudgetError, InternalError
from .families import (
    ConsecutiveTwistingParts,
    FatThetaParts,
    FourTwistingParts,
    Witness,
    curling_decompose,
    make_4_twisting,
    make_balanced,
    make_consecutive_twisting,
    make_fat_theta,
    multi_block_structure,
    pinch_split,
)
from .graph_core import MultiGraph, block_decomposition, bits, fresh_name, popcount, relabel, restrict, sort_ids, union
from .matroid import find_u24_minor, frame_matroid

# -- forms ------------------------------------------------------------------


@dataclass(frozen=True)
class Balanced:
    edges: frozenset
    tag = "balanced"


@dataclass(frozen=True)
class FatTheta:
    edges: frozenset
    x: object
    y: object
    parts: tuple  # three frozensets of edge ids
    tag = "fat_theta"


@dataclass(frozen=True)
class MultiUnbalancedBlock:
    edges: frozenset
    blocks: tuple  # unbalanced blocks, as frozensets of edge ids
    blocking: tuple  # the separating blocking vertex of each block
    tag = "multi_unbalanced_block"


@dataclass(frozen=True)
class SingleUnbalancedBlock:
    edges: frozenset
    block: frozenset
    tag = "single_unbalanced_block"


@dataclass(frozen=True)
class NotBinary:
    edges: frozenset
    reason: str
    minor: tuple | None = None  # (delete, contract) leaving U(2,4), when computed
    tag = "not_binary"


ZaslavskyForm = Balanced | FatTheta | MultiUnbalancedBlock | SingleUnbalancedBlock | NotBinary


def _bridges(idx, emask: int, attach: int) -> list[tuple[int, int]]:
    """Split ``emask`` into bridges of the vertex set ``attach``.

    Returns ``(edge_mask, attachment_vertex_mask)`` pairs.  Edges are joined
    when they share a vertex outside ``attach``.
    """
    edges = list(bits(emask))
    parent = {j: j for j in edges}

    def find(j):
        while parent[j] != j:
            parent[j] = parent[parent[j]]
            j = parent[j]
        return j

    by_vertex: dict[int, int] = {}
    for j in edges:
        for x in set(idx.ends[j]):
            if (attach >> x) & 1:
                continue
            if x in by_vertex:
                parent[find(j)] = find(by_vertex[x])
            else:
                by_vertex[x] = j
    groups: dict[int, int] = {}
    for j in edges:
        r = find(j)
        groups[r] = groups.get(r, 0) | (1 << j)
    return [(em, idx.vmask(em) & attach) for em in sorted(groups.values(), key=lambda m: (m & -m))]


def _fat_theta(b: BiasedGraph) -> FatTheta | None:
    """Find vertices x, y and three balanced parts meeting only at {x, y},
    each containing an x-y path, whose internal cycles are exactly the
    balanced ones.  Parts without an x-y path join the first part."""
    g = b.graph
    idx = g.index
    n = len(idx.vlist)
    cycles = idx.cycles
    flags = b.flags
    for a in range(n):
        for c in range(a + 1, n):
            attach = (1 << a) | (1 << c)
            brs = _bridges(idx, idx.all_edges, attach)
            if not all(is_balanced(b, idx.edges_of(em)) for em, _ in brs):
                continue
            through = [i for i, (_, at) in enumerate(brs) if at == attach]
            if len(through) < 3:
                continue
            # balanced flag of cross cycles per bridge pair
            rel: dict[tuple[int, int], set] = {}
            owner = {}
            for i, (em, _) in enumerate(brs):
                for j in bits(em):
                    owner[j] = i
            for (cm, _), ok in zip(cycles, flags):
                hit = sorted({owner[j] for j in bits(cm)})
                if len(hit) == 2:
                    rel.setdefault((hit[0], hit[1]), set()).add(ok)
            if any(len(v) > 1 for v in rel.values()):
                continue
            cls = {i: i for i in through}
            for (i, j), v in rel.items():
                if True in v:
                    ri, rj = cls[i], cls[j]
                    for k in cls:
                        if cls[k] == rj:
                            cls[k] = ri
            roots = sorted(set(cls.values()))
            if len(roots) != 3:
                continue
            if any((True in v) != (cls[i] == cls[j]) for (i, j), v in rel.items()):
                continue
            parts = [0, 0, 0]
            for i, (em, at) in enumerate(brs):
                parts[roots.index(cls[i]) if i in cls else 0] |= em
            x, y = idx.vlist[a], idx.vlist[c]
            return FatTheta(frozenset(g.edges), x, y, tuple(idx.edges_of(p) for p in parts))
    return None


def _unbalanced_blocks(b: BiasedGraph) -> list[frozenset]:
    blocks, _ = block_decomposition(b.graph)
    return [blk for blk in blocks if not is_balanced(b, blk)]


def _component_form(b: BiasedGraph) -> tuple[ZaslavskyForm, SignedGraph | None]:
    edges = frozenset(b.graph.edges)
    if is_balanced(b):
        return Balanced(edges), None
    ft = _fat_theta(b)
    if ft is not None:
        return ft, None
    s = signed_representability(b)
    if not isinstance(s, SignedGraph):
        return NotBinary(edges, "contra_balanced_theta"), None
    unb = _unbalanced_blocks(b)
    if len(unb) > 1:
        structure = multi_block_structure(b)
        if structure is None:
            return NotBinary(edges, "unseparated_unbalanced_blocks"), s
        return MultiUnbalancedBlock(edges, tuple(blk for _, blk, _ in structure), tuple(v for v, _, _ in structure)), s
    if has_two_vertex_disjoint_unbalanced_cycles(b):
        return NotBinary(edges, "disjoint_unbalanced_cycles"), s
    return SingleUnbalancedBlock(edges, unb[0]), s


def component_biased_graphs(b: BiasedGraph) -> list[BiasedGraph]:
    """Connected components that carry edges, in vertex order."""
    g = b.graph
    idx = g.index
    return [restrict_biased(b, idx.edges_of(em)) for _, em in idx.components() if em]


def zaslavsky_form(b: BiasedGraph, budget: Budget | None = None, with_minor: bool = False) -> list[ZaslavskyForm]:
    """Form of each edge-carrying component; an edgeless graph is one Balanced.

    With ``with_minor`` a not-binary component also gets a (delete,
    contract) pair producing U(2,4), when it fits the budget.
    """
    require_theta_property(b)
    comps = component_biased_graphs(b)
    if not comps:
        return [Balanced(frozenset())]
    out = []
    budget = resolve(budget)
    for c in comps:
        form, _ = _component_form(c)
        if with_minor and isinstance(form, NotBinary) and len(form.edges) <= budget.elements:
            form = NotBinary(form.edges, form.reason, find_u24_minor(frame_matroid(c), budget))
        out.append(form)
    return out


def is_binary_by_form(b: BiasedGraph) -> bool:
    return not any(isinstance(f, NotBinary) for f in zaslavsky_form(b))


# -- witnesses ----------------------------------------------------------------


@dataclass(frozen=True)
class NotGraphic:
    reason: str  # "not_binary" or "search_exhausted"
    forms: tuple = ()


@dataclass(frozen=True)
class BudgetExceeded:
    reason: str


@dataclass
class _Search:
    budget: Budget
    nodes: int = 0

    def tick(self, n: int = 1) -> None:
        self.nodes += n
        if self.nodes > self.budget.nodes:
            raise BudgetError(f"witness search exceeded {self.budget.nodes} nodes")


def _bridge_potentials(s: SignedGraph, em: int) -> dict | None:
    """A vertex potential phi on the bridge with sign(e) = phi(u) phi(v), or
    None when the bridge is unbalanced."""
    idx = s.graph.index
    phi: dict[int, int] = {}
    for start in sorted({x for j in bits(em) for x in idx.ends[j]}):
        if start in phi:
            continue
        phi[start] = 1
        frontier = [start]
        while frontier:
            u = frontier.pop()
            for j, w in idx.adj[u]:
                if not (em >> j) & 1:
                    continue
                sg = s.sign[idx.elist[j]]
                if w == u:
                    if sg < 0:
                        return None
                    continue
                want = phi[u] * sg
                if w in phi:
                    if phi[w] != want:
                        return None
                else:
                    phi[w] = want
                    frontier.append(w)
    return phi


def _pattern_ok(phi: dict, psi: dict, delta: dict, attach: list[int]) -> bool:
    """Does phi * psi agree with delta on ``attach`` up to one global sign?"""
    if len(attach) < 2:
        return True
    ref = phi[attach[0]] * psi[attach[0]] * delta.get(attach[0], 1)
    return all(phi[a] * psi[a] * delta.get(a, 1) == ref for a in attach)


def _split_parts(g: MultiGraph, part_masks: list[int], marks: list[tuple], tag: str):
    """Cut ``g`` into vertex-disjoint part graphs by renaming the shared marks.

    ``marks[i]`` lists the Gamma vertices that part ``i`` marks; the part
    gets private copies of them, returned in the same order.
    """
    idx = g.index
    taken = set(g.vertices)
    graphs, copies = [], []
    for i, (pm, mk) in enumerate(zip(part_masks, marks)):
        names = []
        for r, v in enumerate(mk):
            nm = fresh_name(f"{v}@{tag}{i + 1}.{r}", taken)
            taken.add(nm)
            names.append(nm)
        sub = MultiGraph({e: g.ends(e) for e in idx.edges_of(pm)})
        sub = relabel(sub, dict(zip(mk, names)))
        graphs.append(MultiGraph(sub.edges, vertices=sub.vertices | set(names)))
        copies.append(tuple(names))
    return graphs, copies


def _four_twisting(b: BiasedGraph, s: SignedGraph, search: _Search) -> Witness | None:
    g = b.graph
    idx = g.index
    n = len(idx.vlist)
    deltas = [{0: -1}, {1: -1}, {2: -1}, {}]  # role index -> sign, per part
    for combo in itertools.combinations(range(n), 3):
        attach = sum(1 << v for v in combo)
        brs = _bridges(idx, idx.all_edges, attach)
        phis = [_bridge_potentials(s, em) for em, _ in brs]
        if any(p is None for p in phis):
            continue
        for order in itertools.permutations(combo):
            role = {v: r for r, v in enumerate(order)}
            for py, pz in itertools.product((1, -1), repeat=2):
                search.tick()
                psi = {order[0]: 1, order[1]: py, order[2]: pz}
                choice = []
                for (em, at), phi in zip(brs, phis):
                    att = [v for v in order if (at >> v) & 1]
                    ok = [i for i in range(4) if _pattern_ok(
                        phi, psi, {v: deltas[i].get(role[v], 1) for v in att}, att)]
                    if not ok:
                        break
                    choice.append(ok[0])
                else:
                    masks = [0, 0, 0, 0]
                    for (em, _), i in zip(brs, choice):
                        masks[i] |= em
                    names = [idx.vlist[v] for v in order]
                    graphs, copies = _split_parts(g, masks, [names] * 4, "t")
                    marked = tuple(copies[i] if masks[i] else None for i in range(4))
                    graphs = tuple(gr if masks[i] else MultiGraph() for i, gr in enumerate(graphs))
                    w = make_4_twisting(FourTwistingParts(graphs, marked))
                    cand = Witness("four_twisting", b, w.h, w.edge_map, signed=s, info={"x": names[0], "y": names[1], "z": names[2]})
                    if cand.verify():
                        return cand
    return None


def _cyclic_orders(vs: tuple, attach_sets: list[int]):
    """Orderings u_1..u_k of ``vs`` where each attachment set fits in a window
    of three cyclically consecutive positions."""
    k = len(vs)

    def fits(pos: dict) -> bool:
        for at in attach_sets:
            pts = [pos[v] for v in bits(at) if v in pos]
            if len(pts) != popcount(at) or len(pts) < 2:
                continue
            if not any(all((p - start) % k < 3 for p in pts) for start in range(k)):
                return False
        return True

    for perm in itertools.permutations(vs):
        pos = {v: i for i, v in enumerate(perm)}
        if fits(pos):
            yield perm


def _consecutive_twisting(b: BiasedGraph, s: SignedGraph, search: _Search) -> Witness | None:
    g = b.graph
    idx = g.index
    n = len(idx.vlist)
    for k in range(3, n + 1, 2):
        for combo in itertools.combinations(range(n), k):
            attach = sum(1 << v for v in combo)
            brs = _bridges(idx, idx.all_edges, attach)
            if any(popcount(at) > 3 for _, at in brs):
                continue
            phis = [_bridge_potentials(s, em) for em, _ in brs]
            if any(p is None for p in phis):
                continue
            for order in _cyclic_orders(combo, [at for _, at in brs]):
                # part i (0-based) marks x at u_{i-1}, y at u_{i+1}, z at u_i
                windows = [(order[(i - 1) % k], order[(i + 1) % k], order[i]) for i in range(k)]
                deltas = [{windows[0][1]: -1}, {windows[1][0]: -1}] + [{}] * (k - 2)
                for signs in itertools.product((1, -1), repeat=k - 1):
                    search.tick()
                    psi = dict(zip(order, (1,) + signs))
                    choice = []
                    for (em, at), phi in zip(brs, phis):
                        att = [v for v in order if (at >> v) & 1]
                        ok = [i for i in range(k) if set(att) <= set(windows[i])
                              and _pattern_ok(phi, psi, deltas[i], att)]
                        if not ok:
                            break
                        choice.append(ok[0])
                    else:
                        masks = [0] * k
                        for (em, _), i in zip(brs, choice):
                            masks[i] |= em
                        marks = [[idx.vlist[v] for v in win] for win in windows]
                        graphs, copies = _split_parts(g, masks, marks, "c")
                        w = make_consecutive_twisting(ConsecutiveTwistingParts(tuple(graphs), tuple(copies)))
                        cand = Witness("consecutive_odd_twisting", b, w.h, w.edge_map, signed=s,
                                       info={"u": tuple(idx.vlist[v] for v in order)})
                        if cand.verify():
                            return cand
    return None


def _fat_theta_witness(b: BiasedGraph, ft: FatTheta) -> Witness:
    g = b.graph
    idx = g.index
    masks = [idx.emask(p) for p in ft.parts]
    graphs, copies = _split_parts(g, masks, [(ft.x, ft.y)] * 3, "f")
    w = make_fat_theta(FatThetaParts(tuple(graphs), tuple(copies)))
    return Witness("fat_theta", b, w.h, w.edge_map, info={"x": ft.x, "y": ft.y, "parts": ft.parts})


def _pinch_witness(b: BiasedGraph, s: SignedGraph, v) -> Witness:
    split = pinch_split(s, v)
    return Witness("pinch", b, split.h, {e: e for e in split.h.edges}, signed=s,
                   info={"v": v, "v1": split.v1, "v2": split.v2})


def _component_witness(c: BiasedGraph, search: _Search) -> Witness | NotGraphic:
    form, s = _component_form(c)
    if isinstance(form, NotBinary):
        return NotGraphic("not_binary", (form,))
    if isinstance(form, Balanced):
        w = make_balanced(c.graph)
    elif s is not None and (blk := sort_ids(blocking_vertices(c))):
        w = _pinch_witness(c, s, blk[0])
    elif isinstance(form, FatTheta):
        w = _fat_theta_witness(c, form)
    elif isinstance(form, MultiUnbalancedBlock):
        w = curling_decompose(s)
    else:
        w = _four_twisting(c, s, search) or _consecutive_twisting(c, s, search)
        if w is None:
            return NotGraphic("search_exhausted", (form,))
    w.info["form"] = form
    if not w.verify():
        raise InternalError(f"{w.family} witness failed its circuit check")
    return w


def find_graphic_witness(b: BiasedGraph, budget: Budget | None = None) -> Witness | NotGraphic | BudgetExceeded:
    """Search for H with F(b) = M(H), component by component.

    A signed, unbalanced component with a blocking vertex is always answered
    by pinch-splitting at its first blocking vertex.  Several components give
    a ``direct_sum`` witness whose ``info["components"]`` keeps the parts.
    """
    require_theta_property(b)
    budget = resolve(budget)
    comps = component_biased_graphs(b)
    if not comps:
        return Witness("balanced", b, b.graph, {}, info={"form": Balanced(frozenset())})
    if any(c.graph.num_edges > budget.elements for c in comps):
        return BudgetExceeded(f"a component has more than {budget.elements} edges")
    search = _Search(budget)
    found = []
    try:
        for c in comps:
            w = _component_witness(c, search)
            if isinstance(w, NotGraphic):
                return w
            found.append(w)
    except BudgetError as exc:
        return BudgetExceeded(str(exc))
    if len(found) == 1:
        w = found[0]
        return Witness(w.family, b, w.h, w.edge_map, w.signed, w.info)
    # glue component witnesses apart from each other
    taken = set(b.graph.vertices)
    pieces = []
    for c, w in zip(comps, found):
        mapping = {}
        for x in sort_ids(w.h.vertices):
            if x not in c.graph.vertices:
                mapping[x] = fresh_name(str(x), taken)
                taken.add(mapping[x])
        pieces.append(relabel(w.h, mapping))
    h = union(*pieces)
    edge_map = {e: e for e in b.graph.edges}
    w = Witness("direct_sum", b, h, edge_map, info={"components": found})
    if not w.verify():
        raise InternalError("direct-sum witness failed its circuit check")
    return w


def witness_families(w: Witness) -> list[str]:
    """Family tags of a witness, unpacking direct sums."""
    if w.family == "direct_sum":
        return [c.family for c in w.info["components"]]
    return [w.family]
