"""The acceptance suite: eleven property checks at desk scale.

Each check returns a :class:`CriterionResult`; ``run`` executes a selection
and is shared by ``biasmat verify`` and the test suite.  Every check is
seeded, so results are reproducible.
"""
from __future__ import annotations

import random
import time
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from .bgformat import GraphFile, parse, render
from .biased import (
    BiasedGraph,
    SignedGraph,
    all_positive_switching,
    from_signed,
    signed_representability,
    switch,
)
from .classify import find_graphic_witness, is_binary_by_form
from .errors import InputError
from .families import (
    CurlingSpec,
    Witness,
    curling_decompose,
    cycles_connected_in_gamma,
    even_twisting_condition,
    make_4_twisting,
    make_balanced,
    make_consecutive_twisting,
    make_curling,
    make_fat_theta,
    make_pinch,
    multi_block_structure,
    pinch_split,
    PinchSpec,
)
from .generate import (
    multigraphs_up_to_iso,
    random_balanced_signing,
    random_biased_graph,
    random_connected_graph,
    random_consecutive_parts,
    random_curling_spec,
    random_fat_theta_parts,
    random_four_twisting_parts,
    random_graph,
    random_pinch_spec,
    random_signing,
    random_switching,
    theta_repair,
    theta_valid_families,
)
from .graph_core import MultiGraph, canonical_form
from .matroid import cycle_matroid, frame_circuit_masks, frame_matroid, is_binary, is_isomorphic
from .whitney import closure_classes, is_2_isomorphic


@dataclass
class CriterionResult:
    key: str
    name: str
    passed: bool
    detail: str
    elapsed: float = 0.0

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} [{self.key}] {self.name}: {self.detail} ({self.elapsed:.1f}s)"


MAX_EDGES = 12

# family name -> instance generator returning a Witness
FAMILY_GENERATORS: dict[str, Callable[[random.Random], Witness]] = {
    "balanced": lambda rng: make_balanced(random_connected_graph(rng, rng.randint(1, 7), rng.randint(0, MAX_EDGES))),
    "fat_theta": lambda rng: make_fat_theta(random_fat_theta_parts(rng, MAX_EDGES)),
    "curling": lambda rng: make_curling(random_curling_spec(rng, MAX_EDGES)),
    "pinch": lambda rng: make_pinch(random_pinch_spec(rng, MAX_EDGES)),
    "four_twisting": lambda rng: make_4_twisting(random_four_twisting_parts(rng, MAX_EDGES)),
    "consecutive_odd_twisting": lambda rng: make_consecutive_twisting(
        random_consecutive_parts(rng, rng.choice((3, 3, 5)), MAX_EDGES)),
}


def _fmt_fail(examples: list) -> str:
    return "; first failure: " + repr(examples[0])[:300] if examples else ""


# -- constructions -------------------------------------------------------------


def constructions(seed: int = 0, per_family: int = 200) -> tuple[bool, str]:
    rng = random.Random(seed)
    fails, oversized = [], 0
    for name, gen in FAMILY_GENERATORS.items():
        for _ in range(per_family):
            w = gen(rng)
            if w.h.num_edges > MAX_EDGES:
                oversized += 1
            if not w.verify():
                fails.append((name, w.h))
    ok = not fails and not oversized
    return ok, f"{len(FAMILY_GENERATORS)} families x {per_family} instances, {len(fails)} failures, {oversized} oversized" + _fmt_fail(fails)


# -- binarity and signability share a population -------------------------------


def biased_population(seed: int = 0, random_count: int = 600, exhaustive_edges: int = 4):
    layers = multigraphs_up_to_iso(exhaustive_edges)
    for m in range(exhaustive_edges + 1):
        for g in layers[m]:
            yield from theta_valid_families(g)
    rng = random.Random(seed)
    for _ in range(random_count):
        yield random_biased_graph(rng, 8)


def binarity(seed: int = 0, random_count: int = 600) -> tuple[bool, str]:
    n, fails, nonbinary = 0, [], 0
    for b in biased_population(seed, random_count):
        n += 1
        oracle = is_binary(frame_matroid(b))
        nonbinary += not oracle
        if is_binary_by_form(b) != oracle:
            fails.append(b)
    return not fails, f"{n} biased graphs ({nonbinary} not binary), {len(fails)} disagreements" + _fmt_fail(fails)


def _signable_by_brute_force(b) -> bool:
    """Try every signing: is some parity family equal to the balanced family?"""
    idx = b.graph.index
    cyc = np.array([em for em, _ in idx.cycles], dtype=np.int64)
    if len(cyc) == 0:
        return True
    m = len(idx.elist)
    negs = np.arange(1 << m, dtype=np.int64)
    inter = cyc[:, None] & negs[None, :]
    parity = np.zeros(inter.shape, dtype=np.int64)
    for j in range(m):
        parity ^= (inter >> j) & 1
    want = np.array([0 if f else 1 for f in b.flags], dtype=np.int64)[:, None]
    return bool(np.any(np.all(parity == want, axis=0)))


def _has_contra_theta(b) -> bool:
    idx = b.graph.index
    flags = b.flags
    return any(not (flags[i] or flags[j] or flags[k]) for _, (i, j, k) in idx.thetas)


def signability(seed: int = 0, random_count: int = 600) -> tuple[bool, str]:
    n, fails = 0, []
    for b in biased_population(seed, random_count):
        n += 1
        found = isinstance(signed_representability(b), SignedGraph)
        brute = _signable_by_brute_force(b)
        contra = _has_contra_theta(b)
        if not (found == brute == (not contra)):
            fails.append((b, found, brute, contra))
    return not fails, f"{n} biased graphs, {len(fails)} disagreements" + _fmt_fail(fails)


# -- switching -----------------------------------------------------------------


def switching_invariance(seed: int = 0, count: int = 500) -> tuple[bool, str]:
    rng = random.Random(seed)
    fails = []
    for _ in range(count):
        m = rng.randint(1, MAX_EDGES)
        g = random_graph(rng, range(rng.randint(1, 7)), m, loops=0.15, connected=rng.random() < 0.7)
        s = random_signing(rng, g, rng.random())
        d = random_switching(rng, g)
        if frame_circuit_masks(from_signed(s)) != frame_circuit_masks(from_signed(switch(s, d))):
            fails.append((s, d))
    return not fails, f"{count} (signing, switching) pairs, {len(fails)} differences" + _fmt_fail(fails)


def balanced_switching(seed: int = 0, count: int = 200) -> tuple[bool, str]:
    rng = random.Random(seed)
    fails = []
    for _ in range(count):
        g = random_graph(rng, range(rng.randint(1, 8)), rng.randint(0, MAX_EDGES), loops=0.1,
                         connected=rng.random() < 0.6)
        s = random_balanced_signing(rng, g)
        d = all_positive_switching(s)
        if d is None or any(x < 0 for x in switch(s, d).sign.values()):
            fails.append(s)
    return not fails, f"{count} balanced signed graphs, {len(fails)} failures" + _fmt_fail(fails)


# -- twistings -----------------------------------------------------------------


def _disjoint_unbalanced_union(w: Witness) -> bool:
    """Is some cycle of H the union of two vertex-disjoint unbalanced cycles of omega?"""
    gi = w.omega.graph.index
    flags = w.omega.flags
    look = gi.cycle_lookup
    for em, _ in w.h.index.cycles:
        comps = gi.components(gi.emask(w.h.index.edges_of(em)))
        comps = [c for c in comps if c[1]]
        if len(comps) == 2 and all(c[1] in look and not flags[look[c[1]]] for c in comps):
            return True
    return False


def even_twistings(seed: int = 0, per_k: int = 120) -> tuple[bool, str]:
    rng = random.Random(seed)
    fails, held = [], 0
    for k in (4, 6):
        for _ in range(per_k):
            p = random_consecutive_parts(rng, k, MAX_EDGES, path_bias=rng.choice((0.3, 0.9)))
            w = make_consecutive_twisting(p)
            cond = even_twisting_condition(p)
            held += cond
            conn = cycles_connected_in_gamma(w)
            if not (cond == conn == (not _disjoint_unbalanced_union(w))):
                fails.append((k, p))
    return not fails, f"{2 * per_k} even consecutive twistings ({held} satisfy the condition), {len(fails)} disagreements" + _fmt_fail(fails)


def four_twisting_connectivity(seed: int = 0, count: int = 150) -> tuple[bool, str]:
    rng = random.Random(seed)
    fails = []
    for _ in range(count):
        w = make_4_twisting(random_four_twisting_parts(rng, MAX_EDGES))
        if not cycles_connected_in_gamma(w):
            fails.append(w.h)
    return not fails, f"{count} 4-twistings, {len(fails)} with a disconnected cycle image" + _fmt_fail(fails)


# -- round trips ---------------------------------------------------------------


def round_trips(seed: int = 0, count: int = 100) -> tuple[bool, str]:
    rng = random.Random(seed)
    fails = []
    pinches = 0
    while pinches < count:
        spec = random_pinch_spec(rng, MAX_EDGES)
        w = make_pinch(spec)
        if w.signed is None or not _unbalanced(w):
            continue
        pinches += 1
        split = pinch_split(w.signed, w.info["v"])
        if cycle_matroid(split.h).circuits != cycle_matroid(spec.h).circuits:
            fails.append(("pinch", spec))
    curls = 0
    tries = 0
    while curls < count and tries < 50 * count:
        tries += 1
        spec = random_curling_spec(rng, MAX_EDGES)
        w = make_curling(spec)
        g = w.omega.graph
        if not g.index.connected(g.index.all_edges) or g.isolated_vertices() or multi_block_structure(w.omega) is None:
            continue
        curls += 1
        back = curling_decompose(w.signed)
        if cycle_matroid(back.h).circuits != cycle_matroid(spec.h).circuits:
            fails.append(("curling", spec))
    certified = 0
    for name, gen in FAMILY_GENERATORS.items():
        for _ in range(count):
            w = gen(rng)
            r = find_graphic_witness(w.omega)
            if isinstance(r, Witness) and r.verify():
                certified += 1
            else:
                fails.append((name, r))
    ok = not fails and curls == count
    return ok, (f"{pinches} pinch splits, {curls} curling decompositions, "
                f"{certified} certified witnesses, {len(fails)} failures") + _fmt_fail(fails)


def _unbalanced(w: Witness) -> bool:
    return not all(w.omega.flags)


# -- whitney closure -----------------------------------------------------------


def whitney_closure(seed: int = 0, max_edges: int = 6) -> tuple[bool, str]:
    layers = multigraphs_up_to_iso(max_edges, connected=True)
    fails, graphs, classes = [], 0, 0
    for m in range(1, max_edges + 1):
        gs = layers[m]
        graphs += len(gs)
        cls = closure_classes(gs)
        groups: dict = {}
        for g in gs:
            groups.setdefault(cls[canonical_form(g)], []).append(g)
        classes += len(groups)
        reps = []
        for members in groups.values():
            reps.append(members[0])
            for g in members[1:]:
                if is_2_isomorphic(members[0], g) is None:
                    fails.append(("closure but not isomorphic", members[0], g))
        for i in range(len(reps)):
            for j in range(i + 1, len(reps)):
                if is_2_isomorphic(reps[i], reps[j]) is not None:
                    fails.append(("isomorphic but not in closure", reps[i], reps[j]))
    return not fails, f"{graphs} connected graphs, {classes} closure classes, {len(fails)} mismatches" + _fmt_fail(fails)


# -- multiplicity --------------------------------------------------------------


def complete_graph(n: int) -> MultiGraph:
    edges = {}
    for a in range(n):
        for b in range(a + 1, n):
            edges[f"e{a}{b}"] = (a, b)
    return MultiGraph(edges)


def multiplicity(seed: int = 0, n: int = 6) -> tuple[bool, str]:
    g = complete_graph(n)
    target = cycle_matroid(g)
    built, fails = 0, []
    witnesses = []
    for a in range(n):
        for b in range(a + 1, n):
            witnesses.append(make_pinch(PinchSpec(g, a, b)))
    for v in range(n):
        att = tuple((u, frozenset(g.incident_edges(v) & g.incident_edges(u))) for u in range(n) if u != v)
        w = make_curling(CurlingSpec(g, v, att), strict=True)
        if w.family != "simple_curling":
            fails.append(("not simple", v))
        witnesses.append(w)
    for w in witnesses:
        built += 1
        if is_isomorphic(frame_matroid(w.omega), target) is None:
            fails.append(w.family)
    need = n * (n - 1) // 2 + n
    return not fails and built >= need, f"K{n}: {built} constructions (need {need}), {len(fails)} failures" + _fmt_fail(fails)


# -- parser --------------------------------------------------------------------


def random_graph_file(rng: random.Random) -> GraphFile:
    n = rng.randint(1, 7)
    names = [f"v{i}" for i in range(n)] + ["a", "b_2", "x.y"][: rng.randint(0, 3)]
    g = random_graph(rng, names, rng.randint(0, MAX_EDGES), loops=0.15, prefix=rng.choice(("e", "f", "edge")))
    mode = rng.choice((None, "all", "none", "signed", "explicit"))
    if mode is None:
        return GraphFile.of_graph(g)
    if mode == "signed":
        return GraphFile.of_signed(random_signing(rng, g, rng.random()))
    if mode == "explicit":
        cyc = [em for em, _ in g.index.cycles]
        b = theta_repair(rng, g, {em for em in cyc if rng.random() < 0.5})
        return GraphFile.of_biased(b)
    return GraphFile.of_biased(BiasedGraph.all_balanced(g) if mode == "all" else BiasedGraph.contrabalanced(g), mode)


def parser_round_trip(seed: int = 0, count: int = 1000) -> tuple[bool, str]:
    rng = random.Random(seed)
    fails = []
    for _ in range(count):
        f = random_graph_file(rng)
        text = render(f)
        back = parse(text)
        if back != f or render(back) != text:
            fails.append(text)
    return not fails, f"{count} files, {len(fails)} round-trip failures" + _fmt_fail(fails)


CRITERIA: dict[str, tuple[str, Callable[..., tuple[bool, str]]]] = {
    "1": ("constructions", constructions),
    "2": ("binarity", binarity),
    "3": ("signability", signability),
    "4": ("switching", switching_invariance),
    "5": ("balanced-switching", balanced_switching),
    "6": ("even-twisting", even_twistings),
    "7": ("four-twisting", four_twisting_connectivity),
    "8": ("round-trips", round_trips),
    "9": ("whitney", whitney_closure),
    "10": ("multiplicity", multiplicity),
    "11": ("parser", parser_round_trip),
}


def resolve_suite(name: str) -> list[str]:
    if name == "all":
        return list(CRITERIA)
    for key, (label, _) in CRITERIA.items():
        if name in (key, label):
            return [key]
    raise InputError(f"unknown suite {name!r}; choose 'all', 1-11 or one of {[l for l, _ in CRITERIA.values()]}")


def run_one(key: str, seed: int = 0) -> CriterionResult:
    label, fn = CRITERIA[key]
    t0 = time.perf_counter()
    ok, detail = fn(seed=seed)
    return CriterionResult(key, label, ok, detail, time.perf_counter() - t0)


def run(suite: str = "all", seed: int = 0) -> list[CriterionResult]:
    return [run_one(k, seed) for k in resolve_suite(suite)]
