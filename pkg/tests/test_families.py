import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from biasmat.biased import SignedGraph, from_signed, has_two_vertex_disjoint_unbalanced_cycles, is_balanced, signed_representability
from biasmat.errors import InputError
from biasmat.families import (
    ConsecutiveTwistingParts,
    CurlingSpec,
    FatThetaParts,
    FourTwistingParts,
    PinchSpec,
    curling_decompose,
    cycles_connected_in_gamma,
    even_twisting_condition,
    is_simple,
    make_4_twisting,
    make_balanced,
    make_consecutive_twisting,
    make_curling,
    make_fat_theta,
    make_pinch,
    multi_block_structure,
    pinch_split,
)
from biasmat.generate import (
    random_consecutive_parts,
    random_curling_spec,
    random_fat_theta_parts,
    random_four_twisting_parts,
    random_pinch_spec,
)
from biasmat.graph_core import MultiGraph, canonical_form
from biasmat.matroid import cycle_matroid, frame_matroid

from strategies import brute_cycles, circuits_from_rank, frame_rank, multigraphs

seeds = st.integers(0, 10**6)


def K(n):
    return MultiGraph({f"e{k}": e for k, e in enumerate(((i, j) for i in range(n) for j in range(i + 1, n)), 1)})


def oracle_agrees(w):
    """Frame circuits from the rank formula equal the cycles of h (identity map)."""
    b = w.omega
    frame = circuits_from_rank(b.graph.edges, lambda x: frame_rank(b, x))
    return frame == brute_cycles(w.h)


def path(tag, *vs):
    return MultiGraph({f"{tag}{i}": (a, b) for i, (a, b) in enumerate(zip(vs, vs[1:]))})


def triangle(tag, x, y, z):
    return MultiGraph({f"{tag}a": (x, y), f"{tag}b": (y, z), f"{tag}c": (z, x)})


# -- examples -------------------------------------------------------------


def test_balanced_examples():
    assert make_balanced(K(3)).omega.balanced == {frozenset({"e1", "e2", "e3"})}
    tree = MultiGraph({"a": (0, 1), "b": (1, 2)})
    w = make_balanced(tree)
    assert frame_matroid(w.omega).circuits == frozenset() == cycle_matroid(tree).circuits
    w = make_balanced(K(4))
    assert w.verify() and len(cycle_matroid(K(4)).circuits) == 7


def test_fat_theta_single_edges_gives_triangle():
    parts = tuple(MultiGraph({f"e{i}": (f"x{i}", f"y{i}")}) for i in range(1, 4))
    w = make_fat_theta(FatThetaParts(parts, tuple((f"x{i}", f"y{i}") for i in range(1, 4))))
    assert w.omega.graph.num_vertices == 2 and w.omega.balanced == frozenset()
    assert canonical_form(w.h) == canonical_form(K(3))
    assert frame_matroid(w.omega).circuits == {frozenset({"e1", "e2", "e3"})}
    assert w.verify() and oracle_agrees(w)


def test_fat_theta_paths_and_internal_cycle():
    parts = tuple(path(f"p{i}", f"x{i}", f"m{i}", f"y{i}") for i in range(1, 4))
    marks = tuple((f"x{i}", f"y{i}") for i in range(1, 4))
    w = make_fat_theta(FatThetaParts(parts, marks))
    assert w.verify() and oracle_agrees(w)
    inner = MultiGraph({**parts[0].edges, "c1": ("m1", "q"), "c2": ("q", "m1")})
    w = make_fat_theta(FatThetaParts((inner,) + parts[1:], marks))
    assert frozenset({"c1", "c2"}) in w.omega.balanced
    assert frozenset({"c1", "c2"}) in frame_matroid(w.omega).circuits
    assert w.verify()


def test_fat_theta_rejects_bad_parts():
    p = MultiGraph({"a": ("x", "y")})
    with pytest.raises(InputError):
        make_fat_theta(FatThetaParts((p, p, p), (("x", "y"),) * 3))
    with pytest.raises(InputError):
        make_fat_theta(FatThetaParts((p,), (("x", "x"),)))


def test_curling_digon():
    h = MultiGraph({"a": ("v", 1), "b": ("v", 1)})
    c = CurlingSpec(h, "v", ((1, {"a", "b"}),))
    w = make_curling(c)
    assert all(w.omega.graph.is_loop(e) for e in "ab")
    assert frame_matroid(w.omega).circuits == {frozenset("ab")}
    assert is_simple(c) and w.family == "simple_curling"
    assert w.verify() and oracle_agrees(w)


def test_curling_k4():
    h = K(4)
    c = CurlingSpec(h, 0, ((1, set(h.edges)),))
    w = make_curling(c, strict=True)
    assert not is_simple(c) and w.family == "curling"
    assert w.verify() and oracle_agrees(w)


def test_curling_rejects_invalid():
    h = K(4)
    with pytest.raises(InputError):  # edges at v uncovered
        make_curling(CurlingSpec(h, 0, ((1, {"e1"}),)))
    with pytest.raises(InputError):  # v_i equals v
        make_curling(CurlingSpec(h, 0, ((0, set(h.edges)),)))
    with pytest.raises(InputError):  # piece sharing a third vertex with the rest
        make_curling(CurlingSpec(h, 0, ((1, {"e1", "e2", "e3", "e4"}),)))
    path_graph = MultiGraph({"a": ("v", 1), "b": ("v", 1), "c": (1, 2)})
    make_curling(CurlingSpec(path_graph, "v", ((1, {"a", "b"}),)))
    with pytest.raises(InputError):  # strict needs 2-connectivity
        make_curling(CurlingSpec(path_graph, "v", ((1, {"a", "b"}),)), strict=True)


def test_pinch_c4():
    c4 = MultiGraph({"a": (0, 1), "b": (1, 2), "c": (2, 3), "d": (3, 0)})
    w = make_pinch(PinchSpec(c4, 0, 2))
    assert w.omega.graph.num_vertices == 3
    assert frame_matroid(w.omega).circuits == {frozenset("abcd")}
    assert w.verify() and oracle_agrees(w)


def test_pinch_edge_between_pinched_vertices_becomes_unbalanced_loop():
    h = MultiGraph({"e": (0, 1), "f": (1, 2), "g": (2, 0)})
    w = make_pinch(PinchSpec(h, 0, 1))
    assert w.omega.graph.is_loop("e") and w.signed.sign["e"] == -1
    assert frozenset({"e"}) not in frame_matroid(w.omega).circuits
    assert w.verify()


def test_pinch_two_triangles():
    h = MultiGraph({**triangle("a", 0, 1, 2).edges, **triangle("b", 3, 4, 5).edges})
    w = make_pinch(PinchSpec(h, 0, 3))
    assert len(w.omega.graph.index.components()) == 1
    assert w.verify() and oracle_agrees(w)
    # each triangle passes through v using one -1 edge and one +1 edge
    assert is_balanced(w.omega)
    with pytest.raises(InputError):
        make_pinch(PinchSpec(h, 0, 0))


def test_four_twisting_examples():
    tri = tuple(triangle(f"t{i}", f"x{i}", f"y{i}", f"z{i}") for i in range(1, 5))
    marks = tuple((f"x{i}", f"y{i}", f"z{i}") for i in range(1, 5))
    w = make_4_twisting(FourTwistingParts(tri, marks))
    assert w.verify() and cycles_connected_in_gamma(w)
    w = make_4_twisting(FourTwistingParts(tri[:3] + (MultiGraph(),), marks[:3] + (None,)))
    assert w.verify() and oracle_agrees(w)
    stars = tuple(
        MultiGraph({f"s{i}{r}": (f"c{i}", f"{r}{i}") for r in "xyz"}) for i in range(1, 5)
    )
    w = make_4_twisting(FourTwistingParts(stars, marks))
    assert w.verify() and cycles_connected_in_gamma(w)


def test_consecutive_k3_triangles():
    tri = tuple(triangle(f"t{i}", f"x{i}", f"y{i}", f"z{i}") for i in range(1, 4))
    marks = tuple((f"x{i}", f"y{i}", f"z{i}") for i in range(1, 4))
    w = make_consecutive_twisting(ConsecutiveTwistingParts(tri, marks))
    assert w.family == "consecutive_odd_twisting"
    assert w.verify() and oracle_agrees(w)
    with pytest.raises(InputError):
        make_consecutive_twisting(ConsecutiveTwistingParts(tri[:2], marks[:2]))


def _k4_parts(second):
    marks = tuple((f"x{i}", f"y{i}", f"z{i}") for i in range(1, 5))
    parts = [triangle(f"t{i}", *marks[i - 1]) for i in range(1, 5)]
    if second is not None:
        parts[1] = second
    return ConsecutiveTwistingParts(tuple(parts), marks)


def test_even_k_with_all_paths_fails():
    p = _k4_parts(None)
    w = make_consecutive_twisting(p)
    assert w.family == "consecutive_twisting"
    assert not even_twisting_condition(p)
    assert has_two_vertex_disjoint_unbalanced_cycles(w.omega)
    assert not w.verify()
    assert not cycles_connected_in_gamma(w)


def test_even_k_with_path_through_z_holds():
    p = _k4_parts(path("q", "x2", "z2", "y2"))
    w = make_consecutive_twisting(p)
    assert even_twisting_condition(p)
    assert cycles_connected_in_gamma(w)
    assert w.verify()


def test_even_condition_star_and_errors():
    star = MultiGraph({f"s{r}": ("z2", f"{r}2") for r in "xy"})
    star = MultiGraph(star.edges, vertices=star.vertices | {"z2"})
    assert even_twisting_condition(_k4_parts(star))
    tri = tuple(triangle(f"t{i}", f"x{i}", f"y{i}", f"z{i}") for i in range(1, 4))
    with pytest.raises(InputError):
        even_twisting_condition(ConsecutiveTwistingParts(tri, tuple((f"x{i}", f"y{i}", f"z{i}") for i in range(1, 4))))


def test_pinch_split_loops_become_parallel_edges():
    s = SignedGraph(MultiGraph({"l": ("v", "v"), "m": ("v", "v")}), {"l": -1, "m": -1})
    r = pinch_split(s, "v")
    assert {r.h.ends(e) for e in "lm"} == {(r.v1, r.v2)}
    assert frame_matroid(from_signed(s)) == cycle_matroid(r.h)


def test_pinch_split_errors():
    s = SignedGraph(MultiGraph({"l": (0, 0), "m": (1, 1), "p": (0, 1)}), {"l": -1, "m": -1, "p": 1})
    with pytest.raises(InputError):
        pinch_split(s, 0)
    with pytest.raises(InputError):
        pinch_split(SignedGraph.all_positive(K(3)), 0)


def test_curling_decompose_loops_at_path_ends():
    s = SignedGraph(MultiGraph({"l": (0, 0), "a": (0, 1), "b": (1, 2), "m": (2, 2)}), {"l": -1, "a": 1, "b": 1, "m": -1})
    w = curling_decompose(s)
    assert len(brute_cycles(w.h)) == 1 and brute_cycles(w.h) == {frozenset("labm")}
    assert w.verify()


def test_curling_decompose_digons():
    s = SignedGraph(
        MultiGraph({"a": (0, 1), "b": (0, 1), "p": (1, 2), "c": (2, 3), "d": (2, 3)}),
        {"a": -1, "b": 1, "p": 1, "c": -1, "d": 1},
    )
    w = curling_decompose(s)
    assert w.verify() and oracle_agrees(w)
    with pytest.raises(InputError):
        curling_decompose(SignedGraph(K(3), {"e1": -1, "e2": 1, "e3": 1}))


# -- invariants on generated instances -----------------------------------------


@given(seeds)
def test_fat_theta_instances(seed):
    w = make_fat_theta(random_fat_theta_parts(random.Random(seed), max_edges=8))
    assert w.verify() and oracle_agrees(w)


@given(seeds)
def test_curling_instances(seed):
    spec = random_curling_spec(random.Random(seed), max_edges=8)
    w = make_curling(spec)
    assert w.verify() and oracle_agrees(w)
    assert isinstance(signed_representability(w.omega), SignedGraph)


@given(seeds)
def test_pinch_instances(seed):
    p = random_pinch_spec(random.Random(seed), max_edges=8)
    w = make_pinch(p)
    assert w.verify() and oracle_agrees(w)
    assert not has_two_vertex_disjoint_unbalanced_cycles(w.omega)


@given(seeds)
def test_pinch_split_round_trip(seed):
    p = random_pinch_spec(random.Random(seed), max_edges=10)
    w = make_pinch(p)
    if is_balanced(w.omega):
        return  # nothing to undo
    r = pinch_split(w.signed, w.info["v"])
    assert cycle_matroid(r.h) == cycle_matroid(p.h)


@given(seeds)
def test_four_twisting_instances(seed):
    w = make_4_twisting(random_four_twisting_parts(random.Random(seed), max_edges=8))
    assert w.verify() and oracle_agrees(w)
    assert cycles_connected_in_gamma(w)


@given(seeds, st.sampled_from([3, 5]))
def test_odd_consecutive_instances(seed, k):
    w = make_consecutive_twisting(random_consecutive_parts(random.Random(seed), k, max_edges=9))
    assert w.verify()
    assert cycles_connected_in_gamma(w)


@given(seeds, st.sampled_from([4, 6]))
def test_even_condition_iff_connected_cycles(seed, k):
    p = random_consecutive_parts(random.Random(seed), k, max_edges=10, path_bias=0.5)
    w = make_consecutive_twisting(p)
    assert even_twisting_condition(p) == cycles_connected_in_gamma(w) == w.verify()


@given(seeds)
def test_curling_decompose_round_trip(seed):
    spec = random_curling_spec(random.Random(seed), max_edges=10)
    w = make_curling(spec)
    s = w.signed
    if not s.graph.index.connected(s.graph.index.all_edges) or multi_block_structure(w.omega) is None:
        return
    d = curling_decompose(s)
    assert d.verify()
    assert cycle_matroid(d.h) == cycle_matroid(spec.h)


@given(multigraphs(max_vertices=5, max_edges=7))
def test_balanced_any_graph(g):
    assert make_balanced(g).verify()
