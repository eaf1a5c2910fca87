from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from biasmat.biased import (
    BiasedGraph,
    SignedGraph,
    Switching,
    all_positive_switching,
    blocking_vertices,
    contra_balanced_theta,
    enumerate_handcuffs,
    from_signed,
    has_two_vertex_disjoint_unbalanced_cycles,
    is_balanced,
    is_contra_balanced,
    signed_representability,
    switch,
    validate_theta_property,
)
from biasmat.errors import InputError
from biasmat.graph_core import MultiGraph, enumerate_cycles, enumerate_thetas

from strategies import brute_cycles, signed_graphs


def signed(edges, negative=()):
    g = MultiGraph(edges)
    return SignedGraph(g, {e: (-1 if e in negative else 1) for e in g.edges})


def test_from_signed_parity():
    s = signed({"a": (0, 1), "b": (1, 2), "c": (2, 0), "l": (0, 0)}, negative={"a", "l"})
    b = from_signed(s)
    assert b.balanced == frozenset()
    s2 = signed({"a": (0, 1), "b": (1, 2), "c": (2, 0)}, negative={"a", "b"})
    assert from_signed(s2).balanced == {frozenset("abc")}


@given(signed_graphs(max_vertices=5, max_edges=8))
def test_signed_bias_is_parity_of_negatives(s):
    b = from_signed(s)
    for c in brute_cycles(s.graph):
        neg = sum(1 for e in c if s.sign[e] < 0)
        assert (c in b.balanced) == (neg % 2 == 0)
    assert validate_theta_property(b) == (True, None)


def test_theta_property_violation_detected():
    g = MultiGraph({"a": (0, 1), "b": (0, 1), "c": (0, 1)})
    ok, theta = validate_theta_property(BiasedGraph(g, [{"a", "b"}, {"b", "c"}]))
    assert not ok and theta == {"a", "b", "c"}
    for balanced in ([], [{"a", "b"}], [{"a", "b"}, {"b", "c"}, {"a", "c"}]):
        assert validate_theta_property(BiasedGraph(g, balanced))[0]


def test_biased_graph_rejects_non_cycles():
    g = MultiGraph({"a": (0, 1), "b": (1, 2)})
    with pytest.raises(InputError):
        BiasedGraph(g, [{"a", "b"}])


@given(signed_graphs(max_vertices=5, max_edges=8), st.data())
def test_switching_preserves_bias(s, data):
    negated = data.draw(st.sets(st.sampled_from(sorted(s.graph.vertices))))
    t = switch(s, Switching(negated))
    assert from_signed(t) == from_signed(s)
    assert switch(t, Switching(negated)) == s


def test_switch_loop_convention():
    s = signed({"l": (0, 0), "a": (0, 1)}, negative={"l"})
    t = switch(s, Switching({0}))
    assert t.sign["l"] == -1  # a loop meets the switched vertex twice
    assert t.sign["a"] == -1


def test_all_positive_switching_example():
    # 4-cycle with the two edges at w negative
    s = signed({"a": ("w", "x"), "b": ("x", "y"), "c": ("y", "z"), "d": ("z", "w")}, negative={"a", "d"})
    d = all_positive_switching(s)
    assert d is not None and d.negated in ({"w"}, {"x", "y", "z"})
    assert all(v == 1 for v in switch(s, d).sign.values())
    odd = signed({"a": (0, 1), "b": (1, 2), "c": (2, 0)}, negative={"a"})
    assert all_positive_switching(odd) is None


@given(signed_graphs(max_vertices=5, max_edges=8))
def test_all_positive_switching_iff_balanced(s):
    d = all_positive_switching(s)
    assert (d is not None) == is_balanced(from_signed(s))
    if d is not None:
        assert all(v == 1 for v in switch(s, d).sign.values())


def test_balance_predicates():
    g = MultiGraph({"a": (0, 1), "b": (0, 1), "c": (0, 1)})
    assert is_balanced(BiasedGraph.all_balanced(g))
    assert is_contra_balanced(BiasedGraph.contrabalanced(g))
    b = BiasedGraph(g, [{"a", "b"}])
    assert not is_balanced(b) and not is_contra_balanced(b)
    assert is_balanced(b, {"a", "b"})
    assert is_contra_balanced(b, {"b", "c"})


def test_blocking_vertices_examples():
    s = signed({"l": (0, 0), "m": (2, 2), "a": (0, 1), "b": (1, 2)}, negative={"l", "m"})
    assert blocking_vertices(from_signed(s)) == frozenset()
    s1 = signed({"l": (0, 0), "a": (0, 1), "b": (1, 0)}, negative={"l", "a"})
    assert blocking_vertices(from_signed(s1)) == {0}
    assert blocking_vertices(BiasedGraph.all_balanced(MultiGraph({"a": (0, 1)}))) == {0, 1}


@given(signed_graphs(max_vertices=5, max_edges=7))
def test_blocking_vertices_by_definition(s):
    b = from_signed(s)
    unbalanced = [c for c in brute_cycles(s.graph) if c not in b.balanced]
    expect = {v for v in s.graph.vertices if all(any(v in s.graph.ends(e) for e in c) for c in unbalanced)}
    assert blocking_vertices(b) == expect


def test_handcuffs():
    tight = signed({"l": (0, 0), "m": (0, 0)}, negative={"l", "m"})
    hs = enumerate_handcuffs(from_signed(tight))
    assert [(h.c1 | h.c2 | h.path, h.kind) for h in hs] == [({"l", "m"}, "tight")]
    loose = signed({"l": (0, 0), "m": (1, 1), "p": (0, 1)}, negative={"l", "m"})
    hs = enumerate_handcuffs(from_signed(loose))
    assert [(h.c1 | h.c2 | h.path, h.kind) for h in hs] == [({"l", "m", "p"}, "loose")]


def test_disjoint_unbalanced_cycles():
    s = signed({"l": (0, 0), "m": (1, 1), "p": (0, 1)}, negative={"l", "m"})
    assert has_two_vertex_disjoint_unbalanced_cycles(from_signed(s))
    s2 = signed({"l": (0, 0), "m": (0, 0), "p": (0, 1)}, negative={"l", "m"})
    assert not has_two_vertex_disjoint_unbalanced_cycles(from_signed(s2))


@given(signed_graphs(max_vertices=5, max_edges=7))
def test_disjoint_unbalanced_cycles_brute_force(s):
    b = from_signed(s)
    g = s.graph
    unb = [c for c in brute_cycles(g) if c not in b.balanced]
    verts = [{x for e in c for x in g.ends(e)} for c in unb]
    expect = any(not (verts[i] & verts[j]) for i in range(len(unb)) for j in range(i))
    assert has_two_vertex_disjoint_unbalanced_cycles(b) == expect


def test_signed_representability_examples():
    g = MultiGraph({"a": (0, 1), "b": (0, 1), "c": (0, 1)})
    contra = BiasedGraph.contrabalanced(g)
    res = signed_representability(contra)
    assert not isinstance(res, SignedGraph)
    assert set(res.edges) == {"a", "b", "c"}
    assert contra_balanced_theta(contra) == {"a", "b", "c"}
    one = BiasedGraph(g, [{"a", "b"}])
    s = signed_representability(one)
    assert isinstance(s, SignedGraph) and from_signed(s) == one


def _brute_signable(b):
    g = b.graph
    ids = g.edge_ids
    for signs in product((1, -1), repeat=len(ids)):
        if from_signed(SignedGraph(g, dict(zip(ids, signs)))) == b:
            return True
    return False


@given(signed_graphs(max_vertices=4, max_edges=6), st.data())
def test_signed_representability_brute_force(s, data):
    # perturb a signed bias by toggling cycles, keeping only theta-valid results
    b = from_signed(s)
    cycles = [frozenset(c) for c in enumerate_cycles(s.graph)]
    toggle = data.draw(st.sets(st.sampled_from(cycles))) if cycles else set()
    cand = BiasedGraph(s.graph, set(b.balanced) ^ toggle)
    if not validate_theta_property(cand)[0]:
        return
    res = signed_representability(cand)
    assert isinstance(res, SignedGraph) == _brute_signable(cand)
    if isinstance(res, SignedGraph):
        assert from_signed(res) == cand
    else:
        theta = set(res.edges)
        assert theta in [set(t) for t in enumerate_thetas(s.graph)]
        assert all(c not in cand.balanced for c in cycles if c <= theta)
