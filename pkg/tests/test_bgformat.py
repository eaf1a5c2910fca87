import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from biasmat.acceptance import random_graph_file
from biasmat.bgformat import GraphFile, parse, read, render, write
from biasmat.biased import BiasedGraph, SignedGraph, from_signed
from biasmat.errors import InputError, ParseError, ValidationError
from biasmat.graph_core import MultiGraph, relabel

from strategies import signed_graphs

TRIANGLE = """bias all
vertex a
vertex b
vertex c
edge e1 a b
edge e2 b c
edge e3 a c
"""


def test_triangle_all_balanced():
    f = parse(TRIANGLE)
    assert f.kind == "biased"
    assert f.biased.balanced == {frozenset({"e1", "e2", "e3"})}
    assert render(f) == TRIANGLE


def test_negative_loop_is_unbalanced():
    f = parse("bias signed\nvertex u\nedge e1 u u sign=-\n")
    assert f.kind == "signed" and f.signed.sign["e1"] == -1
    assert f.biased.balanced == frozenset()


def test_plain_graph_and_comments():
    f = parse("# header\nvertex a  # trailing\nvertex b\n\nedge x a b\n")
    assert f.kind == "graph" and f.bias is None
    assert f.as_biased() == BiasedGraph.all_balanced(f.graph)
    assert render(f) == "vertex a\nvertex b\nedge x a b\n"


def test_explicit_bias():
    text = "bias explicit\nvertex a\nvertex b\nedge p a b\nedge q a b\nedge r a b\nbalanced p q\n"
    f = parse(text)
    assert f.biased.balanced == {frozenset("pq")}
    assert render(f) == text


@pytest.mark.parametrize(
    "text, line, col",
    [
        ("vertex a\nedge e1 a zz\n", 2, 11),
        ("vertex a\nvertex a\n", 2, 8),
        ("vertex a\nedge e1 a a\nedge e1 a a\n", 3, 6),
        ("vertex a\nedge e1 a a sign=-\n", 2, 13),
        ("bias signed\nvertex a\nedge e1 a a sign=?\n", 3, 13),
        ("bias all\nvertex a\nedge e1 a a\nbalanced e1\n", 4, 1),
        ("bias explicit\nvertex a\nedge e1 a a\nbalanced e9\n", 4, 10),
        ("frobnicate\n", 1, 1),
        ("bias maybe\n", 1, 1),
        ("bias all\nbias none\n", 2, 1),
    ],
)
def test_parse_errors_report_position(text, line, col):
    with pytest.raises(ParseError) as exc:
        parse(text)
    assert not isinstance(exc.value, ValidationError)
    assert (exc.value.line, exc.value.column) == (line, col)
    assert f"line {line}, col {col}" in str(exc.value)


def test_non_cycle_balanced_line():
    with pytest.raises(ValidationError) as exc:
        parse("bias explicit\nvertex a\nvertex b\nvertex c\nedge e1 a b\nedge e2 b c\nbalanced e1 e2\n")
    assert exc.value.line == 7


def test_theta_violation_reports_theta():
    text = "bias explicit\nvertex a\nvertex b\nedge p a b\nedge q a b\nedge r a b\nbalanced p q\nbalanced q r\n"
    with pytest.raises(ValidationError) as exc:
        parse(text)
    assert exc.value.theta == {"p", "q", "r"}
    assert exc.value.line == 8


def test_render_rejects_untokenisable_names():
    g = MultiGraph({"a b": (0, 1)})
    with pytest.raises(InputError):
        render(GraphFile.of_graph(g))
    with pytest.raises(InputError):
        GraphFile.of_biased(BiasedGraph.all_balanced(g), "signed")


@given(signed_graphs(max_vertices=6, max_edges=12))
def test_signed_round_trip(s):
    # the format is textual: vertex names come back as strings
    g = relabel(s.graph, {v: f"v{v}" for v in s.graph.vertices})
    s = SignedGraph(g, s.sign)
    f = GraphFile.of_signed(s)
    text = render(f)
    back = parse(text)
    assert back == f and render(back) == text
    assert back.biased == from_signed(s)


@given(st.integers(0, 10**6))
def test_random_file_round_trip(seed):
    f = random_graph_file(random.Random(seed))
    text = render(f)
    assert parse(text) == f
    assert render(parse(text)) == text


def test_read_write(tmp_path):
    f = parse(TRIANGLE)
    path = tmp_path / "t.bg"
    write(path, f)
    assert path.read_text() == TRIANGLE
    assert read(path) == f
