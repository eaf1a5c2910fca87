"""The line-oriented ``.bg`` graph format.

::

    # a comment
    bias signed
    vertex a
    vertex b
    edge e1 a b sign=-
    edge e2 a a

``bias`` is one of ``all`` (every cycle balanced), ``none`` (no cycle
balanced), ``signed`` (cycles balanced by sign parity; ``sign=+|-`` tokens
allowed, default ``+``) or ``explicit`` (``balanced`` lines list one cycle
each by edge id).  Without a ``bias`` line the file is a plain graph.
Vertices must be declared before edges use them.

:func:`render` writes a canonical text: the bias line, vertices and edges in
natural id order, balanced cycles sorted by size then ids.  Parsing the
rendered text gives back an equal object.
"""
from __future__ import annotations

from dataclasses import dataclass

from .biased import BiasedGraph, SignedGraph, find_theta_violation, from_signed
from .errors import InputError, ParseError, ValidationError
from .graph_core import MultiGraph, is_cycle, order_key, sort_ids

BIAS_MODES = ("all", "none", "signed", "explicit")


@dataclass(frozen=True)
class GraphFile:
    graph: MultiGraph
    bias: str | None = None  # one of BIAS_MODES, None for a plain graph
    signed: SignedGraph | None = None
    biased: BiasedGraph | None = None

    @property
    def kind(self) -> str:
        if self.bias is None:
            return "graph"
        return "signed" if self.bias == "signed" else "biased"

    def as_biased(self) -> BiasedGraph:
        """The biased graph this file describes; a plain graph counts as balanced."""
        if self.biased is not None:
            return self.biased
        return BiasedGraph.all_balanced(self.graph)

    @classmethod
    def of_graph(cls, g: MultiGraph) -> GraphFile:
        return cls(g)

    @classmethod
    def of_signed(cls, s: SignedGraph) -> GraphFile:
        return cls(s.graph, "signed", s, from_signed(s))

    @classmethod
    def of_biased(cls, b: BiasedGraph, mode: str = "explicit") -> GraphFile:
        if mode not in ("all", "none", "explicit"):
            raise InputError(f"bias mode {mode!r} does not describe an explicit biased graph")
        return cls(b.graph, mode, None, b)


def _tokens(line: str) -> list[tuple[int, str]]:
    """Whitespace-separated tokens with their 1-based columns, comment stripped."""
    out = []
    i, n = 0, len(line)
    while i < n:
        if line[i] == "#":
            break
        if line[i].isspace():
            i += 1
            continue
        j = i
        while j < n and not line[j].isspace() and line[j] != "#":
            j += 1
        out.append((i + 1, line[i:j]))
        i = j
    return out


def parse(text: str) -> GraphFile:
    bias = None
    bias_at = None
    vertices: list[str] = []
    vset: set[str] = set()
    edges: dict[str, tuple[str, str]] = {}
    signs: dict[str, int] = {}
    sign_tokens: list[tuple[int, int]] = []
    balanced: list[tuple[int, list[tuple[int, str]]]] = []
    for ln, line in enumerate(text.splitlines(), start=1):
        toks = _tokens(line)
        if not toks:
            continue
        col, word = toks[0]
        args = toks[1:]
        if word == "vertex":
            if len(args) != 1:
                raise ParseError("expected 'vertex <name>'", ln, col)
            c, name = args[0]
            if name in vset:
                raise ParseError(f"duplicate vertex {name!r}", ln, c)
            vset.add(name)
            vertices.append(name)
        elif word == "edge":
            if len(args) not in (3, 4):
                raise ParseError("expected 'edge <id> <u> <v> [sign=+|-]'", ln, col)
            (ci, eid), (cu, u), (cv, v) = args[:3]
            if eid in edges:
                raise ParseError(f"duplicate edge {eid!r}", ln, ci)
            for c, name in ((cu, u), (cv, v)):
                if name not in vset:
                    raise ParseError(f"unknown vertex {name!r}", ln, c)
            edges[eid] = (u, v)
            signs[eid] = 1
            if len(args) == 4:
                cs, tok = args[3]
                if tok not in ("sign=+", "sign=-"):
                    raise ParseError(f"bad sign token {tok!r}", ln, cs)
                signs[eid] = -1 if tok == "sign=-" else 1
                sign_tokens.append((ln, cs))
        elif word == "bias":
            if len(args) != 1 or args[0][1] not in BIAS_MODES:
                raise ParseError("expected 'bias all|none|signed|explicit'", ln, col)
            if bias is not None:
                raise ParseError("bias declared twice", ln, col)
            bias, bias_at = args[0][1], ln
        elif word == "balanced":
            if not args:
                raise ParseError("a balanced line lists at least one edge", ln, col)
            balanced.append((ln, args))
        else:
            raise ParseError(f"unknown directive {word!r}", ln, col)
    if bias != "signed" and sign_tokens:
        ln, c = sign_tokens[0]
        raise ParseError("sign tokens need 'bias signed'", ln, c)
    if bias != "explicit" and balanced:
        raise ParseError("balanced lines need 'bias explicit'", balanced[0][0], 1)
    g = MultiGraph(edges, vertices=vertices)
    if bias is None:
        return GraphFile(g)
    if bias == "signed":
        s = SignedGraph(g, signs)
        return GraphFile(g, bias, s, from_signed(s))
    if bias == "all":
        return GraphFile(g, bias, None, BiasedGraph.all_balanced(g))
    if bias == "none":
        return GraphFile(g, bias, None, BiasedGraph.contrabalanced(g))
    cycles, line_of = [], {}
    for ln, args in balanced:
        for c, eid in args:
            if eid not in edges:
                raise ParseError(f"unknown edge {eid!r}", ln, c)
        cyc = frozenset(eid for _, eid in args)
        if len(cyc) != len(args) or not is_cycle(g, cyc):
            raise ValidationError(f"edges {[e for _, e in args]} do not form a cycle", ln)
        cycles.append(cyc)
        line_of.setdefault(cyc, ln)
    b = BiasedGraph(g, cycles)
    theta = find_theta_violation(b)
    if theta is not None:
        inside = [line_of[c] for c in b.balanced if c <= theta]
        raise ValidationError(
            f"theta {sort_ids(theta)} has exactly two balanced cycles",
            max(inside) if inside else bias_at,
            theta=theta,
        )
    return GraphFile(g, bias, None, b)


def _check_name(x) -> str:
    t = str(x)
    if not t or any(ch.isspace() or ch == "#" for ch in t):
        raise InputError(f"name {t!r} cannot be written as a single token")
    return t


def render(f: GraphFile) -> str:
    g = f.graph
    for x in list(g.vertices) + list(g.edges):
        _check_name(x)
    lines = []
    if f.bias is not None:
        lines.append(f"bias {f.bias}")
    for v in g.vertex_ids:
        lines.append(f"vertex {v}")
    for e in g.edge_ids:
        u, v = g.ends(e)
        line = f"edge {e} {u} {v}"
        if f.bias == "signed":
            line += " sign=-" if f.signed.sign[e] < 0 else " sign=+"
        lines.append(line)
    if f.bias == "explicit":
        cycles = [sort_ids(c) for c in f.biased.balanced]
        cycles.sort(key=lambda c: (len(c), [order_key(x) for x in c]))
        for c in cycles:
            lines.append("balanced " + " ".join(str(e) for e in c))
    return "\n".join(lines) + "\n"


def read(path) -> GraphFile:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def write(path, f: GraphFile) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render(f))
