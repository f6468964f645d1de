"""Named graph constructors: ``K_5-(P_3\\cup K_2)``, ``T_{3,1}``, ``2K_2`` ...

Grammar (loosest binding first)::

    union  := diff ( ('\\cup' | '∪' | '|') diff )*
    diff   := atom ( ('-' atom) | ('+' 'K_2') )*
    atom   := [count] base | [count] '(' union ')'
    base   := K_n | K_{a,b} | P_n | C_n | T_{n,k} | E_n

``G - H`` deletes the edges of ``H`` placed on vertices ``0..|H|-1`` of ``G``
(every such edge must exist).  ``G + K_2`` adds one edge, between the first
non-adjacent pair in lexicographic order.
"""

from __future__ import annotations

import re

from .graphs import GraphError, SmallGraph, make_graph

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<base>[KPCTE])_?(?:\{(?P<args>[^}]*)\}|(?P<num>\d+))"
    r"|(?P<count>\d+)"
    r"|(?P<union>\\cup|∪|\|)"
    r"|(?P<op>[-+−])"
    r"|(?P<paren>[()])"
    r")"
)


class GraphNameError(GraphError):
    pass


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise GraphNameError(f"cannot parse graph name {text!r} at position {pos}")
        pos = m.end()
        if m.group("base"):
            args = m.group("args") if m.group("args") is not None else m.group("num")
            out.append(("base", m.group("base") + ":" + args.replace(" ", "")))
        elif m.group("count"):
            out.append(("count", m.group("count")))
        elif m.group("union"):
            out.append(("union", "|"))
        elif m.group("op"):
            out.append(("op", "-" if m.group("op") in "-−" else "+"))
        elif m.group("paren"):
            out.append(("paren", m.group("paren")))
    return out


def _base(kind: str, args: str) -> SmallGraph:
    try:
        nums = [int(a) for a in args.split(",")]
    except ValueError:
        raise GraphNameError(f"bad arguments {args!r} for {kind}") from None
    if kind == "K" and len(nums) == 2:
        a, b = nums
        return make_graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])
    if kind == "T" and len(nums) == 2:
        m, k = nums
        if not 0 <= k <= m:
            raise GraphNameError(f"T_{{{m},{k}}} needs 0 <= k <= m")
        edges = [(i, j) for i in range(m) for j in range(i + 1, m)]
        return make_graph(m + 1, edges + [(i, m) for i in range(k)])
    if len(nums) != 1:
        raise GraphNameError(f"{kind} takes one argument, got {args!r}")
    n = nums[0]
    if kind == "K":
        return make_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
    if kind == "E":
        return SmallGraph.empty(n)
    if kind == "P":
        return make_graph(n, [(i, i + 1) for i in range(n - 1)])
    if kind == "C":
        if n < 3:
            raise GraphNameError("cycles need at least 3 vertices")
        return make_graph(n, [(i, (i + 1) % n) for i in range(n)])
    raise GraphNameError(f"unknown graph family {kind}")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise GraphNameError(f"unexpected {tok[1]!r} in graph name {self.text!r}")
        self.i += 1
        return tok

    def union(self) -> SmallGraph:
        g = self.diff()
        while self.peek()[0] == "union":
            self.take()
            g = g.disjoint_union(self.diff())
        return g

    def diff(self) -> SmallGraph:
        g = self.atom()
        while self.peek()[0] == "op":
            op = self.take()[1]
            h = self.atom()
            g = _minus(g, h) if op == "-" else _plus(g, h)
        return g

    def atom(self) -> SmallGraph:
        copies = 1
        if self.peek()[0] == "count":
            copies = int(self.take()[1])
        kind, val = self.peek()
        if kind == "base":
            self.take()
            fam, args = val.split(":", 1)
            g = _base(fam, args)
        elif kind == "paren" and val == "(":
            self.take()
            g = self.union()
            self.take("paren", ")")
        else:
            raise GraphNameError(f"expected a graph in {self.text!r}")
        out = SmallGraph.empty(0)
        for _ in range(copies):
            out = out.disjoint_union(g)
        return out


def _minus(g: SmallGraph, h: SmallGraph) -> SmallGraph:
    if h.n > g.n:
        raise GraphNameError("subtracted graph has more vertices than the host")
    edges = set(g.edges())
    for e in h.edges():
        if e not in edges:
            raise GraphNameError(f"cannot remove edge {e}: not present")
        edges.remove(e)
    return make_graph(g.n, edges)


def _plus(g: SmallGraph, h: SmallGraph) -> SmallGraph:
    if h.n != 2 or h.n_edges != 1:
        raise GraphNameError("only '+ K_2' (add one edge) is supported")
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if not g.has_edge(u, v):
                return make_graph(g.n, g.edges() + [(u, v)])
    raise GraphNameError("graph is complete; no edge to add")


def named(text: str) -> SmallGraph:
    """Build a representative of the graph class described by ``text``."""
    p = _Parser(text)
    g = p.union()
    if p.i != len(p.toks):
        raise GraphNameError(f"trailing input in graph name {text!r}")
    return g
