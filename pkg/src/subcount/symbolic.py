"""Formal sums of placement polynomials, collected modulo isomorphism.

A ``JExpr`` is a finite sum ``sum_J m_J(n) * j~(J)`` keyed by canonical
graph keys; a ``KExpr`` is the marked analogue ``sum m_{J,L} * k~(J, L)``
keyed by coloured canonical keys (blue vertices = ``L``).  The pipeline

    expand_plus / expand_minus -> k_mul ... -> apex_close -> reduce_isolated

turns a vertex sum of products of neighborhood counts into its normal form
over graphs without isolated vertices.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterator, Mapping

from .counting import j_count_subsets, k_count_subsets
from .graphs import (
    ColoredGraph,
    SmallGraph,
    _bits,
    _canonical,
    automorphism_count,
    canonical_key,
    emit_graph6,
    graph_from_key,
)
from .polynom import RationalPoly
from .terms import MAX_BUDGET, TermSpec

MAX_FACTOR_VERTICES = 5
EMPTY_KEY = b"?"


class AmbientMismatch(TypeError):
    """Raised when combining a plain and a marked expression."""


class _Combination:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[bytes, RationalPoly | int | Fraction] | None = None):
        clean = {}
        for k, c in (terms or {}).items():
            c = c if isinstance(c, RationalPoly) else RationalPoly([c])
            if c:
                clean[k] = c
        self.terms: dict[bytes, RationalPoly] = clean

    def _check(self, other):
        if type(other) is not type(self):
            raise AmbientMismatch(f"cannot combine {type(self).__name__} with {type(other).__name__}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, RationalPoly()) + c
        return type(self)(out)

    def __neg__(self):
        return type(self)({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: RationalPoly | int | Fraction):
        return type(self)({k: v * c for k, v in self.terms.items()})

    def __eq__(self, other):
        return type(other) is type(self) and self.terms == other.terms

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[bytes, RationalPoly]]:
        return iter(sorted(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, key: bytes) -> RationalPoly:
        return self.terms.get(key, RationalPoly())

    def max_vertices(self) -> int:
        return max((k[0] - 63 for k in self.terms), default=0)

    def __repr__(self):
        body = ", ".join(f"{k.decode()}: {c}" for k, c in self)
        return f"{type(self).__name__}({{{body}}})"


class JExpr(_Combination):
    __slots__ = ()

    @classmethod
    def of(cls, g: SmallGraph, coeff=1) -> JExpr:
        return cls({canonical_key(g): coeff})

    def graphs(self) -> Iterator[tuple[SmallGraph, RationalPoly]]:
        for k, c in self:
            yield graph_from_key(k), c

    def to_json(self) -> str:
        """Deterministic JSON: graph6 key -> monomial-basis coefficients as strings."""
        obj = {k.decode(): [str(c) for c in v.coeffs] for k, v in sorted(self.terms.items())}
        return json.dumps(obj, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> JExpr:
        obj = json.loads(text)
        return cls({k.encode(): RationalPoly(Fraction(c) for c in v) for k, v in obj.items()})


class KExpr(_Combination):
    __slots__ = ()

    @classmethod
    def of(cls, g: ColoredGraph, coeff=1) -> KExpr:
        return cls({canonical_key(g): coeff})

    @classmethod
    def one(cls) -> KExpr:
        """Multiplicative identity: the empty marked graph."""
        return cls({canonical_key(ColoredGraph(SmallGraph.empty(0))): 1})

    def graphs(self) -> Iterator[tuple[ColoredGraph, RationalPoly]]:
        for k, c in self:
            yield graph_from_key(k), c


# -- gluing ------------------------------------------------------------------

def glue(g1: SmallGraph, g2: SmallGraph, blue1: int = 0, blue2: int = 0) -> Iterator[tuple[SmallGraph, int]]:
    """All gluings ``J_{I,lambda}`` of two (marked) graphs.

    For each ``I`` subset of ``V(g1)`` (by increasing size) and injection
    ``lambda: I -> V(g2)`` (lexicographic), identify ``v`` with ``lambda(v)``.
    Doubled edges cancel and colours add mod 2, both by symmetric difference.
    Vertices of ``g2`` keep their labels; unglued vertices of ``g1`` follow.
    """
    n1, n2 = g1.n, g2.n
    for size in range(min(n1, n2) + 1):
        for sub in combinations(range(n1), size):
            rest = [v for v in range(n1) if v not in sub]
            for image in permutations(range(n2), size):
                where = [0] * n1
                for v, w in zip(sub, image):
                    where[v] = w
                for i, v in enumerate(rest):
                    where[v] = n2 + i
                n = n2 + len(rest)
                rows = list(g2.adj) + [0] * len(rest)
                blue = blue2
                for v in range(n1):
                    a = where[v]
                    for u in _bits(g1.adj[v]):
                        if u < v:
                            b = where[u]
                            rows[a] ^= 1 << b
                            rows[b] ^= 1 << a
                    if blue1 >> v & 1:
                        blue ^= 1 << a
                yield SmallGraph(n, tuple(rows)), blue


@lru_cache(maxsize=None)
def _glue_keys(k1: bytes, k2: bytes, colored: bool) -> tuple[tuple[bytes, int], ...]:
    a, b = graph_from_key(k1), graph_from_key(k2)
    if colored:
        pairs = glue(a.graph, b.graph, a.blue, b.blue)
    else:
        pairs = ((g, None) for g, _ in glue(a, b))
    counts: dict[bytes, int] = {}
    for g, blue in pairs:
        key = _canonical(g.n, g.pair_bits(), blue)[0]
        counts[key] = counts.get(key, 0) + 1
    return tuple(sorted(counts.items()))


def _mul(a: _Combination, b: _Combination, colored: bool) -> dict[bytes, RationalPoly]:
    out: dict[bytes, RationalPoly] = {}
    for k1, c1 in a.terms.items():
        for k2, c2 in b.terms.items():
            c = c1 * c2
            for key, mult in _glue_keys(k1, k2, colored):
                out[key] = out.get(key, RationalPoly()) + c * mult
    return out


def j_mul(a: JExpr, b: JExpr) -> JExpr:
    if not (isinstance(a, JExpr) and isinstance(b, JExpr)):
        raise AmbientMismatch("j_mul needs two JExpr operands")
    return JExpr(_mul(a, b, colored=False))


def k_mul(a: KExpr, b: KExpr) -> KExpr:
    if not (isinstance(a, KExpr) and isinstance(b, KExpr)):
        raise AmbientMismatch("k_mul needs two KExpr operands")
    return KExpr(_mul(a, b, colored=True))


# -- reductions and closures --------------------------------------------------

def reduce_isolated(e: JExpr, ambient_size: RationalPoly | None = None) -> JExpr:
    """Strip isolated vertices, multiplying by ``|S| - |V(J)| + 1`` for each."""
    size = RationalPoly.n() if ambient_size is None else ambient_size
    out: dict[bytes, RationalPoly] = {}
    for key, coeff in e.terms.items():
        g = graph_from_key(key)
        while True:
            iso = g.isolated_vertices()
            if not iso:
                break
            coeff = coeff * (size - (g.n - 1))
            g = g.remove_vertex(iso[-1])
        k = canonical_key(g)
        out[k] = out.get(k, RationalPoly()) + coeff
    return JExpr(out)


def apex_close(e: KExpr) -> JExpr:
    """Replace each marked ``(J, L)`` by ``J`` plus a new vertex adjacent to ``L``."""
    out: dict[bytes, RationalPoly] = {}
    for key, coeff in e.terms.items():
        cg = graph_from_key(key)
        k = canonical_key(cg.graph.add_vertex(cg.blue))
        out[k] = out.get(k, RationalPoly()) + coeff
    return JExpr(out)


@lru_cache(maxsize=None)
def _expand_side(key: bytes, minus: bool) -> KExpr:
    J = graph_from_key(key)
    p = J.n
    if p > MAX_FACTOR_VERTICES:
        raise ValueError(f"factor graphs are limited to {MAX_FACTOR_VERTICES} vertices")
    pairs = [(u, v) for v in range(p) for u in range(v)]
    denom = 2 ** (len(pairs) + p) * automorphism_count(J)
    jbits = J.pair_bits()
    acc: dict[bytes, int] = {}
    for ebits in range(1 << len(pairs)):
        # sign (-1)^{|E \ E(J)|}
        sign = -1 if bin(ebits & ~jbits).count("1") & 1 else 1
        for blue in range(1 << p):
            s = -sign if minus and bin(blue).count("1") & 1 else sign
            k = _canonical(p, ebits, blue)[0]
            acc[k] = acc.get(k, 0) + s
    return KExpr({k: Fraction(v, denom) for k, v in acc.items()})


def expand_plus(J: SmallGraph) -> KExpr:
    """Marked expansion whose substituted value at vertex ``w`` is ``s(J, G_w^+)``."""
    return _expand_side(canonical_key(J), False)


def expand_minus(J: SmallGraph) -> KExpr:
    """As ``expand_plus`` for ``s(J, G_w^-)``; blue vertices carry an extra sign."""
    return _expand_side(canonical_key(J), True)


def expand_term(t: TermSpec) -> JExpr:
    """Normal form ``sum_J m_J(n) j~(J)`` of a vertex-sum term, no isolated vertices."""
    if t.budget > MAX_BUDGET:
        raise ValueError(f"term budget {t.budget} exceeds {MAX_BUDGET}")
    if not t.coefficient:
        return JExpr()
    factors = [expand_minus(g) for g in t.minus_factors] + [expand_plus(g) for g in t.plus_factors]
    # smallest first keeps intermediate products small
    factors.sort(key=len)
    prod = KExpr.one()
    for f in factors:
        prod = k_mul(prod, f)
    return reduce_isolated(apex_close(prod)).scale(t.coefficient)


def jexpr_eval(e: JExpr, host: SmallGraph) -> Fraction:
    total = Fraction(0)
    for key, coeff in e.terms.items():
        total += coeff.eval(host.n) * j_count_subsets(graph_from_key(key), host)
    return total


def kexpr_eval(e: KExpr, host: SmallGraph, apex: int) -> Fraction:
    """Value of a marked expression over ``V(host) - apex`` with ``y_u = x_{u,apex}``."""
    total = Fraction(0)
    for key, coeff in e.terms.items():
        total += coeff.eval(host.n) * k_count_subsets(graph_from_key(key), host, apex)
    return total


def render(e: JExpr, labels: Mapping[bytes, str] | None = None) -> str:
    """Human-readable normal form in the falling-factorial basis.

    Terms are ordered by graph size; keys found in ``labels`` (e.g. catalog
    indices ``g_7``) are shown by label, others as ``j[graph6]``.
    """
    labels = labels or {}
    parts = []

    def order(item):
        k, _ = item
        lab = labels.get(k, "")
        num = int(lab[2:]) if lab.startswith("g_") and lab[2:].isdigit() else 10**6
        return (k[0], num, k)

    for key, coeff in sorted(e.terms.items(), key=order):
        name = labels.get(key) or f"j[{key.decode()}]"
        fs = coeff.falling_str()
        simple = "+" not in fs[1:] and " - " not in fs
        if key == EMPTY_KEY:
            parts.append(fs)
        elif fs == "1":
            parts.append(name)
        elif fs == "-1":
            parts.append("-" + name)
        elif simple:
            parts.append(f"{fs}·{name}")
        else:
            parts.append(f"({fs})·{name}")
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


def graph6_label(g: SmallGraph) -> str:
    return emit_graph6(g).decode()
