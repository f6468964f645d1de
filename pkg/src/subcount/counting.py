"""Definition-level counters: s-counts, j-counts and identity left-hand sides.

Nothing here touches the symbolic engine; these functions are the oracle
that every symbolic result is checked against.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from typing import Sequence

from .graphs import ColoredGraph, SmallGraph, _canonical, _pair_bits, neighborhood
from .terms import TermSpec, identity_terms


@lru_cache(maxsize=8192)
def induced_census(host: SmallGraph, k: int) -> Counter:
    """Multiset of labeled induced subgraphs ``host[W]``, ``|W| = k``, as pair bits."""
    adj = host.adj
    return Counter(_pair_bits(adj, w) for w in combinations(range(host.n), k))


@lru_cache(maxsize=None)
def _class_key(k: int, bits: int) -> bytes:
    return _canonical(k, bits, None)[0]


def s_count(pattern: SmallGraph, host: SmallGraph) -> int:
    """Number of vertex subsets of ``host`` inducing a copy of ``pattern``."""
    k = pattern.n
    if k > host.n:
        return 0
    target = _class_key(k, pattern.pair_bits())
    return sum(c for bits, c in induced_census(host, k).items() if _class_key(k, bits) == target)


def j_count(pattern: SmallGraph, host: SmallGraph) -> int:
    """Sum over injections ``phi`` of ``(-1)^(#pattern edges sent to non-edges)``.

    Walks injections depth first, carrying the sign of the edges already
    placed.
    """
    k, n = pattern.n, host.n
    if k > n:
        return 0
    back = [[u for u in range(i) if pattern.adj[i] >> u & 1] for i in range(k)]
    hadj = host.adj
    image = [0] * k

    def walk(i: int, used: int, sign: int) -> int:
        if i == k:
            return sign
        total = 0
        for x in range(n):
            if used >> x & 1:
                continue
            s = sign
            row = hadj[x]
            for u in back[i]:
                if not row >> image[u] & 1:
                    s = -s
            image[i] = x
            total += walk(i + 1, used | 1 << x, s)
        return total

    return walk(0, 0, 1)


@lru_cache(maxsize=None)
def _signed_bijections(k: int, pattern_bits: int, host_bits: int) -> int:
    pat = SmallGraph.from_pair_bits(k, pattern_bits).edges()
    hrows = SmallGraph.from_pair_bits(k, host_bits).adj
    total = 0
    for perm in permutations(range(k)):
        misses = sum(1 for a, b in pat if not hrows[perm[a]] >> perm[b] & 1)
        total += -1 if misses & 1 else 1
    return total


def j_count_subsets(pattern: SmallGraph, host: SmallGraph) -> int:
    """``j_count`` via image subsets: every injection is a bijection onto some ``W``."""
    k = pattern.n
    if k > host.n:
        return 0
    pbits = pattern.pair_bits()
    return sum(c * _signed_bijections(k, pbits, bits) for bits, c in induced_census(host, k).items())


def k_count(term: ColoredGraph, host: SmallGraph, apex: int) -> int:
    """Evaluate a marked placement sum at the edge signs of ``host``.

    Sums, over injections ``phi`` of the term graph into ``V(host) - apex``,
    the product of ``x_{phi(e)}`` over its edges times ``x_{phi(u) apex}``
    over its blue vertices, where ``x`` is +1 on edges and -1 on non-edges.
    """
    g = term.graph
    others = [v for v in range(host.n) if v != apex]
    total = 0
    edges = g.edges()
    blue = term.blue_vertices()
    hadj = host.adj
    for img in permutations(others, g.n):
        sign = 1
        for a, b in edges:
            if not hadj[img[a]] >> img[b] & 1:
                sign = -sign
        for u in blue:
            if not hadj[apex] >> img[u] & 1:
                sign = -sign
        total += sign
    return total


@lru_cache(maxsize=None)
def _signed_marked(k: int, pattern_bits: int, blue: int, host_bits: int, apex_mask: int) -> int:
    pat = SmallGraph.from_pair_bits(k, pattern_bits).edges()
    hrows = SmallGraph.from_pair_bits(k, host_bits).adj
    marks = [u for u in range(k) if blue >> u & 1]
    total = 0
    for perm in permutations(range(k)):
        misses = sum(1 for a, b in pat if not hrows[perm[a]] >> perm[b] & 1)
        misses += sum(1 for u in marks if not apex_mask >> perm[u] & 1)
        total += -1 if misses & 1 else 1
    return total


def k_count_subsets(term: ColoredGraph, host: SmallGraph, apex: int) -> int:
    """``k_count`` grouped by image subset, as ``j_count_subsets`` does."""
    g = term.graph
    k = g.n
    others = [v for v in range(host.n) if v != apex]
    if k > len(others):
        return 0
    pbits = g.pair_bits()
    arow = host.adj[apex]
    total = 0
    for w in combinations(others, k):
        amask = sum(1 << i for i, v in enumerate(w) if arow >> v & 1)
        total += _signed_marked(k, pbits, term.blue, _pair_bits(host.adj, w), amask)
    return total


def _product_over_vertex(term: TermSpec, host: SmallGraph, v: int) -> int:
    value = 1
    if term.minus_factors:
        minus = neighborhood(host, v, "minus")
        for f in term.minus_factors:
            value *= s_count(f, minus)
            if not value:
                return 0
    if term.plus_factors:
        plus = neighborhood(host, v, "plus")
        for f in term.plus_factors:
            value *= s_count(f, plus)
            if not value:
                return 0
    return value


def term_eval(term: TermSpec, host: SmallGraph) -> Fraction:
    """``c(n) * sum_v prod s(J_i, G_v^-) prod s(J'_j, G_v^+)`` with ``n = |V(host)|``."""
    c = term.coefficient.eval(host.n)
    if not c:
        return Fraction(0)
    return c * sum(_product_over_vertex(term, host, v) for v in range(host.n))


def identity_lhs_eval(host: SmallGraph, terms: Sequence[TermSpec] | None = None) -> Fraction:
    """Brute-force ``sum_v p_1(G_v^+) + p_2(G_v^-) + p_3(G_v^+, G_v^-)``."""
    if terms is None:
        terms = identity_terms()
    return sum((term_eval(t, host) for t in terms), Fraction(0))
