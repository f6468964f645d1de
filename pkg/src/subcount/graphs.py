"""Small labeled graphs, canonical forms, graph6 I/O and enumeration.

Graphs are stored as per-vertex adjacency bit rows: bit ``u`` of ``adj[v]``
is set iff ``uv`` is an edge.  Everything here is immutable and cheap to hash,
so results of canonicalization are cached aggressively.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 12


class GraphError(ValueError):
    """Malformed graph input (bad vertex, self-loop, bad encoding)."""


class GraphSizeError(GraphError):
    """A graph exceeds the supported vertex bound."""


def _check_size(n: int, bound: int = MAX_VERTICES) -> None:
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    if n > bound:
        raise GraphSizeError(f"{n} vertices exceeds the bound of {bound}")


@dataclass(frozen=True)
class SmallGraph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        _check_size(self.n)
        if len(self.adj) != self.n:
            raise GraphError("adjacency rows do not match vertex count")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"row {v} references a vertex out of range")
            if row >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            for u in _bits(row):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"adjacency not symmetric at ({v}, {u})")

    @property
    def n_vertices(self) -> int:
        return self.n

    @classmethod
    def empty(cls, n: int = 0) -> SmallGraph:
        return cls(n, (0,) * n)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for v in range(self.n) for u in range(v) if self.adj[v] >> u & 1]

    @property
    def n_edges(self) -> int:
        return sum(bin(r).count("1") for r in self.adj) // 2

    def degree(self, v: int) -> int:
        return bin(self.adj[v]).count("1")

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def isolated_vertices(self) -> list[int]:
        return [v for v in range(self.n) if not self.adj[v]]

    def induced(self, vertices: Sequence[int]) -> SmallGraph:
        """Induced subgraph, relabeled so ``vertices[i]`` becomes ``i``."""
        index = {v: i for i, v in enumerate(vertices)}
        rows = []
        for v in vertices:
            row = 0
            for u in _bits(self.adj[v]):
                i = index.get(u)
                if i is not None:
                    row |= 1 << i
            rows.append(row)
        return SmallGraph(len(vertices), tuple(rows))

    def relabel(self, perm: Sequence[int]) -> SmallGraph:
        """Graph whose vertex ``i`` is this graph's vertex ``perm[i]``."""
        return self.induced(perm)

    def remove_vertex(self, v: int) -> SmallGraph:
        return self.induced([u for u in range(self.n) if u != v])

    def add_vertex(self, neighbors: int) -> SmallGraph:
        """Append vertex ``n`` adjacent to the vertices in bitmask ``neighbors``."""
        rows = [row | ((neighbors >> v & 1) << self.n) for v, row in enumerate(self.adj)]
        rows.append(neighbors)
        return SmallGraph(self.n + 1, tuple(rows))

    def complement(self) -> SmallGraph:
        full = (1 << self.n) - 1
        return SmallGraph(self.n, tuple(full & ~r & ~(1 << v) for v, r in enumerate(self.adj)))

    def disjoint_union(self, other: SmallGraph) -> SmallGraph:
        shift = self.n
        return SmallGraph(self.n + other.n, self.adj + tuple(r << shift for r in other.adj))

    def pair_bits(self) -> int:
        """Upper triangle as an integer, pair ``t`` in graph6 column order at bit ``t``."""
        return _pair_bits(self.adj, range(self.n))

    @classmethod
    def from_pair_bits(cls, n: int, bits: int) -> SmallGraph:
        rows = [0] * n
        t = 0
        for j in range(1, n):
            for i in range(j):
                if bits >> t & 1:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
                t += 1
        return cls(n, tuple(rows))

    def __repr__(self) -> str:
        return f"SmallGraph({self.n}, {self.edges()})"


@dataclass(frozen=True)
class ColoredGraph:
    """A graph together with a set of blue vertices, stored as a bitmask."""

    graph: SmallGraph
    blue: int = 0

    def __post_init__(self):
        if self.blue < 0 or self.blue >> self.graph.n:
            raise GraphError("blue set is not a subset of the vertex set")

    def blue_vertices(self) -> list[int]:
        return list(_bits(self.blue))


def _bits(mask: int) -> Iterator[int]:
    v = 0
    while mask:
        if mask & 1:
            yield v
        mask >>= 1
        v += 1


def _pair_bits(adj: Sequence[int], vertices: Sequence[int]) -> int:
    vs = list(vertices)
    bits = 0
    t = 0
    for j in range(1, len(vs)):
        row = adj[vs[j]]
        for i in range(j):
            if row >> vs[i] & 1:
                bits |= 1 << t
            t += 1
    return bits


def make_graph(n: int, edges: Iterable[tuple[int, int]]) -> SmallGraph:
    _check_size(n)
    rows = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return SmallGraph(n, tuple(rows))


# -- canonical forms ---------------------------------------------------------

def _refined_cells(adj: Sequence[int], blue: int) -> list[list[int]]:
    """Ordered vertex cells from colour refinement seeded by (blue, degree).

    Cell order depends only on the isomorphism class, so restricting the
    relabeling search to cell-respecting permutations keeps the minimum
    canonical.
    """
    n = len(adj)
    nbrs = [list(_bits(r)) for r in adj]
    colors = [(blue >> v & 1, len(nbrs[v])) for v in range(n)]
    ranks = {c: i for i, c in enumerate(sorted(set(colors)))}
    cur = [ranks[c] for c in colors]
    while True:
        sigs = [(cur[v], tuple(sorted(cur[u] for u in nbrs[v]))) for v in range(n)]
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        stable = len(ranks) == len(set(cur))
        cur = new
        if stable:
            break
    cells: list[list[int]] = [[] for _ in range(max(cur, default=-1) + 1)]
    for v, c in enumerate(cur):
        cells[c].append(v)
    return cells


def _encode_key(n: int, bits: int, blue: int | None) -> bytes:
    g6 = _graph6_from_bits(n, bits)
    if blue is None:
        return g6
    return g6 + b";" + "".join("1" if blue >> v & 1 else "0" for v in range(n)).encode()


@lru_cache(maxsize=None)
def _canonical(n: int, bits: int, blue: int | None) -> tuple[bytes, int, tuple[int, ...]]:
    g = SmallGraph.from_pair_bits(n, bits)
    adj = g.adj
    cells = _refined_cells(adj, blue or 0)
    best = -1
    best_perm: tuple[int, ...] = ()
    count = 0
    npairs = n * (n - 1) // 2
    for parts in product(*(permutations(c) for c in cells)):
        perm = tuple(v for part in parts for v in part)
        # Most significant bit = first pair in graph6 order; the lexicographically
        # least bit string is the numerically smallest code.
        code = 0
        for j in range(1, n):
            row = adj[perm[j]]
            for i in range(j):
                code = code << 1 | (row >> perm[i] & 1)
        if best < 0 or code < best:
            best, best_perm, count = code, perm, 1
        elif code == best:
            count += 1
    canon_bits = 0
    for t in range(npairs):
        if best >> (npairs - 1 - t) & 1:
            canon_bits |= 1 << t
    canon_blue = None
    if blue is not None:
        canon_blue = sum(1 << i for i, v in enumerate(best_perm) if blue >> v & 1)
    return _encode_key(n, canon_bits, canon_blue), count, best_perm


def canonical_form(g: SmallGraph | ColoredGraph) -> tuple[bytes, int]:
    """Return ``(key, automorphism_count)``.

    Keys are the graph6 string of the canonical relabeling, followed for
    coloured graphs by ``;`` and a 0/1 blue indicator per canonical vertex.
    Colour-preserving isomorphism is used for ``ColoredGraph``.
    """
    if isinstance(g, ColoredGraph):
        key, aut, _ = _canonical(g.graph.n, g.graph.pair_bits(), g.blue)
    else:
        key, aut, _ = _canonical(g.n, g.pair_bits(), None)
    return key, aut


def canonical_key(g: SmallGraph | ColoredGraph) -> bytes:
    return canonical_form(g)[0]


def automorphism_count(g: SmallGraph | ColoredGraph) -> int:
    return canonical_form(g)[1]


def is_isomorphic(a: SmallGraph, b: SmallGraph) -> bool:
    return a.n == b.n and a.n_edges == b.n_edges and canonical_key(a) == canonical_key(b)


@lru_cache(maxsize=None)
def graph_from_key(key: bytes) -> SmallGraph | ColoredGraph:
    """Decode a canonical key back into its (canonically labeled) graph."""
    if b";" in key:
        g6, marks = key.split(b";", 1)
        g = parse_graph6(g6)
        blue = sum(1 << v for v, c in enumerate(marks) if c == ord("1"))
        return ColoredGraph(g, blue)
    return parse_graph6(key)


# -- graph6 ------------------------------------------------------------------

def _graph6_from_bits(n: int, bits: int) -> bytes:
    out = bytearray([63 + n])
    npairs = n * (n - 1) // 2
    for start in range(0, npairs, 6):
        val = 0
        for t in range(start, start + 6):
            val = val << 1 | (bits >> t & 1 if t < npairs else 0)
        out.append(63 + val)
    return bytes(out)


def emit_graph6(g: SmallGraph) -> bytes:
    if g.n > 62:
        raise GraphSizeError("graph6 short form only covers n <= 62")
    return _graph6_from_bits(g.n, g.pair_bits())


def parse_graph6(text: bytes | str) -> SmallGraph:
    """Parse one graph6 line (trailing newline allowed).

    Nonzero padding bits in the last group are ignored.
    """
    data = text.encode("ascii") if isinstance(text, str) else bytes(text)
    data = data.rstrip(b"\r\n")
    if data.startswith(b">>graph6<<"):
        data = data[len(b">>graph6<<"):]
    if not data:
        raise GraphError("empty graph6 line")
    for c in data:
        if not 63 <= c <= 126:
            raise GraphError(f"graph6 byte {c!r} outside 63..126")
    if data[0] == 126:
        raise GraphSizeError("graph6 long form (n > 62) is not supported")
    n = data[0] - 63
    _check_size(n)
    npairs = n * (n - 1) // 2
    ngroups = -(-npairs // 6)
    if len(data) != 1 + ngroups:
        raise GraphError(f"graph6 line for n={n} needs {1 + ngroups} bytes, got {len(data)}")
    bits = 0
    for t in range(npairs):
        group = data[1 + t // 6] - 63
        if group >> (5 - t % 6) & 1:
            bits |= 1 << t
    return SmallGraph.from_pair_bits(n, bits)


def read_graph6_file(path) -> list[SmallGraph]:
    """Read a graph6 file; parse errors name the offending line."""
    graphs = []
    with open(path, "rb") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                graphs.append(parse_graph6(line))
            except GraphError as exc:
                raise GraphError(f"{path}:{lineno}: {exc}") from None
    return graphs


# -- neighborhoods, enumeration, random graphs --------------------------------

def neighborhood(g: SmallGraph, v: int, side: str) -> SmallGraph:
    """``G_v^+`` (``side='plus'``) or ``G_v^-`` (``side='minus'``).

    The non-neighborhood excludes ``v`` itself.
    """
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range")
    if side in ("plus", "+"):
        return g.induced(list(_bits(g.adj[v])))
    if side in ("minus", "-"):
        return g.induced([u for u in range(g.n) if u != v and not g.adj[v] >> u & 1])
    raise ValueError(f"side must be 'plus' or 'minus', not {side!r}")


@lru_cache(maxsize=None)
def enumerate_graphs(n: int) -> tuple[SmallGraph, ...]:
    """One canonically labeled representative per isomorphism class on ``n`` vertices."""
    _check_size(n, 8)
    if n <= 6:
        seen = {}
        npairs = n * (n - 1) // 2
        for bits in range(1 << npairs):
            key = _canonical(n, bits, None)[0]
            if key not in seen:
                seen[key] = None
    else:
        seen = {}
        for g in enumerate_graphs(n - 1):
            for nbrs in range(1 << (n - 1)):
                h = g.add_vertex(nbrs)
                key = _canonical(n, h.pair_bits(), None)[0]
                if key not in seen:
                    seen[key] = None
    reps = [parse_graph6(k) for k in sorted(seen)]
    return tuple(sorted(reps, key=lambda g: g.n_edges))


def random_graph(n: int, p: float, rng: random.Random) -> SmallGraph:
    return make_graph(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p])
