"""Table reproduction, catalog resolution, identity checks and coefficient fitting."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from itertools import chain
from math import lcm
from pathlib import Path
from typing import Iterable, Sequence

from .counting import identity_lhs_eval, j_count_subsets, term_eval
from .graphs import (
    SmallGraph,
    canonical_key,
    emit_graph6,
    enumerate_graphs,
    graph_from_key,
    parse_graph6,
    random_graph,
)
from .linsolve import InconsistentSystem, solve_exact
from .names import named
from .polynom import RationalPoly, parse_poly
from .symbolic import EMPTY_KEY, JExpr, expand_term, jexpr_eval
from .terms import TermSpec, _data, identity_terms, term_from_record

# Catalog graphs named explicitly; 15 and 28 use an undefined "+ K_2" and are
# confirmed by matching rather than trusted.
NAMED_CATALOG = {
    2: "K_2", 3: "P_3", 4: "K_3", 5: "K_{1,3}", 6: "2K_2", 7: "P_4", 8: "T_{3,1}",
    9: "C_4", 10: "K_4-K_2", 11: "K_4", 12: "K_{1,4}", 13: "K_2\\cup P_3",
    15: "K_{1,4}+K_2", 16: "P_5", 20: "K_3\\cup K_2", 23: "T_{4,1}", 24: "K_{2,3}",
    25: "K_5-K_3", 27: "C_5", 28: "C_5+K_2", 29: "K_5-P_4", 30: "K_5-(P_3\\cup K_2)",
    31: "K_5-P_3", 32: "K_5-2K_2", 33: "K_5-K_2", 34: "K_5",
}
UNTRUSTED_NAMES = frozenset({15, 28})
UNNAMED = frozenset({14, 17, 18, 19, 21, 22, 26})
CATALOG_INDICES = tuple(range(2, 35))

NAMED_IN_TEXT = "named-in-text"
RESOLVED = "resolved-by-matching"


class CatalogError(RuntimeError):
    pass


# -- data --------------------------------------------------------------------

def _falling_terms(recs: Sequence[dict]) -> RationalPoly:
    total = RationalPoly()
    for r in recs:
        total = total + (
            RationalPoly.falling_factorial(r["underline"], r["offset"]) * parse_poly(r["multiplier"]) * r["scale"]
        )
    return total


@dataclass(frozen=True)
class TableLine:
    line_id: int
    scale: int
    lhs: TermSpec
    constant: RationalPoly
    coeffs: dict  # catalog index -> RationalPoly
    label: str

    def expected(self, assignment: CatalogAssignment) -> JExpr:
        terms = {EMPTY_KEY: self.constant}
        for i, c in self.coeffs.items():
            terms[assignment.index_to_key[i]] = c
        return JExpr(terms)


def _lhs_label(scale: int, factors: Sequence[dict]) -> str:
    odd, exp = scale, 0
    while odd % 2 == 0:
        odd, exp = odd // 2, exp + 1
    sc = ("" if odd == 1 else f"{odd}·") + (f"2^{exp}" if exp > 1 else "2" if exp else "")
    sc = sc.rstrip("·") or "1"
    fs = []
    for f in factors:
        side = "G_v^+" if f["side"] == "+" else "G_v^-"
        p = f.get("power", 1)
        fs.append(f"s({f['graph']},{side})" + (f"^{p}" if p > 1 else ""))
    return f"{sc} Σ " + " ".join(fs)


@lru_cache(maxsize=None)
def load_table() -> tuple[TableLine, ...]:
    lines = []
    for rec in _data("table.json")["lines"]:
        lines.append(TableLine(
            line_id=rec["line"],
            scale=rec["scale"],
            lhs=term_from_record({"factors": rec["lhs"]}),
            constant=_falling_terms(rec["rhs_constant"]),
            coeffs={int(i): _falling_terms(v) for i, v in rec["rhs"].items()},
            label=_lhs_label(rec["scale"], rec["lhs"]),
        ))
    return tuple(lines)


@lru_cache(maxsize=None)
def expanded_table() -> tuple[JExpr, ...]:
    """``scale * expand_term(lhs)`` for every table line."""
    return tuple(expand_term(line.lhs).scale(line.scale) for line in load_table())


# -- catalog -----------------------------------------------------------------

def isolated_free_classes(min_n: int = 2, max_n: int = 5) -> list[bytes]:
    return [
        canonical_key(g)
        for n in range(min_n, max_n + 1)
        for g in enumerate_graphs(n)
        if not g.isolated_vertices()
    ]


@dataclass
class CatalogAssignment:
    index_to_key: dict[int, bytes]
    provenance: dict[int, str]
    notes: dict[int, str] = field(default_factory=dict)

    def labels(self) -> dict[bytes, str]:
        return {k: f"g_{i}" for i, k in self.index_to_key.items()}

    def to_golden(self) -> str:
        rows = ["# index\tgraph6\tprovenance\tname"]
        for i in sorted(self.index_to_key):
            name = NAMED_CATALOG.get(i, "-")
            rows.append(f"{i}\t{self.index_to_key[i].decode()}\t{self.provenance[i]}\t{name}")
        return "\n".join(rows) + "\n"

    @classmethod
    def from_golden(cls, text: str) -> CatalogAssignment:
        keys, prov = {}, {}
        for line in text.splitlines():
            if not line.strip() or line.startswith("#"):
                continue
            idx, g6, pv, _ = line.split("\t")
            keys[int(idx)] = g6.encode()
            prov[int(idx)] = pv
        return cls(keys, prov)


def _matchings(options: dict[int, list[bytes]], limit: int = 2) -> list[dict[int, bytes]]:
    order = sorted(options, key=lambda i: len(options[i]))
    found: list[dict[int, bytes]] = []

    def walk(pos: int, used: set, cur: dict):
        if len(found) >= limit:
            return
        if pos == len(order):
            found.append(dict(cur))
            return
        i = order[pos]
        for k in options[i]:
            if k not in used:
                used.add(k)
                cur[i] = k
                walk(pos + 1, used, cur)
                used.discard(k)
                del cur[i]

    walk(0, set(), {})
    return found


def resolve_catalog() -> CatalogAssignment:
    """Pin every catalog index to an isomorphism class.

    Indices with trusted names are built directly.  The unnamed indices
    and the two ``+ K_2`` names are matched against the remaining classes:
    index ``i`` may take class ``c`` only if every table line's coefficient
    of ``g_i`` equals the computed coefficient of ``c``.  The resulting
    bijection must be unique.
    """
    classes = isolated_free_classes()
    if len(classes) != len(CATALOG_INDICES):
        raise CatalogError(f"expected 33 isolated-free classes, found {len(classes)}")
    keys: dict[int, bytes] = {}
    for i, name in NAMED_CATALOG.items():
        if i not in UNTRUSTED_NAMES:
            keys[i] = canonical_key(named(name))
    if len(set(keys.values())) != len(keys) or not set(keys.values()) <= set(classes):
        raise CatalogError("named catalog graphs are not distinct isolated-free classes")
    open_idx = sorted(UNNAMED | UNTRUSTED_NAMES)
    open_classes = [c for c in classes if c not in set(keys.values())]
    lines, expansions = load_table(), expanded_table()
    zero = RationalPoly()
    options = {}
    for i in open_idx:
        options[i] = [
            c for c in open_classes
            if all(line.coeffs.get(i, zero) == exp.coefficient(c) for line, exp in zip(lines, expansions))
        ]
    found = _matchings(options)
    if not found:
        raise CatalogError(f"no consistent assignment; candidate sets {options}")
    if len(found) > 1:
        raise CatalogError("catalog assignment is not unique")
    keys.update(found[0])
    provenance, notes = {}, {}
    for i in CATALOG_INDICES:
        if i in UNNAMED:
            provenance[i] = RESOLVED
        elif i in UNTRUSTED_NAMES:
            agrees = keys[i] == canonical_key(named(NAMED_CATALOG[i]))
            provenance[i] = NAMED_IN_TEXT if agrees else RESOLVED
            notes[i] = "plus-one-edge reading confirmed" if agrees else "plus-one-edge reading rejected"
        else:
            provenance[i] = NAMED_IN_TEXT
    return CatalogAssignment(keys, provenance, notes)


def packaged_golden() -> str:
    return resources.files("subcount").joinpath("data", "catalog.golden").read_text()


def load_catalog(golden_dir: str | Path | None = None) -> CatalogAssignment:
    """The frozen catalog (packaged, or ``catalog.golden`` inside ``golden_dir``)."""
    if golden_dir is not None:
        return CatalogAssignment.from_golden((Path(golden_dir) / "catalog.golden").read_text())
    return CatalogAssignment.from_golden(packaged_golden())


# -- table -------------------------------------------------------------------

SPOT_HOSTS = ("K_3", "C_5", "K_{2,3}")


@dataclass
class LineReport:
    line_id: int
    label: str
    passed: bool
    mismatches: list[tuple[str, str, str]]  # (term, expected, computed)
    spot_checks: list[tuple[str, Fraction, Fraction]]  # (host, scale*lhs, rhs)


def verify_table(assignment: CatalogAssignment | None = None) -> list[LineReport]:
    assignment = assignment or resolve_catalog()
    labels = assignment.labels()
    labels[EMPTY_KEY] = "const"
    reports = []
    for line, got in zip(load_table(), expanded_table()):
        want = line.expected(assignment)
        mismatches = []
        for key in sorted(set(want.terms) | set(got.terms)):
            a, b = want.coefficient(key), got.coefficient(key)
            if a != b:
                name = labels.get(key, f"j[{key.decode()}]")
                mismatches.append((name, a.falling_str(), b.falling_str()))
        spots = []
        for h in SPOT_HOSTS:
            host = named(h)
            spots.append((h, line.scale * term_eval(line.lhs, host), jexpr_eval(want, host)))
        passed = not mismatches and all(a == b for _, a, b in spots)
        reports.append(LineReport(line.line_id, line.label, passed, mismatches, spots))
    return reports


# -- identity ----------------------------------------------------------------

def verify_identity_symbolic(terms: Iterable[TermSpec] | None = None) -> JExpr:
    """Sum of the normal forms of all identity terms; zero iff the identity holds."""
    total = JExpr()
    for t in identity_terms() if terms is None else terms:
        total = total + expand_term(t)
    return total


@dataclass
class NumericReport:
    checked: int
    nonzero: list[tuple[str, Fraction]]

    @property
    def passed(self) -> bool:
        return not self.nonzero


def _lhs_chunk(g6s: Sequence[bytes]) -> list[tuple[bytes, Fraction]]:
    out = []
    for s in g6s:
        v = identity_lhs_eval(parse_graph6(s))
        if v:
            out.append((s, v))
    return out


def default_hosts(max_n: int = 7, random_count: int = 50, seed: int = 0, random_n: int = 12) -> list[SmallGraph]:
    """All isomorphism classes on ``1..max_n`` vertices plus seeded G(random_n, 1/2) graphs."""
    hosts = list(chain.from_iterable(enumerate_graphs(n) for n in range(1, max_n + 1)))
    rng = random.Random(seed)
    hosts += [random_graph(random_n, 0.5, rng) for _ in range(random_count)]
    return hosts


def verify_identity_numeric(hosts: Iterable[SmallGraph], jobs: int = 1) -> NumericReport:
    """Evaluate the identity by brute-force counting on every host."""
    g6s = [emit_graph6(h) for h in hosts]
    if jobs <= 1:
        bad = _lhs_chunk(g6s)
    else:
        size = max(1, len(g6s) // (jobs * 4))
        chunks = [g6s[i:i + size] for i in range(0, len(g6s), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            bad = [r for part in pool.map(_lhs_chunk, chunks) for r in part]
    return NumericReport(len(g6s), [(s.decode(), v) for s, v in sorted(bad)])


# -- fitting -----------------------------------------------------------------

def _j_values(host: SmallGraph, keys: Sequence[bytes]) -> list[int]:
    return [j_count_subsets(graph_from_key(k), host) for k in keys]


def fit_coefficients(
    t: TermSpec,
    max_graph_size: int = 6,
    degree_bound: int = 6,
    seed: int = 0,
    random_count: int = 10,
    holdout: int = 20,
) -> JExpr:
    """Recover the normal form of ``t`` from evaluations alone.

    Unknowns are ``c[J, d]`` in ``sum_J sum_d c[J, d] n^d j(J, G)`` over
    isolated-free ``J`` with ``|V(J)| + d <= K`` (``K`` = term budget plus the
    coefficient degree) and ``d <= degree_bound``.  Equations come from every
    graph on at most ``max_graph_size`` vertices plus ``random_count`` seeded
    random graphs on 9 to 12 vertices; the exact solution is then checked on
    ``holdout`` further random graphs.
    """
    if not t.coefficient:
        return JExpr()
    K = t.budget + t.coefficient.degree
    basis = [EMPTY_KEY] + isolated_free_classes(2, K)
    unknowns = [(k, d) for k in basis for d in range(min(degree_bound, K - (k[0] - 63)) + 1)]
    rng = random.Random(seed)
    hosts = list(chain.from_iterable(enumerate_graphs(n) for n in range(1, max_graph_size + 1)))
    hosts += [random_graph(rng.randint(9, 12), 0.5, rng) for _ in range(random_count)]

    def equation(host: SmallGraph) -> tuple[list[Fraction], Fraction]:
        jv = dict(zip(basis, _j_values(host, basis)))
        return [Fraction(jv[k] * host.n ** d) for k, d in unknowns], term_eval(t, host)

    rows, rhs = [], []
    for host in hosts:
        row, b = equation(host)
        den = lcm(b.denominator, *(c.denominator for c in row))
        rows.append([int(c * den) for c in row])
        rhs.append(int(b * den))
    sol = solve_exact(rows, rhs)
    terms: dict[bytes, RationalPoly] = {}
    for (k, d), c in zip(unknowns, sol):
        if c:
            mono = [0] * d + [c]
            terms[k] = terms.get(k, RationalPoly()) + RationalPoly(mono)
    fitted = JExpr(terms)
    check = random.Random(seed + 1)
    for _ in range(holdout):
        host = random_graph(check.randint(7, 10), check.choice([0.3, 0.5, 0.7]), check)
        if jexpr_eval(fitted, host) != term_eval(t, host):
            raise InconsistentSystem("fitted coefficients fail on a held-out graph")
    return fitted
