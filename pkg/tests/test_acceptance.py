"""Acceptance criteria, one test each; every test records a PASS/FAIL line.

Run on its own with ``pytest tests/test_acceptance.py -s`` to see the lines
inline; the summary section at the end of any run lists them too.
"""

import math
import random
import time
from collections import Counter
from fractions import Fraction
from itertools import chain

import pytest

from conftest import ACCEPTANCE_LINES
from subcount.counting import identity_lhs_eval, term_eval
from subcount.graphs import (
    ColoredGraph,
    SmallGraph,
    _canonical,
    automorphism_count,
    emit_graph6,
    enumerate_graphs,
    parse_graph6,
    random_graph,
)
from subcount.polynom import RationalPoly
from subcount.symbolic import JExpr, KExpr, expand_term, j_mul, jexpr_eval, k_mul
from subcount.terms import parse_term
from subcount.verify import (
    UNNAMED,
    UNTRUSTED_NAMES,
    expanded_table,
    fit_coefficients,
    load_table,
    packaged_golden,
    resolve_catalog,
    verify_identity_symbolic,
    verify_table,
)


def record(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {number}. {title}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_1_table_reproduction():
    expanded_table.cache_clear()
    start = time.perf_counter()
    reports = verify_table(resolve_catalog())
    elapsed = time.perf_counter() - start
    passed = sum(r.passed for r in reports)
    ok = passed == len(reports) == 25 and elapsed < 60
    record(1, "table reproduction", ok, f"{passed}/{len(reports)} lines exact, {elapsed:.1f}s")


def test_2_identity_symbolic():
    start = time.perf_counter()
    total = verify_identity_symbolic()
    elapsed = time.perf_counter() - start
    ok = total.is_zero() and elapsed < 60
    record(2, "identity, symbolic", ok, f"{len(total)} surviving terms, {elapsed:.1f}s")


def test_3_identity_numeric():
    hosts = list(chain.from_iterable(enumerate_graphs(n) for n in range(1, 8)))
    n_classes = len(hosts)
    rng = random.Random(0)
    hosts += [random_graph(12, 0.5, rng) for _ in range(50)]
    start = time.perf_counter()
    bad = [emit_graph6(h).decode() for h in hosts if identity_lhs_eval(h) != 0]
    elapsed = time.perf_counter() - start
    ok = not bad and n_classes == 1252
    record(3, "identity, numeric", ok,
           f"{len(bad)} nonzero over {n_classes} classes on 1..7 vertices + 50 random G(12,1/2) seed 0, {elapsed:.1f}s")


def test_4_oracle_equivalence():
    hosts = list(chain.from_iterable(enumerate_graphs(n) for n in range(0, 7)))
    checked, mismatches = 0, []
    for line in load_table():
        e = expand_term(line.lhs)
        for host in hosts:
            checked += 1
            if jexpr_eval(e, host) != term_eval(line.lhs, host):
                mismatches.append((line.line_id, emit_graph6(host)))
    record(4, "oracle equivalence", not mismatches,
           f"{checked - len(mismatches)}/{checked} (line, host) pairs exact on hosts with <= 6 vertices")


def test_5_dual_method_agreement():
    required = {"s(K_1,+)", "s(K_2,+)", "s(P_3,-)", "s(K_1,+) s(K_2,-)"}
    agree, required_ok = 0, 0
    for line in load_table():
        if expand_term(line.lhs) == fit_coefficients(line.lhs, 6, 6):
            agree += 1
    for text in required:
        t = parse_term(text)
        required_ok += fit_coefficients(t, 6, 6) == expand_term(t)
    ok = required_ok == len(required) and agree == len(load_table())
    record(5, "dual-method agreement", ok,
           f"{required_ok}/{len(required)} required terms, {agree}/{len(load_table())} table lines fitted exactly")


def test_6_catalog_resolution():
    first, second = resolve_catalog(), resolve_catalog()
    open_idx = UNNAMED | UNTRUSTED_NAMES
    ok = (
        first.to_golden() == second.to_golden() == packaged_golden()
        and open_idx <= first.index_to_key.keys()
        and len(set(first.index_to_key.values())) == 33
    )
    record(6, "catalog resolution", ok,
           f"unique assignment for {len(open_idx)} open indices, golden byte-equal across runs")


def _orbit_stabilizer(max_n: int) -> bool:
    for n in range(0, max_n + 1):
        sizes = Counter(_canonical(n, bits, None)[0] for bits in range(1 << (n * (n - 1) // 2)))
        if any(automorphism_count(parse_graph6(k)) * c != math.factorial(n) for k, c in sizes.items()):
            return False
    return True


def _graph6_round_trip(rng) -> int:
    count = 0
    for n in range(0, 6):
        for bits in range(1 << (n * (n - 1) // 2)):
            g = SmallGraph.from_pair_bits(n, bits)
            assert parse_graph6(emit_graph6(g)) == g
            count += 1
    for g in chain(enumerate_graphs(6), enumerate_graphs(7)):
        assert parse_graph6(emit_graph6(g)) == g
        count += 1
    for _ in range(2000):
        g = random_graph(rng.randint(6, 8), rng.random(), rng)
        assert parse_graph6(emit_graph6(g)) == g
        count += 1
    return count


def _vertex_bounds(rng) -> int:
    small = list(chain.from_iterable(enumerate_graphs(n) for n in range(0, 4)))
    count = 0
    for a in small:
        for b in small:
            prod = j_mul(JExpr.of(a), JExpr.of(b))
            assert prod.max_vertices() <= a.n + b.n
            ka = KExpr.of(ColoredGraph(a, rng.getrandbits(a.n) if a.n else 0))
            kb = KExpr.of(ColoredGraph(b, rng.getrandbits(b.n) if b.n else 0))
            assert k_mul(ka, kb).max_vertices() <= a.n + b.n
            count += 2
    return count


def _ring_axioms(rng) -> int:
    def poly():
        return RationalPoly(Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(rng.randint(0, 5)))

    for _ in range(300):
        a, b, c = poly(), poly(), poly()
        assert a + b == b + a and a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert RationalPoly.from_falling_basis(a.to_falling_basis()) == a
    return 300


def test_7_structural_invariants():
    rng = random.Random(7)
    try:
        results = {
            "orbit-stabilizer <= 6": _orbit_stabilizer(6),
            "graph6 round-trip <= 8": _graph6_round_trip(rng),
            "product vertex bounds": _vertex_bounds(rng),
            "ring axioms": _ring_axioms(rng),
        }
        ok = all(results.values())
        detail = ", ".join(f"{k}: {'ok' if v else 'FAIL'}" for k, v in results.items())
    except AssertionError as exc:
        ok, detail = False, f"violation {exc!r}"
    record(7, "structural invariants", ok, detail + " (full property suites in the other test modules)")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-s", "-q"]))
