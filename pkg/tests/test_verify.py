import random
from fractions import Fraction
from pathlib import Path

import pytest

from subcount.counting import term_eval
from subcount.graphs import canonical_key, random_graph
from subcount.linsolve import InconsistentSystem, SingularSystem, solve_exact
from subcount.names import named
from subcount.symbolic import JExpr, expand_term, jexpr_eval
from subcount.terms import TermSpec, identity_records, identity_terms, parse_term, term_from_record
from subcount.verify import (
    NAMED_CATALOG,
    NAMED_IN_TEXT,
    RESOLVED,
    UNNAMED,
    UNTRUSTED_NAMES,
    CatalogAssignment,
    default_hosts,
    expanded_table,
    fit_coefficients,
    isolated_free_classes,
    load_catalog,
    load_table,
    packaged_golden,
    resolve_catalog,
    verify_identity_numeric,
    verify_identity_symbolic,
    verify_table,
)

GOLDENS = Path(__file__).parent / "goldens"


@pytest.fixture(scope="module")
def catalog():
    return resolve_catalog()


def test_isolated_free_partition():
    sizes = [len(isolated_free_classes(n, n)) for n in range(2, 6)]
    assert sizes == [1, 2, 7, 23]
    assert len(isolated_free_classes()) == 33


def test_catalog_examples(catalog):
    keys = catalog.index_to_key
    assert keys[9] == canonical_key(named("C_4"))
    assert keys[30] == canonical_key(named("K_5-(P_3\\cup K_2)"))
    assert keys[2] == b"A_"


def test_catalog_is_a_bijection(catalog):
    assert sorted(catalog.index_to_key) == list(range(2, 35))
    assert sorted(catalog.index_to_key.values()) == sorted(isolated_free_classes())


def test_catalog_provenance(catalog):
    prov = catalog.provenance
    assert {i for i, p in prov.items() if p == RESOLVED} == set(UNNAMED)
    assert all(prov[i] == NAMED_IN_TEXT for i in NAMED_CATALOG)
    for i in NAMED_CATALOG.keys() - UNTRUSTED_NAMES:
        assert catalog.index_to_key[i] == canonical_key(named(NAMED_CATALOG[i]))


def test_loosely_named_entries_confirmed(catalog):
    # the matching, not the name, decides these two; both agree with the names
    for i in UNTRUSTED_NAMES:
        assert catalog.index_to_key[i] == canonical_key(named(NAMED_CATALOG[i]))


def test_golden_is_stable(catalog):
    assert catalog.to_golden() == packaged_golden()
    again = CatalogAssignment.from_golden(packaged_golden())
    assert again.index_to_key == catalog.index_to_key
    assert load_catalog().index_to_key == catalog.index_to_key


def test_load_catalog_from_dir(tmp_path, catalog):
    (tmp_path / "catalog.golden").write_text(catalog.to_golden())
    assert load_catalog(tmp_path).index_to_key == catalog.index_to_key


def test_table_lines_loaded():
    lines = load_table()
    assert [ln.line_id for ln in lines] == list(range(1, 26))
    assert all(ln.lhs.budget <= 5 for ln in lines)
    assert all(" Σ s(" in ln.label for ln in lines)


def test_verify_table_all_pass(catalog):
    reports = verify_table(catalog)
    assert len(reports) == 25
    failing = [(r.line_id, r.mismatches) for r in reports if not r.passed]
    assert not failing
    for r in reports:
        assert [h for h, _, _ in r.spot_checks] == ["K_3", "C_5", "K_{2,3}"]


def test_verify_table_detects_a_wrong_assignment(catalog):
    swapped = dict(catalog.index_to_key)
    swapped[9], swapped[10] = swapped[10], swapped[9]
    bad = CatalogAssignment(swapped, dict(catalog.provenance))
    assert not all(r.passed for r in verify_table(bad))


def test_table_expansions_match_brute_force():
    rng = random.Random(11)
    hosts = [random_graph(rng.randint(5, 9), rng.random(), rng) for _ in range(4)]
    for line, e in zip(load_table(), expanded_table()):
        for host in hosts:
            assert jexpr_eval(e, host) == line.scale * term_eval(line.lhs, host)


def test_identity_cancels_symbolically():
    assert verify_identity_symbolic().is_zero()


def test_perturbed_identity_does_not_cancel():
    terms = list(identity_terms())
    terms[0] = terms[0].scaled(2)
    assert not verify_identity_symbolic(terms).is_zero()
    hosts = default_hosts(max_n=5, random_count=0)
    assert any(sum(term_eval(t, h) for t in terms) != 0 for h in hosts)


def test_p2_residual_matches_golden():
    p2 = [term_from_record(r) for r in identity_records() if r["part"] == "p2"]
    residual = verify_identity_symbolic(p2)
    golden = JExpr.from_json((GOLDENS / "p2_residual.json").read_text())
    assert residual == golden
    assert not golden.is_zero()
    # the frozen normal form is checked against brute force, not just itself
    rng = random.Random(5)
    for _ in range(5):
        host = random_graph(rng.randint(4, 9), rng.random(), rng)
        assert jexpr_eval(golden, host) == sum(term_eval(t, host) for t in p2)


def test_numeric_identity_small():
    rep = verify_identity_numeric(default_hosts(max_n=6, random_count=5, random_n=9))
    assert rep.passed and rep.checked == 1 + 2 + 4 + 11 + 34 + 156 + 5


def test_numeric_identity_parallel_agrees():
    hosts = default_hosts(max_n=5, random_count=4, random_n=8)
    assert verify_identity_numeric(hosts, jobs=2).checked == verify_identity_numeric(hosts).checked


def test_fit_examples():
    t = parse_term("s(K_1,+)")
    assert fit_coefficients(t, max_graph_size=5) == expand_term(t)
    t = parse_term("(n-1) s(K_2,-)")
    assert fit_coefficients(t) == expand_term(t)


def test_fit_zero_term():
    assert fit_coefficients(TermSpec(parse_term("0").coefficient)).is_zero()


def test_fit_table_line_one_small_hosts():
    line = load_table()[0]
    fitted = fit_coefficients(line.lhs, max_graph_size=5)
    assert fitted.scale(line.scale) == expanded_table()[0]


def test_fit_underdetermined_is_singular():
    with pytest.raises(SingularSystem):
        fit_coefficients(parse_term("s(K_2,+) s(K_1,-)"), max_graph_size=2, random_count=0)


def test_solve_exact():
    assert solve_exact([[2, 1], [1, 3]], [3, 5]) == [Fraction(4, 5), Fraction(7, 5)]
    assert solve_exact([[0, 1], [1, 0], [1, 1]], [2, 3, 5]) == [3, 2]
    with pytest.raises(SingularSystem):
        solve_exact([[1, 2], [2, 4]], [1, 2])
    with pytest.raises(InconsistentSystem):
        solve_exact([[1, 0], [0, 1], [1, 1]], [1, 1, 3])


def test_solve_exact_random_systems():
    rng = random.Random(2)
    for _ in range(20):
        k = rng.randint(1, 6)
        x = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(k)]
        rows = [[rng.randint(-5, 5) for _ in range(k)] for _ in range(k + 3)]
        den = 1
        for v in x:
            den = den * v.denominator
        rhs = [sum(r * v for r, v in zip(row, x)) * den for row in rows]
        rows = [[c * den for c in row] for row in rows]
        try:
            assert solve_exact(rows, [int(b) for b in rhs]) == x
        except SingularSystem:
            pass
