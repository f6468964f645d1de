from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subcount.polynom import PolyParseError, RationalPoly, parse_poly

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
polys = st.lists(fractions, max_size=5).map(RationalPoly)


def test_basic_arithmetic():
    n = RationalPoly.n()
    p = n * (n - 3)
    assert p.coeffs == (0, -3, 1)
    assert p.eval(5) == 10
    assert (p - p).is_zero() and not (p - p)
    assert RationalPoly([1, 2, 0, 0]).degree == 1
    assert RationalPoly().degree == -1
    assert (n + 1) ** 2 == n * n + 2 * n + 1
    assert 3 - n == RationalPoly([3, -1])
    assert p.scale(Fraction(1, 2)).eval(4) == 2


def test_falling_factorial():
    assert RationalPoly.falling_factorial(0) == RationalPoly([1])
    ff3 = RationalPoly.falling_factorial(3)
    assert [ff3(k) for k in range(5)] == [0, 0, 0, 6, 24]
    shifted = RationalPoly.falling_factorial(2, offset=1)
    assert shifted(5) == 12
    with pytest.raises(ValueError):
        RationalPoly.falling_factorial(-1)


def test_rendering():
    n = RationalPoly.n()
    assert str(n * (n - 3)) == "n^2 - 3n"
    assert str(RationalPoly()) == "0"
    assert RationalPoly.falling_factorial(3).falling_str() == "n^{_3}"
    half = RationalPoly.falling_factorial(2).scale(Fraction(1, 2))
    assert half.falling_str() == "(1/2)·n^{_2}"
    assert (-n + 2).falling_str() == "-n + 2"


def test_immutable():
    p = RationalPoly([1])
    with pytest.raises(AttributeError):
        p.coeffs = (2,)
    assert hash(p) == hash(RationalPoly([1, 0]))
    assert p == 1 and RationalPoly() == 0


@settings(max_examples=150)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == RationalPoly()


@settings(max_examples=150)
@given(polys, polys, st.integers(-30, 30))
def test_eval_is_a_homomorphism(a, b, x):
    assert (a + b).eval(x) == a.eval(x) + b.eval(x)
    assert (a * b).eval(x) == a.eval(x) * b.eval(x)


@settings(max_examples=150)
@given(polys)
def test_falling_basis_round_trip(p):
    assert RationalPoly.from_falling_basis(p.to_falling_basis()) == p


@settings(max_examples=100)
@given(polys)
def test_render_parses_back(p):
    assert parse_poly(str(p)) == p


@pytest.mark.parametrize(
    "text, values",
    [
        ("n(n-3)", {0: 0, 4: 4, 5: 10}),
        ("-(n^2+2n-6)", {0: 6, 2: -2}),
        ("2(n-8)", {8: 0, 10: 4}),
        ("1/2", {3: Fraction(1, 2)}),
        ("(n-2)^{_3}", {5: 6, 4: 0}),
        ("n^{_2}", {4: 12}),
        ("3·n", {2: 6}),
        ("-n + 1", {1: 0}),
        ("(n-1)^2/4", {3: 1}),
    ],
)
def test_parse_poly(text, values):
    p = parse_poly(text)
    for x, want in values.items():
        assert p.eval(x) == want


@pytest.mark.parametrize("bad", ["n/n", "(n", "n)", "2x", "(n^2)^{_2}", "", "1/0"])
def test_parse_poly_rejects(bad):
    with pytest.raises(PolyParseError):
        parse_poly(bad)
