"""Exact univariate polynomials in the ambient vertex count ``n``."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


class RationalPoly:
    """Polynomial with exact rational coefficients, ``coeffs[i]`` multiplying ``n**i``.

    Trailing zeros are trimmed, so the zero polynomial has ``coeffs == ()``.
    Instances are immutable and hashable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("RationalPoly is immutable")

    @classmethod
    def constant(cls, c: Scalar) -> RationalPoly:
        return cls([c])

    @classmethod
    def n(cls) -> RationalPoly:
        return cls([0, 1])

    @classmethod
    def falling_factorial(cls, m: int, offset: int = 0) -> RationalPoly:
        """``(n - offset)(n - offset - 1)...(n - offset - m + 1)``; ``m = 0`` gives 1."""
        if m < 0:
            raise ValueError("falling factorial order must be nonnegative")
        p = cls([1])
        for i in range(m):
            p = p * cls([-(offset + i), 1])
        return p

    @classmethod
    def from_falling_basis(cls, coeffs: Sequence[Scalar]) -> RationalPoly:
        total = cls()
        for m, c in enumerate(coeffs):
            if c:
                total = total + cls.falling_factorial(m) * c
        return total

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == RationalPoly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    @staticmethod
    def _coerce(other) -> RationalPoly | None:
        if isinstance(other, RationalPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return RationalPoly([other])
        return None

    def __add__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        a, b = self.coeffs, q.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RationalPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return RationalPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return self + (-q)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalPoly(c * other for c in self.coeffs)
        if not isinstance(other, RationalPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return RationalPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalPoly(out)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> RationalPoly:
        return self * Fraction(c)

    def __pow__(self, k: int) -> RationalPoly:
        out = RationalPoly([1])
        for _ in range(k):
            out = out * self
        return out

    def eval(self, n: Scalar) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * n + c
        return acc

    __call__ = eval

    def to_falling_basis(self) -> list[Fraction]:
        """Coefficients ``b`` with ``self == sum(b[m] * n^{_m})``."""
        rest = self
        out = [Fraction(0)] * (len(self.coeffs))
        while rest:
            d = rest.degree
            c = rest.coeffs[-1]
            out[d] = c
            rest = rest - RationalPoly.falling_factorial(d) * c
        return out

    def __repr__(self) -> str:
        return f"RationalPoly({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        return _render([(c, _mono(i)) for i, c in enumerate(self.coeffs)][::-1])

    def falling_str(self) -> str:
        """Render in the falling-factorial basis, e.g. ``n^{_3} - 3n + 2``."""
        terms = [(c, _falling(m)) for m, c in enumerate(self.to_falling_basis())][::-1]
        return _render(terms)


def _mono(i: int) -> str:
    return "" if i == 0 else "n" if i == 1 else f"n^{i}"


def _falling(m: int) -> str:
    return "" if m == 0 else "n" if m == 1 else f"n^{{_{m}}}"


def _fmt_coeff(c: Fraction, has_var: bool) -> str:
    if c.denominator == 1:
        if has_var and c == 1:
            return ""
        return str(c.numerator)
    return f"({c.numerator}/{c.denominator})" + ("·" if has_var else "")


def _render(terms: list[tuple[Fraction, str]]) -> str:
    parts: list[str] = []
    for c, var in terms:
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        body = _fmt_coeff(abs(c), bool(var)) + var
        if not parts:
            parts.append(body if sign == "+" else "-" + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts) or "0"


# -- parsing -----------------------------------------------------------------

_PTOKEN = re.compile(r"\s*(?:(\d+)|(n)|(\^\{_(\d+)\})|(\^\{?(\d+)\}?)|([-+*/()·]))")


class PolyParseError(ValueError):
    pass


def parse_poly(text: str) -> RationalPoly:
    """Parse expressions like ``2(n^2+n-8)``, ``n(n-3)``, ``(n-2)^{_3}``, ``1/2``.

    Juxtaposition multiplies; ``^{_m}`` is a falling power of the preceding
    factor, which must be ``n`` or ``(n - a)``.
    """
    toks: list[tuple[str, str]] = []
    pos = 0
    s = text.strip()
    while pos < len(s):
        m = _PTOKEN.match(s, pos)
        if not m or m.end() == pos:
            raise PolyParseError(f"cannot parse polynomial {text!r} at {pos}")
        pos = m.end()
        if m.group(1):
            toks.append(("int", m.group(1)))
        elif m.group(2):
            toks.append(("n", "n"))
        elif m.group(3):
            toks.append(("falling", m.group(4)))
        elif m.group(5):
            toks.append(("pow", m.group(6)))
        else:
            toks.append(("op", "*" if m.group(7) == "·" else m.group(7)))
    parser = _PolyParser(toks, text)
    p = parser.expr()
    if parser.i != len(toks):
        raise PolyParseError(f"trailing input in polynomial {text!r}")
    return p


class _PolyParser:
    def __init__(self, toks, text):
        self.toks = toks
        self.text = text
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def expr(self) -> RationalPoly:
        sign = 1
        if self.peek() in (("op", "-"), ("op", "+")):
            sign = -1 if self.toks[self.i][1] == "-" else 1
            self.i += 1
        p = self.term() * sign
        while self.peek() in (("op", "-"), ("op", "+")):
            op = self.toks[self.i][1]
            self.i += 1
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> RationalPoly:
        p = self.factor()
        while True:
            kind, val = self.peek()
            if (kind, val) == ("op", "*"):
                self.i += 1
                p = p * self.factor()
            elif (kind, val) == ("op", "/"):
                self.i += 1
                q = self.factor()
                if q.degree != 0:
                    raise PolyParseError(f"can only divide by constants in {self.text!r}")
                p = p * (1 / q.coeffs[0])
            elif kind in ("int", "n") or (kind, val) == ("op", "("):
                p = p * self.factor()
            else:
                return p

    def factor(self) -> RationalPoly:
        kind, val = self.peek()
        if kind == "int":
            self.i += 1
            base = RationalPoly([int(val)])
        elif kind == "n":
            self.i += 1
            base = RationalPoly.n()
        elif (kind, val) == ("op", "("):
            self.i += 1
            base = self.expr()
            if self.peek() != ("op", ")"):
                raise PolyParseError(f"unbalanced parentheses in {self.text!r}")
            self.i += 1
        else:
            raise PolyParseError(f"unexpected {val!r} in polynomial {self.text!r}")
        kind, val = self.peek()
        if kind == "pow":
            self.i += 1
            base = base ** int(val)
        elif kind == "falling":
            self.i += 1
            if base.degree != 1 or base.coeffs[1] != 1 or base.coeffs[0].denominator != 1:
                raise PolyParseError(f"falling power needs a base n - a in {self.text!r}")
            base = RationalPoly.falling_factorial(int(val), offset=int(-base.coeffs[0]))
        return base
