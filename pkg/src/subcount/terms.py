"""Vertex-sum terms ``c(n) * sum_v prod s(J_i, G_v^-) prod s(J'_j, G_v^+)``.

Text form: an optional leading polynomial in ``n`` followed by factors
``s(NAME,+)`` / ``s(NAME,-)``, each optionally raised to a power, e.g.
``-2(n-2) s(K_1,+) s(K_2,-)`` or ``12 s(K_1,+)^2 s(K_2,+)``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .graphs import GraphError, SmallGraph, parse_graph6
from .names import named
from .polynom import RationalPoly, parse_poly

MAX_BUDGET = 6


class TermSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class TermSpec:
    coefficient: RationalPoly = field(default_factory=lambda: RationalPoly([1]))
    minus_factors: tuple[SmallGraph, ...] = ()
    plus_factors: tuple[SmallGraph, ...] = ()

    @property
    def budget(self) -> int:
        """``1 + sum of factor vertex counts``: the largest graph in the expansion."""
        return 1 + sum(g.n for g in self.minus_factors) + sum(g.n for g in self.plus_factors)

    def scaled(self, c) -> TermSpec:
        return TermSpec(self.coefficient * c, self.minus_factors, self.plus_factors)


def resolve_graph(text: str) -> SmallGraph:
    """A graph given by name (``C_4``) or, failing that, as a graph6 string."""
    try:
        return named(text)
    except GraphError as name_err:
        try:
            return parse_graph6(text)
        except GraphError:
            raise name_err from None


def _split_factors(text: str) -> tuple[str, list[tuple[str, str, int]]]:
    i = text.find("s(")
    lead = text if i < 0 else text[:i]
    factors = []
    while i >= 0:
        depth, j = 0, i + 1
        while j < len(text):
            if text[j] == "(":
                depth += 1
            elif text[j] == ")":
                depth -= 1
                if depth == 0:
                    break
            j += 1
        if depth:
            raise TermSyntaxError(f"unbalanced parentheses in {text!r}")
        inner = text[i + 2:j]
        name, _, side = inner.rpartition(",")
        side = side.strip()
        if side not in ("+", "-") or not name.strip():
            raise TermSyntaxError(f"factor s({inner}) needs the form s(NAME,+) or s(NAME,-)")
        m = re.match(r"\s*\^\s*\{?(\d+)\}?", text[j + 1:])
        power = 1
        if m:
            power = int(m.group(1))
            j += m.end()
        factors.append((name.strip(), side, power))
        rest = text[j + 1:]
        nxt = rest.find("s(")
        between = rest if nxt < 0 else rest[:nxt]
        if between.strip(" *·"):
            raise TermSyntaxError(f"unexpected {between.strip()!r} between factors in {text!r}")
        i = -1 if nxt < 0 else j + 1 + nxt
    return lead, factors


def parse_term(text: str) -> TermSpec:
    lead, factors = _split_factors(text)
    lead = lead.strip().rstrip("*·").strip()
    if lead in ("", "+"):
        coeff = RationalPoly([1])
    elif lead == "-":
        coeff = RationalPoly([-1])
    else:
        try:
            coeff = parse_poly(lead)
        except ValueError as exc:
            raise TermSyntaxError(str(exc)) from None
    minus, plus = [], []
    for name, side, power in factors:
        try:
            g = resolve_graph(name)
        except GraphError as exc:
            raise TermSyntaxError(str(exc)) from None
        (plus if side == "+" else minus).extend([g] * power)
    return TermSpec(coeff, tuple(minus), tuple(plus))


def _data(name: str):
    return json.loads(resources.files("subcount").joinpath("data", name).read_text())


def term_from_record(rec: dict) -> TermSpec:
    minus, plus = [], []
    for f in rec["factors"]:
        g = named(f["graph"])
        (plus if f["side"] == "+" else minus).extend([g] * f.get("power", 1))
    coeff = parse_poly(rec.get("coefficient", "1"))
    return TermSpec(coeff, tuple(minus), tuple(plus))


@lru_cache(maxsize=None)
def identity_records() -> tuple[dict, ...]:
    return tuple(_data("identity.json")["monomials"])


@lru_cache(maxsize=None)
def identity_terms() -> tuple[TermSpec, ...]:
    """Every monomial of ``p_1(G_v^+) + p_2(G_v^-) + p_3(G_v^+, G_v^-)``."""
    return tuple(term_from_record(r) for r in identity_records())
