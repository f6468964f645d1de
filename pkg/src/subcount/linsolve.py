"""Fraction-free (Bareiss) elimination for exact integer linear systems."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class SingularSystem(ValueError):
    """The system has fewer independent equations than unknowns."""


class InconsistentSystem(ValueError):
    """No exact solution exists."""


def solve_exact(rows: Sequence[Sequence[int]], rhs: Sequence[int]) -> list[Fraction]:
    """Unique solution of ``rows @ x = rhs`` over the rationals.

    ``rows`` may have more equations than unknowns; every equation must hold.
    """
    if len(rows) != len(rhs):
        raise ValueError("row count does not match right-hand side")
    k = len(rows[0]) if rows else 0
    m = [list(map(int, r)) + [int(b)] for r, b in zip(rows, rhs)]
    nrows = len(m)
    prev = 1
    r = 0
    pivots: list[int] = []
    for c in range(k):
        p = next((i for i in range(r, nrows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        top = m[r]
        piv = top[c]
        for i in range(r + 1, nrows):
            row = m[i]
            f = row[c]
            if f == 0:
                if piv != prev:
                    for j in range(c + 1, k + 1):
                        q, rem = divmod(piv * row[j], prev)
                        assert rem == 0
                        row[j] = q
                continue
            for j in range(c + 1, k + 1):
                q, rem = divmod(piv * row[j] - f * top[j], prev)
                assert rem == 0, "fraction-free division must be exact"
                row[j] = q
            row[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    for i in range(r, nrows):
        if m[i][k]:
            raise InconsistentSystem(f"equation {i} cannot be satisfied")
    if r < k:
        free = sorted(set(range(k)) - set(pivots))
        raise SingularSystem(f"rank {r} < {k} unknowns; undetermined columns {free[:10]}")
    x = [Fraction(0)] * k
    for i in range(r - 1, -1, -1):
        c = pivots[i]
        acc = Fraction(m[i][k])
        for j in range(c + 1, k):
            if m[i][j]:
                acc -= m[i][j] * x[j]
        x[c] = acc / m[i][c]
    return x
