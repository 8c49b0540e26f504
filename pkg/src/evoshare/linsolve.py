"""Linear systems over the local ring F_p[x]/x^N.

Every nonzero element of F_p[x]/x^N is a unit times a power of ``x``, so the
ideal generated by an entry is fixed by its valuation.  Gaussian elimination
with full pivoting on the entry of minimum valuation therefore never needs
to divide by a non-divisor: every other entry in the pivot column has
valuation at least the pivot's and is a ring multiple of it.
"""

from __future__ import annotations

import random
from typing import Sequence

from .errors import InconsistentSystem, ModulusMismatch
from .ringpoly import TruncatedPoly


def _quotient(a: TruncatedPoly, pivot: TruncatedPoly, v: int) -> TruncatedPoly:
    # some q with pivot * q == a (mod x^N), given valuation(a) >= v == valuation(pivot)
    n = a.N
    if v == 0:
        return a * pivot.invert_unit()
    q = a.shift_down(v) * pivot.shift_down(v).invert_unit()
    return q.zero_extend(n)


def _random_top(g: TruncatedPoly, n: int, rng: random.Random | None) -> TruncatedPoly:
    # lift g (known mod x^(n-v)) to truncation n; the extra coefficients are free
    extra = n - g.N
    if extra <= 0:
        return g
    if rng is None:
        return g.zero_extend(n)
    return TruncatedPoly._make(g.p, g.coeffs + tuple(rng.randrange(g.p) for _ in range(extra)))


def solve(
    A: Sequence[Sequence[TruncatedPoly]],
    b: Sequence[TruncatedPoly],
    rng: random.Random | None = None,
) -> list[TruncatedPoly]:
    """Return one solution ``u`` of ``A u = b`` over F_p[x]/x^N.

    All entries must share the modulus ``p`` and truncation ``N``.  Degrees
    of freedom (free unknowns and the undetermined high coefficients of
    pivot unknowns) are drawn from ``rng`` when given, and zeroed otherwise.
    Raises :class:`InconsistentSystem` when no solution exists.
    """
    m = len(A)
    if m != len(b):
        raise ValueError("row count of A and b differ")
    n_cols = len(A[0]) if m else 0
    if any(len(row) != n_cols for row in A):
        raise ValueError("ragged coefficient matrix")
    entries = [e for row in A for e in row] + list(b)
    p, N = entries[0].p, entries[0].N
    for e in entries:
        if e.p != p:
            raise ModulusMismatch("mixed moduli in linear system")
        if e.N != N:
            raise ValueError("all entries must share one truncation order")

    rows = [list(row) for row in A]
    rhs = list(b)
    pivots: list[tuple[int, int]] = []  # (column, valuation) per pivot row
    free_cols = set(range(n_cols))

    for step in range(min(m, n_cols)):
        best = None
        for i in range(step, m):
            for j in free_cols:
                e = rows[i][j]
                if e.is_zero():
                    continue
                v = e.valuation()
                if best is None or v < best[0]:
                    best = (v, i, j)
        if best is None:
            break
        v, i, j = best
        rows[step], rows[i] = rows[i], rows[step]
        rhs[step], rhs[i] = rhs[i], rhs[step]
        pivot = rows[step][j]
        for r in range(step + 1, m):
            e = rows[r][j]
            if e.is_zero():
                continue
            q = _quotient(e, pivot, v)
            rows[r] = [a - q * c for a, c in zip(rows[r], rows[step])]
            rhs[r] = rhs[r] - q * rhs[step]
        pivots.append((j, v))
        free_cols.discard(j)

    rank = len(pivots)
    for r in range(rank, m):
        if not rhs[r].is_zero():
            raise InconsistentSystem("system has no solution")

    u: list[TruncatedPoly | None] = [None] * n_cols
    for j in sorted(free_cols):
        if rng is None:
            u[j] = TruncatedPoly.zero(p, N)
        else:
            u[j] = TruncatedPoly(p, [rng.randrange(p) for _ in range(N)])

    for r in reversed(range(rank)):
        j, v = pivots[r]
        residual = rhs[r]
        for c in range(n_cols):
            if c != j and not rows[r][c].is_zero():
                residual = residual - rows[r][c] * u[c]
        if not residual.is_zero() and residual.valuation() < v:
            raise InconsistentSystem("system has no solution")
        pivot = rows[r][j]
        if v == 0:
            u[j] = residual * pivot.invert_unit()
        else:
            g = residual.shift_down(v) * pivot.shift_down(v).invert_unit()
            u[j] = _random_top(g, N, rng)
    return u  # type: ignore[return-value]
