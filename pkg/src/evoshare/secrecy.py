"""Exhaustive secrecy checks at desk scale.

A coalition's share tuple is an affine function of the randomness
``(r_0, ..., r_{k-2})``, and only the first ``N_max`` coefficients of each
``r_j`` matter, where ``N_max`` is the longest share truncation in the
coalition.  So the full distribution of the tuple is obtained by running
over all ``p^((k-1) N_max)`` randomness assignments and counting.

Perfect secrecy holds for a coalition when the counted distribution is the
same multiset for every secret.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import BudgetExceeded, DegenerateCodewords, ParamMismatch
from .ringpoly import TruncatedPoly
from .scheme import SchemeParams, Secret, _codeword

DEFAULT_BUDGET = 1 << 24
_CHUNK = 1 << 16


@dataclass(frozen=True)
class ShareDistribution:
    """Occurrence count of every coalition share tuple.

    Keys are tuples of digit strings, one per coalition member in the order
    given; counts sum to ``p^((k-1) N_max)``.
    """

    p: int
    coalition: tuple[int, ...]
    n_max: int
    counts: dict[tuple[str, ...], int] = field(compare=False)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def __eq__(self, other):
        if not isinstance(other, ShareDistribution):
            return NotImplemented
        return (self.p, self.coalition, self.counts) == (other.p, other.coalition, other.counts)

    def __hash__(self):
        return hash((self.p, self.coalition, len(self.counts)))


def _coalition(params: SchemeParams, coalition: Iterable[int]) -> tuple[int, ...]:
    ts = tuple(coalition)
    if len(set(ts)) != len(ts):
        raise ParamMismatch(f"coalition has repeated indices: {ts}")
    return ts


def _lower_toeplitz(y: Sequence[int], rows: int, cols: int, p: int) -> np.ndarray:
    # matrix of multiplication by y: (M r)[i] = sum_j y[i-j] r[j]
    m = np.zeros((rows, cols), dtype=np.int64)
    for i in range(rows):
        for j in range(min(i + 1, cols)):
            if i - j < len(y):
                m[i, j] = y[i - j] % p
    return m


def _affine_map(params: SchemeParams, s: Secret, ts: tuple[int, ...]):
    """Return (M, c, lengths, n_max) with stacked shares = M r + c (mod p)."""
    p, k = params.p, params.k
    words = [_codeword(params, t) for t in ts]
    lengths = [(w.length - 1) * (k - 1) + params.ell for w in words]
    n_max = max(lengths, default=0)
    blocks, consts = [], []
    for w, n in zip(words, lengths):
        y = w.to_poly().zero_extend(n)
        power = TruncatedPoly.one(p, n)
        row = []
        for _ in range(k - 1):
            row.append(_lower_toeplitz(power.coeffs, n, n_max, p))
            power = power * y
        blocks.append(np.hstack(row) if row else np.zeros((n, 0), dtype=np.int64))
        consts.append(np.asarray((s.zero_extend(n) * power).coeffs, dtype=np.int64))
    cols = (k - 1) * n_max
    M = np.vstack(blocks) if blocks else np.zeros((0, cols), dtype=np.int64)
    c = np.concatenate(consts) if consts else np.zeros(0, dtype=np.int64)
    return M, c, lengths, n_max


def _check_budget(p: int, exponent: int, budget: int) -> None:
    if p**exponent > budget:
        raise BudgetExceeded(p, exponent, budget)


def _digits(start: int, stop: int, width: int, p: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((stop - start, width), dtype=np.int64)
    for j in range(width):
        idx, out[:, j] = np.divmod(idx, p)
    return out


def _tally(M: np.ndarray, c: np.ndarray, p: int, exponent: int) -> tuple[np.ndarray, np.ndarray]:
    """Rows of distinct outcomes and their counts over all of F_p^exponent."""
    width = M.shape[0]
    packable = width * np.log2(max(p, 2)) < 62
    weights = p ** np.arange(width, dtype=np.int64) if packable else None
    keys, counts = [], []
    total = p**exponent
    for start in range(0, total, _CHUNK):
        stop = min(start + _CHUNK, total)
        r = _digits(start, stop, exponent, p)
        z = (r @ M.T + c) % p
        if packable:
            u, n = np.unique(z @ weights, return_counts=True)
        else:
            u, n = np.unique(z, axis=0, return_counts=True)
        keys.append(u)
        counts.append(n)
    keys_all = np.concatenate(keys)
    counts_all = np.concatenate(counts)
    if packable:
        u, inv = np.unique(keys_all, return_inverse=True)
        rows = (u[:, None] // weights) % p
    else:
        rows, inv = np.unique(keys_all, axis=0, return_inverse=True)
    inv = np.asarray(inv).reshape(-1)
    return rows, np.bincount(inv, weights=counts_all).astype(np.int64)


def enumerate_distribution(
    params: SchemeParams,
    s: Secret,
    coalition: Iterable[int],
    budget: int = DEFAULT_BUDGET,
) -> ShareDistribution:
    """Count every share tuple the coalition can observe under secret ``s``."""
    if s.p != params.p or s.N != params.ell:
        raise ParamMismatch("secret does not match the scheme parameters")
    ts = _coalition(params, coalition)
    p = params.p
    if not ts:
        return ShareDistribution(p, ts, 0, {(): 1})
    M, c, lengths, n_max = _affine_map(params, s, ts)
    exponent = (params.k - 1) * n_max
    _check_budget(p, exponent, budget)
    rows, counts = _tally(M, c, p, exponent)
    bounds = np.cumsum([0] + lengths)
    sep = "" if p <= 10 else ","
    out = {}
    for row, n in zip(rows.tolist(), counts.tolist()):
        key = tuple(
            sep.join(map(str, row[a:b])) for a, b in zip(bounds[:-1], bounds[1:])
        )
        out[key] = n
    return ShareDistribution(p, ts, n_max, out)


def check_secrecy(
    params: SchemeParams,
    s0: Secret,
    s1: Secret,
    coalition: Iterable[int],
    budget: int = DEFAULT_BUDGET,
) -> bool:
    """True iff the coalition's share distribution is identical under s0 and s1."""
    ts = tuple(coalition)
    d0 = enumerate_distribution(params, s0, ts, budget)
    if s0 == s1:
        return True
    return d0 == enumerate_distribution(params, s1, ts, budget)


def count_solutions(
    params: SchemeParams,
    coalition: Iterable[int],
    z: Sequence[str | TruncatedPoly],
    s: Secret,
    budget: int = DEFAULT_BUDGET,
) -> int:
    """Number of randomness assignments producing exactly the tuple ``z``."""
    key = tuple(
        w.to_digits() if isinstance(w, TruncatedPoly) else w for w in z
    )
    return enumerate_distribution(params, s, coalition, budget).counts.get(key, 0)


@dataclass(frozen=True)
class SecrecyReport:
    params: SchemeParams
    coalitions: int
    secrets: int
    failures: tuple[tuple[int, ...], ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def all_secrets(params: SchemeParams) -> list[Secret]:
    p, ell = params.p, params.ell
    return [TruncatedPoly(p, digits) for digits in itertools.product(range(p), repeat=ell)]


def check_secrecy_all(
    params: SchemeParams,
    indices: Iterable[int],
    size: int | None = None,
    budget: int = DEFAULT_BUDGET,
) -> SecrecyReport:
    """Check every secret pair against every coalition drawn from ``indices``.

    ``size`` defaults to ``k - 1``.  Comparing each secret's distribution
    with the first one's covers all pairs.
    """
    size = params.k - 1 if size is None else size
    secrets = all_secrets(params)
    failures = []
    coalitions = list(itertools.combinations(sorted(set(indices)), size))
    for ts in coalitions:
        base = enumerate_distribution(params, secrets[0], ts, budget)
        for s in secrets[1:]:
            if enumerate_distribution(params, s, ts, budget) != base:
                failures.append(ts)
                break
    return SecrecyReport(params, len(coalitions), len(secrets), tuple(failures))


# -- constructive shift -------------------------------------------------------

@dataclass(frozen=True)
class SymmetricShift:
    """Randomness offsets moving an s0-solution onto an s1-solution."""

    r: tuple[TruncatedPoly, ...]

    @property
    def N(self) -> int:
        return self.r[0].N

    def apply(self, randomness: Sequence[TruncatedPoly]) -> tuple[TruncatedPoly, ...]:
        return tuple(a.truncate(self.N) + d for a, d in zip(randomness, self.r))


def elementary_symmetric(ys: Sequence[TruncatedPoly], n: int) -> list[TruncatedPoly]:
    """``[sigma_0, ..., sigma_m]`` of the ``ys`` modulo ``x^n``."""
    p = ys[0].p
    sig = [TruncatedPoly.one(p, n)] + [TruncatedPoly.zero(p, n)] * len(ys)
    for y in ys:
        y = y.zero_extend(n)
        for i in range(len(sig) - 1, 0, -1):
            sig[i] = sig[i] + sig[i - 1] * y
    return sig


def shift_vector(
    s0: Secret, s1: Secret, ys: Sequence[TruncatedPoly], N: int
) -> SymmetricShift:
    """``r_j = (-1)^(k-2-j) (s0 - s1) sigma_(k-1-j)(ys)`` modulo ``x^N``.

    ``ys`` are the k-1 exact codeword polynomials of the coalition.  Then
    ``sum_j r_j y^j = (s0 - s1) y^(k-1)`` at every coalition point.
    """
    if not ys:
        raise ValueError("need at least one codeword polynomial")
    if s0.p != s1.p or any(y.p != s0.p for y in ys):
        raise ParamMismatch("mixed moduli")
    width = max(y.N for y in ys)
    ext = [y.zero_extend(width) for y in ys]
    if len(set(ext)) != len(ext):
        raise DegenerateCodewords("coalition codeword polynomials coincide")
    k = len(ys) + 1
    ell = max(s0.N, s1.N)
    d = s0.zero_extend(ell) - s1.zero_extend(ell)
    d = d.zero_extend(N) if N >= ell else d.truncate(N)
    sig = elementary_symmetric(ys, N)
    r = []
    for j in range(k - 1):
        term = d * sig[k - 1 - j]
        r.append(term if (k - 2 - j) % 2 == 0 else -term)
    return SymmetricShift(tuple(r))


def homogeneous_residuals(
    shift: SymmetricShift, s0: Secret, s1: Secret, ys: Sequence[TruncatedPoly]
) -> list[TruncatedPoly]:
    """``sum_j r_j y^j - (s0 - s1) y^(k-1)`` at each point; all zero when valid."""
    n = shift.N
    ell = max(s0.N, s1.N)
    d = s0.zero_extend(ell) - s1.zero_extend(ell)
    d = d.zero_extend(n) if n >= ell else d.truncate(n)
    out = []
    for y in ys:
        y = y.zero_extend(n)
        acc = TruncatedPoly.zero(y.p, n)
        power = TruncatedPoly.one(y.p, n)
        for r in shift.r:
            acc = acc + r * power
            power = power * y
        out.append(acc - d * power)
    return out
