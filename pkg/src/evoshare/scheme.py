"""Evolving k-threshold secret sharing over F_p[x]/x^N.

Participant ``t`` holds

    Z_t = r_0 + r_1 y_t + ... + r_{k-2} y_t^(k-2) + s y_t^(k-1)  (mod x^N_t)

where ``y_t`` is the polynomial of the prefix codeword of ``t``,
``N_t = (len(c_t) - 1)(k - 1) + ell`` and the ``r_j`` are uniformly random
power series of which only the first ``N_t`` coefficients are ever used.
Because the share length depends only on ``t``, participants can be added
forever without touching earlier shares.

Any ``k`` shares determine ``s`` through a signed Vandermonde cofactor
expansion (:func:`reconstruct`); :func:`reconstruct_oracle` solves the same
system by plain elimination and must always agree.
"""

from __future__ import annotations

import itertools
import random
import secrets
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import linsolve
from .errors import (
    CodecMiss,
    DuplicateParticipant,
    InconsistentShares,
    InconsistentSystem,
    InternalInvariantViolation,
    NotEnoughShares,
    OutOfDomain,
    ParamMismatch,
    TooManyShares,
    ZeroPolynomial,
)
from .prefixcode import Codeword, PrefixCode
from .ringpoly import TruncatedPoly, check_prime, solve_divide

Secret = TruncatedPoly


def make_rng(seed: int | random.Random | None) -> random.Random:
    """Seeded ``random.Random``; OS entropy when ``seed`` is None."""
    if isinstance(seed, random.Random):
        return seed
    if seed is None:
        return secrets.SystemRandom()
    return random.Random(seed)


@dataclass(frozen=True)
class SchemeParams:
    p: int
    k: int
    ell: int
    codec: PrefixCode

    def __post_init__(self):
        check_prime(self.p)
        if self.k < 2:
            raise ValueError(f"threshold k must be at least 2, got {self.k}")
        if self.ell < 1:
            raise ValueError(f"secret length must be positive, got {self.ell}")
        if self.codec.p != self.p:
            raise ParamMismatch(
                f"codec alphabet has {self.codec.p} symbols, field has {self.p}"
            )

    def share_truncation(self, t: int) -> int:
        return (self.codec.length(t) - 1) * (self.k - 1) + self.ell

    def secret(self, digits: str | Sequence[int]) -> Secret:
        """Build a secret from a digit string (or symbol list) of length ell."""
        if isinstance(digits, str):
            s = TruncatedPoly.from_digits(digits, self.p)
        else:
            s = TruncatedPoly(self.p, digits)
        if s.N != self.ell:
            raise ParamMismatch(f"secret length {s.N} != ell = {self.ell}")
        return s


@dataclass(frozen=True)
class Share:
    params: SchemeParams
    t: int
    codeword: Codeword
    z: TruncatedPoly

    def __post_init__(self):
        if self.z.p != self.params.p or self.codeword.p != self.params.p:
            raise ParamMismatch("share modulus differs from scheme modulus")
        expected = (self.codeword.length - 1) * (self.params.k - 1) + self.params.ell
        if self.z.N != expected:
            raise ParamMismatch(
                f"share {self.t} has truncation {self.z.N}, expected {expected}"
            )

    @property
    def y(self) -> TruncatedPoly:
        return self.codeword.to_poly()


def _codeword(params: SchemeParams, t: int) -> Codeword:
    try:
        return params.codec.encode(t)
    except OutOfDomain as exc:
        raise CodecMiss(str(exc)) from None


def evaluate_share(
    randomness: Sequence[TruncatedPoly], s: Secret, y: TruncatedPoly, k: int, n: int
) -> TruncatedPoly:
    """``sum_j r_j y^j + s y^(k-1) mod x^n`` by Horner's rule."""
    y = y.zero_extend(n)
    acc = s.zero_extend(n)
    for j in range(k - 2, -1, -1):
        acc = acc * y + randomness[j].truncate(n)
    return acc


class DealerState:
    """Secret, randomness polynomials and the log of issued shares.

    The randomness is only materialised up to the largest truncation needed
    so far; issuing a participant with a longer codeword appends fresh
    coefficients and never alters existing ones.
    """

    def __init__(
        self,
        params: SchemeParams,
        secret: Secret,
        rng: random.Random,
        randomness: Sequence[Sequence[int] | TruncatedPoly | str] | None = None,
    ):
        if secret.p != params.p:
            raise ParamMismatch(f"secret over F_{secret.p}, scheme over F_{params.p}")
        if secret.N != params.ell:
            raise ParamMismatch(f"secret length {secret.N} != ell = {params.ell}")
        self.params = params
        self.secret = secret
        self.rng = rng
        self.issued: dict[int, Share] = {}
        self._n = 0
        self._r = np.zeros((params.k - 1, 0), dtype=np.int64)
        self._secret = np.asarray(secret.coeffs, dtype=np.int64)
        if randomness is not None:
            if len(randomness) != params.k - 1:
                raise ParamMismatch(f"need {params.k - 1} randomness polynomials")
            rows = [
                list(TruncatedPoly.from_digits(r, params.p).coeffs if isinstance(r, str)
                     else r.coeffs if isinstance(r, TruncatedPoly) else r)
                for r in randomness
            ]
            if len({len(r) for r in rows}) != 1:
                raise ParamMismatch("randomness polynomials must share one length")
            if any(not 0 <= c < params.p for r in rows for c in r):
                raise ParamMismatch("randomness coefficient outside F_p")
            self._r = np.array(rows, dtype=np.int64).reshape(params.k - 1, -1)
            self._n = self._r.shape[1]
        # exact int64 convolution needs len(y) * (p-1)^2 well inside 2^63
        self._fast = params.p < (1 << 24)

    @property
    def n_max(self) -> int:
        return self._n

    @property
    def randomness(self) -> tuple[TruncatedPoly, ...]:
        if self._n == 0:
            return ()
        return tuple(
            TruncatedPoly._make(self.params.p, tuple(row[: self._n].tolist())) for row in self._r
        )

    def _extend(self, n: int) -> None:
        if n <= self._n:
            return
        p = self.params.p
        fresh = [[self.rng.randrange(p) for _ in range(n - self._n)] for _ in range(self.params.k - 1)]
        if self._r.shape[1] < n:
            grown = np.zeros((self.params.k - 1, max(n, 2 * self._r.shape[1])), dtype=np.int64)
            grown[:, : self._n] = self._r[:, : self._n]
            self._r = grown
        self._r[:, self._n : n] = np.array(fresh, dtype=np.int64).reshape(self.params.k - 1, -1)
        self._n = n

    def _evaluate_fast(self, y: tuple[int, ...], n: int) -> TruncatedPoly:
        p, k, ell = self.params.p, self.params.k, self.params.ell
        ya = np.asarray(y, dtype=np.int64)
        acc = np.zeros(n, dtype=np.int64)
        acc[:ell] = self._secret
        for j in range(k - 2, -1, -1):
            acc = np.convolve(acc, ya)[:n]
            acc += self._r[j, :n]
            acc %= p
        return TruncatedPoly._make(p, tuple(acc.tolist()))

    def evaluate(self, t: int) -> Share:
        """Share of ``t`` under the current state, without logging it."""
        params = self.params
        cw = _codeword(params, t)
        n = (cw.length - 1) * (params.k - 1) + params.ell
        self._extend(n)
        if self._fast:
            z = self._evaluate_fast(cw.symbols, n)
        else:
            z = evaluate_share(self.randomness, self.secret, cw.to_poly(), params.k, n)
        return Share(params, t, cw, z)

    def issue_share(self, t: int) -> Share:
        if t in self.issued:
            raise DuplicateParticipant(f"participant {t} already holds a share")
        share = self.evaluate(t)
        self.issued[t] = share
        return share


def new_dealer(
    params: SchemeParams,
    secret: Secret,
    seed: int | random.Random | None = None,
    randomness: Sequence[Sequence[int] | TruncatedPoly | str] | None = None,
) -> DealerState:
    """Fresh dealer; ``randomness`` pins the leading r_j coefficients."""
    return DealerState(params, secret, make_rng(seed), randomness)


# -- reconstruction -----------------------------------------------------------

def _check_shares(shares: Sequence[Share]) -> tuple[SchemeParams, list[Share]]:
    if not shares:
        raise NotEnoughShares("no shares given")
    params = shares[0].params
    for sh in shares:
        if sh.params != params:
            raise ParamMismatch("shares come from different scheme parameters")
    k = params.k
    if len(shares) < k:
        raise NotEnoughShares(f"need {k} shares, got {len(shares)}")
    if len(shares) > k:
        raise TooManyShares(f"need exactly {k} shares, got {len(shares)}; pick a subset")
    ts = [sh.t for sh in shares]
    if len(set(ts)) != len(ts):
        raise DuplicateParticipant(f"repeated participant among {ts}")
    words = [sh.codeword.symbols for sh in shares]
    if len(set(words)) != len(words):
        raise DuplicateParticipant("two shares carry the same codeword")
    return params, sorted(shares, key=lambda sh: sh.t)


def signed_cofactors(ys: Sequence[TruncatedPoly], n: int) -> list[TruncatedPoly]:
    """``H_m = (-1)^(m-1) prod_{u<v; u,v != m} (y_u - y_v)`` modulo ``x^n``.

    The ``y`` are exact polynomials and are zero-extended as needed.
    """
    p = ys[0].p
    ext = [y.zero_extend(n) for y in ys]
    k = len(ys)
    out = []
    for m in range(k):
        h = TruncatedPoly.one(p, n)
        for u, v in itertools.combinations(range(k), 2):
            if m not in (u, v):
                h = h * (ext[u] - ext[v])
        out.append(h if m % 2 == 0 else -h)
    return out


def reconstruct(shares: Sequence[Share]) -> Secret:
    """Recover the secret from exactly k shares by cofactor expansion."""
    params, shares = _check_shares(shares)
    k, ell, p = params.k, params.ell, params.p
    width = max(sh.codeword.length for sh in shares)
    ys = [sh.y.zero_extend(width) for sh in shares]

    diff: dict[tuple[int, int], TruncatedPoly] = {}
    val: dict[tuple[int, int], int] = {}
    for u, v in itertools.combinations(range(k), 2):
        d = ys[u] - ys[v]
        try:
            val[u, v] = d.valuation()
        except ZeroPolynomial:
            raise DuplicateParticipant("two shares have equal codeword polynomials") from None
        diff[u, v] = d

    total = sum(val.values())
    others = [sum(L for (u, v), L in val.items() if m not in (u, v)) for m in range(k)]
    alpha = min(shares[m].z.N + others[m] for m in range(k))
    if total + ell > alpha:
        raise InternalInvariantViolation(
            f"valuation sum {total} + ell {ell} exceeds alpha {alpha}; codec is not prefix-free"
        )

    denom = TruncatedPoly.one(p, alpha)
    for d in diff.values():
        denom = denom * d.zero_extend(alpha)

    numer = TruncatedPoly.zero(p, alpha)
    for m in range(k):
        h = TruncatedPoly.one(p, alpha)
        for (u, v), d in diff.items():
            if m not in (u, v):
                h = h * d.zero_extend(alpha)
        # h is divisible by x^others[m] and Z_m is known to x^N_m, so the
        # product is known to x^(N_m + others[m]) >= x^alpha
        term = (h.shift_down(others[m]) * shares[m].z).shift_up(others[m]).truncate(alpha)
        numer = numer + term if m % 2 == 0 else numer - term

    try:
        return solve_divide(denom, numer, alpha, ell)
    except InconsistentSystem as exc:
        raise InconsistentShares(str(exc)) from None


def _share_system(
    shares: Sequence[Share], n: int, with_secret: bool
) -> tuple[list[list[TruncatedPoly]], list[TruncatedPoly], list[TruncatedPoly]]:
    # rows: sum_j y^j r_j [+ y^(k-1) s] + x^N_m w_m = Z_m  (mod x^n)
    params = shares[0].params
    k, p = params.k, params.p
    slack = [m for m, sh in enumerate(shares) if sh.z.N < n]
    A, b, powers_last = [], [], []
    for m, sh in enumerate(shares):
        y = sh.y.zero_extend(n)
        powers = [TruncatedPoly.one(p, n)]
        for _ in range(k - 1):
            powers.append(powers[-1] * y)
        row = powers[: k - 1] + ([powers[k - 1]] if with_secret else [])
        for mm in slack:
            row.append(TruncatedPoly.monomial(p, n, sh.z.N) if mm == m else TruncatedPoly.zero(p, n))
        A.append(row)
        b.append(sh.z.zero_extend(n))
        powers_last.append(powers[k - 1])
    return A, b, powers_last


def reconstruct_oracle(shares: Sequence[Share]) -> Secret:
    """Recover the secret by eliminating the full share system.

    Unknowns are ``r_0 .. r_{k-2}``, ``s`` and one slack ``w_m`` per share
    shorter than the longest, all in F_p[x]/x^N_max.  The ``s`` component of
    any solution is unique modulo ``x^ell``.
    """
    params, shares = _check_shares(shares)
    n = max(sh.z.N for sh in shares)
    A, b, _ = _share_system(shares, n, with_secret=True)
    try:
        u = linsolve.solve(A, b)
    except InconsistentSystem as exc:
        raise InconsistentShares(str(exc)) from None
    return u[params.k - 1].truncate(params.ell)


def recover_dealer(
    params: SchemeParams,
    shares: Sequence[Share],
    seed: int | random.Random | None = None,
) -> DealerState:
    """Rebuild a dealer consistent with ``k`` shares after it forgot its state.

    The secret comes from :func:`reconstruct`; the randomness is any
    solution of the share system at the largest share truncation, with all
    unconstrained coefficients drawn from the seeded RNG.  Every solution
    reproduces the given shares exactly, so shares issued afterwards stay
    consistent with them.
    """
    for sh in shares:
        if sh.params != params:
            raise ParamMismatch("share parameters differ from the requested scheme")
    s = reconstruct(shares)
    _, shares = _check_shares(shares)
    rng = make_rng(seed)
    n = max(sh.z.N for sh in shares)
    A, b, last = _share_system(shares, n, with_secret=False)
    b = [bm - s.zero_extend(n) * ym for bm, ym in zip(b, last)]
    try:
        u = linsolve.solve(A, b, rng=rng)
    except InconsistentSystem as exc:
        raise InconsistentShares(str(exc)) from None
    randomness = [r.coeffs for r in u[: params.k - 1]]
    dealer = DealerState(params, s, rng, randomness)
    for sh in shares:
        again = dealer.evaluate(sh.t)
        if again.z != sh.z or again.codeword != sh.codeword:
            raise InconsistentShares(f"share {sh.t} is not reproduced by the recovered state")
        dealer.issued[sh.t] = sh
    return dealer


def all_subsets_reconstruct(shares: Iterable[Share], secret: Secret) -> bool:
    """True iff every k-subset of ``shares`` reconstructs ``secret``."""
    shares = list(shares)
    k = shares[0].params.k
    return all(reconstruct(c) == secret for c in itertools.combinations(shares, k))
