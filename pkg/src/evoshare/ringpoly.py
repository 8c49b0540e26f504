"""Exact arithmetic in the truncated polynomial ring F_p[x]/x^N.

A :class:`TruncatedPoly` stores exactly ``N`` coefficients in ascending
order (``coeffs[j]`` is the coefficient of ``x^j``).  The truncation order is
part of the value: ``1 + x`` known modulo ``x^3`` is a different object from
``1 + x`` known modulo ``x^5``.  Binary operations between values of
different truncation orders are resolved at the smaller order, which is the
only order at which both operands are known.

Values are immutable, and every operation returns a new value.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DegreeBoundViolated,
    InconsistentSystem,
    ModulusMismatch,
    NonUnit,
    NotDivisible,
    TruncationLimitExceeded,
    TruncationUnderflow,
    ZeroPolynomial,
)

#: Largest truncation order accepted when constructing a polynomial.
MAX_TRUNCATION = 1 << 20

# below this size a pure Python convolution beats the numpy round trip
_NUMPY_MUL_THRESHOLD = 24


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or isinstance(p, bool) or not is_prime(p):
        raise ValueError(f"modulus must be a prime integer, got {p!r}")
    return p


class FieldElement:
    """An element of the prime field F_p."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        check_prime(p)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "value", value % p)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise ModulusMismatch(f"F_{self.p} vs F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(o - self.value, self.p)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value, self.p)

    def inverse(self) -> FieldElement:
        if self.value == 0:
            raise ZeroDivisionError("zero has no inverse in F_p")
        return FieldElement(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * FieldElement(o, self.p).inverse()

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"FieldElement({self.value}, p={self.p})"


def _mul_coeffs(a: Sequence[int], b: Sequence[int], n: int, p: int) -> tuple[int, ...]:
    """Product of two coefficient sequences, reduced mod p and truncated to n."""
    a = a[:n]
    b = b[:n]
    if min(len(a), len(b)) >= _NUMPY_MUL_THRESHOLD and n * (p - 1) ** 2 < (1 << 62):
        prod = np.convolve(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        out = (prod[:n] % p).tolist()
        if len(out) < n:
            out.extend([0] * (n - len(out)))
        return tuple(out)
    res = [0] * n
    nz_b = [(j, bj) for j, bj in enumerate(b) if bj]
    for i, ai in enumerate(a):
        if not ai:
            continue
        lim = n - i
        for j, bj in nz_b:
            if j >= lim:
                break
            res[i + j] += ai * bj
    return tuple([c % p for c in res])


class TruncatedPoly:
    """An element of F_p[x]/x^N with dense ascending coefficients."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Iterable[int]):
        check_prime(p)
        coeffs = tuple(int(c) for c in coeffs)
        if not coeffs:
            raise ValueError("truncation order must be a positive integer")
        if len(coeffs) > MAX_TRUNCATION:
            raise TruncationLimitExceeded(
                f"truncation {len(coeffs)} exceeds limit {MAX_TRUNCATION}"
            )
        for c in coeffs:
            if not 0 <= c < p:
                raise ValueError(f"coefficient {c} outside [0, {p})")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def _make(cls, p: int, coeffs: tuple[int, ...]) -> TruncatedPoly:
        # trusted constructor for values already reduced by an operation
        if len(coeffs) > MAX_TRUNCATION:
            raise TruncationLimitExceeded(
                f"truncation {len(coeffs)} exceeds limit {MAX_TRUNCATION}"
            )
        obj = object.__new__(cls)
        object.__setattr__(obj, "p", p)
        object.__setattr__(obj, "coeffs", coeffs)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedPoly is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, p: int, n: int) -> TruncatedPoly:
        return cls(p, [0] * n)

    @classmethod
    def one(cls, p: int, n: int) -> TruncatedPoly:
        return cls.monomial(p, n, 0)

    @classmethod
    def monomial(cls, p: int, n: int, degree: int, coeff: int = 1) -> TruncatedPoly:
        """``coeff * x^degree`` modulo ``x^n`` (zero if ``degree >= n``)."""
        c = [0] * n
        if degree < n:
            c[degree] = coeff % p
        return cls(p, c)

    @classmethod
    def from_digits(cls, digits: str, p: int) -> TruncatedPoly:
        """Parse the digit-string format (x^0 first).

        For ``p <= 10`` the string is a run of digit characters; for larger
        moduli the symbols are whitespace-separated decimal numbers.
        """
        check_prime(p)
        if p <= 10:
            text = digits.strip()
            if not text.isdigit() or not text.isascii():
                raise ValueError(f"not a digit string: {digits!r}")
            symbols = [int(ch) for ch in text]
        else:
            parts = digits.split()
            if not parts or not all(s.isdigit() for s in parts):
                raise ValueError(f"not a symbol list: {digits!r}")
            symbols = [int(s) for s in parts]
        return cls(p, symbols)

    # -- basic protocol -----------------------------------------------------

    @property
    def N(self) -> int:
        return len(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, j: int) -> int:
        return self.coeffs[j]

    def __iter__(self):
        return iter(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, TruncatedPoly):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def to_digits(self) -> str:
        if self.p <= 10:
            return "".join(map(str, self.coeffs))
        return " ".join(map(str, self.coeffs))

    def __str__(self):
        return self.to_digits()

    def __repr__(self):
        return f"TruncatedPoly(p={self.p}, {self.to_digits()!r})"

    # -- resizing -----------------------------------------------------------

    def truncate(self, n: int) -> TruncatedPoly:
        """Reduce modulo ``x^n``; ``n`` may not exceed the current order."""
        if n > self.N:
            raise TruncationUnderflow(f"cannot raise truncation {self.N} to {n}")
        if n < 1:
            raise TruncationUnderflow("truncation order must stay positive")
        return TruncatedPoly._make(self.p, self.coeffs[:n])

    def zero_extend(self, n: int) -> TruncatedPoly:
        """Reinterpret as an exact polynomial and view it modulo ``x^n``.

        Only meaningful for values that are genuine polynomials of degree
        below ``N`` (codewords, secrets); a share known only modulo ``x^N``
        has no defined coefficients beyond ``N``.
        """
        if n <= self.N:
            return self.truncate(n)
        return TruncatedPoly._make(self.p, self.coeffs + (0,) * (n - self.N))

    # -- ring operations ----------------------------------------------------

    def _check(self, other: TruncatedPoly) -> int:
        if not isinstance(other, TruncatedPoly):
            raise TypeError(f"expected TruncatedPoly, got {type(other).__name__}")
        if other.p != self.p:
            raise ModulusMismatch(f"F_{self.p}[x] vs F_{other.p}[x]")
        return min(self.N, other.N)

    def __add__(self, other):
        if not isinstance(other, TruncatedPoly):
            return NotImplemented
        n = self._check(other)
        p = self.p
        if p == 2:
            return TruncatedPoly._make(p, tuple([a ^ b for a, b in zip(self.coeffs[:n], other.coeffs[:n])]))
        return TruncatedPoly._make(
            p, tuple([(a + b) % p for a, b in zip(self.coeffs[:n], other.coeffs[:n])])
        )

    def __sub__(self, other):
        if not isinstance(other, TruncatedPoly):
            return NotImplemented
        n = self._check(other)
        p = self.p
        if p == 2:
            return TruncatedPoly._make(p, tuple([a ^ b for a, b in zip(self.coeffs[:n], other.coeffs[:n])]))
        return TruncatedPoly._make(
            p, tuple([(a - b) % p for a, b in zip(self.coeffs[:n], other.coeffs[:n])])
        )

    def __neg__(self):
        p = self.p
        return TruncatedPoly._make(p, tuple([(-a) % p for a in self.coeffs]))

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(int(other))
        if not isinstance(other, TruncatedPoly):
            return NotImplemented
        n = self._check(other)
        return TruncatedPoly._make(self.p, _mul_coeffs(self.coeffs, other.coeffs, n, self.p))

    def __rmul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(int(other))
        return NotImplemented

    def scale(self, c: int) -> TruncatedPoly:
        p = self.p
        c %= p
        return TruncatedPoly._make(p, tuple([a * c % p for a in self.coeffs]))

    def __pow__(self, e: int) -> TruncatedPoly:
        if e < 0:
            raise ValueError("negative powers: use invert_unit")
        result = TruncatedPoly.one(self.p, self.N)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- valuation toolkit --------------------------------------------------

    def valuation(self) -> int:
        for j, c in enumerate(self.coeffs):
            if c:
                return j
        raise ZeroPolynomial("the zero polynomial has no valuation")

    def shift_down(self, L: int) -> TruncatedPoly:
        """Exact division by ``x^L``; the result is known modulo ``x^(N-L)``."""
        if L < 0:
            raise ValueError("shift must be nonnegative")
        if L >= self.N:
            raise TruncationUnderflow(f"shift {L} leaves nothing of truncation {self.N}")
        if any(self.coeffs[:L]):
            raise NotDivisible(f"x^{L} does not divide {self!r}")
        return TruncatedPoly._make(self.p, self.coeffs[L:])

    def shift_up(self, L: int) -> TruncatedPoly:
        """Multiply by ``x^L``; the result is known modulo ``x^(N+L)``."""
        if L < 0:
            raise ValueError("shift must be nonnegative")
        return TruncatedPoly._make(self.p, (0,) * L + self.coeffs)

    def invert_unit(self) -> TruncatedPoly:
        """Inverse modulo ``x^N`` by Newton iteration ``u <- u(2 - f u)``."""
        p = self.p
        a0 = self.coeffs[0]
        if a0 == 0:
            raise NonUnit("constant term is zero")
        n = self.N
        u = (pow(a0, -1, p),)
        prec = 1
        while prec < n:
            prec = min(2 * prec, n)
            fu = _mul_coeffs(self.coeffs, u, prec, p)
            corr = tuple((-c) % p for c in fu)
            corr = ((corr[0] + 2) % p,) + corr[1:]
            u = _mul_coeffs(u, corr, prec, p)
        return TruncatedPoly._make(p, u)


# -- function-style API -------------------------------------------------------

def add(f: TruncatedPoly, g: TruncatedPoly) -> TruncatedPoly:
    return f + g


def sub(f: TruncatedPoly, g: TruncatedPoly) -> TruncatedPoly:
    return f - g


def mul(f: TruncatedPoly, g: TruncatedPoly) -> TruncatedPoly:
    return f * g


def valuation(f: TruncatedPoly) -> int:
    return f.valuation()


def shift_down(f: TruncatedPoly, L: int) -> TruncatedPoly:
    return f.shift_down(L)


def shift_up(f: TruncatedPoly, L: int) -> TruncatedPoly:
    return f.shift_up(L)


def invert_unit(f: TruncatedPoly) -> TruncatedPoly:
    return f.invert_unit()


def solve_divide(f: TruncatedPoly, h: TruncatedPoly, kmod: int, ell: int) -> TruncatedPoly:
    """Unique ``g`` of truncation ``ell`` with ``f g = h (mod x^kmod)``.

    With ``L1 = valuation(f)`` the solution exists and is unique whenever
    ``ell + L1 <= kmod`` and ``x^L1`` divides ``h`` modulo ``x^kmod``; it is
    ``(h / x^L1) * (f / x^L1)^-1 mod x^ell``.
    """
    if f.p != h.p:
        raise ModulusMismatch(f"F_{f.p}[x] vs F_{h.p}[x]")
    if f.N < kmod or h.N < kmod:
        raise TruncationUnderflow(
            f"operands known to x^{min(f.N, h.N)}, congruence needs x^{kmod}"
        )
    if ell < 1:
        raise ValueError("ell must be positive")
    L1 = f.valuation()
    if ell + L1 > kmod:
        raise DegreeBoundViolated(f"ell + valuation = {ell + L1} > {kmod}")
    h = h.truncate(kmod)
    if any(h.coeffs[:L1]):
        raise InconsistentSystem(f"x^{L1} does not divide the right-hand side")
    h1 = h.shift_down(L1).truncate(ell)
    f1 = f.truncate(kmod).shift_down(L1).truncate(ell)
    return h1 * f1.invert_unit()
