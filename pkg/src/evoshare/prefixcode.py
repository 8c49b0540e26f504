"""Prefix-free integer codes over the alphabet {0, ..., p-1}.

Built-in codes:

``gamma``  Elias gamma (p = 2): floor(lg t) zeros, then binary(t).
``delta``  Elias delta (p = 2): gamma(floor(lg t) + 1), then binary(t)
           without its leading 1.
``m1``     p-ary gamma analogue: floor(log_p t) zeros, then base-p(t).
``m2``     p-ary delta analogue: m1(floor(log_p t) + 1), then base-p(t).

Digits of ``t`` are written most significant first.  A codeword maps to a
polynomial positionally: symbol ``j`` of the string is the coefficient of
``x^j``.  So the ternary codeword ``102`` is ``1 + 2x^2``.

``custom`` codes come from an explicit table and are checked to be
prefix-free when built.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import Malformed, NotPrefixFree, OutOfDomain, SymbolOutOfRange, Truncated
from .ringpoly import TruncatedPoly, check_prime

BUILTIN_CODECS = ("gamma", "delta", "m1", "m2")


def ilog(t: int, base: int) -> int:
    """Exact floor(log_base t) for t >= 1."""
    if t < 1:
        raise OutOfDomain(f"logarithm of {t}")
    if base == 2:
        return t.bit_length() - 1
    e = 0
    power = base
    while power <= t:
        power *= base
        e += 1
    return e


def base_digits(t: int, base: int) -> tuple[int, ...]:
    """Base-``base`` digits of t >= 1, most significant first."""
    out = []
    while t:
        t, d = divmod(t, base)
        out.append(d)
    return tuple(reversed(out))


def format_symbols(symbols: Sequence[int], p: int) -> str:
    if p <= 10:
        return "".join(map(str, symbols))
    return " ".join(map(str, symbols))


def parse_symbols(text: str, p: int) -> tuple[int, ...]:
    if p <= 10:
        text = text.strip()
        if not text or not text.isascii() or not text.isdigit():
            raise SymbolOutOfRange(f"not a digit string: {text!r}")
        symbols = tuple(int(ch) for ch in text)
    else:
        parts = text.split()
        if not parts or not all(s.isdigit() for s in parts):
            raise SymbolOutOfRange(f"not a symbol list: {text!r}")
        symbols = tuple(int(s) for s in parts)
    for s in symbols:
        if s >= p:
            raise SymbolOutOfRange(f"symbol {s} not in alphabet of size {p}")
    return symbols


@dataclass(frozen=True)
class Codeword:
    symbols: tuple[int, ...]
    p: int

    def __post_init__(self):
        if not self.symbols:
            raise ValueError("codewords are nonempty")
        for s in self.symbols:
            if not 0 <= s < self.p:
                raise SymbolOutOfRange(f"symbol {s} not in alphabet of size {self.p}")

    @property
    def length(self) -> int:
        return len(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def __str__(self):
        return format_symbols(self.symbols, self.p)

    def to_poly(self) -> TruncatedPoly:
        return TruncatedPoly(self.p, self.symbols)


class PrefixCode:
    """Base class: a prefix-free map from positive integers to codewords."""

    name: str = ""

    def __init__(self, p: int):
        self.p = check_prime(p)

    def _check_t(self, t: int) -> None:
        if not isinstance(t, int) or isinstance(t, bool) or t < 1:
            raise OutOfDomain(f"participant index must be a positive integer, got {t!r}")

    def covers(self, t: int) -> bool:
        return isinstance(t, int) and t >= 1

    def symbols(self, t: int) -> tuple[int, ...]:
        raise NotImplementedError

    def encode(self, t: int) -> Codeword:
        self._check_t(t)
        return Codeword(self.symbols(t), self.p)

    def length(self, t: int) -> int:
        """Codeword length from the code's closed form."""
        raise NotImplementedError

    def decode(self, stream: Sequence[int]) -> tuple[int, int]:
        """Decode one codeword from the front of ``stream``.

        Returns ``(t, consumed)``.
        """
        raise NotImplementedError

    def _read(self, stream: Sequence[int], pos: int) -> int:
        if pos >= len(stream):
            raise Truncated("stream ends inside a codeword")
        s = stream[pos]
        if not isinstance(s, int) or not 0 <= s < self.p:
            raise Malformed(f"symbol {s!r} outside alphabet of size {self.p}")
        return s

    def __eq__(self, other):
        return type(self) is type(other) and self.p == other.p

    def __hash__(self):
        return hash((type(self).__name__, self.p))

    def __repr__(self):
        return f"{type(self).__name__}(p={self.p})"


class _UnaryPrefixed(PrefixCode):
    # gamma and m1 share one shape: floor(log_p t) zeros then base-p(t)

    def symbols(self, t):
        digits = base_digits(t, self.p)
        return (0,) * (len(digits) - 1) + digits

    def length(self, t):
        self._check_t(t)
        return 2 * ilog(t, self.p) + 1

    def decode(self, stream):
        zeros = 0
        while self._read(stream, zeros) == 0:
            zeros += 1
        t = 0
        for pos in range(zeros, 2 * zeros + 1):
            t = t * self.p + self._read(stream, pos)
        return t, 2 * zeros + 1


class EliasGamma(_UnaryPrefixed):
    name = "gamma"

    def __init__(self, p: int = 2):
        if p != 2:
            raise ValueError("the gamma code is binary")
        super().__init__(2)


class M1Code(_UnaryPrefixed):
    name = "m1"


class _LengthPrefixed(PrefixCode):
    # delta and m2: an m1/gamma codeword carrying the digit count, then digits

    drop_leading = False

    def __init__(self, p):
        super().__init__(p)
        self._inner = M1Code(p)

    def symbols(self, t):
        digits = base_digits(t, self.p)
        head = self._inner.symbols(len(digits))
        return head + (digits[1:] if self.drop_leading else digits)

    def decode(self, stream):
        n_digits, used = self._inner.decode(stream)
        body = n_digits - 1 if self.drop_leading else n_digits
        t = 1 if self.drop_leading else 0
        for pos in range(used, used + body):
            t = t * self.p + self._read(stream, pos)
        if not self.drop_leading and self._read(stream, used) == 0:
            raise Malformed("digit field starts with a zero")
        return t, used + body


class EliasDelta(_LengthPrefixed):
    name = "delta"
    drop_leading = True

    def __init__(self, p: int = 2):
        if p != 2:
            raise ValueError("the delta code is binary")
        super().__init__(2)

    def length(self, t):
        self._check_t(t)
        lg = ilog(t, 2)
        return lg + 2 * ilog(lg + 1, 2) + 1


class M2Code(_LengthPrefixed):
    name = "m2"

    def length(self, t):
        self._check_t(t)
        lg = ilog(t, self.p)
        return lg + 2 * ilog(lg + 1, self.p) + 2


class TableCode(PrefixCode):
    """A finite code given by an explicit index -> codeword table.

    ``declared_range`` (inclusive bounds), when given, must be covered by
    the table without gaps.
    """

    name = "custom"

    def __init__(
        self,
        p: int,
        table: Mapping[int, Sequence[int] | str],
        declared_range: tuple[int, int] | None = None,
        check: bool = True,
    ):
        super().__init__(p)
        words: dict[int, tuple[int, ...]] = {}
        for t, word in table.items():
            self._check_t(t)
            if isinstance(word, str):
                word = parse_symbols(word, p)
            word = tuple(word)
            if not word:
                raise ValueError(f"empty codeword for {t}")
            Codeword(word, p)
            words[t] = word
        if not words:
            raise ValueError("empty code table")
        self.table = dict(sorted(words.items()))
        self.declared_range = declared_range
        if declared_range is not None:
            lo, hi = declared_range
            missing = [t for t in range(lo, hi + 1) if t not in self.table]
            if missing:
                raise OutOfDomain(f"table has gaps in declared range: {missing[:5]}")
        self._trie = _build_trie(self.table.items()) if check else None
        if check and self._trie is None:
            raise NotPrefixFree("code table is not prefix-free")

    def covers(self, t):
        return t in self.table

    def symbols(self, t):
        try:
            return self.table[t]
        except KeyError:
            raise OutOfDomain(f"index {t} not in code table") from None

    def length(self, t):
        return len(self.symbols(t))

    def decode(self, stream):
        trie = self._trie
        if trie is None:
            trie = _build_trie(self.table.items())
            if trie is None:
                raise Malformed("code table is not prefix-free; decoding is ambiguous")
        node = trie
        pos = 0
        while True:
            s = self._read(stream, pos)
            if s not in node:
                raise Malformed("no codeword matches the stream")
            node = node[s]
            pos += 1
            if _LEAF in node:
                return node[_LEAF], pos

    def __eq__(self, other):
        return type(self) is type(other) and self.p == other.p and self.table == other.table

    def __hash__(self):
        return hash(("custom", self.p, tuple(self.table.items())))

    def __repr__(self):
        body = ", ".join(f"{t}: {format_symbols(w, self.p)!r}" for t, w in self.table.items())
        return f"TableCode(p={self.p}, {{{body}}})"


_LEAF = "leaf"


def _build_trie(items: Iterable[tuple[int, Sequence[int]]]) -> dict | None:
    """Insert codewords into a trie; None if some codeword prefixes another."""
    root: dict = {}
    for t, word in items:
        node = root
        for s in word:
            if _LEAF in node:
                return None
            node = node.setdefault(s, {})
        if node:
            # node already terminal or has children: duplicate or prefix
            return None
        node[_LEAF] = t
    return root


def is_prefix_free(words: Iterable[Sequence[int] | str]) -> bool:
    items = []
    for i, w in enumerate(words):
        if isinstance(w, str):
            w = tuple(int(ch) for ch in w)
        items.append((i, tuple(w)))
    return _build_trie(items) is not None


def get_codec(name: str, p: int, table: Mapping[int, Sequence[int] | str] | None = None) -> PrefixCode:
    if name == "gamma":
        return EliasGamma(p)
    if name == "delta":
        return EliasDelta(p)
    if name == "m1":
        return M1Code(p)
    if name == "m2":
        return M2Code(p)
    if name == "custom":
        if table is None:
            raise ValueError("custom codec needs a table")
        return TableCode(p, table)
    raise ValueError(f"unknown codec {name!r}")


def load_code_table(path: str | Path, p: int) -> TableCode:
    """Read a ``t<TAB>codeword`` table.

    Blank lines and ``#`` comments are ignored, except for an optional
    ``#range LO HI`` directive which declares an index range the table must
    cover without gaps.
    """
    table: dict[int, tuple[int, ...]] = {}
    declared = None
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if parts and parts[0] == "range":
                if len(parts) != 3:
                    raise Malformed(f"line {lineno}: expected '#range LO HI'")
                declared = (int(parts[1]), int(parts[2]))
            continue
        if "\t" not in raw:
            raise Malformed(f"line {lineno}: expected 't<TAB>codeword'")
        t_text, word_text = raw.split("\t", 1)
        try:
            t = int(t_text.strip())
        except ValueError:
            raise Malformed(f"line {lineno}: bad index {t_text!r}") from None
        if t in table:
            raise Malformed(f"line {lineno}: index {t} listed twice")
        table[t] = parse_symbols(word_text, p)
    return TableCode(p, table, declared_range=declared)


# -- function-style API -------------------------------------------------------

def encode(codec: PrefixCode, t: int) -> Codeword:
    return codec.encode(t)


def decode(codec: PrefixCode, stream: Sequence[int] | str) -> tuple[int, int]:
    if isinstance(stream, str):
        stream = parse_symbols(stream, codec.p) if codec.p > 10 else tuple(
            int(ch) if ch.isdigit() else ch for ch in stream
        )
    return codec.decode(stream)


def to_poly(c: Codeword | Sequence[int] | str, p: int) -> TruncatedPoly:
    if isinstance(c, Codeword):
        if c.p != p:
            raise SymbolOutOfRange(f"codeword over alphabet {c.p}, ring over F_{p}")
        return c.to_poly()
    if isinstance(c, str):
        symbols = parse_symbols(c, p)
    else:
        symbols = tuple(c)
    return Codeword(symbols, p).to_poly()


def verify_prefix_free(codec: PrefixCode, max_t: int) -> bool:
    """Exhaustive trie check over every covered index ``t <= max_t``."""
    if max_t < 1:
        raise OutOfDomain("max_t must be positive")
    if isinstance(codec, TableCode):
        items = [(t, w) for t, w in codec.table.items() if t <= max_t]
    else:
        items = [(t, codec.symbols(t)) for t in range(1, max_t + 1)]
    return _build_trie(items) is not None
