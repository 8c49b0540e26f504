"""The one-line ASCII share record.

::

    ETSS1 p=2 k=2 l=4 code=custom t=3 cw=101 z=000111

Digit strings run x^0 first.  For p > 10 the symbols inside ``cw`` and ``z``
are comma-separated decimal numbers, because spaces separate fields.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

from .errors import EvoshareError, HeaderMismatch, MalformedRecord, OutOfDomain
from .prefixcode import BUILTIN_CODECS, Codeword, PrefixCode, get_codec
from .ringpoly import TruncatedPoly, is_prime
from .scheme import SchemeParams, Share

MAGIC = "ETSS1"
FIELDS = ("p", "k", "l", "code", "t", "cw", "z")


def _symbols(values, p: int) -> str:
    if p <= 10:
        return "".join(map(str, values))
    return ",".join(map(str, values))


def _parse_symbols(text: str, p: int) -> tuple[int, ...]:
    if p <= 10:
        if not text or not text.isascii() or not text.isdigit():
            raise MalformedRecord(f"bad digit string {text!r}")
        out = tuple(int(ch) for ch in text)
    else:
        parts = text.split(",")
        if not all(s.isdigit() for s in parts):
            raise MalformedRecord(f"bad symbol list {text!r}")
        out = tuple(int(s) for s in parts)
    if any(s >= p for s in out):
        raise MalformedRecord(f"symbol outside alphabet of size {p} in {text!r}")
    return out


def format_share(share: Share) -> str:
    prm = share.params
    return (
        f"{MAGIC} p={prm.p} k={prm.k} l={prm.ell} code={prm.codec.name} "
        f"t={share.t} cw={_symbols(share.codeword.symbols, prm.p)} "
        f"z={_symbols(share.z.coeffs, prm.p)}"
    )


def parse_header(line: str) -> dict[str, str]:
    parts = line.split()
    if not parts or parts[0] != MAGIC:
        raise MalformedRecord(f"record must start with {MAGIC}")
    fields: dict[str, str] = {}
    for part in parts[1:]:
        key, sep, value = part.partition("=")
        if not sep or key not in FIELDS or key in fields:
            raise MalformedRecord(f"bad field {part!r}")
        fields[key] = value
    missing = [f for f in FIELDS if f not in fields]
    if missing:
        raise MalformedRecord(f"missing fields: {', '.join(missing)}")
    return fields


def parse_share(line: str, codec: PrefixCode | None = None) -> Share:
    """Parse one record.

    ``codec`` is required to check custom codewords; built-in codecs are
    rebuilt from the header and the codeword must match ``encode(t)``.
    """
    fields = parse_header(line)
    try:
        p, k, ell, t = (int(fields[f]) for f in ("p", "k", "l", "t"))
    except ValueError:
        raise MalformedRecord("p, k, l and t must be integers") from None
    if not is_prime(p) or k < 2 or ell < 1 or t < 1:
        raise MalformedRecord(f"invalid parameters p={p} k={k} l={ell} t={t}")
    name = fields["code"]
    cw = _parse_symbols(fields["cw"], p)
    z = _parse_symbols(fields["z"], p)
    if codec is None:
        if name not in BUILTIN_CODECS:
            if name != "custom":
                raise MalformedRecord(f"unknown codec {name!r}")
            codec = _TrustedCustom(p)
        else:
            try:
                codec = get_codec(name, p)
            except ValueError as exc:
                raise MalformedRecord(str(exc)) from None
    elif codec.name != name or codec.p != p:
        raise HeaderMismatch(f"record uses code={name} p={p}, expected {codec.name} p={codec.p}")
    if not isinstance(codec, _TrustedCustom):
        try:
            expected = codec.encode(t).symbols
        except EvoshareError as exc:
            raise MalformedRecord(str(exc)) from None
        if expected != cw:
            raise MalformedRecord(f"codeword for t={t} should be {_symbols(expected, p)}")
    try:
        params = SchemeParams(p, k, ell, codec)
        return Share(params, t, Codeword(cw, p), TruncatedPoly(p, z))
    except EvoshareError as exc:
        raise MalformedRecord(str(exc)) from None


class _TrustedCustom(PrefixCode):
    # stands in for an unknown custom table: codewords are taken from records
    name = "custom"

    def symbols(self, t):
        raise OutOfDomain("custom code table not loaded")

    def length(self, t):
        return len(self.symbols(t))


def parse_shares(lines: Iterable[str], codec: PrefixCode | None = None) -> list[Share]:
    """Parse records and check they all carry the same scheme header."""
    shares = []
    header = None
    for line in lines:
        if not line.strip():
            continue
        share = parse_share(line, codec)
        h = (share.params.p, share.params.k, share.params.ell, share.params.codec.name)
        if header is None:
            header = h
        elif h != header:
            raise HeaderMismatch(f"record header {h} differs from {header}")
        shares.append(share)
    return shares


def read_share_files(paths: Iterable[str | Path], codec: PrefixCode | None = None) -> list[Share]:
    lines: list[str] = []
    for path in paths:
        lines.extend(Path(path).read_text().splitlines())
    return parse_shares(lines, codec)
