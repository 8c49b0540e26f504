"""Share-size formulas and tables.

Participant ``t`` holds ``(k - 1)(len(c_t) - 1) + ell`` symbols over F_p.
The closed forms below plug in each built-in code's length; they are kept
separate from the codecs so tests can check one against the other.
"""

from __future__ import annotations

import csv
import enum
import io
import math
from typing import Iterable, Sequence

from .errors import OutOfDomain
from .prefixcode import PrefixCode, get_codec, ilog


def _check_t(t: int) -> None:
    if not isinstance(t, int) or t < 1:
        raise OutOfDomain(f"participant index must be a positive integer, got {t!r}")


def codeword_length(name: str, t: int, p: int = 2) -> int:
    """Closed-form codeword length of a built-in code."""
    _check_t(t)
    if name in ("gamma", "m1"):
        return 2 * ilog(t, p) + 1
    if name == "delta":
        lg = ilog(t, 2)
        return lg + 2 * ilog(lg + 1, 2) + 1
    if name == "m2":
        lg = ilog(t, p)
        return lg + 2 * ilog(lg + 1, p) + 2
    raise ValueError(f"no closed form for codec {name!r}")


def closed_form_size(name: str, t: int, k: int, ell: int, p: int = 2) -> int:
    """Share size written out per code, without going through the length."""
    _check_t(t)
    if name == "gamma":
        return 2 * (k - 1) * ilog(t, 2) + ell
    if name == "delta":
        lg = ilog(t, 2)
        return (k - 1) * lg + 2 * (k - 1) * ilog(lg + 1, 2) + ell
    if name == "m1":
        return 2 * (k - 1) * ilog(t, p) + ell
    if name == "m2":
        lg = ilog(t, p)
        return (k - 1) * lg + 2 * (k - 1) * ilog(lg + 1, p) + (k - 1) + ell
    raise ValueError(f"no closed form for codec {name!r}")


def share_size(codec: PrefixCode | str, t: int, k: int, ell: int, p: int = 2) -> int:
    """Symbols in the share of participant ``t``.

    ``codec`` is a codec instance (any code, custom tables included) or a
    built-in code name.
    """
    _check_t(t)
    if isinstance(codec, str):
        return closed_form_size(codec, t, k, ell, p)
    return (k - 1) * (codec.length(t) - 1) + ell


def bits_per_symbol(p: int) -> int:
    return math.ceil(math.log2(p)) if p > 1 else 0


class Comparison(enum.Enum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1


def gamma_minus_delta(t: int) -> int:
    """Gamma share size minus delta share size, per unit of (k - 1)."""
    _check_t(t)
    lg = ilog(t, 2)
    return lg - 2 * ilog(lg + 1, 2)


def compare_gamma_delta(t: int) -> Comparison:
    """Sign of gamma-size minus delta-size; POSITIVE means delta is smaller."""
    f = gamma_minus_delta(t)
    if f < 0:
        return Comparison.NEGATIVE
    if f > 0:
        return Comparison.POSITIVE
    return Comparison.ZERO


CSV_HEADER = ("k", "t", "codec", "p", "ell", "codeword_length", "share_symbols", "share_bits")


def size_rows(
    k_values: Iterable[int],
    t_values: Iterable[int],
    ell: int,
    codecs: Sequence[PrefixCode],
) -> list[tuple]:
    """One row per (k, t, codec), sorted by k, then t, then codec name."""
    ks = sorted(set(k_values))
    ts = sorted(set(t_values))
    ordered = sorted(codecs, key=lambda c: (c.name, c.p))
    rows = []
    for k in ks:
        for t in ts:
            for codec in ordered:
                size = share_size(codec, t, k, ell)
                rows.append(
                    (k, t, codec.name, codec.p, ell, codec.length(t), size,
                     size * bits_per_symbol(codec.p))
                )
    return rows


def emit_table(
    k_values: Iterable[int],
    t_values: Iterable[int],
    ell: int,
    codecs: Sequence[PrefixCode | str],
    p: int = 2,
) -> str:
    """CSV text of :func:`size_rows`; codec names are built with alphabet ``p``."""
    objs = [get_codec(c, p) if isinstance(c, str) else c for c in codecs]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    writer.writerows(size_rows(k_values, t_values, ell, objs))
    return buf.getvalue()


# Published size expressions, shown for comparison only; nothing here is
# evaluated.  Rows are (table, threshold, scheme, expression).
REFERENCE_ROWS = (
    ("binary", "k=2", "Komargodski et al.", "lg t + (l+1) lg lg t + 4l + 1"),
    ("binary", "k=2", "this scheme (delta)", "floor(lg t) + 2 floor(lg(floor(lg t)+1)) + l"),
    ("binary", "k=3", "Komargodski et al.", "2 lg t + 486 l lg lg t * lg lg lg t + 567 l lg 3"),
    ("binary", "k=3", "D'Arco et al.", "4/3 lg t + c (log_4 lg t)^2 + lg p (log_4 lg t)"),
    ("binary", "k=3", "this scheme (delta)", "2 floor(lg t) + 4 floor(lg(floor(lg t)+1)) + l"),
    ("binary", "k>=4", "Komargodski et al.", "(k-1) lg t + 6k^4 l lg lg t * lg lg lg t + 7k^4 l lg k"),
    ("binary", "k>=4", "this scheme (delta)", "(k-1) floor(lg t) + 2(k-1) floor(lg(floor(lg t)+1)) + l"),
    ("p-ary", "k=2", "Okamura et al.",
     "(floor(log_p t) + 2 floor(log_p(floor(log_p t)+1)) + 2) * max(ceil(lg(p+1)), l)"),
    ("p-ary", "k=2", "this scheme (M2)", "floor(log_p t) + 2 floor(log_p(floor(log_p t)+1)) + 1 + l"),
    ("p-ary", "k>=3", "this scheme (M2)",
     "(k-1)(floor(log_p t) + 2 floor(log_p(floor(log_p t)+1)) + 1) + l"),
)


def reference_table() -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("table", "threshold", "scheme", "share_size"))
    writer.writerows(REFERENCE_ROWS)
    return buf.getvalue()
