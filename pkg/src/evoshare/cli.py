"""Command-line interface.

Exit codes:

    0  success (verify-secrecy: distributions equal)
    1  verify-secrecy found differing distributions
    2  invalid arguments or parameters
    3  share records disagree on the scheme header
    4  malformed share record
    5  reconstruction failed
    6  shares are inconsistent (no common dealer)
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from pathlib import Path

from . import records, secrecy, sizes
from .errors import (
    BudgetExceeded,
    EvoshareError,
    HeaderMismatch,
    InconsistentShares,
    MalformedRecord,
)
from .prefixcode import BUILTIN_CODECS, PrefixCode, get_codec, load_code_table
from .scheme import SchemeParams, new_dealer, reconstruct, reconstruct_oracle, recover_dealer

EXIT_OK = 0
EXIT_NOT_SECRET = 1
EXIT_USAGE = 2
EXIT_HEADER = 3
EXIT_RECORD = 4
EXIT_RECONSTRUCT = 5
EXIT_INCONSISTENT = 6


class CommandError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


# -- helpers ------------------------------------------------------------------

def parse_indices(text: str) -> list[int]:
    """``"2,5,8"`` or ``"1-10"`` or a mix; order kept, duplicates rejected."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        lo, sep, hi = part.partition("-")
        try:
            if sep:
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
        except ValueError:
            raise CommandError(f"bad index list {text!r}") from None
    if not out or any(t < 1 for t in out):
        raise CommandError(f"indices must be positive integers: {text!r}")
    if len(set(out)) != len(out):
        raise CommandError(f"duplicate index in {text!r}")
    return out


def parse_ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise CommandError(f"bad integer list {text!r}") from None


def atomic_write(path: str | Path, text: str) -> None:
    """Write through a temporary file in the same directory, then rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def write_all(files: dict[Path, str]) -> None:
    """Stage every file before renaming any, so a failure leaves no output."""
    staged = []
    try:
        for path, text in files.items():
            path.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
            staged.append((tmp, path))
            with os.fdopen(fd, "w") as fh:
                fh.write(text)
    except BaseException:
        for tmp, _ in staged:
            Path(tmp).unlink(missing_ok=True)
        raise
    for tmp, path in staged:
        os.replace(tmp, path)


def make_codec(name: str, p: int, table: str | None) -> PrefixCode:
    if table is not None:
        if name != "custom":
            raise CommandError("--code-table requires --codec custom")
        return load_code_table(table, p)
    if name == "custom":
        raise CommandError("--codec custom requires --code-table")
    return get_codec(name, p)


def make_params(args) -> SchemeParams:
    return SchemeParams(args.p, args.k, args.ell, make_codec(args.codec, args.p, args.code_table))


def read_records(paths, table: str | None) -> list:
    lines = []
    for path in paths:
        lines.extend(Path(path).read_text().splitlines())
    codec = None
    if table is not None:
        first = next((ln for ln in lines if ln.strip()), None)
        if first is None:
            raise CommandError("no share records given")
        header = records.parse_header(first)
        try:
            p = int(header["p"])
        except ValueError:
            raise MalformedRecord("p must be an integer") from None
        codec = load_code_table(table, p)
    return records.parse_shares(lines, codec)


def add_scheme_args(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--p", type=int, default=2, help="field size, a prime (default 2)")
    sp.add_argument("--k", type=int, required=True, help="threshold")
    sp.add_argument("--ell", type=int, required=True, help="secret length in symbols")
    sp.add_argument("--codec", default="gamma", choices=BUILTIN_CODECS + ("custom",))
    sp.add_argument("--code-table", metavar="FILE", help="t<TAB>codeword table for --codec custom")


# -- subcommands --------------------------------------------------------------

def cmd_split(args) -> int:
    params = make_params(args)
    indices = parse_indices(args.indices)
    try:
        secret = params.secret(args.secret)
    except ValueError as exc:
        raise CommandError(f"bad secret (secret length must be {params.ell} symbols): {exc}") from None
    dealer = new_dealer(params, secret, seed=args.seed, randomness=args.fix_randomness)
    shares = [dealer.issue_share(t) for t in indices]
    out = Path(args.out_dir)
    files = {out / f"share-{sh.t}.txt": records.format_share(sh) + "\n" for sh in shares}
    write_all(files)
    for path in files:
        print(path)
    return EXIT_OK


def cmd_combine(args) -> int:
    shares = read_records(args.shares, args.code_table)
    try:
        s = reconstruct(shares)
        if args.verify and reconstruct_oracle(shares) != s:
            raise CommandError("reconstruction paths disagree", EXIT_RECONSTRUCT)
    except EvoshareError as exc:
        raise CommandError(f"reconstruction failed: {exc}", EXIT_RECONSTRUCT) from None
    print(s.to_digits())
    return EXIT_OK


def cmd_add_participant(args) -> int:
    shares = read_records(args.shares, args.code_table)
    if not shares:
        raise CommandError("no share records given")
    if any(sh.t == args.t for sh in shares):
        raise CommandError(f"participant {args.t} already holds a share")
    params = shares[0].params
    if args.code_table is None and params.codec.name == "custom":
        raise CommandError("custom-code shares need --code-table to issue new shares")
    try:
        dealer = recover_dealer(params, shares, seed=args.seed)
    except InconsistentShares as exc:
        raise CommandError(f"shares are inconsistent: {exc}", EXIT_INCONSISTENT) from None
    except EvoshareError as exc:
        raise CommandError(f"could not recover dealer: {exc}", EXIT_RECONSTRUCT) from None
    share = dealer.issue_share(args.t)
    atomic_write(args.out, records.format_share(share) + "\n")
    print(args.out)
    return EXIT_OK


def cmd_sizes(args) -> int:
    names = [n.strip() for n in args.codecs.split(",") if n.strip()]
    codecs = [make_codec(n, args.p, args.code_table if n == "custom" else None) for n in names]
    ks = parse_ints(args.k)
    if args.t_min < 1:
        raise CommandError("--t-min must be at least 1")
    ts = list(range(args.t_min, args.t_max + 1))
    text = sizes.emit_table(ks, ts, args.ell, codecs)
    if args.csv:
        atomic_write(args.csv, text)
    else:
        sys.stdout.write(text)
    if args.reference:
        sys.stdout.write(sizes.reference_table())
    if args.plot:
        if not ts or not ks:
            raise CommandError("--plot needs a nonempty k list and t range")
        from .plotting import plot_sizes

        plot_sizes(args.plot, codecs, ks, ts, args.ell, bits=args.bits)
    return EXIT_OK


def cmd_verify_secrecy(args) -> int:
    params = make_params(args)
    coalition = parse_indices(args.coalition) if args.coalition else []
    s0 = params.secret(args.s0)
    s1 = params.secret(args.s1)
    try:
        d0 = secrecy.enumerate_distribution(params, s0, coalition, args.budget)
        d1 = secrecy.enumerate_distribution(params, s1, coalition, args.budget)
    except BudgetExceeded as exc:
        raise CommandError(str(exc)) from None
    equal = d0 == d1
    if args.csv:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([f"z_{t}" for t in coalition] + ["count_s0", "count_s1"])
        for key in sorted(set(d0.counts) | set(d1.counts)):
            writer.writerow(list(key) + [d0.counts.get(key, 0), d1.counts.get(key, 0)])
        atomic_write(args.csv, buf.getvalue())
    if args.json:
        print(json.dumps({
            "secret": equal,
            "p": params.p, "k": params.k, "ell": params.ell, "codec": params.codec.name,
            "coalition": coalition, "s0": args.s0, "s1": args.s1,
            "n_max": d0.n_max, "tuples": len(d0.counts), "states": d0.total,
        }))
    else:
        verdict = "SECRET" if equal else "NOT SECRET"
        print(f"{verdict}: coalition {coalition}, s0={args.s0}, s1={args.s1}, "
              f"{len(d0.counts)} tuples over {d0.total} randomness states")
    return EXIT_OK if equal else EXIT_NOT_SECRET


# -- entry point --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="evoshare",
        description="Evolving k-threshold secret sharing over F_p[x]/x^N.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("split", help="issue shares of a secret")
    add_scheme_args(sp)
    sp.add_argument("--secret", required=True, help="ell digits, x^0 first")
    sp.add_argument("--indices", required=True, help="participants, e.g. 1-5 or 2,5,8")
    sp.add_argument("--seed", type=int, required=True, help="RNG seed")
    sp.add_argument("--out-dir", required=True, help="directory for share-<t>.txt files")
    sp.add_argument("--fix-randomness", nargs="+", metavar="DIGITS", help=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_split)

    sp = sub.add_parser("combine", help="reconstruct the secret from k share files")
    sp.add_argument("shares", nargs="+", help="share record files")
    sp.add_argument("--code-table", metavar="FILE", help="table for custom-code shares")
    sp.add_argument("--verify", action="store_true", help="cross-check with plain elimination")
    sp.set_defaults(func=cmd_combine)

    sp = sub.add_parser("add-participant", help="issue a new share from k existing ones")
    sp.add_argument("shares", nargs="+", help="k share record files")
    sp.add_argument("--t", type=int, required=True, help="new participant index")
    sp.add_argument("--seed", type=int, required=True, help="RNG seed")
    sp.add_argument("--out", required=True, help="output share file")
    sp.add_argument("--code-table", metavar="FILE", help="table for custom-code shares")
    sp.set_defaults(func=cmd_add_participant)

    sp = sub.add_parser("sizes", help="share-size table and plot")
    sp.add_argument("--k", default="2", help="comma-separated thresholds (default 2)")
    sp.add_argument("--ell", type=int, default=1, help="secret length (default 1)")
    sp.add_argument("--p", type=int, default=2, help="alphabet size (default 2)")
    sp.add_argument("--codecs", default="gamma,delta", help="comma-separated codec names")
    sp.add_argument("--code-table", metavar="FILE", help="table for a custom codec")
    sp.add_argument("--t-min", type=int, default=1)
    sp.add_argument("--t-max", type=int, default=64)
    sp.add_argument("--csv", metavar="PATH", help="write the CSV here instead of stdout")
    sp.add_argument("--plot", metavar="PATH", help="render a figure (png, pdf, svg)")
    sp.add_argument("--bits", action="store_true", help="plot sizes in bits")
    sp.add_argument("--reference", action="store_true", help="also print published size formulas")
    sp.set_defaults(func=cmd_sizes)

    sp = sub.add_parser("verify-secrecy", help="exhaustive secrecy check for one coalition")
    add_scheme_args(sp)
    sp.add_argument("--coalition", default="", help="participant indices, e.g. 1,2")
    sp.add_argument("--s0", required=True, help="first secret")
    sp.add_argument("--s1", required=True, help="second secret")
    sp.add_argument("--budget", type=int, default=secrecy.DEFAULT_BUDGET,
                    help="maximum enumeration size (default 2^24)")
    sp.add_argument("--json", action="store_true", help="print a JSON verdict")
    sp.add_argument("--csv", metavar="PATH", help="write (tuple, count_s0, count_s1) rows")
    sp.set_defaults(func=cmd_verify_secrecy)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except HeaderMismatch as exc:
        print(f"error: header mismatch: {exc}", file=sys.stderr)
        return EXIT_HEADER
    except MalformedRecord as exc:
        print(f"error: malformed record: {exc}", file=sys.stderr)
        return EXIT_RECORD
    except InconsistentShares as exc:
        print(f"error: shares are inconsistent: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except (EvoshareError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
