"""Evolving k-threshold secret sharing over truncated polynomial rings."""

from .prefixcode import Codeword, get_codec, load_code_table
from .records import format_share, parse_share, parse_shares
from .ringpoly import FieldElement, TruncatedPoly, solve_divide
from .scheme import (
    DealerState,
    SchemeParams,
    Share,
    new_dealer,
    reconstruct,
    reconstruct_oracle,
    recover_dealer,
)

__version__ = "0.1.0"

__all__ = [
    "Codeword",
    "format_share",
    "parse_share",
    "parse_shares",
    "solve_divide",
    "DealerState",
    "FieldElement",
    "SchemeParams",
    "Share",
    "TruncatedPoly",
    "get_codec",
    "load_code_table",
    "new_dealer",
    "reconstruct",
    "reconstruct_oracle",
    "recover_dealer",
]
