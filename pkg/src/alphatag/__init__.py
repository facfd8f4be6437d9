"""Exact-arithmetic toolkit for capped take-away games.

In the games handled here, two players alternately remove stones from a
single pile. The first player may take up to n - 1 stones; afterwards a
take is capped at alpha times the previous take, for a fixed rational
alpha >= 1. The toolkit computes the losing pile sizes, plays the
winning strategy, and maps out how the losing positions change as alpha
varies (stable intervals and their cutoff endpoints).
"""

__version__ = "0.1.0"

from .numerics import Rational, parse_rational, rational_from_parts
from .sequence import PSequence, generate

__all__ = [
    "Rational",
    "parse_rational",
    "rational_from_parts",
    "PSequence",
    "generate",
    "__version__",
]
