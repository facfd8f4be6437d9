"""Exact arithmetic primitives plus floating-point root diagnostics.

Stone counts and sequence terms are plain Python ints, so there is no
overflow at any magnitude. Scale factors (alpha, cutoffs, term ratios)
are ``fractions.Fraction`` values, which the stdlib keeps in lowest
terms with a positive denominator. Floating point appears only in the
diagnostics of the characteristic polynomial of an eventual recurrence;
it never participates in game or sequence logic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

Rational = Fraction

__all__ = [
    "Rational",
    "rational_from_parts",
    "parse_rational",
    "cmp_scaled",
    "floor_scale",
    "RootDiagnostics",
    "dominant_root",
]


def rational_from_parts(num: int, den: int) -> Fraction:
    """Build the reduced fraction num/den with the sign in the numerator."""
    if den == 0:
        raise ValueError("denominator must be nonzero")
    return Fraction(num, den)


def parse_rational(text: str) -> Fraction:
    """Parse "p/q", an integer, or an exact decimal string ("3.5" -> 7/2)."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def cmp_scaled(q: Fraction, n: int, m: int) -> int:
    """Exact three-way comparison of q*n against m.

    Returns -1, 0 or +1. Cross-multiplies with unbounded integers, so no
    rounding ever occurs regardless of magnitudes.
    """
    lhs = q.numerator * n
    rhs = q.denominator * m
    return (lhs > rhs) - (lhs < rhs)


def floor_scale(q: Fraction, m: int) -> int:
    """floor(q*m) computed exactly; q must be at least 1."""
    if q < 1:
        raise ValueError("scale factor must be >= 1")
    return (q.numerator * m) // q.denominator


@dataclass(frozen=True)
class RootDiagnostics:
    """Numeric fingerprint of x^k - x^(k-1) - 1 for a recurrence of degree k.

    ``dominant_root`` is the unique real root above 1; ``q_limit`` is its
    k-th power, the limit of the tail ratios P[n+k] / P[n].
    """

    degree: int
    dominant_root: float
    q_limit: float
    tolerance: float


def _char_poly(x: float, k: int) -> float:
    return x**k - x ** (k - 1) - 1.0


def dominant_root(k: int, tolerance: float = 1e-12) -> RootDiagnostics:
    """Locate the real root above 1 of x^k - x^(k-1) - 1 by bisection.

    The polynomial is negative at 1 and nonnegative at 2 for every k >= 1,
    and has exactly one real root in (1, 2]. Bisection brackets it to
    ``tolerance`` and a short Newton polish drives the residual down to
    float precision. For k = 1 the polynomial degenerates to x - 2.
    """
    if k < 1:
        raise ValueError("degree must be a positive integer")
    if k == 1:
        return RootDiagnostics(1, 2.0, 2.0, tolerance)
    lo, hi = 1.0, 2.0
    while hi - lo > tolerance:
        mid = 0.5 * (lo + hi)
        if _char_poly(mid, k) < 0.0:
            lo = mid
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    for _ in range(4):
        deriv = k * x ** (k - 1) - (k - 1) * x ** (k - 2)
        step = _char_poly(x, k) / deriv
        x -= step
        if x <= 1.0 or x > 2.0:  # never leaves the bracket in practice
            x = 0.5 * (lo + hi)
            break
    return RootDiagnostics(k, x, x**k, tolerance)
