"""Losing-position sequences and their numeration system.

For a fixed rational alpha >= 1 the losing pile sizes form a sequence
P[0] = 0, P[1] = 1, and

    P[k+1] = P[k] + P[j]   where   alpha*P[j] >= P[k] > alpha*P[j-1].

The index j is unique at every step and only moves forward, so a single
monotone pointer generates the sequence in amortized constant work per
term. All comparisons cross-multiply with unbounded integers.

On top of the generator this module computes windows (the run of terms
a given term can extend), greedy decompositions into sequence terms
(the generalization of Zeckendorf representations), the sequence of
recurrence indices S[i], and the eventual recurrence
P[n] = P[n-1] + P[n-k] together with the first index from which it
holds.
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "PSequence",
    "Window",
    "Zeckendorf",
    "RecurrenceInfo",
    "generate",
    "window",
    "zeckendorf",
    "s_sequence",
    "detect_recurrence",
    "degree_bounds",
]

# Hard cap on auto-extension; certification normally happens within a
# few hundred terms for desk-scale alphas.
DEFAULT_DETECTION_CAP = 16384


class PSequence:
    """Growable losing-position sequence for one alpha.

    Terms already generated never change; operations that need to see
    further simply append. A single instance is not safe for concurrent
    extension, but distinct instances share nothing.
    """

    __slots__ = ("alpha", "generated_by", "_terms", "_p", "_q", "_j")

    def __init__(self, alpha: Fraction, generated_by: tuple[str, int] | None = None):
        if alpha < 1:
            raise ValueError("alpha must be >= 1")
        self.alpha = Fraction(alpha)
        self.generated_by = generated_by
        self._p = self.alpha.numerator
        self._q = self.alpha.denominator
        self._terms: list[int] = [0, 1]
        self._j = 1  # window pointer, only ever advances

    def __len__(self) -> int:
        return len(self._terms)

    def __getitem__(self, i: int) -> int:
        return self._terms[i]

    def __iter__(self):
        return iter(self._terms)

    def __repr__(self) -> str:
        head = ",".join(str(t) for t in self._terms[:8])
        return f"PSequence(alpha={self.alpha}, terms=[{head},...])"

    @property
    def terms(self) -> tuple[int, ...]:
        return tuple(self._terms)

    def _step(self) -> None:
        t = self._terms
        k = len(t) - 1
        j = self._j
        scaled_last = self._q * t[k]
        while self._p * t[j] < scaled_last:
            j += 1
        # alpha*t[j] >= t[k] > alpha*t[j-1]; uniqueness of j
        assert self._p * t[j - 1] < scaled_last, "window index not unique"
        self._j = j
        t.append(t[k] + t[j])

    def ensure_count(self, count: int) -> None:
        """Extend until at least ``count`` terms exist."""
        while len(self._terms) < count:
            self._step()

    def ensure_value(self, bound: int) -> None:
        """Extend until some term exceeds ``bound``."""
        while self._terms[-1] <= bound:
            self._step()

    def values_up_to(self, bound: int) -> list[int]:
        """All terms <= bound (extending as needed)."""
        self.ensure_value(bound)
        return self._terms[: bisect_right(self._terms, bound)]

    def index_of(self, value: int) -> int:
        """Index of a value known to be a term (ValueError otherwise)."""
        if value >= 1:
            self.ensure_value(value - 1)
        i = bisect_left(self._terms, value, lo=1) if value else 0
        if i >= len(self._terms) or self._terms[i] != value:
            raise ValueError(f"{value} is not a term of T({self.alpha})")
        return i


def generate(
    alpha: Fraction | int | str,
    count: int | None = None,
    max_value: int | None = None,
) -> PSequence:
    """Generate the losing-position sequence for ``alpha``.

    Exactly one horizon must be given: ``count`` terms, or every term up
    to ``max_value`` (read those back with ``values_up_to``).
    """
    alpha = Fraction(alpha)
    if (count is None) == (max_value is None):
        raise ValueError("give exactly one of count or max_value")
    if count is not None:
        if count < 2:
            raise ValueError("count must cover at least the seed terms 0, 1")
        seq = PSequence(alpha, ("count", count))
        seq.ensure_count(count)
    else:
        if max_value < 0:
            raise ValueError("max_value must be nonnegative")
        seq = PSequence(alpha, ("value", max_value))
        seq.ensure_value(max_value)
    return seq


@dataclass(frozen=True)
class Window:
    """Contiguous run of term indices a given term can extend.

    The window of P[i] holds the terms Q with alpha*P[i-1] < Q <= alpha*P[i];
    adding P[i] to any member yields the member's successor term.
    """

    owner_index: int
    member_indices: range

    @property
    def max_index(self) -> int:
        return self.member_indices[-1]


def window(seq: PSequence, i: int) -> Window:
    """Window of the term at index ``i`` (i >= 1; extends seq as needed)."""
    if i < 1:
        raise ValueError("windows are defined for term indices >= 1")
    seq.ensure_count(i + 1)
    p, q = seq._p, seq._q
    # integer bounds: P > a/b  <=>  P >= a//b + 1;  P <= c/d  <=>  P <= c//d
    lo_val = (p * seq[i - 1]) // q + 1
    hi_val = (p * seq[i]) // q
    seq.ensure_value(hi_val)  # also guarantees the max member's successor exists
    t = seq._terms
    left = bisect_left(t, lo_val, lo=1)
    right = bisect_right(t, hi_val) - 1
    if right < left:
        raise RuntimeError(f"empty window at index {i} of T({seq.alpha})")
    return Window(owner_index=i, member_indices=range(left, right + 1))


@dataclass(frozen=True)
class Zeckendorf:
    """Decomposition of n into sequence terms, largest-first greedy.

    Ascending parts satisfy the gap rule alpha*part < next part, which
    makes the decomposition the unique one of its kind.
    """

    n: int
    part_indices: tuple[int, ...]
    parts: tuple[int, ...]

    @property
    def smallest_part(self) -> int:
        return self.parts[0]


def zeckendorf(seq: PSequence, n: int) -> Zeckendorf:
    """Greedy decomposition of n >= 1 into terms of ``seq``."""
    if n < 1:
        raise ValueError("only positive pile sizes decompose")
    seq.ensure_value(n)
    t = seq._terms
    indices: list[int] = []
    remainder = n
    hi = len(t)
    while remainder:
        i = bisect_right(t, remainder, 1, hi) - 1
        indices.append(i)
        remainder -= t[i]
        hi = i
    indices.reverse()
    p, q = seq._p, seq._q
    for a, b in zip(indices, indices[1:]):
        if not p * t[a] < q * t[b]:
            raise ArithmeticError(
                f"greedy parts of {n} violate the gap rule for alpha={seq.alpha}"
            )
    return Zeckendorf(n, tuple(indices), tuple(t[i] for i in indices))


def s_sequence(seq: PSequence, count: int) -> list[int]:
    """First ``count`` recurrence indices S[i].

    S[i] is the largest j with P[i] + P[i+j-1] = P[i+j]; equivalently the
    distance from i to just past the top of the window of P[i]. The
    values are nondecreasing and settle at the eventual recurrence degree.
    """
    return [window(seq, i).max_index - i + 1 for i in range(1, count + 1)]


@dataclass(frozen=True)
class RecurrenceInfo:
    """Eventual recurrence P[n] = P[n-1] + P[n-k] detected in a sequence.

    ``holds_from`` is the first index from which the relation holds at
    every generated index. Once it has held at k+2 consecutive indices it
    holds forever, which is what ``certified`` records.
    """

    degree: int
    holds_from: int
    certified: bool


def _scan_recurrence(seq: PSequence) -> RecurrenceInfo:
    t = seq._terms
    last = len(t) - 1

    def gap(n: int) -> int:
        d = t[n] - t[n - 1]
        i = bisect_left(t, d, 1)
        if i > last or t[i] != d:
            raise AssertionError("step addend is not a term")
        return n - i

    k = gap(last)
    n0 = last
    while n0 > 2 and gap(n0 - 1) == k:
        n0 -= 1
    certified = last - n0 + 1 >= k + 2
    return RecurrenceInfo(degree=k, holds_from=n0, certified=certified)


def detect_recurrence(seq: PSequence, max_terms: int = DEFAULT_DETECTION_CAP) -> RecurrenceInfo:
    """Detect the eventual recurrence, extending ``seq`` until certified.

    If ``max_terms`` is exhausted first, the best tail guess is returned
    with ``certified=False``; callers that need a guarantee must check
    the flag.
    """
    seq.ensure_count(min(max(16, len(seq)), max_terms))
    while True:
        info = _scan_recurrence(seq)
        if info.certified or len(seq) >= max_terms:
            return info
        seq.ensure_count(min(2 * len(seq), max_terms))


def _nearest_widened(x: float, direction: float) -> int:
    v = math.nextafter(x, direction)
    return math.floor(v + 0.5)


def degree_bounds(alpha: Fraction) -> tuple[int, int]:
    """Advisory bracket for the eventual recurrence degree of T(alpha).

    Evaluates log(alpha-1)/(log(alpha)-log(alpha-1)) and
    log(alpha)/(log(alpha+1)-log(alpha)) in floating point, widens each
    by one ulp outward and rounds to the nearest integer. Diagnostics
    only; nothing exact depends on these.
    """
    alpha = Fraction(alpha)
    if alpha < 1:
        raise ValueError("alpha must be >= 1")
    if alpha == 1:
        return (1, 1)
    a = float(alpha)
    lo_raw = math.log(a - 1.0) / (math.log(a) - math.log(a - 1.0))
    hi_raw = math.log(a) / (math.log(a + 1.0) - math.log(a))
    lower = max(1, _nearest_widened(lo_raw, -math.inf))
    upper = max(lower, _nearest_widened(hi_raw, math.inf))
    return (lower, upper)
