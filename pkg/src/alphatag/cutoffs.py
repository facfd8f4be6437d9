"""Cutoffs and stable intervals of the losing-position sequences.

As alpha grows, the losing-position sequence T(alpha) stays constant on
half-open intervals [a0, a1) and changes at their endpoints, the
cutoffs. The next cutoff after alpha is the minimum of the ratio
sequence

    Q[k] = Phat[k] / P[k],

where Phat[k] is the successor of the top of the window of P[k]: the
first beta at which the window of P[k] grows to swallow Phat[k], making
the sequences differ.

The minimum search cannot rely on an a priori bound for where the
minimum is attained, so it widens its horizon geometrically until the
running minimum and its earliest attaining index survive two
consecutive doublings, then verifies the candidate exactly: the
sequence at the candidate must diverge from the current one, and a
rational probe just below the candidate must agree with it through the
divergence point. Failing verification is a hard error, never a
silently wrong value.
"""

from __future__ import annotations

import json
import math
import os
from collections.abc import MutableMapping
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .numerics import dominant_root
from .sequence import PSequence, RecurrenceInfo, detect_recurrence, generate, window

__all__ = [
    "RatioPoint",
    "StableInterval",
    "CutoffCensus",
    "NextCutoff",
    "CutoffComputationError",
    "q_sequence",
    "next_cutoff",
    "next_cutoff_details",
    "stable_interval",
    "enumerate_cutoffs",
    "verify_integer_cutoffs",
    "verify_fractional_cutoffs",
    "half_integer_survey",
    "oscillation_diagnostic",
    "load_cutoff_cache",
    "save_cutoff_cache",
    "IntegerCutoffReport",
    "FractionalCutoffReport",
    "HalfIntegerReport",
    "OscillationReport",
]


class CutoffComputationError(RuntimeError):
    """A cutoff candidate failed certification or verification."""


@dataclass(frozen=True)
class RatioPoint:
    """One ratio Q[k] = p_hat/p together with its ingredients."""

    index: int
    p_hat: int
    p: int
    q: Fraction


@dataclass(frozen=True)
class StableInterval:
    """Interval [lower, upper) of alphas sharing one losing-position sequence."""

    lower: Fraction
    upper: Fraction
    degree: int
    prefix: tuple[int, ...]


@dataclass(frozen=True)
class CutoffCensus:
    """Cutoffs found in a range; gamma counts every cutoff <= bound."""

    bound: Fraction
    cutoffs: tuple[Fraction, ...]
    gamma: int


@dataclass(frozen=True)
class NextCutoff:
    """Next cutoff after some alpha, with provenance of the search.

    ``degree``/``holds_from``/``prefix`` describe the sequence on the
    interval the search started from; ``attained_at`` is the earliest
    ratio index achieving the minimum; ``divergence_index`` is the first
    sequence index at which the cutoff's own sequence differs.
    """

    value: Fraction
    degree: int
    holds_from: int
    prefix: tuple[int, ...]
    attained_at: int
    divergence_index: int


class _QScanner:
    """Incremental minimum of the ratio sequence with a monotone pointer.

    The index of the window maximum never moves backwards as k grows, so
    one pointer serves all ratios in amortized constant work per index.
    """

    def __init__(self, seq: PSequence):
        self.seq = seq
        self._m = 1
        self._next_k = 1
        self.best: Fraction | None = None
        self.best_index: int | None = None

    def _ratio(self, k: int) -> Fraction:
        seq = self.seq
        p, q = seq.alpha.numerator, seq.alpha.denominator
        seq.ensure_count(k + 1)
        target = p * seq[k]
        m = self._m
        seq.ensure_count(m + 2)
        while q * seq[m + 1] <= target:
            m += 1
            seq.ensure_count(m + 2)
        # m is the top of the window of P[k]; nonemptiness pins it above P[k-1]'s reach
        assert q * seq[m] > p * seq[k - 1], "window unexpectedly empty"
        self._m = m
        return Fraction(seq[m + 1], seq[k])

    def advance_to(self, k_max: int) -> None:
        for k in range(self._next_k, k_max + 1):
            ratio = self._ratio(k)
            if self.best is None or ratio < self.best:
                self.best = ratio
                self.best_index = k
        self._next_k = max(self._next_k, k_max + 1)


def q_sequence(alpha: Fraction | int | str, count: int) -> list[RatioPoint]:
    """First ``count`` ratio points for T(alpha)."""
    alpha = Fraction(alpha)
    if alpha < 1:
        raise ValueError("alpha must be >= 1")
    if count < 1:
        raise ValueError("count must be positive")
    seq = generate(alpha, count=max(2, count + 2))
    points = []
    for k in range(1, count + 1):
        top = window(seq, k).max_index
        seq.ensure_count(top + 2)
        p_hat = seq[top + 1]
        points.append(RatioPoint(index=k, p_hat=p_hat, p=seq[k], q=Fraction(p_hat, seq[k])))
    return points


def _certified_recurrence(seq: PSequence) -> RecurrenceInfo:
    info = detect_recurrence(seq)
    if not info.certified:
        raise CutoffComputationError(
            f"eventual recurrence for alpha={seq.alpha} not certified "
            f"within {len(seq)} terms (tail degree guess {info.degree})"
        )
    return info


def _find_divergence(seq: PSequence, candidate: Fraction, horizon: int) -> int:
    """First index where T(candidate) differs from seq, or raise."""
    for attempt in range(2):
        seq.ensure_count(horizon + 1)
        other = generate(candidate, count=horizon + 1)
        for i in range(horizon + 1):
            if other[i] != seq[i]:
                return i
        horizon *= 2
    raise CutoffComputationError(
        f"candidate cutoff {candidate} after alpha={seq.alpha} produced an "
        f"identical sequence through {horizon // 2} terms"
    )


def next_cutoff_details(alpha: Fraction | int | str) -> NextCutoff:
    """Smallest beta > alpha at which the losing positions change, verified."""
    alpha = Fraction(alpha)
    if alpha < 1:
        raise ValueError("alpha must be >= 1")
    seq = generate(alpha, count=16)
    info = _certified_recurrence(seq)
    k = info.degree

    scanner = _QScanner(seq)
    base = info.holds_from + k + 2  # earliest index certification can complete
    m_extra = max(64, 8 * k)
    scanner.advance_to(base + m_extra)
    snapshot = (scanner.best, scanner.best_index)
    stable = 0
    while stable < 2:
        m_extra *= 2
        if base + m_extra > 1 << 20:
            raise CutoffComputationError(
                f"minimum ratio for alpha={alpha} did not stabilize"
            )
        scanner.advance_to(base + m_extra)
        current = (scanner.best, scanner.best_index)
        stable = stable + 1 if current == snapshot else 0
        snapshot = current

    candidate, attained_at = snapshot
    if candidate <= alpha:
        raise CutoffComputationError(
            f"minimum ratio {candidate} for alpha={alpha} is not above alpha"
        )

    div = _find_divergence(seq, candidate, attained_at + 2 * k + 32)
    probe = candidate - Fraction(1, 1_000_000 * candidate.denominator)
    probe_seq = generate(probe, count=div + 1)
    for i in range(div + 1):
        if probe_seq[i] != seq[i]:
            raise CutoffComputationError(
                f"probe {probe} just below candidate {candidate} diverges from "
                f"alpha={alpha} at index {i}, before the candidate does at {div}"
            )
    return NextCutoff(
        value=candidate,
        degree=k,
        holds_from=info.holds_from,
        prefix=tuple(seq[i] for i in range(info.holds_from)),
        attained_at=attained_at,
        divergence_index=div,
    )


def next_cutoff(alpha: Fraction | int | str) -> Fraction:
    """Smallest beta > alpha at which the losing positions change."""
    return next_cutoff_details(alpha).value


def _anchor_below(alpha: Fraction) -> Fraction:
    # Integers >= 2 are themselves cutoffs; below 2 the single interval
    # starts at 1.
    return Fraction(1) if alpha < 2 else Fraction(math.floor(alpha))


def stable_interval(alpha: Fraction | int | str) -> StableInterval:
    """Interval [lower, upper) around alpha with one shared sequence.

    Walks forward from the nearest integer anchor at or below alpha, so
    only the cutoffs between that anchor and alpha are computed.
    """
    alpha = Fraction(alpha)
    if alpha < 1:
        raise ValueError("alpha must be >= 1")
    lower = _anchor_below(alpha)
    while True:
        step = next_cutoff_details(lower)
        if step.value > alpha:
            return StableInterval(
                lower=lower, upper=step.value, degree=step.degree, prefix=step.prefix
            )
        lower = step.value


CacheMap = MutableMapping[Fraction, NextCutoff]


def _walk(
    start: Fraction,
    stop_at: Fraction,
    stop_below: Fraction | None = None,
    cache: CacheMap | None = None,
) -> list[tuple[Fraction, NextCutoff]]:
    """Cutoff chain from ``start``: every c with c <= stop_at (and, when
    ``stop_below`` is set, c < stop_below)."""
    out = []
    c = start
    while c <= stop_at and (stop_below is None or c < stop_below):
        step = cache.get(c) if cache is not None else None
        if step is None:
            step = next_cutoff_details(c)
            if cache is not None:
                cache[c] = step
        out.append((c, step))
        c = step.value
    return out


def _segment_worker(args: tuple[Fraction, Fraction, Fraction]) -> list[tuple[Fraction, NextCutoff]]:
    start, stop_at, stop_below = args
    return _walk(start, stop_at, stop_below)


def enumerate_cutoffs(
    from_: Fraction | int | str,
    to: Fraction | int | str,
    cache: CacheMap | None = None,
    jobs: int = 1,
) -> CutoffCensus:
    """All cutoffs in [from_, to], plus gamma(to), the count of cutoffs <= to.

    The sequential walk starts from 1 and assumes nothing. With jobs > 1
    the range splits at the integers, which serve as anchors (every
    integer >= 2 is a cutoff; the sequential path double-checks that
    property, see ``verify_integer_cutoffs``).
    """
    from_ = Fraction(from_)
    to = Fraction(to)
    if not 1 <= from_ < to:
        raise ValueError("need 1 <= from < to")

    if jobs > 1:
        segments = [
            (Fraction(m), to, Fraction(m + 1)) for m in range(1, math.floor(to) + 1)
        ]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_segment_worker, segments))
        chain: list[tuple[Fraction, NextCutoff]] = []
        for chunk in chunks:
            chain.extend(chunk)
        if cache is not None:
            for c, step in chain:
                cache[c] = step
    else:
        chain = _walk(Fraction(1), to, cache=cache)

    all_cutoffs = [c for c, _ in chain]
    in_range = tuple(c for c in all_cutoffs if from_ <= c <= to)
    return CutoffCensus(bound=to, cutoffs=in_range, gamma=len(all_cutoffs))


@dataclass(frozen=True)
class IntegerCutoffReport:
    """Outcome of checking that every integer in [2, max_n] is a cutoff."""

    max_n: int
    confirmed: tuple[int, ...]
    missing: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return not self.missing


def verify_integer_cutoffs(max_n: int, cache: CacheMap | None = None) -> IntegerCutoffReport:
    """Confirm every integer 2..max_n appears in the sequential cutoff walk."""
    if max_n < 2:
        raise ValueError("max_n must be at least 2")
    census = enumerate_cutoffs(1, max_n, cache=cache)
    found = set(census.cutoffs)
    confirmed = tuple(n for n in range(2, max_n + 1) if Fraction(n) in found)
    missing = tuple(n for n in range(2, max_n + 1) if Fraction(n) not in found)
    return IntegerCutoffReport(max_n=max_n, confirmed=confirmed, missing=missing)


@dataclass(frozen=True)
class FractionalCheck:
    x: int
    target: Fraction
    is_cutoff: bool
    prev_cutoff: Fraction
    window_max: int
    expected_window_max: int

    @property
    def ok(self) -> bool:
        return self.is_cutoff and self.window_max == self.expected_window_max


@dataclass(frozen=True)
class FractionalCutoffReport:
    n: int
    checks: tuple[FractionalCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


def verify_fractional_cutoffs(
    n: int, x_multiples: int, cache: CacheMap | None = None
) -> FractionalCutoffReport:
    """Check that x + 1/n is a cutoff for x in {n!, 2*n!, ...}.

    Also checks the companion window identity: with alpha the largest
    cutoff below x + 1/n, the window of the term n tops out at
    n*x - n + 1. Enumeration keeps this to desk scale: n <= 3 and
    x <= 12.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if x_multiples < 1:
        raise ValueError("need at least one multiple of n!")
    fact = math.factorial(n)
    largest_x = x_multiples * fact
    if n > 3 or largest_x > 12:
        raise ValueError("desk-scale check only: n <= 3 and x <= 12")

    top = Fraction(largest_x) + Fraction(1, n)
    census = enumerate_cutoffs(1, top, cache=cache)
    cutoffs = list(census.cutoffs)
    cutoff_set = set(cutoffs)

    checks = []
    for mult in range(1, x_multiples + 1):
        x = mult * fact
        target = Fraction(x) + Fraction(1, n)
        below = [c for c in cutoffs if c < target]
        prev = below[-1]
        seq = generate(prev, count=max(4, n + 2))
        w = window(seq, seq.index_of(n))
        checks.append(
            FractionalCheck(
                x=x,
                target=target,
                is_cutoff=target in cutoff_set,
                prev_cutoff=prev,
                window_max=seq[w.max_index],
                expected_window_max=n * x - n + 1,
            )
        )
    return FractionalCutoffReport(n=n, checks=tuple(checks))


@dataclass(frozen=True)
class HalfIntegerReport:
    limit: Fraction
    entries: tuple[tuple[Fraction, bool], ...]

    @property
    def non_cutoffs(self) -> tuple[Fraction, ...]:
        return tuple(h for h, is_cut in self.entries if not is_cut)

    @property
    def cutoffs(self) -> tuple[Fraction, ...]:
        return tuple(h for h, is_cut in self.entries if is_cut)


def half_integer_survey(
    limit: Fraction | int | str, cache: CacheMap | None = None, jobs: int = 1
) -> HalfIntegerReport:
    """Classify every half-integer 5/2, 7/2, ... <= limit as cutoff or not."""
    limit = Fraction(limit)
    if limit < Fraction(5, 2):
        raise ValueError("limit must be at least 5/2")
    census = enumerate_cutoffs(1, limit, cache=cache, jobs=jobs)
    found = set(census.cutoffs)
    entries = []
    h = Fraction(5, 2)
    while h <= limit:
        entries.append((h, h in found))
        h += 1
    return HalfIntegerReport(limit=limit, entries=tuple(entries))


def load_cutoff_cache(path: str | os.PathLike) -> dict[Fraction, NextCutoff]:
    """Read a cutoff cache file written by ``save_cutoff_cache``.

    Records loaded from disk carry -1 for the search diagnostics
    (attained_at, divergence_index), which the cache layout does not
    persist; walks only consume the chain links and interval data.
    """
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if data.get("kind") != "cutoff-cache" or data.get("version") != 1:
        raise ValueError(f"{path} is not a version-1 cutoff cache")
    cache: dict[Fraction, NextCutoff] = {}
    for rec in data["records"]:
        cutoff = Fraction(rec["cutoff"])
        cache[cutoff] = NextCutoff(
            value=Fraction(rec["next"]),
            degree=int(rec["degree"]),
            holds_from=len(rec["prefix"]),
            prefix=tuple(int(t) for t in rec["prefix"]),
            attained_at=-1,
            divergence_index=-1,
        )
    return cache


def save_cutoff_cache(path: str | os.PathLike, cache: CacheMap) -> None:
    """Write the cache as an ordered list of {cutoff, degree, prefix, next}."""
    records = [
        {
            "cutoff": f"{c.numerator}/{c.denominator}",
            "degree": step.degree,
            "prefix": [str(t) for t in step.prefix],
            "next": f"{step.value.numerator}/{step.value.denominator}",
        }
        for c, step in sorted(cache.items())
    ]
    data = {"kind": "cutoff-cache", "version": 1, "records": records}
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2)
        fh.write("\n")
    os.replace(tmp, path)


@dataclass(frozen=True)
class OscillationReport:
    """Signs of Q[n] - limit over a post-stabilization stretch.

    The limit is the k-th power of the dominant root of the recurrence's
    characteristic polynomial, evaluated in floating point; signs are
    exact relative to that float. ``min_q``, by contrast, is the exact
    minimum over every ratio from index 1, matching the next cutoff.
    Degrees below 6 carry a caveat: the oscillation argument is weaker
    there, so the signs are reported rather than promised.
    """

    alpha: Fraction
    degree: int
    dominant_root: float
    q_limit: float
    start_index: int
    signs: tuple[int, ...]
    sign_changes: int
    min_q: Fraction
    min_q_index: int

    @property
    def min_below_limit(self) -> bool:
        return self.min_q < Fraction(self.q_limit)

    @property
    def min_above_alpha(self) -> bool:
        return self.min_q > self.alpha

    @property
    def small_degree_caveat(self) -> bool:
        return self.degree < 6


def oscillation_diagnostic(alpha: Fraction | int | str, count: int) -> OscillationReport:
    """Sign pattern of the ratio sequence around its limit."""
    alpha = Fraction(alpha)
    if count < 1:
        raise ValueError("count must be positive")
    seq = generate(alpha, count=16)
    info = _certified_recurrence(seq)
    k = info.degree
    diag = dominant_root(k)
    limit_exact = Fraction(diag.q_limit)

    scanner = _QScanner(seq)
    start = info.holds_from
    signs = []
    min_q: Fraction | None = None
    min_q_index = 0
    for n in range(1, start + count):
        ratio = scanner._ratio(n)
        if min_q is None or ratio < min_q:
            min_q = ratio
            min_q_index = n
        if n >= start:
            signs.append((ratio > limit_exact) - (ratio < limit_exact))

    nonzero = [s for s in signs if s]
    changes = sum(1 for a, b in zip(nonzero, nonzero[1:]) if a != b)
    return OscillationReport(
        alpha=alpha,
        degree=k,
        dominant_root=diag.dominant_root,
        q_limit=diag.q_limit,
        start_index=start,
        signs=tuple(signs),
        sign_changes=changes,
        min_q=min_q,
        min_q_index=min_q_index,
    )
