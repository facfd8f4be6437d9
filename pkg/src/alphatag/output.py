"""Machine-readable output documents.

Every document is a JSON object {kind, payload, meta} with a fixed field
order so that identical requests serialize byte-for-byte identically.
Rationals appear as exact "p/q" strings and pile sizes / sequence terms
as decimal strings, never as floats.
"""

from __future__ import annotations

import json
from fractions import Fraction

from . import __version__
from .cutoffs import CutoffCensus, OscillationReport
from .game import GameState, MoveAdvice
from .sequence import PSequence, RecurrenceInfo, Window, Zeckendorf

__all__ = [
    "frac_str",
    "document",
    "dumps",
    "sequence_payload",
    "window_payload",
    "zeckendorf_payload",
    "classify_payload",
    "s_sequence_payload",
    "cutoffs_payload",
    "gamma_rows",
    "gamma_payload",
    "diagnostics_payload",
]


def frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def document(kind: str, payload: dict, alpha: Fraction | None = None, horizon=None) -> dict:
    return {
        "kind": kind,
        "payload": payload,
        "meta": {
            "alpha": frac_str(alpha) if alpha is not None else None,
            "horizon": horizon,
            "version": __version__,
        },
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def sequence_payload(seq: PSequence, terms: list[int] | None = None) -> dict:
    values = seq.terms if terms is None else tuple(terms)
    return {"terms": [str(t) for t in values]}


def window_payload(seq: PSequence, w: Window) -> dict:
    return {
        "owner_index": w.owner_index,
        "owner_term": str(seq[w.owner_index]),
        "member_indices": list(w.member_indices),
        "member_terms": [str(seq[i]) for i in w.member_indices],
    }


def zeckendorf_payload(z: Zeckendorf) -> dict:
    return {
        "n": str(z.n),
        "parts": [str(p) for p in z.parts],
        "part_indices": list(z.part_indices),
    }


def classify_payload(state: GameState, outcome: str, advice: MoveAdvice | None) -> dict:
    payload = {
        "pile": str(state.pile),
        "cap": str(state.cap),
        "legal_max": str(state.legal_max),
        "outcome": outcome,
    }
    if advice is not None:
        payload["advice"] = {
            "take": str(advice.take) if advice.take is not None else None,
            "winning": advice.winning,
            "parts": [str(p) for p in advice.parts],
            "theory_derived": advice.theory_derived,
        }
    return payload


def s_sequence_payload(values: list[int]) -> dict:
    return {"values": values}


def cutoffs_payload(from_: Fraction, to: Fraction, census: CutoffCensus) -> dict:
    return {
        "from": frac_str(from_),
        "to": frac_str(to),
        "cutoffs": [frac_str(c) for c in census.cutoffs],
        "gamma": census.gamma,
    }


def gamma_rows(census: CutoffCensus, upto: Fraction) -> list[tuple[str, int, str]]:
    """CSV rows (n, gamma(n), gamma(n)/n^2) on the half-integer grid."""
    rows = []
    n = Fraction(5, 2)
    while n <= upto:
        g = sum(1 for c in census.cutoffs if c <= n)
        ratio = g / float(n) ** 2
        rows.append((format(float(n), "g"), g, repr(ratio)))
        n += Fraction(1, 2)
    return rows


def gamma_payload(census: CutoffCensus, upto: Fraction) -> dict:
    rows = gamma_rows(census, upto)
    grid = []
    n = Fraction(5, 2)
    for _, g, ratio in rows:
        grid.append({"n": frac_str(n), "gamma": g, "ratio": float(ratio)})
        n += Fraction(1, 2)
    return {"upto": frac_str(upto), "rows": grid}


def diagnostics_payload(report: OscillationReport, recurrence: RecurrenceInfo) -> dict:
    return {
        "degree": report.degree,
        "holds_from": recurrence.holds_from,
        "certified": recurrence.certified,
        "dominant_root": report.dominant_root,
        "q_limit": report.q_limit,
        "start_index": report.start_index,
        "sign_changes": report.sign_changes,
        "signs": "".join("+" if s > 0 else "-" if s < 0 else "0" for s in report.signs),
        "min_q": frac_str(report.min_q),
        "min_q_index": report.min_q_index,
        "min_below_limit": report.min_below_limit,
        "min_above_alpha": report.min_above_alpha,
        "small_degree_caveat": report.small_degree_caveat,
    }
