from fractions import Fraction as F

import pytest

from alphatag.cutoffs import (
    enumerate_cutoffs,
    half_integer_survey,
    load_cutoff_cache,
    next_cutoff,
    next_cutoff_details,
    oscillation_diagnostic,
    q_sequence,
    save_cutoff_cache,
    stable_interval,
    verify_fractional_cutoffs,
    verify_integer_cutoffs,
)
from alphatag.sequence import generate
from reference_data import FIRST_CUTOFFS, STABLE_INTERVALS


class TestQSequence:
    def test_alpha_three_ratios(self):
        points = q_sequence(3, 8)
        by_index = {pt.index: pt for pt in points}
        assert by_index[5].p == 6 and by_index[5].q == F(7, 2)
        assert by_index[4].p_hat == 15 and by_index[4].q == F(15, 4)

    def test_fibonacci_ratios_bottom_out_at_five_halves(self):
        points = q_sequence(2, 40)
        values = [pt.q for pt in points]
        assert min(values) == F(5, 2)
        assert values[1] == F(5, 2)

    @pytest.mark.parametrize("alpha", [F(1), F(2), F(3), F(43, 11), F(9, 2)])
    def test_every_ratio_exceeds_alpha(self, alpha):
        assert all(pt.q > alpha for pt in q_sequence(alpha, 60))

    def test_ratio_is_successor_over_term(self):
        for pt in q_sequence(F(7, 2), 20):
            assert pt.q == F(pt.p_hat, pt.p)


class TestNextCutoff:
    @pytest.mark.parametrize(
        "alpha,expected",
        [
            (F(3), F(7, 2)),
            (F(2), F(5, 2)),
            (F(43, 11), F(4)),
            (F(1), F(2)),
            (F(3, 2), F(2)),
            (F(7, 2), F(11, 3)),
            (F(9, 2), F(14, 3)),
        ],
    )
    def test_known_steps(self, alpha, expected):
        assert next_cutoff(alpha) == expected

    def test_constant_on_stable_interval(self):
        assert next_cutoff(F(10, 3)) == F(7, 2)
        assert next_cutoff(F(17, 5)) == F(7, 2)
        assert next_cutoff(F(49, 16)) == F(7, 2)

    @pytest.mark.parametrize("alpha", [F(2), F(3), F(7, 2)])
    def test_divergence_and_agreement(self, alpha):
        beta = next_cutoff(alpha)
        assert beta > alpha
        horizon = 200
        ours = generate(alpha, count=horizon).terms
        theirs = generate(beta, count=horizon).terms
        assert ours != theirs
        probe = beta - F(1, 10**6)
        assert generate(probe, count=horizon).terms == ours

    def test_details_expose_search_provenance(self):
        step = next_cutoff_details(F(7, 2))
        assert step.value == F(11, 3)
        assert step.prefix == (0, 1, 2, 3, 4, 6, 8, 11, 15, 21)
        assert step.degree == 5
        ours = generate(F(7, 2), count=step.divergence_index + 1).terms
        theirs = generate(step.value, count=step.divergence_index + 1).terms
        assert ours[: step.divergence_index] == theirs[: step.divergence_index]
        assert ours[step.divergence_index] != theirs[step.divergence_index]

    def test_rejects_alpha_below_one(self):
        with pytest.raises(ValueError):
            next_cutoff(F(1, 2))


class TestStableInterval:
    def test_interior_point_maps_to_enclosing_interval(self):
        got = stable_interval(F(10, 3))
        assert (got.lower, got.upper, got.degree) == (F(3), F(7, 2), 4)
        assert got.prefix == (0, 1, 2, 3, 4, 6)

    def test_fifteen_fourths(self):
        got = stable_interval(F(15, 4))
        assert (got.lower, got.upper, got.degree) == (F(11, 3), F(43, 11), 5)
        assert got.prefix == (0, 1, 2, 3, 4, 6, 8, 11)

    def test_cutoff_maps_to_its_own_interval(self):
        got = stable_interval(F(2))
        assert (got.lower, got.upper, got.degree) == (F(2), F(5, 2), 2)
        assert got.prefix == (0, 1, 2)

    def test_below_two(self):
        got = stable_interval(F(7, 4))
        assert (got.lower, got.upper, got.degree) == (F(1), F(2), 1)


class TestEnumerate:
    def test_first_cutoffs(self, cutoff_cache):
        census = enumerate_cutoffs(1, F(9, 2), cache=cutoff_cache)
        expected = FIRST_CUTOFFS + [F(31, 7), F(9, 2)]
        assert list(census.cutoffs) == expected
        assert census.gamma == 11

    def test_subrange_keeps_global_gamma(self, cutoff_cache):
        census = enumerate_cutoffs(F(5, 2), 4, cache=cutoff_cache)
        assert list(census.cutoffs) == [F(5, 2), F(3), F(7, 2), F(11, 3), F(43, 11), F(4)]
        assert census.gamma == 8

    def test_parallel_matches_sequential(self, cutoff_cache):
        sequential = enumerate_cutoffs(1, 6, cache=cutoff_cache)
        parallel = enumerate_cutoffs(1, 6, jobs=2)
        assert sequential == parallel

    def test_rejects_bad_range(self):
        with pytest.raises(ValueError):
            enumerate_cutoffs(3, 2)

    def test_cache_roundtrip(self, cutoff_cache, tmp_path):
        enumerate_cutoffs(1, F(9, 2), cache=cutoff_cache)
        path = tmp_path / "cutoffs.json"
        save_cutoff_cache(path, cutoff_cache)
        loaded = load_cutoff_cache(path)
        census = enumerate_cutoffs(1, F(9, 2), cache=loaded)
        assert list(census.cutoffs) == FIRST_CUTOFFS + [F(31, 7), F(9, 2)]
        for c, step in loaded.items():
            assert cutoff_cache[c].value == step.value
            assert cutoff_cache[c].prefix == step.prefix


class TestIntegerCutoffs:
    def test_up_to_six(self, cutoff_cache):
        report = verify_integer_cutoffs(6, cache=cutoff_cache)
        assert report.ok and report.confirmed == (2, 3, 4, 5, 6)

    def test_minimal(self, cutoff_cache):
        report = verify_integer_cutoffs(2, cache=cutoff_cache)
        assert report.ok and report.confirmed == (2,)


class TestFractionalCutoffs:
    def test_half_steps(self, cutoff_cache):
        report = verify_fractional_cutoffs(2, 2, cache=cutoff_cache)
        assert report.ok
        targets = [c.target for c in report.checks]
        assert targets == [F(5, 2), F(9, 2)]

    def test_integer_base_case_window_identity(self, cutoff_cache):
        report = verify_fractional_cutoffs(1, 2, cache=cutoff_cache)
        assert report.ok
        x2 = report.checks[1]
        assert x2.prev_cutoff == F(5, 2)
        assert x2.window_max == 2 == 1 * 2 - 1 + 1

    def test_desk_scale_guard(self):
        with pytest.raises(ValueError):
            verify_fractional_cutoffs(4, 1)
        with pytest.raises(ValueError):
            verify_fractional_cutoffs(1, 13)


class TestHalfIntegerSurvey:
    def test_small_limit_all_cutoffs(self, cutoff_cache):
        report = half_integer_survey(F(9, 2), cache=cutoff_cache)
        assert report.cutoffs == (F(5, 2), F(7, 2), F(9, 2))
        assert report.non_cutoffs == ()


class TestOscillation:
    def test_fibonacci_report(self):
        report = oscillation_diagnostic(2, 60)
        assert report.degree == 2
        assert report.small_degree_caveat
        assert report.min_q == F(5, 2)
        assert report.min_below_limit and report.min_above_alpha
        assert len(report.signs) == 60

    def test_min_matches_next_cutoff(self, cutoff_cache):
        for alpha in (F(2), F(3), F(9, 2)):
            report = oscillation_diagnostic(alpha, 120)
            assert report.min_q == next_cutoff(alpha)


class TestAgainstIntervalTable:
    def test_walk_recovers_every_interval(self, cutoff_cache):
        census = enumerate_cutoffs(1, F(14, 3), cache=cutoff_cache)
        lowers = [row[0] for row in STABLE_INTERVALS] + [F(14, 3)]
        assert list(census.cutoffs) == lowers
