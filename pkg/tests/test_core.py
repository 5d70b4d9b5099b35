import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hurstlab.core import (
    TimeSeries,
    aggregate,
    exact_autocorrelation,
    sample_autocorrelation,
    summary_stats,
    validate_hurst,
)
from hurstlab.errors import DegenerateInputError, InsufficientDataError, InvalidArgumentError

# 0.5 * (2**1.8 - 2), evaluated at 40 digits
RHO_H09_LAG1 = 0.7411011265922483


class TestTimeSeries:
    def test_rejects_empty(self):
        with pytest.raises(InvalidArgumentError):
            TimeSeries(np.array([]))

    def test_rejects_nan_and_inf(self):
        with pytest.raises(InvalidArgumentError):
            TimeSeries(np.array([1.0, np.nan]))
        with pytest.raises(InvalidArgumentError):
            TimeSeries(np.array([1.0, np.inf]))

    def test_immutable(self):
        ts = TimeSeries(np.array([1.0, 2.0]))
        with pytest.raises(ValueError):
            ts.samples[0] = 5.0

    def test_hurst_validation(self):
        assert validate_hurst(0.5) == 0.5
        for bad in (0.0, 1.0, -0.2, 1.7, float("nan")):
            with pytest.raises(InvalidArgumentError):
                validate_hurst(bad)


class TestAggregate:
    def test_block_means(self):
        assert aggregate([1, 2, 3, 4], 2).tolist() == [1.5, 3.5]

    def test_constant(self):
        assert aggregate([5, 5, 5, 5], 4).tolist() == [5.0]

    def test_remainder_dropped(self):
        assert aggregate([1, 2, 3, 4, 5], 2).tolist() == [1.5, 3.5]

    def test_block_size_errors(self):
        with pytest.raises(InvalidArgumentError):
            aggregate([1, 2, 3], 4)
        with pytest.raises(InvalidArgumentError):
            aggregate([1, 2, 3], 0)

    @given(
        st.integers(min_value=1, max_value=4),
        st.integers(min_value=1, max_value=4),
        st.integers(min_value=0, max_value=200),
    )
    @settings(max_examples=40, deadline=None)
    def test_composition(self, a, b, seed):
        # aggregate(aggregate(x, a), b) == aggregate(x, a*b) when a*b divides N
        n = a * b * 8
        x = np.random.default_rng(seed).standard_normal(n)
        lhs = aggregate(aggregate(x, a), b)
        rhs = aggregate(x, a * b)
        np.testing.assert_allclose(lhs, rhs, rtol=1e-12, atol=1e-12)


class TestExactAutocorrelation:
    def test_lag_zero_is_one(self):
        for h in (0.1, 0.5, 0.93):
            assert exact_autocorrelation(h, 0) == 1.0

    def test_h_half_vanishes_exactly(self):
        for k in (1, 2, 3, 10, 1000):
            assert exact_autocorrelation(0.5, k) == 0.0

    def test_frozen_value(self):
        assert exact_autocorrelation(0.9, 1) == pytest.approx(RHO_H09_LAG1, abs=1e-15)

    def test_positive_and_decreasing_for_persistent(self):
        for h in (0.6, 0.75, 0.9, 0.99):
            vals = [exact_autocorrelation(h, k) for k in range(1, 101)]
            assert all(v > 0 for v in vals)
            assert all(a > b for a, b in zip(vals, vals[1:]))

    def test_lrd_tail_constant(self):
        # rho(k) * k^(2-2H) -> H(2H-1); compare k=1e3 and k=1e4 within 5%
        for h in (0.3, 0.6, 0.7, 0.8, 0.9, 0.99):
            limit = h * (2 * h - 1)
            for k in (1000, 10000):
                ratio = exact_autocorrelation(h, k) * k ** (2 - 2 * h)
                assert ratio == pytest.approx(limit, rel=0.05)

    def test_negative_lag_rejected(self):
        with pytest.raises(InvalidArgumentError):
            exact_autocorrelation(0.7, -1)


class TestSampleAutocorrelation:
    def test_lag_zero(self):
        assert sample_autocorrelation([1.0, 2.0, 0.5], 0) == 1.0

    def test_alternating_series(self):
        x = [1.0, -1.0] * 4
        # mean 0, denom 8, numerator 7 * (-1)
        assert sample_autocorrelation(x, 1) == pytest.approx(-0.875)

    def test_constant_is_degenerate(self):
        with pytest.raises(DegenerateInputError):
            sample_autocorrelation([3.0, 3.0, 3.0], 1)

    def test_lag_bounds(self):
        with pytest.raises(InvalidArgumentError):
            sample_autocorrelation([1.0, 2.0], 2)

    def test_known_mean_variant(self):
        x = [1.0, -1.0] * 4
        assert sample_autocorrelation(x, 1, mean=0.0) == pytest.approx(-0.875)


class TestSummaryStats:
    def test_constant(self):
        assert summary_stats([1, 1, 1]) == (1.0, 0.0)

    def test_two_points(self):
        mean, sd = summary_stats([0, 2])
        assert mean == 1.0
        assert sd == pytest.approx(math.sqrt(2))

    def test_three_points(self):
        mean, sd = summary_stats([0.8, 0.9, 1.0])
        assert mean == pytest.approx(0.9)
        assert sd == pytest.approx(0.1)

    def test_too_few(self):
        with pytest.raises(InsufficientDataError):
            summary_stats([1.0])

    @given(st.lists(st.floats(-1e6, 1e6), min_size=2, max_size=50), st.randoms())
    @settings(max_examples=40, deadline=None)
    def test_permutation_invariant(self, values, rng):
        mean1, sd1 = summary_stats(values)
        shuffled = list(values)
        rng.shuffle(shuffled)
        mean2, sd2 = summary_stats(shuffled)
        assert mean1 == pytest.approx(mean2, rel=1e-9, abs=1e-9)
        assert sd1 == pytest.approx(sd2, rel=1e-9, abs=1e-9)
