import math

import numpy as np
import pytest

from conftest import dyadic_fgn
from hurstlab.errors import DegenerateInputError, InsufficientDataError, InvalidArgumentError
from hurstlab.estimators import (
    EstimatorId,
    estimate,
    estimate_aggvar,
    estimate_periodogram,
    estimate_rs,
    estimate_wavelet,
    estimate_whittle,
    fgn_spectral_density,
    fit_weighted_least_squares,
    periodogram,
    whittle_objective,
)
from hurstlab.estimators.wavelet import DB3_HIGH, DB3_LOW, dwt_step
from hurstlab.synthesis import FgnSpec, generate, generate_batch

ALL_ESTIMATORS = [
    estimate_rs,
    estimate_aggvar,
    estimate_periodogram,
    estimate_whittle,
    estimate_wavelet,
]


class TestWeightedLeastSquares:
    def test_exact_line(self):
        pts = [(x, 2.0 * x + 1.0, 1.0) for x in (0.0, 1.0, 2.0, 5.0)]
        fit = fit_weighted_least_squares(pts)
        assert fit.slope == pytest.approx(2.0, abs=1e-14)
        assert fit.intercept == pytest.approx(1.0, abs=1e-14)

    def test_too_few_points(self):
        with pytest.raises(InsufficientDataError):
            fit_weighted_least_squares([(0, 0, 1), (1, 1, 1)])

    def test_three_collinear(self):
        fit = fit_weighted_least_squares([(0, 1, 1), (1, 3, 1), (2, 5, 1)])
        assert fit.slope == pytest.approx(2.0)
        assert fit.intercept == pytest.approx(1.0)

    def test_collinear_weight_invariant(self):
        pts = [(0.0, 0.0, 1.0), (1.0, -0.6, 10.0), (2.0, -1.2, 1.0)]
        assert fit_weighted_least_squares(pts).slope == pytest.approx(-0.6)

    def test_degenerate_abscissas(self):
        with pytest.raises(DegenerateInputError):
            fit_weighted_least_squares([(1, 0, 1), (1, 1, 1), (1, 2, 1)])

    def test_nonpositive_weights(self):
        with pytest.raises(InvalidArgumentError):
            fit_weighted_least_squares([(0, 0, 1), (1, 1, 0.0), (2, 2, 1)])


class TestSlopeMappings:
    """The slope-to-H maps are exact on collinear synthetic inputs."""

    def test_aggvar_map(self):
        # variances placed exactly on the scaling line for H = 0.8
        h = 0.8
        pts = [(math.log(m), (2 * h - 2) * math.log(m) + 0.3, 1.0) for m in (2, 4, 8, 16)]
        fit = fit_weighted_least_squares(pts)
        assert 1.0 + fit.slope / 2.0 == pytest.approx(h, abs=1e-12)

    def test_periodogram_map(self):
        # log I = -0.8 log lambda + c  ->  H = 0.9
        pts = [(math.log(l), -0.8 * math.log(l) + 1.0, 1.0) for l in (0.01, 0.02, 0.05, 0.1)]
        fit = fit_weighted_least_squares(pts)
        assert (1.0 - fit.slope) / 2.0 == pytest.approx(0.9, abs=1e-12)

    def test_wavelet_map(self):
        # y_j = 0.6 j + c with arbitrary positive weights  ->  H = 0.8
        pts = [(j, 0.6 * j - 2.0, w) for j, w in ((3, 8.0), (4, 4.0), (5, 2.0), (6, 1.0))]
        fit = fit_weighted_least_squares(pts)
        assert (fit.slope + 1.0) / 2.0 == pytest.approx(0.8, abs=1e-12)


class TestSpectralDensity:
    def test_white_noise_is_flat(self):
        lam = np.linspace(0.1, math.pi, 200)
        f = fgn_spectral_density(0.5, lam)
        assert np.max(f) / np.min(f) == pytest.approx(1.0, rel=0.02)

    def test_low_frequency_power_law(self):
        # f(lambda) * lambda^(2H-1) approaches a constant
        h = 0.9
        r1 = fgn_spectral_density(h, 0.01) * 0.01 ** (2 * h - 1)
        r2 = fgn_spectral_density(h, 0.005) * 0.005 ** (2 * h - 1)
        assert r1 / r2 == pytest.approx(1.0, rel=0.03)

    def test_alias_symmetry(self):
        for lam in (0.3, 1.0, 2.2):
            a = fgn_spectral_density(0.77, lam)
            b = fgn_spectral_density(0.77, 2 * math.pi - lam)
            assert a == pytest.approx(b, rel=1e-10)

    def test_domain_checks(self):
        with pytest.raises(InvalidArgumentError):
            fgn_spectral_density(0.7, 0.0)
        with pytest.raises(InvalidArgumentError):
            fgn_spectral_density(0.7, 2 * math.pi)
        with pytest.raises(InvalidArgumentError):
            fgn_spectral_density(1.1, 1.0)


class TestWhittle:
    def test_objective_self_consistency(self):
        # feed exact spectrum values as the "periodogram": Q is minimized
        # at the generating H within 0.01
        n = 2048
        lam = 2 * math.pi * np.arange(1, n // 2 + 1) / n
        i_vals = fgn_spectral_density(0.8, lam)
        grid = np.arange(0.01, 0.9901, 0.005)
        q = [whittle_objective(h, i_vals, n) for h in grid]
        assert grid[int(np.argmin(q))] == pytest.approx(0.8, abs=0.01)

    def test_short_series_accuracy(self, fgn_batch_cache):
        batch = fgn_batch_cache(0.8, 256, 100, 777)
        hs = [estimate_whittle(x).h_hat for x in batch]
        assert abs(np.mean(hs) - 0.8) <= 0.03

    def test_white_noise_accuracy(self):
        batch = generate_batch(FgnSpec(0.5, 1024, 1.0, 0), 100, 31)
        hs = [estimate_whittle(x).h_hat for x in batch]
        assert np.mean(hs) == pytest.approx(0.5, abs=0.03)

    def test_boundary_flag_on_nonstationary_input(self):
        path = np.cumsum(generate(FgnSpec(0.9, 1024, 1.0, 3)).samples)
        est = estimate_whittle(path)
        assert est.diagnostics["boundary"] is True
        assert est.h_hat == pytest.approx(0.99, abs=2e-3)

    def test_diagnostics_carry_objective(self):
        x = generate(FgnSpec(0.7, 512, 1.0, 1))
        est = estimate_whittle(x)
        # reported objective tracks the exact objective at the optimum
        exact = whittle_objective(est.h_hat, periodogram(x.samples / np.std(x.samples)), 512)
        assert est.diagnostics["objective"] == pytest.approx(exact, abs=1e-4)
        assert est.diagnostics["n_freqs"] == 256


class TestRS:
    def test_constant_series_errors(self):
        with pytest.raises(InsufficientDataError):
            estimate_rs(np.full(512, 3.25))

    def test_white_noise_band(self):
        batch = generate_batch(FgnSpec(0.5, 2**14, 1.0, 0), 100, 780)
        mean = np.mean([estimate_rs(x).h_hat for x in batch])
        assert 0.5 <= mean <= 0.62  # classical small-sample upward bias

    def test_persistent_bias(self):
        batch = generate_batch(FgnSpec(0.9, 2**16, 1.0, 0), 100, 781)
        hs = [estimate_rs(x).h_hat for x in batch]
        assert abs(hs[0] - 0.9) <= 0.15
        assert 0.9 - np.mean(hs) > 0.03  # biased regardless of length

    def test_clamps_on_trend(self):
        est = estimate_rs(np.arange(1024.0))
        assert est.h_hat == 0.99
        assert est.clamped

    def test_minimum_length(self):
        with pytest.raises(InsufficientDataError):
            estimate_rs(np.random.default_rng(0).standard_normal(32))

    def test_works_at_n64(self):
        est = estimate_rs(generate(FgnSpec(0.7, 64, 1.0, 5)))
        assert 0.0 < est.h_hat < 1.0


class TestAggVar:
    def test_white_noise(self):
        batch = generate_batch(FgnSpec(0.5, 2**14, 1.0, 0), 100, 12)
        mean = np.mean([estimate_aggvar(x).h_hat for x in batch])
        assert mean == pytest.approx(0.5, abs=0.05)

    def test_constant_series_errors(self):
        with pytest.raises(InsufficientDataError):
            estimate_aggvar(np.full(512, 1.0))

    def test_clamps_on_trend(self):
        est = estimate_aggvar(np.arange(1024.0))
        assert est.h_hat == 0.99
        assert est.clamped


class TestPeriodogramEstimator:
    def test_white_noise(self):
        batch = generate_batch(FgnSpec(0.5, 4096, 1.0, 0), 100, 13)
        mean = np.mean([estimate_periodogram(x).h_hat for x in batch])
        assert mean == pytest.approx(0.5, abs=0.05)

    def test_short_series_spread(self):
        batch = generate_batch(FgnSpec(0.9, 256, 1.0, 0), 100, 14)
        hs = [estimate_periodogram(x).h_hat for x in batch]
        assert np.std(hs, ddof=1) > 0.05

    def test_constant_series_errors(self):
        with pytest.raises(InsufficientDataError):
            estimate_periodogram(np.full(512, 2.0))


class TestWaveletEstimator:
    def test_filters_orthonormal(self):
        assert DB3_LOW.sum() == pytest.approx(math.sqrt(2), abs=1e-11)
        assert (DB3_LOW**2).sum() == pytest.approx(1.0, abs=1e-11)
        for p in range(3):  # three vanishing moments
            assert (np.arange(6.0) ** p * DB3_HIGH).sum() == pytest.approx(0.0, abs=1e-10)

    def test_step_preserves_energy(self):
        s = np.random.default_rng(3).standard_normal(512)
        a, d = dwt_step(s)
        assert np.dot(a, a) + np.dot(d, d) == pytest.approx(np.dot(s, s), rel=1e-9)

    def test_medium_series_accuracy(self):
        batch = generate_batch(FgnSpec(0.8, 8192, 1.0, 0), 100, 778)
        hs = [estimate_wavelet(x).h_hat for x in batch]
        assert abs(np.mean(hs) - 0.8) <= 0.03

    def test_short_series_worse_than_whittle(self, fgn_batch_cache):
        batch = fgn_batch_cache(0.8, 256, 100, 777)
        wav = np.array([estimate_wavelet(x).h_hat for x in batch])
        whi = np.array([estimate_whittle(x).h_hat for x in batch])
        assert wav.std(ddof=1) > whi.std(ddof=1)
        assert abs(np.mean(wav) - 0.8) > abs(np.mean(whi) - 0.8)

    def test_non_power_of_two_truncates(self):
        x = generate(FgnSpec(0.7, 1500, 1.0, 2)).samples
        est_trunc = estimate_wavelet(x)
        est_direct = estimate_wavelet(x[:1024])
        assert est_trunc.h_hat == est_direct.h_hat

    def test_adaptive_octaves_short_series(self):
        for n in (64, 128, 256):
            est = estimate_wavelet(generate(FgnSpec(0.8, n, 1.0, 4)))
            assert 0.0 < est.h_hat < 1.0

    def test_constant_series_errors(self):
        with pytest.raises(InsufficientDataError):
            estimate_wavelet(np.full(512, 7.0))


class TestUniformInterface:
    def test_dispatch_identity(self):
        x = generate(FgnSpec(0.8, 1024, 1.0, 55))
        assert estimate(EstimatorId.WHITTLE, x).h_hat == estimate_whittle(x).h_hat
        assert estimate("rs", x).h_hat == estimate_rs(x).h_hat

    def test_dispatch_rejects_unknown(self):
        with pytest.raises(InvalidArgumentError):
            estimate("magic", np.ones(128))

    def test_dispatch_error_surface(self):
        with pytest.raises(InsufficientDataError):
            estimate(EstimatorId.RS, np.full(512, 1.0))

    @pytest.mark.parametrize("fn", ALL_ESTIMATORS)
    def test_purity(self, fn):
        x = generate(FgnSpec(0.75, 512, 1.0, 8))
        assert fn(x).h_hat == fn(x).h_hat

    @pytest.mark.parametrize("fn", ALL_ESTIMATORS)
    def test_minimum_length_enforced(self, fn):
        with pytest.raises(InsufficientDataError):
            fn(np.random.default_rng(1).standard_normal(63))


class TestInvariances:
    """Estimates ignore location exactly and scale to within 1e-9.

    Inputs live on a dyadic grid so the shift/scale arithmetic is exact in
    IEEE terms; shifts are integers and scales are powers of two.
    """

    @pytest.mark.parametrize("fn", ALL_ESTIMATORS)
    def test_shift_invariance_exact(self, fn):
        x = dyadic_fgn(0.8, 1024, 21)
        for shift in (1.0, -3.0, 64.0):
            assert fn(x + shift).h_hat == fn(x).h_hat

    @pytest.mark.parametrize("fn", ALL_ESTIMATORS)
    def test_scale_invariance(self, fn):
        x = dyadic_fgn(0.7, 1024, 22)
        base = fn(x).h_hat
        for scale in (0.5, 2.0, 1024.0):
            assert fn(x * scale).h_hat == pytest.approx(base, abs=1e-9)
