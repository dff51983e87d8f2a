"""Tests for psi weights, normal quantiles, and h-step forecasting."""

from __future__ import annotations

import numpy as np
import pytest

from measlescast import (
    ArimaFit,
    ArimaOrder,
    ArimaParams,
    DomainError,
    HorizonError,
    NotConvergedError,
    ResidualSeries,
    StabilityError,
    TimeSeries,
    fit,
    forecast,
    psi_weights,
    simulate,
    z_quantile,
)
from measlescast.arima import partials_to_coeffs

from oracles import normal_cdf, psi_by_geometric_expansion, z_by_bisection


def _params(phi=(), theta=(), c=0.0, sigma2=1.0):
    return ArimaParams(
        phi=np.asarray(phi, dtype=float),
        theta=np.asarray(theta, dtype=float),
        constant=c,
        sigma2=sigma2,
    )


class TestZQuantile:
    def test_median(self):
        assert z_quantile(0.5) == pytest.approx(0.0, abs=1e-12)

    def test_frozen_975(self):
        assert z_quantile(0.975) == pytest.approx(1.959963984540054, abs=1e-8)

    def test_against_bisection_oracle(self):
        for p in (0.001, 0.025, 0.1, 0.3, 0.6, 0.9, 0.975, 0.999):
            assert z_quantile(p) == pytest.approx(z_by_bisection(p), abs=1e-8)

    def test_cdf_round_trip(self):
        for p in np.linspace(0.0005, 0.9995, 101):
            assert abs(normal_cdf(z_quantile(float(p))) - p) < 1e-8

    def test_symmetry(self):
        for p in (0.01, 0.2, 0.45):
            assert z_quantile(p) == pytest.approx(-z_quantile(1 - p), abs=1e-10)

    def test_domain(self):
        for bad in (0.0, 1.0, -0.3, 1.7):
            with pytest.raises(DomainError):
                z_quantile(bad)


class TestPsiWeights:
    def test_ar1_geometric(self):
        psi = psi_weights(_params([0.5]), ArimaOrder(1, 0, 0), 6)
        assert np.allclose(psi, [1, 0.5, 0.25, 0.125, 0.0625, 0.03125], atol=1e-14)

    def test_arma11_hand_values(self):
        psi = psi_weights(_params([0.5], [0.2]), ArimaOrder(1, 0, 1), 3)
        assert psi == pytest.approx([1.0, 0.3, 0.15], abs=1e-14)

    def test_ma1_truncates(self):
        psi = psi_weights(_params(theta=[0.2]), ArimaOrder(0, 0, 1), 5)
        assert psi == pytest.approx([1.0, -0.2, 0.0, 0.0, 0.0], abs=1e-14)

    def test_leading_weight_is_one(self):
        psi = psi_weights(_params([0.3, 0.1], [0.2, -0.4]), ArimaOrder(2, 0, 2), 8)
        assert psi[0] == 1.0

    def test_matches_polynomial_expansion_oracle(self):
        rng = np.random.default_rng(61)
        for _ in range(40):
            p, q = rng.integers(0, 3), rng.integers(0, 3)
            phi = partials_to_coeffs(rng.uniform(-0.9, 0.9, size=p))
            theta = partials_to_coeffs(rng.uniform(-0.9, 0.9, size=q))
            psi = psi_weights(_params(phi, theta), ArimaOrder(p, 0, q), 20)
            expected = psi_by_geometric_expansion(list(phi), list(theta), 20)
            assert np.allclose(psi, expected, atol=1e-10)

    def test_unstable_params_rejected(self):
        with pytest.raises(StabilityError):
            psi_weights(_params([1.05]), ArimaOrder(1, 0, 0), 5)


class TestForecast:
    def test_mean_only_forecasts_constant(self):
        rng = np.random.default_rng(71)
        ts = TimeSeries(rng.normal(loc=12.0, size=50), 2000)
        f = fit(ts, ArimaOrder(0, 0, 0))
        fc = forecast(f, ts, 6, 0.95)
        assert np.all(fc.point == f.params.constant)
        half = fc.upper_unclamped - fc.point_unclamped
        expected = z_quantile(0.975) * np.sqrt(f.params.sigma2)
        assert np.allclose(half, expected, atol=1e-12)

    def test_random_walk_flat_with_sqrt_widths(self):
        vals = [12000.0, 15500.0, 14200.0, 17000.0, 16500.0, 18000.0]
        ts = TimeSeries(vals, 2014)
        f = fit(ts, ArimaOrder(0, 1, 0), include_constant=False)
        fc = forecast(f, ts, 5, 0.95)
        assert np.allclose(fc.point, 18000.0, atol=1e-9)
        half = fc.upper_unclamped - fc.point_unclamped
        ratio = half / np.sqrt(np.arange(1, 6, dtype=float))
        assert np.allclose(ratio, ratio[0], rtol=1e-9)
        assert fc.psi == pytest.approx([1.0, 0.0, 0.0, 0.0, 0.0], abs=1e-14)

    def test_labels_continue_history(self):
        ts = TimeSeries([3311.0, 1903.0, 2429.0, 17975.0, 24678.0], 2015)
        f = fit(ts, ArimaOrder(1, 0, 1))
        fc = forecast(f, ts, 5, 0.95)
        assert fc.horizon_labels == (2020, 2021, 2022, 2023, 2024)

    def test_intervals_symmetric_before_clamping(self):
        sim = simulate(_params([0.6], [0.3], c=2.0), ArimaOrder(1, 0, 1), 150, seed=5)
        f = fit(sim, ArimaOrder(1, 0, 1))
        fc = forecast(f, sim, 10, 0.9)
        up = fc.upper_unclamped - fc.point_unclamped
        down = fc.point_unclamped - fc.lower_unclamped
        assert np.allclose(up, down, atol=1e-10)

    def test_halfwidths_nondecreasing(self):
        for d in (0, 1):
            order = ArimaOrder(1, d, 1)
            data = simulate(_params([0.7], [0.2], c=1.0), order, 200, seed=15)
            f = fit(data, order)
            if not f.converged:
                continue
            fc = forecast(f, data, 12, 0.95)
            half = fc.upper_unclamped - fc.point_unclamped
            assert np.all(np.diff(half) >= -1e-12)

    def test_shift_equivariance_for_unit_differencing(self):
        base = simulate(_params([0.4], c=0.7), ArimaOrder(1, 1, 0), 120, seed=33)
        shifted = TimeSeries(base.values + 5000.0, base.start_label)
        f0 = fit(base, ArimaOrder(1, 1, 0))
        f1 = fit(shifted, ArimaOrder(1, 1, 0))
        fc0 = forecast(f0, base, 6, 0.95)
        fc1 = forecast(f1, shifted, 6, 0.95)
        assert np.allclose(
            fc1.point_unclamped, fc0.point_unclamped + 5000.0, rtol=1e-9, atol=1e-6
        )

    def test_clamping_at_zero(self):
        vals = [40.0, 30.0, 22.0, 13.0, 6.0, 2.0]
        ts = TimeSeries(vals, 2000)
        f = fit(ts, ArimaOrder(0, 1, 0), include_constant=False)
        fc = forecast(f, ts, 4, 0.95)
        assert fc.clamped
        assert np.all(fc.lower >= 0.0)
        assert np.any(fc.lower_unclamped < 0.0)
        assert np.all(fc.point == 2.0)

    def test_requires_convergence(self):
        ts = TimeSeries(np.arange(20.0), 2000)
        good = fit(ts, ArimaOrder(0, 0, 0))
        bad = ArimaFit(
            order=good.order,
            params=good.params,
            residuals=good.residuals,
            log_likelihood=good.log_likelihood,
            n_effective=good.n_effective,
            converged=False,
            iterations=2000,
            constant_included=True,
        )
        with pytest.raises(NotConvergedError):
            forecast(bad, ts, 3, 0.95)

    def test_horizon_guard(self):
        ts = TimeSeries(np.arange(20.0), 2000)
        f = fit(ts, ArimaOrder(0, 0, 0))
        with pytest.raises(HorizonError):
            forecast(f, ts, 0, 0.95)

    def test_level_guard(self):
        ts = TimeSeries(np.arange(20.0), 2000)
        f = fit(ts, ArimaOrder(0, 0, 0))
        for level in (0.0, 1.0, -0.5, 2.0):
            with pytest.raises(DomainError):
                forecast(f, ts, 3, level)

    def test_known_residuals_enter_ma_forecast(self):
        # One-step MA(1) forecast must use the last fitted innovation.
        sim = simulate(_params(theta=[0.4], c=0.0), ArimaOrder(0, 0, 1), 100, seed=21)
        f = fit(sim, ArimaOrder(0, 0, 1))
        fc = forecast(f, sim, 2, 0.95)
        last_innov = f.residuals.values[-1]
        expected_step1 = f.params.constant - f.params.theta[0] * last_innov
        assert fc.point_unclamped[0] == pytest.approx(expected_step1, abs=1e-12)
        # Two steps out the innovation is unknown: forecast reverts to c.
        assert fc.point_unclamped[1] == pytest.approx(f.params.constant, abs=1e-12)
