"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the per-criterion
lines; tolerances and runtime budgets are pinned in the assertions.
"""

from __future__ import annotations

import functools
import json
import shlex
import time

import numpy as np
import pytest

from measlescast import (
    ArimaOrder,
    ArimaParams,
    Dataset,
    SurveillanceRecord,
    TimeSeries,
    anchors_of,
    chi_square_sf,
    check_roots,
    difference,
    fit,
    forecast,
    integrate,
    ljung_box,
    parse_csv,
    psi_weights,
    sample_acf,
    sample_pacf,
    serialize_csv,
    simulate,
)
from measlescast.arima import ResidualSeries, partials_to_coeffs
from measlescast.cli import main
from measlescast.rng import SplitMix64

from oracles import (
    acf_direct,
    chi2_sf_quadrature,
    pacf_via_toeplitz_solve,
    psi_by_geometric_expansion,
)

from conftest import DEMO_CSV


def criterion(number: int, description: str, budget_seconds: float):
    def decorate(func):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            start = time.time()
            try:
                func(*args, **kwargs)
            except BaseException:
                print(f"ACCEPTANCE {number}: FAIL — {description}")
                raise
            elapsed = time.time() - start
            print(
                f"ACCEPTANCE {number}: PASS — {description} ({elapsed:.1f}s)"
            )
            assert elapsed < budget_seconds, (
                f"criterion {number} exceeded its {budget_seconds}s budget"
            )
        return wrapper
    return decorate


def _params(phi=(), theta=(), c=0.0, sigma2=1.0):
    return ArimaParams(
        phi=np.asarray(phi, dtype=float),
        theta=np.asarray(theta, dtype=float),
        constant=c,
        sigma2=sigma2,
    )


@criterion(1, "ACF/PACF oracle equivalence on 50 seeded series", 5.0)
def test_criterion_1_correlation_oracles():
    sizes = [20, 100, 500]
    rng_master = np.random.default_rng(8675309)
    for i in range(50):
        n = sizes[i % 3]
        vals = rng_master.normal(size=n)
        ts = TimeSeries(vals, 2000)

        max_lag = min(10, n - 1)
        acf = sample_acf(ts, max_lag).coefficients
        assert np.allclose(acf, acf_direct(vals, max_lag), atol=1e-10)

        pacf = sample_pacf(ts, 5).coefficients
        assert np.allclose(pacf, pacf_via_toeplitz_solve(vals, 5), atol=1e-8)


@criterion(2, "ARMA(1,1) estimator recovery over 20 fixed seeds", 30.0)
def test_criterion_2_estimator_recovery():
    true = _params([0.7], [0.3], c=0.0, sigma2=1.0)
    order = ArimaOrder(1, 0, 1)
    phi_errors, theta_errors = [], []
    for seed in range(1, 21):
        sim = simulate(true, order, 500, seed=seed)
        f = fit(sim, order)
        assert f.converged, f"seed {seed} failed to converge"
        assert check_roots(f.params.phi) and check_roots(f.params.theta)
        phi_errors.append(abs(f.params.phi[0] - 0.7))
        theta_errors.append(abs(f.params.theta[0] - 0.3))
    assert np.mean(phi_errors) < 0.08, f"mean phi error {np.mean(phi_errors):.4f}"
    assert np.mean(theta_errors) < 0.12, f"mean theta error {np.mean(theta_errors):.4f}"


@criterion(3, "Ljung-Box test size and chi-square tail accuracy", 60.0)
def test_criterion_3_ljung_box_size():
    rejections = 0
    for seed in range(1, 1001):
        values = SplitMix64(seed).normals(200)
        rep = ljung_box(
            ResidualSeries(values=values, conditioning_dropped=0), 10, 0
        )
        if rep.p_value < 0.05:
            rejections += 1
    rate = rejections / 1000.0
    assert 0.03 <= rate <= 0.07, f"rejection rate {rate:.4f}"

    for k in range(1, 11):
        for x in np.linspace(0.1, 30.0, 50):
            assert abs(
                chi_square_sf(float(x), k) - chi2_sf_quadrature(float(x), k)
            ) < 1e-10


@criterion(4, "95% one-step interval coverage over 500 replicates", 60.0)
def test_criterion_4_interval_coverage():
    true = _params([0.6], [0.4], c=5.0, sigma2=4.0)
    order = ArimaOrder(1, 0, 1)
    hits = 0
    for seed in range(1, 501):
        sim = simulate(true, order, 201, seed=seed)
        train = TimeSeries(sim.values[:200], sim.start_label)
        future = float(sim.values[200])
        f = fit(train, order)
        assert f.converged
        fc = forecast(f, train, 1, 0.95)
        if fc.lower[0] <= future <= fc.upper[0]:
            hits += 1
    coverage = hits / 500.0
    assert 0.90 <= coverage <= 0.985, f"coverage {coverage:.4f}"


@criterion(5, "round-trip identities and byte-identical CLI reruns", 60.0)
def test_criterion_5_round_trips(tmp_path):
    # Difference/integrate: exact for integers, 1e-9 relative for reals.
    rng = np.random.default_rng(424242)
    for d in (0, 1, 2):
        for _ in range(10):
            ints = rng.integers(0, 40000, size=rng.integers(d + 2, 50)).astype(float)
            ts = TimeSeries(ints, 2000)
            if d == 0:
                back = difference(ts, 0)
            else:
                back = integrate(difference(ts, d), anchors_of(ts, d))
            assert back.values.tolist() == ints.tolist()

            reals = rng.normal(scale=2e4, size=rng.integers(d + 2, 50))
            ts_r = TimeSeries(reals, 2000)
            if d == 0:
                back_r = difference(ts_r, 0)
            else:
                back_r = integrate(difference(ts_r, d), anchors_of(ts_r, d))
            scale = max(1.0, float(np.max(np.abs(reals))))
            assert np.allclose(back_r.values, reals, rtol=1e-9, atol=1e-9 * scale)

    # parse -> export -> parse identity on 20 random datasets.
    for i in range(20):
        ds_rng = np.random.default_rng(900 + i)
        records = []
        start = int(ds_rng.integers(1950, 2080))
        for r in range(int(ds_rng.integers(1, 18))):
            for y in range(int(ds_rng.integers(1, 6))):
                cases = int(ds_rng.integers(0, 60000))
                records.append(
                    SurveillanceRecord(
                        region=f"Region {r}",
                        year=start + y,
                        cases=cases,
                        deaths=int(ds_rng.integers(0, cases + 1)),
                    )
                )
        ds = Dataset(records=tuple(records))
        assert parse_csv(serialize_csv(ds)).records == ds.records

    # Byte-identical CLI outputs across two runs of every subcommand.
    demo = str(DEMO_CSV)
    runs = {
        "acf": ["acf", "--input", demo, "--out-json",
                str(tmp_path / "acf.json")],
        "forecast": ["forecast", "--input", demo,
                     "--out-json", str(tmp_path / "fc.json"),
                     "--out-svg", str(tmp_path / "fc.svg")],
        "select": ["select", "--input", demo, "--max-order", "1,1,1",
                   "--out-json", str(tmp_path / "sel.json")],
        "simulate": ["simulate", "--phi", "0.5", "--constant", "9000",
                     "--sigma2", "10000", "--n", "30", "--seed", "5",
                     "--out", str(tmp_path / "sim.csv")],
        "export": ["export", "--input", demo,
                   "--out", str(tmp_path / "exp.csv")],
    }
    outputs = {
        "acf": ["acf.json"],
        "forecast": ["fc.json", "fc.svg"],
        "select": ["sel.json"],
        "simulate": ["sim.csv"],
        "export": ["exp.csv"],
    }
    for name, args in runs.items():
        assert main(list(args)) == 0, f"{name} failed on first run"
        first = {f: (tmp_path / f).read_bytes() for f in outputs[name]}
        assert main(list(args)) == 0, f"{name} failed on second run"
        for f, blob in first.items():
            assert (tmp_path / f).read_bytes() == blob, f"{name}: {f} not reproducible"


@criterion(6, "demo dataset trend shape and forecast floor", 1.0)
def test_criterion_6_demo_qualitative_claims(tmp_path):
    out = tmp_path / "report.json"
    code = main(["forecast", "--input", str(DEMO_CSV), "--order", "1,0,1",
                 "--horizon", "5", "--out-json", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())

    signs = [t["sign"] for t in doc["trend"]]
    assert signs[0] == "decrease", "2015 -> 2016 should decrease"
    assert signs[1:] == ["increase", "increase", "increase"], (
        "2016 -> 2019 should rise"
    )

    points = doc["forecast"]["point"]
    assert len(points) == 5
    assert all(p > 15000.0 for p in points), f"forecasts {points}"


@criterion(7, "closed-form fits, random-walk widths, psi long division", 30.0)
def test_criterion_7_closed_forms():
    # Mean-only model recovers the closed-form MLE.
    rng = np.random.default_rng(1234)
    vals = rng.normal(loc=250.0, scale=40.0, size=60)
    f0 = fit(TimeSeries(vals, 2000), ArimaOrder(0, 0, 0))
    assert abs(f0.params.constant - vals.mean()) < 1e-8
    assert abs(f0.params.sigma2 - vals.var()) < 1e-8

    # Random walk: flat forecast at the last observation, sqrt(j) widths.
    walk_vals = np.cumsum(rng.normal(scale=300.0, size=40)) + 18000.0
    walk_vals[-1] = 18000.0
    walk = TimeSeries(walk_vals, 1980)
    f1 = fit(walk, ArimaOrder(0, 1, 0), include_constant=False)
    fc = forecast(f1, walk, 8, 0.95)
    assert np.allclose(fc.point_unclamped, 18000.0, rtol=1e-12)
    half = fc.upper_unclamped - fc.point_unclamped
    expected = half[0] * np.sqrt(np.arange(1, 9, dtype=float))
    assert np.allclose(half, expected, rtol=1e-9)

    # Psi weights match the transfer-polynomial expansion.
    coeff_rng = np.random.default_rng(77)
    for p in range(3):
        for q in range(3):
            for _ in range(5):
                phi = partials_to_coeffs(coeff_rng.uniform(-0.95, 0.95, size=p))
                theta = partials_to_coeffs(coeff_rng.uniform(-0.95, 0.95, size=q))
                psi = psi_weights(_params(phi, theta), ArimaOrder(p, 0, q), 20)
                oracle = psi_by_geometric_expansion(list(phi), list(theta), 20)
                assert np.allclose(psi, oracle, atol=1e-10)
