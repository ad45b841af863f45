"""Acceptance suite: one test per release criterion, with stated tolerances.

Each test prints a PASS line on success (run with ``pytest -s`` to see them;
``pytest -v`` shows the per-criterion verdicts either way).
"""

import json
import math
import time

import numpy as np

from senserate import cli
from senserate.cdf import (
    SamplePairs,
    independence_check,
    ks_pvalue,
    ks_statistic,
    quantile_grid,
    run_property_audit,
)
from senserate.normal import erfc, phi, q_function, q_reference
from senserate.samplers import RvPairSpec, sample_many
from senserate.senseamp import SenseAmpParams, ser_analytical, ser_monte_carlo, ser_probabilistic

Q1 = 0.15865525393145705  # frozen: fixed-step quadrature oracle at x=1
WORKED_SER = 0.004773716978113112  # frozen: 0.5 * (Q(3) + Q(2.4)) by the oracle

KS_ALPHA = 1e-3


def _report(criterion: str, detail: str) -> None:
    print(f"PASS {criterion}: {detail}")


def _parameter_grid():
    grid = []
    for v_over_sigma in (0.5, 1.0, 2.0, 3.0, 5.0):
        for delta in np.linspace(0.0, 1.0, 11):
            for chi in np.linspace(0.0, 1.0, 11):
                if 1.0 - 0.5 * delta - chi >= -1.0:
                    grid.append(
                        SenseAmpParams(
                            v_low=v_over_sigma,
                            v_high=v_over_sigma,
                            noise_sigma=1.0,
                            delta=round(float(delta), 10),
                            chi=round(float(chi), 10),
                        )
                    )
    return grid


def test_criterion_1_closed_form_equivalence():
    grid = _parameter_grid()
    assert len(grid) >= 200
    start = time.perf_counter()
    worst = 0.0
    for params in grid:
        gap = abs(ser_analytical(params) - ser_probabilistic(params))
        worst = max(worst, gap)
        assert gap <= 1e-12, (params, gap)
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0, f"equivalence grid took {elapsed:.2f}s"
    _report(
        "criterion 1 (closed-form equivalence)",
        f"{len(grid)} grid points, worst gap {worst:.2e}, {elapsed:.2f}s",
    )


def test_criterion_2_monte_carlo_validates_probability_model():
    params = SenseAmpParams(v_low=1.0, v_high=1.0, noise_sigma=1.0, delta=0.0, chi=0.0)
    start = time.perf_counter()
    estimate, stderr = ser_monte_carlo(params, 1_000_000, 42)
    elapsed = time.perf_counter() - start
    gap = abs(estimate - Q1)
    assert gap <= 4.0 * stderr, (estimate, stderr)
    assert elapsed < 30.0, f"1e6-trial run took {elapsed:.2f}s"
    _report(
        "criterion 2 (Monte Carlo validation)",
        f"estimate {estimate:.6f} vs Q(1) {Q1:.6f}, gap {gap:.2e} <= 4*stderr"
        f" {4 * stderr:.2e}, {elapsed:.2f}s",
    )


def test_criterion_3_cdf_property_suite_exact():
    start = time.perf_counter()
    exact_names = {
        "bounds",
        "monotonicity",
        "limit-at-upper-extreme",
        "limit-below-minimum",
        "interval-identity",
        "event-containment",
    }
    for spec in (RvPairSpec.standard_uniform(), RvPairSpec.gaussian(0.0, 1.0)):
        samples = sample_many(spec, 100_000, 42)
        checks = run_property_audit(samples, rng_seed=42, n_rectangles=1000)
        for check in checks:
            if check.name in exact_names:
                assert check.passed, (spec.kind, check)
                assert check.max_deviation == 0.0, (spec.kind, check)
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0, f"property suite took {elapsed:.2f}s"
    _report(
        "criterion 3 (CDF property suite)",
        f"all count-level properties exact on both distributions,"
        f" 1000 rectangles each, {elapsed:.2f}s",
    )


def test_criterion_4_independence_and_counterexample():
    samples = sample_many(RvPairSpec.standard_uniform(), 100_000, 42)
    report = independence_check(samples, quantile_grid(samples, 5), tolerance=0.01)
    assert report.passed, report

    diagonal = SamplePairs(
        x1=np.array([0.0, 1.0, 2.0, 3.0]), x2=np.array([0.0, 1.0, 2.0, 3.0])
    )
    counter = independence_check(diagonal, [(1.0, 1.0)], tolerance=0.05)
    assert counter.max_abs_deviation == 0.25
    assert not counter.passed
    _report(
        "criterion 4 (independence)",
        f"uniform-pair deviation {report.max_abs_deviation:.4f} <= 0.01;"
        f" comonotone counterexample deviation 0.25 fails as required",
    )


def test_criterion_5_box_muller_distributional_laws():
    start = time.perf_counter()
    pairs = sample_many(RvPairSpec.gaussian(0.0, 1.0), 100_000, 42)
    g1, g2 = pairs.x1, pairs.x2

    radius = (g1 * g1 + g2 * g2) / 2.0
    d_radius = ks_statistic(radius, lambda x: -np.expm1(-x))
    p_radius = ks_pvalue(d_radius, radius.size)
    assert p_radius > KS_ALPHA, (d_radius, p_radius)

    angle = np.mod(np.arctan2(g2, g1), 2.0 * math.pi)
    d_angle = ks_statistic(angle, lambda x: x / (2.0 * math.pi))
    p_angle = ks_pvalue(d_angle, angle.size)
    assert p_angle > KS_ALPHA, (d_angle, p_angle)

    p_normal = []
    for component in (g1, g2):
        d = ks_statistic(component, lambda x: 1.0 - q_function(x))
        p = ks_pvalue(d, component.size)
        assert p > KS_ALPHA, (d, p)
        p_normal.append(p)

    corr = float(np.corrcoef(g1, g2)[0, 1])
    assert abs(corr) <= 0.0095, corr

    elapsed = time.perf_counter() - start
    assert elapsed < 10.0, f"distributional checks took {elapsed:.2f}s"
    _report(
        "criterion 5 (Box-Muller laws)",
        f"KS p-values: radius {p_radius:.3f}, angle {p_angle:.3f},"
        f" marginals {p_normal[0]:.3f}/{p_normal[1]:.3f}; corr {corr:+.4f};"
        f" {elapsed:.2f}s",
    )


def test_criterion_6_normal_kernel_accuracy():
    xs = np.linspace(-8.0, 8.0, 161)
    worst_sym = max(abs(q_function(float(x)) + q_function(float(-x)) - 1.0) for x in xs)
    assert worst_sym <= 1e-12

    worst_erfc = max(
        abs(float(erfc(float(x))) - 2.0 * q_function(math.sqrt(2.0) * float(x)))
        for x in xs
    )
    assert worst_erfc <= 1e-12

    assert abs(q_function(3.0) - q_reference(3.0)) <= 1e-9
    assert abs(q_function(3.0) - 1.3498980e-3) <= 1e-9

    h = 1e-5
    worst_diff = max(
        abs((q_function(float(x - h)) - q_function(float(x + h))) / (2.0 * h) - phi(float(x)))
        for x in np.linspace(-4.0, 4.0, 81)
    )
    assert worst_diff <= 1e-6
    _report(
        "criterion 6 (normal kernel)",
        f"symmetry {worst_sym:.2e}, erfc consistency {worst_erfc:.2e},"
        f" Q(3) matches oracle, derivative gap {worst_diff:.2e}",
    )


def test_criterion_7_worked_ser_number(capsys):
    params = SenseAmpParams(v_low=3.0, v_high=3.0, noise_sigma=1.0, delta=0.2, chi=0.1)
    value = ser_analytical(params)
    assert abs(value - WORKED_SER) <= 1e-7

    argv = [
        "ser", "--v-high", "3", "--v-low", "3", "--sigma", "1",
        "--delta", "0.2", "--chi", "0.1", "--n", "10000", "--seed", "42",
    ]
    assert cli.main(argv) == 0
    first = capsys.readouterr().out
    assert cli.main(argv) == 0
    second = capsys.readouterr().out
    assert first == second
    assert json.loads(first)["analytical"] == value
    with capsys.disabled():
        _report(
            "criterion 7 (worked SER number)",
            f"analytical {value:.10f} within 1e-7 of {WORKED_SER:.10f};"
            f" CLI output bit-identical across runs",
        )


def test_criterion_8_end_to_end_determinism(capsys):
    commands = [
        ["sample", "--dist", "gaussian-pair", "--mu", "0", "--sigma", "1",
         "--n", "2000", "--seed", "42"],
        ["cdf-props", "--dist", "std-uniform-pair", "--n", "20000", "--seed", "7"],
        ["ser", "--v-high", "3", "--v-low", "3", "--sigma", "1", "--delta", "0",
         "--chi", "0", "--n", "20000", "--seed", "42"],
        ["sweep", "--v-high", "3", "--v-low", "3", "--sigma", "1", "--delta", "0",
         "--chi", "0", "--axis", "snr", "--values", "1,2,3", "--n", "2000",
         "--seed", "42"],
    ]
    for argv in commands:
        code_a = cli.main(argv)
        out_a = capsys.readouterr().out
        code_b = cli.main(argv)
        out_b = capsys.readouterr().out
        assert code_a == code_b == 0, argv
        assert out_a == out_b, argv

    params = SenseAmpParams(v_low=1.0, v_high=1.0, noise_sigma=1.0, delta=0.2, chi=0.1)
    sequential = ser_monte_carlo(params, 200_000, 42)
    partitioned = ser_monte_carlo(params, 200_000, 42, chunk_size=4999)
    assert sequential == partitioned
    with capsys.disabled():
        _report(
            "criterion 8 (determinism)",
            "all four CLI commands byte-identical across runs;"
            " partitioned Monte Carlo equals the sequential result bit-for-bit",
        )
