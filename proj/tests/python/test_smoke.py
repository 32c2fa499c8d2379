"""Smoke tests for the semrate Python module."""

import math

import pytest

semrate = pytest.importorskip("semrate")


def test_entropy_and_kl():
    assert semrate.shannon_entropy([0.25, 0.25, 0.25, 0.25]) == pytest.approx(2.0)
    assert semrate.kl_divergence([1.0, 0.0], [0.5, 0.5]) == pytest.approx(1.0)


def test_binary_symmetric_closed_form():
    grid = semrate.Grid([0.0, 1.0])
    prior = semrate.Distribution(grid, [0.5, 0.5])
    d = semrate.DistortionMatrix([[0.0, 1.0], [1.0, 0.0]])
    kernel = semrate.build_rd_kernel(d, math.log(1.0 / 9.0))
    result = semrate.mmi_iterate(prior, kernel)
    assert result.converged
    assert result.constraint == pytest.approx(0.1, abs=1e-9)
    assert result.rate_bits == pytest.approx(0.531004, abs=1e-4)
    rate, constraint = semrate.rate_point_parametric(prior, kernel, result)
    assert rate == pytest.approx(result.rate_bits, abs=1e-9)
    assert constraint == pytest.approx(0.1, abs=1e-9)


def test_semantic_bayes_roundtrip():
    grid = semrate.Grid([0.0, 1.0, 2.0])
    prior = semrate.Distribution(grid, [0.5, 0.3, 0.2])
    truth = [1.0, 0.5, 0.1]
    t_theta, posterior = semrate.semantic_bayes(prior, truth)
    ratio = max(q / p for q, p in zip(posterior, prior.p))
    rec_truth, rec_theta = semrate.truth_from_likelihood(prior, posterior, ratio)
    _, back = semrate.semantic_bayes(prior, rec_truth)
    assert back == pytest.approx(posterior, abs=1e-12)
    assert rec_theta == pytest.approx(t_theta, rel=1e-12)


def test_example1_solves():
    scen = semrate.build_example1()
    kernel = semrate.build_rtheta_kernel(scen.semchan, 1.0)
    result = semrate.mmi_iterate(scen.prior, kernel, tol=1e-8, max_iter=50000)
    assert result.converged
    assert result.rate_bits == pytest.approx(0.8945, abs=2e-3)
    assert result.marginal[3] < 1e-3
    rates = [t[0] for t in result.trace]
    assert all(b <= a + 1e-12 for a, b in zip(rates, rates[1:]))


def test_truth_constrained_maxent_matches_step():
    grid = semrate.Grid([0.0, 1.0])
    sc = semrate.SemanticChannel(grid, ["a", "b"], [[1.0, 0.5], [0.25, 1.0]])
    ch = semrate.truth_constrained_maxent(sc, 1.0)
    assert ch.rows[0][0] == pytest.approx(2.0 / 3.0)
    prior = semrate.Distribution(grid, [0.5, 0.5])
    decomp = semrate.entropy_decomposition(prior, ch, sc, 1.0)
    assert decomp["residual"] < 1e-9


def test_local_equilibrium_identity():
    report = semrate.local_equilibrium_identity(
        energies=[0.0, 1.0, 2.0],
        degeneracies=[1.0, 2.0, 1.0],
        temperatures=[1.0, 2.0],
        weights=[0.4, 0.6],
    )
    assert report["residual"] < 1e-9


def test_learned_truth_exact_columns():
    grid = semrate.Grid([0.0, 1.0])
    sc = semrate.learn_truth_empirical([[0.4, 0.1], [0.1, 0.4]], grid, ["a", "b"])
    assert sc.truth == [[1.0, 0.25], [0.25, 1.0]]


def test_reproduce_example2_passes():
    report = semrate.reproduce("example2", "rtheta", s=1.0)
    assert report["all_passed"]
    assert report["converged"]


def test_truth_specs_and_fit():
    grid = semrate.Grid.regular(0, 100, 1)
    rise = semrate.logistic_rise(18.0, 1.5)
    fall = semrate.logistic_fall(18.0, 1.5)
    values = semrate.eval_spec(rise, grid)
    assert values[18] == 0.5
    complements = semrate.eval_spec(fall, grid)
    assert all(a + b == 1.0 for a, b in zip(values, complements))

    prior = semrate.Distribution(grid, [math.exp(-x * x / (2 * 37.0**2)) for x in grid.points])
    _, sampling = semrate.semantic_bayes(prior, values)
    fit = semrate.learn_truth_parametric(
        sampling, prior, "logistic_rise", [(0.0, 62.0), (0.5, 3.6)]
    )
    assert abs(fit["spec"].center - 18.0) <= 1.0


def test_sweep_and_target():
    scen = semrate.build_example1()
    factory = lambda s: semrate.build_rtheta_kernel(scen.semchan, s)
    points = semrate.sweep_curve(scen.prior, factory, [0.5, 1.0, 2.0])
    rates = [p["rate_bits"] for p in points]
    assert rates == sorted(rates)
    target = points[1]["constraint"]
    hit = semrate.solve_for_target(scen.prior, factory, target, 0.25, 3.0)
    assert abs(hit.constraint - target) <= 1e-6 * max(1.0, abs(target))
