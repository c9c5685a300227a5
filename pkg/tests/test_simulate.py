import math

import numpy as np
import pytest

from dimwit.errors import InvariantViolation, MissingData
from dimwit.settings import experiment
from dimwit.simulate import (
    CountRecord, RunConfig, estimate, record_variance, run_experiment, simulate_counts, simulate_table,
)
from dimwit.witness import I3, I4, Witness


def test_perfect_correlator_has_no_minus_counts():
    w = Witness("one", [[1]])
    for seed in range(5):
        (r,) = simulate_table(w, [[1.0]], RunConfig(rate=100, duration=1, seed=seed))
        assert r.n_minus == 0 and r.n_plus > 0


def test_unbiased_setting_fraction():
    w = Witness("one", [[1]])
    (r,) = simulate_table(w, [[0.0]], RunConfig(rate=2e4, duration=30, seed=11))
    # 3 sigma of a binomial fraction at 6e5 trials
    assert abs(r.n_plus / r.total - 0.5) < 3 * math.sqrt(0.25 / 6e5)


def test_ququart_counts_are_one_sided():
    spec = experiment("i4-ququart")
    e = spec.expectations()
    for r in simulate_counts(spec, RunConfig(seed=3)):
        assert abs(e[r.x - 1, r.y - 1]) == 1
        assert (r.n_minus == 0) if e[r.x - 1, r.y - 1] > 0 else (r.n_plus == 0)


def test_only_used_settings_simulated():
    recs = simulate_counts(experiment("i3-qubit"), RunConfig())
    assert sorted((r.x, r.y) for r in recs) == [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1)]


def test_estimate_examples():
    recs = [CountRecord(x + 1, y + 1, 100 if c > 0 else 0, 0 if c > 0 else 100)
            for (x, y), c in np.ndenumerate(I4.coeffs) if c != 0]
    est = estimate(I4, recs)
    assert est.value == 9 and est.sigma == 0 and est.degenerate_variance

    w = Witness("one", [[1]])
    est = estimate(w, [CountRecord(1, 1, 75, 25)])
    assert est.value == 0.5
    assert record_variance(75, 25) == pytest.approx(7.5e-3, rel=1e-12)
    assert est.sigma == pytest.approx(math.sqrt(7.5e-3), rel=1e-12)
    assert est.sigma == pytest.approx(0.0866, abs=1e-4)


def test_variance_matches_finite_difference():
    # delta method: var = (dE/dn+)^2 n+ + (dE/dn-)^2 n-
    def e_hat(a, b):
        return (a - b) / (a + b)

    for n_plus, n_minus in ((75, 25), (1234, 17), (5, 5)):
        h = 1e-4
        dp = (e_hat(n_plus + h, n_minus) - e_hat(n_plus - h, n_minus)) / (2 * h)
        dm = (e_hat(n_plus, n_minus + h) - e_hat(n_plus, n_minus - h)) / (2 * h)
        assert record_variance(n_plus, n_minus) == pytest.approx(dp**2 * n_plus + dm**2 * n_minus, rel=1e-6)


def test_sigma_symmetric_under_swap(rng):
    recs = [CountRecord(x + 1, y + 1, int(rng.integers(1, 1000)), int(rng.integers(1, 1000)))
            for (x, y), c in np.ndenumerate(I4.coeffs) if c != 0]
    swapped = [CountRecord(r.x, r.y, r.n_minus, r.n_plus) for r in recs]
    assert estimate(I4, recs).sigma == estimate(I4, swapped).sigma


def test_missing_data():
    with pytest.raises(MissingData):
        estimate(I3, [CountRecord(1, 1, 5, 5)])
    recs = [CountRecord(x + 1, y + 1, 1, 1) for x, y in I3.support()]
    recs[0] = CountRecord(1, 1, 0, 0)
    with pytest.raises(MissingData):
        estimate(I3, recs)


def test_invalid_inputs():
    with pytest.raises(InvariantViolation):
        CountRecord(1, 1, -1, 0)
    with pytest.raises(InvariantViolation):
        RunConfig(rate=0)


def test_determinism():
    a = run_experiment("i4-qutrit", RunConfig(seed=99))
    b = run_experiment("i4-qutrit", RunConfig(seed=99))
    assert a.counts == b.counts and a.value == b.value and a.sigma == b.sigma
    c = run_experiment("i4-qutrit", RunConfig(seed=100))
    assert c.counts != a.counts


def test_run_experiment_examples():
    est = run_experiment("i4-bb84", RunConfig(seed=7))
    assert est.value == pytest.approx(5.6503, abs=0.02)
    assert (est.value - 5) / est.sigma > 5
    est = run_experiment("i3-qutrit", RunConfig(seed=7))
    assert est.value == 5 and est.sigma == 0


def test_large_count_limit():
    for eid in ("i3-qubit", "i4-qutrit", "i4-bb84"):
        est = run_experiment(eid, RunConfig(rate=1e8, duration=1, seed=5))
        assert abs(est.value - experiment(eid).expected_value) < 1e-3


def test_i3_qubit_five_sigma():
    target = experiment("i3-qubit").expected_value
    hits = sum(
        abs((e := run_experiment("i3-qubit", RunConfig(seed=s))).value - target) < 5 * e.sigma
        for s in range(1000)
    )
    assert hits >= 990


def test_error_scales_as_inverse_sqrt():
    target = experiment("i4-qutrit").expected_value
    ns = np.array([1e3, 1e5, 1e7])
    errs = [
        np.mean([abs(run_experiment("i4-qutrit", RunConfig(rate=n, duration=1, seed=s)).value - target)
                 for s in range(200)])
        for n in ns
    ]
    slope = np.polyfit(np.log(ns), np.log(errs), 1)[0]
    assert -0.6 <= slope <= -0.4
