import math

import numpy as np
import pytest

from dimwit import qmath
from dimwit.errors import NotFound, NotRepresentable
from dimwit.quantum_opt import QuantumStrategy
from dimwit.settings import (
    EXPERIMENT_IDS, HwpAngles, angles_for, experiment, hwp_state, i4_qutrit_cos_x, to_modes,
)

SQ2 = math.sqrt(2)


def test_hwp_examples():
    np.testing.assert_allclose(hwp_state(HwpAngles(math.pi / 4, 0, 1.234)), [1, 0, 0, 0], atol=1e-15)
    np.testing.assert_allclose(hwp_state(HwpAngles(0, 0.77, 0)), [0, 0, 1, 0], atol=1e-15)
    np.testing.assert_allclose(
        hwp_state(HwpAngles(math.pi / 4, math.pi / 8, 0.3)), [1 / SQ2, 1 / SQ2, 0, 0], atol=1e-15
    )


def test_hwp_unit_norm(rng):
    for t in rng.uniform(-2 * math.pi, 2 * math.pi, size=(10_000, 3)):
        assert abs(np.linalg.norm(hwp_state(HwpAngles(*t))) - 1) <= 1e-12


def test_angles_for_examples():
    assert angles_for(qmath.basis(2, 0)) == HwpAngles(math.pi / 4, 0.0, 0.0)
    a = angles_for(qmath.state([1, 1], normalize=True))
    assert (a.theta1, a.theta2, a.theta3) == pytest.approx((math.pi / 4, math.pi / 8, 0.0), abs=1e-15)
    with pytest.raises(NotRepresentable):
        angles_for(qmath.state([1, 1j], normalize=True))


def test_angles_for_strips_global_phase(rng):
    for _ in range(200):
        v = rng.standard_normal(4)
        v /= np.linalg.norm(v)
        phase = np.exp(1j * rng.uniform(0, 2 * math.pi))
        back = hwp_state(angles_for(phase * v))
        assert min(np.max(np.abs(back - v)), np.max(np.abs(back + v))) < 1e-9


def test_catalog_round_trip():
    for eid in EXPERIMENT_IDS:
        s = experiment(eid).quantum_strategy()
        for psi in s.states:
            back = hwp_state(angles_for(psi))
            target = to_modes(psi)
            assert min(np.max(np.abs(back - target)), np.max(np.abs(back + target))) <= 1e-9


def test_unknown_experiment():
    with pytest.raises(NotFound):
        experiment("i5-qubit")


@pytest.mark.parametrize("eid", EXPERIMENT_IDS)
def test_expected_values(eid):
    spec = experiment(eid)
    assert abs(spec.value() - spec.expected_value) < 1e-9


def test_closed_forms():
    assert experiment("i3-qubit").expected_value == 1 + 2 * SQ2
    assert experiment("i4-qutrit").expected_value == 2 + math.sqrt(13 + 16 * SQ2)
    assert experiment("i4-bb84").expected_value == SQ2 + 2 + math.sqrt(5)
    assert i4_qutrit_cos_x() == pytest.approx(0.4689, abs=1e-4)


def test_models_and_dims():
    dims = {eid: (experiment(eid).d, experiment(eid).model) for eid in EXPERIMENT_IDS}
    assert dims == {
        "i3-qubit": (2, "quantum"), "i3-qutrit": (3, "quantum"), "i4-qubit": (2, "quantum"),
        "i4-trit": (3, "classical"), "i4-qutrit": (3, "quantum"), "i4-ququart": (4, "quantum"),
        "i4-bb84": (2, "quantum"),
    }


def test_optimal_states_are_top_eigenvectors():
    for eid in ("i3-qubit", "i3-qutrit", "i4-qubit", "i4-qutrit", "i4-ququart"):
        spec = experiment(eid)
        w, s = spec.witness, spec.strategy
        for x, psi in enumerate(s.states):
            op = sum(w.coeffs[x, y] * s.observables[y] for y in range(w.m))
            top = qmath.eigh(op).values[0]
            assert qmath.expectation(psi, op) == pytest.approx(top, abs=1e-12)


def test_named_states():
    s = experiment("i3-qubit").strategy
    c, sn = math.cos(math.pi / 8), math.sin(math.pi / 8)
    np.testing.assert_allclose(s.states[2], [c, -sn], atol=1e-15)
    np.testing.assert_allclose(s.states[0], [0, 1])
    # m1 = sqrt(2+sqrt2)/2 |0> - sqrt(2-sqrt2)/2 |1>
    np.testing.assert_allclose(s.states[2], [math.sqrt(2 + SQ2) / 2, -math.sqrt(2 - SQ2) / 2], atol=1e-15)
    q = experiment("i4-qutrit").strategy
    np.testing.assert_allclose(q.states[2], [0, 1 / SQ2, -1 / SQ2], atol=1e-15)
    np.testing.assert_allclose(q.observables[2] @ np.array([1, 0, 1]) / SQ2, -np.array([1, 0, 1]) / SQ2, atol=1e-15)
    t = experiment("i4-trit").strategy
    assert t.labels == (0, 0, 2, 1)


def test_export_embeds_trit():
    q = experiment("i4-trit").quantum_strategy()
    assert isinstance(q, QuantumStrategy) and q.d == 3
    np.testing.assert_array_equal(np.real(q.observables[0]), np.diag([1, -1, 1]))
