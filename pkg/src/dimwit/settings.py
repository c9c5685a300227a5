"""Optimal preparations and measurements for the seven reference experiments,
and the half-wave-plate parametrization of the four-mode state preparator.

Mode basis: |0⟩ = |H,a⟩, |1⟩ = |V,a⟩, |2⟩ = |H,b⟩, |3⟩ = |V,b⟩. Qubit and
qutrit states live in their native dimension and are zero-padded only when
mapped onto the optical modes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from . import qmath
from .classical import ClassicalStrategy, classical_expectations
from .errors import NotFound, NotRepresentable
from .quantum_opt import QuantumStrategy, embed_classical, quantum_value
from .witness import CLASSICAL, QUANTUM, catalog, evaluate

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)
_ZERO_ARM = 1e-12


@dataclass(frozen=True)
class HwpAngles:
    theta1: float
    theta2: float
    theta3: float


def hwp_state(a: HwpAngles) -> np.ndarray:
    s1, c1 = math.sin(2 * a.theta1), math.cos(2 * a.theta1)
    return qmath.state([
        s1 * math.cos(2 * a.theta2),
        s1 * math.sin(2 * a.theta2),
        c1 * math.cos(2 * a.theta3),
        c1 * math.sin(2 * a.theta3),
    ])


def to_modes(psi) -> np.ndarray:
    """Zero-pad a qubit or qutrit state into the four optical modes."""
    psi = np.asarray(psi, dtype=complex)
    out = np.zeros(4, dtype=complex)
    out[: psi.size] = psi
    return out


def angles_for(psi) -> HwpAngles:
    """Canonical plate angles reproducing ``psi`` up to a global phase.

    An arm with no amplitude gets its plate angle set to 0.
    """
    v = to_modes(psi)
    k = int(np.argmax(np.abs(v) > _ZERO_ARM))
    v = v * (abs(v[k]) / v[k])
    if np.max(np.abs(v.imag)) > qmath.NORM_TOL:
        raise NotRepresentable("plate preparation yields real amplitudes only")
    r = v.real
    ra, rb = math.hypot(r[0], r[1]), math.hypot(r[2], r[3])
    phi1 = math.atan2(ra, rb)
    phi2 = math.atan2(r[1], r[0]) if ra > _ZERO_ARM else 0.0
    phi3 = math.atan2(r[3], r[2]) if rb > _ZERO_ARM else 0.0
    return HwpAngles(phi1 / 2, phi2 / 2, phi3 / 2)


@dataclass(frozen=True)
class ExperimentSpec:
    id: str
    label: str
    witness_name: str
    d: int
    model: str
    strategy: Union[QuantumStrategy, ClassicalStrategy]
    expected_value: float

    @property
    def witness(self):
        return catalog(self.witness_name)[0]

    def expectations(self) -> np.ndarray:
        w = self.witness
        if self.model == CLASSICAL:
            return classical_expectations(self.strategy, w.N, w.m)
        return self.strategy.expectations()

    def value(self) -> float:
        if self.model == CLASSICAL:
            return evaluate(self.witness, self.expectations())
        return quantum_value(self.strategy, self.witness)

    def quantum_strategy(self) -> QuantumStrategy:
        if self.model == CLASSICAL:
            return embed_classical(self.strategy)
        return self.strategy


def _refl(*amps):
    return qmath.dichotomic_from_vector(qmath.state(amps, normalize=True))


def _st(*amps):
    return qmath.state(amps, normalize=True)


def _i3_qubit():
    x = math.pi / 4
    c, s = math.cos(x / 2), math.sin(x / 2)
    m1, m2 = (c, -s), (c, s)
    states = (_st(0, 1), _st(1, 1), _st(*m1))
    return QuantumStrategy(2, states, (_refl(*m1), _refl(*m2)))


def _i3_qutrit():
    states = (_st(1, 0, 0), _st(0, 0, 1), _st(0, 1, 0))
    obs = (np.diag([1, -1, 1]), np.diag([1, 1, -1]))
    return QuantumStrategy(3, states, obs)


def _i4_qubit():
    x = math.pi / 6
    c, s = math.cos(x / 2), math.sin(x / 2)
    m1, m2, m3 = (c, -s), (c, s), (1, -1)
    a = 2 + SQRT3
    # top eigenvectors of M1+M2+M3 and M1+M2-M3 for these measurement vectors
    states = (_st(1, a), _st(1, -a), _st(1, 1), _st(*m1))
    return QuantumStrategy(2, states, (_refl(*m1), _refl(*m2), _refl(*m3)))


def _i4_trit():
    # psi1 = psi2 = |0>, psi3 = |2>, psi4 = |1>; responses are the diagonals of M1..M3
    return ClassicalStrategy(3, (0, 0, 2, 1), ((1, -1, 1), (1, 1, -1), (1, -1, -1)))


def i4_qutrit_cos_x() -> float:
    return 0.5 * (1 - SQRT2 + math.sqrt(2 * SQRT2 - 1))


def _i4_qutrit():
    cx = i4_qutrit_cos_x()
    x = math.acos(cx)
    c, s = math.cos(x / 2), math.sin(x / 2)
    m1, m2, m3 = (0, c, s), (0, c, -s), (1, 0, 1)
    t = 1 - cx - math.sqrt(1 + (1 - cx) ** 2)
    # psi1 takes +t: it must be the top eigenvector of M1+M2+M3
    states = (_st(1, 0, t), _st(1, 0, -t), _st(0, 1, -1), _st(*m1))
    return QuantumStrategy(3, states, (_refl(*m1), _refl(*m2), _refl(*m3)))


def _i4_ququart():
    states = tuple(qmath.basis(4, k) for k in (0, 2, 1, 3))
    obs = (np.diag([1, 1, 1, -1]), np.diag([1, -1, 1, -1]), np.diag([1, 1, -1, -1]))
    return QuantumStrategy(4, states, obs)


def _i4_bb84():
    c, s = math.cos(math.pi / 8), math.sin(math.pi / 8)
    p = 0.5 * (1 + 3 / math.sqrt(10))
    psi4 = (1, -1)
    m2 = (c * math.sqrt(1 - p) - s * math.sqrt(p), c * math.sqrt(p) + s * math.sqrt(1 - p))
    m3 = ((c - s) / SQRT2, (c + s) / SQRT2)
    states = (_st(1, 0), _st(1, 1), _st(0, 1), _st(*psi4))
    return QuantumStrategy(2, states, (_refl(*psi4), _refl(*m2), _refl(*m3)))


_BUILDERS = {
    "i3-qubit": ("I3 optimal qubits", "i3", 2, QUANTUM, _i3_qubit, lambda: 1 + 2 * SQRT2),
    "i3-qutrit": ("I3 optimal qutrits", "i3", 3, QUANTUM, _i3_qutrit, lambda: 5.0),
    "i4-qubit": ("I4 optimal qubits", "i4", 2, QUANTUM, _i4_qubit, lambda: 6.0),
    "i4-trit": ("I4 optimal trits", "i4", 3, CLASSICAL, _i4_trit, lambda: 7.0),
    "i4-qutrit": ("I4 optimal qutrits", "i4", 3, QUANTUM, _i4_qutrit,
                  lambda: 2 + math.sqrt(13 + 16 * SQRT2)),
    "i4-ququart": ("I4 optimal ququarts", "i4", 4, QUANTUM, _i4_ququart, lambda: 9.0),
    "i4-bb84": ("I4 BB84 qubits", "i4", 2, QUANTUM, _i4_bb84,
                lambda: SQRT2 + 2 + math.sqrt(5)),
}

EXPERIMENT_IDS = tuple(_BUILDERS)


def experiment(id: str) -> ExperimentSpec:
    try:
        label, wname, d, model, build, expected = _BUILDERS[id]
    except KeyError:
        raise NotFound(f"unknown experiment {id!r}; known: {list(_BUILDERS)}") from None
    return ExperimentSpec(id, label, wname, d, model, build(), expected())
