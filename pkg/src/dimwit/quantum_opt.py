"""See-saw lower bounds on the quantum value of a witness.

With the observables fixed, each preparation's best pure state is the top
eigenvector of ``Σ_y c_xy M_y``. With the states fixed, each observable's best
choice is the sign of ``Σ_x c_xy |ψ_x⟩⟨ψ_x|``. Alternating the two never
decreases the objective; many random restarts give a good lower bound.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import qmath
from .classical import ClassicalStrategy
from .errors import DimensionError, InvariantViolation, ParseError
from .witness import Witness, evaluate

MONOTONE_TOL = 1e-12


@dataclass(frozen=True)
class QuantumStrategy:
    d: int
    states: tuple
    observables: tuple

    def __post_init__(self):
        qmath._check_dim(self.d)
        states = tuple(qmath.state(s) for s in self.states)
        observables = tuple(qmath.hermitian(o) for o in self.observables)
        if any(s.size != self.d for s in states) or any(o.shape[0] != self.d for o in observables):
            raise DimensionError(f"all states and observables must have dimension {self.d}")
        for o in observables:
            if not qmath.is_dichotomic(o):
                raise InvariantViolation("observables must square to the identity")
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "observables", observables)

    @property
    def N(self) -> int:
        return len(self.states)

    @property
    def m(self) -> int:
        return len(self.observables)

    def expectations(self) -> np.ndarray:
        return np.array(
            [[qmath.expectation(s, o) for o in self.observables] for s in self.states]
        )

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "states": [[[float(a.real), float(a.imag)] for a in s] for s in self.states],
            "observables": [
                [[[float(a.real), float(a.imag)] for a in row] for row in o]
                for o in self.observables
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "QuantumStrategy":
        try:
            d = int(data["d"])
            states = [np.array([complex(re, im) for re, im in s]) for s in data["states"]]
            obs = [
                np.array([[complex(re, im) for re, im in row] for row in o])
                for o in data["observables"]
            ]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed strategy JSON: {exc}") from exc
        return cls(d, tuple(states), tuple(obs))


def load_strategy(path) -> QuantumStrategy:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}: {exc.msg}") from exc
    return QuantumStrategy.from_json(data)


def embed_classical(s: ClassicalStrategy) -> QuantumStrategy:
    """Basis states |label⟩ with diagonal observables diag(f_y)."""
    states = tuple(qmath.basis(s.d, l) for l in s.labels)
    observables = tuple(np.diag(np.array(f, dtype=complex)) for f in s.responses)
    return QuantumStrategy(s.d, states, observables)


def _check_shape(s: QuantumStrategy, w: Witness) -> None:
    if (s.N, s.m) != (w.N, w.m):
        raise DimensionError(f"strategy shape ({s.N}, {s.m}) does not match witness ({w.N}, {w.m})")


def quantum_value(s: QuantumStrategy, w: Witness) -> float:
    _check_shape(s, w)
    return evaluate(w, s.expectations())


def seesaw_state_update(w: Witness, observables, x: int, sign: int = 1) -> np.ndarray:
    """Best pure state for preparation ``x`` given the observables (zero-based x)."""
    a = sign * sum(w.coeffs[x, y] * np.asarray(observables[y]) for y in range(w.m))
    a = (a + a.conj().T) / 2
    return qmath.state(qmath.eigh(a).top())


def seesaw_measurement_update(w: Witness, states, y: int, zero_tie: int = 1, sign: int = 1):
    """Best ±1 observable for measurement ``y`` given the states (zero-based y)."""
    b = sign * sum(w.coeffs[x, y] * qmath.projector(np.asarray(states[x])) for x in range(w.N))
    b = (b + b.conj().T) / 2
    return qmath.sign_observable(b, zero_tie)


# Batched internals: states (N, d), observables (m, d, d), all complex.

def _objective(c, psi, obs) -> float:
    e = np.einsum("xi,yij,xj->xy", psi.conj(), obs, psi).real
    return float(np.sum(c * e))


def _update_states(c, obs):
    a = np.einsum("xy,yij->xij", c, obs)
    a = (a + np.conj(np.swapaxes(a, 1, 2))) / 2
    _, v = np.linalg.eigh(a)
    return np.ascontiguousarray(v[:, :, -1])


def _update_observables(c, psi, zero_tie):
    b = np.einsum("xy,xi,xj->yij", c, psi, psi.conj())
    b = (b + np.conj(np.swapaxes(b, 1, 2))) / 2
    w, v = np.linalg.eigh(b)
    signs = np.where(w > qmath.SIGN_TOL, 1.0, np.where(w < -qmath.SIGN_TOL, -1.0, float(zero_tie)))
    out = np.einsum("yik,yk,yjk->yij", v, signs, v.conj())
    return (out + np.conj(np.swapaxes(out, 1, 2))) / 2


def _sweep(c, psi, obs, zero_tie):
    psi = _update_states(c, obs)
    obs = _update_observables(c, psi, zero_tie)
    return psi, obs


def seesaw(w: Witness, start: QuantumStrategy, sign: int = 1, max_iters: int = 500,
           conv_tol: float = 1e-10, zero_tie: int = 1):
    """Run see-saw sweeps from ``start`` on the branch ``sign·Σ c_xy E_xy``.

    Returns ``(strategy, history)`` where ``history[0]`` is the starting
    objective and each later entry follows one full sweep (states, then
    observables).
    """
    _check_shape(start, w)
    c = sign * w.coeffs
    psi = np.array(start.states)
    obs = np.array(start.observables)
    history = [_objective(c, psi, obs)]
    for _ in range(max_iters):
        psi, obs = _sweep(c, psi, obs, zero_tie)
        history.append(_objective(c, psi, obs))
        if history[-1] - history[-2] < conv_tol:
            break
    return QuantumStrategy(start.d, tuple(psi), tuple(obs)), history


@dataclass(frozen=True)
class SeesawConfig:
    restarts: int = 64
    max_iters: int = 500
    conv_tol: float = 1e-10
    seed: int = 0
    zero_tie: int = 1

    def __post_init__(self):
        if self.restarts < 1:
            raise InvariantViolation("restarts must be >= 1")
        if not self.conv_tol > 0:
            raise InvariantViolation("conv_tol must be positive")
        if self.zero_tie not in (1, -1):
            raise InvariantViolation("zero_tie must be +1 or -1")


@dataclass
class SeesawResult:
    best_value: float
    best_strategy: QuantumStrategy
    per_restart_values: list = field(default_factory=list)
    iterations_used: list = field(default_factory=list)
    best_restart: int = 0


def restart_rng(seed: int, restart: int) -> np.random.Generator:
    """Counter-based stream keyed by seed XOR restart index."""
    return np.random.Generator(np.random.Philox(key=(int(seed) ^ int(restart)) & (2**64 - 1)))


def random_state(rng: np.random.Generator, d: int) -> np.ndarray:
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


def random_unitary(rng: np.random.Generator, d: int) -> np.ndarray:
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


def random_dichotomic(rng: np.random.Generator, d: int) -> np.ndarray:
    """U diag(±1) U† with between 1 and d eigenvalues equal to -1."""
    n_minus = int(rng.integers(1, d + 1))
    signs = np.array([1.0] * (d - n_minus) + [-1.0] * n_minus)
    u = random_unitary(rng, d)
    out = (u * signs) @ u.conj().T
    return (out + out.conj().T) / 2


def random_strategy(rng: np.random.Generator, d: int, N: int, m: int) -> QuantumStrategy:
    states = tuple(random_state(rng, d) for _ in range(N))
    observables = tuple(random_dichotomic(rng, d) for _ in range(m))
    return QuantumStrategy(d, states, observables)


def optimize(w: Witness, d: int, cfg: SeesawConfig | None = None) -> SeesawResult:
    """Multi-restart see-saw; deterministic for a given ``cfg.seed``.

    Witnesses with ``take_abs`` are optimized on both sign branches from
    the same starting point and the better branch is kept.
    """
    cfg = cfg or SeesawConfig()
    if d not in qmath.VALID_DIMS:
        raise DimensionError(f"quantum dimension must be one of {qmath.VALID_DIMS}, got {d}")
    branches = (1, -1) if w.take_abs else (1,)
    values, iters = [], []
    best = None
    for r in range(cfg.restarts):
        start = random_strategy(restart_rng(cfg.seed, r), d, w.N, w.m)
        r_best, r_iters = None, 0
        for sign in branches:
            strat, hist = seesaw(w, start, sign, cfg.max_iters, cfg.conv_tol, cfg.zero_tie)
            r_iters += len(hist) - 1
            val = quantum_value(strat, w)
            if r_best is None or val > r_best[0]:
                r_best = (val, strat)
        values.append(r_best[0])
        iters.append(r_iters)
        if best is None or r_best[0] > best[0]:
            best = (r_best[0], r_best[1], r)
    return SeesawResult(best[0], best[1], values, iters, best[2])
