"""Small dense complex linear algebra for qudits of dimension 2 to 4.

States are 1-D complex numpy arrays, observables 2-D complex arrays. The
constructors below validate and return read-only copies so values can be
shared freely.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, InvariantViolation

NORM_TOL = 1e-9
HERM_TOL = 1e-12
EIG_TOL = 1e-8
SIGN_TOL = 1e-10

VALID_DIMS = (2, 3, 4)


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


def _check_dim(d: int) -> None:
    if d not in VALID_DIMS:
        raise DimensionError(f"dimension must be one of {VALID_DIMS}, got {d}")


def state(amplitudes, normalize: bool = False) -> np.ndarray:
    """Build a validated unit state vector.

    With ``normalize=True`` the amplitudes are rescaled first, which is how
    unnormalized textbook states (``(2+√3)|0⟩ + |1⟩``) enter the catalog.
    """
    v = np.asarray(amplitudes, dtype=complex).reshape(-1)
    _check_dim(v.size)
    if not np.all(np.isfinite(v)):
        raise InvariantViolation("state amplitudes must be finite")
    n = np.linalg.norm(v)
    if normalize:
        if n == 0:
            raise InvariantViolation("cannot normalize the zero vector")
        v = v / n
    elif abs(n - 1.0) > NORM_TOL:
        raise InvariantViolation(f"state norm {n!r} differs from 1")
    return _frozen(v)


def basis(d: int, k: int) -> np.ndarray:
    """Computational basis vector |k⟩ in dimension d."""
    v = np.zeros(d, dtype=complex)
    v[k] = 1.0
    return state(v)


def hermitian(matrix) -> np.ndarray:
    a = np.asarray(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {a.shape}")
    _check_dim(a.shape[0])
    if not np.all(np.isfinite(a)):
        raise InvariantViolation("matrix entries must be finite")
    if np.max(np.abs(a - a.conj().T)) > HERM_TOL:
        raise InvariantViolation("matrix is not Hermitian")
    return _frozen(a)


def projector(psi: np.ndarray) -> np.ndarray:
    return np.outer(psi, psi.conj())


def expectation(psi: np.ndarray, obs: np.ndarray) -> float:
    """⟨ψ|M|ψ⟩ for a pure state; equals P(+1) - P(-1) for a ±1 observable."""
    if psi.shape[0] != obs.shape[0]:
        raise DimensionError(
            f"state dimension {psi.shape[0]} does not match observable {obs.shape[0]}"
        )
    return float(np.real(np.vdot(psi, obs @ psi)))


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues in descending order; ``vectors[:, i]`` belongs to ``values[i]``."""

    values: np.ndarray
    vectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.values) @ self.vectors.conj().T

    def top(self) -> np.ndarray:
        return self.vectors[:, 0]


def eigh(obs) -> EigenDecomposition:
    a = hermitian(obs)
    w, v = np.linalg.eigh(a)
    order = np.argsort(-w, kind="stable")
    return EigenDecomposition(values=w[order], vectors=_frozen(v[:, order]))


def dichotomic_from_vector(m) -> np.ndarray:
    """The reflection 𝟙 - 2|m⟩⟨m|: eigenvalue -1 on m, +1 on its complement."""
    m = np.asarray(m, dtype=complex).reshape(-1)
    if abs(np.linalg.norm(m) - 1.0) > NORM_TOL:
        raise InvariantViolation("measurement vector must have unit norm")
    m = state(m)
    return hermitian(np.eye(m.size) - 2.0 * projector(m))


def sign_observable(h, zero_tie: int = 1) -> np.ndarray:
    """Replace each eigenvalue of ``h`` by its sign, ``zero_tie`` for |λ| ≤ 1e-10."""
    if zero_tie not in (1, -1):
        raise ValueError("zero_tie must be +1 or -1")
    dec = eigh(h)
    signs = np.where(
        dec.values > SIGN_TOL, 1.0, np.where(dec.values < -SIGN_TOL, -1.0, float(zero_tie))
    )
    out = (dec.vectors * signs) @ dec.vectors.conj().T
    # exact Hermitian symmetrization; the product above carries ~1e-16 asymmetry
    return hermitian((out + out.conj().T) / 2)


def is_dichotomic(obs: np.ndarray, tol: float = EIG_TOL) -> bool:
    d = obs.shape[0]
    return bool(np.max(np.abs(obs @ obs - np.eye(d))) < tol)
