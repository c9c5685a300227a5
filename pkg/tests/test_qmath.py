import math

import numpy as np
import pytest

from dimwit import qmath
from dimwit.errors import DimensionError, InvariantViolation

from conftest import random_hermitian

SQ2 = math.sqrt(2)


def test_expectation_examples():
    z = np.diag([1, -1])
    assert qmath.expectation(qmath.basis(2, 0), z) == 1.0
    plus = qmath.state([1, 1], normalize=True)
    assert abs(qmath.expectation(plus, z)) < 1e-15


def test_expectation_at_i3_optimum():
    # 1 - 2|<m1|+>|^2 with m1 = (cos pi/8, -sin pi/8): (c - s)^2 = 1 - sin(pi/4)
    c, s = math.cos(math.pi / 8), math.sin(math.pi / 8)
    m1 = qmath.dichotomic_from_vector([c, -s])
    plus = qmath.state([1, 1], normalize=True)
    assert qmath.expectation(plus, m1) == pytest.approx(SQ2 / 2, abs=1e-12)


def test_expectation_dimension_mismatch():
    with pytest.raises(DimensionError):
        qmath.expectation(qmath.basis(2, 0), np.eye(3))


def test_state_validation():
    with pytest.raises(InvariantViolation):
        qmath.state([1, 1])
    with pytest.raises(DimensionError):
        qmath.state([1])
    with pytest.raises(InvariantViolation):
        qmath.state([np.nan, 1])
    s = qmath.state([3, 4j], normalize=True)
    assert abs(np.linalg.norm(s) - 1) < 1e-12
    with pytest.raises(ValueError):
        s[0] = 0


def test_eigh_examples():
    dec = qmath.eigh(np.eye(3))
    np.testing.assert_allclose(dec.values, [1, 1, 1])
    dec = qmath.eigh(np.diag([1.0, -1.0]))
    np.testing.assert_allclose(dec.values, [1, -1])
    assert abs(abs(dec.vectors[0, 0]) - 1) < 1e-12
    assert abs(abs(dec.vectors[1, 1]) - 1) < 1e-12


def test_eigh_rejects_non_hermitian():
    with pytest.raises(InvariantViolation):
        qmath.eigh(np.array([[0, 1], [0, 0]]))


@pytest.mark.parametrize("d", [2, 3, 4])
def test_eigh_reconstruction(rng, d):
    for _ in range(1000):
        a = random_hermitian(rng, d)
        dec = qmath.eigh(a)
        assert np.all(np.diff(dec.values) <= 0)
        assert np.max(np.abs(dec.reconstruct() - a)) < qmath.EIG_TOL
        gram = dec.vectors.conj().T @ dec.vectors
        assert np.max(np.abs(gram - np.eye(d))) < qmath.EIG_TOL
        assert np.max(np.abs(a @ dec.vectors - dec.vectors * dec.values)) < qmath.EIG_TOL


@pytest.mark.parametrize("d", [2, 3, 4])
def test_reflection_spectrum(rng, d):
    for _ in range(50):
        m = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        m /= np.linalg.norm(m)
        r = qmath.dichotomic_from_vector(m)
        np.testing.assert_allclose(qmath.eigh(r).values, [1] * (d - 1) + [-1], atol=1e-12)
        np.testing.assert_allclose(r @ m, -m, atol=1e-12)
        assert abs(np.trace(r).real - (d - 2)) < 1e-10
        assert qmath.is_dichotomic(r)


def test_dichotomic_examples():
    np.testing.assert_allclose(qmath.dichotomic_from_vector([0, 1]), np.diag([1, -1]))
    minus = np.array([1, -1]) / SQ2
    np.testing.assert_allclose(qmath.dichotomic_from_vector(minus), [[0, 1], [1, 0]], atol=1e-15)
    np.testing.assert_allclose(qmath.dichotomic_from_vector([0, 0, 1]), np.diag([1, 1, -1]))
    with pytest.raises(InvariantViolation):
        qmath.dichotomic_from_vector([1, 1])


def test_sign_observable_examples():
    np.testing.assert_allclose(qmath.sign_observable(np.diag([3, -0.5])), np.diag([1, -1]))
    np.testing.assert_allclose(qmath.sign_observable(np.diag([0, 2]), zero_tie=1), np.eye(2))
    np.testing.assert_allclose(qmath.sign_observable(np.diag([0, 2]), zero_tie=-1), np.diag([-1, 1]))


def test_sign_observable_fixed_point_at_i3_optimum():
    # h = sum_x c_x1 |psi_x><psi_x| with the optimal I3 qubit states
    c, s = math.cos(math.pi / 8), math.sin(math.pi / 8)
    psis = [np.array([0, 1]), np.array([1, 1]) / SQ2, np.array([c, -s])]
    h = sum(cx * np.outer(p, p) for cx, p in zip([1, 1, -1], psis))
    np.testing.assert_allclose(qmath.sign_observable(h), qmath.dichotomic_from_vector([c, -s]), atol=1e-12)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_sign_observable_idempotent(rng, d):
    for _ in range(200):
        once = qmath.sign_observable(random_hermitian(rng, d))
        assert np.max(np.abs(qmath.sign_observable(once) - once)) < 1e-10
        assert qmath.is_dichotomic(once)


def test_identity_expectation(rng):
    for d in (2, 3, 4):
        for _ in range(100):
            v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
            s = qmath.state(v, normalize=True)
            assert abs(qmath.expectation(s, np.eye(d)) - 1) < 1e-12
