import numpy as np
import pytest

from gravent import fock_oracle as fo
from gravent import gaussian as g
from gravent import models
from gravent.errors import NoUniqueSteadyState, TruncationNotConverged

A1 = g.annihilation(0, 1)


def thermal(nbar, gamma=1.0):
    ops = np.array([np.sqrt(gamma * (nbar + 1)) * A1, np.sqrt(gamma * nbar) * A1.conj()])
    return g.QuadraticModel(1, np.zeros((2, 2)), ops)


def test_thermal_mode():
    res = fo.solve_fock(thermal(0.3), fo.TruncationSpec(12))
    V = res.covariance.matrix
    n = (V[0, 0] + V[1, 1]) / 2 - 0.5
    assert n == pytest.approx(0.3, abs=1e-6)
    np.testing.assert_allclose(V, 0.8 * np.eye(2), atol=1e-6)


def test_density_matrix_properties():
    m = models.effective_two_mode_rates(
        detuning=1.0, k_m=0.1, gamma_a=0.3, gamma_b=0.2, nbar=0.1, Gamma=0.5, squeeze=0.3
    )
    res = fo.solve_fock(m, fo.TruncationSpec(8))
    rho = res.rho
    np.testing.assert_allclose(rho, rho.conj().T, atol=1e-14)
    assert np.linalg.eigvalsh(rho).min() > -1e-10
    assert abs(np.trace(rho) - 1) < 1e-10
    assert np.abs(res.first_moments).max() < 1e-8
    assert res.covariance.is_physical(1e-4)
    np.testing.assert_allclose(res.covariance.matrix, g.steady_covariance(m).matrix, atol=1e-4)


def test_closed_system_has_no_unique_state():
    closed = g.QuadraticModel(1, g.quadratic_hamiltonian(1, [(1.0, A1.conj(), A1)]))
    with pytest.raises(NoUniqueSteadyState):
        fo.solve_fock(closed, fo.TruncationSpec(6))


def test_hot_mode_does_not_fit():
    with pytest.raises(TruncationNotConverged):
        fo.solve_fock(thermal(5.0), fo.TruncationSpec(8))


def test_truncation_spec_floor():
    with pytest.raises(ValueError):
        fo.TruncationSpec(2)


def test_three_modes_refused():
    m = g.QuadraticModel(3, np.eye(6), None)
    with pytest.raises(ValueError):
        fo.solve_fock(m)


def test_squeezed_single_mode():
    # cooling a squeezed mode, b = a cosh r + a† sinh r, gives a squeezed vacuum
    r = 0.3
    op = np.cosh(r) * A1 + np.sinh(r) * A1.conj()
    m = g.QuadraticModel(1, np.zeros((2, 2)), op[None, :])
    V = fo.steady_covariance_fock(m, fo.TruncationSpec(16))
    np.testing.assert_allclose(V.matrix, g.steady_covariance(m).matrix, atol=1e-5)
    np.testing.assert_allclose(np.diag(V.matrix), [np.exp(-2 * r) / 2, np.exp(2 * r) / 2], atol=1e-5)
