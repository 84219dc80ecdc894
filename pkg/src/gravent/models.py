"""Builders for the three master equations as :class:`QuadraticModel` objects."""

from __future__ import annotations

import enum
import math

import numpy as np

from .gaussian import CovarianceMatrix, QuadraticModel, annihilation, quadratic_hamiltonian
from .params import HBAR, DerivedParams, GravityModel, grav_dissipation, ktm_dissipation


class ModelKind(enum.Enum):
    KTM_BARE = "ktm-bare"
    THREE_MODE = "three-mode"
    EFFECTIVE_TWO_MODE = "two-mode"


def _thermal_ops(mode, n_modes, gamma, nbar):
    a = annihilation(mode, n_modes)
    return [math.sqrt(gamma * (nbar + 1.0)) * a, math.sqrt(gamma * nbar) * a.conj()]


def _split_grav_ops(modes, n_modes, kappa_gs):
    ops = []
    for mode, kg in zip(modes, kappa_gs):
        a = annihilation(mode, n_modes)
        ops += [math.sqrt(2.0 * kg) * a, math.sqrt(2.0 * kg) * a.conj()]
    return ops


def _mechanical_hamiltonian_terms(n_modes, detuning, k_m):
    a, b = annihilation(0, n_modes), annihilation(1, n_modes)
    ad, bd = a.conj(), b.conj()
    return [
        (detuning, ad, a),
        (-detuning, bd, b),
        (k_m, ad, b),
        (k_m, a, bd),
    ]


def effective_two_mode_rates(
    *,
    detuning: float,
    k_m: float,
    gamma_a: float,
    gamma_b: float,
    nbar: float,
    Gamma: float,
    squeeze: float,
    kappa_g_a: float = 0.0,
    kappa_g_b: float = 0.0,
    classical: bool = False,
    nbar_b: float | None = None,
) -> QuadraticModel:
    """Effective (a, b) model from explicit rates.

    H = Ω(a†a − b†b) + k_M(a†b + ab†); collective jump
    √Γ[(a + b)cosh r + (a† + b†)sinh r]; with ``classical`` the four
    operators √(2κ_G){a, a†, b, b†} are appended.
    """
    n = 2
    G = quadratic_hamiltonian(n, _mechanical_hamiltonian_terms(n, detuning, k_m))
    a, b = annihilation(0, n), annihilation(1, n)
    nb = nbar if nbar_b is None else nbar_b
    ops = _thermal_ops(0, n, gamma_a, nbar) + _thermal_ops(1, n, gamma_b, nb)
    ch, sh = math.cosh(squeeze), math.sinh(squeeze)
    ops.append(math.sqrt(Gamma) * ((a + b) * ch + (a.conj() + b.conj()) * sh))
    if classical:
        ops += _split_grav_ops((0, 1), n, (kappa_g_a, kappa_g_b))
    return QuadraticModel(n, G, np.array(ops), labels=("a", "b"))


def effective_two_mode(p: DerivedParams, gravity: GravityModel | None = None) -> QuadraticModel:
    """Mechanical pair after the cavity is eliminated; κ_G follows ``gravity``."""
    gravity = gravity or GravityModel.quantum()
    kga, kgb = _kappa_g(p, gravity)
    return effective_two_mode_rates(
        detuning=p.detuning,
        k_m=p.k_m,
        gamma_a=p.gamma_a,
        gamma_b=p.gamma_b,
        nbar=p.nbar,
        Gamma=p.Gamma,
        squeeze=p.squeeze,
        kappa_g_a=kga,
        kappa_g_b=kgb,
        classical=gravity.is_classical,
    )


def _kappa_g(p: DerivedParams, gravity: GravityModel):
    if not gravity.is_classical:
        return 0.0, 0.0
    return grav_dissipation(p.grav_gradient, p.x_zpf_a, p.x_zpf_b, gravity)


def three_mode_linearized(p: DerivedParams, gravity: GravityModel | None = None) -> QuadraticModel:
    """Mechanical pair plus the linearized cavity fluctuation c0 (mode index 2)."""
    gravity = gravity or GravityModel.quantum()
    n = 3
    a, b, c = (annihilation(j, n) for j in range(3))
    terms = _mechanical_hamiltonian_terms(n, p.detuning, p.k_m)
    cp, cm = p.c_plus.real, p.c_minus.real
    for g, m in ((p.coupling_a, a), (p.coupling_b, b)):
        # g (c̄₋ m + c̄₊ m†) c0† + h.c.
        mix = g * (cm * m + cp * m.conj())
        terms += [(1.0, mix, c.conj()), (1.0, mix.conj(), c)]
    G = quadratic_hamiltonian(n, terms)
    ops = _thermal_ops(0, n, p.gamma_a, p.nbar) + _thermal_ops(1, n, p.gamma_b, p.nbar)
    ops.append(math.sqrt(p.kappa) * c)
    if gravity.is_classical:
        ops += _split_grav_ops((0, 1), n, _kappa_g(p, gravity))
    return QuadraticModel(n, G, np.array(ops), labels=("a", "b", "c0"))


def mechanical_block(V: CovarianceMatrix) -> CovarianceMatrix:
    """Reduced (a, b) state of a three-mode covariance."""
    return V.reduced([0, 1])


def ktm_bare(
    p: DerivedParams,
    meas_rate_a: float | None = None,
    meas_rate_b: float | None = None,
    quantum: bool = True,
    thermal: tuple[float, float, float] | None = None,
) -> QuadraticModel:
    """Lab-frame pair coupled by k_G(a + a†)(b + b†).

    With ``quantum=False`` each mode gets a dephasing operator
    √κ_k (a_k + a_k†), κ_k = (Γ_k/ħ + K_G²/(4ħΓ_j)) x_zpf,k².
    ``thermal`` is an optional ``(gamma_a, gamma_b, nbar)``.
    """
    n = 2
    a, b = annihilation(0, n), annihilation(1, n)
    qa, qb = a + a.conj(), b + b.conj()
    terms = [
        (p.omega_a_shifted, a.conj(), a),
        (p.omega_b_shifted, b.conj(), b),
        (p.k_g, qa, qb),
    ]
    G = quadratic_hamiltonian(n, terms)
    ops = []
    if thermal is not None:
        ga, gb, nbar = thermal
        ops += _thermal_ops(0, n, ga, nbar) + _thermal_ops(1, n, gb, nbar)
    if not quantum:
        if meas_rate_a is None or meas_rate_b is None:
            raise ValueError("classical KTM needs both measurement rates")
        rates = ktm_dephasing_rates(p.grav_gradient, meas_rate_a, meas_rate_b, p.x_zpf_a, p.x_zpf_b)
        ops += [math.sqrt(rates[0]) * qa, math.sqrt(rates[1]) * qb]
    return QuadraticModel(n, G, np.array(ops) if ops else None, labels=("a", "b"))


def ktm_dephasing_rates(grav_gradient, meas_rate_a, meas_rate_b, x_zpf_a, x_zpf_b):
    return (
        ktm_dissipation(meas_rate_a, meas_rate_b, grav_gradient, x_zpf_a),
        ktm_dissipation(meas_rate_b, meas_rate_a, grav_gradient, x_zpf_b),
    )


def minimal_dephasing_rate(grav_gradient: float, x_zpf: float) -> float:
    return grav_gradient * x_zpf**2 / HBAR
