"""Analytic steady state of the symmetric effective model.

Exact second moments, the small-damping log-negativity expansion and the
first-order quantum/classical gap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

import numpy as np

from .errors import ConjugationViolation, DegenerateDenominator, ZeroDetuning
from .gaussian import CovarianceMatrix
from .params import DerivedParams

LOG_FLOOR = 1e-300


@dataclass(frozen=True)
class SymmetricRates:
    gamma_m: float
    Gamma: float
    nbar: float
    kappa_g: float
    detuning: float
    k_m: float
    squeeze: float

    def __post_init__(self):
        for name in ("gamma_m", "Gamma", "nbar", "kappa_g"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")

    @classmethod
    def from_derived(cls, p: DerivedParams, kappa_g: float | None = None) -> SymmetricRates:
        """Mean rates of ``p``; κ_G defaults to the value stored in ``p``."""
        return cls(
            gamma_m=p.gamma_m,
            Gamma=p.Gamma,
            nbar=p.nbar,
            kappa_g=p.kappa_g if kappa_g is None else kappa_g,
            detuning=p.detuning,
            k_m=p.k_m,
            squeeze=p.squeeze,
        )


@dataclass(frozen=True)
class SecondMoments:
    aa: complex  # <a²>
    bb: complex
    adad: complex  # <a†²>
    bdbd: complex
    abd: complex  # <a b†>
    adb: complex  # <a† b>
    ada: complex  # <a† a>
    ab: complex
    bdb: complex
    adbd: complex  # <a† b†>

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def check_conjugation(self, tol: float = 1e-10) -> None:
        scale = max(max(abs(v) for v in self.as_dict().values()), 1.0)
        pairs = ((self.aa, self.adad), (self.bb, self.bdbd), (self.abd, self.adb), (self.ab, self.adbd))
        bad = max(abs(x - np.conj(y)) for x, y in pairs)
        bad = max(bad, abs(np.imag(self.ada)), abs(np.imag(self.bdb)))
        if bad > tol * scale:
            raise ConjugationViolation(f"moments are not conjugate-paired (error {bad:.3e})")


def moments_closed_form(rates: SymmetricRates) -> SecondMoments:
    gm, Gam, nbar, kg = rates.gamma_m, rates.Gamma, rates.nbar, rates.kappa_g
    Om, k, r = rates.detuning, rates.k_m, rates.squeeze
    A = (gm + Gam) ** 2 + 4.0 * (Om**2 + k**2)
    den = gm * (gm + 2.0 * Gam) * A + 4.0 * Gam**2 * Om**2
    if not den > 0:
        raise DegenerateDenominator("γ_m(γ_m + 2Γ)A + 4Γ²Ω² vanishes")
    s2 = math.sinh(2.0 * r)
    sh2 = math.sinh(r) ** 2
    # shared denominator of the anomalous moments
    anom = 2.0 * (gm + Gam) * (Gam**2 + 4j * k * Gam - A)

    aa = (gm + Gam - 2j * Om) * (gm - 2j * k) * Gam * s2 / anom
    bb = (gm + Gam + 2j * Om) * (gm - 2j * k) * Gam * s2 / anom
    ab = ((gm + Gam) * (gm - 2j * k) + 4.0 * Om**2) * Gam * s2 / anom

    source = (nbar - sh2) * gm + 2.0 * kg
    abd = -Gam * ((gm + Gam) * (gm + Gam - 2j * Om) + 4.0 * k**2) * source / den
    adb = -Gam * ((gm + Gam) * (gm + Gam + 2j * Om) + 4.0 * k**2) * source / den

    heat = nbar * gm + 2.0 * kg
    ada = (heat * ((gm + Gam) * A - 4.0 * Gam * Om * k) + (gm * A + 4.0 * Om * (Gam * Om + k * gm)) * Gam * sh2) / den
    bdb = (heat * ((gm + Gam) * A + 4.0 * Gam * Om * k) + (gm * A + 4.0 * Om * (Gam * Om - k * gm)) * Gam * sh2) / den

    return SecondMoments(
        aa=complex(aa),
        bb=complex(bb),
        adad=complex(np.conj(aa)),
        bdbd=complex(np.conj(bb)),
        abd=complex(abd),
        adb=complex(adb),
        ada=complex(ada),
        ab=complex(ab),
        bdb=complex(bdb),
        adbd=complex(np.conj(ab)),
    )


def moments_to_covariance(m: SecondMoments, tol: float = 1e-10) -> CovarianceMatrix:
    """Quadrature covariance (X_a, P_a, X_b, P_b) of zero-mean moments."""
    m.check_conjugation(tol)
    V = np.zeros((4, 4))
    for j, sq, n in ((0, m.aa, m.ada), (2, m.bb, m.bdb)):
        V[j, j] = sq.real + n.real + 0.5
        V[j + 1, j + 1] = -sq.real + n.real + 0.5
        V[j, j + 1] = V[j + 1, j] = sq.imag
    V[0, 2] = m.ab.real + m.adb.real
    V[1, 3] = -m.ab.real + m.adb.real
    V[0, 3] = m.ab.imag + m.adb.imag
    V[1, 2] = m.ab.imag - m.adb.imag
    for i, j in ((0, 2), (1, 3), (0, 3), (1, 2)):
        V[j, i] = V[i, j]
    return CovarianceMatrix(V)


def moments_from_covariance(V: CovarianceMatrix) -> SecondMoments:
    M = V.matrix
    aa = (M[0, 0] - M[1, 1]) / 2 + 1j * M[0, 1]
    bb = (M[2, 2] - M[3, 3]) / 2 + 1j * M[2, 3]
    ab = ((M[0, 2] - M[1, 3]) + 1j * (M[0, 3] + M[1, 2])) / 2
    adb = ((M[0, 2] + M[1, 3]) + 1j * (M[0, 3] - M[1, 2])) / 2
    return SecondMoments(
        aa=aa,
        bb=bb,
        adad=np.conj(aa),
        bdbd=np.conj(bb),
        abd=np.conj(adb),
        adb=adb,
        ada=complex((M[0, 0] + M[1, 1]) / 2 - 0.5),
        ab=ab,
        bdb=complex((M[2, 2] + M[3, 3]) / 2 - 0.5),
        adbd=np.conj(ab),
    )


def _xi(rates: SymmetricRates) -> float:
    return (2.0 * rates.nbar + 1.0) * rates.gamma_m + 4.0 * rates.kappa_g


def coupling_coefficient(rates: SymmetricRates) -> float:
    """Coefficient of (k_M/Ω)² inside the logarithm of the small-damping E_N."""
    gm, Gam, r = rates.gamma_m, rates.Gamma, rates.squeeze
    xi = _xi(rates)
    eta_aux = gm**2 + 4.0 * gm * Gam + 2.0 * Gam**2
    bracket = (
        Gam * (4.0 * xi**2 + gm**2 + Gam**2)
        + (xi + gm) ** 2 * (xi - Gam) * math.tanh(r)
        - (xi - gm) ** 2 * (xi + Gam) / math.tanh(r)
        + 2.0 * xi * (eta_aux * math.sinh(2 * r) - 2.0 * gm * Gam * math.exp(-2 * r) + 2.0 * Gam**2 * math.cosh(2 * r))
        + Gam * (Gam**2 * math.cosh(4 * r) - eta_aux * math.exp(-4 * r))
    )
    return Gam / (4.0 * (gm + Gam) ** 3 * (xi + Gam * math.cosh(2 * r))) * bracket


def approx_log_negativity(rates: SymmetricRates) -> float:
    """Small-damping expansion of E_N, clamped at zero."""
    if rates.detuning == 0:
        raise ZeroDetuning("the expansion divides by the detuning Ω")
    gm, Gam, r = rates.gamma_m, rates.Gamma, rates.squeeze
    lead = (_xi(rates) + Gam * math.exp(-2 * r)) / (gm + Gam)
    arg = lead
    if rates.k_m != 0:
        arg += coupling_coefficient(rates) * (rates.k_m / rates.detuning) ** 2
    return max(0.0, -math.log(max(arg, LOG_FLOOR)))


def gap_approx(rates: SymmetricRates) -> float:
    """First-order E_N,q − E_N,c: 4κ_G/[(2n̄+1)γ_m + Γe^{−2r}]."""
    return 4.0 * rates.kappa_g / ((2.0 * rates.nbar + 1.0) * rates.gamma_m + rates.Gamma * math.exp(-2.0 * rates.squeeze))
