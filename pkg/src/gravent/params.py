"""Physical inputs, derived rates and couplings, and the gravity models.

All frequencies and rates are angular (rad/s). Conversion from Hz happens
once, at config ingest (see :mod:`gravent.config`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import ImaginaryFrequency, NonpositiveMeasurementRate, UnstablePump

# CODATA 2018, frozen so results are bit-reproducible across scipy versions.
HBAR = 1.054571817e-34  # J s
G_NEWTON = 6.67430e-11  # m^3 kg^-1 s^-2
K_BOLTZMANN = 1.380649e-23  # J/K

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class PhysicalConfig:
    """Raw experimental parameters. Rates in rad/s, SI otherwise."""

    sphere_mass: float
    sphere_radius: float
    center_distance: float
    density: float
    form_factor: float
    mech_freq_a: float
    mech_freq_b: float
    mech_damping_a: float
    mech_damping_b: float
    cavity_decay: float
    coupling_a: float
    coupling_b: float
    pump_plus: complex
    pump_minus: complex
    temperature: float
    nongrav_gradient: float = 0.0

    def __post_init__(self):
        positive = {
            "sphere_mass": self.sphere_mass,
            "sphere_radius": self.sphere_radius,
            "center_distance": self.center_distance,
            "density": self.density,
            "temperature": self.temperature,
            "cavity_decay": self.cavity_decay,
            "mech_freq_a": self.mech_freq_a,
            "mech_freq_b": self.mech_freq_b,
        }
        for name, value in positive.items():
            if not value > 0:
                raise ValueError(f"{name} must be strictly positive, got {value!r}")
        # touching spheres (d = 2R) are allowed
        if self.center_distance < 2 * self.sphere_radius * (1 - 1e-12):
            raise ValueError("spheres overlap: center_distance < 2 * sphere_radius")
        if self.mech_damping_a < 0 or self.mech_damping_b < 0:
            raise ValueError("mechanical damping rates must be non-negative")

    @property
    def mean_damping(self) -> float:
        return 0.5 * (self.mech_damping_a + self.mech_damping_b)


@dataclass(frozen=True)
class GravityModel:
    """Which gravity acts between the oscillators.

    ``kind`` is ``"quantum"``, ``"ktm"`` (KTM classical gravity with explicit
    measurement rates, in N/m) or ``"ktm-opt"`` (KTM at the optimal rates
    K_G/2, which minimise the added dissipation).
    """

    kind: str = "quantum"
    meas_rate_a: float | None = None
    meas_rate_b: float | None = None

    def __post_init__(self):
        if self.kind not in ("quantum", "ktm", "ktm-opt"):
            raise ValueError(f"unknown gravity model {self.kind!r}")
        if self.kind == "ktm":
            if self.meas_rate_a is None or self.meas_rate_b is None:
                raise ValueError("KTM gravity needs both measurement rates")
            if not (self.meas_rate_a > 0 and self.meas_rate_b > 0):
                raise NonpositiveMeasurementRate(
                    f"measurement rates must be > 0, got {self.meas_rate_a}, {self.meas_rate_b}"
                )

    @classmethod
    def quantum(cls) -> GravityModel:
        return cls("quantum")

    @classmethod
    def classical_ktm(cls, meas_rate_a: float, meas_rate_b: float) -> GravityModel:
        return cls("ktm", meas_rate_a, meas_rate_b)

    @classmethod
    def classical_optimal(cls) -> GravityModel:
        return cls("ktm-opt")

    @property
    def is_classical(self) -> bool:
        return self.kind != "quantum"

    def measurement_rates(self, grav_gradient: float) -> tuple[float, float] | None:
        """Resolved (Γ_a, Γ_b) in N/m, or None for quantum gravity."""
        if self.kind == "quantum":
            return None
        if self.kind == "ktm-opt":
            opt, _ = optimal_measurement_rate(grav_gradient)
            return opt, opt
        return self.meas_rate_a, self.meas_rate_b


@dataclass(frozen=True)
class DerivedParams:
    grav_gradient: float  # K_G, N/m
    total_gradient: float  # K_M, N/m
    omega_a_shifted: float
    omega_b_shifted: float
    omega_m: float
    detuning: float  # Ω = (ω'_a - ω'_b)/2
    x_zpf_a: float
    x_zpf_b: float
    k_g: float
    k_m: float
    nbar: float
    c_plus: complex
    c_minus: complex
    G_plus: float
    G_minus: float
    squeeze: float  # r
    eff_coupling: float  # 𝒢
    Gamma: float  # optomechanical damping 4𝒢²/κ
    kappa_g_a: float
    kappa_g_b: float
    gamma_a: float
    gamma_b: float
    kappa: float
    coupling_a: float
    coupling_b: float

    @property
    def gamma_m(self) -> float:
        return 0.5 * (self.gamma_a + self.gamma_b)

    @property
    def kappa_g(self) -> float:
        return 0.5 * (self.kappa_g_a + self.kappa_g_b)


def thermal_occupation(omega: float, temperature: float) -> float:
    """Bose-Einstein occupation 1/(exp(ħω/k_B T) - 1)."""
    if temperature == 0:
        return 0.0
    return 1.0 / math.expm1(HBAR * omega / (K_BOLTZMANN * temperature))


def gravitational_gradient(mass: float, distance: float) -> float:
    """Cross-gradient K_G = 2 G M² / d³ of two equal point masses."""
    return 2.0 * G_NEWTON * mass**2 / distance**3


def zero_point(mass: float, omega: float) -> float:
    return math.sqrt(HBAR / (2.0 * mass * omega))


def optimal_measurement_rate(grav_gradient: float, x_zpf: float | None = None):
    """Return (Γ_opt, κ_G,min). κ_G,min is None unless ``x_zpf`` is given."""
    opt = 0.5 * grav_gradient
    if x_zpf is None:
        return opt, None
    return opt, grav_gradient * x_zpf**2 / HBAR


def ktm_dissipation(meas_rate: float, meas_rate_other: float, grav_gradient: float, x_zpf: float) -> float:
    """KTM added dissipation rate [Γ_k/ħ + K_G²/(4ħΓ_j)]·x_zpf,k² for one mode."""
    if not (meas_rate > 0 and meas_rate_other > 0):
        raise NonpositiveMeasurementRate("measurement rates must be > 0")
    return (meas_rate + grav_gradient**2 / (4.0 * meas_rate_other)) * x_zpf**2 / HBAR


def grav_dissipation(
    grav_gradient: float, x_zpf_a: float, x_zpf_b: float, gravity: GravityModel
) -> tuple[float, float]:
    """(κ_G,a, κ_G,b) for the given gravity model; zeros for quantum gravity."""
    rates = gravity.measurement_rates(grav_gradient)
    if rates is None:
        return 0.0, 0.0
    ga, gb = rates
    return (
        ktm_dissipation(ga, gb, grav_gradient, x_zpf_a),
        ktm_dissipation(gb, ga, grav_gradient, x_zpf_b),
    )


def sideband_amplitude(pump: complex, omega_m: float, kappa: float, sign: int) -> complex:
    """Steady sideband field c̄± = iE±/(±iω_m − κ/2), pump phase chosen so c̄± > 0."""
    return complex(abs(pump) / abs(complex(-kappa / 2, sign * omega_m)), 0.0)


def derive(config: PhysicalConfig, gravity: GravityModel | None = None) -> DerivedParams:
    gravity = gravity or GravityModel.quantum()
    M = config.sphere_mass
    K_G = gravitational_gradient(M, config.center_distance)
    K_M = K_G + config.nongrav_gradient

    shifted = []
    for name, omega in (("a", config.mech_freq_a), ("b", config.mech_freq_b)):
        sq = omega**2 - K_M / M
        if sq <= 0:
            raise ImaginaryFrequency(f"mode {name}: K_M/M = {K_M / M:.3e} >= ω² = {omega**2:.3e}")
        shifted.append(math.sqrt(sq))
    wa, wb = shifted
    omega_m = 0.5 * (wa + wb)
    detuning = 0.5 * (wa - wb)

    xa = zero_point(M, wa)
    xb = zero_point(M, wb)

    if abs(config.pump_plus) >= abs(config.pump_minus):
        raise UnstablePump("|E+| must be smaller than |E-| for a real effective coupling")
    c_plus = sideband_amplitude(config.pump_plus, omega_m, config.cavity_decay, +1)
    c_minus = sideband_amplitude(config.pump_minus, omega_m, config.cavity_decay, -1)
    g_mean = 0.5 * (config.coupling_a + config.coupling_b)
    G_plus = g_mean * c_plus.real
    G_minus = g_mean * c_minus.real
    eff = math.sqrt(G_minus**2 - G_plus**2)
    Gamma = 4.0 * eff**2 / config.cavity_decay
    r = math.atanh(G_plus / G_minus) if G_minus > 0 else 0.0

    kga, kgb = grav_dissipation(K_G, xa, xb, gravity)

    return DerivedParams(
        grav_gradient=K_G,
        total_gradient=K_M,
        omega_a_shifted=wa,
        omega_b_shifted=wb,
        omega_m=omega_m,
        detuning=detuning,
        x_zpf_a=xa,
        x_zpf_b=xb,
        k_g=K_G * xa * xb / HBAR,
        k_m=K_M * xa * xb / HBAR,
        nbar=thermal_occupation(omega_m, config.temperature),
        c_plus=c_plus,
        c_minus=c_minus,
        G_plus=G_plus,
        G_minus=G_minus,
        squeeze=r,
        eff_coupling=eff,
        Gamma=Gamma,
        kappa_g_a=kga,
        kappa_g_b=kgb,
        gamma_a=config.mech_damping_a,
        gamma_b=config.mech_damping_b,
        kappa=config.cavity_decay,
        coupling_a=config.coupling_a,
        coupling_b=config.coupling_b,
    )


def decoherence_threshold(density: float, form_factor: float, temperature: float, omega_m: float):
    """Largest damping 2γ k_B T ≲ ħGΛρ allows for gravity-only entanglement.

    Returns ``(gamma_max, q_threshold)`` with ``q_threshold = omega_m / gamma_max``.
    """
    gamma_max = HBAR * G_NEWTON * form_factor * density / (2.0 * K_BOLTZMANN * temperature)
    return gamma_max, omega_m / gamma_max


def quality_factor(config: PhysicalConfig) -> float:
    p = center_frequency(config)
    return p / config.mean_damping


def center_frequency(config: PhysicalConfig) -> float:
    """ω_m, the mean of the gradient-shifted mechanical frequencies."""
    K_M = gravitational_gradient(config.sphere_mass, config.center_distance) + config.nongrav_gradient
    wa = math.sqrt(config.mech_freq_a**2 - K_M / config.sphere_mass)
    wb = math.sqrt(config.mech_freq_b**2 - K_M / config.sphere_mass)
    return 0.5 * (wa + wb)


def scale_for_quality_factor(base: PhysicalConfig, q_m: float) -> PhysicalConfig:
    """Config at quality factor ``q_m`` with γ_m/Γ held at the base value.

    Damping scales by Q_base/q_m and both pumps by the square root of that,
    since Γ ∝ |E|². Q_base = ω_m/mean(γ) of ``base``.
    """
    if not q_m > 0:
        raise ValueError("quality factor must be positive")
    factor = quality_factor(base) / q_m
    amp = math.sqrt(factor)
    return replace(
        base,
        mech_damping_a=base.mech_damping_a * factor,
        mech_damping_b=base.mech_damping_b * factor,
        pump_plus=base.pump_plus * amp,
        pump_minus=base.pump_minus * amp,
    )


def with_coupling_ratio(p: DerivedParams, ratio: float) -> DerivedParams:
    """``p`` with K_others = ratio · K_G entering only through k_M.

    Frequencies, occupations and optomechanical rates stay at the values in
    ``p``; the gradient's frequency pull is far below anything else resolved.
    """
    K_M = p.grav_gradient * (1.0 + ratio)
    return replace(p, total_gradient=K_M, k_m=K_M * p.x_zpf_a * p.x_zpf_b / HBAR)


def with_nongrav_ratio(base: PhysicalConfig, ratio: float) -> PhysicalConfig:
    """Config with K_others = ratio · K_G."""
    K_G = gravitational_gradient(base.sphere_mass, base.center_distance)
    return replace(base, nongrav_gradient=ratio * K_G)
