import math
from dataclasses import replace

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gravent.errors import ImaginaryFrequency, NonpositiveMeasurementRate, UnstablePump
from gravent.params import (
    HBAR,
    TWO_PI,
    GravityModel,
    center_frequency,
    decoherence_threshold,
    derive,
    grav_dissipation,
    gravitational_gradient,
    ktm_dissipation,
    optimal_measurement_rate,
    quality_factor,
    scale_for_quality_factor,
    thermal_occupation,
    with_coupling_ratio,
    with_nongrav_ratio,
)


def test_reference_point_frozen(ref_quantum):
    # independent scratch computation, frozen
    p = ref_quantum
    assert p.grav_gradient == pytest.approx(1.80473072e-12, rel=1e-8)
    assert p.x_zpf_a == pytest.approx(3.57532712e-16, rel=1e-8)
    assert p.k_g == pytest.approx(2.209585982e-9, rel=1e-8)
    assert p.nbar == pytest.approx(4.167323327e6, rel=1e-8)
    assert p.squeeze == pytest.approx(0.5493061443, rel=1e-9)
    assert p.Gamma == pytest.approx(0.7563799276, rel=1e-9)
    assert p.detuning == pytest.approx(math.pi, rel=1e-9)
    assert p.omega_m == pytest.approx(TWO_PI * 50, rel=1e-9)


def test_table_values_roughly(ref_quantum):
    p = ref_quantum
    assert p.c_plus.real == pytest.approx(0.3, abs=0.05)
    assert p.c_minus.real == pytest.approx(0.6, abs=0.05)
    assert p.G_plus == pytest.approx(2.0, abs=0.05)
    assert p.G_minus == pytest.approx(4.0, abs=0.05)
    assert p.eff_coupling == pytest.approx(3.4, abs=0.05)
    assert p.Gamma == pytest.approx(0.76, abs=0.01)
    assert p.squeeze == pytest.approx(0.55, rel=0.02)
    assert p.x_zpf_a == pytest.approx(3.6e-16, rel=0.02)
    assert p.grav_gradient == pytest.approx(1.7e-12, rel=0.1)


def test_internal_consistency(ref_quantum):
    p = ref_quantum
    assert p.eff_coupling**2 == pytest.approx(p.G_minus**2 - p.G_plus**2, rel=1e-14)
    assert p.Gamma == pytest.approx(4 * p.eff_coupling**2 / p.kappa, rel=1e-14)
    assert math.tanh(p.squeeze) == pytest.approx(p.G_plus / p.G_minus, rel=1e-14)


def test_thermal_occupation_limits():
    assert thermal_occupation(1.0, 0.0) == 0.0
    # high temperature: n ≈ k_B T / ħω
    n = thermal_occupation(TWO_PI * 50, 0.01)
    assert n == pytest.approx(1.380649e-23 * 0.01 / (HBAR * TWO_PI * 50) - 0.5, rel=1e-6)


def test_classical_rates_at_optimum(ref_config, ref_quantum):
    p = ref_quantum
    opt, kmin = optimal_measurement_rate(p.grav_gradient, p.x_zpf_a)
    assert opt == p.grav_gradient / 2
    kga, _ = grav_dissipation(p.grav_gradient, p.x_zpf_a, p.x_zpf_b, GravityModel.classical_optimal())
    assert kga == pytest.approx(kmin, rel=1e-14)
    same = GravityModel.classical_ktm(opt, opt)
    assert grav_dissipation(p.grav_gradient, p.x_zpf_a, p.x_zpf_b, same) == (
        grav_dissipation(p.grav_gradient, p.x_zpf_a, p.x_zpf_b, GravityModel.classical_optimal())
    )


@given(st.floats(1e-3, 1e3))
def test_ktm_rate_minimised_at_half_gradient(scale):
    K, x = 1.8e-12, 3.6e-16
    best = ktm_dissipation(K / 2, K / 2, K, x)
    assert ktm_dissipation(scale * K / 2, scale * K / 2, K, x) >= best * (1 - 1e-12)


def test_measurement_rate_must_be_positive():
    with pytest.raises(NonpositiveMeasurementRate):
        GravityModel.classical_ktm(0.0, 1.0)
    with pytest.raises(NonpositiveMeasurementRate):
        ktm_dissipation(-1.0, 1.0, 1.0, 1.0)


def test_imaginary_frequency(ref_config):
    huge = ref_config.sphere_mass * ref_config.mech_freq_a**2 * 2
    with pytest.raises(ImaginaryFrequency):
        derive(replace(ref_config, nongrav_gradient=huge))


def test_pump_ordering(ref_config):
    with pytest.raises(UnstablePump):
        derive(replace(ref_config, pump_plus=300.0))


def test_gravitational_gradient():
    assert gravitational_gradient(1.0, 1.0) == pytest.approx(2 * 6.67430e-11)


def test_threshold_linear_in_temperature(ref_config):
    w = center_frequency(ref_config)
    g1, q1 = decoherence_threshold(19300, math.pi / 3, 0.01, w)
    g2, q2 = decoherence_threshold(19300, math.pi / 3, 0.02, w)
    assert q2 == pytest.approx(2 * q1, rel=1e-14)
    assert g1 / TWO_PI == pytest.approx(8.1993e-17, rel=1e-4)


@given(st.floats(1e6, 1e20))
def test_quality_scaling_keeps_damping_ratio(ref_config, q):
    base = derive(ref_config)
    p = derive(scale_for_quality_factor(ref_config, q))
    assert p.gamma_m / p.Gamma == pytest.approx(base.gamma_m / base.Gamma, rel=1e-9)
    assert quality_factor(scale_for_quality_factor(ref_config, q)) == pytest.approx(q, rel=1e-12)
    assert p.squeeze == pytest.approx(base.squeeze, rel=1e-12)


def test_quality_scaling_fixed_point(ref_config):
    q0 = quality_factor(ref_config)
    assert scale_for_quality_factor(ref_config, q0) == ref_config


def test_coupling_ratio_only_changes_k_m(ref_config, ref_quantum):
    p = with_coupling_ratio(ref_quantum, 1e4)
    assert p.k_m == pytest.approx(1e4 * ref_quantum.k_g + ref_quantum.k_g, rel=1e-12)
    assert p.nbar == ref_quantum.nbar and p.detuning == ref_quantum.detuning
    full = derive(with_nongrav_ratio(ref_config, 1e4))
    assert full.k_m == pytest.approx(p.k_m, rel=1e-6)


def test_overlapping_spheres_rejected(ref_config):
    with pytest.raises(ValueError):
        replace(ref_config, center_distance=0.4e-3)
