"""Steady-state entanglement of two reservoir-engineered oscillators coupled
by gravity, under quantum gravity and under KTM classical gravity.
"""

from .closedform import (
    SecondMoments,
    SymmetricRates,
    approx_log_negativity,
    gap_approx,
    moments_closed_form,
    moments_from_covariance,
    moments_to_covariance,
)
from .config import load, loads, paper_defaults
from .errors import GraventError
from .experiments import (
    SweepRecord,
    ratio_crossing,
    sweep_nongrav_coupling,
    sweep_quality_factor,
    threshold_report,
)
from .gaussian import (
    CovarianceMatrix,
    DriftDiffusion,
    QuadraticModel,
    assemble,
    log_negativity,
    steady_covariance,
    steady_state,
    symplectic_eigenvalues,
)
from .models import ModelKind, effective_two_mode, ktm_bare, three_mode_linearized
from .params import (
    DerivedParams,
    GravityModel,
    PhysicalConfig,
    decoherence_threshold,
    derive,
    scale_for_quality_factor,
)

__version__ = "0.1.0"
