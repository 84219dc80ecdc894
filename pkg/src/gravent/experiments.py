"""Sweeps over quality factor and non-gravitational coupling, and the
decoherence-threshold report.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass, replace
from pathlib import Path

import numpy as np
from scipy.optimize import brentq

from . import closedform, gaussian, models
from .errors import GraventError
from .params import (
    TWO_PI,
    GravityModel,
    PhysicalConfig,
    center_frequency,
    decoherence_threshold,
    derive,
    scale_for_quality_factor,
    with_coupling_ratio,
    with_nongrav_ratio,
)

CSV_COLUMNS = (
    "sweep_var",
    "en_quantum",
    "en_classical",
    "gap",
    "gap_approx",
    "ratio_r",
    "gamma_m",
    "Gamma",
    "status",
)

DEFAULT_QM_GRID = tuple(np.logspace(6, 20, 60))
DEFAULT_RATIO_GRID = tuple(np.logspace(-1, 7, 50))


@dataclass(frozen=True)
class SweepRecord:
    sweep_var: float
    en_quantum: float = math.nan
    en_classical: float = math.nan
    gap: float = math.nan
    gap_approx: float = math.nan
    ratio_r: float = math.nan
    gamma_m: float = math.nan
    Gamma: float = math.nan
    squeeze: float = math.nan
    status: str = "ok"

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def row(self) -> dict:
        d = asdict(self)
        return {k: d[k] for k in CSV_COLUMNS}


def steady_log_negativity(config: PhysicalConfig, gravity: GravityModel, model: str = "two-mode") -> float:
    p = derive(config, gravity)
    if model == "two-mode":
        V = gaussian.steady_covariance(models.effective_two_mode(p, gravity))
    elif model == "three-mode":
        V = models.mechanical_block(gaussian.steady_covariance(models.three_mode_linearized(p, gravity)))
    else:
        raise ValueError(f"unknown model {model!r}")
    return gaussian.log_negativity(V)


def _failed(x: float, exc: Exception) -> SweepRecord:
    return SweepRecord(sweep_var=float(x), status=f"{type(exc).__name__}: {exc}")


def _qm_point(args) -> SweepRecord:
    base, q_m, classical = args
    try:
        cfg = scale_for_quality_factor(base, q_m)
        p = derive(cfg, classical)
        en_q = steady_log_negativity(cfg, GravityModel.quantum())
        en_c = steady_log_negativity(cfg, classical)
        rates = closedform.SymmetricRates.from_derived(p)
        return SweepRecord(
            sweep_var=float(q_m),
            en_quantum=en_q,
            en_classical=en_c,
            gap=en_q - en_c,
            gap_approx=closedform.gap_approx(rates),
            gamma_m=p.gamma_m,
            Gamma=p.Gamma,
            squeeze=p.squeeze,
        )
    except GraventError as exc:
        return _failed(q_m, exc)


def _run(fn, jobs, executor):
    mapper = map if executor is None else executor.map
    # map preserves input order, so output order never depends on completion
    return list(mapper(fn, jobs))


def sweep_quality_factor(
    base: PhysicalConfig,
    qm_grid=DEFAULT_QM_GRID,
    classical: GravityModel | None = None,
    executor=None,
) -> list[SweepRecord]:
    """E_N under both gravity models along Q_m, keeping γ_m/Γ fixed."""
    classical = classical or GravityModel.classical_optimal()
    grid = sorted(float(q) for q in qm_grid)
    if any(not q > 0 for q in grid):
        raise ValueError("quality factors must be positive")
    return _run(_qm_point, [(base, q, classical) for q in grid], executor)


def _entanglement_from(p, gravity: GravityModel) -> float:
    return gaussian.log_negativity(gaussian.steady_covariance(models.effective_two_mode(p, gravity)))


def _coupling_point(args) -> SweepRecord:
    base, ratio, classical, numerator, ref, hold = args
    en_q0, en_c0 = ref
    try:
        if hold:
            pq = with_coupling_ratio(derive(base, GravityModel.quantum()), ratio)
            pc = with_coupling_ratio(derive(base, classical), ratio)
        else:
            cfg = with_nongrav_ratio(base, ratio)
            pq, pc = derive(cfg, GravityModel.quantum()), derive(cfg, classical)
        en_q = _entanglement_from(pq, GravityModel.quantum())
        en_c = _entanglement_from(pc, classical)
        shift = en_q - en_q0 if numerator == "quantum" else en_c - en_c0
        return SweepRecord(
            sweep_var=float(ratio),
            en_quantum=en_q,
            en_classical=en_c,
            gap=en_q - en_c,
            gap_approx=closedform.gap_approx(closedform.SymmetricRates.from_derived(pc)),
            ratio_r=shift / (en_q0 - en_c0),
            gamma_m=pc.gamma_m,
            Gamma=pc.Gamma,
            squeeze=pc.squeeze,
        )
    except GraventError as exc:
        return _failed(ratio, exc)


def sweep_nongrav_coupling(
    base: PhysicalConfig,
    ratio_grid=DEFAULT_RATIO_GRID,
    classical: GravityModel | None = None,
    numerator: str = "quantum",
    hold_frequencies: bool = True,
    executor=None,
) -> list[SweepRecord]:
    """R = (E_N − E_N at k_others = 0)/(E_N,q − E_N,c at k_others = 0) versus k_others/k_G.

    ``numerator`` picks which gravity model's E_N enters the numerator. With
    ``hold_frequencies`` the extra gradient changes only k_M; otherwise the
    whole parameter set is re-derived, frequency pull included.
    """
    if numerator not in ("quantum", "classical"):
        raise ValueError("numerator must be 'quantum' or 'classical'")
    classical = classical or GravityModel.classical_optimal()
    grid = sorted(float(x) for x in ratio_grid)
    if any(x < 0 for x in grid):
        raise ValueError("coupling ratios must be non-negative")
    base = with_nongrav_ratio(base, 0.0)
    ref = (
        _entanglement_from(derive(base, GravityModel.quantum()), GravityModel.quantum()),
        _entanglement_from(derive(base, classical), classical),
    )
    jobs = [(base, x, classical, numerator, ref, hold_frequencies) for x in grid]
    return _run(_coupling_point, jobs, executor)


def ratio_crossing(
    base: PhysicalConfig,
    level: float = 1.0,
    bracket: tuple[float, float] = (1e3, 1e7),
    classical: GravityModel | None = None,
) -> float:
    """Coupling ratio at which |R| first reaches ``level``, by root finding in log ratio."""

    def excess(log_ratio):
        rec = sweep_nongrav_coupling(base, [math.exp(log_ratio)], classical=classical)[0]
        if not rec.ok:
            raise GraventError(rec.status)
        return abs(rec.ratio_r) - level

    lo, hi = (math.log(b) for b in bracket)
    return math.exp(brentq(excess, lo, hi, xtol=1e-10))


def adiabatic_comparison(p, kappa_factors=(1, 10, 100, 1000), hold: str = "coupling", gravity=None):
    """E_N of the effective and three-mode models as κ is scaled.

    ``hold="coupling"`` keeps 𝒢 (so Γ = 4𝒢²/κ falls); ``hold="damping"``
    scales g by √factor so that Γ stays put. Returns ``(factor, en_two, en_three)`` rows.
    """
    gravity = gravity or GravityModel.quantum()
    rows = []
    for f in kappa_factors:
        kappa = p.kappa * f
        if hold == "coupling":
            q = replace(p, kappa=kappa, Gamma=4.0 * p.eff_coupling**2 / kappa)
        elif hold == "damping":
            s = math.sqrt(f)
            q = replace(p, kappa=kappa, coupling_a=p.coupling_a * s, coupling_b=p.coupling_b * s, eff_coupling=p.eff_coupling * s)
        else:
            raise ValueError("hold must be 'coupling' or 'damping'")
        two = gaussian.log_negativity(gaussian.steady_covariance(models.effective_two_mode(q, gravity)))
        three = gaussian.log_negativity(
            models.mechanical_block(gaussian.steady_covariance(models.three_mode_linearized(q, gravity)))
        )
        rows.append((f, two, three))
    return rows


@dataclass(frozen=True)
class ThresholdReport:
    gamma_max: float  # rad/s
    q_threshold: float
    gamma_m: float
    q_m: float
    passes: bool

    @property
    def gamma_max_hz(self) -> float:
        return self.gamma_max / TWO_PI

    def lines(self) -> list[str]:
        verdict = "below" if self.passes else "above"
        return [
            f"gamma_max      = {self.gamma_max:.4e} rad/s ({self.gamma_max_hz:.4e} Hz)",
            f"Q_threshold    = {self.q_threshold:.4e}",
            f"config gamma_m = {self.gamma_m:.4e} rad/s (Q_m = {self.q_m:.4e})",
            f"config damping is {verdict} the gravity-only threshold",
        ]


def threshold_report(base: PhysicalConfig) -> ThresholdReport:
    """Damping bound for entanglement by gravity alone, and where ``base`` sits."""
    omega_m = center_frequency(base)
    gamma_max, q_thr = decoherence_threshold(base.density, base.form_factor, base.temperature, omega_m)
    gm = base.mean_damping
    return ThresholdReport(
        gamma_max=gamma_max,
        q_threshold=q_thr,
        gamma_m=gm,
        q_m=omega_m / gm if gm > 0 else math.inf,
        passes=gm <= gamma_max,
    )


def write_csv(records, path_or_stream) -> None:
    """Fixed columns ``CSV_COLUMNS``; floats written with full precision."""
    if hasattr(path_or_stream, "write"):
        _write_rows(records, path_or_stream)
        return
    with open(path_or_stream, "w", newline="") as fh:
        _write_rows(records, fh)


def _write_rows(records, fh) -> None:
    w = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
    w.writeheader()
    for rec in records:
        w.writerow({k: repr(v) if isinstance(v, float) else v for k, v in rec.row().items()})


def read_csv(path) -> list[SweepRecord]:
    out = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            kw = {k: (row[k] if k == "status" else float(row[k])) for k in CSV_COLUMNS}
            out.append(SweepRecord(**kw))
    return out


def write_json(records, path) -> None:
    rows = []
    for rec in records:
        # JSON has no NaN; failed or unused fields become null
        rows.append({k: (None if isinstance(v, float) and math.isnan(v) else v) for k, v in rec.row().items()})
    Path(path).write_text(json.dumps({"columns": list(CSV_COLUMNS), "rows": rows}, indent=1))


def write_table(records, path) -> None:
    if str(path).endswith(".json"):
        write_json(records, path)
    else:
        write_csv(records, path)


def plot_svg(records, path, y: str = "gap", xlabel: str = "sweep variable") -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    xs = np.array([r.sweep_var for r in records if r.ok])
    ys = np.array([getattr(r, y) for r in records if r.ok])
    keep = (xs > 0) & (np.abs(ys) > 0)
    fig, ax = plt.subplots(figsize=(5, 3.6))
    ax.loglog(xs[keep], np.abs(ys[keep]), "-o", ms=3)
    if y == "gap":
        approx = np.array([r.gap_approx for r in records if r.ok])
        ax.loglog(xs[keep], approx[keep], "--", lw=1, label="first-order estimate")
        ax.legend()
    ax.set_xlabel(xlabel)
    ax.set_ylabel(f"|{y}|" if y == "ratio_r" else y)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


def loglog_slope(records, lo: float, hi: float) -> float:
    """Least-squares slope of log(gap) against log(sweep_var) on [lo, hi].

    Points with gap <= 0 have no logarithm; they make the fit fail loudly
    (nan) instead of being silently dropped.
    """
    pts = [(r.sweep_var, r.gap) for r in records if r.ok and lo <= r.sweep_var <= hi]
    if len(pts) < 2:
        return math.nan
    x = np.log([p[0] for p in pts])
    gaps = np.array([p[1] for p in pts])
    if np.any(gaps <= 0):
        return math.nan
    return float(np.polyfit(x, np.log(gaps), 1)[0])

