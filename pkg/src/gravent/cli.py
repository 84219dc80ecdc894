"""Command-line entry point: ``gravent <subcommand> <config> ...``.

``<config>`` is a TOML file or the literal ``paper_defaults``.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys

import numpy as np

from . import config as configmod
from . import experiments, gaussian, models
from .errors import ConfigError, GraventError
from .params import GravityModel, derive, gravitational_gradient

EXIT_CONFIG = 2
EXIT_MODEL = 3


def _gravity(args, cfg) -> GravityModel:
    if args.gravity == "quantum":
        return GravityModel.quantum()
    if args.gravity == "ktm-opt":
        return GravityModel.classical_optimal()
    K_G = gravitational_gradient(cfg.sphere_mass, cfg.center_distance)
    return GravityModel.classical_ktm(args.meas_rate_a * K_G, args.meas_rate_b * K_G)


def _parse_grid(text: str | None, default):
    """``start:stop:num`` (log-spaced) or a comma-separated list."""
    if text is None:
        return default
    if ":" in text:
        start, stop, num = text.split(":")
        return tuple(np.logspace(np.log10(float(start)), np.log10(float(stop)), int(num)))
    return tuple(float(v) for v in text.split(","))


def cmd_derive(args, cfg) -> int:
    p = derive(cfg, _gravity(args, cfg))
    for f in dataclasses.fields(p):
        v = getattr(p, f.name)
        if isinstance(v, complex):
            v = v.real if v.imag == 0 else v
        print(f"{f.name:16s} = {v:.10g}")
    print(f"{'gamma_m':16s} = {p.gamma_m:.10g}")
    print(f"{'kappa_g':16s} = {p.kappa_g:.10g}")
    return 0


def cmd_steady(args, cfg) -> int:
    gravity = _gravity(args, cfg)
    p = derive(cfg, gravity)
    if args.model == "two-mode":
        V = gaussian.steady_covariance(models.effective_two_mode(p, gravity))
    else:
        V = models.mechanical_block(gaussian.steady_covariance(models.three_mode_linearized(p, gravity)))
    with np.printoptions(precision=12, linewidth=120):
        print("V (X_a, P_a, X_b, P_b) =")
        print(V.matrix)
    print(f"E_N = {gaussian.log_negativity(V):.12g}")
    return 0


def _emit(records, args, y, xlabel) -> None:
    if args.out:
        experiments.write_table(records, args.out)
    else:
        experiments.write_csv(records, sys.stdout)
    if args.plot:
        experiments.plot_svg(records, args.plot, y=y, xlabel=xlabel)


def cmd_sweep_qm(args, cfg) -> int:
    grid = _parse_grid(args.grid, experiments.DEFAULT_QM_GRID)
    records = experiments.sweep_quality_factor(cfg, grid, classical=_gravity(args, cfg))
    _emit(records, args, "gap", "Q_m")
    return 0


def cmd_sweep_coupling(args, cfg) -> int:
    grid = _parse_grid(args.grid, experiments.DEFAULT_RATIO_GRID)
    records = experiments.sweep_nongrav_coupling(
        cfg,
        grid,
        classical=_gravity(args, cfg),
        numerator=args.numerator,
        hold_frequencies=not args.rederive,
    )
    _emit(records, args, "ratio_r", "k_others / k_G")
    return 0


def cmd_threshold(args, cfg) -> int:
    for line in experiments.threshold_report(cfg).lines():
        print(line)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gravent", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, gravity_default="quantum"):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("config", help="TOML config path or 'paper_defaults'")
        sp.add_argument(
            "--gravity",
            choices=("quantum", "classical", "ktm-opt"),
            default=gravity_default,
            help="'classical' uses --meas-rate-a/b; 'ktm-opt' the optimal rates",
        )
        sp.add_argument("--meas-rate-a", type=float, default=0.5, help="KTM rate in units of K_G")
        sp.add_argument("--meas-rate-b", type=float, default=0.5, help="KTM rate in units of K_G")
        sp.set_defaults(func=fn)
        return sp

    add("derive", cmd_derive, "print derived rates and couplings")
    sp = add("steady", cmd_steady, "print the steady covariance and E_N")
    sp.add_argument("--model", choices=("two-mode", "three-mode"), default="two-mode")

    for name, fn, help_ in (
        ("sweep-qm", cmd_sweep_qm, "gap between gravity models versus Q_m"),
        ("sweep-coupling", cmd_sweep_coupling, "ratio R versus k_others/k_G"),
    ):
        sp = add(name, fn, help_, gravity_default="ktm-opt")
        sp.add_argument("--grid", help="start:stop:num (log-spaced) or comma list")
        sp.add_argument("--out", help="output table (.csv or .json); stdout CSV if omitted")
        sp.add_argument("--plot", help="optional SVG path")
        if name == "sweep-coupling":
            sp.add_argument("--numerator", choices=("quantum", "classical"), default="quantum")
            sp.add_argument("--rederive", action="store_true", help="let k_others also pull the frequencies")

    add("threshold", cmd_threshold, "decoherence threshold on the damping rate")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = configmod.load(args.config)
    except (ConfigError, OSError) as exc:
        print(f"gravent: cannot load config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return args.func(args, cfg)
    except GraventError as exc:
        print(f"gravent: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MODEL


if __name__ == "__main__":
    sys.exit(main())
