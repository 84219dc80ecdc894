"""Entanglement gap between quantum and classical gravity versus Q_m.

Writes results/gap_vs_quality.csv and, if matplotlib is available, an SVG.
"""

import argparse
from pathlib import Path

from gravent import config, experiments


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--config", default="paper_defaults")
    ap.add_argument("--out", default="results")
    args = ap.parse_args()

    base = config.load(args.config)
    records = experiments.sweep_quality_factor(base, experiments.DEFAULT_QM_GRID)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    experiments.write_table(records, out / "gap_vs_quality.csv")
    try:
        experiments.plot_svg(records, out / "gap_vs_quality.svg", y="gap", xlabel="Q_m")
    except ImportError:
        pass

    print(f"slope over [1e10, 1e14]: {experiments.loglog_slope(records, 1e10, 1e14):.3f}")
    print(f"slope over [1e8, 1e14]:  {experiments.loglog_slope(records, 1e8, 1e14):.3f}")
    print(f"gap at Q_m = {records[-1].sweep_var:.1e}: {records[-1].gap:.4f}")


if __name__ == "__main__":
    main()
