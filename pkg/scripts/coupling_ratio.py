"""Sensitivity ratio R versus non-gravitational coupling k_others/k_G."""

import argparse
from pathlib import Path

from gravent import config, experiments


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--config", default="paper_defaults")
    ap.add_argument("--out", default="results")
    ap.add_argument("--rederive", action="store_true", help="let the extra gradient shift the frequencies too")
    args = ap.parse_args()

    base = config.load(args.config)
    records = experiments.sweep_nongrav_coupling(
        base, experiments.DEFAULT_RATIO_GRID, hold_frequencies=not args.rederive
    )
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    experiments.write_table(records, out / "coupling_ratio.csv")
    try:
        experiments.plot_svg(records, out / "coupling_ratio.svg", y="ratio_r", xlabel="k_others / k_G")
    except ImportError:
        pass

    print(f"|R| = 1 at k_others/k_G = {experiments.ratio_crossing(base):.4g}")


if __name__ == "__main__":
    main()
