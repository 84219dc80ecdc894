"""Damping threshold for gravity-dominated entanglement at a given config."""

import argparse

from gravent import config, experiments


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--config", default="paper_defaults")
    args = ap.parse_args()
    for line in experiments.threshold_report(config.load(args.config)).lines():
        print(line)


if __name__ == "__main__":
    main()
