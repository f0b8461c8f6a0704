#!/usr/bin/env python3
"""Rescaled rectangle counts vs the Monte-Carlo limiting measure."""

import argparse

from measureboost.recipes import run_experiment


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="out/limit-check")
    ap.add_argument("--setup", choices=["square", "circle"], default="square")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rows = run_experiment(
        "limit-check",
        overrides={
            ("output", "dir"): args.outdir,
            ("setup", "name"): args.setup,
            ("seeds", "base"): args.seed,
        },
    )
    for row in rows:
        print(row)


if __name__ == "__main__":
    main()
