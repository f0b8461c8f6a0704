#!/usr/bin/env python3
"""Five-class chaotic-orbit classification (reduced scale: 300-point orbits)."""

import argparse

from measureboost.recipes import run_experiment


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="out/orbit-5class")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    report = run_experiment(
        "orbit-5class-reduced",
        overrides={("output", "dir"): args.outdir, ("seeds", "base"): args.seed},
        workers=args.workers,
    )
    print(f"accuracy {report.accuracy:.4f}")
    print(report.confusion)


if __name__ == "__main__":
    main()
