#!/usr/bin/env python3
"""Empirical Rademacher complexity of the ball-mass class vs sample size."""

import argparse

import numpy as np

from measureboost.recipes import run_experiment


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="out/rademacher")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rows = run_experiment(
        "rademacher-scaling",
        overrides={("output", "dir"): args.outdir, ("seeds", "base"): args.seed},
    )
    ns = np.array([r[0] for r in rows], dtype=float)
    est = np.array([r[1] for r in rows])
    slope = np.polyfit(np.log(ns), np.log(est), 1)[0]
    for n, e, se in rows:
        print(f"N={n:5d}  estimate={e:.5f}  stderr={se:.5f}")
    print(f"log-log slope {slope:.3f}")


if __name__ == "__main__":
    main()
