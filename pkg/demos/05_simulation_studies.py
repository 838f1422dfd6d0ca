#!/usr/bin/env python3
"""Seeded simulation studies: dispersion flatness and limit coverage.

Reproduces the binned-source experiment (is a stable source really
Poisson-flat at dispersion 1?), shows how much scatter small bin counts
produce, and measures the frequentist coverage of the Bayesian upper
limits. Everything is seeded; rerunning prints identical numbers.
"""

import numpy as np

from zerocount.bayes import PriorKind, prior_params
from zerocount.errors import ImproperPosteriorError
from zerocount.montecarlo import (
    coverage_experiment,
    dispersion_experiment,
    prng_metadata,
)


def main() -> None:
    meta = prng_metadata()
    print("=== generator ===")
    for key, value in meta.items():
        print(f"  {key}: {value}")

    print("\n=== dispersion of a stable source, 1,080,000 bins ===")
    summary = dispersion_experiment(2.8787, 1_080_000, seed=42)
    print(f"  sample mean      = {summary.sample_mean:.5f}  (target 2.8787)")
    print(f"  sample variance  = {summary.sample_variance:.5f}")
    print(f"  dispersion       = {summary.dispersion:.5f}  (Poisson -> 1)")

    print("\n=== the same source binned only 100 times ===")
    disps = [
        dispersion_experiment(2.8787, 100, seed=5000 + i).dispersion
        for i in range(12)
    ]
    print("  twelve replicate experiments:")
    print("  " + "  ".join(f"{d:.3f}" for d in disps))
    print(f"  spread {min(disps):.2f} .. {max(disps):.2f}: with 100 bins a")
    print("  perfectly Poisson source routinely lands 10-20% away from 1,")
    print("  so a single small-sample dispersion is weak evidence.")

    print("\n=== coverage of 95% upper limits ===")
    bl = prior_params(PriorKind.BL)
    for true_rho in (0.0, 0.5, 10.0):
        result = coverage_experiment(
            true_rho, t=1.0, n=1, prior=bl, cl=0.95, reps=100_000, seed=424242
        )
        print(
            f"  BL, true rho = {true_rho:>4g}: coverage = {result.coverage:.5f}"
            f" +/- {result.standard_error:.5f}"
        )
    print("  small rates are always covered (the smallest possible limit is")
    print("  ln 20 ~ 3.0); at rho = 10 misses appear only when S <= 4, so the")
    print("  realized coverage sits above the 95% credibility label.")

    print("\n=== coverage with the JJ prior ===")
    jj = prior_params(PriorKind.JJ)
    try:
        coverage_experiment(0.1, t=1.0, n=1, prior=jj, cl=0.95, reps=2000, seed=31)
    except ImproperPosteriorError as exc:
        print(f"  aborted, as it must: {exc}")
    print("  any replicate that draws S = 0 has no JJ posterior, so low-rate")
    print("  coverage for JJ is undefined rather than merely poor.")


if __name__ == "__main__":
    main()
