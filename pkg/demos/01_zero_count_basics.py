#!/usr/bin/env python3
"""A counting run comes back all zeros. Now what?

Walks the classical toolbox: why the ML estimate collapses at S = 0, what
the zero-class probability still tells you, and the simple-probability
summaries that remain usable, ending with the quick one-count rule.
"""

import math

from zerocount.classical import (
    CountData,
    ml_estimates,
    one_count_upper_limit,
    simple_probability_estimates,
    simple_probability_upper_limit,
)
from zerocount.distributions import prob_all_zero


def main() -> None:
    print("=== a record of nothing ===")
    data = CountData([0, 0, 0], t=100.0)
    print(f"n = {data.n} measurements of t = {data.t:g} s each; total S = {data.total}")

    ml = ml_estimates(data)
    print("\nmaximum likelihood:")
    print(f"  theta_hat = {ml.theta_hat:g} counts, rho_hat = {ml.rho_hat:g} / s")
    print(f"  var(mean) = {ml.var_mean:g}, var(rate) = {ml.var_rate:g}")
    if ml.pathological:
        print("  -> the point estimate is 0 +/- 0: formally allowed, scientifically")
        print("     useless. Nothing was detected, but the rate is not known to be 0.")

    print("\nhow plausible is an all-zero record?")
    for theta in (0.1, 0.5, 1.0, 3.0):
        p = prob_all_zero(data.n, theta)
        print(f"  if theta were {theta:>4g} counts/measurement: P(all {data.n} zero) = {p:.4g}")

    print("\nsimple-probability summaries (treat the zero-class density as a")
    print("distribution over theta):")
    mean_t, var_t, mean_r, var_r = simple_probability_estimates(data.n, data.t)
    print(f"  mean theta = {mean_t:g}, var theta = {var_t:g}")
    print(f"  mean rho   = {mean_r:g} / s, var rho = {var_r:g}")

    print("\nupper limits from the same density:")
    for alpha in (0.10, 0.05, 0.01):
        u_theta, u_rho = simple_probability_upper_limit(data.n, data.t, alpha)
        check = math.log(1.0 / alpha) / data.n
        print(
            f"  alpha = {alpha:.2f}: U_theta = {u_theta:.4f} counts"
            f" (= ln(1/alpha)/n = {check:.4f}), U_rho = {u_rho:.3e} / s"
        )

    print("\nthe one-count shortcut: pretend a single count was seen over the")
    print("whole campaign, then divide by efficiency.")
    for eff in (1.0, 0.3):
        u = one_count_upper_limit(t=300.0, calibration=eff)
        print(f"  efficiency {eff:g}: U_rho ~ {u:.3e} / s")


if __name__ == "__main__":
    main()
