#!/usr/bin/env python3
"""Which prior gives the best point estimator? Put them under quadratic loss.

Every Gamma prior (a, b) turns the posterior mean into the shrinkage
estimator (S + a) / (n + b). This demo evaluates bias and risk for the
catalog priors at the zero-count point, validates the closed forms against
brute-force Poisson summation, and prints the admissibility verdict.
"""

from zerocount.bayes import PriorKind, prior_params
from zerocount.decision import compare_priors, validate_risk_oracle


def show_ranking(S: int, n: int) -> None:
    ranking = compare_priors(S, n)
    print(f"\n=== plug-in risk table at S = {S}, n = {n} ===")
    print("  prior   mean  bias(mean)  risk(mean)    var  bias(var)  risk(var)")
    for e in ranking.entries:
        print(
            f"  {e.prior.kind.value:<5} {e.mean_estimate:>6.3f} {e.bias_mean:>11.3f} "
            f"{e.risk_mean:>11.4f} {e.var_estimate:>6.3f} {e.bias_var:>10.3f} "
            f"{e.risk_var:>10.4f}"
        )
    for kind, reason in ranking.excluded:
        print(f"  {kind.value:<5} excluded: {reason}")
    print(f"  verdict: {ranking.verdict}")


def main() -> None:
    show_ranking(0, 1)
    print("\n  at S = 0 every estimate is pure prior: the ME prior shrinks")
    print("  hardest toward zero and wins on both risk columns.")

    show_ranking(3, 2)
    print("\n  with data in hand the estimators converge toward S/n and the")
    print("  risk gaps narrow; shrinkage matters most exactly when S = 0.")

    print("\n=== closed forms vs direct Poisson expectation ===")
    print("  estimator pushed through sum_S pmf(S | n theta) f(S):")
    for theta in (0.5, 2.0):
        for kind in (PriorKind.BL, PriorKind.JR, PriorKind.ME):
            spec = prior_params(kind, t=1.0) if kind is PriorKind.ME else prior_params(kind)
            report = validate_risk_oracle(theta, 1, spec)
            print(
                f"  theta = {theta:g}, {kind.value}: |mean gap| = {report.mean_discrepancy:.2e}, "
                f"|var gap| = {report.variance_discrepancy:.2e}, "
                f"|risk - (bias^2 + var)| = {report.risk_discrepancy:.2e}"
            )
    print("  the summation and the closed forms agree to solver precision,")
    print("  so the table above is arithmetic, not simulation.")


if __name__ == "__main__":
    main()
