"""Classical (non-Bayesian) estimation for repeated count measurements.

Implements the sufficient statistic, maximum-likelihood point and variance
estimates, the simple-probability treatment of an all-zero record, and the
non-statistical 1-count upper limit.

The all-zero case is the whole point of this package: the ML machinery then
returns zeros for every estimate, which is reported through a ``pathological``
flag rather than an error so callers can switch to the simple-probability or
Bayesian routes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError

__all__ = [
    "CountData",
    "MLReport",
    "sufficient_statistic",
    "ml_estimates",
    "log_likelihood",
    "simple_probability_estimates",
    "simple_probability_upper_limit",
    "one_count_upper_limit",
]


@dataclass(frozen=True)
class CountData:
    """Counts from ``n`` repeated measurements of common duration ``t``.

    Unequal per-measurement durations are out of scope; the model assumes a
    single shared ``t``.
    """

    counts: tuple[int, ...]
    t: float = 1.0

    def __init__(self, counts: Sequence[int], t: float = 1.0):
        values = tuple(counts)
        if len(values) == 0:
            raise DomainError("counts must contain at least one measurement")
        for c in values:
            if isinstance(c, bool) or int(c) != c or c < 0:
                raise DomainError(f"counts must be nonnegative integers, got {c!r}")
        if not (t > 0.0):
            raise DomainError(f"t must be > 0, got {t!r}")
        object.__setattr__(self, "counts", tuple(int(c) for c in values))
        object.__setattr__(self, "t", float(t))

    @property
    def n(self) -> int:
        return len(self.counts)

    @property
    def total(self) -> int:
        return sum(self.counts)


@dataclass(frozen=True)
class MLReport:
    """Maximum-likelihood point estimates and their variance estimates.

    ``pathological`` is True exactly when the total count is zero; all five
    estimates are then 0 and carry no uncertainty information.
    """

    theta_hat: float
    rho_hat: float
    var_counts: float
    var_mean: float
    var_rate: float
    pathological: bool


def sufficient_statistic(data: CountData) -> tuple[int, float]:
    """Return (S, xbar): the total count and the sample mean.

    S is exact (integer); the mean is computed from the exact ratio so that
    e.g. 10 measurements totalling 1 give precisely 0.1.
    """
    s = data.total
    xbar = float(Fraction(s, data.n))
    return (s, xbar)


def ml_estimates(data: CountData) -> MLReport:
    """Maximum-likelihood estimates of theta and rho with their variances."""
    s, xbar = sufficient_statistic(data)
    n, t = data.n, data.t
    return MLReport(
        theta_hat=xbar,
        rho_hat=s / (n * t),
        var_counts=s / n,
        var_mean=s / n**2,
        var_rate=s / (n * t) ** 2,
        pathological=(s == 0),
    )


def log_likelihood(theta: float, data: CountData) -> float:
    """Log-likelihood of ``theta``, up to an additive constant.

    Returns S ln(theta) - n theta, the theta-dependent part. At theta = 0
    the value is -inf whenever any count was observed (returned, not
    raised: the likelihood is genuinely zero there) and 0 for an all-zero
    record.
    """
    if not (theta >= 0.0):
        raise DomainError(f"theta must be >= 0, got {theta!r}")
    s = data.total
    if theta == 0.0:
        return 0.0 if s == 0 else -math.inf
    return s * math.log(theta) - data.n * theta


def simple_probability_estimates(
    n: int, t: float = 1.0
) -> tuple[float, float, float, float]:
    """Mean and variance of theta and rho from the renormalized zero class.

    For an all-zero record the zero-class probability e^{-n theta}, treated
    as a density n e^{-n theta} in theta, has mean 1/n and variance 1/n^2;
    dividing by t and t^2 converts to the rate.
    """
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"n must be an integer >= 1, got {n!r}")
    if not (t > 0.0):
        raise DomainError(f"t must be > 0, got {t!r}")
    mean_theta = 1.0 / n
    var_theta = 1.0 / n**2
    return (mean_theta, var_theta, mean_theta / t, var_theta / t**2)


def simple_probability_upper_limit(
    n: int, t: float, alpha: float
) -> tuple[float, float]:
    """Upper limits (U_theta, U_rho) at tail probability ``alpha``.

    Integrating the renormalized zero-class density beyond U leaves mass
    alpha when U_theta = ln(1/alpha)/n.
    """
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"n must be an integer >= 1, got {n!r}")
    if not (t > 0.0):
        raise DomainError(f"t must be > 0, got {t!r}")
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"alpha must lie in (0, 1), got {alpha!r}")
    u_theta = math.log(1.0 / alpha) / n
    return (u_theta, u_theta / t)


def one_count_upper_limit(t: float, calibration: float = 1.0) -> float:
    """The 1-count upper limit on the rate: 1/(t * calibration).

    Pretends a single count was seen and converts it to a rate through the
    measurement time and a multiplicative calibration coefficient (e.g. a
    detection efficiency). This is a non-statistical convention: no
    confidence level is attached to the number.
    """
    if not (t > 0.0):
        raise DomainError(f"t must be > 0, got {t!r}")
    if not (calibration > 0.0):
        raise DomainError(f"calibration must be > 0, got {calibration!r}")
    return 1.0 / (t * calibration)
