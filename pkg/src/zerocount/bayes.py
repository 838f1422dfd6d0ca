"""Bayesian rate inference with conjugate Gamma machinery.

The prior catalog covers four standard choices for a Poisson rate, written
as Gamma(a, b) shapes on rho:

==========  =========  ==============================
name        (a, b)     density shape on rho
==========  =========  ==============================
BL          (1, 0)     constant (flat)
JJ          (0, 0)     1/rho
JR          (1/2, 0)   rho^(-1/2)
ME          (1, t)     t e^(-rho t)
==========  =========  ==============================

With data (S total counts over n measurements of duration t) the posterior
is Gamma(A, B) with A = S + a and B = nt + b. A <= 0 cannot be normalized;
that combination (JJ with an all-zero record, and nothing else in the
catalog) raises :class:`~zerocount.errors.ImproperPosteriorError` at
construction time. The divergence demo quantifies how the failure behaves
under truncation of the evidence integral.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .classical import CountData
from .distributions import GammaDist, gamma_moment
from .errors import DomainError, ImproperPosteriorError
from .numerics import (
    DEFAULT_TOL,
    EULER_GAMMA,
    ToleranceConfig,
    exp_integral_e1,
    integrate_semi_infinite,
    inv_reg_inc_gamma_lower,
    reg_inc_gamma_lower,
)

__all__ = [
    "PriorKind",
    "PriorSpec",
    "PosteriorSource",
    "GammaPosterior",
    "UpperLimitResult",
    "prior_params",
    "prior_density",
    "posterior",
    "posterior_from_sufficient",
    "posterior_moment",
    "upper_limit",
    "fisher_information",
    "jj_divergence_demo",
    "jj_truncated_evidence",
    "differential_entropy_gamma",
]


class PriorKind(str, Enum):
    BL = "BL"
    JJ = "JJ"
    JR = "JR"
    ME = "ME"
    CUSTOM = "custom"


@dataclass(frozen=True)
class PriorSpec:
    """A prior as its Gamma (a, b) signature plus its catalog name."""

    kind: PriorKind
    a: float
    b: float

    def __post_init__(self):
        if not (self.a >= 0.0):
            raise DomainError(f"prior shape a must be >= 0, got {self.a!r}")
        if not (self.b >= 0.0):
            raise DomainError(f"prior rate b must be >= 0, got {self.b!r}")


@dataclass(frozen=True)
class PosteriorSource:
    """The data and prior a posterior was built from."""

    S: int
    n: int
    t: float
    prior: PriorSpec


@dataclass(frozen=True)
class GammaPosterior:
    """Proper Gamma(A, B) posterior for the rate rho."""

    A: float
    B: float
    source: PosteriorSource

    @property
    def mean(self) -> float:
        return self.A / self.B

    @property
    def variance(self) -> float:
        return self.A / self.B**2

    def as_gamma(self) -> GammaDist:
        return GammaDist(a=self.A, b=self.B)


@dataclass(frozen=True)
class UpperLimitResult:
    """A one-sided Bayesian upper limit at confidence level ``CL``."""

    CL: float
    U_rho: float
    U_theta: float
    solver_residual: float


def prior_params(kind: PriorKind, t: float | None = None) -> PriorSpec:
    """Return the catalog (a, b) for a named prior.

    ME couples the prior to the measurement duration (b = t), so ``t`` is
    required for it and ignored for the others. Custom priors are built
    directly as ``PriorSpec(PriorKind.CUSTOM, a, b)``.
    """
    kind = PriorKind(kind)
    if kind is PriorKind.BL:
        return PriorSpec(PriorKind.BL, 1.0, 0.0)
    if kind is PriorKind.JJ:
        return PriorSpec(PriorKind.JJ, 0.0, 0.0)
    if kind is PriorKind.JR:
        return PriorSpec(PriorKind.JR, 0.5, 0.0)
    if kind is PriorKind.ME:
        if t is None or not (t > 0.0):
            raise DomainError(f"ME prior requires t > 0, got {t!r}")
        return PriorSpec(PriorKind.ME, 1.0, float(t))
    raise DomainError("custom priors have no catalog row; construct PriorSpec directly")


def prior_density(
    kind: PriorKind,
    rho: float,
    t: float | None = None,
    normalized: bool = False,
) -> float:
    """Evaluate a catalog prior density at ``rho``.

    BL, JJ and JR are unnormalizable on [0, inf) and are returned in their
    conventional unnormalized forms (1, 1/rho, rho^(-1/2)); ME is a proper
    density t e^(-rho t). JJ and JR diverge at rho = 0, which is a domain
    error rather than an inf.

    ``normalized=True`` rescales each curve to pass through the point
    (1, 1). This is a plotting convention only and never enters inference.
    """
    kind = PriorKind(kind)
    if not (rho >= 0.0):
        raise DomainError(f"rho must be >= 0, got {rho!r}")
    if kind is PriorKind.BL:
        return 1.0
    if kind is PriorKind.JJ:
        if rho == 0.0:
            raise DomainError("JJ prior diverges at rho = 0")
        return 1.0 / rho
    if kind is PriorKind.JR:
        if rho == 0.0:
            raise DomainError("JR prior diverges at rho = 0")
        return 1.0 / math.sqrt(rho)
    if kind is PriorKind.ME:
        if t is None or not (t > 0.0):
            raise DomainError(f"ME prior requires t > 0, got {t!r}")
        value = t * math.exp(-rho * t)
        if normalized:
            # divide by the value at rho = 1 so the curve passes through (1,1)
            return value / (t * math.exp(-t))
        return value
    raise DomainError("custom priors have no catalog density; use gamma_pdf")


def posterior_from_sufficient(
    S: int, n: int, t: float, prior: PriorSpec
) -> GammaPosterior:
    """Build the Gamma posterior from the sufficient statistic directly."""
    if isinstance(S, bool) or int(S) != S or S < 0:
        raise DomainError(f"S must be a nonnegative integer, got {S!r}")
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"n must be an integer >= 1, got {n!r}")
    if not (t > 0.0):
        raise DomainError(f"t must be > 0, got {t!r}")
    a_post = S + prior.a
    b_post = n * t + prior.b
    if a_post <= 0.0:
        raise ImproperPosteriorError(
            f"posterior shape S + a = {a_post} is not positive: the evidence "
            f"integral of rho^(S+a-1) e^(-B rho) diverges at rho = 0, so the "
            f"{prior.kind.value} prior with an all-zero record admits no "
            f"normalizable posterior",
            shape=a_post,
            total_counts=int(S),
        )
    return GammaPosterior(
        A=float(a_post),
        B=float(b_post),
        source=PosteriorSource(S=int(S), n=int(n), t=float(t), prior=prior),
    )


def posterior(data: CountData, prior: PriorSpec) -> GammaPosterior:
    """Conjugate update: Gamma(S + a, nt + b) for the rate rho.

    Raises
    ------
    ImproperPosteriorError
        When S + a <= 0 (the JJ prior, or a custom a = 0, with an all-zero
        record). The posterior cannot be normalized; no object is returned.
    """
    return posterior_from_sufficient(data.total, data.n, data.t, prior)


def posterior_moment(post: GammaPosterior, r: int) -> float:
    """Raw posterior moment E[rho^r] = (A)_r / B^r."""
    return gamma_moment(post.as_gamma(), r)


def upper_limit(
    post: GammaPosterior, CL: float, tol: ToleranceConfig | None = None
) -> UpperLimitResult:
    """One-sided upper limit on rho (and theta) at confidence level CL.

    U_rho solves P(A, B U) = CL where P is the regularized lower incomplete
    gamma; U_theta = U_rho * t restates it for the counts parameter.
    """
    if not (0.0 < CL < 1.0):
        raise DomainError(f"CL must lie in (0, 1), got {CL!r}")
    tol = tol if tol is not None else DEFAULT_TOL
    x_star = inv_reg_inc_gamma_lower(post.A, CL, tol)
    u_rho = x_star / post.B
    residual = reg_inc_gamma_lower(post.A, post.B * u_rho) - CL
    return UpperLimitResult(
        CL=CL,
        U_rho=u_rho,
        U_theta=u_rho * post.source.t,
        solver_residual=residual,
    )


def fisher_information(n: int, rho: float) -> float:
    """Fisher information n/rho carried by n measurements about the rate."""
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"n must be an integer >= 1, got {n!r}")
    if not (rho > 0.0):
        raise DomainError(f"rho must be > 0, got {rho!r}")
    return n / rho


def jj_truncated_evidence(epsilon: float) -> float:
    """Evidence of the JJ prior and an all-zero record, truncated at epsilon.

    The full integral of e^(-theta)/theta over (0, inf) diverges; cutting
    the lower endpoint at epsilon leaves E1(epsilon), which grows like
    -gamma_E - ln(epsilon) as the cutoff is removed.
    """
    return exp_integral_e1(epsilon)


def jj_divergence_demo(epsilon: float, U_theta: float) -> float:
    """Tail probability alpha assigned beyond U_theta by the truncated JJ posterior.

    alpha = E1(U_theta + epsilon) / (-gamma_E - ln(epsilon)). As epsilon
    shrinks the denominator grows without bound while the numerator is
    pinned, so alpha -> 0: the truncated posterior concentrates all its
    mass at the origin and any fixed upper limit becomes certain. That is
    the quantitative sense in which the JJ prior fails for all-zero data.
    """
    if not (epsilon > 0.0):
        raise DomainError(f"epsilon must be > 0, got {epsilon!r}")
    if not (U_theta > 0.0):
        raise DomainError(f"U_theta must be > 0, got {U_theta!r}")
    denominator = -EULER_GAMMA - math.log(epsilon)
    if denominator <= 0.0:
        raise DomainError(
            f"epsilon = {epsilon!r} is too large: -gamma_E - ln(epsilon) must be positive"
        )
    return exp_integral_e1(U_theta + epsilon) / denominator


def differential_entropy_gamma(
    dist: GammaDist, tol: ToleranceConfig | None = None
) -> float:
    """Differential entropy -int p ln p of a Gamma density, in nats.

    Computed by quadrature; among Gamma priors with a fixed mean this is
    maximized by the exponential shape (a = 1), which is the maximum-entropy
    motivation for the ME prior.
    """
    tol = tol if tol is not None else DEFAULT_TOL
    log_norm = dist.a * math.log(dist.b) - math.lgamma(dist.a)
    # substitute rho = s^m with m*a >= 1 so the rho^{a-1} endpoint
    # singularity (a < 1) becomes a bounded integrand; the panel error
    # estimator is unreliable on unresolved algebraic singularities
    m = max(1, math.ceil(1.0 / dist.a))

    def integrand(s: float) -> float:
        if s <= 0.0:
            return 0.0
        log_s = math.log(s)
        log_rho = m * log_s
        if log_rho > 600.0:
            return 0.0
        rho = math.exp(log_rho)
        log_pdf = log_norm + (dist.a - 1.0) * log_rho - dist.b * rho
        # pdf and jacobian combined in log space: m*a >= 1 keeps this
        # bounded at s -> 0 even when the pdf itself diverges there
        log_weight = log_pdf + (m - 1.0) * log_s + math.log(m)
        if log_weight < -700.0:
            return 0.0
        return -log_pdf * math.exp(log_weight)

    return integrate_semi_infinite(integrand, lower=0.0, tol=tol)
