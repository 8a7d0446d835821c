"""Conjugate Bayesian model built on the Pearson IV law.

Observations follow the natural exponential family generated by the
convolved hyperbolic secant (NEF-CHS) with known size ``n``; the mean
parameter ``mu`` gets a Pearson IV prior indexed by ``(mu0, m0)``.  The
family is closed under updating, and the predictive laws are sampled in
two steps (draw ``mu``, then draw the observation given ``mu``).
"""

import math
from dataclasses import dataclass, replace

from . import logconcave
from .core import PearsonParams, log_density, log_gamma
from .errors import DomainError
from .quadrature import golden_section_max
from .samplers import AlgorithmId, sample_pearson4
from .special import log_abs_gamma

_LOG_PI = math.log(math.pi)
_LOG_2 = math.log(2.0)


@dataclass(frozen=True)
class BayesParams:
    """Prior ``Pearson IV(mu0, m0)`` on ``mu`` plus the known size ``n``.

    ``n`` may be any real number >= 1; no formula here needs an integer.
    """

    mu0: float
    m0: float
    n: float = 1.0

    def __post_init__(self):
        for name in ("mu0", "m0", "n"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")
        if not self.m0 > 1.0:
            raise DomainError(f"m0 must exceed 1, got {self.m0!r}")
        if not self.n >= 1.0:
            raise DomainError(f"n must be at least 1, got {self.n!r}")

    @property
    def prior_mean(self):
        return self.mu0

    @property
    def prior_variance(self):
        return (self.mu0 ** 2 + 1.0) / (self.m0 - 1.0)

    @property
    def predictive_mean(self):
        return self.n * self.mu0

    @property
    def predictive_variance(self):
        return self.n * (self.mu0 ** 2 + 1.0) * (self.m0 + self.n) / (self.m0 - 1.0)


@dataclass(frozen=True)
class ChsParams:
    mu: float
    n: float = 1.0

    def __post_init__(self):
        if not math.isfinite(self.mu):
            raise DomainError("mu must be finite")
        if not self.n >= 1.0:
            raise DomainError(f"n must be at least 1, got {self.n!r}")

    @property
    def mean(self):
        return self.n * self.mu

    @property
    def variance(self):
        return self.n * (self.mu ** 2 + 1.0)


def to_pearson(bayes):
    """Pearson parameters of the prior: ``a = m0/2 + 1``, ``s = m0 * mu0``."""
    return PearsonParams(0.5 * bayes.m0 + 1.0, bayes.m0 * bayes.mu0)


def from_pearson(params, n=1.0):
    """Inverse of :func:`to_pearson`.

    Exact whenever ``m0`` and ``m0 * mu0`` are exactly representable and the
    division undoes the product (always true for the small dyadic cases).
    """
    m0 = 2.0 * (params.a - 1.0)
    if not m0 > 1.0:
        raise DomainError(f"a = {params.a!r} gives m0 = {m0!r}, which must exceed 1")
    return BayesParams(params.s / m0, m0, n)


def log_K_constant(mu0, m0):
    """Log normalizer of the prior density in ``x``.

    The prior density is ``K exp(m0 mu0 atan x) / (1 + x^2)^(m0/2 + 1)``, so
    ``K`` is the Pearson IV constant at ``a = m0/2 + 1``, ``s = m0 mu0``.
    """
    if not m0 > 0.0:
        raise DomainError(f"m0 must be positive, got {m0!r}")
    return log_gamma(PearsonParams(0.5 * m0 + 1.0, m0 * mu0))


def K_constant(mu0, m0):
    return math.exp(log_K_constant(mu0, m0))


def chs_log_density(x, n):
    """log H(x, n) for the convolved hyperbolic secant law of size ``n``."""
    if not n >= 1.0:
        raise DomainError(f"n must be at least 1, got {n!r}")
    return ((n - 2.0) * _LOG_2 - _LOG_PI - log_abs_gamma(n)
            + 2.0 * log_abs_gamma(0.5 * n, 0.5 * x))


def nef_chs_log_density(x, chs):
    return (chs_log_density(x, chs.n) + x * math.atan(chs.mu)
            - 0.5 * chs.n * math.log1p(chs.mu ** 2))


def _nef_chs_kernel(chs):
    # log density up to an additive constant; one gamma call per point
    half_n, tilt = 0.5 * chs.n, math.atan(chs.mu)
    return lambda x: 2.0 * log_abs_gamma(half_n, 0.5 * x) + x * tilt


def nef_chs_mode(chs, tol=1e-10):
    """Mode by golden-section search, widening the bracket when needed."""
    center, half = chs.mean, 10.0 * math.sqrt(chs.variance)
    f = _nef_chs_kernel(chs)
    for _ in range(60):
        lo, hi = center - half, center + half
        m = golden_section_max(f, lo, hi, tol=tol)
        if hi - m > 2 * tol and m - lo > 2 * tol:
            return m
        center, half = m, 2.0 * half
    raise ArithmeticError("mode search failed to bracket the maximum")


def nef_chs_target(chs):
    """LogConcaveTarget for NEF-CHS(mu, n).

    Tilting the log-concave CHS density keeps it log-concave, and since the
    variance is known exactly, ``1/sqrt(12 var)`` is a certified lower
    bound for the density at its mode.
    """
    m = nef_chs_mode(chs)
    kernel = _nef_chs_kernel(chs)
    peak = kernel(m)
    return logconcave.LogConcaveTarget(
        log_ratio=lambda x: kernel(x) - peak,
        mode=m,
        peak_bound=1.0 / math.sqrt(12.0 * chs.variance),
    )


def nef_chs_sample(state, chs, target=None):
    """One exact NEF-CHS(mu, n) variate; returns ``(x, iterations)``."""
    if target is None:
        target = nef_chs_target(chs)
    return logconcave.sample(target, state)


def posterior_update(bayes, y):
    m1 = bayes.m0 + bayes.n
    mu1 = (bayes.m0 * bayes.mu0 + y) / m1
    return replace(bayes, mu0=mu1, m0=m1)


def prior_predictive_log_density(bayes, y):
    """Log density of the marginal law of one observation ``Y``."""
    post = posterior_update(bayes, y)
    return (chs_log_density(y, bayes.n) + log_K_constant(bayes.mu0, bayes.m0)
            - log_K_constant(post.mu0, post.m0))


def mu_sample(state, bayes):
    """Draw ``mu`` from the Pearson IV(mu0, m0) law."""
    return sample_pearson4(state, to_pearson(bayes), AlgorithmId.AUTO).variates[0]


def predictive_sample(state, bayes, y=None):
    """One predictive draw.

    With ``y=None`` this is the prior predictive; otherwise the prior is
    first updated with the observation ``y`` (posterior predictive).
    """
    if y is not None:
        bayes = posterior_update(bayes, y)
    mu = mu_sample(state, bayes)
    x, _ = nef_chs_sample(state, ChsParams(mu, bayes.n))
    return x


def prior_density_log(bayes, mu):
    """Normalized log density of the prior at ``mu``."""
    return log_density(to_pearson(bayes), mu, normalized=True)
