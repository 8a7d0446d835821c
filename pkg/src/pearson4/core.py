"""Pearson IV density, moments, arctan-mapped density and normalization.

The density is f(x) = gamma * exp(s * atan x) / (1 + x^2)^a with a > 1/2.
Writing Y = atan X gives the density h(y) = gamma * exp(s y) cos(y)^(2a-2)
on [-pi/2, pi/2], which is log-concave for a >= 1.  Everything here is a
pure function of its arguments.
"""

import math
from dataclasses import dataclass, field

from .errors import ConsistencyError, DomainError, MomentUndefinedError
from .quadrature import adaptive_simpson
from .special import log_abs_gamma, log_cosh

HALF_PI = 0.5 * math.pi
LOG_PI = math.log(math.pi)
LOG_2 = math.log(2.0)


@dataclass(frozen=True)
class PearsonParams:
    """Shape pair (a, s); ``a`` controls the tails, ``s`` the skew."""

    a: float
    s: float = 0.0

    def __post_init__(self):
        a, s = float(self.a), float(self.s)
        if not (math.isfinite(a) and math.isfinite(s)):
            raise DomainError("Pearson IV parameters must be finite")
        if a <= 0.5:
            raise DomainError(f"Pearson IV needs a > 1/2, got a={a!r}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "s", s)

    def reflected(self):
        """Parameters of -X."""
        return PearsonParams(self.a, -self.s)


def _log1p_sq(x):
    # log(1 + x^2), safe for |x| up to the double range
    ax = abs(x)
    if ax > 1e150:
        return 2.0 * math.log(ax) + math.log1p(1.0 / (ax * ax))
    return math.log1p(x * x)


def log_density(params, x, normalized=False):
    """s * atan(x) - a * log(1 + x^2), plus log(gamma) when ``normalized``."""
    val = params.s * math.atan(x) - params.a * _log1p_sq(x)
    if normalized:
        val += log_gamma(params)
    return val


def density(params, x):
    return math.exp(log_density(params, x, normalized=True))


def log_density_d2(params, x):
    """Second derivative of log f."""
    a, s = params.a, params.s
    q = 1.0 + x * x
    return (2.0 * a * x * x - 2.0 * s * x - 2.0 * a) / (q * q)


def mode(params):
    return params.s / (2.0 * params.a)


def mean(params):
    if params.a <= 1.0:
        raise MomentUndefinedError("the mean exists only for a > 1")
    return params.s / (2.0 * (params.a - 1.0))


def variance(params):
    a, s = params.a, params.s
    if a <= 1.5:
        raise MomentUndefinedError("the variance exists only for a > 3/2")
    am1 = a - 1.0
    return (s * s + 4.0 * am1 * am1) / (4.0 * am1 * am1 * (2.0 * a - 3.0))


def logconcavity_interval(params):
    """(m, D): log f is concave exactly on |x - m| <= D."""
    m = mode(params)
    return m, math.sqrt(1.0 + m * m)


# -- normalization -----------------------------------------------------------

def log_gamma(params):
    """log of the normalizing constant via the complex log-gamma function."""
    a, s = params.a, params.s
    return ((a - 1.0) * math.log(4.0) + 2.0 * log_abs_gamma(a, -0.5 * s)
            - LOG_PI - log_abs_gamma(2.0 * a - 1.0))


class ArcCoordinates:
    """Smooth integration coordinate for the law of atan(X).

    For a >= 1 the coordinate is t = y = atan(x) itself.  For a < 1 the
    density of y has integrable spikes at both ends, so the distance z to
    the nearer end is replaced by u = z^p with p = 2a - 1 and
    t = sign(y) * ((pi/2)^p - u); the Jacobian cancels the z^(2a-2)
    singularity exactly.  ``log_g(t)`` is the log density in t, shifted by
    ``self.shift`` so its maximum is of order one.
    """

    def __init__(self, params):
        a, s = params.a, params.s
        self.params = params
        self.p = min(1.0, 2.0 * a - 1.0)
        self.t_max = HALF_PI ** self.p
        self._k_sin = 2.0 * a - 2.0
        self._k_z = 2.0 * a - 1.0 - self.p
        self._log_p = math.log(self.p)
        if a >= 1.0:
            self.shift = _log_h_peak_shape(a, s)
        else:
            self.shift = abs(s) * HALF_PI

    def z_of_t(self, t):
        u = self.t_max - abs(t)
        if u <= 0.0:
            return 0.0
        return u if self.p == 1.0 else u ** (1.0 / self.p)

    def t_of_x(self, x):
        if x == 0.0:
            return 0.0
        z = math.atan(1.0 / abs(x))
        t = self.t_max - (z if self.p == 1.0 else z ** self.p)
        return t if x > 0.0 else -t

    def y_of_t(self, t):
        z = self.z_of_t(t)
        return math.copysign(HALF_PI - z, t)

    def log_g(self, t):
        z = self.z_of_t(t)
        y = math.copysign(HALF_PI - z, t)
        val = self.params.s * y - self.shift - self._log_p
        if self._k_sin != 0.0:
            if z <= 0.0:
                if self._k_z == 0.0:
                    return val
                return -math.inf
            ratio = math.sin(z) / z if z > 1e-8 else 1.0
            val += self._k_sin * math.log(ratio)
            if self._k_z != 0.0:
                val += self._k_z * math.log(z)
        return val

    def g(self, t):
        v = self.log_g(t)
        return math.exp(v) if v > -745.0 else 0.0

    def breaks(self):
        pts = [0.0]
        if self.params.a >= 1.0:
            pts.append(ArctanMapped.of(self.params).mode_y)
        return pts

    def log_total_mass(self, tol=1e-12):
        """log of the integral of exp(s y) cos(y)^(2a-2) over [-pi/2, pi/2]."""
        total = adaptive_simpson(self.g, -self.t_max, self.t_max, tol=tol, breaks=self.breaks())
        return math.log(total) + self.shift


def log_gamma_quadrature(params, tol=1e-12):
    """log gamma as minus the log of the quadrature mass of the mapped density."""
    return -ArcCoordinates(params).log_total_mass(tol)


def gamma_exact(params, rtol=1e-6):
    """Normalizing constant of f, cross-checked by two independent routes.

    The complex log-gamma value is returned; the quadrature value must
    agree to ``rtol`` relative or :class:`ConsistencyError` is raised.
    """
    lg = log_gamma(params)
    lq = log_gamma_quadrature(params)
    if abs(math.expm1(lq - lg)) > rtol:
        raise ConsistencyError(
            f"normalization routes disagree for {params}: {math.exp(lg)!r} vs {math.exp(lq)!r}")
    return math.exp(lg)


@dataclass(frozen=True)
class GammaBounds:
    """Two-sided bounds on gamma, stored on the log scale to avoid overflow."""

    log_gamma_star: float
    log_gamma_minus: float
    log_gamma_plus: float

    @property
    def gamma_star(self):
        return math.exp(self.log_gamma_star)

    @property
    def gamma_minus(self):
        return math.exp(self.log_gamma_minus)

    @property
    def gamma_plus(self):
        return math.exp(self.log_gamma_plus)

    @property
    def ratio(self):
        """gamma_plus / gamma_minus."""
        return math.exp(self.log_gamma_plus - self.log_gamma_minus)


def gamma_bounds(params):
    """Explicit bounds gamma_minus <= gamma <= gamma_plus.

    Proven for a >= 1; ``s`` enters only through |s|.  Built from Boyd's
    remainder bound for Stirling's formula at a - is/2 and Batir's bounds on
    Gamma(a + 1) and Gamma(a + 3/2).
    """
    a, s = params.a, abs(params.s)
    q = s / (2.0 * a)
    log_star = (math.log(a - 0.5) + (a - 0.5) * math.log1p(q * q) - s * math.atan(q)
                - 0.5 * (LOG_PI - 1.0) - a * math.log1p(0.5 / a) - 0.5 * math.log(a))
    r = 3.0 / (2.0 * math.pi ** 2 * math.hypot(a, 0.5 * s))
    log_plus = (log_star + 2.0 * math.log1p(r)
                - 0.5 * (math.log1p(1.0 / (6.0 * a)) + math.log1p(1.0 / (6.0 * (a + 0.5)))))
    log_minus = (log_star + 2.0 * math.log1p(-r)
                 - 0.5 * (math.log1p(0.177 / a) + math.log1p(0.177 / (a + 0.5))))
    return GammaBounds(log_star, log_minus, log_plus)


# -- arctan-mapped density ---------------------------------------------------

def _log_h_peak_shape(a, s):
    # log(exp(s m) cos(m)^(2a-2)) at the mode m of h, a >= 1
    if a == 1.0:
        return abs(s) * HALF_PI
    beta = s / (2.0 * (a - 1.0))
    return s * math.atan(beta) - (a - 1.0) * math.log1p(beta * beta)


@dataclass(frozen=True)
class ArctanMapped:
    """The density of atan(X) together with its mode and curvature scale.

    For a = 1 the density is exp(s y) on [-pi/2, pi/2]; the mode then sits
    at the endpoint pi/2 * sign(s) (0 when s = 0), ``beta`` is infinite and
    ``tau`` is 0.
    """

    params: PearsonParams
    beta: float = field(init=False)
    mode_y: float = field(init=False)
    tau: float = field(init=False)
    log_cos2_mode: float = field(init=False)

    def __post_init__(self):
        a, s = self.params.a, self.params.s
        if a < 1.0:
            raise DomainError("the arctan-mapped density is log-concave only for a >= 1")
        if a == 1.0:
            beta = math.copysign(math.inf, s) if s != 0.0 else 0.0
            m = math.copysign(HALF_PI, s) if s != 0.0 else 0.0
            tau = 0.0
            lc = 0.0
        else:
            beta = s / (2.0 * (a - 1.0))
            m = math.atan(beta)
            tau = math.sqrt((a - 1.0) * (1.0 + beta * beta))
            lc = -math.log1p(beta * beta)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "mode_y", m)
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "log_cos2_mode", lc)

    @classmethod
    def of(cls, params):
        return cls(params)


def h_log(am, y):
    """log h(y) - log gamma: s y + (a - 1) log cos^2 y, -inf off the support."""
    a, s = am.params.a, am.params.s
    if abs(y) > HALF_PI:
        return -math.inf
    if a == 1.0:
        return s * y
    c = math.cos(y)
    if c <= 0.0:
        return -math.inf
    return s * y + (a - 1.0) * math.log(c * c)


def h_log_ratio(am, y):
    """log(h(y) / h(mode)), organised to avoid cancellation at large s."""
    a, s = am.params.a, am.params.s
    if abs(y) > HALF_PI:
        return -math.inf
    d = s * (y - am.mode_y)
    if a == 1.0:
        return d
    c = math.cos(y)
    if c <= 0.0:
        return -math.inf
    return d + (a - 1.0) * (math.log(c * c) - am.log_cos2_mode)


def h_derivatives(am, y):
    """(g', g'', g''', g'''') for g = log h at an interior point y."""
    a, s = am.params.a, am.params.s
    k = a - 1.0
    t = math.tan(y)
    c2 = math.cos(y) ** 2
    sn2 = math.sin(y) ** 2
    return (s - 2.0 * k * t,
            -2.0 * k / c2,
            -4.0 * k * t / c2,
            -4.0 * k * (1.0 + 2.0 * sn2) / (c2 * c2))


def peak_lower_bound_fradelizi(params):
    """Lower bound on the peak of h from the variance bracket, a >= 1."""
    a, s = params.a, params.s
    return math.sqrt((4.0 * a * a + s * s) / (24.0 * (a + 1.0)))


def log_delta(params):
    """log(h(mode) / gamma)."""
    if params.a < 1.0:
        raise DomainError("delta is defined for a >= 1")
    return _log_h_peak_shape(params.a, params.s)


def delta(params):
    return math.exp(log_delta(params))


def log_h_peak(params):
    """log h(mode) using the exact normalizing constant."""
    return log_gamma(params) + log_delta(params)


# -- symmetrized tail density for a <= 1 ------------------------------------

def eta_log(params, z):
    """log(eta(z) / gamma) = log 2 + log cosh(s(pi/2 - z)) + 2(a - 1) log sin z."""
    if not 0.0 < z <= HALF_PI:
        raise DomainError("eta is defined on (0, pi/2]")
    a, s = params.a, params.s
    val = LOG_2 + log_cosh(s * (HALF_PI - z))
    if a != 1.0:
        val += 2.0 * (a - 1.0) * math.log(math.sin(z))
    return val
