"""Log-gamma for complex arguments and a few numerically careful helpers.

``loggamma`` uses the Stirling series with Bernoulli coefficients B2..B16,
after shifting the argument upward with the recurrence
log G(z) = log G(z + k) - sum log(z + j) until ``|z| >= 10``.  The first
omitted term is below 2e-18 there, so the series is accurate to rounding.
"""

import cmath
import math

_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_SHIFT_RADIUS = 10.0

# B_{2k} / (2k (2k - 1)) for k = 1..8
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)


def _stirling_tail(w):
    # sum_k c_k / w^(2k-1), Horner in 1/w^2
    r = 1.0 / w
    r2 = r * r
    acc = _STIRLING[-1]
    for c in _STIRLING[-2::-1]:
        acc = acc * r2 + c
    return acc * r


def loggamma(z):
    """Principal branch of log Gamma(z) for ``Re z > 0``."""
    z = complex(z)
    if z.real <= 0.0:
        raise ValueError("loggamma requires Re z > 0")
    shift = 0j
    w = z
    while abs(w) < _SHIFT_RADIUS:
        shift += cmath.log(w)
        w += 1.0
    return (w - 0.5) * cmath.log(w) - w + _HALF_LOG_2PI + _stirling_tail(w) - shift


def log_abs_gamma(x, y=0.0):
    """Real part of log Gamma(x + iy), i.e. log|Gamma(x + iy)|, for x > 0.

    Same series as :func:`loggamma`, but the recurrence is accumulated as a
    real product of squared moduli, which is cheaper in the hot loops.
    """
    if x <= 0.0:
        raise ValueError("log_abs_gamma requires x > 0")
    y2 = y * y
    prod = 1.0
    log_shift = 0.0
    while x * x + y2 < _SHIFT_RADIUS * _SHIFT_RADIUS:
        prod *= x * x + y2
        if prod > 1e280:
            log_shift += math.log(prod)
            prod = 1.0
        x += 1.0
    log_shift = 0.5 * (log_shift + math.log(prod))
    w = complex(x, y)
    log_mod = 0.5 * math.log(x * x + y2)
    arg = math.atan2(y, x)
    main = (x - 0.5) * log_mod - y * arg - x + _HALF_LOG_2PI
    return main + _stirling_tail(w).real - log_shift


def log_cosh(t):
    """log(cosh t) without overflow for large |t|."""
    t = abs(t)
    return t + math.log1p(math.exp(-2.0 * t)) - math.log(2.0)


def sqrt_expm1(t):
    """sqrt(exp(t) - 1) for t >= 0, returning inf only past double range."""
    if t < 700.0:
        return math.sqrt(math.expm1(t))
    half = 0.5 * t
    if half > 709.0:
        return math.inf
    return math.exp(half) * math.sqrt(-math.expm1(-t))


def logistic_neg(t):
    """1 / (1 + exp(t)) evaluated without overflow."""
    if t > 0.0:
        e = math.exp(-t)
        return e / (1.0 + e)
    return 1.0 / (1.0 + math.exp(t))
