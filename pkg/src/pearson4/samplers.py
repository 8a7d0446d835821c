"""Pearson IV generators.

Every algorithm is written for s >= 0; negative skew is handled by sampling
with |s| and negating, which is exact because P(a, -s) has the law of
-P(a, s).  Each algorithm has a ``_prepare_*`` function that computes the
per-parameter constants and returns a closure ``draw(state) -> (x, iters)``.
The public per-variate functions call prepare and draw together, so no
constant survives between variates unless :func:`sample_pearson4` is asked
to precompute.
"""

import enum
import math
from dataclasses import dataclass, field

from . import core, logconcave
from .core import HALF_PI, ArctanMapped, PearsonParams
from .errors import DomainError, IterationCapError
from .rngkit import log_gamma_unit_shape, normal
from .special import logistic_neg, sqrt_expm1

MAX_ITERATIONS = logconcave.MAX_ITERATIONS
ALG4_BETA_MAX = 3.0 / (4.0 * math.pi)
_SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)
_TWO_PI = 2.0 * math.pi
_LOG_HALF_PI = math.log(HALF_PI)
_LOG_2_OVER_PI = math.log(2.0 / math.pi)
# below this log Z the variate cot(Z) overflows a double
_LOG_Z_MIN = -709.0


class AlgorithmId(str, enum.Enum):
    STUDENT_T_POLAR = "student_t_polar"
    T2_INVERSE = "t2_inverse"
    SKEWED_CAUCHY = "skewed_cauchy"
    ALG1 = "alg1"
    ALG2 = "alg2"
    ALG3 = "alg3"
    ALG4 = "alg4"
    ALG5 = "alg5"
    AUTO = "auto"


class PeakBound(str, enum.Enum):
    """How alg2 bounds the peak of the mapped density from below."""

    EXACT_PEAK = "exact"
    GAMMA_MINUS_DELTA = "gamma_minus"
    FRADELIZI = "fradelizi"


@dataclass
class SampleReport:
    variates: list
    iterations: list
    algorithm_used: AlgorithmId
    params: PearsonParams
    seed: int = field(default=0)

    def __post_init__(self):
        if len(self.variates) != len(self.iterations):
            raise ValueError("variates and iterations must have equal length")


# -- one-liners --------------------------------------------------------------

def _scaled_student(u_radius, u_angle, nu):
    # T_nu / sqrt(nu) from the polar representation
    return math.sin(_TWO_PI * u_angle) * sqrt_expm1(-(2.0 / nu) * math.log(u_radius))


def student_t_polar(state, nu):
    """Student-t(nu) variate by Bailey's polar method, any nu > 0.

    May return +-inf when nu is so small that the variate exceeds the
    double range.
    """
    if not nu > 0.0:
        raise DomainError("Student-t needs nu > 0")
    u = state.uniform()
    v = state.uniform()
    return math.sqrt(nu) * _scaled_student(u, v, nu)


def t2_from_uniform(u):
    return (2.0 * u - 1.0) / math.sqrt(2.0 * u * (1.0 - u))


def t2_inverse(state):
    """Student-t with 2 degrees of freedom by inversion."""
    return t2_from_uniform(state.uniform())


def skewed_cauchy_offset(u, s):
    """pi/2 - W for the skewed Cauchy angle W, s > 0 (avoids cancellation)."""
    return -math.log(u + (1.0 - u) * math.exp(-math.pi * s)) / s


def skewed_cauchy_from_uniform(u, s):
    if s == 0.0:
        return math.pi * (u - 0.5)
    if s < 0.0:
        return -skewed_cauchy_from_uniform(u, -s)
    return HALF_PI - skewed_cauchy_offset(u, s)


def skewed_cauchy_y(state, s):
    """Angle W with density proportional to exp(s w) on [-pi/2, pi/2]."""
    return skewed_cauchy_from_uniform(state.uniform(), s)


def _cot(d):
    return math.cos(d) / math.sin(d)


def skewed_cauchy(state, s):
    """P(1, s) variate, tan(W)."""
    u = state.uniform()
    if s == 0.0:
        return math.tan(math.pi * (u - 0.5))
    x = _cot(skewed_cauchy_offset(u, abs(s)))
    return x if s > 0.0 else -x


# -- alg1: rejection from the Student-t law ---------------------------

def _prepare_alg1(a, s):
    nu = 2.0 * a - 1.0

    def draw(state):
        u = state.uniform
        log = math.log
        for it in range(1, MAX_ITERATIONS + 1):
            e = -log(u())
            x = _scaled_student(u(), u(), nu)
            # atan2(1, x) = pi/2 - atan(x) without cancellation
            if e >= s * math.atan2(1.0, x):
                return x, it
        raise IterationCapError("alg1 exceeded its iteration cap")
    return draw


# -- alg2: universal log-concave method -------------------------------

def alg2_target(params, peak_bound=PeakBound.GAMMA_MINUS_DELTA):
    """LogConcaveTarget for atan(X), s >= 0 and a >= 1."""
    am = ArctanMapped(params)
    peak_bound = PeakBound(peak_bound)
    if peak_bound is PeakBound.EXACT_PEAK:
        log_l = core.log_h_peak(params)
    elif peak_bound is PeakBound.GAMMA_MINUS_DELTA:
        log_l = core.gamma_bounds(params).log_gamma_minus + core.log_delta(params)
    else:
        log_l = math.log(core.peak_lower_bound_fradelizi(params))

    def log_ratio(y):
        return core.h_log_ratio(am, y)
    return logconcave.LogConcaveTarget(log_ratio, am.mode_y, math.exp(log_l))


def _prepare_alg2(a, s, peak_bound=PeakBound.GAMMA_MINUS_DELTA, envelope_scale=1.0):
    target = alg2_target(PearsonParams(a, s), peak_bound)

    def draw(state):
        y, it = logconcave.sample(target, state, envelope_scale=envelope_scale)
        return math.tan(y), it
    return draw


# -- alg3: exponential envelope for the mapped density ----------------

def _prepare_alg3(a, s):
    k = 2.0 * a - 2.0

    def draw(state):
        u = state.uniform
        for it in range(1, MAX_ITERATIONS + 1):
            v = u()
            if s < 1e-8:
                d = math.pi * (1.0 - v)
            else:
                d = skewed_cauchy_offset(v, s)
            # d = pi/2 - Y, so cos Y = sin d
            if k == 0.0 or math.log(u()) <= k * math.log(math.sin(d)):
                return _cot(d), it
        raise IterationCapError("alg3 exceeded its iteration cap")
    return draw


# -- alg4: Gaussian or uniform envelope -------------------------------

def _alg4_region(a, s):
    return a > 1.0 and abs(s) <= 3.0 * (a - 1.0) / (2.0 * math.pi)


def _alg4_extended_region(a, s):
    # g''(y) = -2(a-1)/cos^2 y <= -2(a-1) <= -tau^2 exactly when beta <= 1,
    # so the Gaussian envelope still dominates h there; the uniform branch
    # is valid everywhere.  Only the iteration bound needs the smaller region.
    return a > 1.0 and abs(s) <= 2.0 * (a - 1.0)


def _prepare_alg4(a, s):
    am = ArctanMapped(PearsonParams(a, s))
    m, tau = am.mode_y, am.tau
    ratio = core.h_log_ratio
    gaussian = tau >= _SQRT_2_OVER_PI

    def draw(state):
        u = state.uniform
        log = math.log
        if gaussian:
            for it in range(1, MAX_ITERATIONS + 1):
                n = normal(state)
                y = m + n / tau
                if abs(y) < HALF_PI and log(u()) - 0.5 * n * n <= ratio(am, y):
                    return math.tan(y), it
        else:
            for it in range(1, MAX_ITERATIONS + 1):
                y = math.pi * (u() - 0.5)
                if log(u()) <= ratio(am, y):
                    return math.tan(y), it
        raise IterationCapError("alg4 exceeded its iteration cap")
    return draw


# -- alg5: symmetrization for 1/2 < a <= 1 ----------------------------

def _prepare_alg5(a, s):
    p = 2.0 * a - 1.0
    k = 2.0 * (1.0 - a)
    log_s = math.log(s) if s > 0.0 else 0.0
    gamma_branch = s >= 1.0

    def log_sine_ratio(z):
        # log((2z / pi) / sin z) <= 0
        if z < 1e-8:
            return _LOG_2_OVER_PI
        return _LOG_2_OVER_PI + math.log(z / math.sin(z))

    def draw(state):
        u = state.uniform
        log = math.log
        for it in range(1, MAX_ITERATIONS + 1):
            if gamma_branch:
                log_z = log_gamma_unit_shape(state, p) - log_s
                if log_z >= _LOG_HALF_PI:
                    continue
            else:
                log_z = log(u()) / p + _LOG_HALF_PI
            if log_z < _LOG_Z_MIN:
                continue
            z = math.exp(log_z)
            lu = log(u())
            if k != 0.0:
                lu -= k * log_sine_ratio(z)
            # cosh(s(pi/2 - z)) against the exponential bound of each branch
            if gamma_branch:
                corr = math.log1p(math.exp(-s * (math.pi - 2.0 * z))) - math.log(2.0)
            else:
                corr = (math.log(math.exp(-s * z) + math.exp(-s * (math.pi - z)))
                        - math.log(2.0))
            if lu <= corr:
                break
        else:
            raise IterationCapError("alg5 exceeded its iteration cap")
        sign = 1.0 if u() < 0.5 else -1.0
        y = sign * (HALF_PI - z)
        x = sign * _cot(z)
        if u() < logistic_neg(2.0 * s * y):
            x = -x
        return x, it
    return draw


def _prepare_student(a, s):
    nu = 2.0 * a - 1.0

    def draw(state):
        u = state.uniform
        # for nu near 0 most of the mass lies past the double range; such
        # draws are redrawn, as alg5 does, and counted as iterations
        for it in range(1, MAX_ITERATIONS + 1):
            x = _scaled_student(u(), u(), nu)
            if math.isfinite(x):
                return x, it
        raise IterationCapError("Student-t draw exceeded its iteration cap")
    return draw


def _prepare_t2(a, s):
    root_half = math.sqrt(0.5)

    def draw(state):
        return t2_inverse(state) * root_half, 1
    return draw


def _prepare_cauchy(a, s):
    def draw(state):
        return skewed_cauchy(state, s), 1
    return draw


# -- regions and dispatch ----------------------------------------------------

REGIONS = {
    AlgorithmId.STUDENT_T_POLAR: "s = 0",
    AlgorithmId.T2_INVERSE: "a = 3/2 and s = 0",
    AlgorithmId.SKEWED_CAUCHY: "a = 1",
    AlgorithmId.ALG1: "a > 1/2 and |s| <= 5",
    AlgorithmId.ALG2: "a >= 1",
    AlgorithmId.ALG3: "a = 1, or 1 <= a <= 3 and |s| <= 3",
    AlgorithmId.ALG4: "a > 1 and |s| <= 3(a - 1)/(2 pi)",
    AlgorithmId.ALG5: "1/2 < a <= 1",
    AlgorithmId.AUTO: "a > 1/2",
}


def in_region(algorithm, params):
    """Whether ``algorithm`` is valid (and uniformly fast) at ``params``."""
    a, s = params.a, abs(params.s)
    algorithm = AlgorithmId(algorithm)
    if algorithm is AlgorithmId.STUDENT_T_POLAR:
        return s == 0.0
    if algorithm is AlgorithmId.T2_INVERSE:
        return a == 1.5 and s == 0.0
    if algorithm is AlgorithmId.SKEWED_CAUCHY:
        return a == 1.0
    if algorithm is AlgorithmId.ALG1:
        return s <= 5.0
    if algorithm is AlgorithmId.ALG2:
        return a >= 1.0
    if algorithm is AlgorithmId.ALG3:
        return a == 1.0 or (1.0 <= a <= 3.0 and s <= 3.0)
    if algorithm is AlgorithmId.ALG4:
        return _alg4_region(a, s)
    if algorithm is AlgorithmId.ALG5:
        return a <= 1.0
    return True


def check_region(algorithm, params):
    algorithm = AlgorithmId(algorithm)
    if not in_region(algorithm, params):
        raise DomainError(
            f"{algorithm.value} requires {REGIONS[algorithm]}; got a={params.a!r}, s={params.s!r}")


def select_algorithm(params):
    """The automatic choice, which is uniformly fast over all (a, s)."""
    a, s = params.a, abs(params.s)
    if s == 0.0:
        return AlgorithmId.STUDENT_T_POLAR
    if a < 1.0:
        return AlgorithmId.ALG5
    if a == 1.0:
        return AlgorithmId.SKEWED_CAUCHY
    if _alg4_region(a, s):
        return AlgorithmId.ALG4
    return AlgorithmId.ALG2


_PREPARE = {
    AlgorithmId.STUDENT_T_POLAR: _prepare_student,
    AlgorithmId.T2_INVERSE: _prepare_t2,
    AlgorithmId.SKEWED_CAUCHY: _prepare_cauchy,
    AlgorithmId.ALG1: _prepare_alg1,
    AlgorithmId.ALG2: _prepare_alg2,
    AlgorithmId.ALG3: _prepare_alg3,
    AlgorithmId.ALG4: _prepare_alg4,
    AlgorithmId.ALG5: _prepare_alg5,
}


def prepare(params, algorithm=AlgorithmId.AUTO, extended=False, **options):
    """Validated closure ``draw(state) -> (x, iterations)`` for ``params``.

    ``options`` are forwarded to alg2 (``peak_bound``,
    ``envelope_scale``).  ``extended=True`` lets alg4 run wherever
    its envelope is still exact (``|s| <= 2(a - 1)``), outside the region
    where its iteration bound is proven.
    """
    algorithm = AlgorithmId(algorithm)
    if algorithm is AlgorithmId.AUTO:
        algorithm = select_algorithm(params)
    elif algorithm is AlgorithmId.ALG4 and extended:
        if not _alg4_extended_region(params.a, params.s):
            raise DomainError(
                f"alg4 (extended) requires a > 1 and |s| <= 2(a - 1); got a={params.a!r}, s={params.s!r}")
    else:
        check_region(algorithm, params)
    a, s = params.a, params.s
    if algorithm is AlgorithmId.ALG2:
        inner = _prepare_alg2(a, abs(s), **options)
    else:
        inner = _PREPARE[algorithm](a, abs(s))
    if s >= 0.0:
        return algorithm, inner

    def reflected(state):
        x, it = inner(state)
        return -x, it
    return algorithm, reflected


def _reflect_call(prep, params, state, *args):
    x, it = prep(params.a, abs(params.s), *args)(state)
    return (x, it) if params.s >= 0.0 else (-x, it)


def alg1_student_rejection(state, params):
    """Rejection from the Student-t law; practical for |s| up to about 5."""
    return _reflect_call(_prepare_alg1, params, state)


def alg2_logconcave(state, params, peak_bound=PeakBound.GAMMA_MINUS_DELTA, envelope_scale=1.0):
    """Universal log-concave method on atan(X), a >= 1."""
    if params.a < 1.0:
        raise DomainError("alg2 requires a >= 1")
    return _reflect_call(_prepare_alg2, params, state, peak_bound, envelope_scale)


def alg3_exponential(state, params):
    """Exponential envelope on atan(X), a >= 1; fast for small a and |s|."""
    if params.a < 1.0:
        raise DomainError("alg3 requires a >= 1")
    return _reflect_call(_prepare_alg3, params, state)


def alg4_gaussian(state, params, extended=False):
    """Normal (or uniform) envelope on atan(X) near s = 0."""
    inside = _alg4_extended_region if extended else _alg4_region
    if not inside(params.a, params.s):
        region = "a > 1 and |s| <= 2(a - 1)" if extended else REGIONS[AlgorithmId.ALG4]
        raise DomainError(f"alg4 requires {region}")
    return _reflect_call(_prepare_alg4, params, state)


def alg5_small_a(state, params):
    """Symmetrization and rejection for 1/2 < a <= 1."""
    if not params.a <= 1.0:
        raise DomainError("alg5 requires 1/2 < a <= 1")
    return _reflect_call(_prepare_alg5, params, state)


def sample_pearson4(state, params, algorithm=AlgorithmId.AUTO, n=1, precompute=True, **options):
    """Draw ``n`` Pearson IV variates and report the work each one took.

    With ``precompute=False`` the algorithm constants are recomputed for
    every variate, which is what a caller with changing parameters pays.
    """
    used, draw = prepare(params, algorithm, **options)
    xs = []
    its = []
    for _ in range(n):
        if not precompute:
            _, draw = prepare(params, used, **options)
        x, it = draw(state)
        xs.append(x)
        its.append(it)
    return SampleReport(xs, its, used, params, getattr(state, "seed", 0))
