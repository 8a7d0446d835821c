"""Oracles and statistical checks for the samplers.

Nothing here calls a sampler.  CDFs come from adaptive quadrature of the
density, so a KS comparison pits two independently written routes against
each other.
"""

import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from .core import ArcCoordinates, PearsonParams
from .errors import DomainError
from .quadrature import adaptive_simpson

KS_CONSTANT = 2.2
MOMENT_Z = 6.0


class NumericCdf:
    """Tabulated CDF of a density given on the log scale in a coordinate t.

    The node masses come from adaptive Simpson on each of ``cells`` equal
    cells of ``[t_lo, t_hi]``; between nodes the CDF is the cubic Hermite
    interpolant built from the node values and the exact density.  ``to_t``
    maps an array of sample values to t.
    """

    def __init__(self, log_g, t_lo, t_hi, to_t, cells=4096, tol=1e-13, breaks=(), label=""):
        self.label = label
        self._to_t = to_t
        ts = np.linspace(t_lo, t_hi, cells + 1)
        for b in breaks:
            j = int(np.argmin(np.abs(ts - b)))
            if 0 < j < cells:
                ts[j] = b
        g = lambda t: _safe_exp(log_g(t))
        dens = np.array([g(float(t)) for t in ts])
        masses = np.array([adaptive_simpson(g, float(lo), float(hi), tol=tol, max_depth=60)
                           for lo, hi in zip(ts[:-1], ts[1:])])
        cum = np.concatenate(([0.0], np.cumsum(masses)))
        total = cum[-1]
        self.ts = ts
        self.total_mass = total
        self.values = np.minimum(np.maximum.accumulate(cum / total), 1.0)
        self.dens = dens / total
        # interpolation error estimated at the cell midpoints
        mids = 0.5 * (ts[:-1] + ts[1:])
        step = max(1, cells // 64)
        errs = [abs(self._interp(np.array([mids[j]]))[0]
                    - (cum[j] + adaptive_simpson(g, float(ts[j]), float(mids[j]), tol=tol)) / total)
                for j in range(0, cells, step)]
        self.tolerance_achieved = float(max(errs))

    def _interp(self, t):
        ts, vals, dens = self.ts, self.values, self.dens
        j = np.clip(np.searchsorted(ts, t, side="right") - 1, 0, len(ts) - 2)
        h = ts[j + 1] - ts[j]
        w = np.clip((t - ts[j]) / h, 0.0, 1.0)
        w2 = w * w
        w3 = w2 * w
        f = ((2 * w3 - 3 * w2 + 1) * vals[j] + (w3 - 2 * w2 + w) * h * dens[j]
             + (-2 * w3 + 3 * w2) * vals[j + 1] + (w3 - w2) * h * dens[j + 1])
        return np.clip(f, vals[j], vals[j + 1])

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return self._interp(self._to_t(x))

    @classmethod
    def for_pearson(cls, params, cells=4096):
        """CDF of P(a, s) tabulated in the arctan coordinate."""
        arc = ArcCoordinates(params)
        p, t_max = arc.p, arc.t_max

        def to_t(x):
            with np.errstate(divide="ignore"):
                z = np.arctan(1.0 / np.abs(x))
            return np.sign(x) * (t_max - z ** p)
        return cls(arc.log_g, -t_max, t_max, to_t, cells, breaks=arc.breaks(),
                   label=f"pearson4(a={params.a}, s={params.s})")

    @classmethod
    def for_logpdf(cls, logpdf, center=0.0, scale=1.0, cells=4096, label=""):
        """CDF of an unbounded density through x = center + scale * tan(t)."""
        def log_g(t):
            c = math.cos(t)
            if c <= 0.0:
                return -math.inf
            return logpdf(center + scale * math.tan(t)) + math.log(scale) - 2.0 * math.log(c)

        def to_t(x):
            return np.arctan((x - center) / scale)
        return cls(log_g, -0.5 * math.pi, 0.5 * math.pi, to_t, cells, label=label)


def _safe_exp(v):
    return math.exp(v) if v > -745.0 else 0.0


def cdf(params, x, tol=1e-13):
    """P(X <= x) by direct quadrature (absolute error far below 1e-8)."""
    arc = ArcCoordinates(params)
    g = arc.g
    t = arc.t_of_x(x) if math.isfinite(x) else math.copysign(arc.t_max, x)
    brk = arc.breaks()
    total = adaptive_simpson(g, -arc.t_max, arc.t_max, tol=tol, breaks=brk)
    if t <= 0.0:
        part = adaptive_simpson(g, -arc.t_max, t, tol=tol, breaks=brk)
        return min(1.0, max(0.0, part / total))
    part = adaptive_simpson(g, t, arc.t_max, tol=tol, breaks=brk)
    return min(1.0, max(0.0, 1.0 - part / total))


def mapped_moments(params):
    """Mean and variance of atan(X) by quadrature (a >= 1)."""
    arc = ArcCoordinates(params)
    g = arc.g
    lo, hi, brk = -arc.t_max, arc.t_max, arc.breaks()
    m0 = adaptive_simpson(g, lo, hi, tol=1e-13, breaks=brk)
    m1 = adaptive_simpson(lambda y: y * g(y), lo, hi, tol=1e-13, breaks=brk) / m0
    m2 = adaptive_simpson(lambda y: (y - m1) ** 2 * g(y), lo, hi, tol=1e-13, breaks=brk) / m0
    return m1, m2


@dataclass(frozen=True)
class KsResult:
    statistic: float
    n: int
    threshold: float
    passed: bool
    m: int = 0

    def to_json(self):
        return json.dumps(asdict(self))


def ks_one_sample(samples, cdf_evaluator, threshold=None):
    """One-sample KS statistic; default threshold 2.2 / sqrt(n)."""
    xs = np.sort(np.asarray(samples, dtype=float))
    n = len(xs)
    if n == 0:
        raise DomainError("KS test needs at least one sample")
    f = np.asarray(cdf_evaluator(xs), dtype=float)
    i = np.arange(1, n + 1)
    d = float(max(np.max(i / n - f), np.max(f - (i - 1) / n)))
    if threshold is None:
        threshold = KS_CONSTANT / math.sqrt(n)
    return KsResult(d, n, threshold, d <= threshold)


def ks_two_sample(samples_a, samples_b, threshold=None):
    a = np.sort(np.asarray(samples_a, dtype=float))
    b = np.sort(np.asarray(samples_b, dtype=float))
    n, m = len(a), len(b)
    if n == 0 or m == 0:
        raise DomainError("two-sample KS needs nonempty samples")
    pts = np.concatenate((a, b))
    fa = np.searchsorted(a, pts, side="right") / n
    fb = np.searchsorted(b, pts, side="right") / m
    d = float(np.max(np.abs(fa - fb)))
    if threshold is None:
        threshold = KS_CONSTANT * math.sqrt((n + m) / (n * m))
    return KsResult(d, n, threshold, d <= threshold, m)


@dataclass(frozen=True)
class MomentCheck:
    passed: bool
    z_mean: float
    sample_mean: float
    sample_variance: float
    expected_mean: float
    expected_variance: float
    n: int


def moment_check(samples, expected_mean, expected_variance, z_max=MOMENT_Z):
    """Pass iff the sample mean is within ``z_max`` standard errors."""
    if not (expected_variance > 0.0 and math.isfinite(expected_variance)):
        raise DomainError("expected variance must be finite and positive")
    xs = np.asarray(samples, dtype=float)
    n = len(xs)
    mu = float(np.mean(xs))
    var = float(np.var(xs, ddof=1)) if n > 1 else 0.0
    z = (mu - expected_mean) / math.sqrt(expected_variance / n)
    return MomentCheck(abs(z) <= z_max, z, mu, var, expected_mean, expected_variance, n)


@dataclass(frozen=True)
class IterationStats:
    mean: float
    max: int
    histogram: dict


def iteration_stats(report):
    its = report.iterations if hasattr(report, "iterations") else report
    if len(its) == 0:
        raise DomainError("empty report")
    values, counts = np.unique(np.asarray(its), return_counts=True)
    hist = {int(v): int(c) for v, c in zip(values, counts)}
    return IterationStats(float(np.mean(its)), int(values[-1]), hist)


def pearson_cdf_table(a, s, cells=4096):
    return NumericCdf.for_pearson(PearsonParams(a, s), cells)
