"""Universal rejection sampler for log-concave densities.

Only three things about the target are needed: a function returning
log(h(y) / h(m)), the mode m, and a number 0 < L <= h(m).  For a
log-concave h with mode m,

    h(y) / h(m) <= min(1, exp(1 - L |y - m|)),

and proposals from that envelope are accepted after an expected
4 h(m) / L rounds.  The normalization of h is never used.
"""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, IterationCapError

MAX_ITERATIONS = 10 ** 6


@dataclass(frozen=True)
class LogConcaveTarget:
    """A unimodal log-concave target known up to its normalization.

    ``log_ratio`` may return -inf outside the support.  ``peak_bound`` must
    not exceed the peak of the *normalized* density.
    """

    log_ratio: Callable[[float], float]
    mode: float
    peak_bound: float
    debug: bool = False

    def __post_init__(self):
        if not (self.peak_bound > 0.0 and math.isfinite(self.peak_bound)):
            raise DomainError(f"peak bound must be positive and finite, got {self.peak_bound!r}")
        if abs(self.log_ratio(self.mode)) > 1e-9:
            raise DomainError("log_ratio must vanish at the mode")
        if self.debug:
            self.validate()

    def envelope_log(self, y):
        return min(0.0, 1.0 - self.peak_bound * abs(y - self.mode))

    def validate(self, points=10_000, span=12.0):
        """Check log_ratio <= 0 and the envelope on a grid around the mode."""
        half = span / self.peak_bound
        for y in np.linspace(self.mode - half, self.mode + half, points):
            lr = self.log_ratio(float(y))
            if lr > 1e-12:
                raise DomainError(f"log_ratio({y!r}) = {lr!r} > 0: mode is not the maximizer")


def sample(target, state, max_iterations=MAX_ITERATIONS, envelope_scale=1.0):
    """One variate from ``target``; returns ``(y, iterations)``.

    ``envelope_scale`` multiplies the envelope in the acceptance test.  Any
    value below 1 breaks the domination and is meant only for checking that
    the test harness notices.
    """
    u = state.uniform
    log = math.log
    m = target.mode
    inv_l = 1.0 / target.peak_bound
    log_ratio = target.log_ratio
    log_scale = log(envelope_scale)
    for it in range(1, max_iterations + 1):
        v = 4.0 * u() - 2.0
        if v < -1.0:
            v = -1.0 + log(v + 2.0)
        elif v > 1.0:
            v = 1.0 - log(v - 1.0)
        y = m + v * inv_l
        # L |y - m| is |v| up to rounding
        env = 1.0 - abs(v)
        if env > 0.0:
            env = 0.0
        if log(u()) + env + log_scale <= log_ratio(y):
            return y, it
    raise IterationCapError(
        f"no acceptance in {max_iterations} rounds: envelope does not dominate the target")
