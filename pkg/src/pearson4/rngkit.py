"""Seedable primitive random quantities.

The base generator is SplitMix64 (Steele, Lea and Flood, 2014) used in
counter mode: word ``k`` of the stream for ``seed`` is

    mix(seed + (k + 1) * 0x9E3779B97F4A7C15 mod 2**64)

with the mixing function

    z ^= z >> 30; z *= 0xBF58476D1CE4E5B9
    z ^= z >> 27; z *= 0x94D049BB133111EB
    z ^= z >> 31

Because every word is a pure function of ``(seed, k)``, blocks of words are
computed with numpy and served one at a time; the stream does not depend on
the block size.

Uniforms take the top 52 bits ``w >> 12`` of a word and return
``(2 * (w >> 12) + 1) * 2**-53``, which is exact in double precision and
lies in ``[2**-53, 1 - 2**-53]``, so ``log(u)`` and ``1 / u`` are always
finite.

Standard normals use Marsaglia's polar method (no cached second value).
Gamma variates with shape in (0, 1] use Marsaglia and Tsang's squeeze
method at shape + 1 followed by the power transform G_a = G_{a+1} U^{1/a};
the expected number of normal/uniform pairs is below 1.05 for every shape.
"""

import math

import numpy as np

from .errors import DomainError

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_BLOCK = 4096


def _mix(z):
    z = z ^ (z >> np.uint64(30))
    z = z * _MIX1
    z = z ^ (z >> np.uint64(27))
    z = z * _MIX2
    return z ^ (z >> np.uint64(31))


def splitmix64_words(seed, start, count):
    """Words ``start .. start + count - 1`` of the stream for ``seed``."""
    k = np.arange(start + 1, start + 1 + count, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed & MASK64) + k * np.uint64(GOLDEN_GAMMA)
        return _mix(z)


def words_to_uniforms(words):
    top = (words >> np.uint64(12)).astype(np.float64)
    return (2.0 * top + 1.0) * 2.0 ** -53


class RngState:
    """Deterministic stream of open-interval uniforms.

    A state belongs to one execution stream.  Use :meth:`spawn` to derive
    independent child streams for parallel work.
    """

    def __init__(self, seed=0):
        seed = int(seed)
        if not 0 <= seed <= MASK64:
            raise DomainError("seed must be a 64-bit unsigned integer")
        self.seed = seed
        self._block_start = 0
        self._buf = []
        self._pos = 0

    @property
    def counter(self):
        """Number of 64-bit words consumed so far."""
        return self._block_start + self._pos

    def _refill(self):
        self._block_start += len(self._buf)
        self._buf = words_to_uniforms(
            splitmix64_words(self.seed, self._block_start, _BLOCK)).tolist()
        self._pos = 0

    def uniform(self):
        pos = self._pos
        if pos == len(self._buf):
            self._refill()
            pos = 0
        self._pos = pos + 1
        return self._buf[pos]

    def uniforms(self, n):
        """Next ``n`` uniforms as a numpy array (same stream as :meth:`uniform`)."""
        out = np.empty(n)
        for i in range(n):
            out[i] = self.uniform()
        return out

    def spawn(self, key):
        """Independent state whose seed is derived from ``(seed, key)``."""
        z = splitmix64_words(self.seed ^ (int(key) * 0xD1B54A32D192ED03 & MASK64), 0, 1)
        return RngState(int(z[0]))

    def copy(self):
        other = RngState(self.seed)
        other._block_start = self._block_start
        other._buf = self._buf
        other._pos = self._pos
        return other

    def __repr__(self):
        return f"RngState(seed={self.seed}, counter={self.counter})"


def uniform(state):
    """Uniform on the open interval (0, 1)."""
    return state.uniform()


def exponential(state):
    """Standard exponential, -log(U)."""
    return -math.log(state.uniform())


def normal(state):
    """Standard normal by Marsaglia's polar method."""
    u = state.uniform
    while True:
        v1 = 2.0 * u() - 1.0
        v2 = 2.0 * u() - 1.0
        w = v1 * v1 + v2 * v2
        if 0.0 < w < 1.0:
            return v1 * math.sqrt(-2.0 * math.log(w) / w)


def random_sign(state):
    return 1 if state.uniform() < 0.5 else -1


def _marsaglia_tsang(state, alpha):
    # alpha >= 1
    d = alpha - 1.0 / 3.0
    c = 1.0 / math.sqrt(9.0 * d)
    while True:
        x = normal(state)
        v = 1.0 + c * x
        if v <= 0.0:
            continue
        v = v * v * v
        u = state.uniform()
        x2 = x * x
        if u < 1.0 - 0.0331 * x2 * x2:
            return d * v
        if math.log(u) < 0.5 * x2 + d * (1.0 - v + math.log(v)):
            return d * v


def log_gamma_unit_shape(state, shape):
    """Logarithm of a gamma(shape) variate, shape in (0, 1].

    Working on the log scale keeps tiny shapes usable: for shape 1e-4 the
    variate itself underflows most of the time, its logarithm never does.
    """
    if not 0.0 < shape <= 1.0:
        raise DomainError(f"gamma_unit_shape needs shape in (0, 1], got {shape!r}")
    g = _marsaglia_tsang(state, shape + 1.0)
    return math.log(g) + math.log(state.uniform()) / shape


def gamma_unit_shape(state, shape):
    """Gamma(shape) variate with unit scale, shape in (0, 1]."""
    return math.exp(log_gamma_unit_shape(state, shape))
