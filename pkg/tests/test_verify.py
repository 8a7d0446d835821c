import math

import numpy as np
import pytest

from pearson4.core import PearsonParams
from pearson4.errors import DomainError
from pearson4.rngkit import RngState
from pearson4.samplers import sample_pearson4
from pearson4.verify import (
    KsResult, NumericCdf, cdf, iteration_stats, ks_one_sample, ks_two_sample, moment_check,
)


def test_cdf_examples():
    for a in (0.6, 1.0, 2.5, 40.0):
        assert cdf(PearsonParams(a, 0.0), 0.0) == pytest.approx(0.5, abs=1e-12)
    assert cdf(PearsonParams(1, 0), 1.0) == pytest.approx(0.75, abs=1e-12)
    assert cdf(PearsonParams(1.5, 0), 1.0) == pytest.approx(0.5 + 1 / (2 * math.sqrt(2)), abs=1e-12)


@pytest.mark.parametrize("a,s", [(0.55, 0.0), (0.75, 2.0), (1.0, 9.0), (2.0, 1.0), (9.0, -30.0), (500.0, 10.0)])
def test_table_matches_direct_cdf_and_tails(a, s):
    p = PearsonParams(a, s)
    table = NumericCdf.for_pearson(p)
    assert table.tolerance_achieved < 1e-8
    xs = np.array([-1e3, -3.0, -0.2, 0.0, 0.4, 2.0, 50.0])
    for x, f in zip(xs, table(xs)):
        assert f == pytest.approx(cdf(p, float(x)), abs=1e-8)
    if a >= 1.0:
        # for a < 1 the tails decay like |x|^(1 - 2a), far too slowly
        assert table(np.array([-1e8]))[0] < 1e-6
        assert table(np.array([1e8]))[0] > 1 - 1e-6
    assert table.values[0] == 0.0 and table.values[-1] == pytest.approx(1.0, abs=1e-15)
    grid = np.linspace(-20, 20, 5001)
    assert (np.diff(table(grid)) >= 0).all()


def test_heavy_tails_near_half():
    # for a = 0.55 most mass hides far out, yet the table stays monotone
    table = NumericCdf.for_pearson(PearsonParams(0.55, 0))
    v = table(np.array([-1e8, -1e3, 0.0, 1e3, 1e8]))
    assert (np.diff(v) > 0).all() and v[2] == pytest.approx(0.5, abs=1e-12)


def test_ks_one_sample_examples():
    r = ks_one_sample([0.0], lambda x: 0.5 + 0 * np.asarray(x))
    assert r.statistic == 0.5 and r.n == 1
    n = 200
    q = (np.arange(1, n + 1) - 0.5) / n
    assert ks_one_sample(q, lambda x: x).statistic == pytest.approx(1 / (2 * n))
    u = RngState(1).uniforms(100_000)
    r = ks_one_sample(u, lambda x: x)
    assert r.passed and r.threshold == pytest.approx(2.2 / math.sqrt(1e5))
    with pytest.raises(DomainError):
        ks_one_sample([], lambda x: x)


def test_ks_two_sample_examples():
    a = np.arange(10.0)
    assert ks_two_sample(a, a).statistic == 0.0
    assert ks_two_sample(a, a + 100).statistic == 1.0
    x = RngState(2).uniforms(100_000)
    y = RngState(3).uniforms(100_000)
    r = ks_two_sample(x, y)
    assert r.passed and r.m == 100_000
    with pytest.raises(DomainError):
        ks_two_sample([], [1.0])


def test_ks_result_json():
    r = KsResult(0.01, 10, 0.1, True)
    assert '"statistic": 0.01' in r.to_json()


def test_moment_check_examples():
    r = moment_check(np.full(100, 2.0), 2.0, 1.0)
    assert r.passed and r.z_mean == 0.0
    shifted = np.full(100, 2.0 + 10 * math.sqrt(1.0 / 100))
    assert not moment_check(shifted, 2.0, 1.0).passed
    with pytest.raises(DomainError):
        moment_check([1.0], 0.0, 0.0)
    with pytest.raises(DomainError):
        moment_check([1.0], 0.0, math.inf)
    xs = sample_pearson4(RngState(4), PearsonParams(5, 4), n=100_000).variates
    assert moment_check(xs, 0.5, 5 / 28).passed


def test_iteration_stats():
    s = iteration_stats([1, 1, 1])
    assert s.mean == 1.0 and s.max == 1 and s.histogram == {1: 3}
    r = sample_pearson4(RngState(5), PearsonParams(3, 3), "alg2", n=10_000, peak_bound="exact")
    assert 3.6 <= iteration_stats(r).mean <= 4.4
    r = sample_pearson4(RngState(6), PearsonParams(16, 6), "alg4", n=10_000)
    assert iteration_stats(r).mean <= 4.3
    with pytest.raises(DomainError):
        iteration_stats([])


def test_logpdf_table():
    table = NumericCdf.for_logpdf(lambda x: -0.5 * x * x - 0.5 * math.log(2 * math.pi))
    import scipy.stats as st
    x = np.linspace(-6, 6, 101)
    assert np.allclose(table(x), st.norm.cdf(x), atol=1e-10)
