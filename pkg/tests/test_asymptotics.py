import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from colperm.asymptotics import (
    RunningMoments,
    ks_distance,
    mc_class_sample,
    normal_cdf,
    sample_values,
    single_cycle,
    theoretical_moments,
)
from colperm.conjugacy import RPartition
from colperm.enumeration import Domain
from colperm.moments import moment_enumerated
from colperm.rng import stream
from colperm.stats import Statistic

import oracles


def test_formulas_examples():
    t = theoretical_moments("des", 8, 3)
    assert (t.mu, t.sigma_sq) == (Fraction(25, 6), Fraction(3, 4))
    assert theoretical_moments("maj", 2, 5).mu == Fraction(1, 2)


@pytest.mark.parametrize("stat", ["des", "maj", "fmaj"])
def test_formulas_against_enumeration(stat):
    for n in range(1, 5):
        for r in range(1, 4):
            values = [oracles.stat(stat, x, r) for x in oracles.group(n, r)]
            m1, m2 = oracles.moment(values, 1), oracles.moment(values, 2)
            t = theoretical_moments(stat, n, r)
            assert t.mu == m1
            if stat == "des" and n == 1:
                # one letter against the boundary: des is Bernoulli((r-1)/r), not variance 2/12
                assert m2 - m1 * m1 == Fraction(r - 1, r * r) != t.sigma_sq
            else:
                assert t.sigma_sq == m2 - m1 * m1


def test_normal_cdf():
    assert float(normal_cdf(0.0)) == 0.5
    assert abs(float(normal_cdf(1.959963984540054)) - 0.975) < 1e-12
    assert abs(float(normal_cdf(-3.0)) - 0.0013498980316301) < 1e-12


def test_ks_distance():
    z = stream(5).standard_normal(100_000)
    assert ks_distance(z) < 0.01
    assert ks_distance(np.zeros(10)) >= 0.5
    assert ks_distance([0.0]) == 0.5


@given(st.lists(st.floats(-1e6, 1e6), min_size=1, max_size=40), st.integers(0, 40))
def test_running_moments_merge(values, cut):
    cut = min(cut, len(values))
    whole = RunningMoments.of(values)
    merged = RunningMoments.of(values[:cut]).merge(RunningMoments.of(values[cut:]))
    assert merged.count == whole.count
    assert math.isclose(merged.mean, whole.mean, rel_tol=1e-9, abs_tol=1e-6)
    assert math.isclose(merged.variance, whole.variance, rel_tol=1e-6, abs_tol=1e-3)


def test_identity_class_sample():
    s = mc_class_sample("des", RPartition(((1,) * 5, ())), 1000, seed=1)
    assert s.mean == 0 and s.variance == 0
    assert set(s.values.tolist()) == {0}


def test_sampling_is_reproducible():
    lam = single_cycle(12, 3, 1)
    a = sample_values("fmaj", lam, 45_000, seed=9)
    b = sample_values("fmaj", lam, 45_000, seed=9)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, sample_values("fmaj", lam, 45_000, seed=10))


def test_mean_converges_to_exact_class_mean():
    lam = single_cycle(6, 2)
    N = 50_000
    exact = moment_enumerated(Statistic("fmaj"), Domain.conj_class(lam), 1)
    var = moment_enumerated(Statistic("fmaj"), Domain.conj_class(lam), 2) - exact**2
    s = mc_class_sample("fmaj", lam, N, seed=3)
    assert abs(s.mean - float(exact)) < 5 * math.sqrt(float(var) / N)


def test_mean_of_fifty_cycle():
    N = 200_000
    s = mc_class_sample("des", single_cycle(50, 2), N, seed=4)
    t = theoretical_moments("des", 50, 2)
    assert abs(s.mean - float(t.mu)) < 4 * math.sqrt(float(t.sigma_sq) / N)
