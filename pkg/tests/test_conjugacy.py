import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from colperm.conjugacy import (
    RPartition,
    class_size,
    centralizer_order,
    cycle_type,
    enumerate_class,
    has_no_short_cycles,
    r_partitions,
    representative,
    sample_class,
    sample_class_batch,
)
from colperm.perm import ColoredPermutation, ParameterError, compose, group_order, inverse, parse_element
from colperm.rng import stream

import oracles
from test_perm import EXAMPLE, colored_perms


def _rp(text, r=None):
    return RPartition.parse(text, r)


def test_cycle_type_examples():
    assert cycle_type(EXAMPLE) == RPartition(((), (8,), ()))
    x = parse_element("(1^0 3^2 7^1 6^0)(2^1)(4^2 5^0)(8^0)(9^1)", 3)
    assert cycle_type(x) == RPartition(((4, 1), (1, 1), (2,)))
    assert cycle_type(ColoredPermutation.identity(4, 3)) == RPartition(((1, 1, 1, 1), (), ()))


def test_text_forms():
    lam = _rp("0:[4,1]; 1:[1,1]; 2:[2]")
    assert str(lam) == "0:[4,1]; 1:[1,1]; 2:[2]"
    assert _rp("[[4,1],[1,1],[2]]") == lam
    assert _rp("1:[8]", r=3) == RPartition(((), (8,), ()))
    for bad in ("0:[0]", "0:[3]; 0:[1]", "x", "3:[1]"):
        with pytest.raises(ParameterError):
            _rp(bad, r=2)


@pytest.mark.parametrize("n,r", [(1, 1), (2, 2), (3, 2), (2, 3), (4, 2), (3, 3)])
def test_classes_match_brute_force_orbits(n, r):
    orbits = oracles.conjugacy_orbits(n, r) if n * r <= 8 else None
    lams = r_partitions(n, r)
    assert len(set(lams)) == len(lams)
    assert sum(class_size(l) for l in lams) == group_order(n, r)
    by_type = Counter(oracles.cycle_type(x, r) for x in oracles.group(n, r))
    assert len(lams) == len(by_type)
    for lam in lams:
        members = [oracles.to_tuple(x) for x in enumerate_class(lam)]
        assert len(members) == len(set(members)) == class_size(lam)
        assert {oracles.cycle_type(x, r) for x in members} == {tuple(sorted(lam.cycles()))}
        if orbits is not None:
            assert frozenset(members) in orbits
    if orbits is not None:
        assert len(orbits) == len(lams)


def test_small_counts():
    assert len(r_partitions(2, 2)) == 5
    assert r_partitions(1, 1) == [RPartition(((1,),))]
    assert class_size(RPartition(((1, 1, 1), ()))) == 1
    assert centralizer_order(RPartition(((5,), ()))) == 10


@pytest.mark.parametrize("method", ["filter", "construct"])
def test_enumeration_methods_agree(method):
    for lam in r_partitions(4, 2) + [RPartition(((), (2,)))]:
        got = set(enumerate_class(lam, method))
        assert got == {x for x in enumerate_class(lam, "filter")}
    lam = RPartition(((5,), ()))
    assert sum(1 for _ in enumerate_class(lam, method)) == class_size(lam)


def test_class_size_constructive_above_filter_range():
    lam = RPartition(((9,), ()))
    assert class_size(lam) == math.factorial(8) * 2**8


def test_representative_and_short_cycles():
    for lam in r_partitions(4, 3):
        assert cycle_type(representative(lam)) == lam
    assert has_no_short_cycles(RPartition(((6,), ())), 5)
    assert not has_no_short_cycles(RPartition(((4, 1), (1, 1), (2,))), 1)
    assert has_no_short_cycles(RPartition(((), (8,), ())), 4)


@settings(max_examples=40)
@given(colored_perms(max_n=6), st.integers(0, 2**32 - 1))
def test_conjugation_invariance(x, seed):
    rng = stream(seed)
    g = ColoredPermutation(x.n, x.r, tuple(rng.permutation(x.n) + 1), tuple(rng.integers(0, x.r, x.n)))
    assert cycle_type(compose(compose(g, x), inverse(g))) == cycle_type(x)


def test_sampling_preserves_type():
    lam = RPartition(((3, 2), (1,)))
    om, tau = sample_class_batch(lam, 500, stream(7))
    for w, t in zip(om, tau):
        assert cycle_type(ColoredPermutation(6, 2, tuple(w), tuple(t))) == lam
    ident = RPartition(((1, 1, 1), ()))
    assert sample_class(ident, 3) == ColoredPermutation.identity(3, 2)
    assert sample_class(lam, 11, 4) == sample_class(lam, 11, 4)


def test_sampling_is_uniform():
    lam = RPartition(((3,), ()))  # 3!/3 * 2^3 / 2 = 8 elements
    members = sorted((x.omega, x.tau) for x in enumerate_class(lam))
    assert len(members) <= 24
    N = 100_000
    om, tau = sample_class_batch(lam, N, stream(2024))
    counts = Counter(zip(map(tuple, om.tolist()), map(tuple, tau.tolist())))
    assert set(counts) == set(members)
    p = 1 / len(members)
    sd = math.sqrt(N * p * (1 - p))
    assert all(abs(c - N * p) < 5 * sd for c in counts.values())
    chi2 = sum((c - N * p) ** 2 / (N * p) for c in counts.values())
    dof = len(members) - 1
    assert chi2 < dof + 5 * math.sqrt(2 * dof)
