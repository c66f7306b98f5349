import itertools

import pytest

from colperm.blocks import (
    NotInYoungSubgroupError,
    ShortCycleError,
    colored_descents,
    descents_in_orbit,
    induced_blocks,
    j_conjugate,
    j_orbit,
    run_colored_descents,
    young_order,
    young_subgroup,
)
from colperm.conjugacy import RPartition, enumerate_class, has_no_short_cycles, r_partitions
from colperm.perm import ColoredPermutation, compose, elements, inverse, parse_cycles, permutation_from_cycles
from colperm.stats import descent_set

import oracles

WORKED = "(1^0 3^1 8^2 5^2 2^0 7^0 4^1 9^0 6^2)"
WORKED_TRACE = [
    "(1^0 1^1 8^2 4^2 1^0 7^0 4^1 9^0 4^2)",
    "(1^0 1^1 8^2 5^2 1^0 7^0 4^1 9^0 5^2)",
    "(2^0 1^1 8^2 5^2 3^0 7^0 4^1 9^0 5^2)",
    "(2^0 1^1 8^2 5^2 3^0 7^0 4^1 9^0 6^2)",
]


def test_induced_blocks():
    assert induced_blocks({1, 2, 4, 7}, 8).blocks == ((1, 2, 3), (4, 5), (6,), (7, 8))
    assert induced_blocks({1, 2, 4, 7, 8}, 8) == induced_blocks({1, 2, 4, 7}, 8)
    assert induced_blocks((), 3).blocks == ((1,), (2,), (3,))
    assert young_order(induced_blocks({1, 2, 4, 7}, 8)) == 24
    assert young_order(induced_blocks((), 5)) == 1
    assert young_order(induced_blocks(range(1, 5), 5)) == 120
    assert len(young_subgroup(induced_blocks({1, 3}, 4))) == 4


def test_j_conjugate_is_group_conjugation_s42():
    blocks = induced_blocks({1}, 4)
    for pi in young_subgroup(blocks):
        g = ColoredPermutation(4, 2, pi, (0,) * 4)
        for x in elements(4, 2):
            assert j_conjugate(pi, x, blocks) == compose(compose(g, x), inverse(g))
    x = next(iter(elements(4, 2)))
    assert j_conjugate((1, 2, 3, 4), x) == x
    with pytest.raises(NotInYoungSubgroupError):
        j_conjugate((1, 3, 2, 4), x, blocks)


def test_colors_follow_relabeled_values():
    x = permutation_from_cycles(parse_cycles(WORKED), 9, 3)
    pi = (2, 3, 1, 6, 4, 5, 7, 8, 9)
    y = j_conjugate(pi, x)
    for i in range(1, 10):
        assert y.tau[pi[i - 1] - 1] == x.tau[i - 1]


def test_worked_example_trace():
    cycles = parse_cycles(WORKED)
    x = permutation_from_cycles(cycles, 9, 3)
    run = run_colored_descents(x, [1, 2, 4, 5], cycles=cycles)
    assert run.trace_lines() == WORKED_TRACE
    assert descent_set(run.result) >= {1, 2, 4, 5}
    assert run.result in j_orbit(x, induced_blocks([1, 2, 4, 5], 9))
    assert colored_descents(x, []) == x


def test_short_cycles_rejected():
    x = permutation_from_cycles(parse_cycles("(1^0 2^0)(3^0 4^1 5^0)"), 5, 2)
    with pytest.raises(ShortCycleError):
        colored_descents(x, [1])


@pytest.mark.parametrize("n,r", [(5, 2)])
def test_singletons_against_brute_force(n, r):
    for lam in r_partitions(n, r):
        if not has_no_short_cycles(lam, 2):
            continue
        for a in range(1, n):
            for x in enumerate_class(lam):
                assert [colored_descents(x, [a])] == descents_in_orbit(x, [a])


def test_orbit_brute_force_independent_oracle():
    # orbit members by direct conjugation with plain tuples, descents by the definition
    lam = RPartition(((), (6,)))
    A = {2, 4}
    blocks = induced_blocks(A, 6)
    x = next(iter(enumerate_class(lam)))
    xt = oracles.to_tuple(x)
    orbit = set()
    for pi in young_subgroup(blocks):
        g = (tuple(pi), (0,) * 6)
        orbit.add(oracles.mul(oracles.mul(g, xt, 2), oracles.inv(g, 2), 2))
    assert len(orbit) == young_order(blocks)
    good = [y for y in orbit if A <= oracles.descents(y)]
    assert len(good) == 1
    assert oracles.to_tuple(colored_descents(x, A)) == good[0]
