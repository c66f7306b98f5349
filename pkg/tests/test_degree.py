import itertools
from fractions import Fraction

import pytest

from colperm.conjugacy import RPartition, enumerate_class
from colperm.degree import (
    PartialColoredPermutation,
    SpanBasis,
    all_partials,
    decompose_statistic,
    degree_upper_bound_check,
    evaluate_decomposition,
    product_statistic,
    satisfaction_prob_class,
    satisfaction_probabilities,
    satisfies,
)
from colperm.moments import FormulaNotApplicableError
from colperm.perm import ColoredPermutation, ParameterError, elements
from colperm.stats import Statistic

import oracles
from test_perm import EXAMPLE

P = PartialColoredPermutation


def test_partial_permutations():
    assert satisfies(EXAMPLE, P(((1, 3, 1),)))
    assert not satisfies(EXAMPLE, P(((1, 3, 0),)))
    assert all(satisfies(x, P(())) for x in elements(2, 2))
    with pytest.raises(ParameterError):
        P(((1, 2, 0), (1, 3, 0)))
    with pytest.raises(ParameterError):
        P(((1, 2, 0), (3, 2, 0)))
    p = P.parse("{1->3:1, 2->8:0}")
    assert str(p) == "{1->3:1, 2->8:0}" and P.parse(str(p)) == p
    assert P(((1, 1, 0),)).has_cycle() and P(((1, 2, 0), (2, 1, 1))).has_cycle()
    assert not P(((1, 2, 0), (2, 3, 0))).has_cycle()


def test_satisfying_counts_s32():
    for p in all_partials(3, 2, 1):
        assert sum(satisfies(x, p) for x in elements(3, 2)) == 8


def test_class_probabilities():
    lam = RPartition(((5,), ()))
    members = list(enumerate_class(lam))
    assert satisfaction_prob_class(P(()), lam) == 1
    for p in all_partials(5, 2, 1):
        got = satisfaction_probabilities(p, members)["both"]
        if p.pairs[0][0] != p.pairs[0][1]:
            assert got == Fraction(1, 8) == satisfaction_prob_class(p, lam)
        else:
            assert got == 0 == satisfaction_prob_class(p, lam)
    with pytest.raises(FormulaNotApplicableError):
        satisfaction_prob_class(P(((1, 2, 0),)), RPartition(((1, 1), ())))


@pytest.mark.parametrize("name", ["des", "maj", "fmaj"])
def test_decompositions_evaluate_to_the_statistic(name):
    terms = decompose_statistic(name, 3, 3)
    for x in elements(3, 3):
        assert evaluate_decomposition(terms, x) == oracles.stat(name, oracles.to_tuple(x), 3)
    assert evaluate_decomposition(decompose_statistic(name, 4, 2), ColoredPermutation.identity(4, 2)) == 0
    assert terms == sorted(terms, key=lambda t: (t[1].size, t[1].pairs))


def test_fmaj_decomposition_on_example():
    assert evaluate_decomposition(decompose_statistic("fmaj", 8, 3), EXAMPLE) == 49


def test_des_term_count():
    n, r = 4, 3
    nr = n * r
    # ordered pairs of letters with distinct values, low < high in the order
    pairs = (nr * (nr - 1) - n * r * (r - 1)) // 2
    assert len(decompose_statistic("des", n, r)) == (n - 1) * pairs + n * (r - 1)


def test_span_basis_exact():
    b = SpanBasis()
    assert b.add({0: 2, 1: 4})
    assert b.add({1: 3, 2: 1})
    assert not b.add({0: 1, 1: 5, 2: 1})
    assert b.contains({0: 6, 1: 3, 2: -3})
    assert not b.contains({2: 1})
    assert b.rank == 2


def test_degree_examples():
    assert degree_upper_bound_check("des", 2, 3, 2)
    assert degree_upper_bound_check(lambda x: 1, 0, 3, 2)
    assert degree_upper_bound_check(product_statistic([1], [(2, 1)]), 3, 3, 2)
    assert degree_upper_bound_check(Statistic("fmaj"), 2, 4, 2)


def test_degree_negative_controls():
    assert not degree_upper_bound_check("des", 1, 3, 2)
    assert not degree_upper_bound_check(product_statistic([1, 2], []), 2, 4, 2)
    assert degree_upper_bound_check(product_statistic([1, 2], []), 3, 4, 2)
