import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import E
from uryson.errors import DimensionMismatch, TailIncompatible
from uryson.lattice import Element
from uryson.operators import (UrysonOperator, apply, bound_on_box, op_abs_parts, op_lattice,
                              op_linear, oracle_lattice_at, oracle_partition_at,
                              orthogonal_additivity_check, probe_points, rank_one,
                              rank_one_modulus_check)
from uryson.scalar import ScalarMap, TailRule
from uryson.verify import rand_finite_operator

F = Fraction


@pytest.fixture
def T():
    return UrysonOperator(2, 1, [[ScalarMap({1: 5, -1: 2}), ScalarMap({1: -1, 2: 4})]])


@pytest.fixture
def S():
    return UrysonOperator(2, 1, [[ScalarMap({1: 2}), ScalarMap({1: 3})]])


def random_pairs(seed, count=40):
    rng = random.Random(seed)
    for _ in range(count):
        n, m = rng.randint(1, 4), rng.randint(1, 3)
        yield rand_finite_operator(rng, n, m), rand_finite_operator(rng, n, m), rng


def test_matrix_rule(T):
    assert apply(T, E(1, 1)) == E(4)
    assert apply(T, E(1, 2)) == E(9)
    assert apply(T, E(0, 0)) == E(0)
    with pytest.raises(DimensionMismatch):
        apply(T, E(1))


def test_orthogonal_additivity(T):
    assert orthogonal_additivity_check(T, E(1, 2))
    assert orthogonal_additivity_check(T, E(0, 0))


def test_join_and_meet(T, S):
    # the four decompositions of (1, 1) give 5, 8, 1 and 4
    x = E(1, 1)
    assert apply(op_lattice(T, S, "meet"), x) == E(1)
    assert apply(op_lattice(T, S, "join"), x) == E(8)
    assert oracle_lattice_at(T, S, "meet", x) == E(1)
    assert oracle_lattice_at(T, S, "join", x) == E(8)
    assert op_lattice(T, T, "join") == T


def test_modulus(T):
    abs_t, pos, neg = op_abs_parts(T)
    assert apply(abs_t, E(1, 1)) == E(6)
    assert oracle_lattice_at(T, None, "abs", E(1, 1)) == E(6)
    assert pos - neg == T and pos + neg == abs_t
    assert oracle_lattice_at(T, None, "pos", E(0, 0)) == E(0)


def test_partition_oracle_chain(T):
    value, chain = oracle_partition_at(T, None, "abs", E(1, 1))
    assert value == E(6)
    assert [v for _, v in chain] == [E(4), E(6)]
    assert oracle_partition_at(T, None, "abs", E(0, 0)) == (E(0), [])


def test_positive_operator_parts():
    P = UrysonOperator(1, 1, [[ScalarMap({1: 2, 3: 1})]])
    assert op_abs_parts(P) == (P, P, UrysonOperator.zero(1, 1))


def test_lattice_identities():
    for T, S, rng in random_pairs(1):
        join, meet = op_lattice(T, S, "join"), op_lattice(T, S, "meet")
        abs_t, pos, neg = op_abs_parts(T)
        assert join + meet == T + S
        assert abs_t == pos + neg and T == pos - neg
        assert op_lattice(pos, neg, "meet").is_zero()


def test_linear_ops(T, S):
    assert op_linear(T, UrysonOperator.zero(2, 1), "add") == T
    assert op_linear(T, None, "scale", 1) == T
    rng = random.Random(3)
    for _ in range(10):
        x = Element(rng.choice([0, 1, -1, 2]) for _ in range(2))
        assert apply(T + S, x) == apply(T, x) + apply(S, x)


def test_positivity_reduction():
    for T, _, rng in random_pairs(2):
        probes = probe_points([T], rng)
        by_probes = all(apply(T, x).is_nonnegative() for x in probes)
        assert by_probes == T.is_positive()


def test_abs_with_sign_changing_tail():
    T = UrysonOperator(1, 1, [[ScalarMap(tail=TailRule(1, 1, (-3, 1)))]])
    with pytest.raises(TailIncompatible):
        op_abs_parts(T)
    # the enumeration formula needs no closed form
    assert oracle_lattice_at(T, None, "abs", E(1)) == E(3)


def test_rank_one():
    phi = UrysonOperator(2, 1, [[ScalarMap({1: 2}), ScalarMap({1: -3})]])
    u = E(1, -2)
    T = rank_one(phi, u)
    assert apply(T, E(1, 1)) == E(-1, 2)
    assert apply(op_abs_parts(T)[0], E(1, 1)) == E(5, 10)
    assert rank_one_modulus_check(phi, u, [E(1, 1), E(1, 0)])
    assert rank_one(phi, E(0, 0)).is_zero()
    assert rank_one(UrysonOperator.zero(2, 1), u).is_zero()


class TestBoundOnBox:
    def test_attained_upper_bound(self):
        T = UrysonOperator(2, 1, [[ScalarMap({1: 5}), ScalarMap()]])
        box = bound_on_box(T, E(0, 0), E(1, 1))
        assert box.upper == E(5) and box.lower == E(0)

    def test_zero_operator_and_empty_box(self):
        assert bound_on_box(UrysonOperator.zero(2, 2), E(0, 0), E(1, 1)).upper == E(0, 0)
        T = UrysonOperator(1, 1, [[ScalarMap({5: 3})]])
        box = bound_on_box(T, E(1), E(2))
        assert (box.lower, box.upper) == (E(0), E(0))

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 10 ** 6))
    def test_box_contains_every_lattice_image(self, seed):
        rng = random.Random(seed)
        T = rand_finite_operator(rng, 2, 2)
        grid = [F(k, 2) for k in range(-4, 5)]
        box = bound_on_box(T, E(-2, -1), E(1, 2))
        for a in grid:
            for b in grid:
                if -2 <= a <= 1 and -1 <= b <= 2:
                    assert box.contains(apply(T, E(a, b)))
