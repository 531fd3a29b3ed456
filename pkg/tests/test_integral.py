from fractions import Fraction
from itertools import product

import pytest

from conftest import E
from uryson import integral
from uryson.errors import DimensionMismatch, PreconditionError
from uryson.lattice import is_disjoint
from uryson.operators import UrysonOperator, apply
from uryson.scalar import ScalarMap

F = Fraction


def space(*weights):
    return integral.FiniteMeasureSpace(weights)


def test_weighted_slice():
    K = integral.KernelTable(space(1), space(F(1, 2)), [0, 2], {(0, 0, 2): 6})
    assert integral.build_operator(K) == UrysonOperator(1, 1, [[ScalarMap({2: 3})]])


def test_zero_kernel():
    K = integral.KernelTable(space(1, 2), space(1, 1, 1), [0, 1])
    assert integral.build_operator(K).is_zero()


def test_unit_weights_give_raw_slices():
    values = {(0, 0, 1): 2, (0, 1, 1): 3, (0, 1, -1): 7}
    K = integral.KernelTable(space(1), space(1, 1), [0, 1, -1], values)
    T = integral.build_operator(K)
    assert T.entries[0][1] == ScalarMap({1: 3, -1: 7})


def test_quadrature():
    K = integral.KernelTable(space(1), space(1, 1), [0, 1], {(0, 0, 1): 2, (0, 1, 1): 3})
    assert integral.apply_integral(K, E(1, 1)) == E(5)
    assert integral.apply_integral(K, E(0, 0)) == E(0)
    single = integral.KernelTable(space(1, 1), space(F(1, 3)), [0, 2], {(1, 0, 2): 9})
    assert integral.apply_integral(single, E(2)) == E(0, 3)


def test_bridge_exhaustive_and_additive():
    grid = [F(0), F(-1, 2), F(2)]
    values = {(s, t, r): F(s + 2 * t + 1) * r for s in range(2) for t in range(3) for r in grid[1:]}
    K = integral.KernelTable(space(1, F(2, 3)), space(F(1, 2), 1, 3), grid, values)
    T = integral.build_operator(K)
    fs = [E(*c) for c in product(grid, repeat=3)]
    for f in fs:
        assert integral.apply_integral(K, f) == apply(T, f)
    for f in fs:
        for g in fs:
            if is_disjoint(f, g):
                assert integral.apply_integral(K, f + g) == (integral.apply_integral(K, f)
                                                            + integral.apply_integral(K, g))


def test_nonnegative_kernel_gives_positive_operator():
    K = integral.KernelTable(space(1), space(1, 2), [0, 1, 2], {(0, 0, 1): 1, (0, 1, 2): 5})
    assert integral.build_operator(K).is_positive()


def test_errors():
    K = integral.KernelTable(space(1), space(1), [0, 1], {(0, 0, 1): 1})
    with pytest.raises(PreconditionError):
        integral.apply_integral(K, E(3))
    with pytest.raises(DimensionMismatch):
        integral.apply_integral(K, E(1, 1))
    with pytest.raises(PreconditionError):
        space(0)
    with pytest.raises(ValueError):
        integral.KernelTable(space(1), space(1), [0, 1], {(0, 0, 5): 1})


class TestCaratheodory:
    def test_c0_violation(self):
        K = integral.KernelTable(space(1, 1), space(1), [0, 1], {(1, 0, 0): 1})
        rep = integral.caratheodory_check(K)
        assert not rep.ok and rep.c0_violations == ((1, 0),)
        with pytest.raises(PreconditionError):
            integral.build_operator(K)

    def test_valid_table(self):
        K = integral.KernelTable(space(1), space(1), [0, 1], {(0, 0, 1): 4})
        rep = integral.caratheodory_check(K)
        assert rep.ok and rep.c1 == rep.c2 == "vacuous"

    def test_grid_of_zero_only(self):
        K = integral.KernelTable(space(1), space(1, 1), [0])
        assert integral.caratheodory_check(K).ok
        assert integral.build_operator(K).is_zero()
