from fractions import Fraction

import pytest

from conftest import E
from uryson import extension as ext
from uryson.errors import MissingValue, NotAnExtension, PreconditionError
from uryson.lattice import fragments
from uryson.operators import UrysonOperator, apply
from uryson.scalar import ScalarMap

D = ext.FragmentsOf(E(1, 2, 0))
TABLE = {E(0, 0, 0): E(0), E(1, 0, 0): E(1), E(0, 2, 0): E(2), E(1, 2, 0): E(3)}


@pytest.fixture
def T():
    return ext.PartialOperator(D, TABLE)


class TestDescriptors:
    def test_fragments_of(self):
        assert E(1, 0, 0) in D
        assert E(1, 1, 0) not in D

    def test_disjoint_union(self):
        U = ext.disjoint_union_ideal([ext.FragmentsOf(E(1, 0, 0)), ext.FragmentsOf(E(0, 2, 0))])
        assert E(1, 2, 0) in U
        assert set(ext.ideal_members(U)) == set(fragments(E(1, 2, 0)))

    def test_degenerate_unions(self):
        part = ext.FragmentsOf(E(1, 0))
        assert ext.disjoint_union_ideal([part]) is part
        empty = ext.disjoint_union_ideal([], dim=2)
        assert ext.ideal_members(empty) == [E(0, 0)]
        assert E(1, 0) not in empty

    def test_overlapping_parts_rejected(self):
        with pytest.raises(PreconditionError):
            ext.disjoint_union_ideal([ext.FragmentsOf(E(1, 0)), ext.FragmentsOf(E(2, 3))])

    def test_order_ideal(self):
        I = ext.OrderIdealOf([E(1, 0, 0), E(0, 2, 0)])
        assert E(-5, Fraction(1, 3), 0) in I
        assert E(1, 0, 1) not in I
        assert ext.order_ideal_factor(I, E(-5, 4, 0)) == 5


class TestMinimalExtension:
    def test_values(self, T):
        assert ext.minimal_extension_at(T, E(1, 2, 5)) == E(3)
        assert ext.minimal_extension_at(T, E(1, 3, 0)) == E(1)
        assert ext.minimal_extension_at(T, E(7, 8, 9)) == E(0)

    def test_closed_form_matches(self, T):
        R = ext.minimal_extension_operator(T)
        for x in (E(1, 2, 5), E(1, 3, 0), E(7, 8, 9), E(1, 2, 0), E(0, 2, -1)):
            assert apply(R, x) == ext.minimal_extension_at(T, x)

    def test_agrees_on_domain(self, T):
        for y in TABLE:
            assert ext.minimal_extension_at(T, y) == T(y)

    def test_minimality(self, T):
        R = ext.minimal_extension_operator(T)
        probes = [E(1, 2, 5), E(3, 2, 1)]
        assert ext.check_minimality(T, R, probes)
        # extra positive mass off the admissible values keeps R an extension
        bigger = R + UrysonOperator(3, 1, [[ScalarMap({3: 4}), ScalarMap({5: 1}), ScalarMap({1: 2})]])
        assert ext.check_minimality(T, bigger, probes)
        wrong = R + UrysonOperator(3, 1, [[ScalarMap({1: 1}), ScalarMap(), ScalarMap()]])
        with pytest.raises(NotAnExtension):
            ext.check_minimality(T, wrong, probes)

    def test_monotone_along_fragments(self, T):
        x = E(1, 2, 4)
        for y in fragments(x):
            assert ext.minimal_extension_at(T, y).le(ext.minimal_extension_at(T, x))

    def test_missing_value_is_an_error(self):
        partial = ext.PartialOperator(D, {E(0, 0, 0): E(0), E(1, 0, 0): E(1)})
        with pytest.raises(MissingValue):
            ext.minimal_extension_at(partial, E(1, 2, 0))

    def test_validation(self):
        bad = ext.PartialOperator(D, {**TABLE, E(1, 2, 0): E(4)})
        with pytest.raises(PreconditionError):
            bad.validate()
        with pytest.raises(PreconditionError):
            ext.PartialOperator(D, {E(1, 0, 0): E(-1)}).validate()


class TestBandProjection:
    phi = UrysonOperator(2, 1, [[ScalarMap({1: 1}), ScalarMap()]])
    T = UrysonOperator(2, 1, [[ScalarMap({1: 4}), ScalarMap({1: 6})]])

    def test_example(self):
        assert ext.pi_band_projection_at(self.phi, self.T, E(1, 1)) == 4

    def test_atoms(self):
        assert ext.pi_band_projection_at(self.phi, self.T, E(1, 0)) == 4
        assert ext.pi_band_projection_at(self.phi, self.T, E(0, 1)) == 0

    def test_closed_form_and_bounds(self):
        P = ext.band_projection_operator(self.phi, self.T)
        for x in (E(1, 1), E(1, 0), E(0, 1), E(2, 1), E(0, 0)):
            v = ext.pi_band_projection_at(self.phi, self.T, x)
            assert apply(P, x)[0] == v
            assert 0 <= v <= apply(self.T, x)[0]
            assert v == sum(ext.pi_band_projection_at(self.phi, self.T, y) for y in
                            (E(x[0], 0), E(0, x[1])))

    def test_needs_positive_inputs(self):
        with pytest.raises(PreconditionError):
            ext.pi_band_projection_at(self.phi, -self.T, E(1, 1))
