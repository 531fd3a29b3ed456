from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from uryson.errors import PreconditionError, TailIncompatible
from uryson.scalar import (Bounded, ScalarMap, TailRule, Unbounded, abs_map, dominance,
                           indicator_of_support, maximum, minimum, pointwise, restrict_to_support,
                           sup_abs_on_interval)

F = Fraction
IDENTITY_TAIL = TailRule(1, 1, (0, 1))  # value k at the point 1 + k

finite_maps = st.dictionaries(
    st.sampled_from([F(1), F(-1), F(2), F(-2), F(1, 2)]),
    st.fractions(min_value=-10, max_value=10, max_denominator=4)).map(ScalarMap)


class TestEvaluation:
    def test_samples_and_zero(self):
        f = ScalarMap({1: 5, -2: 3})
        assert f(1) == 5
        assert f(0) == 0
        assert f(F(1, 3)) == 0

    def test_tail_formula(self):
        # the point 7 is tail index 6
        f = ScalarMap(tail=IDENTITY_TAIL)
        assert f(7) == 6
        assert f(1) == 0

    def test_geometric_tail(self):
        f = ScalarMap(tail=TailRule(F(1, 2), F(1, 2), (1, 1), 2))
        assert [f(F(1, 2) * (k + 1)) for k in range(4)] == [1, 4, 12, 32]

    def test_normalization(self):
        assert ScalarMap(tail=TailRule(1, 1, (0, 0))).tail is None
        collapsed = ScalarMap(tail=TailRule(3, 1, (7,), 0))
        assert collapsed.tail is None and collapsed.samples == ((F(3), F(7)),)
        assert ScalarMap({1: 0}).is_zero()

    def test_invalid_maps(self):
        with pytest.raises(ValueError):
            ScalarMap({0: 1})
        with pytest.raises(ValueError):
            ScalarMap({2: 1}, IDENTITY_TAIL)
        with pytest.raises(ValueError):
            TailRule(-1, 1, (1,))  # 0 would be a tail point

    @given(st.integers(0, 200))
    def test_tail_points_match_formula(self, k):
        t = TailRule(F(5, 2), F(1, 2), (3, -1, 1), F(1, 2))
        f = ScalarMap(tail=t)
        assert f(t.point(k)) == (3 - k + k * k) * F(1, 2) ** k


class TestPointwise:
    def test_examples(self):
        assert pointwise("add", ScalarMap({1: 5}), ScalarMap({1: 2, 2: 1})) == ScalarMap({1: 7, 2: 1})
        assert abs_map(ScalarMap({1: -3})) == ScalarMap({1: 3})
        assert maximum(ScalarMap({1: 5}), ScalarMap({1: 2})) == ScalarMap({1: 5})

    def test_tail_alignment_materializes_prefix(self):
        f = ScalarMap({2: 10}, TailRule(3, 1, (1,)))
        g = ScalarMap(tail=TailRule(1, 1, (1,)))
        h = f + g
        assert [h(r) for r in (1, 2, 3, 4, 50)] == [1, 11, 2, 2, 2]

    def test_incompatible_tails(self):
        f = ScalarMap(tail=TailRule(1, 1, (1,)))
        g = ScalarMap(tail=TailRule(F(3, 2), 1, (1,)))
        with pytest.raises(TailIncompatible):
            f + g
        with pytest.raises(TailIncompatible):
            f + ScalarMap(tail=TailRule(1, 1, (1,), 2))
        with pytest.raises(TailIncompatible):
            abs_map(ScalarMap(tail=TailRule(1, 1, (-3, 1))))
        with pytest.raises(TailIncompatible):
            maximum(ScalarMap(tail=TailRule(1, 1, (5, -1))), ScalarMap(tail=TailRule(1, 1, (0, 1))))

    def test_abs_of_sign_constant_tail(self):
        f = abs_map(ScalarMap(tail=TailRule(1, 1, (-1, -1))))
        assert f(10) == 10

    @given(finite_maps, finite_maps)
    def test_min_plus_max(self, f, g):
        assert minimum(f, g) + maximum(f, g) == f + g

    @given(finite_maps, finite_maps, finite_maps)
    def test_addition_laws(self, f, g, h):
        assert f + g == g + f
        assert (f + g) + h == f + (g + h)
        assert abs_map(abs_map(f)) == abs_map(f)

    def test_restrict_to_support_skips_tail_roots(self):
        f = ScalarMap(tail=TailRule(1, 1, (1,)))
        g = ScalarMap(tail=TailRule(1, 1, (-2, 1)))  # zero at the point 3
        r = restrict_to_support(f, g)
        assert [r(p) for p in (1, 2, 3, 4, 9)] == [1, 1, 0, 1, 1]


class TestSupportQueries:
    def test_bounded_support(self):
        f = ScalarMap({1: 5, -2: 3})
        assert f.has_bounded_support() and f.support_interval() == (-2, 1)
        assert not ScalarMap(tail=IDENTITY_TAIL).has_bounded_support()
        assert ScalarMap().has_bounded_support() and ScalarMap().support_interval() is None

    def test_sup_abs(self):
        assert sup_abs_on_interval(ScalarMap({1: 5, -2: -7}), -3, 3) == 7
        assert sup_abs_on_interval(ScalarMap({1: 5}), 2, 3) == 0
        assert sup_abs_on_interval(ScalarMap(tail=IDENTITY_TAIL), 0, F(5, 2)) == 1
        with pytest.raises(PreconditionError):
            sup_abs_on_interval(ScalarMap(), 1, 0)


class TestDominance:
    def test_samples_only(self):
        d = dominance(ScalarMap({1: 5}), ScalarMap({1: 1}))
        assert isinstance(d, Bounded) and d.constant == 5
        assert dominance(ScalarMap(), ScalarMap({1: 1})).constant == 0

    def test_degree_beats_constant(self):
        d = dominance(ScalarMap(tail=IDENTITY_TAIL), ScalarMap(tail=TailRule(1, 1, (1,))))
        assert isinstance(d, Unbounded)
        ws = d.witnesses()
        z = ScalarMap(tail=TailRule(1, 1, (1,)))
        f = ScalarMap(tail=IDENTITY_TAIL)
        for k in range(1, 6):
            r = next(ws)
            assert abs(f(r)) > k * z(r)

    def test_support_outside_majorant(self):
        assert isinstance(dominance(ScalarMap({2: 1}), ScalarMap({1: 1})), Unbounded)

    def test_certified_tail_bound(self):
        f = ScalarMap(tail=TailRule(1, 1, (3, 1)))
        z = ScalarMap(tail=TailRule(1, 1, (1, 1)))
        d = dominance(f, z)
        assert isinstance(d, Bounded)
        assert all(abs(f(r)) <= d.constant * z(r) for r in range(1, 500))

    def test_decaying_majorant_loses(self):
        f = ScalarMap(tail=TailRule(1, 1, (1,)))
        z = ScalarMap(tail=TailRule(1, 1, (1,), F(1, 2)))
        assert isinstance(dominance(f, z), Unbounded)

    def test_majorant_must_be_nonnegative(self):
        with pytest.raises(PreconditionError):
            dominance(ScalarMap({1: 1}), ScalarMap({1: -1}))

    @given(finite_maps)
    def test_finite_view_consistency(self, f):
        # bounded support iff dominated by the indicator of its own support
        assert isinstance(dominance(f, indicator_of_support(f)), Bounded) == f.has_bounded_support()

    def test_tailed_map_not_dominated_by_its_indicator(self):
        f = ScalarMap({F(1, 2): 1}, IDENTITY_TAIL)
        assert isinstance(dominance(f, indicator_of_support(f)), Unbounded)
