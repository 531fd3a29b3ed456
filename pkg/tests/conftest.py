from fractions import Fraction

from hypothesis import strategies as st

from uryson import Element

POINT_VALUES = [Fraction(v) for v in (0, 1, -1, 2, -2, "1/2", "-1/2", 3)]


def elements(min_dim=1, max_dim=5, values=POINT_VALUES):
    return st.integers(min_dim, max_dim).flatmap(
        lambda n: st.lists(st.sampled_from(values), min_size=n, max_size=n).map(Element))


def E(*coords):
    return Element(coords)
