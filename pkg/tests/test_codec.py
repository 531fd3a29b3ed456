import json
import random
from fractions import Fraction

import pytest
from hypothesis import given

from conftest import E, elements
from uryson import codec, extension as ext, finite, integral
from uryson.errors import ParseError, PreconditionError
from uryson.scalar import ScalarMap, TailRule
from uryson.verify import rand_kernel, rand_map, rand_operator

F = Fraction


def roundtrip(to_json, from_json, value):
    text = codec.dumps(to_json(value), "compact")
    return from_json(json.loads(text))


@given(elements())
def test_element_roundtrip(x):
    assert roundtrip(codec.element_to_json, codec.element_from_json, x) == x


def test_element_format():
    assert codec.element_to_json(E(F(1, 2), -3)) == {"dim": 2, "coords": ["1/2", "-3"]}


def test_scalar_and_operator_roundtrip():
    rng = random.Random(11)
    for _ in range(100):
        T = rand_operator(rng, rng.randint(1, 3), rng.randint(1, 3), lambda: rand_map(rng, 0.5))
        assert roundtrip(codec.operator_to_json, codec.operator_from_json, T) == T


def test_operator_omits_zero_entries():
    T = rand_operator(random.Random(0), 2, 2, ScalarMap)
    assert codec.operator_to_json(T)["entries"] == []


def test_tail_format():
    f = ScalarMap({F(1, 2): 3}, TailRule(1, 1, (0, 1), 2))
    data = codec.scalar_to_json(f)
    assert data["tail"] == {"start": "1", "step": "1", "poly": ["0", "1"], "ratio": "2"}
    assert codec.scalar_from_json(data) == f


def test_descriptor_roundtrip():
    descs = [
        ext.FragmentsOf(E(1, 2, 0)),
        ext.OrderIdealOf([E(1, 0, 0)]),
        ext.OrderIdealOf([], 2),
        ext.disjoint_union_ideal([ext.FragmentsOf(E(1, 0)), ext.FragmentsOf(E(0, 2))]),
    ]
    for D in descs:
        assert roundtrip(codec.descriptor_to_json, codec.descriptor_from_json, D) == D


def test_kernel_and_certificate_roundtrip():
    K = rand_kernel(random.Random(2), 2, 3, (F(0), F(1), F(-1, 2)))
    assert roundtrip(codec.kernel_to_json, codec.kernel_from_json, K) == K
    T = rand_operator(random.Random(3), 2, 1, lambda: ScalarMap({1: 2}))
    cert = finite.synthesize_majorant(T, [T])
    assert roundtrip(codec.certificate_to_json, codec.certificate_from_json, cert) == cert


def test_table_roundtrip():
    P = ext.PartialOperator(ext.FragmentsOf(E(1, 0)), {E(0, 0): E(0), E(1, 0): E(2)})
    assert codec.table_from_json(codec.table_to_json(P)) == dict(P.table)


@pytest.mark.parametrize("bad", [
    {"dim": 2, "coords": ["1"]},
    {"dim": 1, "coords": [0.5]},
    {"dim": 1, "coords": ["1/0"]},
    {"coords": ["1"]},
    [],
])
def test_bad_elements(bad):
    with pytest.raises(ParseError):
        codec.element_from_json(bad)


@pytest.mark.parametrize("bad", [
    {"n": 1, "m": 1, "entries": [{"i": 2, "j": 1, "map": {"samples": []}}]},
    {"n": 1, "m": 1, "entries": [{"i": 1, "j": 1, "map": {"samples": [["0", "1"]]}}]},
    {"n": 1, "m": 1, "entries": [{"i": 1, "j": 1, "map": {"samples": [], "tail":
                                  {"start": "1", "step": "-1", "poly": ["1"]}}}]},
    {"n": 0, "m": 1, "entries": []},
    {"n": 1, "entries": []},
])
def test_bad_operators(bad):
    with pytest.raises(ParseError):
        codec.operator_from_json(bad)


def test_bad_descriptor_and_kernel():
    with pytest.raises(ParseError):
        codec.descriptor_from_json({"variant": "cone"})
    with pytest.raises(PreconditionError):
        codec.descriptor_from_json({"variant": "disjoint_union", "parts": [
            {"variant": "fragments", "w": ["1"]}, {"variant": "fragments", "w": ["2"]}]})
    with pytest.raises(ParseError):
        codec.kernel_from_json({"A": {"weights": ["1"]}, "B": {"weights": ["1"]},
                                "grid": ["0"], "values": [[1, 1, "0"]]})


def test_inline_points(tmp_path):
    assert codec.parse_point("(1,2,5)") == E(1, 2, 5)
    assert codec.parse_point("1/2,-1") == E(F(1, 2), -1)
    assert codec.parse_point('["3"]') == E(3)
    path = tmp_path / "x.json"
    path.write_text('{"dim": 1, "coords": ["7"]}')
    assert codec.parse_point(str(path)) == E(7)
    with pytest.raises(ParseError):
        codec.parse_point(str(tmp_path / "missing.json"))
