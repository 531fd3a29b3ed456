"""JSON text formats. Rationals travel as strings (``"p/q"`` or ``"k"``); indices are 1-based."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Union

from .errors import ParseError, UrysonError
from .extension import DisjointUnion, FragmentsOf, LateralIdeal, OrderIdealOf, PartialOperator
from .finite import MajorantCertificate, RefutationWitness
from .integral import FiniteMeasureSpace, KernelTable
from .lattice import Element, IndexSet
from .operators import UrysonOperator
from .scalar import ScalarMap, TailRule


def rat(value: Any) -> Fraction:
    """Parse a rational: a ``"p/q"`` string, an integer string, or a JSON integer."""
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ParseError(f"expected a rational string, got {value!r}")
    try:
        return Fraction(value) if isinstance(value, int) else Fraction(value.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {value!r}") from exc


def rat_str(q: Fraction) -> str:
    return str(Fraction(q))


def _obj(data: Any, keys: tuple, what: str) -> dict:
    if not isinstance(data, dict):
        raise ParseError(f"{what}: expected an object")
    missing = [k for k in keys if k not in data]
    if missing:
        raise ParseError(f"{what}: missing {', '.join(missing)}")
    return data


def _int(v: Any, what: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(f"{what}: expected an integer")
    return v


def _list(v: Any, what: str) -> list:
    if not isinstance(v, list):
        raise ParseError(f"{what}: expected a list")
    return v


# -- Element / IndexSet ------------------------------------------------------------

def element_to_json(x: Element) -> dict:
    return {"dim": x.dim, "coords": [rat_str(c) for c in x]}


def element_from_json(data: Any) -> Element:
    if isinstance(data, list):
        return Element(rat(c) for c in _nonempty(data, "element"))
    d = _obj(data, ("dim", "coords"), "element")
    coords = [rat(c) for c in _list(d["coords"], "element coords")]
    if _int(d["dim"], "element dim") != len(coords) or not coords:
        raise ParseError(f"element: dim {d['dim']} but {len(coords)} coordinates")
    return Element(coords)


def _nonempty(v: list, what: str) -> list:
    if not v:
        raise ParseError(f"{what}: empty")
    return v


def indexset_to_json(s: IndexSet) -> dict:
    return {"dim": s.dim, "members": list(s.members)}


def indexset_from_json(data: Any) -> IndexSet:
    d = _obj(data, ("dim", "members"), "index set")
    try:
        return IndexSet(_int(d["dim"], "index set dim"),
                        [_int(j, "index") for j in _list(d["members"], "members")])
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


# -- ScalarMap / Operator --------------------------------------------------------

def scalar_to_json(f: ScalarMap) -> dict:
    tail = None
    if f.tail is not None:
        t = f.tail
        tail = {"start": rat_str(t.start), "step": rat_str(t.step),
                "poly": [rat_str(c) for c in t.poly], "ratio": rat_str(t.ratio)}
    return {"samples": [[rat_str(p), rat_str(v)] for p, v in f.samples], "tail": tail}


def scalar_from_json(data: Any) -> ScalarMap:
    d = _obj(data, ("samples",), "scalar map")
    samples = {}
    for pair in _list(d["samples"], "samples"):
        if not isinstance(pair, list) or len(pair) != 2:
            raise ParseError("samples: each entry must be a [point, value] pair")
        p = rat(pair[0])
        if p in samples:
            raise ParseError(f"samples: point {p} given twice")
        samples[p] = rat(pair[1])
    tail = None
    if d.get("tail") is not None:
        t = _obj(d["tail"], ("start", "step", "poly"), "tail")
        try:
            tail = TailRule(rat(t["start"]), rat(t["step"]),
                            [rat(c) for c in _list(t["poly"], "tail poly")],
                            rat(t.get("ratio", "1")))
        except ValueError as exc:
            raise ParseError(f"tail: {exc}") from exc
    try:
        return ScalarMap(samples, tail)
    except ValueError as exc:
        raise ParseError(f"scalar map: {exc}") from exc


def operator_to_json(T: UrysonOperator) -> dict:
    entries = [{"i": i + 1, "j": j + 1, "map": scalar_to_json(f)}
               for i, row in enumerate(T.entries) for j, f in enumerate(row) if not f.is_zero()]
    return {"n": T.n, "m": T.m, "entries": entries}


def operator_from_json(data: Any) -> UrysonOperator:
    d = _obj(data, ("n", "m", "entries"), "operator")
    n, m = _int(d["n"], "operator n"), _int(d["m"], "operator m")
    if n < 1 or m < 1:
        raise ParseError("operator dimensions must be positive")
    grid = {}
    for e in _list(d["entries"], "entries"):
        e = _obj(e, ("i", "j", "map"), "operator entry")
        i, j = _int(e["i"], "entry i"), _int(e["j"], "entry j")
        if not (1 <= i <= m and 1 <= j <= n):
            raise ParseError(f"entry ({i}, {j}) outside a {m}x{n} operator")
        if (i - 1, j - 1) in grid:
            raise ParseError(f"entry ({i}, {j}) given twice")
        grid[(i - 1, j - 1)] = scalar_from_json(e["map"])
    return UrysonOperator.from_dict(n, m, grid)


# -- descriptors and partial operators ---------------------------------------------

def descriptor_to_json(D: LateralIdeal) -> dict:
    if isinstance(D, FragmentsOf):
        return {"variant": "fragments", "w": element_to_json(D.w)}
    if isinstance(D, OrderIdealOf):
        return {"variant": "order_ideal", "generators": [element_to_json(g) for g in D.generators],
                "dim": D.dim}
    if isinstance(D, DisjointUnion):
        return {"variant": "disjoint_union", "parts": [descriptor_to_json(p) for p in D.parts]}
    raise TypeError(f"not a descriptor: {D!r}")


def descriptor_from_json(data: Any) -> LateralIdeal:
    from .extension import disjoint_union_ideal

    d = _obj(data, ("variant",), "descriptor")
    variant = d["variant"]
    try:
        if variant == "fragments":
            return FragmentsOf(element_from_json(_obj(d, ("w",), "fragments")["w"]))
        if variant == "order_ideal":
            gens = [element_from_json(g) for g in _list(d.get("generators", []), "generators")]
            dim = d.get("dim")
            if dim is None and not gens:
                raise ParseError("order_ideal without generators needs a dim")
            return OrderIdealOf(gens, None if dim is None else _int(dim, "dim"))
        if variant == "disjoint_union":
            parts = [descriptor_from_json(p) for p in _list(d.get("parts"), "parts")]
            if not parts:
                raise ParseError("disjoint_union needs at least one part")
            union = disjoint_union_ideal(parts)
            return union if isinstance(union, DisjointUnion) else DisjointUnion(tuple(parts), parts[0].dim)
    except UrysonError:
        raise
    except ValueError as exc:
        raise ParseError(f"descriptor: {exc}") from exc
    raise ParseError(f"unknown descriptor variant {variant!r}")


def table_to_json(T: PartialOperator) -> list:
    return [[element_to_json(y), element_to_json(v)] for y, v in T.table]


def table_from_json(data: Any) -> dict:
    table = {}
    for pair in _nonempty(_list(data, "table"), "table"):
        if not isinstance(pair, list) or len(pair) != 2:
            raise ParseError("table: each entry must be a [member, value] pair")
        table[element_from_json(pair[0])] = element_from_json(pair[1])
    return table


# -- kernels --------------------------------------------------------------------

def kernel_to_json(K: KernelTable) -> dict:
    values = [[s + 1, t + 1, rat_str(r), rat_str(v)] for (s, t, r), v in sorted(K.values.items())]
    return {"A": {"weights": [rat_str(w) for w in K.A.weights]},
            "B": {"weights": [rat_str(w) for w in K.B.weights]},
            "grid": [rat_str(r) for r in K.grid], "values": values}


def kernel_from_json(data: Any) -> KernelTable:
    d = _obj(data, ("A", "B", "grid", "values"), "kernel")
    try:
        A = FiniteMeasureSpace([rat(w) for w in _list(_obj(d["A"], ("weights",), "A")["weights"], "A")])
        B = FiniteMeasureSpace([rat(w) for w in _list(_obj(d["B"], ("weights",), "B")["weights"], "B")])
        values = {}
        for row in _list(d["values"], "values"):
            if not isinstance(row, list) or len(row) != 4:
                raise ParseError("kernel values: each row is [i, j, r, v]")
            key = (_int(row[0], "i") - 1, _int(row[1], "j") - 1, rat(row[2]))
            if key in values:
                raise ParseError(f"kernel value at {row[:3]} given twice")
            values[key] = rat(row[3])
        return KernelTable(A, B, [rat(r) for r in _list(d["grid"], "grid")], values)
    except UrysonError:
        raise
    except ValueError as exc:
        raise ParseError(f"kernel: {exc}") from exc


# -- certificates and witnesses -------------------------------------------------

def certificate_to_json(cert: MajorantCertificate) -> dict:
    return {"majorant": operator_to_json(cert.majorant),
            "probes": [{"S": operator_to_json(S), "c": rat_str(c)} for S, c in cert.probes],
            "method": cert.method}


def certificate_from_json(data: Any) -> MajorantCertificate:
    d = _obj(data, ("majorant", "probes", "method"), "certificate")
    probes = tuple((operator_from_json(_obj(p, ("S", "c"), "probe")["S"]), rat(p["c"]))
                   for p in _list(d["probes"], "probes"))
    return MajorantCertificate(operator_from_json(d["majorant"]), probes, str(d["method"]))


def witness_to_json(n: int, x: Element) -> dict:
    return {"n": n, "x": [rat_str(c) for c in x]}


def refutation_to_json(w: RefutationWitness) -> dict:
    i, j = w.entry
    return {"probe": operator_to_json(w.probe), "entry": [i + 1, j + 1], "offset": w.offset}


# -- files ------------------------------------------------------------------------

def load(source: Union[str, Path]) -> Any:
    """Read JSON from a file path, ``-`` for stdin is not supported."""
    try:
        text = Path(source).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {source}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def parse_point(arg: str) -> Element:
    """A point given inline as ``"(1,2,5)"`` / ``"1,2,5"`` / a JSON list, or as a file path."""
    text = arg.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    if text.startswith("[") or text.startswith("{"):
        try:
            return element_from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad inline point {arg!r}") from exc
    if text and all(ch in "0123456789-+/, " for ch in text):
        return Element(rat(c) for c in text.split(","))
    return element_from_json(load(arg))


def dumps(data: Any, fmt: str = "json") -> str:
    if fmt == "compact":
        return json.dumps(data, separators=(",", ":"), sort_keys=False)
    return json.dumps(data, indent=2)
