"""Orthogonally additive order bounded operators Q^n -> Q^m in matrix form.

``T = (T_ij)`` acts by ``T(x)_i = sum_j T_ij(x_j)``. The lattice operations have
entrywise closed forms (the implementation); the ``riesz_*`` and ``oracle_*``
functions evaluate the sup/inf formulas over decompositions and partitions
directly and serve as independent checks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from . import scalar
from .errors import DimensionMismatch, PreconditionError
from .lattice import (Element, Partition, binary_decompositions, fragments, inf_all,
                      partitions, restrict, sup_all, support)
from .scalar import ScalarMap

Evaluator = Callable[[Element], Element]
_ZERO = Fraction(0)


@dataclass(frozen=True)
class UrysonOperator:
    n: int
    m: int
    entries: tuple  # m rows of n ScalarMaps

    def __init__(self, n: int, m: int, entries: Optional[Sequence[Sequence[ScalarMap]]] = None):
        if n < 1 or m < 1:
            raise ValueError("operator dimensions must be positive")
        if entries is None:
            rows = tuple(tuple(ScalarMap() for _ in range(n)) for _ in range(m))
        else:
            rows = tuple(tuple(row) for row in entries)
            if len(rows) != m or any(len(r) != n for r in rows):
                raise DimensionMismatch(f"entry grid is not {m}x{n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "entries", rows)

    @classmethod
    def zero(cls, n: int, m: int) -> "UrysonOperator":
        return cls(n, m)

    @classmethod
    def from_dict(cls, n: int, m: int, entries: dict) -> "UrysonOperator":
        """Build from ``{(i, j): ScalarMap}`` with 0-based indices; missing entries are 0."""
        grid = [[entries.get((i, j), ScalarMap()) for j in range(n)] for i in range(m)]
        return cls(n, m, grid)

    def entry(self, i: int, j: int) -> ScalarMap:
        return self.entries[i][j]

    def map_entries(self, fn: Callable[[ScalarMap], ScalarMap]) -> "UrysonOperator":
        return UrysonOperator(self.n, self.m, [[fn(f) for f in row] for row in self.entries])

    def zip_entries(self, other: "UrysonOperator",
                    fn: Callable[[ScalarMap, ScalarMap], ScalarMap]) -> "UrysonOperator":
        self._check(other)
        return UrysonOperator(self.n, self.m, [[fn(f, g) for f, g in zip(r1, r2)]
                                               for r1, r2 in zip(self.entries, other.entries)])

    def _check(self, other: "UrysonOperator") -> None:
        if (self.n, self.m) != (other.n, other.m):
            raise DimensionMismatch(f"operator shapes {self.m}x{self.n} vs {other.m}x{other.n}")

    def __call__(self, x: Element) -> Element:
        return apply(self, x)

    def __add__(self, other: "UrysonOperator") -> "UrysonOperator":
        return op_linear(self, other, "add")

    def __sub__(self, other: "UrysonOperator") -> "UrysonOperator":
        return op_linear(self, op_linear(other, None, "scale", -1), "add")

    def __neg__(self) -> "UrysonOperator":
        return op_linear(self, None, "scale", -1)

    def __mul__(self, lam) -> "UrysonOperator":
        return op_linear(self, None, "scale", lam)

    __rmul__ = __mul__

    def __abs__(self) -> "UrysonOperator":
        return op_abs_parts(self)[0]

    def join(self, other: "UrysonOperator") -> "UrysonOperator":
        return op_lattice(self, other, "join")

    def meet(self, other: "UrysonOperator") -> "UrysonOperator":
        return op_lattice(self, other, "meet")

    def is_zero(self) -> bool:
        return all(f.is_zero() for row in self.entries for f in row)

    def is_positive(self) -> bool:
        """Entrywise nonnegativity, which is operator positivity for matrix form."""
        return all(f.is_nonnegative() for row in self.entries for f in row)

    def has_tails(self) -> bool:
        return any(f.tail is not None for row in self.entries for f in row)


@dataclass(frozen=True)
class OperatorBox:
    lower: Element
    upper: Element

    def __post_init__(self):
        if not self.lower.le(self.upper):
            raise ValueError("box lower bound exceeds upper bound")

    def contains(self, y: Element) -> bool:
        return self.lower.le(y) and y.le(self.upper)


def apply(T: UrysonOperator, x: Element) -> Element:
    if x.dim != T.n:
        raise DimensionMismatch(f"operator expects dim {T.n}, got {x.dim}")
    nonzero = [(j, xj) for j, xj in enumerate(x.coords) if xj]  # every entry has f(0) = 0
    return Element(sum((row[j](xj) for j, xj in nonzero), _ZERO) for row in T.entries)


def orthogonal_additivity_check(T: Evaluator, x: Element) -> bool:
    """``T(y) + T(x - y) == T(x)`` for every fragment ``y`` of ``x``."""
    tx = T(x)
    return all(T(y) + T(z) == tx for y, z in binary_decompositions(x))


def op_linear(T: UrysonOperator, S: Optional[UrysonOperator], kind: str, lam=None) -> UrysonOperator:
    if kind == "add":
        return T.zip_entries(S, scalar.add)
    if kind == "scale":
        return T.map_entries(lambda f: scalar.scale(f, lam))
    raise ValueError(f"unknown linear kind {kind!r}")


def op_lattice(T: UrysonOperator, S: UrysonOperator, kind: str) -> UrysonOperator:
    if kind == "join":
        return T.zip_entries(S, scalar.maximum)
    if kind == "meet":
        return T.zip_entries(S, scalar.minimum)
    raise ValueError(f"unknown lattice kind {kind!r}")


def op_abs_parts(T: UrysonOperator) -> tuple[UrysonOperator, UrysonOperator, UrysonOperator]:
    """``(|T|, T+, T-)`` entrywise."""
    return (T.map_entries(scalar.abs_map),
            T.map_entries(scalar.positive_part),
            T.map_entries(scalar.negative_part))


# -- oracles over decompositions ------------------------------------------------

def riesz_join(T: Evaluator, S: Evaluator, x: Element) -> Element:
    return sup_all(T(y) + S(z) for y, z in binary_decompositions(x))


def riesz_meet(T: Evaluator, S: Evaluator, x: Element) -> Element:
    return inf_all(T(y) + S(z) for y, z in binary_decompositions(x))


def riesz_pos(T: Evaluator, x: Element) -> Element:
    return sup_all(T(y) for y in fragments(x))


def riesz_neg(T: Evaluator, x: Element) -> Element:
    return -inf_all(T(y) for y in fragments(x))


def riesz_abs(T: Evaluator, x: Element) -> Element:
    return sup_all(T(y) - T(z) for y, z in binary_decompositions(x))


def oracle_lattice_at(T: UrysonOperator, S: Optional[UrysonOperator], kind: str,
                      x: Element) -> Element:
    if x.dim != T.n:
        raise DimensionMismatch(f"operator expects dim {T.n}, got {x.dim}")
    if kind == "join":
        return riesz_join(T, S, x)
    if kind == "meet":
        return riesz_meet(T, S, x)
    if kind == "abs":
        return riesz_abs(T, x)
    if kind == "pos":
        return riesz_pos(T, x)
    if kind == "neg":
        return riesz_neg(T, x)
    raise ValueError(f"unknown oracle kind {kind!r}")


def _partition_value(T: Evaluator, S: Optional[Evaluator], kind: str, p: Partition) -> Element:
    total = T(Element.zero(p.parent.dim))  # T(0) = 0 in the codomain
    for b in p.blocks:
        if kind == "meet":
            total = total + T(b).meet(S(b))
        elif kind == "join":
            total = total + T(b).join(S(b))
        elif kind == "abs":
            total = total + abs(T(b))
        else:
            raise ValueError(f"unknown partition kind {kind!r}")
    return total


def refinement_chain(x: Element) -> list[Partition]:
    """``[x]``, then split off one coordinate at a time down to the finest partition."""
    idx = [j - 1 for j in support(x)]
    chain = []
    for cut in range(len(idx)):
        singles = [restrict(x, [j]) for j in idx[:cut]]
        rest = restrict(x, idx[cut:])
        chain.append(Partition(x, singles + [rest]))
    return chain


def oracle_partition_at(T: UrysonOperator, S: Optional[UrysonOperator], kind: str,
                        x: Element) -> tuple[Element, list[tuple[Partition, Element]]]:
    """Extremum of the blockwise sums over all partitions of ``x`` plus a witness chain.

    Join and abs take the sup, meet the inf; the chain runs from ``[x]`` to the
    finest partition and is monotone in the same direction.
    """
    if x.dim != T.n:
        raise DimensionMismatch(f"operator expects dim {T.n}, got {x.dim}")
    if x.is_zero():
        return Element.zero(T.m), []
    values = [_partition_value(T, S, kind, p) for p in partitions(x)]
    value = inf_all(values) if kind == "meet" else sup_all(values)
    chain = [(p, _partition_value(T, S, kind, p)) for p in refinement_chain(x)]
    return value, chain


def partition_values(T: Evaluator, S: Optional[Evaluator], kind: str,
                     x: Element) -> list[tuple[Partition, Element]]:
    return [(p, _partition_value(T, S, kind, p)) for p in partitions(x)]


# -- rank one -------------------------------------------------------------------

def rank_one(phi: UrysonOperator, u: Element) -> UrysonOperator:
    """``x -> phi(x) * u`` for a functional ``phi``."""
    if phi.m != 1:
        raise PreconditionError("rank_one needs a functional (m = 1)")
    row = phi.entries[0]
    return UrysonOperator(phi.n, u.dim, [[scalar.scale(f, ui) for f in row] for ui in u.coords])


def rank_one_modulus_check(phi: UrysonOperator, u: Element,
                           probes: Iterable[Element] = ()) -> bool:
    """``|phi (x) u| == |phi| (x) |u|`` entrywise and, at the probes, via partitions."""
    T = rank_one(phi, u)
    abs_T = op_abs_parts(T)[0]
    abs_phi = op_abs_parts(phi)[0]
    rhs = rank_one(abs_phi, abs(u))
    if abs_T != rhs:
        return False
    for x in probes:
        value, _ = oracle_partition_at(T, None, "abs", x)
        if value != apply(rhs, x) or value != abs(u) * apply(abs_phi, x)[0]:
            return False
    return True


# -- boundedness ----------------------------------------------------------------

def _range_on(f: ScalarMap, a: Fraction, b: Fraction) -> tuple[Fraction, Fraction]:
    vals = [f(p) for p in f.points_in(a, b)]
    # any non-sample point of [a, b] contributes the value 0
    if a < b or not vals:
        vals.append(Fraction(0))
    return min(vals), max(vals)


def bound_on_box(T: UrysonOperator, a: Element, b: Element) -> OperatorBox:
    """The tight coordinatewise hull of ``T([a, b])``."""
    if a.dim != T.n or b.dim != T.n:
        raise DimensionMismatch("box dimension differs from operator domain")
    if not a.le(b):
        raise PreconditionError("box needs a <= b")
    lo, hi = [], []
    for row in T.entries:
        ranges = [_range_on(f, aj, bj) for f, aj, bj in zip(row, a.coords, b.coords)]
        lo.append(sum((r[0] for r in ranges), Fraction(0)))
        hi.append(sum((r[1] for r in ranges), Fraction(0)))
    return OperatorBox(Element(lo), Element(hi))


# -- probes ---------------------------------------------------------------------

def probe_points(ops: Sequence[UrysonOperator], rng: Optional[random.Random] = None,
                 mixed: int = 10, tail_prefix: int = 3) -> list[Element]:
    """Single-coordinate vectors at every sample/tail-prefix point, plus mixed vectors."""
    n = ops[0].n
    per_coord: list[set] = [set() for _ in range(n)]
    for T in ops:
        for row in T.entries:
            for j, f in enumerate(row):
                per_coord[j].update(f.probe_points(tail_prefix))
    out = []
    for j in range(n):
        for r in sorted(per_coord[j]):
            out.append(Element.unit(n, j, r))
    rng = rng or random.Random(0)
    for _ in range(mixed):
        coords = []
        for j in range(n):
            choices = sorted(per_coord[j]) + [Fraction(0), Fraction(3)]
            coords.append(rng.choice(choices))
        out.append(Element(coords))
    return out
