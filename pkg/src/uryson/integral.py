"""Discretized Uryson integral operators ``(Tf)(s) = sum_t K(s, t, f(t)) nu_t``.

Both measure spaces are finite, so a grid-valued function on ``B`` is just an
:class:`~uryson.lattice.Element` of dimension ``|B|`` and the integral is a
quadrature sum. :func:`build_operator` turns a kernel table into the matrix
form, where entry ``(i, j)`` is the slice ``r -> K(s_i, t_j, r) * nu_j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .errors import DimensionMismatch, PreconditionError
from .lattice import Element
from .operators import UrysonOperator
from .scalar import ScalarMap


@dataclass(frozen=True)
class FiniteMeasureSpace:
    weights: tuple
    labels: tuple

    def __init__(self, weights: Iterable, labels: Optional[Sequence] = None):
        ws = tuple(Fraction(w) for w in weights)
        if any(w <= 0 for w in ws):
            raise PreconditionError("point masses must be positive")
        ls = tuple(labels) if labels is not None else tuple(range(1, len(ws) + 1))
        if len(ls) != len(ws):
            raise ValueError("one label per weight")
        if len(set(ls)) != len(ls):
            raise ValueError("labels must be distinct")
        object.__setattr__(self, "weights", ws)
        object.__setattr__(self, "labels", ls)

    def __len__(self) -> int:
        return len(self.weights)


@dataclass(frozen=True)
class KernelTable:
    """``K(s, t, r)`` on ``A x B x grid``; indices are 0-based, missing triples are 0.

    Condition ``K(s, t, 0) = 0`` is not enforced here so that violations can be
    reported by :func:`caratheodory_check`.
    """

    A: FiniteMeasureSpace
    B: FiniteMeasureSpace
    grid: tuple
    values: Mapping = field(default_factory=dict)

    def __init__(self, A: FiniteMeasureSpace, B: FiniteMeasureSpace, grid: Iterable,
                 values: Optional[Mapping] = None):
        g = tuple(sorted(set(Fraction(r) for r in grid) | {Fraction(0)}))
        vals = {}
        for (s, t, r), v in (values or {}).items():
            r, v = Fraction(r), Fraction(v)
            if not (0 <= s < len(A) and 0 <= t < len(B)):
                raise ValueError(f"kernel index {(s, t)} out of range")
            if r not in g:
                raise ValueError(f"kernel value at r = {r} off the grid")
            if v != 0:
                vals[(s, t, r)] = v
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "grid", g)
        object.__setattr__(self, "values", vals)

    def __call__(self, s: int, t: int, r) -> Fraction:
        return self.values.get((s, t, Fraction(r)), Fraction(0))

    def __hash__(self) -> int:
        return hash((self.A, self.B, self.grid, tuple(sorted(self.values.items()))))


def _c0_violations(K: KernelTable) -> list:
    return sorted((s, t) for (s, t, r) in K.values if r == 0)


def build_operator(K: KernelTable) -> UrysonOperator:
    bad = _c0_violations(K)
    if bad:
        raise PreconditionError(f"K(s, t, 0) != 0 at (s, t) = {bad[0]} (0-based)")
    p, q = len(K.A), len(K.B)
    slices: dict = {}
    for (s, t, r), v in K.values.items():
        slices.setdefault((s, t), {})[r] = v * K.B.weights[t]
    return UrysonOperator.from_dict(q, p, {key: ScalarMap(samples) for key, samples in slices.items()})


def apply_integral(K: KernelTable, f: Element) -> Element:
    """Direct quadrature of ``T f`` for a grid-valued ``f`` on ``B``."""
    if f.dim != len(K.B):
        raise DimensionMismatch(f"f has {f.dim} values, B has {len(K.B)} points")
    for t, r in enumerate(f):
        if r not in K.grid:
            raise PreconditionError(f"f(t_{t + 1}) = {r} is off the value grid")
    return Element(sum((K(s, t, r) * K.B.weights[t] for t, r in enumerate(f)), Fraction(0))
                   for s in range(len(K.A)))


@dataclass(frozen=True)
class CaratheodoryReport:
    c0: bool
    c0_violations: tuple  # 0-based (s, t) pairs with K(s, t, 0) != 0
    c1: str = "vacuous"  # measurability is automatic on finite spaces
    c2: str = "vacuous"  # continuity in r is automatic on a finite grid

    @property
    def ok(self) -> bool:
        return self.c0


def caratheodory_check(K: KernelTable) -> CaratheodoryReport:
    bad = tuple(_c0_violations(K))
    return CaratheodoryReport(not bad, bad)
