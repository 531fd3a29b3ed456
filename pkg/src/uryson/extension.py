"""Lateral ideals of Q^n, minimal extensions of positive partial operators, band projections.

Every descriptor here is coordinate-separable: membership of ``x`` only asks, per
coordinate ``j`` in ``supp(x)``, whether the value ``x_j`` is admissible at ``j``.
That gives each enumeration-based formula a closed-form twin used for cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Mapping, Optional, Sequence, Union

from . import scalar
from .errors import (CapExceeded, DimensionMismatch, MissingValue, NotAnExtension,
                     PreconditionError)
from .lattice import Element, fragments, is_disjoint, restrict, sup_all, support
from .operators import UrysonOperator, apply
from .scalar import ScalarMap


class LateralIdeal:
    """Base for the three descriptor variants."""

    dim: int

    def __contains__(self, x: Element) -> bool:
        return ideal_contains(self, x)

    def universe(self) -> frozenset:
        """0-based coordinates a member can be nonzero on."""
        raise NotImplementedError

    def admits(self, j: int, value: Fraction) -> bool:
        """Whether a member may carry ``value != 0`` at 0-based coordinate ``j``."""
        raise NotImplementedError

    def enumerable(self) -> bool:
        raise NotImplementedError

    def coordinate_rule(self, j: int):
        """``ANY`` if every nonzero value is admissible at ``j``, the single admissible
        value for fragment-type coordinates, or None outside the universe."""
        raise NotImplementedError


ANY = "any"


@dataclass(frozen=True)
class FragmentsOf(LateralIdeal):
    w: Element

    @property
    def dim(self) -> int:
        return self.w.dim

    def universe(self) -> frozenset:
        return frozenset(j - 1 for j in support(self.w))

    def admits(self, j: int, value: Fraction) -> bool:
        return value == self.w[j]

    def enumerable(self) -> bool:
        return True

    def coordinate_rule(self, j: int):
        return self.w[j] if self.w[j] != 0 else None


@dataclass(frozen=True)
class OrderIdealOf(LateralIdeal):
    """The order ideal generated by ``generators``: ``|x| <= c * sum |g|`` for some c."""

    generators: tuple
    dim: int

    def __init__(self, generators: Iterable[Element], dim: Optional[int] = None):
        gs = tuple(generators)
        if dim is None:
            if not gs:
                raise ValueError("an empty generator list needs an explicit dim")
            dim = gs[0].dim
        if any(g.dim != dim for g in gs):
            raise DimensionMismatch("generators of different dimensions")
        object.__setattr__(self, "generators", gs)
        object.__setattr__(self, "dim", dim)

    def universe(self) -> frozenset:
        return frozenset(j - 1 for g in self.generators for j in support(g))

    def admits(self, j: int, value: Fraction) -> bool:
        return j in self.universe()

    def enumerable(self) -> bool:
        return not self.universe()

    def coordinate_rule(self, j: int):
        return ANY if j in self.universe() else None


@dataclass(frozen=True)
class DisjointUnion(LateralIdeal):
    parts: tuple
    dim: int

    def universe(self) -> frozenset:
        return frozenset().union(*(p.universe() for p in self.parts))

    def admits(self, j: int, value: Fraction) -> bool:
        return any(j in p.universe() and p.admits(j, value) for p in self.parts)

    def enumerable(self) -> bool:
        return all(p.enumerable() for p in self.parts)

    def coordinate_rule(self, j: int):
        for p in self.parts:
            rule = p.coordinate_rule(j)
            if rule is not None:
                return rule
        return None


Descriptor = Union[FragmentsOf, OrderIdealOf, DisjointUnion]


def order_ideal_factor(D: OrderIdealOf, x: Element) -> Optional[Fraction]:
    """Least ``c`` with ``|x| <= c * sum |g|``, or None if no such ``c`` exists."""
    total = Element.zero(D.dim)
    for g in D.generators:
        total = total + abs(g)
    c = Fraction(0)
    for xj, tj in zip(abs(x).coords, total.coords):
        if xj == 0:
            continue
        if tj == 0:
            return None
        c = max(c, xj / tj)
    return c


def ideal_contains(D: LateralIdeal, x: Element) -> bool:
    if x.dim != D.dim:
        raise DimensionMismatch(f"descriptor over dim {D.dim}, element of dim {x.dim}")
    if isinstance(D, FragmentsOf):
        return all(c == 0 or c == wj for c, wj in zip(x.coords, D.w.coords))
    if isinstance(D, OrderIdealOf):
        return order_ideal_factor(D, x) is not None
    if isinstance(D, DisjointUnion):
        # each nonzero coordinate x_j e_j is a fragment of x, so it must sit in one part
        assigned: dict = {}
        for j in (i - 1 for i in support(x)):
            single = Element.unit(x.dim, j, x[j])
            owners = [k for k, p in enumerate(D.parts) if ideal_contains(p, single)]
            if not owners:
                return False
            assigned.setdefault(owners[0], []).append(j)
        return all(ideal_contains(D.parts[k], restrict(x, idx)) for k, idx in assigned.items())
    raise TypeError(f"not a lateral ideal descriptor: {D!r}")


def descriptors_disjoint(a: LateralIdeal, b: LateralIdeal) -> bool:
    return not (a.universe() & b.universe())


def disjoint_union_ideal(parts: Sequence[LateralIdeal], dim: Optional[int] = None) -> LateralIdeal:
    parts = tuple(parts)
    if not parts:
        if dim is None:
            raise ValueError("empty union needs an explicit dim")
        return OrderIdealOf((), dim)
    dim = parts[0].dim if dim is None else dim
    if any(p.dim != dim for p in parts):
        raise DimensionMismatch("parts of different dimensions")
    for a, b in combinations(parts, 2):
        if not descriptors_disjoint(a, b):
            raise PreconditionError("parts of a disjoint union must be mutually disjoint")
    if len(parts) == 1:
        return parts[0]
    return DisjointUnion(parts, dim)


def ideal_members(D: LateralIdeal) -> list[Element]:
    """Every member of an enumerable descriptor, in a fixed order."""
    if not D.enumerable():
        raise CapExceeded("descriptor has infinitely many members")
    if isinstance(D, FragmentsOf):
        return fragments(D.w)
    if isinstance(D, OrderIdealOf):
        return [Element.zero(D.dim)]
    members = [Element.zero(D.dim)]
    for part in D.parts:
        members = [a + b for a in members for b in ideal_members(part)]
    return members


# -- partial operators ----------------------------------------------------------

@dataclass(frozen=True)
class PartialOperator:
    """A positive orthogonally additive map on a lateral ideal ``domain``.

    Either ``table`` (member -> value) or ``operator`` (restricted to the
    domain) supplies the values; a table consulted off its keys is an error.
    """

    domain: LateralIdeal
    table: Optional[tuple] = None  # ((member, value), ...)
    operator: Optional[UrysonOperator] = None
    codim: int = 1

    def __init__(self, domain: LateralIdeal, table: Optional[Union[Mapping, Iterable]] = None,
                 operator: Optional[UrysonOperator] = None):
        if (table is None) == (operator is None):
            raise ValueError("give exactly one of table or operator")
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "operator", operator)
        if operator is not None:
            object.__setattr__(self, "table", None)
            object.__setattr__(self, "codim", operator.m)
            return
        pairs = tuple(dict(table.items() if isinstance(table, Mapping) else table).items())
        if not pairs:
            raise ValueError("empty table")
        object.__setattr__(self, "table", pairs)
        object.__setattr__(self, "codim", pairs[0][1].dim)

    def __call__(self, y: Element) -> Element:
        if not ideal_contains(self.domain, y):
            raise PreconditionError(f"{y!r} is outside the domain")
        if self.operator is not None:
            return apply(self.operator, y)
        value = dict(self.table).get(y)
        if value is None:
            if y.is_zero():
                return Element.zero(self.codim)
            raise MissingValue(f"no table value for member {y!r}")
        return value

    def members(self) -> list[Element]:
        if self.table is not None:
            return [k for k, _ in self.table]
        return ideal_members(self.domain)

    def validate(self) -> None:
        """Positivity and orthogonal additivity over the supplied members."""
        members = self.members()
        values = {y: self(y) for y in members}
        for y, v in values.items():
            if not v.is_nonnegative():
                raise PreconditionError(f"negative value at {y!r}")
            if y.is_zero() and not v.is_zero():
                raise PreconditionError("T(0) must be 0")
        for a, b in combinations(members, 2):
            if is_disjoint(a, b) and (a + b) in values:
                if values[a] + values[b] != values[a + b]:
                    raise PreconditionError(f"not orthogonally additive at {a!r} + {b!r}")


def minimal_extension_at(T: PartialOperator, x: Element) -> Element:
    """``sup { T(y) : y fragment of x, y in D }``; ``y = 0`` always qualifies."""
    if x.dim != T.domain.dim:
        raise DimensionMismatch("point and domain dimensions differ")
    feasible = [y for y in fragments(x) if ideal_contains(T.domain, y)]
    return sup_all(T(y) for y in feasible)


def minimal_extension_operator(T: PartialOperator) -> UrysonOperator:
    """Matrix form of the minimal extension: entry ``(i, j)`` keeps admissible values only."""
    D = T.domain
    n, m = D.dim, T.codim
    entries = {}
    for j in range(n):
        rule = D.coordinate_rule(j)
        if rule is None:
            continue
        for i in range(m):
            if rule == ANY:
                if T.operator is None:
                    raise PreconditionError("a finite table cannot cover an order-ideal coordinate")
                entries[(i, j)] = T.operator.entries[i][j]
            else:
                value = T(Element.unit(n, j, rule))[i]
                entries[(i, j)] = ScalarMap({rule: value})
    return UrysonOperator.from_dict(n, m, entries)


def check_minimality(T: PartialOperator, R: UrysonOperator, probes: Iterable[Element]) -> bool:
    """Every positive extension ``R`` of ``T`` dominates the minimal extension."""
    if not R.is_positive():
        raise PreconditionError("R must be positive")
    for y in T.members():
        if apply(R, y) != T(y):
            raise NotAnExtension(f"R disagrees with T at {y!r}")
    return all(minimal_extension_at(T, x).le(apply(R, x)) for x in probes)


# -- band projection onto {phi}^dd --------------------------------------------------

def _check_positive_functional(phi: UrysonOperator, T: UrysonOperator) -> None:
    if phi.m != 1 or T.m != 1:
        raise PreconditionError("band projection formula is for functionals")
    if phi.n != T.n:
        raise DimensionMismatch("phi and T act on different dimensions")
    if not (phi.is_positive() and T.is_positive()):
        raise PreconditionError("band projection formula needs phi >= 0 and T >= 0")


def pi_band_projection_at(phi: UrysonOperator, T: UrysonOperator, x: Element) -> Fraction:
    """``sup_eps inf { T(y) : y fragment of x, phi(x - y) <= eps * phi(x) }``.

    The fragment set is finite, so the inner inf is a step function of ``eps``;
    it is constant below the least positive ratio ``phi(x - y) / phi(x)``.
    """
    _check_positive_functional(phi, T)
    frags = fragments(x)
    phi_x = apply(phi, x)[0]
    gaps = [(y, apply(phi, x - y)[0]) for y in frags]
    if phi_x > 0:
        positive = [g / phi_x for _, g in gaps if g > 0]
        eps = min(positive) / 2 if positive else Fraction(1)
        feasible = [y for y, g in gaps if g <= eps * phi_x]
    else:
        feasible = [y for y, g in gaps if g <= 0]
    return min(apply(T, y)[0] for y in feasible)


def band_projection_operator(phi: UrysonOperator, T: UrysonOperator) -> UrysonOperator:
    """Closed form of the projection: ``T_1j`` restricted to ``supp(phi_1j)``."""
    _check_positive_functional(phi, T)
    return T.zip_entries(phi, scalar.restrict_to_support)


def atom_grid(dim: int, values: Sequence) -> list[Element]:
    return [Element.unit(dim, j, v) for j, v in product(range(dim), values) if v != 0]
