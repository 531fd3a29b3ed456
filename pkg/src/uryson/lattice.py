"""Coordinatewise vector lattice on Q^n: elements, fragments, partitions, atoms, bands."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence, Union

from . import config
from .errors import CapExceeded, DimensionMismatch, PreconditionError

Number = Union[int, Fraction, str]


@dataclass(frozen=True)
class Element:
    """An exact point of Q^n with the coordinatewise order."""

    coords: tuple

    def __init__(self, coords: Iterable[Number]):
        cs = tuple(c if type(c) is Fraction else Fraction(c) for c in coords)
        if not cs:
            raise ValueError("Element needs at least one coordinate")
        object.__setattr__(self, "coords", cs)

    def __hash__(self) -> int:
        # elements key the memo tables of every oracle, and Fraction hashing is slow
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash(self.coords)
            object.__setattr__(self, "_hash", h)
        return h

    @classmethod
    def zero(cls, dim: int) -> "Element":
        return cls([0] * dim)

    @classmethod
    def unit(cls, dim: int, j: int, value: Number = 1) -> "Element":
        """``value`` at 0-based coordinate ``j``, zero elsewhere."""
        cs = [Fraction(0)] * dim
        cs[j] = Fraction(value)
        return cls(cs)

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coords)

    def __getitem__(self, j: int) -> Fraction:
        return self.coords[j]

    def _check(self, other: "Element") -> None:
        if self.dim != other.dim:
            raise DimensionMismatch(f"dimension {self.dim} vs {other.dim}")

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self) -> "Element":
        return Element(-a for a in self.coords)

    def __mul__(self, lam: Number) -> "Element":
        lam = Fraction(lam)
        return Element(lam * a for a in self.coords)

    __rmul__ = __mul__

    def __abs__(self) -> "Element":
        return Element(abs(a) for a in self.coords)

    def join(self, other: "Element") -> "Element":
        self._check(other)
        return Element(max(a, b) for a, b in zip(self.coords, other.coords))

    def meet(self, other: "Element") -> "Element":
        self._check(other)
        return Element(min(a, b) for a, b in zip(self.coords, other.coords))

    def le(self, other: "Element") -> bool:
        self._check(other)
        return all(a <= b for a, b in zip(self.coords, other.coords))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    def is_nonnegative(self) -> bool:
        return all(a >= 0 for a in self.coords)

    def __repr__(self) -> str:
        return "Element(" + ", ".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class IndexSet:
    """A set of coordinate indices, 1-based as in ``supp(w) = {j : w_j != 0}``."""

    dim: int
    members: tuple

    def __init__(self, dim: int, members: Iterable[int] = ()):
        ms = tuple(sorted(set(int(j) for j in members)))
        if dim < 1:
            raise ValueError("IndexSet dim must be positive")
        if ms and (ms[0] < 1 or ms[-1] > dim):
            raise ValueError(f"indices {ms} out of range 1..{dim}")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "members", ms)

    @classmethod
    def full(cls, dim: int) -> "IndexSet":
        return cls(dim, range(1, dim + 1))

    def __contains__(self, j: int) -> bool:
        return j in self.members

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def complement(self) -> "IndexSet":
        return IndexSet(self.dim, (j for j in range(1, self.dim + 1) if j not in self.members))


@dataclass(frozen=True)
class Partition:
    parent: Element
    blocks: tuple

    def __init__(self, parent: Element, blocks: Iterable[Element]):
        bs = tuple(blocks)
        total = Element.zero(parent.dim)
        for b in bs:
            total = total + b
        if total != parent:
            raise ValueError("blocks do not sum to the parent")
        for a, b in combinations(bs, 2):
            if not is_disjoint(a, b):
                raise ValueError("partition blocks must be mutually disjoint")
        if not parent.is_zero() and any(b.is_zero() for b in bs):
            raise ValueError("zero block in a partition of a nonzero element")
        object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "blocks", bs)

    def __len__(self) -> int:
        return len(self.blocks)

    def refines(self, other: "Partition") -> bool:
        """True when every block of ``self`` is a fragment of some block of ``other``."""
        return all(any(is_fragment(b, o) for o in other.blocks) for b in self.blocks)


def _same_dim(x: Element, y: Element) -> None:
    if x.dim != y.dim:
        raise DimensionMismatch(f"dimension {x.dim} vs {y.dim}")


def support(x: Element) -> IndexSet:
    return IndexSet(x.dim, (j + 1 for j, c in enumerate(x.coords) if c != 0))


def is_disjoint(x: Element, y: Element) -> bool:
    _same_dim(x, y)
    return all(min(abs(a), abs(b)) == 0 for a, b in zip(x.coords, y.coords))


def is_fragment(z: Element, x: Element) -> bool:
    """``z`` is a fragment of ``x``: ``|z| ^ |x - z| = 0``."""
    return is_disjoint(z, x - z)


def lattice_ops(x: Element, y: Element) -> tuple[Element, Element]:
    _same_dim(x, y)
    return x.join(y), x.meet(y)


def _check_cap(k: int, cap: Optional[int], default: int, what: str) -> None:
    limit = default if cap is None else cap
    if k > limit:
        raise CapExceeded(f"|supp(x)| = {k} exceeds the {what} cap {limit}")


def restrict(x: Element, idx: Iterable[int]) -> Element:
    """Keep the 0-based coordinates in ``idx``; zero the rest."""
    keep = set(idx)
    return Element(c if j in keep else 0 for j, c in enumerate(x.coords))


def fragments(x: Element, cap: Optional[int] = None) -> list[Element]:
    """All fragments of ``x``, ordered lexicographically by the included index tuple."""
    supp = [j - 1 for j in support(x)]
    _check_cap(len(supp), cap, config.current().fragments, "fragment")
    subsets = []
    for r in range(len(supp) + 1):
        subsets.extend(combinations(supp, r))
    subsets.sort()
    return [restrict(x, s) for s in subsets]


def binary_decompositions(x: Element, cap: Optional[int] = None) -> list[tuple[Element, Element]]:
    return [(y, x - y) for y in fragments(x, cap)]


def _set_partitions(items: Sequence[int]) -> Iterator[list[list[int]]]:
    """Set partitions via restricted growth strings, coarsest first, finest last."""
    n = len(items)
    if n == 0:
        yield []
        return
    labels = [0] * n
    maxes = [0] * n  # maxes[i] = max(labels[:i+1])

    def emit():
        blocks: dict[int, list[int]] = {}
        for item, lab in zip(items, labels):
            blocks.setdefault(lab, []).append(item)
        return [blocks[k] for k in sorted(blocks)]

    while True:
        yield emit()
        i = n - 1
        while i > 0 and labels[i] == maxes[i - 1] + 1:
            i -= 1
        if i == 0:
            return
        labels[i] += 1
        maxes[i] = max(maxes[i - 1], labels[i])
        for t in range(i + 1, n):
            labels[t] = 0
            maxes[t] = maxes[i]


def partitions(x: Element, cap: Optional[int] = None) -> list[Partition]:
    """Every partition of ``x`` into nonzero mutually disjoint fragments.

    One partition per set partition of ``supp(x)``; the first is ``[x]`` and the
    last the finest one. ``x = 0`` has the single empty partition.
    """
    supp = [j - 1 for j in support(x)]
    _check_cap(len(supp), cap, config.current().partitions, "partition")
    return [Partition(x, [restrict(x, b) for b in blocks]) for blocks in _set_partitions(supp)]


def finest_partition(x: Element) -> Partition:
    return Partition(x, [restrict(x, [j - 1]) for j in support(x)])


def is_atom(u: Element) -> bool:
    return len(support(u)) == 1


@dataclass(frozen=True)
class Disjoint:
    pass


@dataclass(frozen=True)
class Proportional:
    ratio: Fraction


def atom_relation(u: Element, v: Element) -> Union[Disjoint, Proportional]:
    """For atoms: ``Disjoint()`` or ``Proportional(lam)`` with ``v = lam * u``."""
    _same_dim(u, v)
    if not (is_atom(u) and is_atom(v)):
        raise PreconditionError("atom_relation needs two atoms")
    (ju,), (jv,) = support(u).members, support(v).members
    if ju != jv:
        return Disjoint()
    return Proportional(v[ju - 1] / u[ju - 1])


def band_project(x: Element, band: IndexSet) -> Element:
    if band.dim != x.dim:
        raise DimensionMismatch(f"band over {band.dim} coordinates, element of dim {x.dim}")
    return restrict(x, (j - 1 for j in band))


def sup_all(items: Iterable[Element]) -> Element:
    it = iter(items)
    acc = next(it)
    for e in it:
        acc = acc.join(e)
    return acc


def inf_all(items: Iterable[Element]) -> Element:
    it = iter(items)
    acc = next(it)
    for e in it:
        acc = acc.meet(e)
    return acc
