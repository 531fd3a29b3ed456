"""Finite elements of U(Q^n, Q^m): structure test, majorants, refutations, bands, atoms."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Optional, Sequence, Union

from . import _poly as poly
from . import scalar
from .errors import PreconditionError
from .lattice import Element, IndexSet
from .operators import UrysonOperator
from .scalar import Bounded, ScalarMap, TailRule, Unbounded


@dataclass(frozen=True)
class MajorantCertificate:
    majorant: UrysonOperator
    probes: tuple  # ((S, c_S), ...)
    method: str  # "synthesized" | "supplied"


@dataclass(frozen=True)
class MajorantFailure:
    """No constant ``c`` makes ``sup_n(|S| ^ n|T|) <= c Z`` at entry ``(i, j)``."""

    probe: UrysonOperator
    entry: tuple  # 0-based (i, j)
    witness: Element  # single-coordinate point where the ratio is infinite or arbitrarily large
    dominance: Unbounded


def is_finite_structural(T: UrysonOperator) -> bool:
    return not T.has_tails()


def _enclosing_interval(T: UrysonOperator) -> Optional[tuple]:
    ends = [f.support_interval() for row in T.entries for f in row]
    ends = [e for e in ends if e is not None]
    if not ends:
        return None
    return min(e[0] for e in ends), max(e[1] for e in ends)


def probe_constant(T: UrysonOperator, S: UrysonOperator) -> Fraction:
    """``sup { sum_ij |S_ij(x_j)| : x in [a, b]^n }`` for ``[a, b]`` enclosing supp(T)."""
    box = _enclosing_interval(T)
    if box is None:
        return Fraction(0)
    a, b = box
    total = Fraction(0)
    for j in range(S.n):
        column = [S.entries[i][j] for i in range(S.m)]
        pts = set()
        for f in column:
            pts.update(f.points_in(a, b))
        total += max((sum((abs(f(p)) for f in column), Fraction(0)) for p in pts),
                     default=Fraction(0))
    return total


def local_majorant_part(T: UrysonOperator, S: UrysonOperator) -> UrysonOperator:
    """``sup_n (|S| ^ n|T|)`` entrywise: ``|S_ij|`` restricted to ``supp(T_ij)``."""
    return S.map_entries(scalar.abs_map).zip_entries(T, scalar.restrict_to_support)


def check_majorant(T: UrysonOperator, Z: UrysonOperator,
                   probes: Optional[Sequence[UrysonOperator]] = None,
                   rng: Optional[random.Random] = None) -> Union[MajorantCertificate, MajorantFailure]:
    """Least valid ``c_S`` per probe, or the first probe admitting no constant."""
    T._check(Z)
    if not Z.is_positive():
        raise PreconditionError("majorant must be positive")
    if probes is None:
        probes = default_probes(T, Z, rng)
    certified = []
    for S in probes:
        T._check(S)
        W = local_majorant_part(T, S)
        c = Fraction(0)
        for i in range(T.m):
            for j in range(T.n):
                d = scalar.dominance(W.entries[i][j], Z.entries[i][j])
                if isinstance(d, Unbounded):
                    return MajorantFailure(S, (i, j), Element.unit(T.n, j, d.first), d)
                c = max(c, d.constant)
        certified.append((S, c))
    return MajorantCertificate(Z, tuple(certified), "supplied")


def default_probes(T: UrysonOperator, Z: UrysonOperator,
                   rng: Optional[random.Random] = None, count: int = 5) -> list:
    rng = rng or random.Random(0)
    probes = []
    if T.has_tails():
        probes.append(refute_majorant(T, Z).probe)
    for _ in range(count):
        probes.append(random_finite_operator(rng, T.n, T.m))
    return probes


def random_finite_operator(rng: random.Random, n: int, m: int,
                           points=(1, -1, 2, -2, Fraction(1, 2), Fraction(-1, 2)),
                           density: float = 0.6) -> UrysonOperator:
    rows = []
    for _ in range(m):
        row = []
        for _ in range(n):
            samples = {p: Fraction(rng.randint(-40, 40), rng.randint(1, 4))
                       for p in points if rng.random() < density}
            row.append(ScalarMap(samples))
        rows.append(row)
    return UrysonOperator(n, m, rows)


def synthesize_majorant(T: UrysonOperator,
                        probes: Sequence[UrysonOperator] = ()) -> MajorantCertificate:
    """Indicator majorant of a structurally finite ``T`` with one constant per probe.

    ``Z_ij`` is 1 on ``supp(T_ij)``; each ``c_S`` is the box supremum of
    ``sum |S_ij|``, and issuance checks it against :func:`check_majorant`.
    """
    if not is_finite_structural(T):
        raise PreconditionError("majorant synthesis needs a structurally finite operator")
    Z = T.map_entries(scalar.indicator_of_support)
    certified = []
    if probes:
        checked = check_majorant(T, Z, probes)
        if isinstance(checked, MajorantFailure):
            raise AssertionError("synthesized majorant failed its own check")
        for (S, least), _ in zip(checked.probes, probes):
            c = probe_constant(T, S)
            if least > c:
                raise AssertionError("box constant below the least valid constant")
            certified.append((S, c))
    return MajorantCertificate(Z, tuple(certified), "synthesized")


def is_totally_finite(T: UrysonOperator) -> bool:
    return is_finite_structural(T) and is_finite_structural(synthesize_majorant(T).majorant)


# -- refutation -----------------------------------------------------------------

@dataclass(frozen=True)
class RefutationWitness:
    """A probe ``S`` and a locator ``c -> (n, x)`` with ``(|S| ^ n|T|)(x) > c Z(x)``.

    ``S`` lives on the tail lattice of ``T[i][j]`` from index ``offset`` on, with
    values ``(k + 1) * envelope(k) * ratio**k`` where ``envelope(k) * ratio**k``
    dominates ``Z[i][j]`` there.
    """

    target: UrysonOperator
    majorant: UrysonOperator
    probe: UrysonOperator
    entry: tuple  # 0-based (i, j) of the refuted tail
    offset: int  # index into T's tail where S starts
    envelope: tuple  # poly
    ratio: Fraction

    def locate(self, c) -> tuple[int, Element]:
        c = Fraction(c)
        if c <= 0:
            raise PreconditionError("locator constant must be positive")
        i, j = self.entry
        t_tail = self.target.entries[i][j].tail
        k = max(1, floor(c))  # k + 1 > c
        while poly.evaluate(t_tail.poly, self.offset + k) == 0:
            k += 1
        point = t_tail.point(self.offset + k)
        # S(x) / |T(x)| = small * (rho / r)**k; keeping the power apart avoids dividing
        # two numbers with millions of digits when c is large
        r = t_tail.ratio
        small = (Fraction(k + 1) * poly.evaluate(self.envelope, k)
                 / (abs(poly.evaluate(t_tail.poly, self.offset + k)) * r ** self.offset))
        q = self.ratio / r
        n = (small.numerator * q.numerator ** k) // (small.denominator * q.denominator ** k) + 1
        return n, Element.unit(self.target.n, j, point)


def _envelope_on(t_tail: TailRule, z: ScalarMap) -> tuple[int, tuple, Fraction]:
    """``(offset, B, rho)``: ``|z(t_{offset+k})| <= B(k) rho**k`` for ``k >= 0``, ``B(k) > 0`` for ``k >= 1``."""
    # start past every sample of z
    offset = 0
    if z.samples:
        last = z.samples[-1][0]
        if last >= t_tail.start:
            offset = floor((last - t_tail.start) / t_tail.step) + 1
    zt = z.tail
    if zt is None:
        return offset, (Fraction(1),), Fraction(1)
    aligned = zt.step == t_tail.step and zt.on_lattice(t_tail.start)
    if aligned:
        first = t_tail.point(offset)
        if zt.start > first:
            offset += int((zt.start - first) / t_tail.step)
        s = int((t_tail.point(offset) - zt.start) / zt.step)
        q = zt.shifted(s)
        return offset, poly.abs_coeffs(q.poly), q.ratio
    # mismatched lattices: index into z's tail grows at most linearly
    alpha = t_tail.step / zt.step
    beta = max(Fraction(0), (t_tail.point(offset) - zt.start) / zt.step)
    big_m = max(1, -(-alpha.numerator // alpha.denominator), -(-beta.numerator // beta.denominator))
    r = max(Fraction(1), zt.ratio)
    qhat = poly.abs_coeffs(zt.poly)
    env = poly.scale(poly.compose_linear(qhat, big_m, big_m), r ** big_m)
    return offset, env if env else (Fraction(1),), r ** big_m


def refute_majorant(T: UrysonOperator, Z: UrysonOperator) -> RefutationWitness:
    T._check(Z)
    if not Z.is_positive():
        raise PreconditionError("candidate majorant must be positive")
    target = next(((i, j) for i in range(T.m) for j in range(T.n)
                   if T.entries[i][j].tail is not None), None)
    if target is None:
        raise PreconditionError("operator is structurally finite; nothing to refute")
    i, j = target
    t_tail = T.entries[i][j].tail
    offset, env, rho = _envelope_on(t_tail, Z.entries[i][j])
    s_poly = poly.mul((Fraction(1), Fraction(1)), env)
    s_rule = TailRule(t_tail.point(offset), t_tail.step, s_poly, rho)
    probe = UrysonOperator.from_dict(T.n, T.m, {(i, j): ScalarMap(tail=s_rule)})
    return RefutationWitness(T, Z, probe, (i, j), offset, env, rho)


# -- bands and atoms --------------------------------------------------------------

def restrict_to_band(T: UrysonOperator, band: IndexSet) -> UrysonOperator:
    """Zero every row outside the codomain band ``band`` (1-based rows)."""
    if band.dim != T.m:
        raise ValueError(f"band over {band.dim} rows, operator has {T.m}")
    zero = ScalarMap()
    return UrysonOperator(T.n, T.m, [row if i + 1 in band else [zero] * T.n
                                     for i, row in enumerate(T.entries)])


def band_component(T: UrysonOperator, band: IndexSet) -> Optional[UrysonOperator]:
    """The rows in ``band`` as an operator into Q^|band|; None for the empty band."""
    rows = [T.entries[i - 1] for i in band]
    if not rows:
        return None
    return UrysonOperator(T.n, len(rows), rows)


def band_phi1_identity_check(T: UrysonOperator, band: IndexSet) -> bool:
    proj = restrict_to_band(T, band)
    rest = restrict_to_band(T, band.complement())
    sub = band_component(T, band)
    checks = [
        # projection is idempotent and lands in U(E, H)
        restrict_to_band(proj, band) == proj,
        # Phi_1(U(E,H)) = Phi_1(U(E,F)) n U(E,H): finite in the band iff finite in F
        sub is None or is_finite_structural(sub) == is_finite_structural(proj),
        # projections of finite elements are finite, and they are fixed by the projection
        not is_finite_structural(T) or is_finite_structural(proj),
        # complementary bands split Phi_1 as a direct sum
        is_finite_structural(T) == (is_finite_structural(proj) and is_finite_structural(rest)),
        proj + rest == T,
    ]
    return all(checks)


@dataclass(frozen=True)
class AtomEvidence:
    index: int  # 1-based coordinate
    points: tuple  # sample points where phi_1j does not vanish
    tail: Optional[TailRule]

    @property
    def finite(self) -> bool:
        return self.tail is None


def atom_support(phi: UrysonOperator) -> list[AtomEvidence]:
    """Coordinates ``j`` whose atoms ``r e_j`` see a nonzero ``phi``, with the evidence."""
    if phi.m != 1:
        raise PreconditionError("atom_support needs a functional (m = 1)")
    out = []
    for j, f in enumerate(phi.entries[0]):
        if not f.is_zero():
            out.append(AtomEvidence(j + 1, tuple(f.sample_points()), f.tail))
    return out
