"""Seeded invariant suites. Every check compares two independent computations exactly.

Each ``check_*`` function draws its cases from ``random.Random(seed)`` and
returns a :class:`CheckResult`; :func:`run_suite` groups them the way the
command line exposes them.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, Optional

from gmpy2 import mpq

from . import extension as ext
from . import finite, integral
from .lattice import (Element, IndexSet, Partition, finest_partition, fragments, is_disjoint,
                      partitions, restrict, support)
from .operators import (UrysonOperator, _partition_value, apply, op_abs_parts, op_lattice,
                        rank_one_modulus_check, riesz_abs, riesz_join, riesz_meet, riesz_neg,
                        riesz_pos)
from .scalar import ScalarMap, TailRule

F = Fraction
POINTS = (F(1), F(-1), F(2), F(-2), F(1, 2), F(-1, 2))
RATIOS = (F(1, 2), F(1), F(2))
STARTS = (F(5, 2), F(3), F(7, 2), F(4))
STEPS = (F(1, 2), F(1), F(2))


# -- results ----------------------------------------------------------------------

@dataclass
class CheckResult:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, inputs, expected, got) -> None:
        if len(self.failures) < 20:  # keep reports readable
            self.failures.append({"inputs": str(inputs), "expected": str(expected), "got": str(got)})
        else:
            self.failures.append(None)


@dataclass
class SuiteReport:
    suite: str
    seed: int
    checks: list
    elapsed: float

    @property
    def cases(self) -> int:
        return sum(c.cases for c in self.checks)

    @property
    def failures(self) -> list:
        return [f for c in self.checks for f in c.failures]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "suite": self.suite, "seed": self.seed, "cases": self.cases,
            "failures": len(self.failures), "elapsed": round(self.elapsed, 3),
            "checks": [{"name": c.name, "cases": c.cases, "failures": len(c.failures),
                        "examples": [f for f in c.failures if f is not None]} for c in self.checks],
        }


def _timed(name: str):
    def deco(fn: Callable[..., CheckResult]):
        def run(*args, **kwargs) -> CheckResult:
            t0 = time.perf_counter()
            res = fn(CheckResult(name), *args, **kwargs)
            res.elapsed = time.perf_counter() - t0
            return res
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        run.check_name = name
        return run
    return deco


# -- generators -------------------------------------------------------------------

def rand_value(rng: random.Random, bound: int = 10) -> Fraction:
    """A rational in ``[-bound, bound]`` with denominator at most 4."""
    d = rng.randint(1, 4)
    return F(rng.randint(-bound * d, bound * d), d)


def rand_finite_map(rng: random.Random, density: float = 0.5, positive: bool = False,
                    points=POINTS) -> ScalarMap:
    samples = {}
    for p in points:
        if rng.random() < density:
            v = rand_value(rng)
            samples[p] = abs(v) if positive else v
    return ScalarMap(samples)


def rand_poly(rng: random.Random, degree: int = 2, sign_constant: bool = False,
              positive: bool = False) -> tuple:
    d = rng.randint(0, degree)
    while True:
        if sign_constant or positive:
            coeffs = [F(rng.randint(0, 5), rng.randint(1, 3)) for _ in range(d + 1)]
        else:
            coeffs = [F(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(d + 1)]
        if any(coeffs):
            break
    if sign_constant and not positive and rng.random() < 0.5:
        coeffs = [-c for c in coeffs]
    return tuple(coeffs)


def rand_tail(rng: random.Random, degree: int = 2, sign_constant: bool = False,
              positive: bool = False) -> TailRule:
    return TailRule(rng.choice(STARTS), rng.choice(STEPS),
                    rand_poly(rng, degree, sign_constant, positive), rng.choice(RATIOS))


def rand_map(rng: random.Random, tail_prob: float = 0.3, positive: bool = False,
             sign_constant: bool = False) -> ScalarMap:
    f = rand_finite_map(rng, positive=positive)
    if rng.random() < tail_prob:
        return ScalarMap(f.samples, rand_tail(rng, sign_constant=sign_constant or positive,
                                              positive=positive))
    return f


def rand_operator(rng: random.Random, n: int, m: int, entry: Callable[[], ScalarMap]) -> UrysonOperator:
    return UrysonOperator(n, m, [[entry() for _ in range(n)] for _ in range(m)])


def rand_point(rng: random.Random, n: int, values=(F(0),) + POINTS) -> Element:
    return Element(rng.choice(values) for _ in range(n))


def rand_finite_operator(rng: random.Random, n: int, m: int, positive: bool = False,
                         density: float = 0.5) -> UrysonOperator:
    return rand_operator(rng, n, m, lambda: rand_finite_map(rng, density, positive))


def _memo(fn: Callable[[Element], Element]) -> Callable[[Element], Element]:
    cache: dict = {}

    def ev(y: Element) -> Element:
        v = cache.get(y)
        if v is None:
            v = cache[y] = fn(y)
        return v
    return ev


def _lattice_cases(seed: int, pairs: int, probes: int):
    rng = random.Random(seed)
    for _ in range(pairs):
        n, m = rng.randint(1, 5), rng.randint(1, 3)
        T, S = rand_finite_operator(rng, n, m), rand_finite_operator(rng, n, m)
        yield T, S, [rand_point(rng, n) for _ in range(probes)]


# -- lattice suite ----------------------------------------------------------------

@_timed("three-way lattice agreement")
def check_lattice_agreement(res: CheckResult, seed: int = 0, pairs: int = 1000,
                            probes: int = 10) -> CheckResult:
    """Entrywise closed forms = decomposition sup/inf = finest-partition value."""
    for T, S, xs in _lattice_cases(seed, pairs, probes):
        closed = {"join": op_lattice(T, S, "join"), "meet": op_lattice(T, S, "meet")}
        closed["abs"], closed["pos"], closed["neg"] = op_abs_parts(T)
        for x in xs:
            tev, sev = _memo(T), _memo(S)
            oracle = {"join": riesz_join(tev, sev, x), "meet": riesz_meet(tev, sev, x),
                      "abs": riesz_abs(tev, x), "pos": riesz_pos(tev, x), "neg": riesz_neg(tev, x)}
            fin = finest_partition(x)
            finest = {k: _partition_value(tev, sev, k, fin) for k in ("join", "meet", "abs")}
            for kind, op in closed.items():
                res.cases += 1
                want = apply(op, x)
                got = (oracle[kind],) + ((finest[kind],) if kind in finest else ())
                if any(g != want for g in got):
                    res.fail((kind, x), want, got)
    return res


@_timed("|T(x)| <= |T|(x)")
def check_modulus_dominates(res: CheckResult, seed: int = 0, pairs: int = 1000,
                            probes: int = 10) -> CheckResult:
    for T, S, xs in _lattice_cases(seed, pairs, probes):
        absT = op_abs_parts(T)[0]
        for U, absU in ((T, absT), (S, op_abs_parts(S)[0])):
            for x in xs:
                res.cases += 1
                lhs, rhs = abs(apply(U, x)), apply(absU, x)
                if not lhs.le(rhs):
                    res.fail(x, f"<= {rhs}", lhs)
    return res


def _single_splits(p: Partition) -> Iterable[Partition]:
    """Partitions obtained by cutting one block of ``p`` into two nonzero pieces."""
    for bi, block in enumerate(p.blocks):
        idx = [j - 1 for j in support(block)]
        head, rest = idx[0], idx[1:]
        for mask in range(2 ** len(rest) - 1):  # the all-ones mask keeps the block whole
            left = [head] + [j for b, j in enumerate(rest) if mask >> b & 1]
            right = [j for j in idx if j not in left]
            others = p.blocks[:bi] + p.blocks[bi + 1:]
            yield Partition(p.parent, others + (restrict(block, left), restrict(block, right)))


@_timed("refinement monotonicity")
def check_refinement_monotone(res: CheckResult, seed: int = 0, cases: int = 30) -> CheckResult:
    """Every one-block split moves the partition value the right way; the finest is extremal."""
    rng = random.Random(seed)
    nonzero = POINTS
    for c in range(cases):
        size = 1 + c % 6
        n, m = rng.randint(size, 6), rng.randint(1, 3)
        T, S = rand_finite_operator(rng, n, m), rand_finite_operator(rng, n, m)
        idx = rng.sample(range(n), size)
        x = Element(rng.choice(nonzero) if j in idx else 0 for j in range(n))
        tev, sev = _memo(T), _memo(S)
        parts = partitions(x)
        for kind in ("join", "meet", "abs"):
            up = kind != "meet"  # join and abs grow under refinement, meet shrinks
            values = {frozenset(p.blocks): _partition_value(tev, sev, kind, p) for p in parts}
            for p in parts:
                for q in _single_splits(p):
                    res.cases += 1
                    vp, vq = values[frozenset(p.blocks)], values[frozenset(q.blocks)]
                    if not (vp.le(vq) if up else vq.le(vp)):
                        res.fail((kind, x, p.blocks, q.blocks), "monotone", (vp, vq))
            finest = values[frozenset(parts[-1].blocks)]
            res.cases += 1
            if any(not (v.le(finest) if up else finest.le(v)) for v in values.values()):
                res.fail((kind, x), "extremum at the finest partition", finest)
    return res


@_timed("rank-one modulus")
def check_rank_one_modulus(res: CheckResult, seed: int = 0, cases: int = 500,
                           probes: int = 10) -> CheckResult:
    rng = random.Random(seed)
    for _ in range(cases):
        n, m = rng.randint(1, 5), rng.randint(1, 3)
        phi = rand_operator(rng, n, 1, lambda: rand_map(rng, sign_constant=True))
        u = Element(rand_value(rng) for _ in range(m))
        xs = []
        for _ in range(probes):
            x = rand_point(rng, n)
            xs.append(x)
        if phi.has_tails() and rng.random() < 0.5:
            # include a tail point so the evaluation really reaches the tail
            j = next(j for j, f in enumerate(phi.entries[0]) if f.tail is not None)
            xs[0] = Element.unit(n, j, phi.entries[0][j].tail.point(1))
        res.cases += 1
        if not rank_one_modulus_check(phi, u, xs):
            res.fail((phi, u), "|phi (x) u| = |phi| (x) |u|", "mismatch")
    return res


# -- finite suite -------------------------------------------------------------------

def _gmp(op: UrysonOperator, y: Element) -> tuple:
    return tuple(mpq(v.numerator, v.denominator) for v in apply(op, y))


def _meet_value(S: UrysonOperator, T: UrysonOperator, n: int, x: Element) -> tuple:
    """``(|S| ^ n|T|)(x)`` straight from the decomposition formulas.

    Runs in GMP rationals: at large locator constants the values have millions
    of digits and the quadratic gcd behind ``Fraction`` would dominate.
    """
    frs = fragments(x)
    s_vals = {y: _gmp(S, y) for y in frs}
    t_vals = {y: _gmp(T, y) for y in frs}

    def modulus(vals: dict, y: Element) -> tuple:
        diffs = [tuple(a - b for a, b in zip(vals[u], vals[y - u])) for u in fragments(y)]
        return tuple(max(c) for c in zip(*diffs))

    sums = []
    for y in frs:
        s_abs, t_abs = modulus(s_vals, y), modulus(t_vals, x - y)
        sums.append(tuple(a + n * b for a, b in zip(s_abs, t_abs)))
    return tuple(min(c) for c in zip(*sums))


@_timed("majorant soundness")
def check_majorant_soundness(res: CheckResult, seed: int = 0, cases: int = 200,
                             probes: int = 100, oracle_probes: int = 3) -> CheckResult:
    """Synthesized indicator majorants pass with the box constant; spot-checked by oracle."""
    rng = random.Random(seed)
    for _ in range(cases):
        n, m = rng.randint(1, 4), rng.randint(1, 3)
        T = rand_finite_operator(rng, n, m)
        Ss = [rand_finite_operator(rng, n, m) for _ in range(probes)]
        cert = finite.synthesize_majorant(T, Ss)
        res.cases += 1
        if not finite.is_finite_structural(cert.majorant):
            res.fail(T, "structurally finite majorant", cert.majorant)
        checked = finite.check_majorant(T, cert.majorant, Ss)
        if isinstance(checked, finite.MajorantFailure):
            res.fail(T, "certificate", checked)
            continue
        for (S, c), (_, least) in zip(cert.probes, checked.probes):
            res.cases += 1
            if least > c:
                res.fail(S, f">= {least}", c)
        for S, c in cert.probes[:oracle_probes]:
            for x in [rand_point(rng, n) for _ in range(3)]:
                z = tuple(c * v for v in _gmp(cert.majorant, x))
                for k in (1, 2, 10, 1000):
                    res.cases += 1
                    v = _meet_value(S, T, k, x)
                    if any(a > b for a, b in zip(v, z)):
                        res.fail((T, S, x, k), f"<= {z}", v)
    return res


def _positive_candidate(rng: random.Random, n: int, m: int, T: UrysonOperator) -> UrysonOperator:
    kind = rng.random()
    if kind < 0.1:
        return UrysonOperator.zero(n, m)
    if kind < 0.2:
        return op_abs_parts(T)[0] if _abs_ok(T) else T.map_entries(
            lambda f: ScalarMap({p: 1 for p in f.sample_points()}))
    return rand_operator(rng, n, m, lambda: rand_map(rng, tail_prob=0.6, positive=True))


def _abs_ok(T: UrysonOperator) -> bool:
    try:
        op_abs_parts(T)
        return True
    except Exception:
        return False


@_timed("refutation completeness")
def check_refutation(res: CheckResult, seed: int = 0, cases: int = 100,
                     candidates: int = 20, constants=(1, 10, 10 ** 3, 10 ** 6)) -> CheckResult:
    """Every candidate majorant of a tailed operator is beaten at each constant."""
    rng = random.Random(seed)
    for _ in range(cases):
        n, m = rng.randint(1, 3), rng.randint(1, 2)
        T = rand_operator(rng, n, m, lambda: rand_map(rng, tail_prob=0.3))
        i0, j0 = rng.randrange(m), rng.randrange(n)
        row = list(T.entries[i0])
        row[j0] = ScalarMap(row[j0].samples, rand_tail(rng))
        T = UrysonOperator(n, m, [row if i == i0 else r for i, r in enumerate(T.entries)])
        for _ in range(candidates):
            Z = _positive_candidate(rng, n, m, T)
            w = finite.refute_majorant(T, Z)
            i, _j = w.entry
            for c in constants:
                res.cases += 1
                k, x = w.locate(c)
                lhs = _meet_value(w.probe, T, k, x)[i]
                rhs = c * _gmp(Z, x)[i]
                if not lhs > rhs:
                    res.fail((T, Z, c), f"> {rhs}", lhs)
    return res


def _entry_pool() -> list:
    """Entry maps covering: zero, finite, tails with or without roots, decaying, collapsing."""
    return [
        ScalarMap(),
        ScalarMap({1: 3}),
        ScalarMap({F(-1, 2): -2, 2: 5}),
        ScalarMap(tail=TailRule(3, 1, (1,))),
        ScalarMap({1: 1}, TailRule(F(5, 2), F(1, 2), (-2, 1), 2)),  # root at k = 2
        ScalarMap(tail=TailRule(4, 2, (0, 0, 1), F(1, 2))),  # vanishes at k = 0 only
        ScalarMap(tail=TailRule(3, 1, (7,), 0)),  # ratio 0 collapses to one sample
        ScalarMap({-2: 1}, TailRule(F(7, 2), 1, (-1, 1, -1), 1)),
        ScalarMap(tail=TailRule(3, 1, (0,))),  # zero polynomial drops the tail
        ScalarMap({F(1, 2): F(-3, 4)}),
    ]


def _support_unbounded(f: ScalarMap) -> bool:
    """Independent test: nonzero values keep appearing far out on the tail lattice."""
    if f.tail is None:
        return False
    t = f.tail
    hits = [k for k in range(200, 220) if f(t.point(k)) != 0]
    return len(hits) >= 18  # a polynomial of degree <= 2 has at most two roots


@_timed("entrywise finiteness")
def check_entrywise_finiteness(res: CheckResult, seed: int = 0, cases: Optional[int] = None) -> CheckResult:
    """Exhaustive over 2x2 operators with entries from a 10-map pool (10^4 operators)."""
    pool = _entry_pool()
    combos = list(product(range(len(pool)), repeat=4))
    if cases is not None:
        random.Random(seed).shuffle(combos)
        combos = combos[:cases]
    for combo in combos:
        T = UrysonOperator(2, 2, [[pool[combo[0]], pool[combo[1]]], [pool[combo[2]], pool[combo[3]]]])
        res.cases += 1
        want = all(not _support_unbounded(f) for row in T.entries for f in row)
        if finite.is_finite_structural(T) != want:
            res.fail(combo, want, not want)
    return res


@_timed("band identities")
def check_band_identities(res: CheckResult, seed: int = 0, cases: int = 500) -> CheckResult:
    rng = random.Random(seed)
    for _ in range(cases):
        n, m = rng.randint(1, 4), rng.randint(1, 4)
        T = rand_operator(rng, n, m, lambda: rand_map(rng, tail_prob=0.15))
        band = IndexSet(m, [i for i in range(1, m + 1) if rng.random() < 0.5])
        res.cases += 1
        if not finite.band_phi1_identity_check(T, band):
            res.fail((T, band), True, False)
        # an operator living in the band: finite in the sub-lattice iff in the full one
        inside = finite.restrict_to_band(T, band)
        sub = finite.band_component(inside, band)
        res.cases += 1
        if sub is not None:
            full_finite = all(not _support_unbounded(f) for row in inside.entries for f in row)
            if finite.is_finite_structural(sub) != full_finite:
                res.fail((T, band), full_finite, not full_finite)
        if finite.is_finite_structural(T):
            res.cases += 1
            if not finite.is_finite_structural(inside):
                res.fail((T, band), "finite projection", inside)
    return res


@_timed("atom support")
def check_atom_support(res: CheckResult, seed: int = 0, cases: Optional[int] = None) -> CheckResult:
    """Exhaustive over functionals on Q^k, k <= 8, with entries from a 3-map pool."""
    pool = [ScalarMap(), ScalarMap({1: 1}), ScalarMap({-2: 3, F(1, 2): -1})]
    grid_r = sorted({F(0)} | {p for f in pool for p in f.sample_points()} | {F(5)})
    combos = [c for k in range(1, 9) for c in product(range(len(pool)), repeat=k)]
    if cases is not None:
        random.Random(seed).shuffle(combos)
        combos = combos[:cases]
    for combo in combos:
        k = len(combo)
        phi = UrysonOperator(k, 1, [[pool[c] for c in combo]])
        res.cases += 1
        evidence = finite.atom_support(phi)
        listed = {e.index for e in evidence}
        seen = {j + 1 for j in range(k) if any(apply(phi, Element.unit(k, j, r))[0] != 0
                                                for r in grid_r)}
        if listed != seen:
            res.fail(combo, sorted(seen), sorted(listed))
        for e in evidence:
            ok = e.finite and e.points and all(
                apply(phi, Element.unit(k, e.index - 1, r))[0] != 0 for r in e.points)
            if not ok:
                res.fail((combo, e.index), "finite nonvanishing evidence", e)
    return res


# -- extension suite ------------------------------------------------------------------

def _rand_descriptor(rng: random.Random, n: int) -> ext.LateralIdeal:
    coords = list(range(n))
    rng.shuffle(coords)
    size = rng.randint(1, min(n, 8))
    chosen = coords[:size]
    w = Element(rng.choice(POINTS) if j in chosen else 0 for j in range(n))
    if size >= 2 and rng.random() < 0.5:
        cut = rng.randint(1, size - 1)
        left = restrict(w, chosen[:cut])
        right = restrict(w, chosen[cut:])
        return ext.disjoint_union_ideal([ext.FragmentsOf(left), ext.FragmentsOf(right)])
    return ext.FragmentsOf(w)


@_timed("minimal extension")
def check_extension(res: CheckResult, seed: int = 0, cases: int = 100) -> CheckResult:
    """Agreement on D, minimality against constructed extensions, lateral-ideal axioms."""
    rng = random.Random(seed)
    for _ in range(cases):
        n, m = rng.randint(1, 8), rng.randint(1, 2)
        D = _rand_descriptor(rng, n)
        base = rand_finite_operator(rng, n, m, positive=True, density=0.7)
        members = ext.ideal_members(D)
        T = ext.PartialOperator(D, {y: apply(base, y) for y in members})
        for y in members:
            res.cases += 1
            if ext.minimal_extension_at(T, y) != T(y):
                res.fail((D, y), T(y), ext.minimal_extension_at(T, y))
        closed = ext.minimal_extension_operator(T)
        top = max(members, key=lambda y: len(support(y)))
        probes = [rand_point(rng, n) for _ in range(10)] + [top]
        for x in probes:
            res.cases += 1
            if apply(closed, x) != ext.minimal_extension_at(T, x):
                res.fail((D, x), ext.minimal_extension_at(T, x), apply(closed, x))
        # a positive extension: the base plus positive mass off the admissible values
        extra = rand_finite_operator(rng, n, m, positive=True)
        rows = []
        for i in range(m):
            row = []
            for j in range(n):
                rule = D.coordinate_rule(j)
                f = extra.entries[i][j]
                if rule is not None and rule != ext.ANY:
                    f = ScalarMap({p: v for p, v in f.samples if p != rule})
                row.append(f)
            rows.append(row)
        R = base + UrysonOperator(n, m, rows)
        res.cases += 1
        if not ext.check_minimality(T, R, probes):
            res.fail((D, R), "minimal <= R", "violated")
        _lateral_axioms(res, D, members)
    return res


def _lateral_axioms(res: CheckResult, D: ext.LateralIdeal, members: list) -> None:
    """Closed under fragments and disjoint sums; membership agrees with enumeration."""
    member_set = set(members)
    for y in members:
        for z in fragments(y):
            res.cases += 1
            if z not in member_set:
                res.fail((D, y), f"fragment {z} in D", False)
    for a in members:
        for b in members:
            if is_disjoint(a, b):
                res.cases += 1
                if a + b not in member_set:
                    res.fail((D, a, b), "disjoint sum in D", False)
    # every element on the value grid {0, w_j, 3}: contained iff enumerated
    values = []
    for j in range(D.dim):
        rule = D.coordinate_rule(j)
        values.append([F(0), F(3)] + ([rule] if rule not in (None, ext.ANY) else []))
    for coords in product(*values):
        x = Element(coords)
        res.cases += 1
        if (x in D) != (x in member_set):
            res.fail((D, x), x in member_set, x in D)


@_timed("atom projection")
def check_atom_projection(res: CheckResult, seed: int = 0, cases: int = 100) -> CheckResult:
    rng = random.Random(seed)
    for _ in range(cases):
        k = rng.randint(1, 8)
        phi = rand_finite_operator(rng, k, 1, positive=True, density=0.3)
        T = rand_finite_operator(rng, k, 1, positive=True, density=0.7)
        for j in range(k):
            e = Element.unit(k, j, 1)
            res.cases += 1
            got = ext.pi_band_projection_at(phi, T, e)
            want = apply(T, e)[0] if apply(phi, e)[0] != 0 else F(0)
            if got != want:
                res.fail((phi, T, j + 1), want, got)
        closed = ext.band_projection_operator(phi, T)
        for x in [rand_point(rng, k) for _ in range(5)]:
            res.cases += 1
            got = ext.pi_band_projection_at(phi, T, x)
            if apply(closed, x)[0] != got:
                res.fail((phi, T, x), apply(closed, x)[0], got)
    return res


# -- bridge suite ---------------------------------------------------------------------

def rand_kernel(rng: random.Random, p: int, q: int, grid: tuple) -> integral.KernelTable:
    A = integral.FiniteMeasureSpace([F(rng.randint(1, 4), rng.randint(1, 3)) for _ in range(p)])
    B = integral.FiniteMeasureSpace([F(rng.randint(1, 4), rng.randint(1, 3)) for _ in range(q)])
    values = {(s, t, r): rand_value(rng) for s in range(p) for t in range(q) for r in grid
              if r != 0 and rng.random() < 0.8}
    return integral.KernelTable(A, B, grid, values)


@_timed("integral bridge")
def check_integral_bridge(res: CheckResult, seed: int = 0, cases: Optional[int] = None) -> CheckResult:
    """``apply_integral == apply . build_operator`` and orthogonal additivity, exhaustively."""
    rng = random.Random(seed)
    grids = [(F(0),), (F(0), F(1)), (F(0), F(-1, 2), F(2))]
    sizes = [(p, q, g) for p in range(1, 5) for q in range(1, 5) for g in grids]
    for p, q, grid in sizes[: cases or len(sizes)]:
        K = rand_kernel(rng, p, q, grid)
        T = integral.build_operator(K)
        fs = [Element(c) for c in product(grid, repeat=q)]
        values = {}
        for f in fs:
            res.cases += 1
            direct = integral.apply_integral(K, f)
            values[f] = direct
            if direct != apply(T, f):
                res.fail((K, f), direct, apply(T, f))
        for f in fs:
            for g in fs:
                if is_disjoint(f, g):
                    res.cases += 1
                    if values[f + g] != values[f] + values[g]:
                        res.fail((K, f, g), values[f] + values[g], values[f + g])
        if all(v >= 0 for v in K.values.values()) and not T.is_positive():
            res.fail(K, "positive operator", T)
    return res


# -- suites ---------------------------------------------------------------------------

SUITES = {
    "lattice": (check_lattice_agreement, check_modulus_dominates, check_refinement_monotone,
                check_rank_one_modulus),
    "finite": (check_majorant_soundness, check_refutation, check_entrywise_finiteness,
               check_band_identities, check_atom_support),
    "extension": (check_extension, check_atom_projection),
    "bridge": (check_integral_bridge,),
}

# the leading size argument each check scales with ``--cases``
_SIZE_ARG = {
    check_lattice_agreement: "pairs", check_modulus_dominates: "pairs",
    check_refinement_monotone: "cases", check_rank_one_modulus: "cases",
    check_majorant_soundness: "cases", check_refutation: "cases",
    check_entrywise_finiteness: "cases", check_band_identities: "cases",
    check_atom_support: "cases", check_extension: "cases", check_atom_projection: "cases",
    check_integral_bridge: "cases",
}


def run_suite(suite: str, seed: int = 0, cases: Optional[int] = None) -> SuiteReport:
    if suite == "all":
        checks = [c for name in ("lattice", "finite", "extension", "bridge") for c in SUITES[name]]
    elif suite in SUITES:
        checks = list(SUITES[suite])
    else:
        raise KeyError(suite)
    t0 = time.perf_counter()
    results = []
    for check in checks:
        kwargs = {"seed": seed}
        if cases is not None:
            kwargs[_SIZE_ARG[check]] = cases
        results.append(check(**kwargs))
    return SuiteReport(suite, seed, results, time.perf_counter() - t0)
