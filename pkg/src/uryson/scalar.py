"""Entry functions f: Q -> Q with f(0) = 0, as a sample table plus an optional tail.

The tail describes infinitely many points ``start + k*step`` (``k = 0, 1, ...``)
carrying the values ``poly(k) * ratio**k``. That family is closed under the
shifts, sums and sign-constant absolute values the operator calculus needs,
and asymptotic comparison of two tails reduces to (ratio, degree, lead).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor
from typing import Callable, Iterator, Mapping, Optional, Union

from . import _poly as poly
from . import config
from .errors import CapExceeded, PreconditionError, TailIncompatible


@dataclass(frozen=True)
class TailRule:
    start: Fraction
    step: Fraction
    poly: tuple
    ratio: Fraction

    def __init__(self, start, step, coeffs, ratio=1):
        start, step, ratio = Fraction(start), Fraction(step), Fraction(ratio)
        if step <= 0:
            raise ValueError("tail step must be positive")
        if ratio < 0:
            raise ValueError("tail ratio must be nonnegative")
        object.__setattr__(self, "start", start)
        object.__setattr__(self, "step", step)
        object.__setattr__(self, "poly", poly.normalize(coeffs))
        object.__setattr__(self, "ratio", ratio)
        if self.index_of(Fraction(0)) is not None:
            raise ValueError("0 lies on the tail lattice; f(0) must be 0")

    def point(self, k: int) -> Fraction:
        return self.start + k * self.step

    def index_of(self, r) -> Optional[int]:
        q = (Fraction(r) - self.start) / self.step
        if q.denominator != 1 or q < 0:
            return None
        return int(q)

    def value_at_index(self, k: int) -> Fraction:
        return poly.evaluate(self.poly, k) * self.ratio ** k

    def shifted(self, s: int) -> "TailRule":
        """The same values, re-indexed to start ``s`` points later."""
        if s == 0:
            return self
        return TailRule(self.point(s), self.step,
                        poly.scale(poly.shift(self.poly, s), self.ratio ** s), self.ratio)

    def on_lattice(self, r) -> bool:
        """``r`` is on the two-sided progression through this tail (any integer k)."""
        return ((Fraction(r) - self.start) / self.step).denominator == 1


def _materialize_cap() -> int:
    return config.current().materialize


@dataclass(frozen=True)
class ScalarMap:
    """A function with finitely many sample points and at most one tail."""

    samples: tuple  # sorted ((point, value), ...), values nonzero, no point 0
    tail: Optional[TailRule] = None
    _table: dict = field(default=None, compare=False, hash=False, repr=False)

    def __init__(self, samples: Union[Mapping, tuple, list, None] = None,
                 tail: Optional[TailRule] = None):
        items = dict(samples.items()) if isinstance(samples, Mapping) else dict(samples or ())
        table: dict = {}
        for p, v in items.items():
            p, v = Fraction(p), Fraction(v)
            if p == 0:
                if v != 0:
                    raise ValueError("f(0) must be 0")
                continue
            if v != 0:
                table[p] = v
        if tail is not None and not tail.poly:
            tail = None
        if tail is not None and tail.ratio == 0:
            # only the k = 0 point survives 0**k
            v0 = tail.poly[0] if tail.poly else Fraction(0)
            if tail.start in table:
                raise ValueError(f"sample point {tail.start} lies on the tail")
            if v0 != 0:
                table[tail.start] = v0
            tail = None
        if tail is not None:
            for p in table:
                if tail.index_of(p) is not None:
                    raise ValueError(f"sample point {p} lies on the tail")
        object.__setattr__(self, "samples", tuple(sorted(table.items())))
        object.__setattr__(self, "tail", tail)
        # keyed by (numerator, denominator): hashing a Fraction costs a modular inverse
        object.__setattr__(self, "_table", {(p.numerator, p.denominator): v for p, v in table.items()})

    @classmethod
    def zero(cls) -> "ScalarMap":
        return cls()

    @classmethod
    def _finite(cls, table: dict) -> "ScalarMap":
        """Tail-free map from a table already free of zero values and of the point 0."""
        f = object.__new__(cls)
        object.__setattr__(f, "samples", tuple(sorted(table.items())))
        object.__setattr__(f, "tail", None)
        object.__setattr__(f, "_table", {(p.numerator, p.denominator): v for p, v in table.items()})
        return f

    # -- evaluation -------------------------------------------------------
    def __call__(self, r) -> Fraction:
        if type(r) is not Fraction:
            r = Fraction(r)
        v = self._table.get((r.numerator, r.denominator))
        if v is not None:
            return v
        if self.tail is not None:
            k = self.tail.index_of(r)
            if k is not None:
                return self.tail.value_at_index(k)
        return Fraction(0)

    eval = __call__

    def sample_points(self) -> list:
        return [p for p, _ in self.samples]

    def is_zero(self) -> bool:
        return not self.samples and self.tail is None

    def has_bounded_support(self) -> bool:
        return self.tail is None

    def support_interval(self) -> Optional[tuple]:
        """``(a, b)`` enclosing the support of a tail-free map; None for 0 or a tail."""
        if self.tail is not None or not self.samples:
            return None
        return self.samples[0][0], self.samples[-1][0]

    def points_in(self, a, b) -> Iterator[Fraction]:
        """Sample and tail points inside ``[a, b]``, ascending within each kind."""
        a, b = Fraction(a), Fraction(b)
        for p, _ in self.samples:
            if a <= p <= b:
                yield p
        if self.tail is not None:
            t = self.tail
            lo = max(0, ceil((a - t.start) / t.step))
            hi = floor((b - t.start) / t.step)
            if hi - lo + 1 > _materialize_cap():
                raise CapExceeded(f"{hi - lo + 1} tail points in [{a}, {b}]")
            for k in range(lo, hi + 1):
                yield t.point(k)

    def probe_points(self, tail_prefix: int = 3) -> list:
        pts = self.sample_points()
        if self.tail is not None:
            pts += [self.tail.point(k) for k in range(tail_prefix)]
        return pts

    def is_nonnegative(self) -> bool:
        if any(v < 0 for _, v in self.samples):
            return False
        if self.tail is None:
            return True
        return _tail_sign(self.tail.poly) > 0

    # -- operators ----------------------------------------------------------
    def __add__(self, other: "ScalarMap") -> "ScalarMap":
        return add(self, other)

    def __neg__(self) -> "ScalarMap":
        return scale(self, -1)

    def __sub__(self, other: "ScalarMap") -> "ScalarMap":
        return add(self, scale(other, -1))

    def __mul__(self, lam) -> "ScalarMap":
        return scale(self, lam)

    __rmul__ = __mul__

    def __abs__(self) -> "ScalarMap":
        return abs_map(self)


def _tail_sign(p: tuple) -> int:
    try:
        return poly.sign_on_naturals(p, _materialize_cap())
    except OverflowError as exc:
        raise CapExceeded(str(exc)) from exc


# -- alignment ----------------------------------------------------------------

_TailPart = Optional[tuple]  # (poly, ratio) or None for the zero tail


@dataclass(frozen=True)
class _Aligned:
    points: tuple  # every finite point where either map may be nonzero
    start: Optional[Fraction]  # common tail start, None if neither map has a tail
    step: Optional[Fraction]
    f_tail: _TailPart
    g_tail: _TailPart


def _align(f: ScalarMap, g: ScalarMap, *, min_start=None) -> _Aligned:
    """Put both tails on one progression starting past every sample on it.

    Lattice points before the common start become finite points.
    """
    tails = [t for t in (f.tail, g.tail) if t is not None]
    finite = set(f.sample_points()) | set(g.sample_points())
    if not tails:
        return _Aligned(tuple(sorted(finite)), None, None, None, None)
    step = tails[0].step
    base = min(t.start for t in tails)
    if len(tails) == 2:
        if tails[0].step != tails[1].step or not tails[0].on_lattice(tails[1].start):
            raise TailIncompatible("tails live on different point lattices")
    ref = tails[0]
    start = max(t.start for t in tails)
    for p in finite:
        if p >= base and ref.on_lattice(p) and p + step > start:
            start = p + step
    if min_start is not None and min_start > start:
        start = Fraction(min_start)
    count = (start - base) / step
    if count > _materialize_cap():
        raise CapExceeded(f"aligning tails would materialize {count} points")
    finite |= {base + k * step for k in range(int(count))}

    def part(t: Optional[TailRule]) -> _TailPart:
        if t is None:
            return None
        s = t.shifted(int((start - t.start) / step))
        return s.poly, s.ratio

    return _Aligned(tuple(sorted(finite)), start, step, part(f.tail), part(g.tail))


def _build(points_values: dict, start, step, tail: _TailPart) -> ScalarMap:
    rule = None
    if tail is not None and tail[0]:
        rule = TailRule(start, step, tail[0], tail[1])
    return ScalarMap(points_values, rule)


def _combine(f: ScalarMap, g: ScalarMap, point_op: Callable, tail_op: Callable,
             *, min_start=None) -> ScalarMap:
    if f.tail is None and g.tail is None:
        values = {}
        for p in set(f.sample_points()) | set(g.sample_points()):
            v = point_op(f(p), g(p))
            if v:
                values[p] = v
        return ScalarMap._finite(values)
    al = _align(f, g, min_start=min_start)
    values = {p: point_op(f(p), g(p)) for p in al.points}
    tail = tail_op(al.f_tail, al.g_tail) if al.start is not None else None
    return _build(values, al.start, al.step, tail)


def _tail_add(a: _TailPart, b: _TailPart) -> _TailPart:
    if a is None or b is None:
        return a if b is None else b
    if a[1] != b[1]:
        raise TailIncompatible("adding tails with different ratios has no closed form")
    return poly.add(a[0], b[0]), a[1]


def _tail_compare(a: _TailPart, b: _TailPart) -> int:
    """+1 if tail a >= tail b at every index, -1 if a <= b everywhere."""
    pa, ra = a if a is not None else ((), None)
    pb, rb = b if b is not None else ((), None)
    if ra is None or rb is None or ra == rb:
        s = _tail_sign(poly.add(pa, poly.scale(pb, -1)))
    else:
        sa, sb = _tail_sign(pa), _tail_sign(pb)
        s = 1 if sa > 0 and sb < 0 else -1 if sa < 0 and sb > 0 else 0
        if pa and pb and sa == sb:
            s = 0
    if s == 0:
        raise TailIncompatible("tails cross; min/max has no closed form")
    return s


def _tail_max(a: _TailPart, b: _TailPart) -> _TailPart:
    return a if _tail_compare(a, b) > 0 else b


def _tail_min(a: _TailPart, b: _TailPart) -> _TailPart:
    return b if _tail_compare(a, b) > 0 else a


# -- pointwise algebra ----------------------------------------------------------

def add(f: ScalarMap, g: ScalarMap) -> ScalarMap:
    return _combine(f, g, lambda a, b: a + b, _tail_add)


def scale(f: ScalarMap, lam) -> ScalarMap:
    lam = Fraction(lam)
    if lam == 0:
        return ScalarMap()
    if f.tail is None:
        return ScalarMap._finite({p: lam * v for p, v in f.samples})
    t = f.tail
    tail = TailRule(t.start, t.step, poly.scale(t.poly, lam), t.ratio)
    return ScalarMap({p: lam * v for p, v in f.samples}, tail)


def abs_map(f: ScalarMap) -> ScalarMap:
    if f.tail is None:
        return ScalarMap._finite({p: abs(v) for p, v in f.samples})
    tail = None
    if f.tail is not None:
        t = f.tail
        s = _tail_sign(t.poly)
        if s == 0:
            raise TailIncompatible("abs of a sign-changing tail has no closed form")
        tail = t if s > 0 else TailRule(t.start, t.step, poly.scale(t.poly, -1), t.ratio)
    return ScalarMap({p: abs(v) for p, v in f.samples}, tail)


def maximum(f: ScalarMap, g: ScalarMap) -> ScalarMap:
    return _combine(f, g, max, _tail_max)


def minimum(f: ScalarMap, g: ScalarMap) -> ScalarMap:
    return _combine(f, g, min, _tail_min)


def positive_part(f: ScalarMap) -> ScalarMap:
    return maximum(f, ScalarMap())


def negative_part(f: ScalarMap) -> ScalarMap:
    return maximum(scale(f, -1), ScalarMap())


def pointwise(kind: str, f: ScalarMap, g: Optional[ScalarMap] = None, lam=None) -> ScalarMap:
    """Dispatch on ``kind`` in add | scale | abs | min | max."""
    if kind == "add":
        return add(f, g)
    if kind == "scale":
        return scale(f, lam)
    if kind == "abs":
        return abs_map(f)
    if kind == "min":
        return minimum(f, g)
    if kind == "max":
        return maximum(f, g)
    raise ValueError(f"unknown pointwise kind {kind!r}")


def restrict_to_support(f: ScalarMap, g: ScalarMap) -> ScalarMap:
    """``f`` on ``supp(g)``, zero elsewhere."""
    min_start = None
    if f.tail is not None and g.tail is not None:
        # the restricted tail must skip the integer roots of g's tail polynomial
        try:
            roots = poly.integer_roots(g.tail.poly, _materialize_cap())
        except OverflowError as exc:
            raise CapExceeded(str(exc)) from exc
        if roots:
            min_start = g.tail.point(roots[-1] + 1)

    def tail_op(a: _TailPart, b: _TailPart) -> _TailPart:
        return a if b is not None else None

    return _combine(f, g, lambda a, b: a if b != 0 else Fraction(0), tail_op,
                    min_start=min_start)


def indicator_of_support(f: ScalarMap) -> ScalarMap:
    """Value 1 at every sample point of ``f``; the tail is not covered."""
    return ScalarMap({p: 1 for p, _ in f.samples})


def sup_abs_on_interval(f: ScalarMap, a, b) -> Fraction:
    a, b = Fraction(a), Fraction(b)
    if a > b:
        raise PreconditionError("empty interval")
    return max((abs(f(p)) for p in f.points_in(a, b)), default=Fraction(0))


# -- dominance ------------------------------------------------------------------

@dataclass(frozen=True)
class Bounded:
    """``|f| <= constant * z`` everywhere.

    ``c`` is the exact maximum of ``|f|/z`` over every evaluated point; when a
    tail is involved, ``tail_bound`` certifies the ratio on unevaluated tail
    points from index ``threshold`` of the aligned tail onward.
    """

    c: Fraction
    tail_bound: Optional[Fraction] = None
    threshold: Optional[Fraction] = None

    @property
    def constant(self) -> Fraction:
        if self.tail_bound is None:
            return self.c
        return max(self.c, self.tail_bound)

    @property
    def exact(self) -> bool:
        return self.tail_bound is None


@dataclass(frozen=True)
class Unbounded:
    """No constant works; ``witnesses()`` yields r_k with ``|f|(r_k) > k*z(r_k)``."""

    first: Fraction
    _stream: Callable = field(compare=False, repr=False)

    def witnesses(self) -> Iterator[Fraction]:
        return self._stream()


def _smallest_decreasing_index(d: int, rho: Fraction, cap: int) -> int:
    """Least k >= 1 with ((k+1)/k)**d * rho <= 1; k**d * rho**k decreases from there."""
    def ok(k: int) -> bool:
        return Fraction(k + 1, k) ** d * rho <= 1

    hi = 1
    while not ok(hi):
        hi *= 2
        if hi > 4 * cap:
            raise CapExceeded("tail comparison threshold too large")
    lo = max(1, hi // 2)
    while lo < hi:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def dominance(f: ScalarMap, z: ScalarMap) -> Union[Bounded, Unbounded]:
    """Decide whether ``sup |f|/z`` is finite (0/0 = 0, positive/0 = infinity)."""
    if not z.is_nonnegative():
        raise PreconditionError("dominance needs z >= 0")
    al = _align(f, z)
    ratios = []
    for p in al.points:
        fa, zv = abs(f(p)), z(p)
        if fa == 0:
            continue
        if zv == 0:
            return _unbounded_from(f, z, al, first=p)
        ratios.append(fa / zv)
    c = max(ratios, default=Fraction(0))
    if al.f_tail is None:
        return Bounded(c)
    if al.g_tail is None:
        return _unbounded_from(f, z, al)

    P, r1 = al.f_tail
    Q, r2 = al.g_tail
    cap = _materialize_cap()
    p_deg, q_deg = poly.degree(P), poly.degree(Q)
    if r1 > r2 or (r1 == r2 and p_deg > q_deg):
        return _unbounded_from(f, z, al)
    if Q[-1] <= 0:
        raise PreconditionError("majorant tail is eventually negative")
    lead = Q[-1]
    k_q = max(1, ceil(2 * sum(abs(c_) for c_ in Q[:-1]) / lead))
    rho = r1 / r2
    k_d = _smallest_decreasing_index(p_deg - q_deg, rho, cap) if p_deg > q_deg else 1
    threshold = max(k_q, k_d)
    if threshold > cap:
        raise CapExceeded(f"dominance would evaluate {threshold} tail points")
    for k in range(threshold):
        fa = abs(poly.evaluate(P, k)) * r1 ** k
        zv = poly.evaluate(Q, k) * r2 ** k
        if fa == 0:
            continue
        if zv == 0:
            return _unbounded_from(f, z, al, first=al.start + k * al.step)
        ratios.append(fa / zv)
    c = max(ratios, default=Fraction(0))
    # for k >= threshold: Q(k) >= lead/2 * k**q and |P(k)| <= sum|p| * k**p
    bound = 2 * sum(abs(c_) for c_ in P) / lead * Fraction(threshold) ** (p_deg - q_deg) \
        * rho ** threshold
    return Bounded(c, bound, al.start + threshold * al.step)


def _unbounded_from(f: ScalarMap, z: ScalarMap, al: _Aligned, first=None) -> Unbounded:
    def stream() -> Iterator[Fraction]:
        candidates = list(al.points)
        k = 1
        pos = 0
        idx = 0
        while True:
            if pos < len(candidates):
                r = candidates[pos]
            elif al.start is not None:
                r = al.start + idx * al.step
            else:
                return
            if abs(f(r)) > k * z(r):
                yield r
                k += 1
                continue  # the same point may serve several k
            if pos < len(candidates):
                pos += 1
            else:
                idx += 1

    if first is None:
        first = next(stream())
    return Unbounded(first, stream)
