"""Exact polynomial helpers over ``Fraction`` coefficients.

A polynomial is a tuple ``(c0, c1, ..., cp)`` meaning ``sum(c_e * k**e)``.
The zero polynomial is the empty tuple.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, floor
from typing import Iterable, Sequence

Poly = tuple  # tuple[Fraction, ...]


def normalize(coeffs: Iterable) -> Poly:
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def degree(p: Poly) -> int:
    return len(p) - 1


def evaluate(p: Poly, k) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * k + c
    return acc


def add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return normalize(
        (p[e] if e < len(p) else 0) + (q[e] if e < len(q) else 0) for e in range(n)
    )


def scale(p: Poly, lam) -> Poly:
    return normalize(c * lam for c in p)


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return normalize(out)


def compose_linear(p: Poly, a, b) -> Poly:
    """Coefficients of ``k -> p(a*k + b)``."""
    out: Poly = ()
    power: Poly = (Fraction(1),)
    lin = normalize((b, a))
    for c in p:
        out = add(out, scale(power, c))
        power = mul(power, lin)
    return out


def shift(p: Poly, s) -> Poly:
    """Coefficients of ``k -> p(k + s)``."""
    s = Fraction(s)
    out = [Fraction(0)] * len(p)
    for e, c in enumerate(p):
        for i in range(e + 1):
            out[i] += c * comb(e, i) * s ** (e - i)
    return normalize(out)


def abs_coeffs(p: Poly) -> Poly:
    """``k -> sum |c_e| k**e``; dominates ``|p(k)|`` for ``k >= 0``."""
    return tuple(abs(c) for c in p)


def root_bound(p: Poly) -> Fraction:
    """Cauchy bound: every real root of ``p`` is smaller than this in modulus."""
    if len(p) <= 1:
        return Fraction(0)
    lead = abs(p[-1])
    return 1 + max(abs(c) / lead for c in p[:-1])


def last_index_where(p: Poly, pred, cap: int) -> int:
    """Largest integer k >= 0 with ``pred(p(k))`` below the root bound, or -1.

    Beyond the Cauchy bound ``p`` has the sign of its lead coefficient, so the
    scan is exhaustive for predicates that fail on that sign.
    """
    bound = floor(root_bound(p))
    if bound > cap:
        raise OverflowError(f"root bound {bound} exceeds scan cap {cap}")
    found = -1
    for k in range(bound + 1):
        if pred(evaluate(p, k)):
            found = k
    return found


def sign_on_naturals(p: Poly, cap: int) -> int:
    """+1 if ``p(k) >= 0`` for every integer ``k >= 0``, -1 if always ``<= 0``, else 0.

    The zero polynomial reports +1.
    """
    if not p:
        return 1
    lead_sign = 1 if p[-1] > 0 else -1
    if lead_sign > 0:
        return 1 if last_index_where(p, lambda v: v < 0, cap) < 0 else 0
    return -1 if last_index_where(p, lambda v: v > 0, cap) < 0 else 0


def integer_roots(p: Poly, cap: int) -> list[int]:
    """Nonnegative integer roots of a nonzero polynomial."""
    bound = floor(root_bound(p))
    if bound > cap:
        raise OverflowError(f"root bound {bound} exceeds scan cap {cap}")
    return [k for k in range(bound + 1) if evaluate(p, k) == 0]


def from_strings(items: Sequence) -> Poly:
    return normalize(Fraction(c) for c in items)
