"""Exact univariate polynomial arithmetic over the integers and rationals.

A polynomial is a tuple of coefficients, constant term first; the zero
polynomial is the empty tuple.  Integer polynomials use ``int`` entries,
rational ones use :class:`fractions.Fraction`.  Everything here is exact;
nothing ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd

Poly = tuple


def strip(coeffs) -> Poly:
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def degree(p: Poly) -> int:
    """Degree of ``p``; the zero polynomial has degree -1."""
    return len(p) - 1


def leading(p: Poly):
    return p[-1] if p else 0


def add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return strip(
        (p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)
    )


def neg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, neg(q))


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return strip(out)


def scale(p: Poly, c) -> Poly:
    if c == 0:
        return ()
    return tuple(a * c for a in p)


def derivative(p: Poly) -> Poly:
    return strip(i * p[i] for i in range(1, len(p)))


def eval_at(p: Poly, x):
    """Evaluate by Horner's scheme; exact for Fraction/int arguments."""
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def divmod_frac(p: Poly, d: Poly) -> tuple[Poly, Poly]:
    """Quotient and remainder of ``p`` by ``d`` over the rationals."""
    if not d:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(c) for c in p]
    quo = [Fraction(0)] * max(len(p) - len(d) + 1, 1)
    dlc = Fraction(d[-1])
    while len(rem) >= len(d) and any(rem):
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) < len(d):
            break
        shift = len(rem) - len(d)
        factor = rem[-1] / dlc
        quo[shift] = factor
        for i, c in enumerate(d):
            rem[shift + i] -= factor * Fraction(c)
        rem.pop()
    return strip(quo), strip(rem)


def rem_frac(p: Poly, d: Poly) -> Poly:
    return divmod_frac(p, d)[1]


def divides(d: Poly, p: Poly) -> bool:
    """True iff ``d`` divides ``p`` over the rationals (zero divides zero)."""
    if not p:
        return True
    if not d:
        return False
    return not rem_frac(p, d)


def exact_quotient(p: Poly, d: Poly) -> Poly | None:
    """``p / d`` over the rationals, or None when the division is inexact."""
    q, r = divmod_frac(p, d)
    return None if r else q


def content(p: Poly) -> int:
    g = 0
    for c in p:
        g = _int_gcd(g, abs(c))
    return g


def primitive(p: Poly) -> Poly:
    """Primitive integer part with positive leading coefficient."""
    if not p:
        return ()
    dens = 1
    for c in p:
        if isinstance(c, Fraction):
            dens = dens * c.denominator // _int_gcd(dens, c.denominator)
    ints = [int(c * dens) for c in p]
    g = 0
    for c in ints:
        g = _int_gcd(g, abs(c))
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return tuple(ints)


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Primitive integer gcd, computed by the Euclidean algorithm over Q."""
    a, b = p, q
    while b:
        a, b = b, rem_frac(a, b)
    if not a:
        return ()
    return primitive(a)


def is_squarefree(p: Poly) -> bool:
    if degree(p) < 1:
        return bool(p)
    return degree(poly_gcd(p, derivative(p))) == 0


def squarefree_part(p: Poly) -> Poly:
    if degree(p) < 1:
        return p
    g = poly_gcd(p, derivative(p))
    if degree(g) == 0:
        return p
    return primitive(exact_quotient(p, g))


def sturm_chain(p: Poly) -> list[Poly]:
    chain = [tuple(Fraction(c) for c in p), tuple(Fraction(c) for c in derivative(p))]
    while chain[-1]:
        r = rem_frac(chain[-2], chain[-1])
        chain.append(neg(r))
    chain.pop()
    return chain


def sign_variations(values) -> int:
    signs = [(-1 if v < 0 else 1) for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(p: Poly, lo: Fraction, hi: Fraction) -> int:
    """Distinct real roots of ``p`` in the half-open interval (lo, hi].

    Callers that need the open interval must ensure ``p(hi) != 0``.
    """
    if degree(p) < 1:
        return 0
    sqf = squarefree_part(p)
    chain = sturm_chain(sqf)
    at_lo = sign_variations(eval_at(f, lo) for f in chain)
    at_hi = sign_variations(eval_at(f, hi) for f in chain)
    return at_lo - at_hi


def interval_eval(p: Poly, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Sound enclosure of ``p`` over [lo, hi] by interval Horner evaluation."""
    acc_lo, acc_hi = Fraction(0), Fraction(0)
    for c in reversed(p):
        prods = (acc_lo * lo, acc_lo * hi, acc_hi * lo, acc_hi * hi)
        acc_lo, acc_hi = min(prods) + c, max(prods) + c
    return acc_lo, acc_hi


def rational_roots(p: Poly) -> list[Fraction]:
    """All rational roots, by the rational-root test."""
    p = strip(p)
    if not p:
        return []
    shift = 0
    while p and p[0] == 0:
        p = p[1:]
        shift += 1
    roots = set()
    if shift:
        roots.add(Fraction(0))
    if degree(p) >= 1:
        a0, an = abs(p[0]), abs(p[-1])
        num_divs = [d for d in range(1, a0 + 1) if a0 % d == 0]
        den_divs = [d for d in range(1, an + 1) if an % d == 0]
        for n in num_divs:
            for d in den_divs:
                for cand in (Fraction(n, d), Fraction(-n, d)):
                    if eval_at(p, cand) == 0:
                        roots.add(cand)
    return sorted(roots)


def simplest_between(a: Fraction, b: Fraction) -> Fraction:
    """Smallest-denominator rational in the closed interval [a, b]."""
    if a > b:
        raise ValueError("empty interval")
    if a == b:
        return a
    if a <= 0 <= b:
        return Fraction(0)
    if a < 0:
        return -simplest_between(-b, -a)
    if a.denominator == 1:
        return a
    fa = a.numerator // a.denominator
    if fa + 1 <= b:
        return Fraction(fa + 1)
    return fa + 1 / simplest_between(1 / (b - fa), 1 / (a - fa))


def simplest_at_most(hi: Fraction) -> Fraction:
    """Smallest-denominator rational q with 0 < q <= hi."""
    if hi <= 0:
        raise ValueError("needs a positive bound")
    if hi >= 1:
        return Fraction(1)
    inv = 1 / hi
    ceil_inv = -((-inv.numerator) // inv.denominator)
    return Fraction(1, ceil_inv)


def ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def poly_str(p: Poly, var: str = "x") -> str:
    if not p:
        return "0"
    pieces = []
    for e in range(len(p) - 1, -1, -1):
        c = p[e]
        if c == 0:
            continue
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            base = var if e == 1 else f"{var}^{e}"
            body = base if mag == 1 else f"{mag}*{base}"
        if not pieces:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(pieces)
