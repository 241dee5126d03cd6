"""Species of multiplicative ordered difference groups, and the sign oracle.

A species pins down how the automorphism compares with scalar multiples on
positive elements, which is exactly the data needed to decide, for every
linear difference operator L, whether L is everywhere positive, everywhere
zero, or everywhere negative on positive elements.  ``op_sign`` is that
decision; everything downstream (variable elimination, sum classification)
reduces its semantic questions to it.

Supported species:

* ``AlgebraicEq(P, I)``   -- the automorphism is exact multiplication by the
  unique root of P in the interval I.
* ``AlgebraicLt(P, I)``   -- multiplication by that root, perturbed down by an
  infinitesimal.
* ``AlgebraicGt(P, I)``   -- perturbed up by an infinitesimal.
* ``Transcendental(name, intervals)`` -- a multiplier known only through a
  finite nested list of rational intervals; identity is by name.
* ``Infinite()``          -- a multiplier above every rational.

Minimal polynomials are primitive squarefree integer polynomials (constant
term first) with a supplied isolating interval.  Irreducibility is the
caller's responsibility and is only checked best-effort; the consequences
of a reducible witness are confined to refinement-budget errors.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from . import poly as P
from .errors import InsufficientPrecision, InvalidSpecies, NoSeparator, Unresolvable
from .operators import LaurentOperator, op_from_poly
from .report import ValidationReport

REFINE_BUDGET = 256


class Sign(enum.IntEnum):
    NEG = -1
    ZERO = 0
    POS = 1


@dataclass(frozen=True)
class AlgebraicPoint:
    """A real algebraic number: integer polynomial plus isolating interval."""

    poly: tuple
    interval: tuple[Fraction, Fraction]

    def __str__(self) -> str:
        lo, hi = self.interval
        return f"root of {P.poly_str(self.poly)} in ({lo}, {hi})"


def rational_point(q: Fraction) -> AlgebraicPoint:
    q = Fraction(q)
    width = max(abs(q) / 2, Fraction(1))
    return AlgebraicPoint(
        (-q.numerator, q.denominator), (q - width, q + width)
    )


class Species:
    """Base class; see the module docstring for the five kinds."""

    kind: str = "Species"


@dataclass(frozen=True)
class AlgebraicEq(Species):
    minpoly: tuple
    interval: tuple[Fraction, Fraction]
    kind = "AlgebraicEq"


@dataclass(frozen=True)
class AlgebraicLt(Species):
    minpoly: tuple
    interval: tuple[Fraction, Fraction]
    kind = "AlgebraicLt"


@dataclass(frozen=True)
class AlgebraicGt(Species):
    minpoly: tuple
    interval: tuple[Fraction, Fraction]
    kind = "AlgebraicGt"


@dataclass(frozen=True)
class Transcendental(Species):
    name: str
    intervals: tuple[tuple[Fraction, Fraction], ...]
    kind = "Transcendental"


@dataclass(frozen=True)
class Infinite(Species):
    kind = "Infinite"


_ALGEBRAIC = (AlgebraicEq, AlgebraicLt, AlgebraicGt)


def rational_species(q) -> AlgebraicEq:
    """The exact-multiplication species for a positive rational multiplier."""
    q = Fraction(q)
    if q <= 0:
        raise InvalidSpecies("multiplier must be positive")
    pt = rational_point(q)
    lo, hi = pt.interval
    if lo <= 0:
        lo = q / 2
    return AlgebraicEq((-q.numerator, q.denominator), (lo, hi))


# ---------------------------------------------------------------------------
# root interval machinery


def refine_root_interval(p: tuple, lo: Fraction, hi: Fraction):
    """One bisection step preserving the unique root; endpoints stay off
    the roots of ``p``."""
    mid = (lo + hi) / 2
    vm = P.eval_at(p, mid)
    if vm == 0:
        w = (hi - lo) / 4
        return mid - w, mid + w
    if (P.eval_at(p, lo) < 0) != (vm < 0):
        return lo, mid
    return mid, hi


def _sign_at_root(f, minpoly: tuple, lo: Fraction, hi: Fraction) -> Sign:
    """Sign of the polynomial ``f`` at the root isolated by (minpoly, lo, hi).

    Reduces modulo the minimal polynomial first: the remainder is the zero
    polynomial exactly when the value is zero (for an irreducible witness),
    otherwise interval refinement resolves the sign.
    """
    r = P.rem_frac(f, minpoly)
    if not r:
        return Sign.ZERO
    for _ in range(REFINE_BUDGET):
        vlo, vhi = P.interval_eval(r, lo, hi)
        if vlo > 0:
            return Sign.POS
        if vhi < 0:
            return Sign.NEG
        lo, hi = refine_root_interval(minpoly, lo, hi)
    raise InsufficientPrecision(
        "sign did not resolve; is the minimal polynomial irreducible?"
    )


def _point_sign(pt: AlgebraicPoint, f) -> Sign:
    return _sign_at_root(f, pt.poly, *pt.interval)


def points_equal(a: AlgebraicPoint, b: AlgebraicPoint) -> bool:
    """Root identity: the two isolated roots are the same real number."""
    g = P.poly_gcd(a.poly, b.poly)
    if P.degree(g) < 1:
        return False
    lo = max(a.interval[0], b.interval[0])
    hi = min(a.interval[1], b.interval[1])
    if lo >= hi:
        return False
    return P.count_roots(g, lo, hi) >= 1


def compare_points(a: AlgebraicPoint, b: AlgebraicPoint) -> Sign:
    """Sign of (root of a) - (root of b)."""
    if points_equal(a, b):
        return Sign.ZERO
    alo, ahi = a.interval
    blo, bhi = b.interval
    for _ in range(REFINE_BUDGET):
        if ahi <= blo:
            return Sign.NEG
        if bhi <= alo:
            return Sign.POS
        alo, ahi = refine_root_interval(a.poly, alo, ahi)
        blo, bhi = refine_root_interval(b.poly, blo, bhi)
    raise InsufficientPrecision("could not order two algebraic points")


def refine_disjoint(points: list[AlgebraicPoint]) -> list[tuple[Fraction, Fraction]]:
    """Refine isolating intervals of pairwise distinct points until the
    brackets are pairwise disjoint; returns the refined brackets."""
    brackets = [list(pt.interval) for pt in points]
    for _ in range(REFINE_BUDGET):
        clash = False
        for i in range(len(points)):
            for j in range(i + 1, len(points)):
                if brackets[i][0] < brackets[j][1] and brackets[j][0] < brackets[i][1]:
                    clash = True
        if not clash:
            return [tuple(b) for b in brackets]
        for i, pt in enumerate(points):
            brackets[i] = list(refine_root_interval(pt.poly, *brackets[i]))
    raise InsufficientPrecision("could not separate algebraic points")


# ---------------------------------------------------------------------------
# the sign oracle


_sign_cache: dict[tuple[LaurentOperator, Species], Sign] = {}


def op_sign(op: LaurentOperator, species: Species) -> Sign:
    """Sign of ``op`` on every positive element of a group of this species.

    The trichotomy is total: every operator is everywhere negative,
    everywhere zero, or everywhere positive on positive elements.
    """
    key = (op, species)
    cached = _sign_cache.get(key)
    if cached is not None:
        return cached
    result = _op_sign(op, species)
    _sign_cache[key] = result
    return result


def _op_sign(op: LaurentOperator, species: Species) -> Sign:
    if op.is_zero:
        return Sign.ZERO
    p, _shift = op.as_shifted_poly()

    if isinstance(species, AlgebraicEq):
        return _sign_at_root(p, species.minpoly, *species.interval)

    if isinstance(species, (AlgebraicLt, AlgebraicGt)):
        minpoly = species.minpoly
        m = 0
        q = p
        while True:
            # exact division preserves the sign of the cofactor at the root
            quotient = P.exact_quotient(q, minpoly)
            if quotient is None:
                break
            q = quotient
            m += 1
        if not q:
            raise InvalidSpecies("degenerate operator factorization")
        sign_q = _sign_at_root(q, minpoly, *species.interval)
        if m == 0:
            return sign_q
        dsign = _sign_at_root(P.derivative(minpoly), minpoly, *species.interval)
        side = -int(dsign) if isinstance(species, AlgebraicLt) else int(dsign)
        return Sign(int(sign_q) * side**m)

    if isinstance(species, Transcendental):
        for lo, hi in species.intervals:
            vlo, vhi = P.interval_eval(p, lo, hi)
            if vlo > 0:
                return Sign.POS
            if vhi < 0:
                return Sign.NEG
        raise InsufficientPrecision(
            f"interval list of '{species.name}' exhausted before the sign resolved"
        )

    if isinstance(species, Infinite):
        return Sign.POS if P.leading(p) > 0 else Sign.NEG

    raise InvalidSpecies(f"not a species: {species!r}")


# ---------------------------------------------------------------------------
# validation


def validate_species(species: Species) -> ValidationReport:
    report = ValidationReport()
    if isinstance(species, _ALGEBRAIC):
        p = P.strip(species.minpoly)
        lo, hi = species.interval
        if P.degree(p) < 1:
            report.add("ZeroPolynomial", "minimal polynomial must be nonconstant")
            return report
        if any(not isinstance(c, int) for c in p):
            report.add("NotInteger", "minimal polynomial must have integer coefficients")
            return report
        if P.content(p) != 1:
            report.add("NotPrimitive", f"content is {P.content(p)}")
        if not P.is_squarefree(p):
            report.add("NotSquarefree", "gcd with the derivative is nonconstant")
        if lo >= hi:
            report.add("EmptyInterval", f"({lo}, {hi}) is empty")
            return report
        if lo <= 0:
            report.add("NonPositiveInterval", "interval endpoints must be positive")
        if P.eval_at(p, lo) == 0 or P.eval_at(p, hi) == 0:
            report.add("EndpointRoot", "interval endpoints must not be roots")
            return report
        n = P.count_roots(p, lo, hi)
        if n != 1:
            report.add("NotIsolating", f"interval contains {n} roots, expected 1")
        if 2 <= P.degree(p) <= 3 and P.rational_roots(p):
            report.add(
                "MaybeReducible",
                "polynomial of degree <= 3 has a rational root, so it is reducible",
            )
    elif isinstance(species, Transcendental):
        if not species.name:
            report.add("UnnamedTranscendental", "name must be nonempty")
        if not species.intervals:
            report.add("NoIntervals", "at least one bracketing interval is required")
        prev = None
        for lo, hi in species.intervals:
            if lo >= hi:
                report.add("EmptyInterval", f"({lo}, {hi}) is empty")
            if lo <= 0:
                report.add("NonPositiveInterval", "lower endpoints must be positive")
            if prev is not None:
                plo, phi = prev
                inside = lo >= plo and hi <= phi and (lo > plo or hi < phi)
                if not inside:
                    report.add("NotNested", f"({lo}, {hi}) not nested in ({plo}, {phi})")
            prev = (lo, hi)
    elif isinstance(species, Infinite):
        pass
    else:
        report.add("UnknownKind", f"not a species: {species!r}")
    return report


def require_valid(species: Species) -> None:
    report = validate_species(species)
    if not report.ok:
        raise InvalidSpecies(str(report))


# ---------------------------------------------------------------------------
# equivalence and separation


def _root_point(species: Species) -> AlgebraicPoint:
    return AlgebraicPoint(P.strip(species.minpoly), species.interval)


def species_equiv(a: Species, b: Species) -> bool:
    """True iff the two species give every operator the same sign."""
    if type(a) is not type(b):
        return False
    if isinstance(a, Infinite):
        return True
    if isinstance(a, Transcendental):
        return a.name == b.name
    return points_equal(_root_point(a), _root_point(b))


def _bracket(species: Species) -> tuple[Fraction, Fraction] | None:
    """Current rational bracket around the species' multiplier; None for
    an infinite multiplier."""
    if isinstance(species, _ALGEBRAIC):
        return species.interval
    if isinstance(species, Transcendental):
        return species.intervals[-1]
    return None


def separating_point(a: Species, b: Species):
    """A point at which the two species classify the automorphism
    differently: either a rational, or an algebraic point.

    Raises NoSeparator when the species are equivalent and Unresolvable
    when the stored interval data cannot distinguish them.
    """
    if species_equiv(a, b):
        raise NoSeparator("species are equivalent")

    bra, brb = _bracket(a), _bracket(b)
    if bra is None or brb is None:
        finite = b if bra is None else a
        lo, hi = _bracket(finite)
        q = Fraction(P.ceil_frac(hi)) + 1
        return q

    # both multipliers finite: both algebraic and sharing the root means the
    # root itself separates (the perturbation direction differs there)
    if isinstance(a, _ALGEBRAIC) and isinstance(b, _ALGEBRAIC):
        pa, pb = _root_point(a), _root_point(b)
        if points_equal(pa, pb):
            lo = max(pa.interval[0], pb.interval[0])
            hi = min(pa.interval[1], pb.interval[1])
            return AlgebraicPoint(pa.poly, (lo, hi))

    # otherwise try to split the brackets by a rational
    (alo, ahi), (blo, bhi) = bra, brb
    for _ in range(REFINE_BUDGET):
        if ahi <= blo:
            return P.simplest_between(ahi, blo)
        if bhi <= alo:
            return P.simplest_between(bhi, alo)
        progressed = False
        if isinstance(a, _ALGEBRAIC):
            alo, ahi = refine_root_interval(a.minpoly, alo, ahi)
            progressed = True
        if isinstance(b, _ALGEBRAIC):
            blo, bhi = refine_root_interval(b.minpoly, blo, bhi)
            progressed = True
        if not progressed:
            break
        if isinstance(a, _ALGEBRAIC) and not isinstance(b, _ALGEBRAIC):
            if blo < alo and ahi < bhi:
                break  # algebraic root strictly inside the static bracket
        if isinstance(b, _ALGEBRAIC) and not isinstance(a, _ALGEBRAIC):
            if alo < blo and bhi < ahi:
                break

    # a static transcendental bracket swallowed the algebraic root: the two
    # species may still classify differently at that root
    for alg, other in ((a, b), (b, a)):
        if isinstance(alg, _ALGEBRAIC):
            pt = _root_point(alg)
            self_class = compare_sigma_rho(alg, pt)
            other_class = compare_sigma_rho(other, pt)
            if self_class != other_class:
                return pt
    raise Unresolvable("interval data cannot separate the species")


def compare_sigma_rho(species: Species, rho) -> Sign:
    """Trichotomy of the species' automorphism against multiplication by
    ``rho``: POS when it exceeds rho on positives, ZERO when it equals it,
    NEG when it falls short.  ``rho`` is a Fraction or an AlgebraicPoint."""
    if isinstance(rho, (int, Fraction)):
        q = Fraction(rho)
        return op_sign(
            LaurentOperator.from_dict({1: q.denominator, 0: -q.numerator}), species
        )
    if not isinstance(rho, AlgebraicPoint):
        raise InvalidSpecies(f"not a comparison point: {rho!r}")
    if isinstance(species, Infinite):
        return Sign.POS
    if isinstance(species, _ALGEBRAIC):
        own = _root_point(species)
        if points_equal(own, rho):
            if isinstance(species, AlgebraicEq):
                return Sign.ZERO
            return Sign.NEG if isinstance(species, AlgebraicLt) else Sign.POS
        return compare_points(own, rho)
    # transcendental: order the static bracket against the refinable point
    lo, hi = species.intervals[-1]
    plo, phi = rho.interval
    for _ in range(REFINE_BUDGET):
        if hi <= plo:
            return Sign.NEG
        if phi <= lo:
            return Sign.POS
        plo, phi = refine_root_interval(rho.poly, plo, phi)
    raise Unresolvable(
        f"intervals of '{species.name}' cannot be ordered against the point"
    )


def minpoly_operator(species: Species) -> LaurentOperator:
    """The minimal polynomial of an algebraic species, as an operator."""
    if not isinstance(species, _ALGEBRAIC):
        raise InvalidSpecies("species has no minimal polynomial")
    return op_from_poly(P.strip(species.minpoly))
