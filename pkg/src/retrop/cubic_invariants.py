"""Classical invariants of plane cubics as explicit integer tables.

The two generating invariants of the coefficient ring of a plane cubic are
stored as sparse integer polynomials in the ten cubic coefficients.  The keys
are exponent tuples aligned with AFFINE_ORDER, which lists the monomial
exponents (i, j) of x^i y^j in the fixed order used by every table.

* QUARTIC_INVARIANT has degree four in the coefficients and evaluates to
  48*a on the family y^2 = x^3 + a*x + b.
* SEXTIC_INVARIANT has degree six and evaluates to 864*b on that family.
* The cubic discriminant is the primitive part of S^3 + T^2 (weights from
  DISC_COMBINATION); on the family above it is 64*a^3 + 432*b^2, which is
  16 * (4*a^3 + 27*b^2) and vanishes exactly on singular members.

The tables were produced offline by the differential-operator construction in
tools/derive_cubic_invariants.py and are re-verified against the Weierstrass
family and unimodular changes of coordinates in the test suite.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Mapping

from .polynomials import PlanePoly
from .series import PuiseuxElement

AFFINE_ORDER = (
    (0, 0),
    (0, 1),
    (0, 2),
    (0, 3),
    (1, 0),
    (1, 1),
    (1, 2),
    (2, 0),
    (2, 1),
    (3, 0),
)

QUARTIC_INVARIANT = {
    (0, 0, 0, 0, 0, 4, 0, 0, 0, 0): -1,
    (0, 0, 0, 0, 1, 2, 1, 0, 0, 0): 8,
    (0, 0, 0, 0, 2, 0, 2, 0, 0, 0): -16,
    (0, 0, 0, 1, 1, 1, 0, 1, 0, 0): -24,
    (0, 0, 0, 1, 2, 0, 0, 0, 1, 0): 48,
    (0, 0, 1, 0, 0, 2, 0, 1, 0, 0): 8,
    (0, 0, 1, 0, 1, 0, 1, 1, 0, 0): 16,
    (0, 0, 1, 0, 1, 1, 0, 0, 1, 0): -24,
    (0, 0, 2, 0, 0, 0, 0, 2, 0, 0): -16,
    (0, 0, 2, 0, 1, 0, 0, 0, 0, 1): 48,
    (0, 1, 0, 0, 0, 1, 1, 1, 0, 0): -24,
    (0, 1, 0, 0, 0, 2, 0, 0, 1, 0): 8,
    (0, 1, 0, 0, 1, 0, 1, 0, 1, 0): 16,
    (0, 1, 0, 1, 0, 0, 0, 2, 0, 0): 48,
    (0, 1, 0, 1, 1, 0, 0, 0, 0, 1): -144,
    (0, 1, 1, 0, 0, 0, 0, 1, 1, 0): 16,
    (0, 1, 1, 0, 0, 1, 0, 0, 0, 1): -24,
    (0, 2, 0, 0, 0, 0, 0, 0, 2, 0): -16,
    (0, 2, 0, 0, 0, 0, 1, 0, 0, 1): 48,
    (1, 0, 0, 0, 0, 0, 2, 1, 0, 0): 48,
    (1, 0, 0, 0, 0, 1, 1, 0, 1, 0): -24,
    (1, 0, 0, 1, 0, 0, 0, 1, 1, 0): -144,
    (1, 0, 0, 1, 0, 1, 0, 0, 0, 1): 216,
    (1, 0, 1, 0, 0, 0, 0, 0, 2, 0): 48,
    (1, 0, 1, 0, 0, 0, 1, 0, 0, 1): -144,
}

SEXTIC_INVARIANT = {
    (0, 0, 0, 0, 0, 6, 0, 0, 0, 0): 1,
    (0, 0, 0, 0, 1, 4, 1, 0, 0, 0): -12,
    (0, 0, 0, 0, 2, 2, 2, 0, 0, 0): 48,
    (0, 0, 0, 0, 3, 0, 3, 0, 0, 0): -64,
    (0, 0, 0, 1, 1, 3, 0, 1, 0, 0): 36,
    (0, 0, 0, 1, 2, 1, 1, 1, 0, 0): -144,
    (0, 0, 0, 1, 2, 2, 0, 0, 1, 0): -72,
    (0, 0, 0, 1, 3, 0, 1, 0, 1, 0): 288,
    (0, 0, 0, 2, 2, 0, 0, 2, 0, 0): 216,
    (0, 0, 0, 2, 3, 0, 0, 0, 0, 1): -864,
    (0, 0, 1, 0, 0, 4, 0, 1, 0, 0): -12,
    (0, 0, 1, 0, 1, 2, 1, 1, 0, 0): 24,
    (0, 0, 1, 0, 1, 3, 0, 0, 1, 0): 36,
    (0, 0, 1, 0, 2, 0, 2, 1, 0, 0): 96,
    (0, 0, 1, 0, 2, 1, 1, 0, 1, 0): -144,
    (0, 0, 1, 1, 1, 1, 0, 2, 0, 0): -144,
    (0, 0, 1, 1, 2, 0, 0, 1, 1, 0): -144,
    (0, 0, 1, 1, 2, 1, 0, 0, 0, 1): 864,
    (0, 0, 2, 0, 0, 2, 0, 2, 0, 0): 48,
    (0, 0, 2, 0, 1, 0, 1, 2, 0, 0): 96,
    (0, 0, 2, 0, 1, 1, 0, 1, 1, 0): -144,
    (0, 0, 2, 0, 1, 2, 0, 0, 0, 1): -72,
    (0, 0, 2, 0, 2, 0, 0, 0, 2, 0): 216,
    (0, 0, 2, 0, 2, 0, 1, 0, 0, 1): -576,
    (0, 0, 3, 0, 0, 0, 0, 3, 0, 0): -64,
    (0, 0, 3, 0, 1, 0, 0, 1, 0, 1): 288,
    (0, 1, 0, 0, 0, 3, 1, 1, 0, 0): 36,
    (0, 1, 0, 0, 0, 4, 0, 0, 1, 0): -12,
    (0, 1, 0, 0, 1, 1, 2, 1, 0, 0): -144,
    (0, 1, 0, 0, 1, 2, 1, 0, 1, 0): 24,
    (0, 1, 0, 0, 2, 0, 2, 0, 1, 0): 96,
    (0, 1, 0, 1, 0, 2, 0, 2, 0, 0): -72,
    (0, 1, 0, 1, 1, 0, 1, 2, 0, 0): -144,
    (0, 1, 0, 1, 1, 1, 0, 1, 1, 0): 720,
    (0, 1, 0, 1, 1, 2, 0, 0, 0, 1): -648,
    (0, 1, 0, 1, 2, 0, 0, 0, 2, 0): -576,
    (0, 1, 0, 1, 2, 0, 1, 0, 0, 1): 864,
    (0, 1, 1, 0, 0, 1, 1, 2, 0, 0): -144,
    (0, 1, 1, 0, 0, 2, 0, 1, 1, 0): 24,
    (0, 1, 1, 0, 0, 3, 0, 0, 0, 1): 36,
    (0, 1, 1, 0, 1, 0, 1, 1, 1, 0): 48,
    (0, 1, 1, 0, 1, 1, 0, 0, 2, 0): -144,
    (0, 1, 1, 0, 1, 1, 1, 0, 0, 1): 720,
    (0, 1, 1, 1, 0, 0, 0, 3, 0, 0): 288,
    (0, 1, 1, 1, 1, 0, 0, 1, 0, 1): -1296,
    (0, 1, 2, 0, 0, 0, 0, 2, 1, 0): 96,
    (0, 1, 2, 0, 0, 1, 0, 1, 0, 1): -144,
    (0, 1, 2, 0, 1, 0, 0, 0, 1, 1): -144,
    (0, 2, 0, 0, 0, 0, 2, 2, 0, 0): 216,
    (0, 2, 0, 0, 0, 1, 1, 1, 1, 0): -144,
    (0, 2, 0, 0, 0, 2, 0, 0, 2, 0): 48,
    (0, 2, 0, 0, 0, 2, 1, 0, 0, 1): -72,
    (0, 2, 0, 0, 1, 0, 1, 0, 2, 0): 96,
    (0, 2, 0, 0, 1, 0, 2, 0, 0, 1): -576,
    (0, 2, 0, 1, 0, 0, 0, 2, 1, 0): -576,
    (0, 2, 0, 1, 0, 1, 0, 1, 0, 1): 864,
    (0, 2, 0, 1, 1, 0, 0, 0, 1, 1): 864,
    (0, 2, 1, 0, 0, 0, 0, 1, 2, 0): 96,
    (0, 2, 1, 0, 0, 0, 1, 1, 0, 1): -144,
    (0, 2, 1, 0, 0, 1, 0, 0, 1, 1): -144,
    (0, 2, 2, 0, 0, 0, 0, 0, 0, 2): 216,
    (0, 3, 0, 0, 0, 0, 0, 0, 3, 0): -64,
    (0, 3, 0, 0, 0, 0, 1, 0, 1, 1): 288,
    (0, 3, 0, 1, 0, 0, 0, 0, 0, 2): -864,
    (1, 0, 0, 0, 0, 2, 2, 1, 0, 0): -72,
    (1, 0, 0, 0, 0, 3, 1, 0, 1, 0): 36,
    (1, 0, 0, 0, 1, 0, 3, 1, 0, 0): 288,
    (1, 0, 0, 0, 1, 1, 2, 0, 1, 0): -144,
    (1, 0, 0, 1, 0, 1, 1, 2, 0, 0): 864,
    (1, 0, 0, 1, 0, 2, 0, 1, 1, 0): -648,
    (1, 0, 0, 1, 0, 3, 0, 0, 0, 1): 540,
    (1, 0, 0, 1, 1, 0, 1, 1, 1, 0): -1296,
    (1, 0, 0, 1, 1, 1, 0, 0, 2, 0): 864,
    (1, 0, 0, 1, 1, 1, 1, 0, 0, 1): -1296,
    (1, 0, 0, 2, 0, 0, 0, 3, 0, 0): -864,
    (1, 0, 0, 2, 1, 0, 0, 1, 0, 1): 3888,
    (1, 0, 1, 0, 0, 0, 2, 2, 0, 0): -576,
    (1, 0, 1, 0, 0, 1, 1, 1, 1, 0): 720,
    (1, 0, 1, 0, 0, 2, 0, 0, 2, 0): -72,
    (1, 0, 1, 0, 0, 2, 1, 0, 0, 1): -648,
    (1, 0, 1, 0, 1, 0, 1, 0, 2, 0): -144,
    (1, 0, 1, 0, 1, 0, 2, 0, 0, 1): 864,
    (1, 0, 1, 1, 0, 0, 0, 2, 1, 0): 864,
    (1, 0, 1, 1, 0, 1, 0, 1, 0, 1): -1296,
    (1, 0, 1, 1, 1, 0, 0, 0, 1, 1): -1296,
    (1, 0, 2, 0, 0, 0, 0, 1, 2, 0): -576,
    (1, 0, 2, 0, 0, 0, 1, 1, 0, 1): 864,
    (1, 0, 2, 0, 0, 1, 0, 0, 1, 1): 864,
    (1, 0, 3, 0, 0, 0, 0, 0, 0, 2): -864,
    (1, 1, 0, 0, 0, 0, 2, 1, 1, 0): -144,
    (1, 1, 0, 0, 0, 1, 1, 0, 2, 0): -144,
    (1, 1, 0, 0, 0, 1, 2, 0, 0, 1): 864,
    (1, 1, 0, 1, 0, 0, 0, 1, 2, 0): 864,
    (1, 1, 0, 1, 0, 0, 1, 1, 0, 1): -1296,
    (1, 1, 0, 1, 0, 1, 0, 0, 1, 1): -1296,
    (1, 1, 1, 0, 0, 0, 0, 0, 3, 0): 288,
    (1, 1, 1, 0, 0, 0, 1, 0, 1, 1): -1296,
    (1, 1, 1, 1, 0, 0, 0, 0, 0, 2): 3888,
    (2, 0, 0, 0, 0, 0, 2, 0, 2, 0): 216,
    (2, 0, 0, 0, 0, 0, 3, 0, 0, 1): -864,
    (2, 0, 0, 1, 0, 0, 0, 0, 3, 0): -864,
    (2, 0, 0, 1, 0, 0, 1, 0, 1, 1): 3888,
    (2, 0, 0, 2, 0, 0, 0, 0, 0, 2): -5832,
}

DISC_COMBINATION = (1, 1)

Table = dict[tuple[int, ...], int]

_DISCRIMINANT_CACHE: Table | None = None


def _table_mul(p: Table, q: Table) -> Table:
    out: Table = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            v = out.get(e, 0) + c1 * c2
            if v:
                out[e] = v
            elif e in out:
                del out[e]
    return out


def _table_primitive(p: Table) -> Table:
    content = 0
    for c in p.values():
        content = math.gcd(content, c)
    if content > 1:
        return {e: c // content for e, c in p.items()}
    return dict(p)


def discriminant_table() -> Table:
    """Primitive integer expansion of the cubic discriminant in ten coefficients."""
    global _DISCRIMINANT_CACHE
    if _DISCRIMINANT_CACHE is None:
        s3 = _table_mul(_table_mul(QUARTIC_INVARIANT, QUARTIC_INVARIANT), QUARTIC_INVARIANT)
        t2 = _table_mul(SEXTIC_INVARIANT, SEXTIC_INVARIANT)
        u, v = DISC_COMBINATION
        acc: Table = {}
        for e, c in s3.items():
            acc[e] = acc.get(e, 0) + u * c
        for e, c in t2.items():
            w = acc.get(e, 0) + v * c
            if w:
                acc[e] = w
            elif e in acc:
                del acc[e]
        _DISCRIMINANT_CACHE = _table_primitive(acc)
    return _DISCRIMINANT_CACHE


def cubic_coefficient_vector(g: PlanePoly) -> tuple[PuiseuxElement, ...]:
    """The ten coefficients of a plane cubic in AFFINE_ORDER (zeros filled in)."""
    if len(g.vars) != 2:
        raise ValueError("cubic invariants need a two-variable polynomial")
    allowed = set(AFFINE_ORDER)
    for exp in g.coeffs:
        if exp not in allowed:
            raise ValueError("support point %r is outside the cubic triangle" % (exp,))
    return tuple(g.coefficient(exp) for exp in AFFINE_ORDER)


def _convolve_rational(a, b):
    out: dict[int, Fraction] = {}
    for e1, c1 in a:
        for e2, c2 in b:
            q = e1 + e2
            p = c1 * c2
            if q in out:
                out[q] = out[q] + p
            else:
                out[q] = p
    return tuple(out.items())


def _evaluate_table_rational(table: Table, coeffs) -> PuiseuxElement:
    # scaled integer exponents and bare rationals sidestep the field-element
    # and normalization layers of the series class; assembled once at the end
    den = 1
    for s in coeffs:
        for e, _ in s.terms:
            den = den * e.denominator // math.gcd(den, e.denominator)
    raw = [tuple((int(e * den), c.rat) for e, c in s.terms) for s in coeffs]
    one = ((0, Fraction(1)),)
    powers: list[list[tuple]] = [[one] for _ in coeffs]
    acc: dict[int, Fraction] = {}
    for key, coef in table.items():
        term = ((0, Fraction(coef)),)
        dead = False
        for idx, e in enumerate(key):
            if e == 0:
                continue
            if not raw[idx]:
                dead = True
                break
            cache = powers[idx]
            while len(cache) <= e:
                cache.append(_convolve_rational(cache[-1], raw[idx]))
            term = _convolve_rational(term, cache[e])
        if dead:
            continue
        for q, c in term:
            if q in acc:
                acc[q] = acc[q] + c
            else:
                acc[q] = c
    return PuiseuxElement((Fraction(q, den), c) for q, c in acc.items() if c)


def evaluate_table(table: Table, coeffs: tuple[PuiseuxElement, ...]) -> PuiseuxElement:
    """Evaluate an integer invariant table at a cubic coefficient vector."""
    if len(coeffs) != len(AFFINE_ORDER):
        raise ValueError("expected %d coefficients" % len(AFFINE_ORDER))
    if all(not c.ext for s in coeffs for _, c in s.terms):
        return _evaluate_table_rational(table, coeffs)
    powers: list[list[PuiseuxElement]] = [[PuiseuxElement.one()] for _ in coeffs]
    total = PuiseuxElement.zero()
    for key, coef in table.items():
        term = PuiseuxElement.constant(Fraction(coef))
        dead = False
        for idx, e in enumerate(key):
            if e == 0:
                continue
            if not coeffs[idx]:
                dead = True
                break
            cache = powers[idx]
            while len(cache) <= e:
                cache.append(cache[-1] * coeffs[idx])
            term = term * cache[e]
        if not dead:
            total = total + term
    return total


def quartic_invariant(g: PlanePoly) -> PuiseuxElement:
    return evaluate_table(QUARTIC_INVARIANT, cubic_coefficient_vector(g))


def sextic_invariant(g: PlanePoly) -> PuiseuxElement:
    return evaluate_table(SEXTIC_INVARIANT, cubic_coefficient_vector(g))


def cubic_discriminant(g: PlanePoly) -> PuiseuxElement:
    return evaluate_table(discriminant_table(), cubic_coefficient_vector(g))


def table_valuation(table: Table, vals: Mapping[tuple[int, int], object]) -> Fraction | float:
    """Smallest valuation any monomial of the table can contribute.

    vals maps cubic support points to coefficient valuations (math.inf for a
    missing coefficient).  For coefficients with generic initial terms the
    valuation of the evaluated table equals this bound; a strictly larger
    actual valuation witnesses cancellation among the initial terms.
    """
    filled = [Fraction(0)] * len(AFFINE_ORDER)
    for idx, exp in enumerate(AFFINE_ORDER):
        v = vals.get(exp, math.inf)
        filled[idx] = v if v == math.inf else Fraction(v)
    best: Fraction | float = math.inf
    for key in table:
        score: Fraction | float = Fraction(0)
        for idx, e in enumerate(key):
            if e == 0:
                continue
            if filled[idx] == math.inf:
                score = math.inf
                break
            score += e * filled[idx]
        if score < best:
            best = score
    return best
