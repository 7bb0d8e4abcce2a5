"""Derive the degree-4 and degree-6 fundamental invariants of a ternary cubic.

The classical invariant ring of ternary cubics under SL(3) is freely generated
by one invariant of degree 4 and one of degree 6 in the ten coefficients.  Both
are produced here from scratch with Cayley's omega process applied to bracket
monomials, using exact integer dict-polynomial arithmetic:

    degree 4:  (abc)(abd)(acd)(bcd)           on four copies of the cubic
    degree 6:  (abc)(abd)(cde)(cef)(adf)(bef) on six copies

Each bracket (pqr) is the 3x3 determinant of partial derivatives with respect
to the variable triples of copies p, q, r.  Every copy is differentiated three
times in total, so the result is a constant in the curve variables: a
polynomial in the ten coefficients alone.  Degree counting shows the degree-6
result is forced to be proportional to the second generator (there is no
degree-2 invariant to build alternatives from).

The script normalizes both invariants to integer content 1, fixes signs on the
Weierstrass family y^2 z - x^3 - a x z^2 - b z^3, solves for the integer
combination of their cube/square equal to a multiple of 4 a^3 + 27 b^2 (the
cubic discriminant on that family), and prints Python source for the verified
tables.  Run it from the repository root:

    python tools/derive_cubic_invariants.py
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd

# Ternary cubic support: exponent triples (i, j, k) with i + j + k = 3,
# ordered to match the package's affine convention (x-degree, y-degree)
# sorted lexicographically; k = 3 - i - j is the homogenizing degree.
SUPPORT = tuple(
    (i, j, 3 - i - j) for i in range(4) for j in range(4 - i) if True
)
AFFINE_ORDER = tuple(sorted((i, j) for (i, j, _k) in SUPPORT))
TERNARY_OF_AFFINE = {(i, j): (i, j, 3 - i - j) for (i, j) in AFFINE_ORDER}
COEFF_INDEX = {TERNARY_OF_AFFINE[a]: n for n, a in enumerate(AFFINE_ORDER)}

NCOPIES = 6
NVARS = 3 * NCOPIES

# A polynomial is dict[(cexp, vexp)] -> int where cexp is a 10-tuple of
# coefficient exponents and vexp a 18-tuple of variable exponents.


def poly_mul(p, q):
    out = {}
    for (ca, va), x in p.items():
        for (cb, vb), y in q.items():
            key = (
                tuple(m + n for m, n in zip(ca, cb)),
                tuple(m + n for m, n in zip(va, vb)),
            )
            out[key] = out.get(key, 0) + x * y
    return {k: v for k, v in out.items() if v}


def cubic_copy(copy):
    """The generic ternary cubic in the variables of one copy."""
    out = {}
    for tri in SUPPORT:
        cexp = [0] * 10
        cexp[COEFF_INDEX[tri]] = 1
        vexp = [0] * NVARS
        vexp[3 * copy : 3 * copy + 3] = tri
        out[(tuple(cexp), tuple(vexp))] = 1
    return out


def diff(p, var):
    out = {}
    for (ce, ve), x in p.items():
        e = ve[var]
        if e == 0:
            continue
        ve2 = list(ve)
        ve2[var] = e - 1
        key = (ce, tuple(ve2))
        out[key] = out.get(key, 0) + x * e
    return {k: v for k, v in out.items() if v}


SIGN3 = [
    ((0, 1, 2), 1),
    ((1, 2, 0), 1),
    ((2, 0, 1), 1),
    ((0, 2, 1), -1),
    ((2, 1, 0), -1),
    ((1, 0, 2), -1),
]


def omega(p, copies):
    """Apply the bracket operator det(d/dx_p, d/dx_q, d/dx_r)."""
    a, b, c = copies
    out = {}
    for perm, sign in SIGN3:
        q = p
        for copy, row in zip((a, b, c), perm):
            q = diff(q, 3 * copy + row)
            if not q:
                break
        for key, x in q.items():
            out[key] = out.get(key, 0) + sign * x
    return {k: v for k, v in out.items() if v}


def content(p):
    g = 0
    for v in p.values():
        g = gcd(g, abs(v))
    return g or 1


def primitive(p):
    g = content(p)
    return {k: v // g for k, v in p.items()}


def run_brackets(brackets, ncopies):
    """Multiply copies in, applying each bracket as soon as possible."""
    pending = list(brackets)
    poly = {}
    for copy in range(ncopies):
        poly = cubic_copy(copy) if not poly else poly_mul(poly, cubic_copy(copy))
        ready = [br for br in pending if max(br) == copy]
        for br in ready:
            pending.remove(br)
            poly = omega(poly, br)
            if not poly:
                return {}
    assert not pending
    # The result must be constant in all curve variables.
    out = {}
    for (ce, ve), x in poly.items():
        assert all(e == 0 for e in ve), "bracket bookkeeping left variables"
        out[ce] = x
    return out


def weierstrass_eval(inv):
    """Evaluate an invariant on y^2 z - x^3 - a x z^2 - b z^3.

    Returns a dict mapping (deg_a, deg_b) -> Fraction.
    """
    # coefficient values indexed by ternary triple
    vals = {
        (0, 2, 1): {(0, 0): Fraction(1)},  # y^2 z
        (3, 0, 0): {(0, 0): Fraction(-1)},  # x^3
        (1, 0, 2): {(1, 0): Fraction(-1)},  # a * x z^2  (value -a)
        (0, 0, 3): {(0, 1): Fraction(-1)},  # b * z^3    (value -b)
    }
    out = {}
    for cexp, coef in inv.items():
        term = {(0, 0): Fraction(coef)}
        zero = False
        for tri, e in zip(sorted(COEFF_INDEX, key=COEFF_INDEX.get), cexp):
            if e == 0:
                continue
            if tri not in vals:
                zero = True
                break
            for _ in range(e):
                new = {}
                for m1, c1 in term.items():
                    for m2, c2 in vals[tri].items():
                        key = (m1[0] + m2[0], m1[1] + m2[1])
                        new[key] = new.get(key, Fraction(0)) + c1 * c2
                term = new
        if zero:
            continue
        for key, c in term.items():
            out[key] = out.get(key, Fraction(0)) + c
    return {k: v for k, v in out.items() if v}


def poly_pow_tables(p, n):
    out = p
    for _ in range(n - 1):
        new = {}
        for ka, va in out.items():
            for kb, vb in p.items():
                key = tuple(m + n2 for m, n2 in zip(ka, kb))
                new[key] = new.get(key, 0) + va * vb
        out = {k: v for k, v in new.items() if v}
    return out


def combine(p, cp, q, cq):
    out = dict()
    for k, v in p.items():
        out[k] = out.get(k, 0) + cp * v
    for k, v in q.items():
        out[k] = out.get(k, 0) + cq * v
    return {k: v for k, v in out.items() if v}


def eval_at(inv, values):
    total = Fraction(0)
    order = sorted(COEFF_INDEX, key=COEFF_INDEX.get)
    for cexp, coef in inv.items():
        term = Fraction(coef)
        for tri, e in zip(order, cexp):
            if e:
                term *= Fraction(values.get(tri, 0)) ** e
        total += term
    return total


def fmt_table(name, inv):
    lines = ["%s = {" % name]
    for cexp in sorted(inv):
        lines.append("    %r: %d," % (cexp, inv[cexp]))
    lines.append("}")
    return "\n".join(lines)


def sextic_candidates():
    """Bracket monomials on six copies with every copy used three times.

    Many of these vanish identically; the caller tries them in order until one
    does not.  Distinct brackets only, listed deterministically.
    """
    triples = list(itertools.combinations(range(6), 3))
    for combo in itertools.combinations(triples, 6):
        counts = [0] * 6
        for tri in combo:
            for c in tri:
                counts[c] += 1
        if all(n == 3 for n in counts):
            yield list(combo)


def main():
    quartic = run_brackets([(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)], 4)
    assert quartic, "degree-4 bracket monomial vanished"
    quartic = primitive(quartic)

    sextic = {}
    for combo in sextic_candidates():
        sextic = run_brackets(combo, 6)
        if sextic:
            print("# degree-6 bracket monomial: %r" % (combo,))
            break
    assert sextic, "all degree-6 bracket monomials vanished"
    sextic = primitive(sextic)

    wq = weierstrass_eval(quartic)
    ws = weierstrass_eval(sextic)
    print("# degree-4 terms: %d, on Weierstrass family: %s" % (len(quartic), wq))
    print("# degree-6 terms: %d, on Weierstrass family: %s" % (len(sextic), ws))

    assert set(wq) == {(3, 0)} or set(wq) == {(1, 0)}, wq
    assert set(ws) == {(0, 1)} or set(ws) == {(0, 2)}, ws

    # Fix signs: the degree-4 invariant should evaluate to a positive multiple
    # of a, the degree-6 one to a positive multiple of b.
    gamma = wq[min(wq)]
    if gamma < 0:
        quartic = {k: -v for k, v in quartic.items()}
        gamma = -gamma
    c3 = ws[min(ws)]
    if c3 < 0:
        sextic = {k: -v for k, v in sextic.items()}
        c3 = -c3

    # Solve u * gamma^3 * a^3 + v * c3^2 * b^2 = kappa (4 a^3 + 27 b^2).
    u = Fraction(4) / gamma**3
    v = Fraction(27) / c3**2
    scale = u.denominator * v.denominator // gcd(u.denominator, v.denominator)
    u, v = int(u * scale), int(v * scale)
    print("# discriminant combination: %d * S^3 + %d * T^2" % (u, v))

    s_cubed = poly_pow_tables(quartic, 3)
    t_squared = poly_pow_tables(sextic, 2)
    disc = combine(s_cubed, u, t_squared, v)
    disc = primitive(disc)
    print("# discriminant terms: %d" % len(disc))

    wd = weierstrass_eval(disc)
    ratio = {k: v for k, v in wd.items()}
    print("# discriminant on Weierstrass family: %s" % ratio)
    assert ratio[(3, 0)] * 27 == ratio[(0, 2)] * 4, "not prop to 4a^3+27b^2"

    # Smoke tests: Fermat cubic is smooth, nodal cubic is singular, the
    # diagonal family x^3+y^3+z^3+lam*xyz degenerates exactly at lam^3 = -27.
    fermat = {(3, 0, 0): 1, (0, 3, 0): 1, (0, 0, 3): 1}
    assert eval_at(disc, fermat) != 0
    nodal = {(0, 2, 1): 1, (3, 0, 0): -1, (2, 0, 1): -1}
    assert eval_at(disc, nodal) == 0
    hesse_sing = dict(fermat)
    hesse_sing[(1, 1, 1)] = -3
    assert eval_at(disc, hesse_sing) == 0
    hesse_smooth = dict(fermat)
    hesse_smooth[(1, 1, 1)] = 1
    assert eval_at(disc, hesse_smooth) != 0

    print()
    print("AFFINE_ORDER = %r" % (AFFINE_ORDER,))
    print()
    print(fmt_table("QUARTIC_INVARIANT", quartic))
    print()
    print("DISC_COMBINATION = (%d, %d)" % (u, v))
    print()
    print(fmt_table("SEXTIC_INVARIANT", sextic))


if __name__ == "__main__":
    main()
