"""Linear re-embeddings of plane curves along straight tropical lines.

Adjoining one linear lifting z = f to the ideal of a plane curve places its
tropicalization on the modification of the plane along a max-plus line.  The
space curve is captured by two planar charts: the original curve and the
eliminant in which the new variable replaces one coordinate.  Away from the
line the charts agree up to a shear; over the line the engine reconstructs
vertices and edge multiplicities by intersecting the two chart slices and
solving the projection identities, then checks balancing at every glued
vertex.  Edges of multiplicity zero over the line are kept as phantoms.

A lifting is special when its initial coefficient is a common root forced by
a vanishing local discriminant; only then does the eliminant reveal curve
structure that the planar picture contracted or folded onto the line.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .curves import TropicalPlaneCurve, CycleDescriptor, cubic_cycle
from .discriminants import (
    cell_discriminant,
    edge_discriminant,
    initial_values,
    trapezoid_orientations,
    vanishes_at_init,
)
from .polynomials import PlanePoly
from .series import FieldElem, PuiseuxElement, UnsupportedError, adjoin_quadratic
from .subdivisions import MarkedCell, lattice_length, primitive_vector

_INF = math.inf

LINE_TYPES = ("vertical", "horizontal", "skew")

_NORMALS = {"vertical": (1, 0), "horizontal": (0, 1), "skew": (1, -1)}
_PARAM_AXIS = {"vertical": 1, "horizontal": 0, "skew": 1}
_LINE_DIR3 = {"vertical": (0, 1, 0), "horizontal": (1, 0, 0), "skew": (1, 1, 1)}

CLASSIFICATIONS = ("generic", "decontraction", "unfolding", "cycle-broken")


# -- liftings ---------------------------------------------------------------


@dataclass(frozen=True)
class Lifting:
    """One linear lifting f = var + A*t^(-level) (* companion for skew lines).

    The coefficient A must have valuation zero, so the level alone fixes the
    modification line: {X = level}, {Y = level} or {X - Y = level} in the
    tropical coordinates of the chart the lifting is applied to.
    """

    line: str
    level: Fraction
    series: PuiseuxElement
    var: str
    new_var: str
    companion: str | None = None

    def __post_init__(self):
        if self.line not in LINE_TYPES:
            raise ValueError("unknown line type %r" % (self.line,))
        object.__setattr__(self, "level", Fraction(self.level))
        object.__setattr__(self, "series", PuiseuxElement.coerce(self.series))
        if not self.series or self.series.val() != 0:
            raise ValueError(
                "lifting coefficient must have valuation zero, got %s"
                % (self.series,)
            )
        if (self.companion is not None) != (self.line == "skew"):
            raise ValueError("companion variables belong to skew liftings only")
        if self.new_var == self.var or self.new_var == self.companion:
            raise ValueError("the lifted variable needs a fresh name")

    @property
    def shift(self) -> PuiseuxElement:
        """The series A*t^(-level) added to the lifted variable."""
        return self.series * PuiseuxElement.t_power(-self.level)

    def initial(self) -> FieldElem:
        return self.series.init_t()

    def applied_to(self, g: PlanePoly) -> PlanePoly:
        """Planar eliminant of the ideal (g, new_var - f)."""
        if self.line == "skew":
            return g.skew_substitute(
                self.var, self.companion, self.series, self.level, self.new_var
            )
        return g.shift_substitute(self.var, self.series, self.level, self.new_var)

    def describe(self) -> str:
        shift = str(self.shift)
        if self.line == "skew":
            if shift == "1":
                return "%s + %s" % (self.var, self.companion)
            return "%s + (%s)*%s" % (self.var, shift, self.companion)
        return "%s + %s" % (self.var, shift)


def _fresh_name(taken: Iterable[str]) -> str:
    taken = set(taken)
    for name in ("z", "z1", "z2", "z3", "z4", "w", "w1", "w2"):
        if name not in taken:
            return name
    raise ValueError("ran out of fresh variable names")


# -- root finding over the coefficient field --------------------------------


def _rat_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    num = math.isqrt(q.numerator)
    den = math.isqrt(q.denominator)
    if num * num == q.numerator and den * den == q.denominator:
        return Fraction(num, den)
    return None


def _quadratic_roots(c0: FieldElem, c1: FieldElem, c2: FieldElem) -> list[FieldElem]:
    b = c1 / c2
    c = c0 / c2
    disc = b * b - 4 * c
    if not disc.ext:
        root = _rat_sqrt(disc.rat)
        if root is not None:
            return [(-b + root) / 2, (-b - root) / 2]
        if not b.ext and not c.ext:
            ctx = adjoin_quadratic(b.rat, c.rat)
            return [ctx.generator, ctx.element(-b.rat, -1)]
    raise UnsupportedError("root requires a second field extension")


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    k = 1
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            out.append(n // k)
        k += 1
    return sorted(set(out))


def _deflate(coeffs: list[Fraction], root: Fraction) -> list[Fraction]:
    out = [Fraction(0)] * (len(coeffs) - 1)
    carry = Fraction(0)
    for k in range(len(coeffs) - 1, 0, -1):
        carry = coeffs[k] + carry * root
        out[k - 1] = carry
    return out


def _field_roots(coeffs: list[FieldElem]) -> list[FieldElem]:
    """Roots of a univariate polynomial over the coefficient field.

    Handles degree one, degree two with at most one quadratic extension, and
    higher degrees only as far as splitting off rational roots reaches.
    Roots at zero are dropped; everything else raises.
    """
    cs = [FieldElem.coerce(c) for c in coeffs]
    while cs and not cs[-1]:
        cs.pop()
    if not cs:
        raise ValueError("the zero polynomial has no meaningful roots")
    low = 0
    while not cs[low]:
        low += 1
    cs = cs[low:]
    deg = len(cs) - 1
    if deg == 0:
        return []
    if deg == 1:
        return [-cs[0] / cs[1]]
    if deg == 2:
        return _quadratic_roots(cs[0], cs[1], cs[2])
    if any(c.ext for c in cs):
        raise UnsupportedError("root outside supported extensions")
    rats = [c.rat for c in cs]
    denom = math.lcm(*(f.denominator for f in rats))
    roots: list[FieldElem] = []
    # split off rational roots until at most a quadratic factor remains
    while len(rats) - 1 > 2:
        ints = [int(f * denom) for f in rats]
        g = math.gcd(*(abs(i) for i in ints)) or 1
        ints = [i // g for i in ints]
        found = None
        for p in _divisors(ints[0]):
            for q in _divisors(ints[-1]):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    value = Fraction(0)
                    for c in reversed(ints):
                        value = value * cand + c
                    if value == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            raise UnsupportedError("root outside supported extensions")
        roots.append(FieldElem.coerce(found))
        rats = _deflate([Fraction(i) for i in ints], found)
        denom = math.lcm(*(f.denominator for f in rats))
    return roots + _field_roots([FieldElem.coerce(f) for f in rats])


def _poly_eval(coeffs: list[FieldElem], x: FieldElem) -> FieldElem:
    total = FieldElem.coerce(0)
    for c in reversed(coeffs):
        total = total * x + c
    return total


def _monic_gcd(f: list[FieldElem], g: list[FieldElem]) -> list[FieldElem]:
    def strip(p):
        p = list(p)
        while p and not p[-1]:
            p.pop()
        return p

    a, b = strip(f), strip(g)
    while b:
        # a mod b by long division
        r = list(a)
        while len(r) >= len(b):
            factor = r[-1] / b[-1]
            shift = len(r) - len(b)
            if factor:
                for k in range(len(b)):
                    r[shift + k] = r[shift + k] - factor * b[k]
            r.pop()
            r = strip(r)
        a, b = b, r
    if not a:
        raise ValueError("gcd of two zero polynomials")
    lead = a[-1]
    return [c / lead for c in a]


# -- special and fat-edge liftings ------------------------------------------


def _cell_points(cell) -> list[tuple[int, int]]:
    if isinstance(cell, MarkedCell):
        return sorted(cell.marked)
    return sorted(tuple(p) for p in cell)


def _supporting_plane(g: PlanePoly, points) -> tuple[Fraction, Fraction, Fraction]:
    heights = []
    for p in points:
        c = g.coefficient(p)
        if not c:
            raise ValueError("marked point %r has a zero coefficient" % (p,))
        heights.append((p, -c.val()))
    (p0, h0) = heights[0]
    d1 = d2 = None
    for p, h in heights[1:]:
        d = (p[0] - p0[0], p[1] - p0[1], h - h0)
        if d1 is None and (d[0], d[1]) != (0, 0):
            d1 = d
            continue
        if d1 is not None and d1[0] * d[1] - d1[1] * d[0] != 0:
            d2 = d
            break
    if d1 is None or d2 is None:
        raise ValueError("cell must span two dimensions")
    det = Fraction(d1[0] * d2[1] - d1[1] * d2[0])
    alpha = (d1[2] * d2[1] - d1[1] * d2[2]) / det
    beta = (d1[0] * d2[2] - d1[2] * d2[0]) / det
    gamma = h0 - alpha * p0[0] - beta * p0[1]
    for p, h in heights:
        if alpha * p[0] + beta * p[1] + gamma != h:
            raise ValueError("cell heights are not affine; not a single face")
    return alpha, beta, gamma


def _line_level(line: str, plane) -> Fraction:
    alpha, beta, _ = plane
    if line == "vertical":
        return -alpha
    if line == "horizontal":
        return -beta
    return beta - alpha


def find_special_lifting(
    g: PlanePoly, cell, line_type: str, new_var: str | None = None
) -> Lifting:
    """The lifting whose initial coefficient feeds the marked trapezoid.

    The cell must read as a height-one trapezoid whose dual line has the
    requested direction, and its discriminant must vanish at the initial
    coefficients of g; the forced coefficient is then the common root of the
    two base polynomials, with the sign matching the substitution convention.
    """
    if line_type not in LINE_TYPES:
        raise ValueError("unknown line type %r" % (line_type,))
    if len(g.vars) != 2:
        raise ValueError("special liftings start from a two-variable polynomial")
    disc = cell_discriminant(cell)
    if disc.defective:
        raise UnsupportedError("cell has trivial discriminant; nothing to feed")
    readings = [d for d in trapezoid_orientations(cell) if d.tag == line_type]
    if not readings:
        raise UnsupportedError(
            "cell has no height-one reading for a %s line" % line_type
        )
    if not vanishes_at_init(g, cell):
        raise UnsupportedError("vertex already locally irreducible")
    data = readings[0]
    marked = [
        p
        for p in list(data.h1_points) + list(data.h2_points)
        if p is not None
    ]
    values = initial_values(g, marked)
    zero = FieldElem.coerce(0)
    h1 = [values.get(p, zero) if p is not None else zero for p in data.h1_points]
    h2 = [values.get(p, zero) if p is not None else zero for p in data.h2_points]
    if data.s == 1:
        if not h2[0] or not h2[1]:
            raise UnsupportedError(
                "short base degenerates at the initial coefficients"
            )
        a0 = h2[0] / h2[1]
        if _poly_eval(h1, -a0):
            raise AssertionError(
                "discriminant vanished but the short-base root misses the long base"
            )
    else:
        common = _monic_gcd(h1, h2)
        candidates = [-r for r in _field_roots(common) if r]
        if not candidates:
            raise UnsupportedError("common root not in the torus")
        a0 = min(candidates, key=FieldElem.order_key)
    if not a0:
        raise UnsupportedError("common root not in the torus")
    plane = _supporting_plane(g, _cell_points(cell))
    level = _line_level(line_type, plane)
    if line_type == "horizontal":
        var, companion = g.vars[1], None
    elif line_type == "vertical":
        var, companion = g.vars[0], None
    else:
        var, companion = g.vars[0], g.vars[1]
    name = new_var if new_var is not None else _fresh_name(g.vars)
    return Lifting(
        line_type, level, PuiseuxElement.constant(a0), var, name, companion
    )


def fat_edge_lifting(g: PlanePoly, edge, new_var: str | None = None) -> Lifting:
    """Lifting that unfolds a bounded edge of multiplicity at least two.

    The dual segment must be axis-parallel and its univariate discriminant
    must not vanish at the initial coefficients, so all roots are simple; the
    smallest admissible coefficient in the field order is chosen.
    """
    if len(g.vars) != 2:
        raise ValueError("fat-edge liftings start from a two-variable polynomial")
    points = _cell_points(edge)
    if len(points) < 2:
        raise ValueError("an edge needs at least its two endpoints")
    lo, hi = points[0], points[-1]
    direction = primitive_vector((hi[0] - lo[0], hi[1] - lo[1]))
    if direction[0] < 0 or (direction[0] == 0 and direction[1] < 0):
        direction = (-direction[0], -direction[1])
    if direction not in ((1, 0), (0, 1)):
        raise UnsupportedError("only axis-parallel edges can be unfolded here")
    for p in points:
        if primitive_vector((p[0] - lo[0], p[1] - lo[1])) not in (
            direction,
            (0, 0),
        ) and p != lo:
            raise ValueError("edge points must be collinear")
    length = lattice_length(lo, hi)
    if length < 2:
        raise ValueError("edge multiplicity below two; nothing to unfold")
    disc = edge_discriminant(points)
    if not disc.defective:
        values = initial_values(g, points)
        if not disc.eval_at(values):
            raise UnsupportedError("repeated root -- unfolding not guaranteed")
    values = initial_values(g, points)
    slots = {}
    for p in points:
        k = (p[0] - lo[0]) * direction[0] + (p[1] - lo[1]) * direction[1]
        slots[k] = values.get(p, FieldElem.coerce(0))
    h = [slots.get(k, FieldElem.coerce(0)) for k in range(length + 1)]
    candidates = [-r for r in _field_roots(h) if r]
    if not candidates:
        raise UnsupportedError("root not in the torus")
    a0 = min(candidates, key=FieldElem.order_key)
    h_lo = -g.coefficient(lo).val()
    h_hi = -g.coefficient(hi).val()
    slope = (h_hi - h_lo) / length
    level = -slope
    if direction == (1, 0):
        line_type, var = "vertical", g.vars[0]
    else:
        line_type, var = "horizontal", g.vars[1]
    name = new_var if new_var is not None else _fresh_name(g.vars)
    return Lifting(line_type, level, PuiseuxElement.constant(a0), var, name)


# -- planar geometry over the modification line -----------------------------


def _fr_point(p) -> tuple[Fraction, Fraction]:
    return (Fraction(p[0]), Fraction(p[1]))


def _chart_pieces(curve: TropicalPlaneCurve):
    segs = []
    for e in curve.edges:
        p, q = curve.edge_segment(e)
        segs.append((_fr_point(p), _fr_point(q), e.multiplicity))
    rays = []
    for r in curve.rays:
        rays.append((_fr_point(curve.vertices[r.cell]), r.direction, r.multiplicity))
    return segs, rays


def _prim2(dx: Fraction, dy: Fraction) -> tuple[int, int]:
    a = dx.numerator * dy.denominator
    b = dy.numerator * dx.denominator
    g = math.gcd(abs(a), abs(b))
    if g == 0:
        raise ValueError("zero vector has no direction")
    return (a // g, b // g)


class _LineGeometry:
    """The modification line inside one planar chart."""

    def __init__(self, line: str, level: Fraction):
        self.line = line
        self.level = Fraction(level)
        self.normal = _NORMALS[line]
        self.axis = _PARAM_AXIS[line]

    def phi(self, p) -> Fraction:
        return self.normal[0] * p[0] + self.normal[1] * p[1] - self.level

    def dphi(self, d) -> Fraction:
        return Fraction(self.normal[0] * d[0] + self.normal[1] * d[1])

    def line_point(self, param: Fraction) -> tuple[Fraction, Fraction]:
        param = Fraction(param)
        if self.line == "vertical":
            return (self.level, param)
        if self.line == "horizontal":
            return (param, self.level)
        return (param + self.level, param)


def _slice_on_line(segs, rays, geom: _LineGeometry):
    """The chart's intersection with the line: closed intervals and points."""
    intervals = []
    points = set()
    for p, q, _m in segs:
        a, b = geom.phi(p), geom.phi(q)
        if a == 0 and b == 0:
            lo, hi = sorted((p[geom.axis], q[geom.axis]))
            intervals.append((lo, hi))
        elif a == 0:
            points.add(p[geom.axis])
        elif b == 0:
            points.add(q[geom.axis])
        elif (a < 0 < b) or (b < 0 < a):
            t = a / (a - b)
            points.add(p[geom.axis] + t * (q[geom.axis] - p[geom.axis]))
    for v, d, _m in rays:
        a = geom.phi(v)
        s = geom.dphi(d)
        if s == 0:
            if a == 0:
                if d[geom.axis] > 0:
                    intervals.append((v[geom.axis], _INF))
                else:
                    intervals.append((-_INF, v[geom.axis]))
        else:
            t = -a / s
            if t == 0:
                points.add(v[geom.axis])
            elif t > 0:
                points.add(v[geom.axis] + t * d[geom.axis])
    return _merge_line_set(intervals, points)


def _merge_line_set(intervals, points):
    merged = []
    for lo, hi in sorted(intervals, key=lambda iv: iv[0]):
        if merged and lo <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
        else:
            merged.append((lo, hi))
    isolated = sorted(
        y for y in points if not any(lo <= y <= hi for lo, hi in merged)
    )
    return merged, isolated


def _intersect_line_sets(set1, set2):
    ivals1, pts1 = set1
    ivals2, pts2 = set2
    intervals = []
    points = set()
    for lo1, hi1 in ivals1:
        for lo2, hi2 in ivals2:
            lo, hi = max(lo1, lo2), min(hi1, hi2)
            if lo < hi:
                intervals.append((lo, hi))
            elif lo == hi:
                points.add(lo)
    def contains(s, y):
        ivals, pts = s
        return any(lo <= y <= hi for lo, hi in ivals) or y in pts
    for y in pts1:
        if contains(set2, y):
            points.add(y)
    for y in pts2:
        if contains(set1, y):
            points.add(y)
    return _merge_line_set(intervals, points)


def _clip_segment(p, q, fp, fq, side):
    a, b = side * fp, side * fq
    if a < 0 and b < 0:
        return None
    if a >= 0 and b >= 0:
        return (p, q)
    t = fp / (fp - fq)
    z = (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))
    return (p, z) if a >= 0 else (z, q)


def _clip_ray(v, d, fv, fd, side):
    a, s = side * fv, side * fd
    if s == 0:
        return ("ray", v, d) if a >= 0 else None
    if s > 0:
        if a >= 0:
            return ("ray", v, d)
        t0 = -fv / fd
        z = (v[0] + t0 * d[0], v[1] + t0 * d[1])
        return ("ray", z, d)
    if a < 0:
        return None
    if a == 0:
        return None
    t1 = -fv / fd
    z = (v[0] + t1 * d[0], v[1] + t1 * d[1])
    return ("seg", v, z)


def _clipped_pieces(segs, rays, geom: _LineGeometry, side):
    """Pieces of the chart weakly on one side of the line, minus on-line ones."""
    out = []
    for p, q, m in segs:
        fp, fq = geom.phi(p), geom.phi(q)
        if fp == 0 and fq == 0:
            continue
        piece = _clip_segment(p, q, fp, fq, side)
        if piece is not None and piece[0] != piece[1]:
            out.append(("seg", piece[0], piece[1], m))
    for v, d, m in rays:
        fv = geom.phi(v)
        fd = geom.dphi(d)
        if fv == 0 and fd == 0:
            continue
        res = _clip_ray(v, d, fv, fd, side)
        if res is None:
            continue
        kind, a, b = res
        if kind == "seg" and a == b:
            continue
        out.append((kind, a, b, m))
    return out


def _projection_profile(pieces, geom: _LineGeometry):
    """Pushforward weight onto the line parameter from one side's pieces."""
    prof = []
    for kind, a, b, m in pieces:
        if kind == "seg":
            d = _prim2(b[0] - a[0], b[1] - a[1])
            w = m * abs(d[geom.axis])
            if w == 0:
                continue
            lo, hi = sorted((a[geom.axis], b[geom.axis]))
            prof.append((lo, hi, w))
        else:
            d = b
            w = m * abs(d[geom.axis])
            if w == 0:
                continue
            if d[geom.axis] > 0:
                prof.append((a[geom.axis], _INF, w))
            else:
                prof.append((-_INF, a[geom.axis], w))
    return prof


def _online_profile(segs, rays, geom: _LineGeometry):
    prof = []
    for p, q, m in segs:
        if geom.phi(p) == 0 and geom.phi(q) == 0:
            lo, hi = sorted((p[geom.axis], q[geom.axis]))
            prof.append((lo, hi, m))
    for v, d, m in rays:
        if geom.phi(v) == 0 and geom.dphi(d) == 0:
            if d[geom.axis] > 0:
                prof.append((v[geom.axis], _INF, m))
            else:
                prof.append((-_INF, v[geom.axis], m))
    return prof


def _profile_value(prof, y) -> int:
    return sum(w for lo, hi, w in prof if lo < y < hi)


def _profile_breaks(prof):
    out = set()
    for lo, hi, _w in prof:
        if lo != -_INF:
            out.add(lo)
        if hi != _INF:
            out.add(hi)
    return out


def _probe(a, b):
    if a == -_INF and b == _INF:
        return Fraction(0)
    if a == -_INF:
        return b - 1
    if b == _INF:
        return a + 1
    return (a + b) / 2


# -- the glued object -------------------------------------------------------


@dataclass(frozen=True)
class GluedSegment:
    """Edge of the re-embedded curve lying on the modification line.

    Unbounded ends are None; multiplicity zero marks a phantom edge."""

    lo: Fraction | None
    hi: Fraction | None
    multiplicity: int


class ReembeddedCurve:
    """A plane curve together with the chart added by one lifting."""

    def __init__(
        self,
        lifting: Lifting,
        chart1_poly: PlanePoly,
        chart2_poly: PlanePoly,
        chart1: TropicalPlaneCurve,
        chart2: TropicalPlaneCurve,
        line_vertices: tuple[Fraction, ...],
        segments: tuple[GluedSegment, ...],
        components,
        classification: str,
    ):
        self.lifting = lifting
        self.chart1_poly = chart1_poly
        self.chart2_poly = chart2_poly
        self.chart1 = chart1
        self.chart2 = chart2
        self.line_vertices = line_vertices
        self.segments = segments
        self.components = components
        self.classification = classification

    @property
    def axes1(self) -> tuple[str, str]:
        return self.chart1_poly.vars

    @property
    def axes2(self) -> tuple[str, str]:
        return self.chart2_poly.vars

    @property
    def planar_replacement(self) -> PlanePoly:
        """The eliminant; the planar stand-in when the cycle stays visible."""
        return self.chart2_poly

    def line_point(self, param) -> tuple[Fraction, Fraction, Fraction]:
        """Ambient coordinates (first, second, lifted) of a line parameter."""
        param = Fraction(param)
        level = self.lifting.level
        if self.lifting.line == "vertical":
            return (level, param, level)
        if self.lifting.line == "horizontal":
            return (param, level, level)
        return (param + level, param, param + level)

    def verify(self) -> bool:
        """Re-run every structural check; True when all of them hold."""
        _check_reembedding(self)
        return True


def _lift_chart1(line: str, d, side) -> tuple[int, int, int]:
    if line == "vertical":
        return (d[0], d[1], d[0]) if side > 0 else (d[0], d[1], 0)
    if line == "horizontal":
        return (d[0], d[1], d[1]) if side > 0 else (d[0], d[1], 0)
    return (d[0], d[1], d[0]) if side > 0 else (d[0], d[1], d[1])


def _lift_chart2(line: str, d) -> tuple[int, int, int]:
    if line == "vertical":
        return (0, d[1], d[0])
    if line == "horizontal":
        return (d[0], 0, d[1])
    return (d[1], d[1], d[0])


def _incident_directions(segs, rays, point):
    """Primitive outgoing directions with multiplicities at a chart point."""
    out = []
    px, py = point
    for p, q, m in segs:
        if p == point:
            out.append((_prim2(q[0] - p[0], q[1] - p[1]), m))
        elif q == point:
            out.append((_prim2(p[0] - q[0], p[1] - q[1]), m))
        else:
            cross = (q[0] - p[0]) * (py - p[1]) - (q[1] - p[1]) * (px - p[0])
            if cross == 0:
                inside = (
                    min(p[0], q[0]) <= px <= max(p[0], q[0])
                    and min(p[1], q[1]) <= py <= max(p[1], q[1])
                )
                if inside:
                    d = _prim2(q[0] - p[0], q[1] - p[1])
                    out.append((d, m))
                    out.append(((-d[0], -d[1]), m))
    for v, d, m in rays:
        if v == point:
            out.append((tuple(d), m))
        else:
            cross = d[0] * (py - v[1]) - d[1] * (px - v[0])
            dot = d[0] * (px - v[0]) + d[1] * (py - v[1])
            if cross == 0 and dot > 0:
                out.append((tuple(d), m))
                out.append(((-d[0], -d[1]), m))
    return out


def _carrier_key(point, d):
    if d[0] < 0 or (d[0] == 0 and d[1] < 0):
        d = (-d[0], -d[1])
    offset = d[1] * point[0] - d[0] * point[1]
    return (d, offset)


def _beyond_line_complex(segs, rays, geom: _LineGeometry):
    """Canonical weighted 1-complex strictly beyond the line (shared cells)."""
    carriers: dict = {}
    for kind, a, b, m in _clipped_pieces(segs, rays, geom, +1):
        if kind == "seg":
            d = _prim2(b[0] - a[0], b[1] - a[1])
            key = _carrier_key(a, d)
            axis = 0 if key[0][0] else 1
            lo, hi = sorted((a[axis], b[axis]))
            carriers.setdefault(key, []).append((lo, hi, m))
        else:
            d = b
            key = _carrier_key(a, d)
            axis = 0 if key[0][0] else 1
            if d[axis] > 0:
                carriers.setdefault(key, []).append((a[axis], _INF, m))
            else:
                carriers.setdefault(key, []).append((-_INF, a[axis], m))
    canon = {}
    for key, prof in carriers.items():
        cuts = sorted(_profile_breaks(prof))
        ends = [-_INF] + cuts + [_INF]
        runs = []
        for a, b in zip(ends, ends[1:]):
            if a == b:
                continue
            w = _profile_value(prof, _probe(a, b))
            if w == 0:
                continue
            if runs and runs[-1][1] == a and runs[-1][2] == w:
                runs[-1] = (runs[-1][0], b, w)
            else:
                runs.append((a, b, w))
        if runs:
            canon[key] = tuple(runs)
    return canon


def _fraction_or_none(x):
    return None if x in (-_INF, _INF) else x


def _build_reembedding(g: PlanePoly, lifting: Lifting) -> ReembeddedCurve:
    if len(g.vars) != 2:
        raise ValueError("re-embedding starts from a two-variable polynomial")
    if lifting.line == "skew":
        if lifting.var != g.vars[0] or lifting.companion != g.vars[1]:
            raise ValueError(
                "skew liftings pin the first variable against the second"
            )
    elif lifting.line == "vertical":
        if lifting.var != g.vars[0]:
            raise ValueError("vertical liftings pin the first variable")
    else:
        if lifting.var != g.vars[1]:
            raise ValueError("horizontal liftings pin the second variable")
    if lifting.new_var in g.vars:
        raise ValueError("the lifted variable needs a fresh name")
    gt = lifting.applied_to(g)
    if not gt:
        raise UnsupportedError("the lifting eliminates the polynomial entirely")
    curve1 = TropicalPlaneCurve.of_polynomial(g)
    curve2 = TropicalPlaneCurve.of_polynomial(gt)
    if curve1.subdivision.degenerate or curve2.subdivision.degenerate:
        raise UnsupportedError("degenerate chart; support lies on a line")
    geom = _LineGeometry(lifting.line, lifting.level)
    pieces1 = _chart_pieces(curve1)
    pieces2 = _chart_pieces(curve2)
    glued = _glue_over_line(pieces1, pieces2, geom)
    components, segments, vertices = glued
    classification = _classify(g, gt, curve2, pieces2, geom, lifting)
    rc = ReembeddedCurve(
        lifting,
        g,
        gt,
        curve1,
        curve2,
        vertices,
        segments,
        components,
        classification,
    )
    _check_reembedding(rc)
    return rc


def _glue_over_line(pieces1, pieces2, geom: _LineGeometry):
    segs1, rays1 = pieces1
    segs2, rays2 = pieces2
    slice1 = _slice_on_line(segs1, rays1, geom)
    slice2 = _slice_on_line(segs2, rays2, geom)
    ivals, pts = _intersect_line_sets(slice1, slice2)
    half1 = _projection_profile(_clipped_pieces(segs1, rays1, geom, -1), geom)
    half2 = _projection_profile(_clipped_pieces(segs2, rays2, geom, -1), geom)
    vert1 = _online_profile(segs1, rays1, geom)
    vert2 = _online_profile(segs2, rays2, geom)
    breaks = set()
    for lo, hi in ivals:
        if lo != -_INF:
            breaks.add(lo)
        if hi != _INF:
            breaks.add(hi)
    breaks |= set(pts)
    for prof in (half1, half2, vert1, vert2):
        breaks |= _profile_breaks(prof)
    cuts = [-_INF] + sorted(breaks) + [_INF]
    raw = []
    for a, b in zip(cuts, cuts[1:]):
        if a == b:
            continue
        y = _probe(a, b)
        m1 = _profile_value(vert1, y) - _profile_value(half2, y)
        m2 = _profile_value(vert2, y) - _profile_value(half1, y)
        if m1 != m2:
            raise AssertionError(
                "charts disagree on the line multiplicity over (%s, %s): %s vs %s"
                % (a, b, m1, m2)
            )
        if m1 < 0:
            raise AssertionError(
                "negative line multiplicity over (%s, %s)" % (a, b)
            )
        inside = any(lo <= y <= hi for lo, hi in ivals)
        if not inside:
            if m1 != 0:
                raise AssertionError(
                    "chart mass over the line misses the glued locus at %s" % y
                )
            continue
        raw.append((a, b, m1))
    merged = []
    for a, b, m in raw:
        if merged and merged[-1][1] == a and merged[-1][2] == m:
            merged[-1] = (merged[-1][0], b, m)
        else:
            merged.append((a, b, m))
    segments = tuple(
        GluedSegment(_fraction_or_none(a), _fraction_or_none(b), m)
        for a, b, m in merged
    )
    components = tuple(
        (_fraction_or_none(lo), _fraction_or_none(hi)) for lo, hi in ivals
    ) + tuple((y, y) for y in pts)
    vertex_set = set(pts)
    for lo, hi in ivals:
        if lo != -_INF:
            vertex_set.add(lo)
        if hi != _INF:
            vertex_set.add(hi)
    vertices = tuple(sorted(vertex_set))
    return components, segments, vertices


def _classify(g, gt, curve2, pieces2, geom: _LineGeometry, lifting: Lifting) -> str:
    segs2, rays2 = pieces2
    clipped = _clipped_pieces(segs2, rays2, geom, -1)
    open_vertices = [v for v in curve2.vertices if geom.phi(v) < 0]
    special = bool(open_vertices)
    for kind, a, b, m in clipped:
        if kind == "seg":
            special = True
        elif b[geom.axis] != 0:
            special = True
    if not special:
        return "generic"
    if g.is_cubic():
        cycle = cubic_cycle(g)
        if cycle is not None and visible_side(cycle, lifting.line, lifting.level):
            try:
                new_cycle = cubic_cycle(gt)
            except ValueError:
                new_cycle = None
            if new_cycle is None:
                return "cycle-broken"
    for kind, a, b, m in clipped:
        if kind != "seg":
            continue
        if a[geom.axis] != b[geom.axis]:
            continue
        if geom.phi(a) == 0 or geom.phi(b) == 0:
            return "decontraction"
    return "unfolding"


def _check_reembedding(rc: ReembeddedCurve) -> None:
    geom = _LineGeometry(rc.lifting.line, rc.lifting.level)
    pieces1 = _chart_pieces(rc.chart1)
    pieces2 = _chart_pieces(rc.chart2)
    if not rc.chart1.check_balancing():
        raise AssertionError("chart 1 is not balanced")
    if not rc.chart2.check_balancing():
        raise AssertionError("chart 2 is not balanced")
    # the shared cells beyond the line must agree between the charts
    beyond1 = _beyond_line_complex(*pieces1, geom)
    beyond2 = _beyond_line_complex(*pieces2, geom)
    if beyond1 != beyond2:
        raise AssertionError("charts disagree beyond the modification line")
    # the reconciliation must reproduce itself
    _glue_over_line(pieces1, pieces2, geom)
    _check_line_stars(rc, pieces1, pieces2, geom)


def _check_line_stars(rc: ReembeddedCurve, pieces1, pieces2, geom) -> None:
    segs1, rays1 = pieces1
    segs2, rays2 = pieces2
    line = rc.lifting.line
    line_dir = _LINE_DIR3[line]
    params = set(rc.line_vertices)
    for seg in rc.segments:
        if seg.lo is not None:
            params.add(seg.lo)
        if seg.hi is not None:
            params.add(seg.hi)
    for y in sorted(params):
        total = [0, 0, 0]
        point = geom.line_point(y)
        for d, m in _incident_directions(segs1, rays1, point):
            s = geom.dphi(d)
            if s == 0:
                continue
            lift = _lift_chart1(line, d, 1 if s > 0 else -1)
            for k in range(3):
                total[k] += m * lift[k]
        for d, m in _incident_directions(segs2, rays2, point):
            s = geom.dphi(d)
            if s >= 0:
                continue
            lift = _lift_chart2(line, d)
            for k in range(3):
                total[k] += m * lift[k]
        for seg in rc.segments:
            if seg.lo == y:
                for k in range(3):
                    total[k] += seg.multiplicity * line_dir[k]
            if seg.hi == y:
                for k in range(3):
                    total[k] -= seg.multiplicity * line_dir[k]
        if total != [0, 0, 0]:
            raise AssertionError(
                "glued vertex at parameter %s is not balanced: %s" % (y, total)
            )


def reembed(g: PlanePoly, lifting: Lifting) -> ReembeddedCurve:
    """Glue the chart of one vertical or horizontal lifting onto the curve."""
    if lifting.line == "skew":
        raise ValueError("slope-one lines go through reembed_skew")
    return _build_reembedding(g, lifting)


def reembed_skew(g: PlanePoly, lifting: Lifting) -> ReembeddedCurve:
    """Glue the chart of a slope-one lifting onto the curve."""
    if lifting.line != "skew":
        raise ValueError("reembed_skew expects a skew lifting")
    return _build_reembedding(g, lifting)


def visible_side(cycle: CycleDescriptor, line_type: str, level) -> bool:
    """Whether the cycle survives replacing the plane by the new chart.

    The kept side is the closed halfplane on which the modification acts by
    a shear; touching the line still counts.  Slope-one lines always keep
    the cycle after exchanging the two coordinates, so they return True.
    """
    level = Fraction(level)
    if line_type == "skew":
        return True
    if line_type == "vertical":
        return all(p[0] >= level for p in cycle.points)
    if line_type == "horizontal":
        return all(p[1] >= level for p in cycle.points)
    raise ValueError("unknown line type %r" % (line_type,))


# -- stacked charts in up to four ambient coordinates -----------------------


@dataclass(frozen=True)
class ChartStack:
    """A plane curve with up to three accumulated liftings.

    Every variable is an affine expression in the two base variables, so any
    independent pair of coordinates gives a planar chart by substitution.
    """

    poly: PlanePoly
    liftings: tuple[Lifting, ...] = ()

    def __post_init__(self):
        if len(self.poly.vars) != 2:
            raise ValueError("chart stacks start from a two-variable polynomial")
        if len(self.liftings) > 3:
            raise UnsupportedError("chart stacks support at most three liftings")

    def push(self, lifting: Lifting) -> ChartStack:
        if len(self.liftings) >= 3:
            raise UnsupportedError("chart stacks support at most three liftings")
        known = self.variable_names()
        if lifting.var not in known:
            raise ValueError("lifting targets unknown variable %r" % lifting.var)
        if lifting.companion is not None and lifting.companion not in known:
            raise ValueError(
                "lifting companion %r is not on the stack" % lifting.companion
            )
        if lifting.new_var in known:
            raise ValueError("variable %r already on the stack" % lifting.new_var)
        return ChartStack(self.poly, self.liftings + (lifting,))

    def variable_names(self) -> tuple[str, ...]:
        return self.poly.vars + tuple(lf.new_var for lf in self.liftings)

    def affine_forms(self):
        """Each variable as (constant, coefficient of x, coefficient of y)."""
        zero = PuiseuxElement.zero()
        one = PuiseuxElement.one()
        x, y = self.poly.vars
        forms = {x: (zero, one, zero), y: (zero, zero, one)}
        for lf in self.liftings:
            c, cx, cy = forms[lf.var]
            shift = lf.shift
            if lf.line == "skew":
                oc, ox, oy = forms[lf.companion]
                forms[lf.new_var] = (
                    c + shift * oc,
                    cx + shift * ox,
                    cy + shift * oy,
                )
            else:
                forms[lf.new_var] = (c + shift, cx, cy)
        return forms

    def project_polynomial(self, keep: tuple[str, str]) -> PlanePoly:
        """The curve's equation in the plane of two kept coordinates."""
        keep = tuple(keep)
        if len(keep) != 2 or keep[0] == keep[1]:
            raise ValueError("keep exactly two distinct coordinates")
        forms = self.affine_forms()
        for name in keep:
            if name not in forms:
                raise ValueError("unknown coordinate %r" % (name,))
        c1, a11, a12 = forms[keep[0]]
        c2, a21, a22 = forms[keep[1]]
        det = a11 * a22 - a12 * a21
        if not det:
            raise UnsupportedError(
                "kept coordinates are affinely dependent on the stack"
            )
        if not det.is_single_term():
            raise UnsupportedError(
                "projection needs a single-term determinant to invert"
            )
        x, y = self.poly.vars
        inv = (
            (a22 / det, -(a12 / det)),
            (-(a21 / det), a11 / det),
        )
        images = {
            x: (
                inv[0][0] * (-c1) + inv[0][1] * (-c2),
                {keep[0]: inv[0][0], keep[1]: inv[0][1]},
            ),
            y: (
                inv[1][0] * (-c1) + inv[1][1] * (-c2),
                {keep[0]: inv[1][0], keep[1]: inv[1][1]},
            ),
        }
        return self.poly.affine_compose(keep, images)

    def project_curve(self, keep: tuple[str, str]) -> TropicalPlaneCurve:
        return TropicalPlaneCurve.of_polynomial(self.project_polynomial(keep))

    def describe(self) -> list[str]:
        return [
            "%s = %s" % (lf.new_var, lf.describe()) for lf in self.liftings
        ]


def multi_chart_project(stack: ChartStack, keep) -> TropicalPlaneCurve:
    """Tropical curve seen in the planar chart of two kept coordinates."""
    return stack.project_curve(tuple(keep))
