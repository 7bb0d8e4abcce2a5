"""Local discriminants of marked cells and the cubic j-invariant valuation.

Cell discriminants are symbolic integer polynomials in coefficient variables
labeled by the cell's support points.  Supported configuration families (up
to an internally computed unimodular affine identification):

  * defective configurations (pyramids, short segments): constant 1;
  * height-1 trapezoids: the Sylvester resultant of the two base
    polynomials h1 (degree n) and h2 (degree s <= n), with the closed
    alternating-sum expansion available for s = 1;
  * segments of lattice length m: the univariate discriminant of the edge
    polynomial, with structural zeros for unmarked lattice points and
    extraneous monomial factors stripped;
  * the five-point triangle dual to a vertex carrying a multiplicity-2 end
    (base a, b, c with interior points d and q above the middle);
  * the full conic and cubic coefficient triangles.

The j-invariant valuation of a plane cubic is val(A) - val(Delta) with
A the cube of the quartic invariant; constant normalizations cancel in
valuations.  A strictly larger discriminant valuation than the one
predicted by the coefficient heights flags initial-term cancellation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .cubic_invariants import (
    AFFINE_ORDER,
    cubic_discriminant,
    discriminant_table,
    quartic_invariant,
    table_valuation,
)
from .polynomials import PlanePoly
from .series import FieldElem, UnsupportedError
from .subdivisions import (
    MarkedCell,
    convex_hull,
    coords_in_basis,
    lattice_basis,
    lattice_length,
    primitive_vector,
)

Point = tuple[int, int]
Monomial = tuple[tuple[Point, int], ...]


class CoeffPoly:
    """Integer polynomial in coefficient variables labeled by support points."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        self.terms: dict[Monomial, int] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    self.terms[m] = c

    @classmethod
    def variable(cls, point: Point) -> CoeffPoly:
        return cls({((tuple(point), 1),): 1})

    @classmethod
    def const(cls, c: int) -> CoeffPoly:
        return cls({(): c})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoeffPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __add__(self, other: CoeffPoly) -> CoeffPoly:
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            elif m in out:
                del out[m]
        res = CoeffPoly()
        res.terms = out
        return res

    def __neg__(self) -> CoeffPoly:
        res = CoeffPoly()
        res.terms = {m: -c for m, c in self.terms.items()}
        return res

    def __sub__(self, other: CoeffPoly) -> CoeffPoly:
        return self + (-other)

    def __mul__(self, other: CoeffPoly | int) -> CoeffPoly:
        if isinstance(other, int):
            res = CoeffPoly()
            res.terms = {m: c * other for m, c in self.terms.items()} if other else {}
            return res
        out: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                merged: dict[Point, int] = dict(m1)
                for p, e in m2:
                    merged[p] = merged.get(p, 0) + e
                key = tuple(sorted(merged.items()))
                v = out.get(key, 0) + c1 * c2
                if v:
                    out[key] = v
                elif key in out:
                    del out[key]
        res = CoeffPoly()
        res.terms = out
        return res

    __rmul__ = __mul__

    def variables(self) -> set[Point]:
        out = set()
        for m in self.terms:
            for p, _e in m:
                out.add(p)
        return out

    def eval_at(self, values: Mapping[Point, object]) -> FieldElem:
        """Evaluate at the given coefficients; missing variables count as zero."""
        total = FieldElem.coerce(0)
        powers: dict[tuple[Point, int], FieldElem] = {}
        for m, c in self.terms.items():
            term = FieldElem.coerce(c)
            for p, e in m:
                v = values.get(p)
                if v is None:
                    term = None
                    break
                key = (p, e)
                if key not in powers:
                    powers[key] = FieldElem.coerce(v) ** e
                term = term * powers[key]
            if term is not None:
                total = total + term
        return total

    def strip_monomial_content(self) -> CoeffPoly:
        """Divide out variables occurring in every monomial (extraneous factors)."""
        if not self.terms:
            return self
        common: dict[Point, int] | None = None
        for m in self.terms:
            powers = dict(m)
            if common is None:
                common = powers
            else:
                common = {
                    p: min(e, powers[p]) for p, e in common.items() if p in powers
                }
            if not common:
                return self
        out: dict[Monomial, int] = {}
        for m, c in self.terms.items():
            reduced = {p: e for p, e in m}
            for p, e in common.items():
                reduced[p] -= e
                if reduced[p] == 0:
                    del reduced[p]
            out[tuple(sorted(reduced.items()))] = c
        res = CoeffPoly()
        res.terms = out
        return res

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            c = self.terms[m]
            mono = "*".join(
                "c%r" % (p,) if e == 1 else "c%r^%d" % (p, e) for p, e in m
            )
            if mono:
                parts.append("%+d*%s" % (c, mono))
            else:
                parts.append("%+d" % c)
        return " ".join(parts)

    __repr__ = __str__


def _det(matrix: list[list[CoeffPoly]]) -> CoeffPoly:
    """Determinant by cofactor expansion along the sparsest row."""
    n = len(matrix)
    if n == 0:
        return CoeffPoly.const(1)
    if n == 1:
        return matrix[0][0]
    row = min(range(n), key=lambda i: sum(1 for x in matrix[i] if x))
    total = CoeffPoly()
    for col in range(n):
        entry = matrix[row][col]
        if not entry:
            continue
        minor = [
            [matrix[i][j] for j in range(n) if j != col]
            for i in range(n)
            if i != row
        ]
        cof = entry * _det(minor)
        if (row + col) % 2:
            cof = -cof
        total = total + cof
    return total


def sylvester_resultant(f: list[CoeffPoly], g: list[CoeffPoly]) -> CoeffPoly:
    """Resultant of f (degree n) and g (degree s) from coefficient lists."""
    n = len(f) - 1
    s = len(g) - 1
    if n < 0 or s < 0:
        raise ValueError("resultant needs nonempty coefficient lists")
    size = n + s
    zero = CoeffPoly()
    matrix = [[zero] * size for _ in range(size)]
    for r in range(s):
        for k in range(n + 1):
            matrix[r][r + (n - k)] = f[k]
    for r in range(n):
        for k in range(s + 1):
            matrix[s + r][r + (s - k)] = g[k]
    return _det(matrix)


def univariate_discriminant(h: list[CoeffPoly]) -> CoeffPoly:
    """disc(h) = (-1)^(m(m-1)/2) Res(h, h') / lc(h), symbolically."""
    m = len(h) - 1
    if m < 2:
        return CoeffPoly.const(1)
    deriv = [h[k] * k for k in range(1, m + 1)]
    res = sylvester_resultant(h, deriv)
    lead = h[m]
    if len(lead.terms) != 1:
        raise ValueError("leading coefficient must be a single variable")
    ((lead_mono, lead_c),) = lead.terms.items()
    out: dict[Monomial, int] = {}
    for mono, c in res.terms.items():
        reduced = dict(mono)
        for p, e in lead_mono:
            if reduced.get(p, 0) < e:
                raise ValueError("resultant is not divisible by the leading coefficient")
            reduced[p] -= e
            if reduced[p] == 0:
                del reduced[p]
        q, r = divmod(c, lead_c)
        if r:
            raise ValueError("resultant is not divisible by the leading coefficient")
        out[tuple(sorted(reduced.items()))] = q
    disc = CoeffPoly()
    disc.terms = out
    if (m * (m - 1) // 2) % 2:
        disc = -disc
    return disc


# -- configuration families ------------------------------------------------


def _config_points(cell) -> list[Point]:
    if isinstance(cell, MarkedCell):
        return sorted(cell.marked)
    return sorted(tuple(p) for p in cell)


def _affine_rank(points: list[Point]) -> int:
    if len(points) <= 1:
        return 0
    p0 = points[0]
    dirs = [(p[0] - p0[0], p[1] - p0[1]) for p in points[1:]]
    if all(d == (0, 0) for d in dirs):
        return 0
    first = next(d for d in dirs if d != (0, 0))
    for d in dirs:
        if first[0] * d[1] - first[1] * d[0] != 0:
            return 2
    return 1


def is_defective(cell) -> bool:
    """Pyramids (2-D) and segments with at most two points (1-D) have trivial
    discriminant."""
    points = _config_points(cell)
    rank = _affine_rank(points)
    if rank == 0:
        return True
    if rank == 1:
        return len(points) <= 2
    for apex in points:
        rest = [p for p in points if p != apex]
        if _affine_rank(rest) <= 1:
            return True
    return False


@dataclass(frozen=True)
class TrapezoidData:
    """Height-1 trapezoid configuration read off along a base direction.

    h1 runs along the longer base (degree n), h2 along the shorter (degree
    s); missing interior lattice points are None (structural zeros).  The
    tag records the direction of the dual line through the vertex:
    horizontal bases mean a vertical line, vertical bases a horizontal
    line, antidiagonal bases a slope-one line.
    """

    direction: tuple[int, int]
    normal: tuple[int, int]
    h1_points: tuple[Point | None, ...]
    h2_points: tuple[Point | None, ...]
    offset_h1: int
    offset_h2: int
    tag: str

    @property
    def n(self) -> int:
        return len(self.h1_points) - 1

    @property
    def s(self) -> int:
        return len(self.h2_points) - 1


def _dual_coordinate(u: tuple[int, int]) -> tuple[int, int]:
    """Integer functional w with <w, u> = 1 for primitive u."""
    a, b = u
    g, x, y = _ext_gcd(a, b)
    assert g == 1
    return (x, y)


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        if a < 0:
            return (-a, -1, 0)
        return (a, 1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return (g, y, x - (a // b) * y)


def _base_tag(u: tuple[int, int]) -> str:
    if u in ((1, 0), (-1, 0)):
        return "vertical"
    if u in ((0, 1), (0, -1)):
        return "horizontal"
    if u in ((1, -1), (-1, 1)):
        return "skew"
    return "other"


def trapezoid_orientations(cell) -> list[TrapezoidData]:
    """All readings of the configuration as a height-1 trapezoid."""
    points = _config_points(cell)
    if _affine_rank(points) != 2:
        return []
    hull = convex_hull(points)
    seen = set()
    out = []
    for k in range(len(hull)):
        p, q = hull[k], hull[(k + 1) % len(hull)]
        u = primitive_vector((q[0] - p[0], q[1] - p[1]))
        if u[0] < 0 or (u[0] == 0 and u[1] < 0):
            u = (-u[0], -u[1])
        if u in seen:
            continue
        seen.add(u)
        n_vec = (-u[1], u[0])
        levels = sorted({n_vec[0] * pt[0] + n_vec[1] * pt[1] for pt in points})
        if len(levels) != 2 or levels[1] - levels[0] != 1:
            continue
        lo = [pt for pt in points if n_vec[0] * pt[0] + n_vec[1] * pt[1] == levels[0]]
        hi = [pt for pt in points if n_vec[0] * pt[0] + n_vec[1] * pt[1] == levels[1]]
        if len(lo) < 2 or len(hi) < 2:
            continue
        lo_len = lattice_length(min(lo), max(lo))
        hi_len = lattice_length(min(hi), max(hi))
        if lo_len < 1 or hi_len < 1:
            continue
        if hi_len > lo_len:
            # keep h2 (the shorter base) on the hi side by flipping the normal
            n_vec = (-n_vec[0], -n_vec[1])
            lo, hi = hi, lo
            lo_len, hi_len = hi_len, lo_len
        w = _dual_coordinate(u)
        out.append(
            TrapezoidData(
                direction=u,
                normal=n_vec,
                h1_points=_base_slots(lo, u, w, lo_len),
                h2_points=_base_slots(hi, u, w, hi_len),
                offset_h1=min(w[0] * pt[0] + w[1] * pt[1] for pt in lo),
                offset_h2=min(w[0] * pt[0] + w[1] * pt[1] for pt in hi),
                tag=_base_tag(u),
            )
        )
    return out


def _base_slots(base: list[Point], u, w, length) -> tuple[Point | None, ...]:
    tau = {w[0] * pt[0] + w[1] * pt[1]: pt for pt in base}
    start = min(tau)
    slots = []
    for k in range(length + 1):
        slots.append(tau.get(start + k))
    assert slots[0] is not None and slots[-1] is not None
    return tuple(slots)


def eq3_expansion(data: TrapezoidData) -> CoeffPoly:
    """Closed form a0*b1^n - a1*b0*b1^(n-1) + ... for a length-one short base."""
    if data.s != 1:
        raise ValueError("the closed form needs a short base of lattice length one")
    b0 = CoeffPoly.variable(data.h2_points[0])
    b1 = CoeffPoly.variable(data.h2_points[1])
    n = data.n
    total = CoeffPoly()
    b0_pow = CoeffPoly.const(1)
    b1_pows = [CoeffPoly.const(1)]
    for _ in range(n):
        b1_pows.append(b1_pows[-1] * b1)
    for i in range(n + 1):
        pt = data.h1_points[i]
        if pt is not None:
            term = CoeffPoly.variable(pt) * b0_pow * b1_pows[n - i]
            if i % 2:
                term = -term
            total = total + term
        b0_pow = b0_pow * b0
    return total


def _base_poly(slots: Iterable[Point | None]) -> list[CoeffPoly]:
    return [
        CoeffPoly.variable(pt) if pt is not None else CoeffPoly() for pt in slots
    ]


@dataclass(frozen=True)
class CellDiscriminant:
    """Symbolic discriminant of a marked cell with its family tag."""

    poly: CoeffPoly
    family: str
    defective: bool
    data: TrapezoidData | None = None

    def eval_at(self, values: Mapping[Point, object]) -> FieldElem:
        return self.poly.eval_at(values)


def trapezoid_discriminant(cell) -> CellDiscriminant:
    """Sylvester resultant of the two base polynomials of a trapezoid cell."""
    if is_defective(cell):
        return CellDiscriminant(CoeffPoly.const(1), "defective", True)
    readings = trapezoid_orientations(cell)
    if not readings:
        raise UnsupportedError(
            "cell is not a height-one trapezoid (up to unimodular change)"
        )
    data = readings[0]
    # shorter base first: this orientation of the resultant reproduces the
    # alternating closed form a0*b1^n - a1*b0*b1^(n-1) + ... exactly
    res = sylvester_resultant(_base_poly(data.h2_points), _base_poly(data.h1_points))
    return CellDiscriminant(res, "trapezoid", False, data)


def edge_discriminant(cell) -> CellDiscriminant:
    """Discriminant of the univariate polynomial supported on a segment."""
    points = _config_points(cell)
    if _affine_rank(points) != 1:
        raise ValueError("edge discriminant needs a one-dimensional configuration")
    if len(points) <= 2:
        return CellDiscriminant(CoeffPoly.const(1), "defective", True)
    lo, hi = points[0], points[-1]
    u = primitive_vector((hi[0] - lo[0], hi[1] - lo[1]))
    m = lattice_length(lo, hi)
    slot = {}
    for pt in points:
        step = (pt[0] - lo[0], pt[1] - lo[1])
        k = step[0] // u[0] if u[0] else step[1] // u[1]
        slot[k] = pt
    # a common gap divisor means the configuration lives in a sublattice of
    # the segment; the discriminant is that of the reparametrized polynomial
    g = 0
    for k in slot:
        g = math.gcd(g, k)
    if g > 1:
        slot = {k // g: pt for k, pt in slot.items()}
        m //= g
    h = [CoeffPoly.variable(slot[k]) if k in slot else CoeffPoly() for k in range(m + 1)]
    disc = univariate_discriminant(h).strip_monomial_content()
    if not disc.variables():
        return CellDiscriminant(CoeffPoly.const(1), "defective", True)
    return CellDiscriminant(disc, "segment", False)


DOUBLE_END_TRIANGLE = ((0, 0), (1, 0), (2, 0), (1, 1), (1, 2))
CONIC_TRIANGLE = ((0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (0, 2))
CUBIC_TRIANGLE = tuple(sorted((i, j) for i in range(4) for j in range(4 - i)))


def _affine_match(points: list[Point], target: tuple[Point, ...]):
    """Unimodular affine map sending the configuration onto the target.

    Returns the label mapping {config point: target point} or None.
    """
    if len(points) != len(target):
        return None
    tset = set(target)
    p0 = points[0]
    others = [p for p in points[1:]]
    spanning = None
    for q1 in others:
        for q2 in others:
            d1 = (q1[0] - p0[0], q1[1] - p0[1])
            d2 = (q2[0] - p0[0], q2[1] - p0[1])
            if d1[0] * d2[1] - d1[1] * d2[0] != 0:
                spanning = (q1, q2, d1, d2)
                break
        if spanning:
            break
    if spanning is None:
        return None
    q1, q2, d1, d2 = spanning
    det = d1[0] * d2[1] - d1[1] * d2[0]
    for t0 in target:
        for t1 in target:
            for t2 in target:
                e1 = (t1[0] - t0[0], t1[1] - t0[1])
                e2 = (t2[0] - t0[0], t2[1] - t0[1])
                if e1[0] * e2[1] - e1[1] * e2[0] not in (det, -det):
                    continue
                # solve M d1 = e1, M d2 = e2 over the integers
                m00 = e1[0] * d2[1] - e2[0] * d1[1]
                m01 = e2[0] * d1[0] - e1[0] * d2[0]
                m10 = e1[1] * d2[1] - e2[1] * d1[1]
                m11 = e2[1] * d1[0] - e1[1] * d2[0]
                if any(v % det for v in (m00, m01, m10, m11)):
                    continue
                m00, m01, m10, m11 = (v // det for v in (m00, m01, m10, m11))
                if m00 * m11 - m01 * m10 not in (1, -1):
                    continue
                mapping = {}
                ok = True
                for pt in points:
                    dx, dy = pt[0] - p0[0], pt[1] - p0[1]
                    img = (t0[0] + m00 * dx + m01 * dy, t0[1] + m10 * dx + m11 * dy)
                    if img not in tset or img in mapping.values():
                        ok = False
                        break
                    mapping[pt] = img
                if ok:
                    return mapping
    return None


def _relabel(table: Mapping[Monomial, int], inverse: Mapping[Point, Point]) -> CoeffPoly:
    out = CoeffPoly()
    for mono, c in table.items():
        key = tuple(sorted((inverse[p], e) for p, e in mono))
        out.terms[key] = out.terms.get(key, 0) + c
    out.terms = {m: c for m, c in out.terms.items() if c}
    return out


def _double_end_triangle_poly() -> CoeffPoly:
    a = CoeffPoly.variable((0, 0))
    b = CoeffPoly.variable((1, 0))
    c = CoeffPoly.variable((2, 0))
    d = CoeffPoly.variable((1, 1))
    q = CoeffPoly.variable((1, 2))
    inner = d * d - 4 * (b * q)
    return inner * inner - 64 * (a * c * (q * q))


def _conic_triangle_poly() -> CoeffPoly:
    c00 = CoeffPoly.variable((0, 0))
    c10 = CoeffPoly.variable((1, 0))
    c20 = CoeffPoly.variable((2, 0))
    c01 = CoeffPoly.variable((0, 1))
    c11 = CoeffPoly.variable((1, 1))
    c02 = CoeffPoly.variable((0, 2))
    return (
        4 * (c20 * c02 * c00)
        + c11 * c10 * c01
        - c20 * (c01 * c01)
        - c02 * (c10 * c10)
        - c00 * (c11 * c11)
    )


def _lattice_normal_form(points: list[Point]):
    """Coordinates of a rank-2 configuration in a basis of its own difference
    lattice, or None when the differences already generate the full lattice.

    The discriminant only depends on the configuration up to affine
    isomorphism of the lattice generated by its differences, so families can
    be matched after this change of coordinates.  The raw family formulas are
    not invariant: on a configuration of lattice index k they return the k-th
    power of the discriminant.  Returns (normalized points, {new: old}) so
    variables can keep their original labels.
    """
    p0 = points[0]
    diffs = [[p[0] - p0[0], p[1] - p0[1]] for p in points]
    basis = lattice_basis(diffs)
    if abs(basis[0][0] * basis[1][1] - basis[0][1] * basis[1][0]) == 1:
        return None
    norm = []
    back = {}
    for p, d in zip(points, diffs):
        c = coords_in_basis(d, basis)
        q = (int(c[0]), int(c[1]))
        norm.append(q)
        back[q] = p
    return norm, back


_CELL_DISC_CACHE: dict[tuple[Point, ...], CellDiscriminant] = {}


def cell_discriminant(cell) -> CellDiscriminant:
    """Symbolic discriminant of a marked cell, routed by configuration family.

    Results are memoized by the point configuration; callers must treat the
    returned polynomial as read-only.
    """
    points = _config_points(cell)
    key = tuple(points)
    hit = _CELL_DISC_CACHE.get(key)
    if hit is not None:
        return hit
    out = _cell_discriminant_fresh(points)
    _CELL_DISC_CACHE[key] = out
    return out


def _cell_discriminant_fresh(points: list[Point]) -> CellDiscriminant:
    rank = _affine_rank(points)
    if rank <= 1:
        if rank == 1 and len(points) > 2:
            return edge_discriminant(points)
        return CellDiscriminant(CoeffPoly.const(1), "defective", True)
    if is_defective(points):
        return CellDiscriminant(CoeffPoly.const(1), "defective", True)
    normal = _lattice_normal_form(points)
    if normal is not None:
        norm_points, back = normal
        inner = cell_discriminant(norm_points)
        return CellDiscriminant(
            _relabel(inner.poly.terms, back), inner.family, inner.defective
        )
    readings = trapezoid_orientations(points)
    if readings:
        data = readings[0]
        res = sylvester_resultant(
            _base_poly(data.h2_points), _base_poly(data.h1_points)
        )
        return CellDiscriminant(res, "trapezoid", False, data)
    for family, table_poly in (
        (DOUBLE_END_TRIANGLE, _double_end_triangle_poly),
        (CONIC_TRIANGLE, _conic_triangle_poly),
    ):
        mapping = _affine_match(points, family)
        if mapping:
            inverse = {img: pt for pt, img in mapping.items()}
            return CellDiscriminant(
                _relabel(table_poly().terms, inverse),
                "double-end-triangle" if family is DOUBLE_END_TRIANGLE else "conic",
                False,
            )
    mapping = _affine_match(points, CUBIC_TRIANGLE)
    if mapping:
        inverse = {img: pt for pt, img in mapping.items()}
        table = {
            tuple((AFFINE_ORDER[i], e) for i, e in enumerate(key) if e): c
            for key, c in discriminant_table().items()
        }
        return CellDiscriminant(_relabel(table, inverse), "cubic", False)
    raise UnsupportedError(
        "A-discriminant of this cell shape is not supported: %r" % (points,)
    )


def initial_values(g: PlanePoly, points: Iterable[Point]) -> dict[Point, FieldElem]:
    out = {}
    for p in points:
        c = g.coefficient(p)
        if c:
            out[tuple(p)] = c.init_t()
    return out


def vanishes_at_init(g: PlanePoly, cell) -> bool:
    """Does the cell's discriminant vanish at g's initial coefficients?"""
    disc = cell_discriminant(cell)
    if disc.defective:
        return False
    values = initial_values(g, disc.poly.variables())
    return not disc.eval_at(values)


# -- cubic j-invariant -----------------------------------------------------


@dataclass(frozen=True)
class CubicJInfo:
    """Valuation of the j-invariant with genericity bookkeeping."""

    valuation: object
    flag: str
    status: str
    quartic_valuation: object
    discriminant_valuation: Fraction
    predicted_discriminant_valuation: object

    @property
    def bad_reduction(self) -> bool:
        return self.status == "ok" and self.valuation < 0


def cubic_j_valuation(g: PlanePoly) -> CubicJInfo:
    """val(j) = 3*val(S) - val(Delta) for a plane cubic over Puiseux series."""
    disc = cubic_discriminant(g)
    if not disc:
        raise UnsupportedError("singular cubic: the discriminant vanishes identically")
    dval = disc.val()
    vals = {tuple(e): c.val() for e, c in g.coeffs.items()}
    predicted = table_valuation(discriminant_table(), vals)
    assert dval >= predicted
    flag = "generic" if dval == predicted else "non-generic"
    s = quartic_invariant(g)
    if not s:
        return CubicJInfo(
            valuation=math.inf,
            flag=flag,
            status="j-invariant valuation nonnegative/undetermined sign",
            quartic_valuation=math.inf,
            discriminant_valuation=dval,
            predicted_discriminant_valuation=predicted,
        )
    return CubicJInfo(
        valuation=3 * s.val() - dval,
        flag=flag,
        status="ok",
        quartic_valuation=s.val(),
        discriminant_valuation=dval,
        predicted_discriminant_valuation=predicted,
    )


# ---------------------------------------------------------------------------
# Initial forms of the ambient discriminant over a regular subdivision


def _initial_form_by_weight(
    poly: CoeffPoly, weights: Mapping[Point, Fraction]
) -> CoeffPoly:
    """Terms of minimal total weight, each variable weighted by its point."""
    best: Fraction | None = None
    keep: dict[Monomial, int] = {}
    for m, c in poly.terms.items():
        wgt = sum((Fraction(e) * weights[p] for p, e in m), Fraction(0))
        if best is None or wgt < best:
            best = wgt
            keep = {m: c}
        elif wgt == best:
            keep[m] = c
    res = CoeffPoly()
    res.terms = dict(keep)
    return res


def _monomial_content(poly: CoeffPoly) -> dict[Point, int]:
    common: dict[Point, int] | None = None
    for m in poly.terms:
        powers = dict(m)
        if common is None:
            common = powers
        else:
            common = {p: min(e, powers[p]) for p, e in common.items() if p in powers}
        if not common:
            return {}
    return common or {}


def _primitive_form(poly: CoeffPoly) -> tuple[CoeffPoly, int, dict[Point, int]]:
    """Split poly = content * monomial * primitive.

    The primitive part has coprime integer coefficients and a positive
    coefficient on its sorted-first monomial; the signed content carries the
    leftover sign.
    """
    if not poly.terms:
        raise ZeroDivisionError("zero polynomial has no primitive form")
    mono = _monomial_content(poly)
    stripped: dict[Monomial, int] = {}
    for m, c in poly.terms.items():
        reduced = dict(m)
        for p, e in mono.items():
            reduced[p] -= e
            if not reduced[p]:
                del reduced[p]
        stripped[tuple(sorted(reduced.items()))] = c
    content = 0
    for c in stripped.values():
        content = math.gcd(content, abs(c))
    if stripped[min(stripped)] < 0:
        content = -content
    res = CoeffPoly()
    res.terms = {m: c // content for m, c in stripped.items()}
    return res, content, mono


def _poly_power(base: CoeffPoly, k: int) -> CoeffPoly:
    out = CoeffPoly.const(1)
    for _ in range(int(k)):
        out = out * base
    return out


def _nth_root(value: int, n: int) -> int | None:
    """Exact n-th root of a positive integer, or None."""
    if value <= 0:
        return None
    root = round(value ** (1.0 / n))
    for cand in (root - 1, root, root + 1):
        if cand > 0 and cand**n == value:
            return cand
    return None


@dataclass(frozen=True)
class EdgeFactor:
    """One edge discriminant factor of the subdivision formula."""

    points: tuple[Point, ...]
    cell: int
    partner: int | None
    kind: str  # "boundary" or "interior"
    exponent: int
    defective: bool


@dataclass(frozen=True)
class CubicInitialFactors:
    """Specialized cell-product form of the initial discriminant of a cubic."""

    applies: bool
    cells: tuple[tuple[Point, ...], ...]
    cell_exponents: tuple[int, ...]
    edge_factors_trivial: bool
    initial_vanishes: tuple[bool, ...] | None


@dataclass(frozen=True)
class FactorizationReport:
    """Exponent data of the initial form of an ambient discriminant.

    `lambda_power` is the exact ratio of the lattice-index products (cell
    indices over boundary-edge indices) and `lambda_abs` its saturation-index
    root when that ratio is a perfect integer power, else None.  When the
    symbolic check ran, `lambda_signed` holds the true constant read off the
    verified identity and `lambda_consistent` records whether the index
    formula agrees with it in absolute value.  They can disagree only when
    `boundary_saturated` is false, that is when some boundary edge of the
    subdivision carries marked points that do not generate the full lattice
    of their segment, or when the segment's configuration points themselves
    have a common gap; the index bookkeeping over- or undershoots there and
    only the symbolic value is authoritative.
    """

    points: tuple[Point, ...]
    saturation: int
    cells: tuple[tuple[Point, ...], ...]
    cell_exponents: tuple[int, ...]
    cell_defective: tuple[bool, ...]
    edge_factors: tuple[EdgeFactor, ...]
    lambda_power: Fraction
    lambda_abs: int | None
    boundary_saturated: bool
    symbolic_checked: bool
    lambda_signed: int | None
    lambda_consistent: bool | None
    monomial_exponent: tuple[tuple[Point, int], ...] | None
    cubic_form: CubicInitialFactors | None


def _line_points(points: Iterable[Point], a: Point, b: Point) -> list[Point]:
    out = []
    for p in points:
        if (b[0] - a[0]) * (p[1] - a[1]) == (b[1] - a[1]) * (p[0] - a[0]):
            out.append(p)
    return sorted(out)


def factorization_check(points, weights=None, coefficients=None) -> FactorizationReport:
    """Factor the initial form of the ambient discriminant over a subdivision.

    `points` is a full-dimensional planar configuration; `weights` assigns a
    rational weight to every point (a mapping, or a sequence aligned with
    `points`).  When `coefficients` maps points to series, omitted weights
    default to coefficient valuations, and cubic inputs additionally report
    whether each nondefective cell discriminant vanishes on the initial
    coefficients.

    The subdivision induced by the weights turns the initial form into a
    product of cell discriminants, edge discriminants, a Laurent monomial and
    an integer constant.  All exponents and the constant are computed
    combinatorially from lattice indices and subdiagram volumes; when every
    needed discriminant belongs to a supported family the identity is also
    verified symbolically, which pins the constant's sign.
    """
    from .subdivisions import (
        config_index,
        normalized_volume,
        regular_subdivision,
        span_index,
        subdiagram_volume,
    )

    pts = sorted((int(p[0]), int(p[1])) for p in points)
    if len(set(pts)) != len(pts):
        raise ValueError("repeated points in the configuration")
    if _affine_rank(pts) != 2:
        raise UnsupportedError(
            "initial-form factorization needs a full-dimensional configuration"
        )
    if coefficients is not None:
        coefficients = {(int(p[0]), int(p[1])): v for p, v in coefficients.items()}
        if sorted(coefficients) != pts:
            raise ValueError("coefficients must cover exactly the configuration")
    if weights is None:
        if coefficients is None:
            raise ValueError("either weights or coefficients are required")
        w = {p: Fraction(coefficients[p].val()) for p in pts}
    elif isinstance(weights, Mapping):
        w = {(int(p[0]), int(p[1])): Fraction(v) for p, v in weights.items()}
        if sorted(w) != pts:
            raise ValueError("weights must cover exactly the configuration")
    else:
        if len(weights) != len(points):
            raise ValueError("weights must align with points")
        w = {
            (int(p[0]), int(p[1])): Fraction(v)
            for p, v in zip(points, weights)
        }

    sub = regular_subdivision({p: -w[p] for p in pts})
    i_a = config_index(pts)
    cells = sub.cells
    cell_pts = [tuple(sorted(c.marked)) for c in cells]
    cell_exp = [span_index(pts, cp) for cp in cell_pts]
    cell_def = [is_defective(list(cp)) for cp in cell_pts]

    edge_factors: list[EdgeFactor] = []
    lam_num = 1
    lam_den = 1
    boundary_saturated = True
    for j, cp in enumerate(cell_pts):
        lam_num *= cell_exp[j] ** normalized_volume(cp)
    for idx, edge in enumerate(sub.edges):
        adj = sub.edge_adjacency[idx]
        e_marked = tuple(sorted(edge.marked))
        a, b = edge.vertices[0], edge.vertices[-1]
        i_e = config_index(e_marked)
        if len(adj) == 2:
            j, l = sorted(adj)
            u_j = subdiagram_volume(e_marked, cell_pts[j])
            u_l = subdiagram_volume(e_marked, cell_pts[l])
            raw = i_e * (u_j + u_l)
            assert raw % i_a == 0, "interior edge exponent not divisible"
            exp = raw // i_a
            assert exp >= 0, "negative interior edge exponent"
            edge_factors.append(
                EdgeFactor(
                    points=e_marked,
                    cell=j,
                    partner=l,
                    kind="interior",
                    exponent=exp,
                    defective=is_defective(list(e_marked)),
                )
            )
        else:
            (j,) = adj
            f_pts = _line_points(pts, a, b)
            seg_pts = [
                p
                for p in f_pts
                if min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
                and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
            ]
            seg_span = span_index(seg_pts, e_marked)
            if config_index(seg_pts) != 1 or seg_span != 1:
                boundary_saturated = False
            u_in = subdiagram_volume(e_marked, cell_pts[j])
            u_out = subdiagram_volume(f_pts, pts)
            raw = i_e * (u_in - u_out)
            assert raw % i_a == 0, "boundary edge exponent not divisible"
            exp = raw // i_a
            assert exp >= 0, "negative boundary edge exponent"
            edge_factors.append(
                EdgeFactor(
                    points=e_marked,
                    cell=j,
                    partner=None,
                    kind="boundary",
                    exponent=exp,
                    defective=is_defective(list(e_marked)),
                )
            )
            lam_den *= seg_span ** (lattice_length(a, b) * u_out)

    lam_power = Fraction(lam_num, lam_den)
    if lam_power.denominator == 1:
        lam_abs = (
            _nth_root(lam_power.numerator, i_a)
            if i_a > 1
            else lam_power.numerator
        )
    else:
        lam_abs = None
    if boundary_saturated:
        assert lam_power.denominator == 1, "subdivision constant is not an integer"
        assert lam_abs is not None, "subdivision constant is not a perfect power"

    # symbolic verification when every factor belongs to a supported family
    symbolic = False
    lam_signed: int | None = None
    lam_consistent: bool | None = None
    mono_exp: tuple[tuple[Point, int], ...] | None = None
    try:
        ambient = cell_discriminant(list(pts))
        rhs = CoeffPoly.const(1)
        for j, cp in enumerate(cell_pts):
            if cell_def[j]:
                continue
            rhs = rhs * _poly_power(cell_discriminant(list(cp)).poly, cell_exp[j])
        for ef in edge_factors:
            if ef.exponent == 0 or ef.defective:
                continue
            rhs = rhs * _poly_power(cell_discriminant(list(ef.points)).poly, ef.exponent)
        lhs = _initial_form_by_weight(ambient.poly, w)
        lp, lc, lm = _primitive_form(lhs)
        rp, rc, rm = _primitive_form(rhs)
        assert lp == rp, "initial form does not match the discriminant product"
        assert lc % rc == 0, "constant of the factorization is not an integer"
        lam_signed = lc // rc
        lam_consistent = lam_abs is not None and abs(lam_signed) == lam_abs
        assert lam_consistent or not boundary_saturated, (
            "symbolic constant %d disagrees with the lattice-index value %d"
            % (lam_signed, lam_abs)
        )
        mono: dict[Point, int] = dict(lm)
        for p, e in rm.items():
            mono[p] = mono.get(p, 0) - e
        mono_exp = tuple(sorted((p, e) for p, e in mono.items() if e))
        symbolic = True
    except UnsupportedError:
        pass

    cubic_form: CubicInitialFactors | None = None
    if set(pts) <= set(CUBIC_TRIANGLE):
        vertex_points = sub.marked_vertices()
        applies = (1, 1) in vertex_points
        nd_cells = tuple(
            cp for j, cp in enumerate(cell_pts) if not cell_def[j]
        )
        nd_exp = tuple(
            i_a * cell_exp[j] for j, cp in enumerate(cell_pts) if not cell_def[j]
        )
        trivial = all(ef.defective or ef.exponent == 0 for ef in edge_factors)
        vanishes: tuple[bool, ...] | None = None
        if coefficients is not None:
            flags = []
            for cp in nd_cells:
                d = cell_discriminant(list(cp))
                inits = {p: coefficients[p].init_t() for p in cp}
                flags.append(not d.eval_at(inits))
            vanishes = tuple(flags)
        cubic_form = CubicInitialFactors(
            applies=applies,
            cells=nd_cells,
            cell_exponents=nd_exp,
            edge_factors_trivial=trivial,
            initial_vanishes=vanishes,
        )

    return FactorizationReport(
        points=tuple(pts),
        saturation=i_a,
        cells=tuple(cell_pts),
        cell_exponents=tuple(cell_exp),
        cell_defective=tuple(cell_def),
        edge_factors=tuple(edge_factors),
        lambda_power=lam_power,
        lambda_abs=lam_abs,
        boundary_saturated=boundary_saturated,
        symbolic_checked=symbolic,
        lambda_signed=lam_signed,
        lambda_consistent=lam_consistent,
        monomial_exponent=mono_exp,
        cubic_form=cubic_form,
    )
