"""Tropical plane curves dual to regular marked subdivisions.

Under the max convention the tropical curve of g is the corner locus of
w |-> max_a (h(a) + <w, a>) with h(a) = -val(c_a).  Duality sends

  * a 2-cell with supporting plane alpha*x + beta*y + gamma to the vertex
    (-alpha, -beta);
  * an interior 1-cell to the bounded edge between the two adjacent cell
    vertices, with multiplicity its lattice length;
  * a boundary 1-cell to a ray leaving the unique adjacent cell vertex in
    the direction of the outward primitive normal, again weighted by
    lattice length.

A cycle of the curve is the link of an interior support point that is a
vertex of the subdivision; for a cubic the only candidate is (1, 1).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .polynomials import PlanePoly
from .series import UnsupportedError
from .subdivisions import (
    NewtonSubdivision,
    convex_hull,
    lattice_length,
    primitive_vector,
    regular_subdivision,
)

Point = tuple[Fraction, Fraction]

REDUCIBILITY_CUTOFF = 10**6


@dataclass(frozen=True)
class CurveEdge:
    """Bounded edge dual to an interior 1-cell."""

    cells: tuple[int, int]
    dual: tuple[tuple[int, int], tuple[int, int]]
    multiplicity: int


@dataclass(frozen=True)
class CurveRay:
    """Unbounded edge dual to a boundary 1-cell."""

    cell: int
    direction: tuple[int, int]
    dual: tuple[tuple[int, int], tuple[int, int]]
    multiplicity: int


@dataclass(frozen=True)
class ParallelLine:
    """Component of a degenerate curve whose support lies on a line."""

    normal: tuple[int, int]
    value: Fraction
    multiplicity: int


@dataclass(frozen=True)
class CycleDescriptor:
    """The unique cycle of the curve, as the link of an interior vertex."""

    center: tuple[int, int]
    cells: tuple[int, ...]
    points: tuple[Point, ...]
    edge_mults: tuple[int, ...]
    edge_lengths: tuple[Fraction, ...]

    @property
    def length(self) -> Fraction:
        return sum(self.edge_lengths, Fraction(0))


def _segment_length(a: Point, b: Point) -> Fraction:
    """Lattice length of a segment with rational endpoints."""
    dx, dy = b[0] - a[0], b[1] - a[1]
    if dx == 0 and dy == 0:
        return Fraction(0)
    num = dx.numerator * dy.denominator, dy.numerator * dx.denominator
    g = math.gcd(abs(num[0]), abs(num[1]))
    den = dx.denominator * dy.denominator
    return Fraction(g, den)


def _primitive_of_rational(v: tuple[Fraction, Fraction]) -> tuple[int, int]:
    a = v[0].numerator * v[1].denominator
    b = v[1].numerator * v[0].denominator
    g = math.gcd(abs(a), abs(b))
    if g == 0:
        raise ValueError("zero vector has no primitive direction")
    return (a // g, b // g)


class TropicalPlaneCurve:
    """Dual graph of the marked Newton subdivision of a two-variable polynomial."""

    def __init__(self, subdivision: NewtonSubdivision):
        self.subdivision = subdivision
        self.vertices: tuple[Point, ...] = ()
        self.edges: tuple[CurveEdge, ...] = ()
        self.rays: tuple[CurveRay, ...] = ()
        self.parallel_lines: tuple[ParallelLine, ...] = ()
        if subdivision.degenerate == "point":
            return
        if subdivision.degenerate == "line":
            self.parallel_lines = tuple(self._lines_from_path())
            return
        self.vertices = tuple(
            (-al, -be) for (al, be, _ga) in subdivision.planes
        )
        edges = []
        rays = []
        for idx, edge in enumerate(subdivision.edges):
            adj = subdivision.edge_adjacency[idx]
            p, q = edge.vertices
            mult = lattice_length(p, q)
            if len(adj) == 2:
                edges.append(CurveEdge(cells=(adj[0], adj[1]), dual=(p, q), multiplicity=mult))
            else:
                direction = self._outward_normal(p, q)
                rays.append(
                    CurveRay(cell=adj[0], direction=direction, dual=(p, q), multiplicity=mult)
                )
        self.edges = tuple(edges)
        self.rays = tuple(rays)

    @classmethod
    def of_polynomial(cls, g: PlanePoly) -> TropicalPlaneCurve:
        if len(g.vars) != 2:
            raise ValueError("tropicalization here is for two-variable polynomials")
        if not g.coeffs:
            raise ValueError("the zero polynomial has no tropical curve")
        return cls(regular_subdivision(g.heights()))

    # -- construction helpers ---------------------------------------------

    def _outward_normal(self, p, q) -> tuple[int, int]:
        u = primitive_vector((q[0] - p[0], q[1] - p[1]))
        n = (u[1], -u[0])
        c = n[0] * p[0] + n[1] * p[1]
        support = [pt for pt, _h in self.subdivision.heights]
        if any(n[0] * s[0] + n[1] * s[1] > c for s in support):
            n = (-n[0], -n[1])
            c = -c
        assert all(n[0] * s[0] + n[1] * s[1] <= c for s in support)
        return n

    def _lines_from_path(self):
        hmap = self.subdivision.height_map()
        for edge in self.subdivision.edges:
            p, q = edge.vertices
            m = lattice_length(p, q)
            u = primitive_vector((q[0] - p[0], q[1] - p[1]))
            zeta = Fraction(hmap[p] - hmap[q], m)
            yield ParallelLine(normal=u, value=zeta, multiplicity=m)

    # -- structure ----------------------------------------------------------

    def vertex_star(self, cell_index: int) -> list[tuple[tuple[int, int], int]]:
        """Primitive directions with multiplicities of edges leaving a vertex."""
        star = []
        v = self.vertices[cell_index]
        for e in self.edges:
            if cell_index not in e.cells:
                continue
            other = e.cells[1] if e.cells[0] == cell_index else e.cells[0]
            w = self.vertices[other]
            star.append((_primitive_of_rational((w[0] - v[0], w[1] - v[1])), e.multiplicity))
        for r in self.rays:
            if r.cell == cell_index:
                star.append((r.direction, r.multiplicity))
        return star

    def check_balancing(self) -> bool:
        for i in range(len(self.vertices)):
            sx = sy = 0
            for (dx, dy), m in self.vertex_star(i):
                sx += m * dx
                sy += m * dy
            if sx or sy:
                return False
        return True

    def edge_segment(self, e: CurveEdge) -> tuple[Point, Point]:
        return self.vertices[e.cells[0]], self.vertices[e.cells[1]]

    # -- cycles -------------------------------------------------------------

    def cycle_around(self, center: tuple[int, int]) -> CycleDescriptor | None:
        """The link of an interior support point, if it is a subdivision vertex."""
        sub = self.subdivision
        if sub.degenerate:
            return None
        incident = [
            i for i, c in enumerate(sub.cells) if tuple(center) in c.vertices
        ]
        if len(incident) < 3:
            return None
        support = [p for p, _h in sub.heights]
        hull = set(convex_hull(support))
        if tuple(center) in hull:
            return None
        # all 1-cells through the center, keyed by their far endpoint direction
        spokes = {}
        for idx, edge in enumerate(sub.edges):
            p, q = edge.vertices
            if tuple(center) == p:
                spokes[idx] = q
            elif tuple(center) == q:
                spokes[idx] = p
        # walk the link: cross from cell to cell through the spokes
        order = [incident[0]]
        prev_spoke = None
        while True:
            current = order[-1]
            step = None
            for idx in spokes:
                if current not in sub.edge_adjacency[idx] or idx == prev_spoke:
                    continue
                adj = sub.edge_adjacency[idx]
                if len(adj) != 2:
                    return None
                step = (idx, adj[0] if adj[1] == current else adj[1])
                break
            if step is None:
                return None
            idx, nxt = step
            if nxt == order[0] and len(order) > 1:
                order_spokes = self._link_spokes(order, spokes, sub)
                if order_spokes is None:
                    return None
                break
            order.append(nxt)
            prev_spoke = idx
            if len(order) > len(incident):
                return None
        if len(order) != len(incident):
            return None
        points = tuple(self.vertices[i] for i in order)
        mults = []
        lengths = []
        for k, i in enumerate(order):
            j = order[(k + 1) % len(order)]
            spoke = self._shared_spoke(i, j, spokes, sub)
            if spoke is None:
                return None
            p, q = sub.edges[spoke].vertices
            mults.append(lattice_length(p, q))
            lengths.append(_segment_length(self.vertices[i], self.vertices[j]))
        return CycleDescriptor(
            center=tuple(center),
            cells=tuple(order),
            points=points,
            edge_mults=tuple(mults),
            edge_lengths=tuple(lengths),
        )

    def _shared_spoke(self, i, j, spokes, sub):
        for idx in spokes:
            if set(sub.edge_adjacency[idx]) == {i, j}:
                return idx
        return None

    def _link_spokes(self, order, spokes, sub):
        found = []
        for k, i in enumerate(order):
            j = order[(k + 1) % len(order)]
            idx = self._shared_spoke(i, j, spokes, sub)
            if idx is None:
                return None
            found.append(idx)
        return found

    # -- local reducibility ---------------------------------------------------

    def locally_reducible_vertices(self) -> list[int]:
        """Cell indices whose vertex star splits into two balanced sub-stars."""
        out = []
        for i in range(len(self.vertices)):
            if self.vertex_is_reducible(i):
                out.append(i)
        return out

    def vertex_is_reducible(self, cell_index: int) -> bool:
        star = self.vertex_star(cell_index)
        combos = 1
        for _d, m in star:
            combos *= m + 1
        if combos > REDUCIBILITY_CUTOFF:
            raise UnsupportedError(
                "vertex star too heavy for reducibility enumeration (%d cases)" % combos
            )
        choices = [range(m + 1) for _d, m in star]
        full = tuple(m for _d, m in star)
        for pick in itertools.product(*choices):
            if not any(pick) or pick == full:
                continue
            sx = sum(k * d[0] for k, (d, _m) in zip(pick, star))
            sy = sum(k * d[1] for k, (d, _m) in zip(pick, star))
            if sx == 0 and sy == 0:
                return True
        return False


def cubic_cycle(g: PlanePoly) -> CycleDescriptor | None:
    """The cycle of a plane cubic's tropical curve, when visible in the plane."""
    if not g.is_cubic():
        raise ValueError("cycle detection at (1, 1) expects a cubic")
    return TropicalPlaneCurve.of_polynomial(g).cycle_around((1, 1))
