"""Regular marked subdivisions of Newton polygons and lattice utilities.

Heights h(a) = -val(c_a) lift the support points of a plane curve to
(a, h(a)); the cells of the regular marked subdivision are the point sets
lifted onto the upper convex hull.  Points lifted strictly below the hull are
unmarked: they belong to no marked set.  Ties (several points on one face)
are marked points of that face, never separate cells.

The lattice side of the factorization machinery also lives here.  Point
configurations are lifted to height one, so the span of a configuration B in
Z^2 means the Z-linear span of {(b, 1) : b in B} inside Z^3.  Saturation
indices are products of elementary divisors of integer matrices (Smith normal
form), and subdiagram volumes are normalized volumes in quotient lattices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Point = tuple[int, int]


# ---------------------------------------------------------------------------
# elementary lattice helpers


def lattice_length(p: Sequence[int], q: Sequence[int]) -> int:
    """Number of lattice steps along the segment from p to q."""
    dx = q[0] - p[0]
    dy = q[1] - p[1]
    return math.gcd(abs(dx), abs(dy))


def primitive_vector(v: Sequence[int]) -> tuple[int, int]:
    g = math.gcd(abs(v[0]), abs(v[1]))
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return (v[0] // g, v[1] // g)


def convex_hull(points: Iterable[tuple]) -> list[tuple]:
    """Counterclockwise convex hull (monotone chain); collinear case returns
    the two extreme points, single point returns itself."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
    lower = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        return sorted(set(points))[:2] if len(pts) > 1 else pts
    return hull


def shoelace_double_area(polygon: Sequence[tuple]) -> int:
    total = 0
    n = len(polygon)
    for i in range(n):
        x1, y1 = polygon[i]
        x2, y2 = polygon[(i + 1) % n]
        total += x1 * y2 - x2 * y1
    return abs(total)


def normalized_volume(points: Iterable[Point]) -> int:
    """Normalized lattice volume of the convex hull (unimodular triangle = 1)."""
    hull = convex_hull(points)
    if len(hull) < 3:
        return 0
    return shoelace_double_area(hull)


# ---------------------------------------------------------------------------
# Smith normal form


def smith_normal_form(rows: Sequence[Sequence[int]]) -> list[int]:
    """Elementary divisors of an integer matrix (nonzero ones, in order)."""
    divisors, _ = _smith(rows, track_cols=False)
    return divisors


def _smith(rows, track_cols: bool):
    m = [list(map(int, r)) for r in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    cols = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]

    def swap_cols(i, j):
        for r in m:
            r[i], r[j] = r[j], r[i]
        if track_cols:
            cols[i], cols[j] = cols[j], cols[i]

    def add_row(src, dst, k):
        for c in range(nc):
            m[dst][c] += k * m[src][c]

    def add_col(src, dst, k):
        for r in m:
            r[dst] += k * r[src]
        if track_cols:
            for c in range(nc):
                cols[dst][c] += k * cols[src][c]

    divisors = []
    top = 0
    left = 0
    while top < nr and left < nc:
        # find a pivot
        pivot = None
        for i in range(top, nr):
            for j in range(left, nc):
                if m[i][j]:
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        swap_rows(top, pivot[0])
        swap_cols(left, pivot[1])
        while True:
            # clear column below with row ops, column right with col ops
            done = True
            for i in range(top + 1, nr):
                if m[i][left] % m[top][left]:
                    q = m[i][left] // m[top][left]
                    add_row(top, i, -q)
                    swap_rows(top, i)
                    done = False
                elif m[i][left]:
                    add_row(top, i, -(m[i][left] // m[top][left]))
            for j in range(left + 1, nc):
                if m[top][j] % m[top][left]:
                    q = m[top][j] // m[top][left]
                    add_col(left, j, -q)
                    swap_cols(left, j)
                    done = False
                elif m[top][j]:
                    add_col(left, j, -(m[top][j] // m[top][left]))
            if done:
                break
        divisors.append(abs(m[top][left]))
        top += 1
        left += 1
    # transpose cols back into column-vector form: cols is the accumulated
    # unimodular column transform V with m_original @ V = m_final
    return divisors, cols


def column_transform(rows: Sequence[Sequence[int]]):
    """Smith data with the column transform: returns (divisors, V) where V is
    a unimodular nc x nc matrix (list of columns as rows of the returned
    list is avoided: V[i][j] follows ordinary indexing, original @ V reduced)."""
    m = [list(map(int, r)) for r in rows]
    divisors, cols = _smith(m, track_cols=True)
    # _smith tracked columns as vectors over the original column index; build
    # the matrix V with V[original_index][new_index]
    nc = len(cols)
    V = [[cols[j][i] for j in range(nc)] for i in range(nc)]
    return divisors, V


def saturation_index(rows: Sequence[Sequence[int]]) -> int:
    """[Z^n cap R-span(rows) : Z-span(rows)], the product of the nonzero
    elementary divisors."""
    out = 1
    for d in smith_normal_form(rows):
        if d:
            out *= d
    return out


def lattice_basis(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """A basis of the integer row span, via Hermite-style reduction."""
    m = [list(map(int, r)) for r in rows if any(r)]
    if not m:
        return []
    nc = len(m[0])
    basis: list[list[int]] = []
    work = [r[:] for r in m]
    col = 0
    row = 0
    while col < nc and row < len(work):
        # find nonzero entry in this column at or below `row`
        sel = None
        for i in range(row, len(work)):
            if work[i][col]:
                sel = i
                break
        if sel is None:
            col += 1
            continue
        work[row], work[sel] = work[sel], work[row]
        changed = True
        while changed:
            changed = False
            for i in range(row + 1, len(work)):
                if work[i][col]:
                    q = work[i][col] // work[row][col]
                    for c in range(nc):
                        work[i][c] -= q * work[row][c]
                    if work[i][col]:
                        work[row], work[i] = work[i], work[row]
                        changed = True
        row += 1
        col += 1
    for r in work[:row]:
        basis.append(r)
    return basis


def coords_in_basis(vector: Sequence[int], basis: Sequence[Sequence[int]]):
    """Integer coordinates of vector in the given lattice basis, or None if
    the vector lies outside the spanned lattice."""
    n = len(basis)
    if n == 0:
        return None if any(vector) else []
    nc = len(vector)
    # solve x * basis = vector with Fractions
    aug = [[Fraction(basis[i][c]) for i in range(n)] + [Fraction(vector[c])] for c in range(nc)]
    # Gaussian elimination on the nc x (n+1) system
    pivots = []
    r = 0
    for c in range(n):
        sel = None
        for i in range(r, nc):
            if aug[i][c]:
                sel = i
                break
        if sel is None:
            continue
        aug[r], aug[sel] = aug[sel], aug[r]
        pv = aug[r][c]
        aug[r] = [v / pv for v in aug[r]]
        for i in range(nc):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [v - f * w for v, w in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    x = [Fraction(0)] * n
    for row_i, c in enumerate(pivots):
        x[c] = aug[row_i][n]
    # consistency rows
    for i in range(r, nc):
        if aug[i][n]:
            return None
    if any(v.denominator != 1 for v in x):
        return None
    return [int(v) for v in x]


def lift(points: Iterable[Point]) -> list[tuple[int, int, int]]:
    """Height-one lift of a planar configuration."""
    return [(int(p[0]), int(p[1]), 1) for p in points]


def config_index(points: Iterable[Point]) -> int:
    """Index of the lifted span of the configuration inside its saturation."""
    return saturation_index(lift(points))


def relative_config_index(sub: Iterable[Point], sup: Iterable[Point]) -> int:
    """[Z-span(sup-lift) cap R-span(sub-lift) : Z-span(sub-lift)].

    Every sub point must lie in the sup lattice (it does when sub is a subset
    of sup).
    """
    basis = lattice_basis(lift(sup))
    rows = []
    for v in lift(sub):
        coords = coords_in_basis(v, basis)
        if coords is None:
            raise ValueError("sub-configuration outside the ambient lattice")
        rows.append(coords)
    return saturation_index(rows)


def span_index(sup: Iterable[Point], sub: Iterable[Point]) -> int:
    """[Z-span(sup-lift) : Z-span(sub-lift)] when finite; error otherwise."""
    basis = lattice_basis(lift(sup))
    rows = []
    for v in lift(sub):
        coords = coords_in_basis(v, basis)
        if coords is None:
            raise ValueError("sub-configuration outside the ambient lattice")
        rows.append(coords)
    sub_rank = len(lattice_basis(rows))
    if sub_rank != len(basis):
        raise ValueError("span index is infinite for unequal ranks")
    return saturation_index(rows)


def subdiagram_volume(
    face: Iterable[Point], config: Iterable[Point], ambient: str = "Zk"
) -> int:
    """Generalized subdiagram volume of a proper face of conv(config).

    Projects the lifted configuration along the lifted span of the face and
    measures the normalized volume of conv(pi(config)) minus
    conv(pi(config minus face points)).  With ambient="Zk" the quotient
    volume is normalized to the image of Z^3, with ambient="ZA" to the image
    of the lifted configuration span.
    """
    face = [tuple(p) for p in face]
    config = [tuple(p) for p in config]
    face_set = set(face)
    if not face_set <= set(config):
        raise ValueError("face points must belong to the configuration")
    d = 3
    face_lift = lift(face)
    span_rows = lattice_basis(face_lift)
    r = len(span_rows)
    if r == 0 or r >= d:
        raise ValueError("face must span a proper nonzero sublattice")
    _, V = column_transform(span_rows)
    # in V-transformed coordinates the face span occupies the first r slots
    def project(v):
        w = [sum(v[i] * V[i][j] for i in range(d)) for j in range(d)]
        return tuple(w[r:])

    if ambient == "Zk":
        image_gens = [project(e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    elif ambient == "ZA":
        image_gens = [project(v) for v in lift(config)]
    else:
        raise ValueError("ambient must be 'Zk' or 'ZA'")

    all_proj = [project(v) for v in lift(config)]
    rest_proj = [
        project(v)
        for p, v in zip(config, lift(config))
        if p not in face_set
    ]
    q = d - r
    if q == 1:
        unit = 0
        for (g,) in image_gens:
            unit = math.gcd(unit, abs(g))
        if unit == 0:
            raise ValueError("degenerate quotient lattice")
        lo = min(v[0] for v in all_proj)
        hi = max(v[0] for v in all_proj)
        if rest_proj:
            lo2 = min(v[0] for v in rest_proj)
            hi2 = max(v[0] for v in rest_proj)
            removed = (hi - lo) - (hi2 - lo2)
        else:
            removed = hi - lo
        assert removed % unit == 0
        return removed // unit
    if q == 2:
        cov_rows = lattice_basis(image_gens)
        if len(cov_rows) != 2:
            raise ValueError("degenerate quotient lattice")
        covol = abs(cov_rows[0][0] * cov_rows[1][1] - cov_rows[0][1] * cov_rows[1][0])
        vol_all = normalized_volume(all_proj)
        vol_rest = normalized_volume(rest_proj) if rest_proj else 0
        diff = vol_all - vol_rest
        assert diff % covol == 0
        return diff // covol
    raise ValueError("unexpected quotient dimension")


# ---------------------------------------------------------------------------
# marked subdivisions


@dataclass(frozen=True)
class MarkedCell:
    """A cell of a marked subdivision.

    vertices: extreme points, counterclockwise for two-dimensional cells;
    marked: every support point lifted onto the cell's face (ties included);
    dim: 0, 1 or 2.
    """

    vertices: tuple[Point, ...]
    marked: tuple[Point, ...]
    dim: int

    def edge_pairs(self) -> list[tuple[Point, Point]]:
        if self.dim != 2:
            raise ValueError("edge pairs only make sense for 2-cells")
        n = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]

    def contains_marked(self, point: Point) -> bool:
        return tuple(point) in self.marked


@dataclass(frozen=True)
class NewtonSubdivision:
    """Regular marked subdivision induced by coefficient heights."""

    support: tuple[Point, ...]
    heights: tuple[tuple[Point, Fraction], ...]
    cells: tuple[MarkedCell, ...]
    planes: tuple[tuple[Fraction, Fraction, Fraction], ...]
    edges: tuple[MarkedCell, ...]
    edge_adjacency: tuple[tuple[int, ...], ...]
    degenerate: str | None = None

    def height_map(self) -> dict[Point, Fraction]:
        return dict(self.heights)

    def interior_edges(self) -> list[int]:
        return [i for i, adj in enumerate(self.edge_adjacency) if len(adj) == 2]

    def boundary_edges(self) -> list[int]:
        return [i for i, adj in enumerate(self.edge_adjacency) if len(adj) == 1]

    def cell_plane(self, cell_index: int):
        return self.planes[cell_index]

    def marked_vertices(self) -> set[Point]:
        """Support points appearing as a vertex of some cell or edge."""
        out: set[Point] = set()
        for cell in self.cells:
            out.update(cell.vertices)
        for edge in self.edges:
            out.update(edge.vertices)
        return out


def _collinear(p, q, r) -> bool:
    return (q[0] - p[0]) * (r[1] - p[1]) == (q[1] - p[1]) * (r[0] - p[0])


def _on_segment(p, a, b) -> bool:
    if not _collinear(a, b, p):
        return False
    return (
        min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def regular_subdivision(heights: Mapping[Point, object]) -> NewtonSubdivision:
    """Build the regular marked subdivision of the support of `heights`.

    heights maps support points to exact rational heights h(a) = -val(c_a).
    """
    hmap = {(int(p[0]), int(p[1])): Fraction(h) for p, h in heights.items()}
    if not hmap:
        raise ValueError("empty support has no subdivision")
    support = tuple(sorted(hmap))
    pts = list(support)
    n = len(pts)
    height_items = tuple((p, hmap[p]) for p in support)

    # affine rank of the support
    rank = 0
    if n >= 2:
        rank = 1
        for k in range(2, n):
            if not _collinear(pts[0], pts[1], pts[k]):
                rank = 2
                break

    if n == 1:
        return NewtonSubdivision(support, height_items, (), (), (), (), "point")

    denom = 1
    for h in hmap.values():
        denom = denom * h.denominator // math.gcd(denom, h.denominator)
    lifted = {p: (p[0], p[1], int(hmap[p] * denom)) for p in pts}

    if rank == 1:
        return _line_subdivision(support, height_items, lifted, denom)

    # upper hull faces via supporting planes of non-collinear triples
    faces: dict[frozenset, tuple[int, int, int, int]] = {}
    for i in range(n):
        qi = lifted[pts[i]]
        for j in range(i + 1, n):
            qj = lifted[pts[j]]
            e1 = (qj[0] - qi[0], qj[1] - qi[1], qj[2] - qi[2])
            for k in range(j + 1, n):
                qk = lifted[pts[k]]
                e2 = (qk[0] - qi[0], qk[1] - qi[1], qk[2] - qi[2])
                nz = e1[0] * e2[1] - e1[1] * e2[0]
                if nz == 0:
                    continue
                nx = e1[1] * e2[2] - e1[2] * e2[1]
                ny = e1[2] * e2[0] - e1[0] * e2[2]
                if nz < 0:
                    nx, ny, nz = -nx, -ny, -nz
                c = nx * qi[0] + ny * qi[1] + nz * qi[2]
                face = []
                ok = True
                for p in pts:
                    q = lifted[p]
                    s = nx * q[0] + ny * q[1] + nz * q[2]
                    if s > c:
                        ok = False
                        break
                    if s == c:
                        face.append(p)
                if not ok:
                    continue
                key = frozenset(face)
                if key not in faces:
                    faces[key] = (nx, ny, nz, c)

    cells = []
    planes = []
    for face_key in sorted(faces, key=lambda f: sorted(f)):
        nx, ny, nz, c = faces[face_key]
        face_pts = sorted(face_key)
        hull = convex_hull(face_pts)
        if len(hull) < 3:
            continue
        cells.append(MarkedCell(tuple(hull), tuple(face_pts), 2))
        alpha = Fraction(-nx, nz * denom)
        beta = Fraction(-ny, nz * denom)
        gamma = Fraction(c, nz * denom)
        planes.append((alpha, beta, gamma))

    # collect 1-cells from the 2-cell hulls
    edge_map: dict[tuple[Point, Point], dict] = {}
    for ci, cell in enumerate(cells):
        for a, b in cell.edge_pairs():
            key = (a, b) if a <= b else (b, a)
            marked = tuple(
                sorted(p for p in cell.marked if _on_segment(p, a, b))
            )
            entry = edge_map.setdefault(key, {"marked": marked, "cells": []})
            entry["cells"].append(ci)
            assert entry["marked"] == marked
    edges = []
    adjacency = []
    for key in sorted(edge_map):
        entry = edge_map[key]
        edges.append(MarkedCell(key, entry["marked"], 1))
        adjacency.append(tuple(sorted(entry["cells"])))
        assert 1 <= len(entry["cells"]) <= 2

    return NewtonSubdivision(
        support,
        height_items,
        tuple(cells),
        tuple(planes),
        tuple(edges),
        tuple(adjacency),
        None,
    )


def _line_subdivision(support, height_items, lifted, denom) -> NewtonSubdivision:
    """Support on a line: subdivide the segment by the upper hull."""
    pts = list(support)
    base = pts[0]
    dx = pts[-1][0] - base[0]
    dy = pts[-1][1] - base[1]
    g = math.gcd(abs(dx), abs(dy))
    d = (dx // g, dy // g)
    def param(p):
        if d[0]:
            assert (p[0] - base[0]) % d[0] == 0
            return (p[0] - base[0]) // d[0]
        assert (p[1] - base[1]) % d[1] == 0
        return (p[1] - base[1]) // d[1]

    lifted2 = sorted((param(p), lifted[p][2], p) for p in pts)
    # upper hull of (s, H)
    hull: list[tuple[int, int, Point]] = []
    for item in lifted2:
        while len(hull) >= 2:
            (s1, h1, _), (s2, h2, _) = hull[-2], hull[-1]
            s3, h3, _ = item
            if (h2 - h1) * (s3 - s2) <= (h3 - h2) * (s2 - s1):
                hull.pop()
            else:
                break
        hull.append(item)
    edges = []
    adjacency = []
    for i in range(len(hull) - 1):
        a = hull[i][2]
        b = hull[i + 1][2]
        marked = []
        # points on the segment whose lift is on the hull edge
        s1, h1 = hull[i][0], hull[i][1]
        s2, h2 = hull[i + 1][0], hull[i + 1][1]
        for p in pts:
            s = param(p)
            if s1 <= s <= s2:
                if (h2 - h1) * (s - s1) == (lifted[p][2] - h1) * (s2 - s1):
                    marked.append(p)
        key = (a, b) if a <= b else (b, a)
        edges.append(MarkedCell(key, tuple(sorted(marked)), 1))
        adjacency.append(())
    return NewtonSubdivision(
        support, height_items, (), (), tuple(edges), tuple(adjacency), "line"
    )
