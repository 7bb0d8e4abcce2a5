"""Subdivision construction and lattice utilities."""

from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from retrop.subdivisions import (
    MarkedCell,
    column_transform,
    config_index,
    convex_hull,
    coords_in_basis,
    lattice_basis,
    lattice_length,
    normalized_volume,
    primitive_vector,
    regular_subdivision,
    relative_config_index,
    saturation_index,
    smith_normal_form,
    span_index,
    subdiagram_volume,
)

F = Fraction


def test_lattice_length_and_primitive():
    assert lattice_length((0, 0), (4, 6)) == 2
    assert lattice_length((1, 1), (1, 1)) == 0
    assert primitive_vector((4, -6)) == (2, -3)
    with pytest.raises(ValueError):
        primitive_vector((0, 0))


def test_convex_hull_and_volume():
    square = [(0, 0), (2, 0), (2, 2), (0, 2), (1, 1)]
    hull = convex_hull(square)
    assert set(hull) == {(0, 0), (2, 0), (2, 2), (0, 2)}
    assert normalized_volume(square) == 8
    assert normalized_volume([(0, 0), (1, 0), (0, 1)]) == 1
    assert normalized_volume([(0, 0), (3, 3)]) == 0


def test_smith_normal_form_products():
    assert sorted(smith_normal_form([[2, 0], [0, 3]])) == [2, 3]
    assert smith_normal_form([[2, 4]]) == [2]
    assert saturation_index([[2, 4]]) == 2
    assert saturation_index([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 1
    # index of the sublattice spanned by (2,0),(1,3)
    assert saturation_index([[2, 0], [1, 3]]) == 6


def test_smith_randomized_against_determinant():
    rng = random.Random(5)
    for _ in range(50):
        m = [[rng.randrange(-5, 6) for _ in range(3)] for _ in range(3)]
        det = (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )
        if det:
            assert saturation_index(m) == abs(det)


def test_column_transform_pushes_span_left():
    rows = [[0, 2, 4], [1, 1, 1]]
    divisors, V = column_transform(rows)
    assert len(divisors) == 2
    # original @ V must have zero entries beyond the first two columns
    for r in rows:
        img = [sum(r[i] * V[i][j] for i in range(3)) for j in range(3)]
        assert img[2] == 0


def test_coords_in_basis():
    basis = lattice_basis([[2, 0, 0], [0, 3, 0]])
    assert coords_in_basis([4, 3, 0], basis) is not None
    assert coords_in_basis([1, 0, 0], basis) is None
    assert coords_in_basis([0, 0, 5], basis) is None


def test_config_indices():
    cubic = [(i, j) for i in range(4) for j in range(4 - i)]
    assert config_index(cubic) == 1
    doubled = [(0, 0), (2, 0), (0, 2), (2, 2)]
    assert config_index(doubled) == 4
    assert relative_config_index([(0, 0), (2, 0)], doubled) == 1
    assert span_index(cubic, [(0, 0), (1, 0), (0, 1)]) == 1


def test_subdiagram_volume_edges():
    tri = [(0, 0), (1, 0), (0, 1)]
    assert subdiagram_volume([(1, 0), (0, 1)], tri) == 1
    big = [(0, 0), (2, 0), (0, 2), (1, 1)]
    assert subdiagram_volume([(2, 0), (0, 2), (1, 1)], big) == 2
    cubic = [(i, j) for i in range(4) for j in range(4 - i)]
    bottom = [(i, 0) for i in range(4)]
    assert subdiagram_volume(bottom, cubic) == 1


def test_subdiagram_volume_vertex():
    tri = [(0, 0), (1, 0), (0, 1)]
    assert subdiagram_volume([(0, 0)], tri) == 1


def _edge_distance_oracle(face, config):
    """Lattice distance from the edge's line to the nearest remaining point."""
    (x1, y1), (x2, y2) = face[0], face[-1]
    d = (x2 - x1, y2 - y1)
    g = math.gcd(abs(d[0]), abs(d[1]))
    n = (-d[1] // g, d[0] // g)
    c = n[0] * x1 + n[1] * y1
    rest = [p for p in config if p not in face]
    return min(abs(n[0] * p[0] + n[1] * p[1] - c) for p in rest)


def test_subdiagram_volume_against_distance_oracle():
    rng = random.Random(99)
    trials = 0
    while trials < 40:
        pts = sorted(
            {(rng.randrange(0, 5), rng.randrange(0, 5)) for _ in range(rng.randrange(4, 9))}
        )
        hull = convex_hull(pts)
        if len(hull) < 3:
            continue
        # pick a hull edge and collect the config points on it
        a, b = hull[0], hull[1]
        face = [
            p
            for p in pts
            if (b[0] - a[0]) * (p[1] - a[1]) == (b[1] - a[1]) * (p[0] - a[0])
            and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
        ]
        if len(face) == len(pts):
            continue
        assert subdiagram_volume(face, pts) == _edge_distance_oracle(face, pts)
        trials += 1


def test_lattice_index_identity_randomized():
    rng = random.Random(123)
    checked = 0
    while checked < 30:
        scale = rng.choice([1, 1, 2])
        pts = sorted(
            {
                (scale * rng.randrange(0, 4), scale * rng.randrange(0, 4))
                for _ in range(rng.randrange(4, 8))
            }
        )
        hull = convex_hull(pts)
        if len(hull) < 3:
            continue
        a, b = hull[0], hull[1]
        face = [
            p
            for p in pts
            if (b[0] - a[0]) * (p[1] - a[1]) == (b[1] - a[1]) * (p[0] - a[0])
            and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
        ]
        if len(face) == len(pts):
            continue
        lhs = config_index(face) * subdiagram_volume(face, pts)
        rhs = (
            config_index(pts)
            * relative_config_index(face, pts)
            * subdiagram_volume(face, pts, ambient="ZA")
        )
        assert lhs == rhs
        checked += 1


def test_square_single_cell_subdivision():
    heights = {(0, 0): 0, (1, 0): 0, (0, 1): 0, (1, 1): 0}
    sub = regular_subdivision(heights)
    assert sub.degenerate is None
    assert len(sub.cells) == 1
    cell = sub.cells[0]
    assert set(cell.vertices) == set(heights)
    assert set(cell.marked) == set(heights)
    assert len(sub.edges) == 4
    assert sub.boundary_edges() == [0, 1, 2, 3]


def test_square_split_into_two_triangles():
    heights = {(0, 0): 0, (1, 0): 0, (0, 1): 0, (1, 1): 1}
    sub = regular_subdivision(heights)
    assert len(sub.cells) == 2
    marked_sets = sorted(tuple(c.marked) for c in sub.cells)
    assert marked_sets == [
        ((0, 0), (0, 1), (1, 1)),
        ((0, 0), (1, 0), (1, 1)),
    ]
    interior = sub.interior_edges()
    assert len(interior) == 1
    assert set(sub.edges[interior[0]].vertices) == {(0, 0), (1, 1)}


def test_marked_midpoint_on_edge():
    heights = {(0, 0): 0, (1, 0): 0, (2, 0): 0, (0, 1): 0}
    sub = regular_subdivision(heights)
    assert len(sub.cells) == 1
    cell = sub.cells[0]
    assert (1, 0) in cell.marked
    assert (1, 0) not in cell.vertices
    bottom = [e for e in sub.edges if set(e.vertices) == {(0, 0), (2, 0)}]
    assert len(bottom) == 1
    assert (1, 0) in bottom[0].marked


def test_unmarked_point_below_hull():
    heights = {(0, 0): 0, (2, 0): 0, (0, 2): 0, (2, 2): 0, (1, 1): -1}
    sub = regular_subdivision(heights)
    assert len(sub.cells) == 1
    assert (1, 1) not in sub.cells[0].marked


def test_fractional_heights():
    heights = {(0, 0): F(1, 2), (1, 0): 0, (0, 1): F(-1, 3), (1, 1): F(2, 3)}
    sub = regular_subdivision(heights)
    # every support point must satisfy h <= plane for every cell plane
    for cell, (al, be, ga) in zip(sub.cells, sub.planes):
        for p, h in sub.heights:
            assert al * p[0] + be * p[1] + ga >= h
        for p in cell.marked:
            h = dict(sub.heights)[p]
            assert al * p[0] + be * p[1] + ga == h


def test_degenerate_line_support():
    heights = {(0, 0): 0, (1, 1): 1, (2, 2): 0}
    sub = regular_subdivision(heights)
    assert sub.degenerate == "line"
    assert len(sub.cells) == 0
    assert len(sub.edges) == 2
    vert_sets = sorted(tuple(sorted(e.vertices)) for e in sub.edges)
    assert vert_sets == [((0, 0), (1, 1)), ((1, 1), (2, 2))]


def test_single_point_support():
    sub = regular_subdivision({(2, 3): 0})
    assert sub.degenerate == "point"
    assert sub.cells == () and sub.edges == ()


def test_subdivision_randomized_consistency():
    rng = random.Random(2024)
    for _ in range(40):
        pts = sorted(
            {(rng.randrange(0, 4), rng.randrange(0, 4)) for _ in range(rng.randrange(3, 10))}
        )
        heights = {p: F(rng.randrange(-4, 5), rng.choice([1, 1, 2])) for p in pts}
        sub = regular_subdivision(heights)
        if sub.degenerate:
            continue
        hmap = dict(sub.heights)
        # cells tile the hull: total volume matches
        assert sum(normalized_volume(c.vertices) for c in sub.cells) == normalized_volume(pts)
        # every interior edge bounds exactly two cells, boundary edges one
        for adj in sub.edge_adjacency:
            assert len(adj) in (1, 2)
        # marked points lie exactly on the cell planes
        for cell, (al, be, ga) in zip(sub.cells, sub.planes):
            for p in pts:
                assert al * p[0] + be * p[1] + ga >= hmap[p]
            for p in cell.marked:
                assert al * p[0] + be * p[1] + ga == hmap[p]
