"""Polynomial arithmetic, substitutions, and initial forms."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from retrop.polynomials import PlanePoly, poly_from_pairs
from retrop.series import PuiseuxElement

F = Fraction
P = PuiseuxElement


def _random_poly(rng: random.Random, nvars=2, max_deg=3) -> PlanePoly:
    names = ("x", "y", "z", "w")[:nvars]
    coeffs = {}
    for _ in range(rng.randrange(1, 7)):
        exp = tuple(rng.randrange(max_deg + 1) for _ in range(nvars))
        coeffs[exp] = P.term(rng.randrange(-4, 5), F(rng.randrange(-3, 4)))
    poly = PlanePoly(names, coeffs)
    if not poly:
        return PlanePoly(names, {(0,) * nvars: P.one()})
    return poly


def test_zero_coefficients_dropped_and_rows():
    g = PlanePoly(("x", "y"), {(1, 0): P.one(), (0, 1): P.zero(), (2, 1): P.t_power(3)})
    assert g.support() == ((1, 0), (2, 1))
    assert g.row(0) == {1: P.one()}
    assert g.row(1) == {2: P.t_power(3)}
    assert g.row(2, axis=0) == {1: P.t_power(3)}


def test_init_form_uses_max_convention():
    line = PlanePoly(("x", "y"), {(1, 0): P.one(), (0, 1): P.one(), (0, 0): P.one()})
    assert set(line.init_form((2, 2)).coeffs) == {(1, 0), (0, 1)}
    assert set(line.init_form((-3, 0)).coeffs) == {(0, 1), (0, 0)}
    assert set(line.init_form((0, -3)).coeffs) == {(1, 0), (0, 0)}
    assert set(line.init_form((0, 0)).coeffs) == {(1, 0), (0, 1), (0, 0)}


def test_init_form_respects_heights():
    g = PlanePoly(("x", "y"), {(0, 0): P.t_power(2), (1, 0): P.one()})
    # heights: -2 and 0; at w = (-2, 0) both terms tie
    init = g.init_form((F(-2), 0))
    assert set(init.coeffs) == {(0, 0), (1, 0)}
    assert init.coefficient((0, 0)) == P.one()


def test_shift_substitute_matches_general_substitute():
    rng = random.Random(11)
    for _ in range(25):
        g = _random_poly(rng)
        amount = P.one() + P.term(rng.randrange(-2, 3), 1)
        level = F(rng.randrange(-2, 3))
        direct = g.shift_substitute("x", amount, level, "z")
        expr = PlanePoly(
            ("z", "y"),
            {(1, 0): P.one(), (0, 0): -amount * P.t_power(-level)},
        )
        generic = g.substitute("x", expr)
        assert direct == generic


def test_shift_substitute_round_trip():
    rng = random.Random(12)
    for _ in range(25):
        g = _random_poly(rng)
        amount = P.constant(F(1, 2)) + P.t_power(2)
        there = g.shift_substitute("x", amount, F(1), "z")
        back = there.shift_substitute("z", -amount, F(1), "x")
        assert back == g


def test_shift_substitute_feeding_example():
    # x + 1/2 on the two-step curve feeds the constant column: the new
    # constant coefficient is g(-1/2, 0) and its valuation rises to 1.
    g = poly_from_pairs(
        ("x", "y"),
        [
            ((3, 0), -P.t_power(3)),
            ((2, 1), P.t_power(4) + P.t_power(5)),
            ((1, 2), -P.t_power(5) + P.t_power(6)),
            ((0, 3), P.t_power(3)),
            ((2, 0), P.t_power(2) - P.t_power(3)),
            ((1, 1), P.constant(4)),
            ((0, 2), 2 * P.t_power(2) + 3 * P.t_power(3)),
            ((1, 0), P.constant(2)),
            ((0, 1), P.constant(2) + 2 * P.t_power(1)),
            ((0, 0), P.one() + P.t_power(1)),
        ],
    )
    gt = g.shift_substitute("x", P.constant(F(1, 2)), 0, "z")
    c00 = gt.coefficient((0, 0))
    assert c00 == g.evaluate({"x": P.constant(F(-1, 2)), "y": P.zero()})
    assert c00.val() == 1
    # the degree-3 coefficients never move
    assert gt.coefficient((3, 0)) == g.coefficient((3, 0))


def test_skew_substitute_matches_general_substitute():
    rng = random.Random(13)
    for _ in range(25):
        g = _random_poly(rng)
        amount = P.constant(rng.randrange(1, 4))
        level = F(rng.randrange(-2, 3))
        direct = g.skew_substitute("x", "y", amount, level, "z")
        expr = PlanePoly(
            ("z", "y"),
            {(1, 0): P.one(), (0, 1): -amount * P.t_power(-level)},
        )
        generic = g.substitute("x", expr)
        assert direct == generic


def test_skew_substitute_moves_along_antidiagonals():
    g = PlanePoly(("x", "y"), {(2, 1): P.one()})
    gt = g.skew_substitute("x", "y", P.one(), 0, "z")
    assert set(gt.coeffs) == {(2, 1), (1, 2), (0, 3)}
    assert gt.coefficient((1, 2)) == P.constant(-2)


def test_affine_compose_invertibility():
    g = PlanePoly(("x", "y"), {(1, 1): P.one()})
    with pytest.raises(ValueError):
        g.affine_compose(
            ("u", "v"),
            {"x": (0, {"u": 1, "v": 1}), "y": (0, {"u": 1, "v": 1})},
        )
    out = g.affine_compose(
        ("u", "v"),
        {"x": (P.t_power(1), {"u": 1}), "y": (0, {"u": 1, "v": 1})},
    )
    # (u + t)(u + v) = u^2 + uv + tu + tv
    assert out.coefficient((2, 0)) == P.one()
    assert out.coefficient((1, 1)) == P.one()
    assert out.coefficient((1, 0)) == P.t_power(1)
    assert out.coefficient((0, 1)) == P.t_power(1)


def test_rescale_normalize_moves_heights():
    g = PlanePoly(
        ("x", "y"),
        {(0, 0): P.one(), (1, 0): P.t_power(-2), (0, 1): P.t_power(2)},
    )
    # plane h = 2*i - j + 0 supports (0,0) and (1,0) from above
    out, record = g.rescale_normalize(F(2), F(-1), F(0))
    h = out.heights()
    assert h[(0, 0)] == 0
    assert h[(1, 0)] == 0
    assert h[(0, 1)] < 0
    assert record == (F(2), F(-1), F(0))


def test_evaluate_matches_substitution():
    rng = random.Random(14)
    for _ in range(10):
        g = _random_poly(rng)
        xv = P.t_power(1) + P.one()
        yv = P.constant(3)
        direct = g.evaluate({"x": xv, "y": yv})
        total = P.zero()
        for (i, j), c in g.coeffs.items():
            total = total + c * xv**i * yv**j
        assert direct == total


def test_three_and_four_variable_support():
    g = PlanePoly(("x", "y", "z"), {(1, 1, 1): P.one()})
    h = g * g
    assert h.coefficient((2, 2, 2)) == P.one()
    with pytest.raises(ValueError):
        PlanePoly(("a", "b", "c", "d", "e"), {})
