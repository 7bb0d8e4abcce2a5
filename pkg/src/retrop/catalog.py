"""Worked example curves used by the tests, demos, and the corpus command.

Each builder returns a fresh PlanePoly over Puiseux series.  The names
describe what the curve exhibits, not where it comes from:

  * two_step_cubic: elliptic cubic whose cycle only appears after two
    successive linear modifications (one vertical, one at a shifted level),
    j-invariant valuation -8;
  * wide_gap_cubic: elliptic cubic needing modifications in both variables
    and a final merge into ambient dimension 4, j-invariant valuation -15;
  * fat_end_cubic: elliptic cubic with a multiplicity-2 end whose unfolding
    fails (both base polynomials of the dual cell degenerate together),
    j-invariant valuation -10.
"""

from __future__ import annotations

from .polynomials import PlanePoly, poly_from_pairs
from .series import PuiseuxElement


def _series(*terms) -> PuiseuxElement:
    total = PuiseuxElement.zero()
    for coef, exp in terms:
        total = total + PuiseuxElement.term(coef, exp)
    return total


def two_step_cubic() -> PlanePoly:
    """Cycle appears after a vertical modification followed by a second one."""
    return poly_from_pairs(
        ("x", "y"),
        [
            ((3, 0), _series((-1, 3))),
            ((2, 1), _series((1, 4), (1, 5))),
            ((1, 2), _series((-1, 5), (1, 6))),
            ((0, 3), _series((1, 3))),
            ((2, 0), _series((1, 2), (-1, 3))),
            ((1, 1), 4),
            ((0, 2), _series((2, 2), (3, 3))),
            ((1, 0), 2),
            ((0, 1), _series((2, 0), (2, 1))),
            ((0, 0), _series((1, 0), (1, 1))),
        ],
    )


def wide_gap_cubic() -> PlanePoly:
    """Needs modifications in both variables and a merge into dimension 4."""
    return poly_from_pairs(
        ("x", "y"),
        [
            ((3, 0), 1),
            ((2, 1), _series((1, 0), (-9, 2))),
            ((1, 2), _series((2, 4))),
            ((0, 3), _series((1, 20))),
            ((2, 0), _series((1, 0), (-24, 9), (-1, 40))),
            ((1, 1), _series((1, 0), (5, 1), (-16, 9), (144, 11))),
            # The 20*t^9 term is load-bearing: without it the discriminant
            # valuation drops from 15 to 14, and the chart obtained by the
            # modifications in both variables loses the multiplicity-one
            # crossing vertex at (-5, 3) that certifies termination.
            ((0, 2), _series((20, 9), (8, 67))),
            ((1, 0), _series((1, 0), (-16, 9), (1, 15), (192, 18))),
            ((0, 1), _series((2, 4), (64, 18), (-576, 20))),
            ((0, 0), _series((1, 0), (-8, 9), (64, 18), (-8, 24))),
        ],
    )


def fat_end_cubic() -> PlanePoly:
    """Multiplicity-2 end whose unfolding by one modification is impossible."""
    return poly_from_pairs(
        ("x", "y"),
        [
            ((3, 0), _series((1, 10))),
            ((1, 2), 1),
            ((0, 3), _series((1, 11))),
            ((2, 0), 1),
            ((1, 1), 4),
            ((1, 0), 2),
            ((0, 0), 1),
        ],
    )
