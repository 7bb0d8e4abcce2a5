"""Exact tropical geometry of plane curves over Puiseux series.

The package tropicalizes plane curves with max-convention valuations, locates
vertices where the planar embedding hides cycle length behind a vanishing
local discriminant, and repairs such embeddings by linear re-embeddings in up
to four coordinates.
"""

from __future__ import annotations

from .series import (
    FieldElem,
    PuiseuxElement,
    QuadraticExtension,
    UnsupportedError,
    adjoin_quadratic,
)

__all__ = [
    "FieldElem",
    "PuiseuxElement",
    "QuadraticExtension",
    "UnsupportedError",
    "adjoin_quadratic",
]
