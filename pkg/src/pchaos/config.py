"""Shared numerical tolerances and resource guards.

Tolerances are stated exactly once, here. Three broad tiers are used:
measure-construction identities (1e-8), transform identities (1e-10) and
interpolation-solve residuals (1e-6). A handful of checks carry their own
sharper constants (mass identities, exact transform agreement, character
arithmetic) because those quantities are exact up to rounding.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import GuardExceeded

# Hard caps: p^level must stay machine-word indexable.
MAX_BASE = 16
MAX_LEVEL = 24

# Soft cap on allocated cell grids; overridable per call.
MAX_CELLS = 2**24

# Cap on the number of exponent sequences enumerated by the decomposition identity.
MAX_DECOMPOSITION_SEQUENCES = 10**6

# Largest supported order for the exponent-selecting measure construction.
MAX_SELECTOR_ORDER = 6

# Largest cell count for which quadratic-cost reference algorithms
# (naive transform, direct cell-domain convolution) are permitted.
MAX_DIRECT_CELLS = 3**7

# Sharp per-check constants (identities exact up to float rounding).
MASS_TOL = 1e-12
EXACT_TRANSFORM_TOL = 1e-12
CHARACTER_TOL = 1e-14
EXACT_RATIO_TOL = 1e-12
LEMMA1_PATTERN_TOL = 1e-6


@dataclass(frozen=True)
class Tolerances:
    """The three shared tolerance tiers."""

    construction: float = 1e-8
    transform: float = 1e-10
    solve_residual: float = 1e-6

    def with_overrides(self, **kwargs: float) -> "Tolerances":
        return replace(self, **kwargs)


DEFAULT_TOLERANCES = Tolerances()


def check_base_level(p: int, level: int) -> None:
    """Validate the hard caps on base and level."""
    if p < 2:
        raise GuardExceeded(f"base must be >= 2, got {p}")
    if p > MAX_BASE:
        raise GuardExceeded(f"base {p} exceeds the supported cap {MAX_BASE}")
    if level < 0:
        raise GuardExceeded(f"level must be >= 0, got {level}")
    if level > MAX_LEVEL:
        raise GuardExceeded(f"level {level} exceeds the supported cap {MAX_LEVEL}")


def check_cell_guard(p: int, level: int, max_cells: int | None = None) -> None:
    """Validate that a p^level cell grid fits the allocation guard."""
    check_base_level(p, level)
    cap = MAX_CELLS if max_cells is None else max_cells
    if p**level > cap:
        raise GuardExceeded(f"p^level = {p}^{level} exceeds the cell guard {cap}")
