"""Chaos polynomials: sparse coefficient maps over Rademacher products.

A polynomial with top position N is constant on level-(N+1) cells, so its
synthesis, sup-norm and every convolution identity below are exact finite
computations (up to rounding), never sampled approximations.

The sup-norm is computed by full enumeration of the p^(N+1) cells through
the fast synthesis. Exponent projection is defined by coefficient
selection; convolution with the matching selector measure is the
verification route, kept separate so the two can be compared. The
order projection extracts one chaos order of a mixed polynomial and is
likewise verifiable against the order-selecting measure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Sequence

import numpy as np

from .config import (
    MAX_DECOMPOSITION_SEQUENCES,
    check_base_level,
    check_cell_guard,
)
from .errors import (
    CombinatorialBlowup,
    DegenerateInput,
    InsufficientLevel,
    InvalidExponent,
    InvalidOrder,
    LevelMismatch,
    MalformedIndex,
)
from .measures import MeasureRep, _validate_exponents
from .padic import ChaosTerm, CellIndex, paley_encode
from .transform import Spectrum, StepFunction, convolve, inverse


@dataclass(frozen=True)
class ChaosPolynomial:
    """Sparse complex coefficients on chaos terms with positions <= N.

    Immutable after construction. ``coeffs`` maps ChaosTerm -> complex;
    terms are grouped by order internally so mixed polynomials expose their
    pure parts cheaply. For a pure polynomial of order d the natural
    coefficient norm exponent is 2d/(d+1); for mixed polynomials the
    maximum order present is used.
    """

    p: int
    N: int
    coeffs: Mapping[ChaosTerm, complex]
    _parts: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        check_base_level(self.p, 0)
        if self.N < 0:
            raise MalformedIndex(f"top position must be >= 0, got {self.N}")
        normalized: dict[ChaosTerm, complex] = {}
        parts: dict[int, dict[ChaosTerm, complex]] = {}
        for term, c in self.coeffs.items():
            if term.max_position > self.N:
                raise MalformedIndex(
                    f"term positions {term.ks} exceed top position {self.N}"
                )
            if any(l >= self.p for l in term.ls):
                raise InvalidExponent(
                    f"exponents {term.ls} out of range for base {self.p}"
                )
            normalized[term] = complex(c)
            parts.setdefault(term.order, {})[term] = complex(c)
        object.__setattr__(self, "coeffs", normalized)
        object.__setattr__(self, "_parts", parts)

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(sorted(self._parts))

    @property
    def is_pure(self) -> bool:
        return len(self._parts) == 1

    @property
    def order(self) -> int:
        """Maximum chaos order present (0 for the empty polynomial)."""
        return max(self._parts, default=0)

    @property
    def sidon_exponent(self) -> float:
        """2d/(d+1) for the maximum order d present."""
        d = self.order
        if d == 0:
            raise DegenerateInput("the zero polynomial has no coefficient exponent")
        return 2 * d / (d + 1)

    def order_part(self, s: int) -> dict[ChaosTerm, complex]:
        return dict(self._parts.get(s, {}))

    def terms(self) -> list[ChaosTerm]:
        """Terms in the deterministic (positions, exponents) order."""
        return sorted(self.coeffs)

    def coefficient_vector(self) -> np.ndarray:
        """Coefficients in the deterministic enumeration order."""
        return np.array([self.coeffs[t] for t in self.terms()], dtype=np.complex128)


def polynomial_spectrum(
    Q: ChaosPolynomial, level: int, max_cells: int | None = None
) -> Spectrum:
    """Coefficient array of Q at the given level (exact placement)."""
    if level < Q.N + 1:
        raise InsufficientLevel(
            f"level {level} cannot hold positions up to {Q.N}"
        )
    check_cell_guard(Q.p, level, max_cells)
    coeffs = np.zeros(Q.p**level, dtype=np.complex128)
    for term, c in Q.coeffs.items():
        coeffs[paley_encode(term, Q.p).value] += c
    return Spectrum(Q.p, level, coeffs)


def synthesize(
    Q: ChaosPolynomial, level: int | None = None, max_cells: int | None = None
) -> StepFunction:
    """Evaluate Q on every cell of the given level (default N+1)."""
    level = Q.N + 1 if level is None else level
    return inverse(polynomial_spectrum(Q, level, max_cells))


def linf_norm(
    Q: ChaosPolynomial, max_cells: int | None = None
) -> tuple[float, CellIndex]:
    """Exact sup-norm over the p^(N+1) cells and the first cell attaining it."""
    f = synthesize(Q, max_cells=max_cells)
    magnitudes = np.abs(f.values)
    arg = int(np.argmax(magnitudes))
    return float(magnitudes[arg]), CellIndex(Q.p, f.level, arg)


def lq_norm(values: Sequence[complex], q: float) -> float:
    """(sum |c|^q)^(1/q) in the order given (0.0 for an empty sequence)."""
    if q <= 0:
        raise InvalidExponent(f"norm exponent must be positive, got {q}")
    mags = np.abs(np.asarray(values, dtype=np.complex128))
    if mags.size == 0:
        return 0.0
    return float((mags**q).sum() ** (1.0 / q))


def sidon_ratio(Q: ChaosPolynomial, max_cells: int | None = None) -> float:
    """Coefficient norm over sup-norm: lq(coeffs, 2d/(d+1)) / linf(Q)."""
    vector = Q.coefficient_vector()
    if vector.size == 0 or not np.any(vector):
        raise DegenerateInput("the zero polynomial has no norm ratio")
    sup, _ = linf_norm(Q, max_cells=max_cells)
    return lq_norm(vector, Q.sidon_exponent) / sup


def project_J(Q: ChaosPolynomial, J: Sequence[int]) -> ChaosPolynomial:
    """Keep exactly the terms whose exponents match J at their positions.

    Defined by coefficient selection; ``convolve_with_measure`` with the
    matching selector measure provides the independent route.
    """
    if Q.coeffs and not Q.is_pure:
        raise InvalidOrder("exponent projection needs a pure-order polynomial")
    J = _validate_exponents(Q.p, J)
    if len(J) != Q.N + 1:
        raise LevelMismatch(f"need {Q.N + 1} exponents, got {len(J)}")
    selected = {
        term: c
        for term, c in Q.coeffs.items()
        if all(l == J[k] for k, l in zip(term.ks, term.ls))
    }
    return ChaosPolynomial(Q.p, Q.N, selected)


def project_order(Q: ChaosPolynomial, s: int) -> ChaosPolynomial:
    """Pure order-s part of a mixed polynomial (zero when absent)."""
    if s < 1:
        raise InvalidOrder(f"order must be at least 1, got {s}")
    if Q.coeffs and s > Q.order:
        raise InvalidOrder(f"order {s} exceeds the maximum order {Q.order} present")
    return ChaosPolynomial(Q.p, Q.N, Q.order_part(s))


def convolve_with_measure(Q: ChaosPolynomial, measure: MeasureRep) -> Spectrum:
    """Coefficient array of Q convolved with a measure at the measure level."""
    if measure.p != Q.p:
        raise LevelMismatch(
            f"polynomial base {Q.p} differs from measure base {measure.p}"
        )
    return convolve(polynomial_spectrum(Q, measure.level), measure.spectrum)


def decomposition_residual(
    Q: ChaosPolynomial, max_sequences: int | None = None
) -> float:
    """Coefficient-level residual of averaging the exponent projections.

    Summing project_J over all (p-1)^(N+1) exponent sequences counts every
    term (p-1)^(N+1-d) times, so the scaled sum must reproduce Q exactly.
    """
    if not Q.coeffs:
        return 0.0
    if not Q.is_pure:
        raise InvalidOrder("the decomposition identity needs a pure-order polynomial")
    d = Q.order
    cap = MAX_DECOMPOSITION_SEQUENCES if max_sequences is None else max_sequences
    count = (Q.p - 1) ** (Q.N + 1)
    if count > cap:
        raise CombinatorialBlowup(
            f"(p-1)^(N+1) = {count} exponent sequences exceed the guard {cap}"
        )
    acc: dict[ChaosTerm, complex] = {term: 0j for term in Q.coeffs}
    for J in product(range(1, Q.p), repeat=Q.N + 1):
        for term, c in project_J(Q, J).coeffs.items():
            acc[term] += c
    scale = float(Q.p - 1) ** (-(Q.N + 1 - d))
    return max(abs(Q.coeffs[t] - scale * acc[t]) for t in Q.coeffs)
