"""Finite-level Riesz product measures and the coefficient-shaping constructions.

A Riesz product density at level L is

    prod_{k=0}^{L-1} (1 + Re(a_k R_k^{j_k}(x))),   |a_k| <= 1,

which is non-negative with Haar integral 1, hence a probability density.
Every chaos statement made downstream concerns indices below p^L, and at
finite level all identities used here are exact: nothing approximates a
weak-* limit.

Because convolution acts as the pointwise product of coefficient arrays, a
polynomial applied to a base measure (with powers read as convolution
powers and the constant term as a point mass at 0) acts coefficientwise.
Both shaped constructions exploit that:

* ``lemma1_measure`` places a = exp(2 pi i / (2d+1)) on every factor whose
  character power is not self-conjugate (and 1 on the rest). The base
  coefficients on order-d indices then live in a finite alphabet in which
  the exponent-matched values are separated from every mismatched value;
  interpolating through that alphabet (1 on matched points, 0 elsewhere
  and at 0) yields a measure whose coefficients select exactly the order-d
  terms with exponents equal to a prescribed sequence J.

* ``lemma2_measure`` starts from the exponent-symmetric product with
  per-factor coefficient (R + R^2 + ... + R^(p-1))/p, whose coefficient at
  any index with s nonzero digits is p^-s. A degree-d polynomial with
  P(0) = 0, P(p^-s) = 1 and P(p^-j) = 0 for the other orders j <= d keeps
  one chaos order and kills the rest.

A factor 1 + Re(a_k R_k^{j_k}) involves a self-conjugate character power
exactly when 2 j_k = 0 mod p (only for even p at j_k = p/2). That
arithmetic predicate, never a numeric comparison, drives the special
coefficient rules above; at a self-conjugate position the matched base
coefficient is Re(a_k) instead of a_k / 2.

The interpolation systems are solved by Newton divided differences on the
stated node list followed by conversion to monomial coefficients; the
solution is rejected (``IllConditionedSystem``) if its Vandermonde residual
exceeds tolerance, never silently degraded.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly

from .config import (
    DEFAULT_TOLERANCES,
    MAX_SELECTOR_ORDER,
    check_cell_guard,
)
from .errors import (
    CoefficientOutOfRange,
    GuardExceeded,
    IllConditionedSystem,
    InsufficientLevel,
    InvalidExponent,
    InvalidOrder,
    LevelMismatch,
)
from .padic import enumerate_Nd, paley_encode
from .transform import Spectrum, StepFunction, forward, inverse


@dataclass(frozen=True, eq=False, repr=False)
class MeasureRep:
    """A finite-level measure: coefficient array plus variation metadata.

    ``variation`` is the exact finite-level total variation
    p^-L sum_c |density(c)|; construction-specific data (parameters, the
    shaping coefficient vector, the l1 variation bound) live in
    ``provenance``.
    """

    spectrum: Spectrum
    variation: float
    provenance: dict

    @property
    def p(self) -> int:
        return self.spectrum.p

    @property
    def level(self) -> int:
        return self.spectrum.level

    def __repr__(self) -> str:
        name = self.provenance.get("construction", "?")
        return (
            f"MeasureRep({name}, p={self.p}, level={self.level}, "
            f"variation={self.variation:.6g})"
        )


def is_self_conjugate(p: int, j: int) -> bool:
    """True when the power R^j of a position equals its own conjugate."""
    return (2 * j) % p == 0


def _validate_exponents(p: int, j: Sequence[int]) -> list[int]:
    out = [int(x) for x in j]
    for jk in out:
        if not 1 <= jk <= p - 1:
            raise InvalidExponent(f"exponent {jk} out of range 1..{p - 1}")
    return out


def riesz_density(
    p: int,
    level: int,
    a: Sequence[complex],
    j: Sequence[int],
    max_cells: int | None = None,
) -> StepFunction:
    """Level-L Riesz product density prod_k (1 + Re(a_k R_k^{j_k})).

    Real, non-negative, Haar integral 1 for any admissible coefficients.
    """
    check_cell_guard(p, level, max_cells)
    a = [complex(x) for x in a]
    j = _validate_exponents(p, j)
    if len(a) != level or len(j) != level:
        raise LevelMismatch(
            f"need {level} coefficients and exponents, got {len(a)} and {len(j)}"
        )
    for ak in a:
        if abs(ak) > 1 + 1e-12:
            raise CoefficientOutOfRange(f"|a_k| = {abs(ak)} exceeds 1")
    values = np.ones((p,) * level if level else (1,))
    digits = np.arange(p)
    for k in range(level):
        table = np.exp(2j * np.pi * ((j[k] * digits) % p) / p)
        factor = 1.0 + (a[k] * table).real
        shape = [1] * level
        shape[k] = p
        values = values * factor.reshape(shape)
    return StepFunction(p, level, values.reshape(p**level))


def lemma2_base_density(p: int, level: int, max_cells: int | None = None) -> StepFunction:
    """Exponent-symmetric product prod_k (1 + (R_k + ... + R_k^(p-1))/p).

    Its coefficient at any index with s nonzero digits equals p^-s.
    """
    check_cell_guard(p, level, max_cells)
    digits = np.arange(p)
    table = np.zeros(p, dtype=np.complex128)
    for l in range(1, p):
        table += np.exp(2j * np.pi * ((l * digits) % p) / p)
    factor = 1.0 + table.real / p
    values = np.ones((p,) * level if level else (1,))
    for k in range(level):
        shape = [1] * level
        shape[k] = p
        values = values * factor.reshape(shape)
    return StepFunction(p, level, values.reshape(p**level))


# ---------------------------------------------------------------------------
# Interpolation machinery
# ---------------------------------------------------------------------------


def _newton_coefficients(nodes: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Divided-difference table, vectorized column by column."""
    coef = np.asarray(values, dtype=np.complex128).copy()
    x = np.asarray(nodes, dtype=np.complex128)
    n = len(x)
    for order in range(1, n):
        coef[order:] = (coef[order:] - coef[order - 1 : n - 1]) / (
            x[order:] - x[: n - order]
        )
    return coef


def _newton_to_monomial(nodes: np.ndarray, newton: np.ndarray) -> np.ndarray:
    """Expand the Newton form into ascending monomial coefficients."""
    poly = np.array([newton[-1]], dtype=np.complex128)
    for i in range(len(newton) - 2, -1, -1):
        grown = np.zeros(len(poly) + 1, dtype=np.complex128)
        grown[1:] = poly
        grown[: len(poly)] -= nodes[i] * poly
        grown[0] += newton[i]
        poly = grown
    return poly


def interpolate_monomial(nodes: Sequence[complex], values: Sequence[complex]) -> np.ndarray:
    """Monomial coefficients (ascending) of the unique interpolant."""
    x = np.asarray(nodes, dtype=np.complex128)
    y = np.asarray(values, dtype=np.complex128)
    return _newton_to_monomial(x, _newton_coefficients(x, y))


@dataclass(frozen=True, eq=False)
class VandermondeSystem:
    """The solved coefficient-shaping system for one order d.

    nodes: 0 followed by the coefficient alphabet values t_{l,i}
    (blocks l = 0..d, i = 0..d-l); targets: 0, then 1 exactly at the
    matched value of each block (i = d-l); coefficients: ascending monomial
    solution of length (d+1)(d+2)/2 + 1; residual: max |T c - b| over the
    Vandermonde system.
    """

    d: int
    nodes: np.ndarray
    targets: np.ndarray
    coefficients: np.ndarray
    residual: float


def selector_nodes(d: int) -> tuple[np.ndarray, np.ndarray]:
    """Interpolation nodes and targets of the exponent-selector system.

    Node 0 first, then blocks l = 0..d of values t_{l,i} at radius
    2^-(d-l); the target is 1 exactly at the matched value of each block
    (i = d-l) and 0 elsewhere. Distinctness is asserted programmatically:
    within one block the angle differences 2(i-i')/(2d+1) never vanish
    mod 1, and across blocks the moduli differ.
    """
    if d < 1:
        raise InvalidOrder(f"order must be at least 1, got {d}")
    if d > MAX_SELECTOR_ORDER:
        raise GuardExceeded(
            f"order {d} exceeds the supported selector cap {MAX_SELECTOR_ORDER}"
        )
    nodes = [0j]
    targets = [0.0]
    for l in range(d + 1):
        for i in range(d - l + 1):
            nodes.append(
                np.exp(2j * np.pi * (2 * i - (d - l)) / (2 * d + 1)) / 2 ** (d - l)
            )
            targets.append(1.0 if i == d - l else 0.0)
    node_arr = np.array(nodes, dtype=np.complex128)
    target_arr = np.array(targets, dtype=np.complex128)
    gaps = np.abs(node_arr[:, None] - node_arr[None, :])
    np.fill_diagonal(gaps, np.inf)
    if gaps.min() < 1e-9:
        raise IllConditionedSystem("interpolation nodes are not pairwise distinct")
    return node_arr, target_arr


def selector_alphabet(d: int) -> np.ndarray:
    """The finite coefficient alphabet (0 plus all t_{l,i}) for order d."""
    return selector_nodes(d)[0]


def lemma1_system(d: int, residual_tol: float | None = None) -> VandermondeSystem:
    """Build and solve the exponent-selector interpolation system.

    The solution is the float64 monomial coefficient vector; its residual
    floor is about eps times the l1 norm of the exact coefficients, which
    grows so fast with d (roughly 4.4, 2.5e2, 9.3e5, 9.5e11, 1.0e21,
    4.6e33 for d = 1..6) that double precision meets the 1e-6 gate only
    for d <= 3. Larger orders raise IllConditionedSystem rather than
    degrade silently.
    """
    tol = DEFAULT_TOLERANCES.solve_residual if residual_tol is None else residual_tol
    node_arr, target_arr = selector_nodes(d)
    degree = (d + 1) * (d + 2) // 2
    coeffs = interpolate_monomial(node_arr, target_arr)
    powers = node_arr[:, None] ** np.arange(degree + 1)[None, :]
    residual = float(np.max(np.abs(powers @ coeffs - target_arr)))
    if residual > tol:
        raise IllConditionedSystem(
            f"interpolation residual {residual:.3e} exceeds {tol:.1e}"
        )
    return VandermondeSystem(d, node_arr, target_arr, coeffs, residual)


# ---------------------------------------------------------------------------
# Measure constructions
# ---------------------------------------------------------------------------


def _measure_from_spectrum(spectrum: Spectrum, provenance: dict) -> MeasureRep:
    density = inverse(spectrum)
    variation = float(
        np.abs(density.values).sum() * spectrum.p ** (-spectrum.level)
    )
    return MeasureRep(spectrum, variation, provenance)


def lemma1_measure(
    p: int,
    d: int,
    J: Sequence[int],
    level: int,
    max_cells: int | None = None,
) -> MeasureRep:
    """Measure whose coefficients select order-d terms with exponents J.

    On every order-d index the coefficient is 1 when all exponents match
    J at the term positions and 0 otherwise. The exact finite-level
    variation is returned; the l1 norm of the shaping coefficients, an
    upper bound for it independent of J, is recorded in the provenance.
    """
    J = _validate_exponents(p, J)
    if len(J) != level:
        raise LevelMismatch(f"need {level} exponents, got {len(J)}")
    system = lemma1_system(d)
    a = complex(np.exp(2j * np.pi / (2 * d + 1)))
    factors = [1.0 + 0j if is_self_conjugate(p, jk) else a for jk in J]
    rho_hat = forward(riesz_density(p, level, factors, J, max_cells))
    nu_coeffs = npoly.polyval(rho_hat.coeffs, system.coefficients)
    spectrum = Spectrum(p, level, nu_coeffs)
    provenance = {
        "construction": "lemma1",
        "p": p,
        "d": d,
        "J": tuple(J),
        "coefficients": system.coefficients.copy(),
        "variation_bound": float(np.abs(system.coefficients).sum()),
        "solve_residual": system.residual,
    }
    return _measure_from_spectrum(spectrum, provenance)


def lemma2_polynomial(p: int, d: int, s: int) -> np.ndarray:
    """Ascending coefficients of the order-selecting polynomial.

    Degree d, P(0) = 0, P(p^-s) = 1, P(p^-j) = 0 for j in 1..d, j != s.
    The constant term is exactly zero (node 0 leads the Newton node list).
    """
    if d < 1:
        raise InvalidOrder(f"order must be at least 1, got {d}")
    if not 1 <= s <= d:
        raise InvalidOrder(f"selected order {s} not in 1..{d}")
    nodes = np.array([0.0] + [float(p) ** -j for j in range(1, d + 1)])
    values = np.array([0.0] + [1.0 if j == s else 0.0 for j in range(1, d + 1)])
    return interpolate_monomial(nodes, values).real


def lemma2_measure(
    p: int,
    d: int,
    s: int,
    level: int,
    max_cells: int | None = None,
) -> MeasureRep:
    """Measure keeping chaos order s and killing every other order <= d."""
    coeffs = lemma2_polynomial(p, d, s)
    if level < 1:
        raise LevelMismatch(f"level must be at least 1, got {level}")
    rho_hat = forward(lemma2_base_density(p, level, max_cells))
    nu_coeffs = npoly.polyval(rho_hat.coeffs, coeffs.astype(np.complex128))
    spectrum = Spectrum(p, level, nu_coeffs)
    provenance = {
        "construction": "lemma2",
        "p": p,
        "d": d,
        "s": s,
        "coefficients": coeffs.copy(),
        "variation_bound": float(np.abs(coeffs).sum()),
    }
    return _measure_from_spectrum(spectrum, provenance)


def rho_y_measure(
    p: int,
    J: Sequence[int],
    signs: Sequence[int],
    level: int,
    max_cells: int | None = None,
) -> MeasureRep:
    """Sign-modulated Riesz product: a_k = signs[k] on non-self-conjugate
    factors and signs[k]/2 on self-conjugate ones.

    Its coefficient at the J-matched index over positions k_1 < ... < k_d
    equals (prod_i signs[k_i]) / 2^d, and its total variation is 1.
    """
    J = _validate_exponents(p, J)
    signs = [int(x) for x in signs]
    if len(J) != level or len(signs) != level:
        raise LevelMismatch(
            f"need {level} exponents and signs, got {len(J)} and {len(signs)}"
        )
    for sk in signs:
        if sk not in (-1, 1):
            raise CoefficientOutOfRange(f"signs must be +-1, got {sk}")
    a = [
        complex(sk) / 2 if is_self_conjugate(p, jk) else complex(sk)
        for sk, jk in zip(signs, J)
    ]
    density = riesz_density(p, level, a, J, max_cells)
    spectrum = forward(density)
    variation = float(np.abs(density.values).sum() * p ** (-level))
    provenance = {
        "construction": "rho_y",
        "p": p,
        "J": tuple(J),
        "signs": tuple(signs),
    }
    return MeasureRep(spectrum, variation, provenance)


def total_variation(measure: MeasureRep) -> float:
    """Exact finite-level variation p^-L sum |density|, recomputed from the
    coefficient array."""
    density = inverse(measure.spectrum)
    return float(np.abs(density.values).sum() * measure.p ** (-measure.level))


# ---------------------------------------------------------------------------
# Pattern residuals (shared by the CLI, the verification suite and tests)
# ---------------------------------------------------------------------------


def lemma1_pattern_residual(
    measure: MeasureRep, d: int, J: Sequence[int], N: int
) -> tuple[float, float]:
    """(max |coeff - 1| over J-matched order-d indices,
    max |coeff| over mismatched ones), exhaustively over positions 0..N."""
    p = measure.p
    if measure.level < N + 1:
        raise InsufficientLevel(
            f"measure level {measure.level} cannot resolve positions up to {N}"
        )
    J = _validate_exponents(p, J)
    matched, mismatched = 0.0, 0.0
    for term in enumerate_Nd(p, d, N):
        value = measure.spectrum.coeffs[paley_encode(term, p).value]
        if all(l == J[k] for k, l in zip(term.ks, term.ls)):
            matched = max(matched, abs(value - 1.0))
        else:
            mismatched = max(mismatched, abs(value))
    return matched, mismatched


def lemma2_pattern_residual(
    measure: MeasureRep, d: int, s: int, N: int
) -> tuple[float, float]:
    """(max |coeff - 1| over order-s indices,
    max |coeff| over orders j <= d, j != s), positions 0..N."""
    p = measure.p
    if measure.level < N + 1:
        raise InsufficientLevel(
            f"measure level {measure.level} cannot resolve positions up to {N}"
        )
    kept, killed = 0.0, 0.0
    for order in range(1, d + 1):
        if order > N + 1:
            continue
        for term in enumerate_Nd(p, order, N):
            value = measure.spectrum.coeffs[paley_encode(term, p).value]
            if order == s:
                kept = max(kept, abs(value - 1.0))
            else:
                killed = max(killed, abs(value))
    return kept, killed
