"""Step functions on p-adic cells and the fast Vilenkin-Chrestenson transform.

Digit pairing contract: the character with Paley index m = sum_k l_k p^k
takes the value omega^(sum_k l_k c_{k+1}), omega = exp(2 pi i / p), on the
cell with digit view (c_1, ..., c_L). Position k therefore reads the
(k+1)-th fractional digit, and every routine below implements exactly this
pairing. Output arrays are directly Paley-indexed; the digit reversal this
requires is internal and never exposed.

Normalization: `forward` carries the p^-L Haar factor, so the coefficient
array of a mass-one density is O(1) and can be compared literally against
measure constructions; `inverse` carries none, hence inverse(e_m) is the
character itself. With this convention convolution of densities,
(f * g)(x) = integral f(x - z) g(z) dmu(z) over the coordinate group,
becomes the pointwise product of coefficient arrays.

The fast path runs L stages of p-point DFT contractions, one per digit
axis, in O(L p^(L+1)) scalar operations. `naive_forward` retains the
quadratic-cost defining sum as the reference implementation; the two must
agree to rounding on every input.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import MAX_DIRECT_CELLS, check_base_level
from .errors import GuardExceeded, InsufficientLevel, InvalidExponent, LevelMismatch
from .padic import CellIndex, PaleyIndex


def root_of_unity_powers(p: int) -> np.ndarray:
    """[omega^0, ..., omega^(p-1)] computed from exact angles 2 pi l / p."""
    return np.exp(2j * np.pi * np.arange(p) / p)


@dataclass(frozen=True, eq=False, repr=False)
class StepFunction:
    """A complex function on [0,1) constant on the p^level cells of one level.

    values[c] is the value on cell c; the Haar integral is the mean
    p^-level * sum(values).
    """

    p: int
    level: int
    values: np.ndarray

    def __post_init__(self) -> None:
        check_base_level(self.p, self.level)
        arr = np.ascontiguousarray(self.values, dtype=np.complex128)
        if arr.shape != (self.p**self.level,):
            raise LevelMismatch(
                f"expected {self.p ** self.level} cell values, got shape {arr.shape}"
            )
        object.__setattr__(self, "values", arr)

    def integral(self) -> complex:
        return complex(self.values.sum() * self.p ** (-self.level))

    def __repr__(self) -> str:
        return f"StepFunction(p={self.p}, level={self.level}, cells={self.values.size})"


@dataclass(frozen=True, eq=False, repr=False)
class Spectrum:
    """Fourier coefficients of a step function, indexed by Paley index."""

    p: int
    level: int
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        check_base_level(self.p, self.level)
        arr = np.ascontiguousarray(self.coeffs, dtype=np.complex128)
        if arr.shape != (self.p**self.level,):
            raise LevelMismatch(
                f"expected {self.p ** self.level} coefficients, got shape {arr.shape}"
            )
        object.__setattr__(self, "coeffs", arr)

    def __repr__(self) -> str:
        return f"Spectrum(p={self.p}, level={self.level}, size={self.coeffs.size})"


def rademacher_value(k: int, l: int, cell: CellIndex) -> complex:
    """Value of R_k^l on a cell: omega^(l c_{k+1})."""
    if not 0 <= l < cell.p:
        raise InvalidExponent(f"exponent {l} out of range for base {cell.p}")
    if k < 0 or k + 1 > cell.level:
        raise InsufficientLevel(
            f"position {k} needs digit {k + 1} of a level-{cell.level} cell"
        )
    phase = (l * cell.digit(k + 1)) % cell.p
    return complex(np.exp(2j * np.pi * phase / cell.p))


def character_value(m: int | PaleyIndex, cell: CellIndex) -> complex:
    """Value of the character with Paley index m on a cell.

    Multiplicative over the coordinate group: the value at x - z equals the
    value at x times the conjugate value at z.
    """
    index = m if isinstance(m, PaleyIndex) else PaleyIndex.from_value(m, cell.p)
    if index.p != cell.p:
        raise LevelMismatch(f"index base {index.p} differs from cell base {cell.p}")
    if index.value >= cell.p**cell.level:
        raise InsufficientLevel(
            f"index {index.value} needs more than {cell.level} digits"
        )
    phase = 0
    for k, l in enumerate(index.digits):
        phase += l * cell.digit(k + 1)
    return complex(np.exp(2j * np.pi * (phase % cell.p) / cell.p))


def _dft_matrix(p: int, sign: int) -> np.ndarray:
    """p x p kernel omega^(sign * l * c) from exact angles."""
    phases = np.outer(np.arange(p), np.arange(p)) % p
    return np.exp(sign * 2j * np.pi * phases / p)


def _tensor_dft(values: np.ndarray, p: int, level: int, sign: int) -> np.ndarray:
    """Apply the p-point kernel along every digit axis, then relabel output
    axes so that the flat result is directly Paley-indexed (position k of
    the output pairs with fractional digit k+1 of the input)."""
    if level == 0:
        return np.asarray(values, dtype=np.complex128).copy()
    kernel = _dft_matrix(p, sign)
    a = np.ascontiguousarray(values, dtype=np.complex128)
    for j in range(level):
        a = np.matmul(kernel, a.reshape(p**j, p, p ** (level - 1 - j)))
    a = a.reshape((p,) * level).transpose(tuple(reversed(range(level))))
    return np.ascontiguousarray(a).reshape(p**level)


def forward(f: StepFunction) -> Spectrum:
    """Fast transform: coeffs[m] = p^-L sum_c values[c] conj(character_m(c))."""
    coeffs = _tensor_dft(f.values, f.p, f.level, sign=-1)
    coeffs *= f.p ** (-f.level)
    return Spectrum(f.p, f.level, coeffs)


def inverse(s: Spectrum) -> StepFunction:
    """Fast synthesis: values[c] = sum_m coeffs[m] character_m(c)."""
    values = _tensor_dft(s.coeffs, s.p, s.level, sign=+1)
    return StepFunction(s.p, s.level, values)


def _cell_digit_columns(p: int, level: int) -> np.ndarray:
    """(p^L, L) array; column k holds digit c_{k+1} of every cell index."""
    if level == 0:
        return np.zeros((1, 0), dtype=np.int64)
    idx = np.arange(p**level, dtype=np.int64)
    return np.stack([(idx // p ** (level - 1 - k)) % p for k in range(level)], axis=1)


def _paley_digit_columns(p: int, level: int) -> np.ndarray:
    """(p^L, L) array; column k holds digit k (exponent of position k)."""
    if level == 0:
        return np.zeros((1, 0), dtype=np.int64)
    idx = np.arange(p**level, dtype=np.int64)
    return np.stack([(idx // p**k) % p for k in range(level)], axis=1)


def character_matrix(p: int, level: int) -> np.ndarray:
    """Full (p^L, p^L) table of character values chi[m, c]. Quadratic cost;
    guarded to small grids."""
    if p**level > MAX_DIRECT_CELLS:
        raise GuardExceeded(
            f"character matrix needs {p}^{level} squared entries, above the guard"
        )
    mdig = _paley_digit_columns(p, level)
    cdig = _cell_digit_columns(p, level)
    phase = (mdig @ cdig.T) % p
    return root_of_unity_powers(p)[phase]


def naive_forward(f: StepFunction) -> Spectrum:
    """The defining double sum, kept as the reference for the fast path."""
    chi = character_matrix(f.p, f.level)
    coeffs = (np.conjugate(chi) @ f.values) * f.p ** (-f.level)
    return Spectrum(f.p, f.level, coeffs)


def _check_compatible(a, b) -> None:
    if a.p != b.p or a.level != b.level:
        raise LevelMismatch(
            f"operands live on different grids: ({a.p},{a.level}) vs ({b.p},{b.level})"
        )


def convolve(a: Spectrum, b: Spectrum) -> Spectrum:
    """Convolution of the underlying measures: pointwise coefficient product."""
    _check_compatible(a, b)
    return Spectrum(a.p, a.level, a.coeffs * b.coeffs)


def _group_sub_table(p: int, level: int) -> np.ndarray:
    """(p^L, p^L) table of x - z in the coordinate group."""
    xd = _cell_digit_columns(p, level)
    size = p**level
    table = np.zeros((size, size), dtype=np.int64)
    for k in range(level):
        table += ((xd[:, None, k] - xd[None, :, k]) % p) * p ** (level - 1 - k)
    return table


def convolve_functions(f: StepFunction, g: StepFunction) -> StepFunction:
    """Direct cell-domain convolution (f*g)(x) = p^-L sum_z f(x-z) g(z).

    Quadratic cost; guarded to small grids. Reference for `convolve`.
    """
    _check_compatible(f, g)
    if f.p**f.level > MAX_DIRECT_CELLS:
        raise GuardExceeded(
            f"direct convolution needs {f.p}^{f.level} squared entries, above the guard"
        )
    table = _group_sub_table(f.p, f.level)
    values = (f.values[table] @ g.values) * f.p ** (-f.level)
    return StepFunction(f.p, f.level, values)
