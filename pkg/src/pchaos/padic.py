"""Base-p digit arithmetic, Paley indexing and chaos-term combinatorics.

Conventions fixed here and relied on everywhere else:

* Rademacher positions k are 0-based.
* A level-L cell is the interval [c p^-L, (c+1) p^-L); its digit view
  (c_1, ..., c_L) lists the first L fractional base-p digits, so
  c = sum_j c_j p^(L-j).
* Paley indices are read least-significant digit first: digit k of the
  index n = sum_k l_k p^k is the exponent attached to position k.
* Index enumerations are lexicographic in (positions, exponents), so
  coefficient vectors, norms and reports are reproducible byte for byte.

All operations are pure functions on immutable values; they are safe to
call from any number of concurrent workers.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Sequence

from .config import check_base_level
from .errors import (
    EmptyIndexSet,
    InsufficientLevel,
    InvalidExponent,
    InvalidOrder,
    LevelMismatch,
    MalformedIndex,
    NotAChaosIndex,
)


def to_digits(n: int, p: int, length: int) -> tuple[int, ...]:
    """Least-significant-first base-p digits of n, zero-padded to length."""
    if p < 2:
        raise MalformedIndex(f"base must be >= 2, got {p}")
    if n < 0:
        raise MalformedIndex(f"expected a natural number, got {n}")
    if length < 0 or n >= p**length:
        raise MalformedIndex(f"{n} does not fit in {length} base-{p} digits")
    digits = []
    v = n
    for _ in range(length):
        digits.append(v % p)
        v //= p
    return tuple(digits)


def from_digits(digits: Iterable[int], p: int) -> int:
    """Inverse of to_digits: recombine least-significant-first digits."""
    if p < 2:
        raise MalformedIndex(f"base must be >= 2, got {p}")
    value = 0
    for k, digit in enumerate(digits):
        if not 0 <= digit < p:
            raise MalformedIndex(f"digit {digit} out of range for base {p}")
        value += digit * p**k
    return value


@dataclass(frozen=True)
class PaleyIndex:
    """A natural number with its base-p expansion; addresses one character.

    `digits` is least-significant first with no trailing zeros, so
    value = sum_k digits[k] p^k and digit k is the exponent of position k.
    """

    value: int
    p: int
    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.p < 2:
            raise MalformedIndex(f"base must be >= 2, got {self.p}")
        if self.value < 0:
            raise MalformedIndex(f"expected a natural number, got {self.value}")
        if self.digits and self.digits[-1] == 0:
            raise MalformedIndex("digit expansion has trailing zeros")
        if from_digits(self.digits, self.p) != self.value:
            raise MalformedIndex("digits do not reproduce the stored value")

    @classmethod
    def from_value(cls, value: int, p: int) -> "PaleyIndex":
        if p < 2:
            raise MalformedIndex(f"base must be >= 2, got {p}")
        if value < 0:
            raise MalformedIndex(f"expected a natural number, got {value}")
        length, v = 0, value
        while v:
            length += 1
            v //= p
        return cls(value, p, to_digits(value, p, length))

    def digit(self, k: int) -> int:
        """Exponent of position k (0 beyond the stored expansion)."""
        return self.digits[k] if 0 <= k < len(self.digits) else 0

    @property
    def order(self) -> int:
        """Number of nonzero digits, the chaos order of the index."""
        return sum(1 for d in self.digits if d)


@dataclass(frozen=True, order=True)
class ChaosTerm:
    """One product term over positions ks with exponents ls.

    Positions are strictly increasing; every exponent is at least 1. The
    upper exponent bound depends on the base and is checked where a base is
    available (encoding, polynomial construction).
    """

    ks: tuple[int, ...]
    ls: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "ks", tuple(int(k) for k in self.ks))
        object.__setattr__(self, "ls", tuple(int(l) for l in self.ls))
        if len(self.ks) != len(self.ls):
            raise MalformedIndex("position and exponent tuples differ in length")
        if not self.ks:
            raise MalformedIndex("a chaos term needs at least one position")
        if self.ks[0] < 0 or any(a >= b for a, b in zip(self.ks, self.ks[1:])):
            raise MalformedIndex("positions must be strictly increasing and non-negative")
        if any(l < 1 for l in self.ls):
            raise InvalidExponent("exponents must be at least 1")

    @property
    def order(self) -> int:
        return len(self.ks)

    @property
    def max_position(self) -> int:
        return self.ks[-1]


def paley_encode(term: ChaosTerm, p: int) -> PaleyIndex:
    """Paley index of a term: n = sum_i ls[i] p^ks[i]."""
    if any(l >= p for l in term.ls):
        raise InvalidExponent(f"exponents {term.ls} out of range for base {p}")
    value = sum(l * p**k for k, l in zip(term.ks, term.ls))
    return PaleyIndex.from_value(value, p)


def paley_decode(n: int | PaleyIndex, p: int | None = None) -> ChaosTerm:
    """Unique term whose exponents are the nonzero digits of n."""
    if isinstance(n, PaleyIndex):
        index = n
    else:
        if p is None:
            raise MalformedIndex("a base is required to decode a raw integer")
        index = PaleyIndex.from_value(n, p)
    if index.value == 0:
        raise NotAChaosIndex("0 is not a chaos index")
    ks = tuple(k for k, d in enumerate(index.digits) if d)
    ls = tuple(d for d in index.digits if d)
    return ChaosTerm(ks, ls)


@dataclass(frozen=True)
class CellIndex:
    """Address of one p-adic interval [index p^-level, (index+1) p^-level)."""

    p: int
    level: int
    index: int

    def __post_init__(self) -> None:
        check_base_level(self.p, self.level)
        if not 0 <= self.index < self.p**self.level:
            raise MalformedIndex(
                f"cell index {self.index} out of range for level {self.level}"
            )

    @classmethod
    def from_digits(cls, p: int, digits: Sequence[int]) -> "CellIndex":
        """Build a cell from its digit view (c_1, ..., c_L)."""
        index = from_digits(tuple(reversed(tuple(digits))), p)
        return cls(p, len(tuple(digits)), index)

    @property
    def digits(self) -> tuple[int, ...]:
        """Digit view (c_1, ..., c_L), first fractional digit first."""
        return tuple(reversed(to_digits(self.index, self.p, self.level)))

    def digit(self, j: int) -> int:
        """The j-th fractional digit c_j (1-based)."""
        if not 1 <= j <= self.level:
            raise InsufficientLevel(
                f"digit {j} requested from a level-{self.level} cell"
            )
        return (self.index // self.p ** (self.level - j)) % self.p

    @property
    def left_endpoint(self) -> float:
        return self.index / self.p**self.level


def _check_same_grid(x: CellIndex, z: CellIndex) -> None:
    if x.p != z.p or x.level != z.level:
        raise LevelMismatch(
            f"cells live on different grids: ({x.p},{x.level}) vs ({z.p},{z.level})"
        )


def group_sub(x: CellIndex, z: CellIndex) -> CellIndex:
    """Digitwise difference x - z mod p, the coordinate-group subtraction."""
    _check_same_grid(x, z)
    digits = tuple((a - b) % x.p for a, b in zip(x.digits, z.digits))
    return CellIndex.from_digits(x.p, digits) if x.level else x


def group_add(x: CellIndex, z: CellIndex) -> CellIndex:
    """Digitwise sum x + z mod p, inverse of group_sub in the second slot."""
    _check_same_grid(x, z)
    digits = tuple((a + b) % x.p for a, b in zip(x.digits, z.digits))
    return CellIndex.from_digits(x.p, digits) if x.level else x


def enumerate_Nd(p: int, d: int, N: int) -> list[ChaosTerm]:
    """All order-d chaos terms with positions in 0..N.

    The listing is lexicographic in (ks, ls) and has exactly
    C(N+1, d) (p-1)^d entries.
    """
    if p < 2:
        raise MalformedIndex(f"base must be >= 2, got {p}")
    if d < 1:
        raise InvalidOrder(f"order must be at least 1, got {d}")
    if d > N + 1:
        raise EmptyIndexSet(f"order {d} exceeds the {N + 1} available positions")
    terms = []
    for ks in combinations(range(N + 1), d):
        for ls in product(range(1, p), repeat=d):
            terms.append(ChaosTerm(ks, ls))
    return terms
