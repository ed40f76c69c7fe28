"""Digit arithmetic, Paley round trips and index-set combinatorics."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pchaos import (
    CellIndex,
    ChaosTerm,
    EmptyIndexSet,
    LevelMismatch,
    MalformedIndex,
    NotAChaosIndex,
    enumerate_Nd,
    from_digits,
    group_add,
    group_sub,
    paley_decode,
    paley_encode,
    to_digits,
)


@pytest.mark.parametrize(
    "n,p,length,expected",
    [
        (5, 2, 4, (1, 0, 1, 0)),
        (0, 3, 2, (0, 0)),
        (7, 3, 3, (1, 2, 0)),
    ],
)
def test_to_digits(n, p, length, expected):
    assert to_digits(n, p, length) == expected


def test_to_digits_overflow():
    with pytest.raises(MalformedIndex):
        to_digits(9, 3, 2)
    with pytest.raises(MalformedIndex):
        to_digits(-1, 2, 3)


@pytest.mark.parametrize(
    "p,ks,ls,value",
    [
        (2, (0, 1), (1, 1), 3),
        (3, (0, 1), (2, 1), 5),
    ],
)
def test_paley_encode(p, ks, ls, value):
    assert paley_encode(ChaosTerm(ks, ls), p).value == value


def test_paley_decode():
    term = paley_decode(6, 3)
    assert term.ks == (1,) and term.ls == (2,)
    with pytest.raises(NotAChaosIndex):
        paley_decode(0, 3)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_paley_round_trip(data):
    p = data.draw(st.integers(min_value=2, max_value=16))
    d = data.draw(st.integers(min_value=1, max_value=4))
    ks = tuple(
        sorted(
            data.draw(
                st.sets(st.integers(min_value=0, max_value=10), min_size=d, max_size=d)
            )
        )
    )
    ls = tuple(
        data.draw(st.integers(min_value=1, max_value=p - 1)) for _ in range(d)
    )
    term = ChaosTerm(ks, ls)
    assert paley_decode(paley_encode(term, p), p) == term


def test_chaos_term_invariants():
    with pytest.raises(MalformedIndex):
        ChaosTerm((1, 1), (1, 1))
    with pytest.raises(MalformedIndex):
        ChaosTerm((2, 1), (1, 1))
    with pytest.raises(MalformedIndex):
        ChaosTerm((), ())


def test_cell_digits_round_trip():
    cell = CellIndex(3, 2, 7)
    assert cell.digits == (2, 1)
    assert CellIndex.from_digits(3, (2, 1)) == cell
    assert cell.digit(1) == 2 and cell.digit(2) == 1


@pytest.mark.parametrize(
    "p,x,z,expected",
    [
        (3, (2, 1), (1, 2), (1, 2)),
        (2, (1, 1, 0), (1, 1, 0), (0, 0, 0)),
    ],
)
def test_group_sub(p, x, z, expected):
    result = group_sub(CellIndex.from_digits(p, x), CellIndex.from_digits(p, z))
    assert result.digits == expected


def test_group_sub_identity():
    x = CellIndex(5, 3, 88)
    zero = CellIndex(5, 3, 0)
    assert group_sub(x, zero) == x


def test_group_sub_level_mismatch():
    with pytest.raises(LevelMismatch):
        group_sub(CellIndex(3, 2, 0), CellIndex(3, 3, 0))
    with pytest.raises(LevelMismatch):
        group_sub(CellIndex(3, 2, 0), CellIndex(2, 2, 0))


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_group_axioms(data):
    p = data.draw(st.integers(min_value=2, max_value=7))
    level = data.draw(st.integers(min_value=1, max_value=5))
    size = p**level
    x = CellIndex(p, level, data.draw(st.integers(min_value=0, max_value=size - 1)))
    y = CellIndex(p, level, data.draw(st.integers(min_value=0, max_value=size - 1)))
    assert group_sub(x, x).index == 0
    assert group_sub(group_add(x, y), y) == x


@pytest.mark.parametrize(
    "p,d,N,expected_indices",
    [
        (2, 1, 1, {1, 2}),
        (3, 1, 1, {1, 2, 3, 6}),
        (2, 2, 1, {3}),
    ],
)
def test_enumerate_examples(p, d, N, expected_indices):
    indices = {paley_encode(t, p).value for t in enumerate_Nd(p, d, N)}
    assert indices == expected_indices


@pytest.mark.parametrize("p,d,N", [(2, 2, 5), (3, 2, 4), (5, 3, 4), (4, 1, 6)])
def test_enumerate_count_and_order(p, d, N):
    terms = enumerate_Nd(p, d, N)
    assert len(terms) == math.comb(N + 1, d) * (p - 1) ** d
    assert terms == sorted(terms)
    assert len(set(terms)) == len(terms)


def test_enumerate_empty():
    with pytest.raises(EmptyIndexSet):
        enumerate_Nd(2, 3, 1)


def test_from_digits_rejects_bad_digit():
    with pytest.raises(MalformedIndex):
        from_digits((0, 3), 3)
