import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from racetrack.bitword import (
    Word,
    concat,
    delete,
    delete_burst,
    leftmost_diff,
    longest_periodic,
    longest_run,
    longest_zero_run,
    period_check,
    runs,
    sticky_insert,
    subword,
)
from racetrack.errors import ParameterError

U = Word("001101011")

words = st.lists(st.integers(0, 1), max_size=16).map(Word)
nonempty = st.lists(st.integers(0, 1), min_size=1, max_size=16).map(Word)


def all_words(max_len):
    for n in range(max_len + 1):
        for bits in itertools.product((0, 1), repeat=n):
            yield Word(bits)


def naive_periodic(u, ell):
    best = 0
    for i in range(len(u)):
        for j in range(i + ell, len(u) + 1):
            v = u[i:j]
            if all(v[k] == v[k + ell] for k in range(len(v) - ell)):
                best = max(best, j - i)
    return best


def is_subsequence(small, big):
    it = iter(big)
    return all(any(x == y for y in it) for x in small)


class TestWord:
    def test_text_round_trip(self):
        assert str(Word("0101")) == "0101"
        assert Word("0101") == Word([0, 1, 0, 1])
        assert repr(Word("01")) == "Word('01')"

    def test_rejects_other_symbols(self):
        with pytest.raises(ParameterError):
            Word("012")
        with pytest.raises(ParameterError):
            Word([0, 2])
        with pytest.raises(ParameterError):
            Word([0.5])

    def test_bools_normalise(self):
        assert Word([True, False]) == (1, 0)

    def test_empty_allowed(self):
        assert len(Word("")) == 0
        assert str(concat(Word(""), Word("1"))) == "1"

    def test_slices_stay_words(self):
        assert isinstance(U[2:5], Word)
        assert isinstance(U + Word("1"), Word)


def test_subword():
    assert subword(U, 4, 8) == Word("10101")
    assert subword(Word("01"), 1, 2) == Word("01")
    assert subword(Word("011"), 2, 2) == Word("1")
    with pytest.raises(IndexError):
        subword(U, 0, 3)
    with pytest.raises(IndexError):
        subword(U, 5, 10)


def test_longest_periodic_examples():
    assert longest_periodic(U, 1) == 2
    assert longest_periodic(U, 2) == 5
    assert longest_periodic(U, len(U)) == len(U)
    with pytest.raises(ParameterError):
        longest_periodic(U, 10)
    with pytest.raises(ParameterError):
        longest_periodic(U, 0)


def test_longest_periodic_matches_naive_scan():
    for u in all_words(10):
        for ell in range(1, len(u) + 1):
            assert longest_periodic(u, ell) == naive_periodic(u, ell), (u, ell)


@given(nonempty)
def test_period_one_is_longest_run(u):
    assert longest_periodic(u, 1) == longest_run(u)


def test_longest_zero_run():
    assert longest_zero_run(Word("0110100010")) == 3
    assert longest_zero_run(Word("11111")) == 0
    assert longest_zero_run(Word("0000000")) == 7


def test_runs():
    assert runs(Word("0011101")) == [(0, 2), (1, 3), (0, 1), (1, 1)]
    assert runs(Word("")) == []


def test_delete_examples():
    assert delete(U, {4}) == Word("00101011")
    assert delete(U, {4, 7, 9}) == Word("001011")
    assert delete(U, set()) == U
    with pytest.raises(ParameterError):
        delete(U, [3, 3])
    with pytest.raises(ParameterError):
        delete(U, [10])


def test_delete_burst_examples():
    assert delete_burst(U, 3, 4) == Word("00011")
    assert delete_burst(Word("10"), 1, 2) == Word("")
    with pytest.raises(ParameterError):
        delete_burst(U, 8, 3)


def test_delete_burst_is_contiguous_delete():
    for u in all_words(8):
        for i in range(1, len(u) + 1):
            for b in range(1, len(u) - i + 2):
                assert delete_burst(u, i, b) == delete(u, range(i, i + b))


@given(words, st.data())
def test_delete_keeps_order(u, data):
    positions = data.draw(st.sets(st.integers(1, max(len(u), 1)), max_size=len(u)))
    positions = {p for p in positions if p <= len(u)}
    out = delete(u, positions)
    assert len(out) == len(u) - len(positions)
    assert is_subsequence(out, u)


def test_sticky_insert_examples():
    assert sticky_insert(Word("01"), 1, 1) == Word("001")
    assert sticky_insert(U, 3, 1) == Word("0011101011")
    with pytest.raises(ParameterError):
        sticky_insert(U, 10, 1)
    with pytest.raises(ParameterError):
        sticky_insert(U, 1, 0)


def test_sticky_insert_lands_in_the_run_of_position_i():
    for u in all_words(8):
        for i in range(1, len(u) + 1):
            for s in (1, 2):
                out = sticky_insert(u, i, s)
                assert out[i - 1 : i + s] == (u[i - 1],) * (s + 1)
                # removing one repeat gives u back
                if s == 1:
                    assert delete(out, {i + 1}) == u


def test_period_check():
    assert period_check(Word("00110"), 1) == Word("0101")
    assert period_check(Word("000000"), 2) == Word("0000")
    with pytest.raises(ParameterError):
        period_check(Word("01"), 2)


def test_periodic_stretch_iff_zero_run_in_check_vector():
    for u in all_words(12):
        for b in range(1, min(3, len(u) - 1) + 1):
            check = period_check(u, b)
            for t in range(b, len(u) + 1):
                has_stretch = longest_periodic(u, b) >= t
                has_zero_run = longest_zero_run(check) >= t - b
                assert has_stretch == has_zero_run, (u, b, t)


def test_leftmost_diff():
    assert leftmost_diff(Word("00101011"), Word("00110011")) == 4
    assert leftmost_diff(U, U) is None
    assert leftmost_diff(Word("01"), Word("011")) == 3


@given(words, words)
def test_leftmost_diff_symmetric(u, v):
    assert leftmost_diff(u, v) == leftmost_diff(v, u)
