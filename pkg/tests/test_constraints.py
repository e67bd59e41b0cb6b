import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from racetrack.bitword import Word, longest_zero_run
from racetrack.constraints import (
    CodeSpec,
    codewords,
    compositions,
    count,
    count_by_automaton,
    count_r,
    is_member,
    lower_bound_c3,
    phi,
    psi,
    rank,
    recommended_t,
    redundancy,
    unrank,
)
from racetrack.errors import MembershipError, ParameterError

U = Word("001101011")


def brute_members(spec):
    return [Word(b) for b in itertools.product((0, 1), repeat=spec.n) if is_member(spec, Word(b))]


class TestCodeSpec:
    @pytest.mark.parametrize("text", ["C1:9:3", "C2:10:2:5", "C3:64:2:9", "C3_VT:12:2:6:0"])
    def test_text_round_trip(self, text):
        assert str(CodeSpec.parse(text)) == text

    def test_field_order(self):
        spec = CodeSpec.parse("C3_VT:12:2:6:5")
        assert (spec.n, spec.b, spec.t, spec.a) == (12, 2, 6, 5)

    @pytest.mark.parametrize("text", ["C4:9:3", "C1:9", "C2:9:5:3", "C1:3:4", "C3_VT:5:1:3:6", "C1:x:3"])
    def test_rejects_bad_specs(self, text):
        with pytest.raises(ParameterError):
            CodeSpec.parse(text)

    def test_periods(self):
        assert CodeSpec.parse("C1:9:3").periods == (1,)
        assert CodeSpec.parse("C2:9:3:4").periods == (3,)
        assert CodeSpec.parse("C3:9:3:4").periods == (1, 2, 3)


def test_membership_examples():
    assert is_member(CodeSpec("C1", 9, 3), U)
    assert all(is_member(CodeSpec("C1", 4, 4), Word(b)) for b in itertools.product((0, 1), repeat=4))
    assert not is_member(CodeSpec("C2", 9, 4, 2), U)
    with pytest.raises(ParameterError):
        is_member(CodeSpec("C1", 8, 3), U)


def test_checksum_membership():
    spec = CodeSpec("C3_VT", 9, 5, 1, 0)
    # positions of ones in 001101011 sum to 3+4+6+8+9 = 30 = 0 mod 10
    assert is_member(spec, U)
    assert not is_member(CodeSpec("C3_VT", 9, 5, 1, 1), U)


def test_compositions():
    assert [compositions(m, 2) for m in range(7)] == [1, 1, 2, 3, 5, 8, 13]
    assert compositions(-1, 3) == 0


def test_count_examples():
    assert count(CodeSpec("C1", 3, 2)) == 6
    assert count(CodeSpec("C2", 4, 2, 1)) == 10
    assert count_r(3, 1) == 5
    for n in range(1, 12):
        assert count(CodeSpec("C1", n, n)) == 2 ** n


def test_r_count_matches_enumeration():
    for n in range(0, 11):
        for t in range(0, n + 1):
            words = [b for b in itertools.product((0, 1), repeat=n) if longest_zero_run(b) <= t]
            assert count_r(n, t) == len(words), (n, t)


# reference sizes from a standalone quadratic-scan enumerator
@pytest.mark.parametrize(
    "text, size",
    [("C1:12:3", 1854), ("C2:10:2:5", 832), ("C3:12:2:4", 2016), ("C3_VT:12:2:5:3", 238), ("C3:16:2:9", 64512)],
)
def test_frozen_sizes(text, size):
    spec = CodeSpec.parse(text)
    assert count(spec) == size
    assert count_by_automaton(spec) == size


@pytest.mark.parametrize("text", ["C1:10:3", "C2:10:2:5", "C3:11:2:4", "C3:10:3:5", "C3_VT:10:2:5:3"])
def test_count_matches_brute_force(text):
    spec = CodeSpec.parse(text)
    assert count(spec) == len(brute_members(spec))


def test_count_monotone_in_t():
    for family, b in (("C1", 1), ("C2", 2), ("C3", 2)):
        sizes = [count(CodeSpec(family, 14, t, b)) for t in range(b, 15)]
        assert sizes == sorted(sizes)


def test_lower_bound():
    assert lower_bound_c3(16, 2, 9) == 57344
    assert count(CodeSpec("C3", 16, 9, 2)) >= 57344
    # t - b = log2(n) + 1 gives exactly half the space
    assert lower_bound_c3(16, 2, 7) == Fraction(2 ** 16, 2)
    assert lower_bound_c3(1, 1, 2) <= 2
    with pytest.raises(ParameterError):
        lower_bound_c3(8, 3, 3)


def test_redundancy():
    assert redundancy(CodeSpec("C1", 10, 10)) == 0
    assert redundancy(CodeSpec("C1", 3, 2)) == pytest.approx(3 - math.log2(6))
    assert redundancy(CodeSpec("C1", 4096, 13)) == pytest.approx(0.359913, abs=1e-6)


def test_redundancy_settles_near_a_third_of_a_bit():
    values = [redundancy(CodeSpec("C1", 2 ** k, k + 1)) for k in range(8, 13)]
    assert all(0.30 <= v <= 0.43 for v in values)
    assert values == sorted(values)
    assert all(b - a < 0.02 for a, b in zip(values, values[1:]))


def test_redundancy_of_empty_code():
    # only 01 and 10 avoid runs of 2, with checksums 2 and 1 mod 3
    spec = CodeSpec("C3_VT", 2, 1, 1, 0)
    assert count(spec) == 0
    with pytest.raises(ParameterError):
        redundancy(spec)


def test_recommended_t():
    assert recommended_t(9) == 5
    assert recommended_t(4096) == 13
    assert recommended_t(1024, 3, "leq-b-burst") == 14
    assert recommended_t(1024, 3, "b-burst") == 13
    assert recommended_t(1) == 1
    with pytest.raises(ParameterError):
        recommended_t(9, 1, "nonsense")


def test_phi_psi_examples():
    assert phi(Word("00110"), 1) == (Word("0"), Word("0101"))
    assert phi(Word("000000"), 2) == (Word("00"), Word("0000"))
    assert psi(Word("0"), Word("0101"), 1) == Word("00110")
    assert psi(Word("10"), Word("0000"), 2) == Word("101010")
    with pytest.raises(ParameterError):
        phi(Word("01"), 2)


def test_phi_psi_round_trip():
    for n in range(2, 11):
        for bits in itertools.product((0, 1), repeat=n):
            u = Word(bits)
            for b in range(1, min(3, n - 1) + 1):
                assert psi(*phi(u, b), b) == u


def test_phi_is_a_bijection_onto_prefix_times_r():
    for n, b, t in ((10, 2, 4), (11, 3, 5), (9, 1, 3)):
        spec = CodeSpec("C2", n, t, b)
        images = {phi(c, b) for c in brute_members(spec)}
        assert len(images) == count(spec)
        assert all(longest_zero_run(check) <= t - b for _, check in images)
        assert len(images) == 2 ** b * count_r(n - b, t - b)


def test_unrank_examples():
    spec = CodeSpec("C1", 3, 2)
    assert [str(c) for c in codewords(spec)] == ["001", "010", "011", "100", "101", "110"]
    assert unrank(spec, 0) == Word("001")
    assert unrank(CodeSpec("C1", 4, 4), 5) == Word("0101")
    with pytest.raises(ParameterError):
        unrank(spec, 6)
    with pytest.raises(ParameterError):
        unrank(spec, -1)
    with pytest.raises(MembershipError):
        rank(spec, Word("111"))


@pytest.mark.parametrize("text", ["C1:12:3", "C2:12:2:5", "C3:12:3:5", "C3_VT:12:2:5:7"])
def test_codewords_are_sorted_members(text):
    spec = CodeSpec.parse(text)
    assert list(codewords(spec)) == brute_members(spec)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(["C1:64:7", "C2:64:3:9", "C3:64:2:9", "C3_VT:40:2:8:11"]), st.data())
def test_rank_unrank_round_trip(text, data):
    spec = CodeSpec.parse(text)
    k = data.draw(st.integers(0, count(spec) - 1))
    c = unrank(spec, k)
    assert is_member(spec, c)
    assert rank(spec, c) == k


def test_unrank_unconstrained_is_binary_expansion():
    spec = CodeSpec("C1", 6, 6)
    for k in range(64):
        assert str(unrank(spec, k)) == format(k, "06b")
