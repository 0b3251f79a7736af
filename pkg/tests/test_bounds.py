import pytest
from hypothesis import given
from hypothesis import strategies as st

from mccac.bounds import (
    bound,
    bound_restricted,
    bound_weight3,
    bound_weight3_indicator,
    bound_weight4,
    bound_weight4_derived,
    j_indicator,
)
from mccac.errors import BoundNotApplicable


class TestWeight3:
    def test_small_values(self):
        assert bound_weight3(3, 5).value == 8
        assert bound_weight3(3, 13).value == 22

    def test_even_residue_values(self):
        # table constant 0 at L = +-2 mod 12; the -6 variant is only reported
        r = bound_weight3(4, 22)
        assert r.value == 66 and r.notes["minus6"] == 64
        r = bound_weight3(4, 10)
        assert r.value == 30 and r.notes["minus6"] == 28

    def test_no_note_elsewhere(self):
        assert bound_weight3(4, 16).notes == {}
        assert bound_weight3(4, 14).notes == {"minus6": 40}

    def test_case_labels(self):
        assert bound_weight3(3, 12).formula_case == "L = 0, 6 mod 12"
        assert bound_weight3(3, 9).formula_case == "L = +-3 mod 12"
        assert bound_weight3(3, 8).formula_case == "L = +-2, +-4 mod 12"
        assert bound_weight3(3, 7).formula_case == "L = +-1, +-5 mod 12"

    def test_needs_three_channels(self):
        with pytest.raises(BoundNotApplicable):
            bound_weight3(2, 5)

    @given(st.integers(3, 12), st.integers(1, 400))
    def test_paths_agree(self, M, L):
        assert bound_weight3(M, L).value == bound_weight3_indicator(M, L)

    @given(st.integers(3, 8), st.integers(1, 200))
    def test_monotone_in_channels(self, M, L):
        assert bound_weight3(M, L).value <= bound_weight3(M + 1, L).value

    @given(st.integers(3, 8), st.integers(1, 200))
    def test_monotone_within_residue_class(self, M, L):
        assert bound_weight3(M, L).value <= bound_weight3(M, L + 12).value

    def test_not_monotone_across_residues(self):
        # L=6 has constant +6, L=7 has -3: the bound drops
        assert bound_weight3(3, 6).value == 12
        assert bound_weight3(3, 7).value == 11


class TestWeight4:
    def test_examples(self):
        assert bound_weight4(4, 7).value == 11
        assert bound_weight4(4, 12).value == 22
        assert bound_weight4(5, 15).value == 40

    def test_derived_examples(self):
        assert bound_weight4_derived(4, 7).value == 11
        assert bound_weight4_derived(4, 60).value == 104
        assert bound_weight4_derived(4, 30).value == 52

    def test_sixty(self):
        r = bound_weight4(4, 60)
        assert r.value == (4 * (240 + 60)) // 12 + 1 == 101
        assert r.notes["derived"] == 104

    def test_needs_four_channels(self):
        with pytest.raises(BoundNotApplicable):
            bound_weight4(3, 7)

    @pytest.mark.parametrize("M", range(4, 9))
    def test_table_matches_derived(self, M):
        for L in range(1, 601):
            if L % 60:
                assert bound_weight4(M, L).value == bound_weight4_derived(M, L).value, L

    def test_j(self):
        assert j_indicator(60) == 7
        assert j_indicator(7) == 0
        assert j_indicator(10) == 3


class TestRestricted:
    def test_examples(self):
        assert bound_restricted(3, 5, 3).value == 7
        assert bound_restricted(4, 10, 3).value == 28
        assert bound_restricted(4, 7, 4).value == 10

    def test_unsupported(self):
        with pytest.raises(BoundNotApplicable):
            bound_restricted(4, 7, 5)
        with pytest.raises(BoundNotApplicable):
            bound_restricted(3, 7, 4)

    @given(st.integers(3, 10), st.integers(1, 300))
    def test_w3_below_unrestricted(self, M, L):
        assert bound_restricted(M, L, 3).value <= bound_weight3(M, L).value

    @given(st.integers(4, 10), st.integers(1, 300))
    def test_w4_below_unrestricted(self, M, L):
        ref = bound_weight4(M, L) if L % 60 else bound_weight4_derived(M, L)
        assert bound_restricted(M, L, 4).value <= ref.value

    def test_w4_sixty_exceeds_special_case(self):
        # the +1 special case sits below the restricted formula at L = 0 mod 60
        assert bound_restricted(4, 60, 4).value == 103 > bound_weight4(4, 60).value


def test_dispatch():
    assert bound(3, 13, 3).value == 22
    assert bound(4, 7, 4).value == 11
    assert bound(3, 5, 3, restricted=True).value == 7
    with pytest.raises(BoundNotApplicable):
        bound(5, 7, 5)
