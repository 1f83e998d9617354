import pytest
from hypothesis import given
from hypothesis import strategies as st

from peakqsym.combinat import (
    IntervalFamily,
    Subset,
    cd_words,
    check_word,
    composition_of_subset,
    compositions_of,
    fibonacci,
    interval_family_of_right_sparse,
    interval_family_of_word,
    is_even_word,
    peaks,
    reverse_word,
    subset_of_composition,
    subsets,
    sw_of_word,
    word_c_count,
    word_d_count,
    word_degree,
    word_of_left_sparse,
)

masks = st.integers(min_value=0, max_value=(1 << 8) - 1)


def mask_subset(mask: int) -> Subset:
    return Subset(8, mask)


class TestSubset:
    def test_from_members_round_trip(self):
        s = Subset.from_members(9, [5, 1, 8])
        assert s.members == (1, 5, 8)
        assert s.size == 3
        assert 5 in s and 2 not in s

    def test_validation(self):
        with pytest.raises(ValueError):
            Subset.from_members(3, [4])
        with pytest.raises(ValueError):
            Subset.from_members(3, [0])
        with pytest.raises(ValueError):
            Subset(2, 1 << 5)

    @given(masks)
    def test_complement_and_reflect_are_involutions(self, mask):
        s = mask_subset(mask)
        assert s.complement().complement() == s
        assert s.reflect().reflect() == s
        assert s.complement().size == 8 - s.size
        assert s.reflect().members == tuple(sorted(9 - i for i in s.members))

    @given(masks)
    def test_sparseness_matches_the_elementwise_definition(self, mask):
        s = mask_subset(mask)
        m = s.members
        no_consecutive = all(b - a >= 2 for a, b in zip(m, m[1:]))
        assert s.is_left_sparse() == (1 not in m and no_consecutive)
        assert s.is_right_sparse() == (8 not in m and no_consecutive)

    def test_subsets_enumerates_the_power_set(self):
        found = list(subsets(3))
        assert len(found) == 8
        assert len(set(found)) == 8
        assert all(s.ambient == 3 for s in found)


class TestPeaks:
    def test_known_peak_set(self):
        s = Subset.from_members(9, [1, 2, 3, 5, 8, 9])
        assert peaks(s).members == (5, 8)

    @given(masks)
    def test_peaks_are_the_left_isolated_elements(self, mask):
        s = mask_subset(mask)
        p = peaks(s)
        assert p.is_left_sparse() or p.mask == 0
        assert set(p.members) == {i for i in s.members if i > 1 and (i - 1) not in s}

    @given(masks)
    def test_peaks_are_left_sparse(self, mask):
        assert peaks(mask_subset(mask)).is_left_sparse()


class TestCompositions:
    @given(masks)
    def test_subset_composition_bijection(self, mask):
        s = mask_subset(mask)
        comp = composition_of_subset(s)
        assert sum(comp) == 9
        assert subset_of_composition(comp) == s

    def test_known_composition(self):
        s = Subset.from_members(4, [1, 3])
        assert composition_of_subset(s) == (1, 2, 2)

    def test_compositions_of_counts(self):
        for n in range(1, 9):
            comps = compositions_of(n)
            assert len(comps) == 1 << (n - 1)
            assert len(set(comps)) == len(comps)
            assert all(sum(c) == n for c in comps)
        assert compositions_of(0) == [()]


class TestWords:
    def test_check_word(self):
        assert check_word("ccdc") == "ccdc"
        with pytest.raises(ValueError):
            check_word("cda")

    def test_degree_and_counts(self):
        assert word_degree("") == 0
        assert word_degree("ccd") == 4
        assert word_d_count("dcd") == 2
        assert word_c_count("dcd") == 1
        assert reverse_word("ccd") == "dcc"

    def test_cd_words_counts_and_order(self):
        assert cd_words(0) == ("",)
        assert cd_words(1) == ("c",)
        assert cd_words(2) == ("cc", "d")
        assert cd_words(3) == ("ccc", "cd", "dc")
        for n in range(0, 13):
            words = cd_words(n)
            assert len(words) == fibonacci(n + 1)
            assert list(words) == sorted(words)
            assert all(word_degree(w) == n for w in words)

    def test_fibonacci_start(self):
        assert [fibonacci(k) for k in range(1, 9)] == [1, 1, 2, 3, 5, 8, 13, 21]

    def test_sw_round_trip(self):
        for n in range(0, 9):
            for w in cd_words(n):
                s = sw_of_word(w)
                assert s.is_left_sparse()
                assert word_of_left_sparse(s) == w

    def test_sw_of_known_word(self):
        assert sw_of_word("cdcd").members == (3, 6)
        assert word_of_left_sparse(Subset.from_members(6, [3, 6])) == "cdcd"

    def test_is_even_word(self):
        # every c-run strictly before a d must be even; the trailing run and
        # d-free words are unconstrained
        assert is_even_word("")
        assert is_even_word("c")
        assert is_even_word("cc")
        assert is_even_word("d")
        assert is_even_word("ccd")
        assert is_even_word("ccdccd")
        assert is_even_word("dc")
        assert is_even_word("dccc")
        assert not is_even_word("cd")
        assert not is_even_word("cdc")
        assert not is_even_word("dcd")


class TestIntervalFamilies:
    def test_word_intervals(self):
        fam = interval_family_of_word("cdcd")
        assert fam.intervals == frozenset({(2, 3), (5, 6)})

    def test_blocking_matches_direct_check(self):
        fam = interval_family_of_word("cdcd")
        for s in subsets(6):
            direct = all(
                any(lo <= i <= hi for i in s.members) for lo, hi in fam.intervals
            )
            assert fam.blocks(s) == direct

    def test_right_sparse_intervals(self):
        fam = interval_family_of_right_sparse(Subset.from_members(5, [1, 4]))
        assert fam.intervals == frozenset({(1, 2), (4, 5)})

    def test_reflect(self):
        fam = IntervalFamily.of(6, [(2, 3)])
        assert fam.reflect().intervals == frozenset({(4, 5)})
