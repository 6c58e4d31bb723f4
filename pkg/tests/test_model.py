from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import concept_classes
from ncteach import (
    ConceptClass,
    DuplicateConceptError,
    Fragment,
    LabelPattern,
    MalformedFragmentError,
    MalformedSubsetError,
    consistent,
    fragment_of,
    restriction,
)

import oracles


class TestFragment:
    def test_from_entries_orders_by_instance(self):
        fragment = Fragment.from_entries([(3, 1), (0, 1)])
        assert fragment.entries() == ((0, 1), (3, 1))
        assert fragment.size == 2

    def test_duplicate_instance_rejected(self):
        with pytest.raises(MalformedFragmentError):
            Fragment.from_entries([(1, 0), (1, 1)])

    def test_bad_label_rejected(self):
        with pytest.raises(MalformedFragmentError):
            Fragment.from_entries([(0, 2)])

    def test_value_outside_mask_rejected(self):
        with pytest.raises(MalformedFragmentError):
            Fragment(mask=0b01, value=0b10)

    def test_empty_fragment(self):
        assert Fragment().size == 0
        assert Fragment().entries() == ()

    def test_sort_key_subset_before_labels(self):
        a = Fragment.from_entries([(0, 1), (1, 0)])
        b = Fragment.from_entries([(0, 0), (2, 0)])
        # subset (0,1) precedes (0,2) even though b's labels are smaller
        assert a.sort_key() < b.sort_key()

    def test_sort_key_labels_read_most_significant_first(self):
        lo = Fragment.from_entries([(0, 0), (1, 1)])
        hi = Fragment.from_entries([(0, 1), (1, 0)])
        assert lo.sort_key() < hi.sort_key()

    def test_pattern_round_trip(self):
        fragment = Fragment.from_entries([(1, 0), (3, 1)])
        pattern = fragment.to_pattern()
        assert pattern == LabelPattern(subset=(1, 3), labels=(0, 1))
        assert pattern.to_fragment() == fragment
        assert pattern.label_number == 1


class TestLabelPattern:
    def test_subset_must_increase(self):
        with pytest.raises(MalformedSubsetError):
            LabelPattern(subset=(2, 1), labels=(0, 0))

    def test_length_mismatch(self):
        with pytest.raises(MalformedFragmentError):
            LabelPattern(subset=(0,), labels=(0, 1))


class TestConceptClass:
    def test_duplicate_concepts_hard_error(self):
        with pytest.raises(DuplicateConceptError):
            ConceptClass.from_rows([(0, 1), (0, 1)])

    def test_ragged_rows_rejected(self):
        with pytest.raises(ValueError):
            ConceptClass.from_rows([(0, 1), (0, 1, 1)])

    def test_empty_class_rejected(self):
        with pytest.raises(ValueError):
            ConceptClass.from_rows([])

    def test_word_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            ConceptClass(n=2, words=(4,))

    def test_default_names(self):
        cc = ConceptClass.from_rows([(0, 1, 0)])
        assert cc.instance_names == ("x1", "x2", "x3")

    def test_names_must_match_n(self):
        with pytest.raises(ValueError):
            ConceptClass.from_rows([(0, 1)], instance_names=("a",))

    def test_vector_round_trip(self):
        cc = ConceptClass.from_strings(["0011", "1100"])
        assert cc.vector(0) == (0, 0, 1, 1)
        assert cc.row_string(1) == "1100"
        assert cc.m == 2 and cc.n == 4


class TestConsistent:
    def test_agreeing_fragment(self):
        fragment = Fragment.from_entries([(0, 1), (3, 1)])
        assert consistent((1, 0, 0, 1), fragment) is True

    def test_disagreeing_fragment(self):
        fragment = Fragment.from_entries([(0, 1), (3, 1)])
        assert consistent((0, 0, 0, 1), fragment) is False

    def test_empty_fragment_vacuous(self):
        assert consistent((0, 1), Fragment()) is True

    def test_index_out_of_range(self):
        fragment = Fragment.from_entries([(5, 1)])
        with pytest.raises(MalformedFragmentError):
            consistent((0, 1), fragment)

    def test_word_form_needs_n(self):
        with pytest.raises(ValueError):
            consistent(3, Fragment())
        assert consistent(3, Fragment.from_entries([(1, 1)]), n=2) is True


class TestRestriction:
    def test_c1_pair_is_full(self):
        from ncteach import builtin_c1

        assert restriction(builtin_c1(), (0, 1)) == {(0, 0), (0, 1), (1, 0), (1, 1)}

    def test_empty_subset(self):
        cc = ConceptClass.from_strings(["01", "10"])
        assert restriction(cc, ()) == {()}

    def test_singleton_projection(self):
        cc = ConceptClass.from_strings(["0001"])
        assert restriction(cc, (3,)) == {(1,)}

    def test_invalid_index(self):
        cc = ConceptClass.from_strings(["01"])
        with pytest.raises(MalformedSubsetError):
            restriction(cc, (2,))

    def test_unsorted_subset(self):
        cc = ConceptClass.from_strings(["011"])
        with pytest.raises(MalformedSubsetError):
            restriction(cc, (1, 0))


@given(concept_classes(), st.data())
def test_restriction_matches_brute_force(cc, data):
    size = data.draw(st.integers(0, cc.n))
    subset = tuple(sorted(data.draw(
        st.lists(st.integers(0, cc.n - 1), min_size=size, max_size=size, unique=True)
    )))
    assert restriction(cc, subset) == oracles.projections(cc, subset)


@given(concept_classes(), st.data())
def test_restriction_size_bounds(cc, data):
    size = data.draw(st.integers(0, cc.n))
    subset = tuple(sorted(data.draw(
        st.lists(st.integers(0, cc.n - 1), min_size=size, max_size=size, unique=True)
    )))
    patterns = restriction(cc, subset)
    assert 1 <= len(patterns) <= min(cc.m, 1 << len(subset))


@given(concept_classes(), st.data())
def test_restriction_monotone_under_inclusion(cc, data):
    big = tuple(sorted(data.draw(
        st.lists(st.integers(0, cc.n - 1), max_size=cc.n, unique=True)
    )))
    small = tuple(sorted(data.draw(st.sets(st.sampled_from(big))))) if big else ()
    assert len(restriction(cc, small)) <= len(restriction(cc, big))


@given(concept_classes(), st.data())
def test_own_projection_always_consistent(cc, data):
    k = data.draw(st.integers(0, cc.m - 1))
    subset = tuple(sorted(data.draw(
        st.lists(st.integers(0, cc.n - 1), max_size=cc.n, unique=True)
    )))
    fragment = fragment_of(cc.vector(k), subset)
    assert cc.consistent(k, fragment)
