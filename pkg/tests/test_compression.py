from __future__ import annotations

from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import concept_classes
from ncteach import (
    ConceptClass,
    Fragment,
    StallError,
    UnassignedFragmentError,
    builtin_c1,
    compression_round,
    fragment_frequencies,
    reconstruct,
    run_ordered_compression,
    vcdim,
)
from ncteach._figures import C1_FREQUENCY_MATRICES, C1_ROUND_POOL_SIZES

import oracles


def frag(*entries):
    return Fragment.from_entries(entries)


class TestFragmentFrequencies:
    def test_c1_round1_cells(self):
        cc = builtin_c1()
        table = fragment_frequencies(cc.words, cc.n, 2)
        assert table.count((0, 1), (1, 1)) == 1
        assert table.count((1, 2), (0, 1)) == 3

    def test_zero_counts_materialized(self):
        cc = builtin_c1()
        # pool after round 1: C1..C7
        table = fragment_frequencies(cc.words[:7], cc.n, 2, round_index=2)
        assert table.count((0, 1), (1, 0)) == 0
        assert len(table.cells) == comb(4, 2) * 4

    def test_accepts_label_sequences(self):
        table = fragment_frequencies([(0, 1), (1, 0)], 2, 1)
        assert table.count((0,), (0,)) == 1

    def test_empty_pool_rejected(self):
        with pytest.raises(ValueError):
            fragment_frequencies([], 2, 1)

    def test_fragment_size_out_of_range(self):
        with pytest.raises(ValueError):
            fragment_frequencies([(0, 1)], 2, 3)


class TestFigureMatrices:
    """The 96 transcribed frequency values, one round at a time."""

    def test_all_rounds_match_transcription(self):
        cc = builtin_c1()
        trace = run_ordered_compression(cc)
        assert len(trace.rounds) == len(C1_FREQUENCY_MATRICES)
        for record, matrix, pool_size in zip(
            trace.rounds, C1_FREQUENCY_MATRICES, C1_ROUND_POOL_SIZES
        ):
            assert len(record.pool_before) == pool_size
            cells = list(record.table.cells.items())
            # cells iterate subset-major; the figures are pattern-major
            for row in range(4):
                for col in range(6):
                    pattern, count = cells[col * 4 + row]
                    assert count == matrix[row][col], (
                        record.round_index,
                        pattern,
                    )


class TestCompressionRound:
    def test_c1_round1_assignments(self):
        cc = builtin_c1()
        record = compression_round(cc, range(10), 2, 1)
        assert record.assignments == (
            (frag((0, 1), (1, 1)), 9),
            (frag((0, 1), (2, 1)), 8),
            (frag((0, 1), (3, 1)), 7),
        )
        assert len(record.pool_after) == 7
        assert record.pool_after == tuple(range(7))

    def test_c1_round2_assignments(self):
        cc = builtin_c1()
        first = compression_round(cc, range(10), 2, 1)
        second = compression_round(cc, first.pool_after, 2, 2)
        assert set(second.assignments) == {
            (frag((1, 0), (2, 0)), 0),
            (frag((1, 0), (3, 0)), 1),
            (frag((2, 0), (3, 0)), 3),
        }
        assert second.pool_after == (2, 4, 5, 6)

    def test_singleton_pool_d0(self):
        cc = ConceptClass.from_strings(["0101"])
        record = compression_round(cc, (0,), 0, 1)
        assert record.assignments == ((Fragment(), 0),)
        assert record.pool_after == ()

    def test_empty_pool_rejected(self):
        with pytest.raises(ValueError):
            compression_round(builtin_c1(), (), 2, 1)


class TestRunOrderedCompression:
    def test_c1_shape(self):
        trace = run_ordered_compression(builtin_c1())
        assert trace.d == 2
        assert len(trace.rounds) == 4
        assert trace.assigned_count() == 21
        assert trace.total_fragment_slots() == 24

    def test_c1_c7_gets_all_six(self):
        trace = run_ordered_compression(builtin_c1())
        fragments = trace.fragments_for(6)
        assert len(fragments) == 6
        assert trace.round_removed(6) == 4
        assert all(f.size == 2 for f in fragments)

    def test_c1_unassigned(self):
        trace = run_ordered_compression(builtin_c1())
        assert trace.unassigned_fragments() == (
            frag((0, 1), (1, 0)),
            frag((0, 1), (2, 0)),
            frag((0, 1), (3, 0)),
        )

    def test_full_cube_n2_single_round(self):
        cc = ConceptClass.from_strings(["00", "01", "10", "11"])
        trace = run_ordered_compression(cc)
        assert len(trace.rounds) == 1
        for k in range(4):
            (fragment,) = trace.fragments_for(k)
            assert fragment.entries() == ((0, cc.vector(k)[0]), (1, cc.vector(k)[1]))

    def test_singleton_class(self):
        trace = run_ordered_compression(ConceptClass.from_strings(["011"]))
        assert trace.d == 0
        assert trace.fragments_for(0) == (Fragment(),)


class TestReconstruct:
    def test_known_assignments(self):
        trace = run_ordered_compression(builtin_c1())
        assert reconstruct(trace, frag((0, 1), (3, 1))) == 7
        assert reconstruct(trace, frag((1, 1), (3, 1))) == 6

    def test_unassigned_fragment(self):
        trace = run_ordered_compression(builtin_c1())
        with pytest.raises(UnassignedFragmentError):
            reconstruct(trace, frag((0, 1), (1, 0)))

    def test_reconstructed_concept_is_consistent(self):
        trace = run_ordered_compression(builtin_c1())
        cc = builtin_c1()
        for fragment, owner in trace.fragment_index.items():
            assert cc.consistent(owner, fragment)


@settings(deadline=None)
@given(concept_classes())
def test_trace_invariants(cc):
    trace = run_ordered_compression(cc)
    n, d = cc.n, trace.d

    # every concept assigned in exactly one round, with >= 1 fragment
    seen_rounds: dict[int, int] = {}
    for record in trace.rounds:
        for _, owner in record.assignments:
            assert seen_rounds.setdefault(owner, record.round_index) == record.round_index
    assert set(seen_rounds) == set(range(cc.m))

    assert len(trace.rounds) <= cc.m
    assert trace.assigned_count() <= comb(n, d) * (1 << d)

    previous_pool_dim = None
    for record in trace.rounds:
        # frequency conservation, counts within [0, pool size]
        assert record.table.total() == len(record.pool_before) * comb(n, d)
        assert all(
            0 <= count <= len(record.pool_before)
            for count in record.table.cells.values()
        )
        # strict pool shrinkage
        assert len(record.pool_after) < len(record.pool_before)
        assert set(record.pool_after) < set(record.pool_before)
        # assigned cells have count 1 in their own round
        for fragment, owner in record.assignments:
            assert record.table.cells[fragment.to_pattern()] == 1
            assert cc.consistent(owner, fragment)
        # pool VC dimension never grows round over round
        pool_class = ConceptClass(
            n=n, words=tuple(cc.words[k] for k in record.pool_before)
        )
        pool_dim = vcdim(pool_class).vcdim
        if previous_pool_dim is not None:
            assert pool_dim <= previous_pool_dim
        previous_pool_dim = pool_dim

    # a fragment assigned in round r counts 0 in every later round
    for r, record in enumerate(trace.rounds):
        for fragment, _ in record.assignments:
            for later in trace.rounds[r + 1:]:
                assert later.table.cells[fragment.to_pattern()] == 0

    # reconstruction: within a round, each fragment's owner is the only
    # consistent concept among that round's pool
    for record in trace.rounds:
        for fragment, owner in record.assignments:
            consistent_pool = [
                k
                for k in record.pool_before
                if (cc.words[k] & fragment.mask) == fragment.value
            ]
            assert consistent_pool == [owner]


@settings(deadline=None)
@given(concept_classes(max_n=4, max_m=8), st.data())
def test_frequencies_match_brute_force(cc, data):
    d = data.draw(st.integers(0, cc.n))
    table = fragment_frequencies(cc.words, cc.n, d)
    vectors = oracles.vectors(cc)
    for pattern, count in table.cells.items():
        sample = dict(zip(pattern.subset, pattern.labels))
        assert count == oracles.brute_frequency(vectors, sample)


@settings(deadline=None)
@given(concept_classes())
def test_no_stall_on_random_classes(cc):
    # a StallError here would be a reportable counterexample, not a bug
    try:
        run_ordered_compression(cc)
    except StallError as error:  # pragma: no cover
        pytest.fail(f"stall witness found: {error}")
