"""Ordered compression: round-based frequency counting and fragment assignment.

Each round fixes the fragment size d (the VC dimension of the *original*
class, even after the pool shrinks) and counts, for every size-d instance
subset and every label pattern on it, how many pool concepts agree with the
pattern.  Every cell with frequency exactly 1 becomes an identifying
fragment for its unique concept; all cells of a round are assigned
simultaneously and every concept that received a fragment leaves the pool.
Rounds repeat until the pool is empty.

A nonempty pool with no frequency-1 cell is a *stall*.  No finite class is
expected to stall; if one ever does, the witness (round, pool, full table)
is the most valuable thing this module can produce, so it is raised as a
structured :class:`~ncteach.errors.StallError`, never asserted away.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Iterator, Sequence

from .errors import (
    CompressionInvariantError,
    StallError,
    UnassignedFragmentError,
)
from .model import (
    ConceptClass,
    Fragment,
    LabelPattern,
    cell_fragments,
    cell_patterns,
    index_subsets,
    pattern_index_tables,
    pattern_of_word,
    word_from_labels,
)
from .vc import vcdim

__all__ = [
    "FrequencyTable",
    "RoundRecord",
    "CompressionTrace",
    "fragment_frequencies",
    "compression_round",
    "run_ordered_compression",
    "reconstruct",
]


@dataclass(frozen=True)
class FrequencyTable:
    """Per-round counts of pool concepts consistent with each size-d cell.

    ``cells`` maps every (subset, labels) pattern, zero counts included, to
    the number of pool concepts agreeing with it.  Iteration order is the
    rendered table order: subsets lexicographic, label patterns ascending.
    """

    round_index: int
    d: int
    cells: dict[LabelPattern, int]

    def count(self, subset: Sequence[int], labels: Sequence[int]) -> int:
        return self.cells[LabelPattern(tuple(subset), tuple(labels))]

    def total(self) -> int:
        return sum(self.cells.values())


@dataclass(frozen=True)
class RoundRecord:
    """One completed round: pool before/after, the table, and assignments."""

    round_index: int
    pool_before: tuple[int, ...]
    table: FrequencyTable
    assignments: tuple[tuple[Fragment, int], ...]
    pool_after: tuple[int, ...]


@dataclass(frozen=True)
class CompressionTrace:
    """Full record of an ordered compression run on one class."""

    concept_class: ConceptClass
    d: int
    rounds: tuple[RoundRecord, ...]
    fragment_index: dict[Fragment, int] = field(repr=False)

    def fragments_for(self, k: int) -> tuple[Fragment, ...]:
        """All fragments assigned to concept k, in fragment order."""
        found = [f for f, owner in self.fragment_index.items() if owner == k]
        found.sort(key=Fragment.sort_key)
        return tuple(found)

    def round_removed(self, k: int) -> int:
        """The 1-based round in which concept k left the pool."""
        for record in self.rounds:
            if any(owner == k for _, owner in record.assignments):
                return record.round_index
        raise KeyError(f"concept {k} was never assigned")  # pragma: no cover

    def assigned_count(self) -> int:
        return len(self.fragment_index)

    def total_fragment_slots(self) -> int:
        """All (subset, pattern) cells of size d: C(n, d) * 2^d."""
        return comb(self.concept_class.n, self.d) * (1 << self.d)

    def unassigned_fragments(self) -> tuple[Fragment, ...]:
        """Size-d fragments never assigned in any round, in fragment order."""
        return tuple(
            f
            for f in cell_fragments(self.concept_class.n, self.d)
            if f not in self.fragment_index
        )


def _count_cells(
    pool_words: Sequence[int],
    n: int,
    d: int,
    track_last: bool = False,
):
    """Per-subset frequency arrays (and optionally the last matching index).

    Returns ``(counts, last)`` where ``counts[s][p]`` counts pool members
    whose pattern on subset s is p.  With ``track_last``, ``last[s][p]`` is
    the position in ``pool_words`` of the last such member, which identifies
    the unique member whenever the count is 1.
    """
    subsets = index_subsets(n, d)
    tables = pattern_index_tables(n, d)
    width = 1 << d
    counts = []
    last = [] if track_last else None
    for s, subset in enumerate(subsets):
        row = [0] * width
        row_last = [-1] * width if track_last else None
        if tables is not None:
            table = tables[s]
            for pos, word in enumerate(pool_words):
                p = table[word]
                row[p] += 1
                if track_last:
                    row_last[p] = pos
        else:
            for pos, word in enumerate(pool_words):
                p = pattern_of_word(word, subset)
                row[p] += 1
                if track_last:
                    row_last[p] = pos
        counts.append(row)
        if track_last:
            last.append(row_last)
    return counts, last


def _table_from_counts(n: int, d: int, round_index: int, counts) -> FrequencyTable:
    flat: list[int] = []
    for row in counts:
        flat.extend(row)
    cells = dict(zip(cell_patterns(n, d), flat))
    return FrequencyTable(round_index=round_index, d=d, cells=cells)


def fragment_frequencies(
    pool: Sequence[int] | Sequence[Sequence[int]],
    n: int,
    d: int,
    round_index: int = 1,
) -> FrequencyTable:
    """Count pool concepts consistent with every size-d cell.

    ``pool`` is a nonempty sequence of concepts, each a packed word or a 0/1
    label sequence.  Cells with count 0 are materialized so the table always
    has exactly C(n, d) * 2^d entries.
    """
    if len(pool) == 0:
        raise ValueError("the pool must be nonempty")
    if not 0 <= d <= n:
        raise ValueError(f"fragment size {d} out of range for n={n}")
    words = [
        w if isinstance(w, int) else word_from_labels(w)
        for w in pool
    ]
    limit = 1 << n
    for w in words:
        if not 0 <= w < limit:
            raise ValueError(f"concept word {w} does not fit n={n}")
    counts, _ = _count_cells(words, n, d)
    return _table_from_counts(n, d, round_index, counts)


def compression_round(
    cc: ConceptClass,
    pool: Sequence[int],
    d: int,
    round_index: int,
) -> RoundRecord:
    """Run one round over ``pool`` (concept indices into ``cc``).

    Every frequency-1 cell is assigned to its unique consistent concept, in
    table order; all touched concepts are removed at once.  Raises
    :class:`StallError` carrying the table if no cell has frequency 1.
    """
    pool = tuple(pool)
    if not pool:
        raise ValueError("the pool must be nonempty")
    n = cc.n
    words = cc.words
    pool_words = [words[k] for k in pool]
    counts, last = _count_cells(pool_words, n, d, track_last=True)
    table = _table_from_counts(n, d, round_index, counts)

    # Each pool concept matches exactly one pattern per subset, so the table
    # total must be |pool| * C(n, d); anything else is a counting bug.
    expected = len(pool) * comb(n, d)
    if table.total() != expected:
        raise CompressionInvariantError(
            f"round {round_index}: table total {table.total()} != "
            f"{len(pool)} * C({n},{d}) = {expected}"
        )

    fragments = cell_fragments(n, d)
    width = 1 << d
    assignments: list[tuple[Fragment, int]] = []
    removed: set[int] = set()
    for s, row in enumerate(counts):
        base = s * width
        row_last = last[s]
        for p in range(width):
            if row[p] == 1:
                owner = pool[row_last[p]]
                assignments.append((fragments[base + p], owner))
                removed.add(owner)
    if not assignments:
        raise StallError(round_index, pool, table)
    pool_after = tuple(k for k in pool if k not in removed)
    return RoundRecord(
        round_index=round_index,
        pool_before=pool,
        table=table,
        assignments=tuple(assignments),
        pool_after=pool_after,
    )


def run_ordered_compression(cc: ConceptClass) -> CompressionTrace:
    """Compress a whole class: rounds of frequency-1 assignment until empty.

    The fragment size is the VC dimension of the original class in every
    round, even when the remaining pool could be shattered less.  On success
    every concept has been assigned at least one fragment in exactly one
    round, and no fragment was ever assigned twice.
    """
    d = vcdim(cc).vcdim
    pool: tuple[int, ...] = tuple(range(cc.m))
    rounds: list[RoundRecord] = []
    fragment_index: dict[Fragment, int] = {}
    round_index = 1
    while pool:
        record = compression_round(cc, pool, d, round_index)
        for fragment, owner in record.assignments:
            previous = fragment_index.get(fragment)
            if previous is not None:
                raise CompressionInvariantError(
                    f"fragment {fragment.entries()} assigned to concept "
                    f"{previous + 1} and again to {owner + 1} in round {round_index}"
                )
            fragment_index[fragment] = owner
        if len(record.pool_after) >= len(record.pool_before):
            # Unreachable while StallError fires on empty assignment sets.
            raise CompressionInvariantError(
                f"round {round_index} did not shrink the pool"
            )
        rounds.append(record)
        pool = record.pool_after
        round_index += 1
    return CompressionTrace(
        concept_class=cc,
        d=d,
        rounds=tuple(rounds),
        fragment_index=fragment_index,
    )


def reconstruct(trace: CompressionTrace, fragment: Fragment) -> int:
    """The concept index a fragment was assigned to during compression."""
    try:
        return trace.fragment_index[fragment]
    except KeyError:
        raise UnassignedFragmentError(
            f"fragment {fragment.entries()} was never assigned"
        ) from None


def iter_assignments(trace: CompressionTrace) -> Iterator[tuple[Fragment, int, int]]:
    """(fragment, concept index, round) triples in assignment order."""
    for record in trace.rounds:
        for fragment, owner in record.assignments:
            yield fragment, owner, record.round_index
