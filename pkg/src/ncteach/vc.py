"""Shattering tests, VC dimension, and the restriction-sum cardinality bound.

The shattering test counts distinct projected patterns with a ``2^|X|``-bit
occupancy word and exits as soon as all patterns have been seen.  The VC
dimension search scans subset sizes in increasing order and stops at the
first size with no shattered subset: shattering is downward-closed, so
absence at size k rules out every larger size.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from .model import (
    ConceptClass,
    _check_subset,
    index_subsets,
    pattern_index_tables,
    pattern_of_word,
    subset_masks,
)

__all__ = [
    "VcReport",
    "shatters",
    "vcdim",
    "sauer_sum_bound",
    "check_cardinality_bound",
]


@dataclass(frozen=True)
class VcReport:
    """VC dimension of a class plus one shattered witness subset."""

    vcdim: int
    witness: tuple[int, ...]


def _shatters_words(words: Sequence[int], subset: Sequence[int], table=None) -> bool:
    d = len(subset)
    need = (1 << (1 << d)) - 1
    seen = 0
    if table is not None:
        for word in words:
            seen |= 1 << table[word]
            if seen == need:
                return True
    else:
        for word in words:
            seen |= 1 << pattern_of_word(word, subset)
            if seen == need:
                return True
    return False


def shatters(cc: ConceptClass, subset: Sequence[int]) -> bool:
    """True iff the class realizes all ``2^|subset|`` label patterns on it."""
    subset = _check_subset(cc.n, subset)
    return _shatters_words(cc.words, subset)


def vcdim(cc: ConceptClass) -> VcReport:
    """Largest d with some shattered d-subset, plus the first such witness.

    The witness is the lexicographically first shattered subset of the
    maximal size; for a singleton class it is the empty subset.
    """
    n = cc.n
    # Shattering d instances requires 2^d distinct concepts.
    max_d = min(n, cc.m.bit_length() - 1)
    best = VcReport(0, ())
    for d in range(1, max_d + 1):
        tables = pattern_index_tables(n, d)
        found = None
        for s, subset in enumerate(index_subsets(n, d)):
            table = tables[s] if tables is not None else None
            if _shatters_words(cc.words, subset, table):
                found = subset
                break
        if found is None:
            break
        best = VcReport(d, found)
    return best


def sauer_sum_bound(cc: ConceptClass, d: int) -> int:
    """Sum of restriction sizes over all size-d instance subsets.

    The sum has exactly C(n, d) terms, each at most ``2^d``, and upper-bounds
    the class size when d is the VC dimension.
    """
    if not 0 <= d <= cc.n:
        raise ValueError(f"fragment size {d} out of range for n={cc.n}")
    words = cc.words
    total = 0
    for mask in subset_masks(cc.n, d):
        total += len({word & mask for word in words})
    return total


def check_cardinality_bound(cc: ConceptClass) -> bool:
    """True iff ``m <= sauer_sum_bound(cc, vcdim(cc))``.

    This must hold for every finite class; a False return means either a
    library bug or a genuine counterexample to the bound, and callers are
    expected to surface it loudly rather than swallow it.
    """
    report = vcdim(cc)
    return cc.m <= sauer_sum_bound(cc, report.vcdim)


def max_fragment_slots(n: int, d: int) -> int:
    """Total number of (subset, pattern) cells of size d: C(n, d) * 2^d."""
    return comb(n, d) * (1 << d)
