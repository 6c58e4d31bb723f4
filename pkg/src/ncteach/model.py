"""Core model: finite boolean concept classes, fragments, and consistency.

A concept over ``n`` instances is stored as an ``n``-bit integer word in
which bit ``i`` holds the label of instance ``i``.  A fragment (labeled
subsample) is stored as a ``(mask, value)`` pair of words so that checking
whether a concept agrees with a fragment is a two-word test::

    concept & mask == value

Everything here is immutable after construction and safe to share across
workers.  Instance names are display metadata only; all algorithms run on
0-based instance indices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import (
    DuplicateConceptError,
    MalformedFragmentError,
    MalformedSubsetError,
)

__all__ = [
    "ConceptClass",
    "Fragment",
    "LabelPattern",
    "consistent",
    "restriction",
    "fragment_of",
    "word_from_labels",
    "default_instance_names",
]


def default_instance_names(n: int) -> tuple[str, ...]:
    """The conventional instance names ``x1 .. xn``."""
    return tuple(f"x{i + 1}" for i in range(n))


def word_from_labels(labels: Sequence[int]) -> int:
    """Pack a 0/1 label sequence into a word (bit i = label of instance i)."""
    word = 0
    for i, bit in enumerate(labels):
        if bit not in (0, 1):
            raise ValueError(f"label at position {i} is {bit!r}, expected 0 or 1")
        word |= bit << i
    return word


@dataclass(frozen=True)
class Fragment:
    """A labeled subsample: a set of (instance index, label) pairs.

    ``mask`` has a bit set for every instance the fragment labels; ``value``
    holds those labels on the same bit positions (and is zero elsewhere).
    The empty fragment is ``Fragment(0, 0)`` and is consistent with every
    concept.
    """

    mask: int = 0
    value: int = 0

    def __post_init__(self):
        if self.mask < 0:
            raise MalformedFragmentError("fragment mask must be non-negative")
        if self.value & ~self.mask:
            raise MalformedFragmentError(
                "fragment value labels an instance outside its mask"
            )

    @classmethod
    def from_entries(cls, entries: Iterable[tuple[int, int]]) -> "Fragment":
        mask = 0
        value = 0
        for index, label in entries:
            if index < 0:
                raise MalformedFragmentError(f"negative instance index {index}")
            if label not in (0, 1):
                raise MalformedFragmentError(
                    f"label for instance {index} is {label!r}, expected 0 or 1"
                )
            bit = 1 << index
            if mask & bit:
                raise MalformedFragmentError(
                    f"instance index {index} appears twice in one fragment"
                )
            mask |= bit
            value |= label << index
        return cls(mask, value)

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    def entries(self) -> tuple[tuple[int, int], ...]:
        """The (index, label) pairs in ascending instance order."""
        out = []
        mask = self.mask
        while mask:
            low = mask & -mask
            index = low.bit_length() - 1
            out.append((index, (self.value >> index) & 1))
            mask ^= low
        return tuple(out)

    def subset(self) -> tuple[int, ...]:
        return tuple(index for index, _ in self.entries())

    def sort_key(self) -> tuple[int, tuple[int, ...], int]:
        """Order fragments by size, then instance subset, then labels.

        Labels compare as a binary number read in instance order, most
        significant first, so for a fixed subset the order matches the
        row order of a frequency table.
        """
        entries = self.entries()
        subset = tuple(index for index, _ in entries)
        label_number = 0
        for _, label in entries:
            label_number = (label_number << 1) | label
        return (len(entries), subset, label_number)

    def to_pattern(self) -> "LabelPattern":
        entries = self.entries()
        return LabelPattern(
            subset=tuple(i for i, _ in entries),
            labels=tuple(b for _, b in entries),
        )


@dataclass(frozen=True)
class LabelPattern:
    """One element of a class restriction: an instance subset plus labels.

    This is the same information as a :class:`Fragment` in a different
    shape: the pattern view keeps the subset and the label vector aligned
    and separate, which is what frequency tables index by.
    """

    subset: tuple[int, ...]
    labels: tuple[int, ...]

    def __post_init__(self):
        if len(self.subset) != len(self.labels):
            raise MalformedFragmentError("subset and labels differ in length")
        if any(b not in (0, 1) for b in self.labels):
            raise MalformedFragmentError("labels must be 0 or 1")
        if any(a >= b for a, b in zip(self.subset, self.subset[1:])):
            raise MalformedSubsetError("pattern subset must be strictly increasing")
        if self.subset and self.subset[0] < 0:
            raise MalformedSubsetError("instance indices must be non-negative")

    @classmethod
    def from_fragment(cls, fragment: Fragment) -> "LabelPattern":
        return fragment.to_pattern()

    def to_fragment(self) -> Fragment:
        return Fragment.from_entries(zip(self.subset, self.labels))

    @property
    def label_number(self) -> int:
        """The label vector read as a binary number, first label most significant."""
        number = 0
        for bit in self.labels:
            number = (number << 1) | bit
        return number


@dataclass(frozen=True)
class ConceptClass:
    """An ordered, duplicate-free set of binary concept vectors.

    ``words[k]`` is concept ``k`` packed into a word.  Concept order is
    preserved from input and every downstream iteration order derives from
    it.  Duplicate concepts are a hard error rather than a silent dedup:
    a repeated row almost always means a malformed input file.
    """

    n: int
    words: tuple[int, ...]
    instance_names: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a concept class needs at least one instance")
        if not self.words:
            raise ValueError("a concept class needs at least one concept")
        object.__setattr__(self, "words", tuple(self.words))
        if self.instance_names is None:
            object.__setattr__(
                self, "instance_names", default_instance_names(self.n)
            )
        else:
            object.__setattr__(self, "instance_names", tuple(self.instance_names))
        if len(self.instance_names) != self.n:
            raise ValueError(
                f"{len(self.instance_names)} instance names for n={self.n}"
            )
        if len(set(self.instance_names)) != self.n:
            raise ValueError("instance names must be distinct")
        limit = 1 << self.n
        for word in self.words:
            if not 0 <= word < limit:
                raise ValueError(f"concept word {word} does not fit n={self.n}")
        seen: set[int] = set()
        for k, word in enumerate(self.words):
            if word in seen:
                raise DuplicateConceptError(
                    f"concept {k + 1} duplicates an earlier concept"
                )
            seen.add(word)

    @classmethod
    def from_rows(
        cls,
        rows: Iterable[Sequence[int]],
        instance_names: Sequence[str] | None = None,
    ) -> "ConceptClass":
        rows = [tuple(row) for row in rows]
        if not rows:
            raise ValueError("a concept class needs at least one concept")
        n = len(rows[0])
        for k, row in enumerate(rows):
            if len(row) != n:
                raise ValueError(
                    f"concept {k + 1} has length {len(row)}, expected {n}"
                )
        words = tuple(word_from_labels(row) for row in rows)
        names = tuple(instance_names) if instance_names is not None else None
        return cls(n=n, words=words, instance_names=names)

    @classmethod
    def from_strings(
        cls,
        rows: Iterable[str],
        instance_names: Sequence[str] | None = None,
    ) -> "ConceptClass":
        return cls.from_rows(
            [[int(ch) for ch in row] for row in rows], instance_names
        )

    @property
    def m(self) -> int:
        return len(self.words)

    def vector(self, k: int) -> tuple[int, ...]:
        word = self.words[k]
        return tuple((word >> i) & 1 for i in range(self.n))

    def vectors(self) -> Iterator[tuple[int, ...]]:
        for k in range(self.m):
            yield self.vector(k)

    def row_string(self, k: int) -> str:
        return "".join(str(bit) for bit in self.vector(k))

    def concept_name(self, k: int) -> str:
        """Display name of concept k: ``C1`` .. ``Cm`` in input order."""
        return f"C{k + 1}"

    def check_fragment(self, fragment: Fragment) -> None:
        if fragment.mask >> self.n:
            raise MalformedFragmentError(
                f"fragment labels instance index {fragment.mask.bit_length() - 1}, "
                f"but the class has only {self.n} instances"
            )

    def consistent(self, k: int, fragment: Fragment) -> bool:
        """True iff concept k agrees with every labeled entry of the fragment."""
        self.check_fragment(fragment)
        return (self.words[k] & fragment.mask) == fragment.value


def consistent(concept: Sequence[int] | int, fragment: Fragment, n: int | None = None) -> bool:
    """True iff the concept agrees with the fragment on every labeled instance.

    ``concept`` may be a 0/1 label sequence or an already-packed word (then
    ``n`` must be given so the fragment can be range-checked).  The empty
    fragment is consistent with every concept.
    """
    if isinstance(concept, int):
        if n is None:
            raise ValueError("n is required when the concept is given as a word")
        word = concept
    else:
        n = len(concept)
        word = word_from_labels(concept)
    if fragment.mask >> n:
        raise MalformedFragmentError(
            f"fragment labels instance index {fragment.mask.bit_length() - 1}, "
            f"but the concept has only {n} instances"
        )
    return (word & fragment.mask) == fragment.value


def _check_subset(n: int, subset: Sequence[int]) -> tuple[int, ...]:
    subset = tuple(subset)
    for index in subset:
        if not 0 <= index < n:
            raise MalformedSubsetError(f"instance index {index} out of range for n={n}")
    if any(a >= b for a, b in zip(subset, subset[1:])):
        raise MalformedSubsetError("subset must be strictly increasing")
    return subset


def restriction(cc: ConceptClass, subset: Sequence[int]) -> set[tuple[int, ...]]:
    """The set of distinct projections of all concepts onto the subset."""
    subset = _check_subset(cc.n, subset)
    return {
        tuple((word >> i) & 1 for i in subset)
        for word in cc.words
    }


def fragment_of(concept: Sequence[int] | int, subset: Sequence[int]) -> Fragment:
    """The fragment labelling `subset` exactly as the concept does."""
    if isinstance(concept, int):
        word = concept
        subset = _check_subset(max(subset, default=-1) + 1, subset)
    else:
        word = word_from_labels(concept)
        subset = _check_subset(len(concept), subset)
    mask = 0
    for index in subset:
        mask |= 1 << index
    return Fragment(mask, word & mask)


@lru_cache(maxsize=None)
def index_subsets(n: int, d: int) -> tuple[tuple[int, ...], ...]:
    """All size-d subsets of ``range(n)`` in lexicographic order."""
    if not 0 <= d <= n:
        raise ValueError(f"subset size {d} out of range for n={n}")
    return tuple(itertools.combinations(range(n), d))


@lru_cache(maxsize=None)
def subset_masks(n: int, d: int) -> tuple[int, ...]:
    """Bit masks aligned with :func:`index_subsets`."""
    masks = []
    for subset in index_subsets(n, d):
        mask = 0
        for index in subset:
            mask |= 1 << index
        masks.append(mask)
    return tuple(masks)


_PATTERN_TABLE_MAX_N = 8


@lru_cache(maxsize=None)
def pattern_index_tables(n: int, d: int) -> tuple[tuple[int, ...], ...] | None:
    """Per-subset lookup from concept word to pattern row index.

    ``tables[s][word]`` is the label pattern of the word on subset ``s``,
    read as a binary number with the lowest instance index most significant
    (the row index of a frequency table).  Only materialized for small n;
    larger domains fall back to per-bit extraction.
    """
    if n > _PATTERN_TABLE_MAX_N:
        return None
    tables = []
    for subset in index_subsets(n, d):
        shifts = tuple((i, d - 1 - j) for j, i in enumerate(subset))
        row = []
        for word in range(1 << n):
            p = 0
            for src, dst in shifts:
                p |= ((word >> src) & 1) << dst
            row.append(p)
        tables.append(tuple(row))
    return tuple(tables)


def pattern_of_word(word: int, subset: Sequence[int]) -> int:
    """Label pattern of a concept word on a subset, as a table row index."""
    d = len(subset)
    p = 0
    for j, i in enumerate(subset):
        p |= ((word >> i) & 1) << (d - 1 - j)
    return p


@lru_cache(maxsize=None)
def cell_patterns(n: int, d: int) -> tuple[LabelPattern, ...]:
    """All (subset, labels) cells for size-d fragments, in table order.

    Subsets come in lexicographic order; within a subset the label patterns
    ascend as binary numbers.  Shared immutable instances: frequency tables
    of every round and every class reuse these keys.
    """
    cells = []
    for subset in index_subsets(n, d):
        for p in range(1 << d):
            labels = tuple((p >> (d - 1 - j)) & 1 for j in range(d))
            cells.append(LabelPattern(subset=subset, labels=labels))
    return tuple(cells)


@lru_cache(maxsize=None)
def cell_fragments(n: int, d: int) -> tuple[Fragment, ...]:
    """Fragments aligned with :func:`cell_patterns`."""
    return tuple(pattern.to_fragment() for pattern in cell_patterns(n, d))
