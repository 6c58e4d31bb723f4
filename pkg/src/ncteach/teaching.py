"""Teacher mappings, clash detection, teaching dimension, and exact NCTD.

A teacher mapping assigns each concept a fragment consistent with it; two
distinct concepts *clash* when each is consistent with the other's teaching
set.  The mapping built from a compression trace picks, per concept, the
least of its assigned fragments, so its order equals the fragment size d.

``nctd_exact`` is the independent oracle: an iterative-deepening
backtracking search over all consistent fragments of bounded size.  It
knows nothing about the compression construction, so agreement between the
two routes is meaningful evidence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .compression import CompressionTrace, run_ordered_compression
from .errors import (
    BudgetExhaustedError,
    IncompleteMappingError,
    InconsistentTeachingSetError,
)
from .model import ConceptClass, Fragment, subset_masks
from .vc import vcdim

__all__ = [
    "TeacherMapping",
    "ClashWitness",
    "BoundsReport",
    "build_teacher_mapping",
    "is_non_clashing",
    "min_teaching_set",
    "teaching_dimension",
    "one_inclusion_degrees",
    "degree_lower_bound",
    "nctd_exact",
    "compute_bounds",
]

DEFAULT_NCTD_BUDGET = 1_000_000


@dataclass(frozen=True)
class TeacherMapping:
    """One teaching set (fragment) per concept index."""

    teaching_sets: dict[int, Fragment]

    @property
    def order(self) -> int:
        """The largest teaching-set size used by the mapping."""
        if not self.teaching_sets:
            return 0
        return max(fragment.size for fragment in self.teaching_sets.values())


@dataclass(frozen=True)
class ClashWitness:
    """Two distinct concepts, each consistent with the other's teaching set."""

    i: int
    j: int
    teaching_set_i: Fragment
    teaching_set_j: Fragment

    def describe(self, cc: ConceptClass) -> str:
        return (
            f"{cc.concept_name(self.i)} and {cc.concept_name(self.j)} clash: "
            f"{cc.concept_name(self.j)} is consistent with "
            f"T({cc.concept_name(self.i)}) and "
            f"{cc.concept_name(self.i)} is consistent with "
            f"T({cc.concept_name(self.j)})"
        )


def build_teacher_mapping(trace: CompressionTrace) -> TeacherMapping:
    """Teaching sets from a compression trace: the least fragment per concept.

    Any assigned fragment would do for non-clashing; taking the first in
    fragment order (instance subset, then labels) makes the choice
    deterministic.
    """
    teaching_sets: dict[int, Fragment] = {}
    for k in range(trace.concept_class.m):
        fragments = trace.fragments_for(k)
        if not fragments:  # pragma: no cover - compression guarantees coverage
            raise IncompleteMappingError(
                f"trace assigned no fragment to concept {k + 1}"
            )
        teaching_sets[k] = fragments[0]
    return TeacherMapping(teaching_sets)


def is_non_clashing(
    cc: ConceptClass, mapping: TeacherMapping
) -> ClashWitness | None:
    """None if no pair of concepts clashes, else the first clash found.

    Pairs are scanned in ascending (i, j) order with i < j, so the returned
    witness is deterministic.  The mapping must cover every concept and
    every teaching set must agree with its own concept.
    """
    sets = mapping.teaching_sets
    for k in range(cc.m):
        if k not in sets:
            raise IncompleteMappingError(
                f"mapping has no teaching set for concept {cc.concept_name(k)}"
            )
        cc.check_fragment(sets[k])
        if not cc.consistent(k, sets[k]):
            raise InconsistentTeachingSetError(
                f"teaching set for {cc.concept_name(k)} disagrees with the concept"
            )
    words = cc.words
    for i in range(cc.m):
        frag_i = sets[i]
        for j in range(i + 1, cc.m):
            frag_j = sets[j]
            if (words[j] & frag_i.mask) == frag_i.value and (
                words[i] & frag_j.mask
            ) == frag_j.value:
                return ClashWitness(i, j, frag_i, frag_j)
    return None


def min_teaching_set(cc: ConceptClass, k: int) -> Fragment:
    """Smallest fragment consistent with concept k and with no other concept.

    Searches subset sizes in increasing order, subsets lexicographically
    within a size; the projection of the full domain always works because
    concepts are distinct, so the search always terminates.
    """
    word = cc.words[k]
    others = [w for i, w in enumerate(cc.words) if i != k]
    for size in range(cc.n + 1):
        for mask in subset_masks(cc.n, size):
            value = word & mask
            if all((w & mask) != value for w in others):
                return Fragment(mask, value)
    raise AssertionError("unreachable: the full domain fragment distinguishes")


def teaching_dimension(cc: ConceptClass) -> int:
    """Worst-case size of a minimum teaching set over all concepts."""
    return max(min_teaching_set(cc, k).size for k in range(cc.m))


def one_inclusion_degrees(cc: ConceptClass) -> list[int]:
    """Number of concepts at Hamming distance exactly 1 from each concept."""
    words = cc.words
    degrees = [0] * cc.m
    for i in range(cc.m):
        for j in range(i + 1, cc.m):
            if (words[i] ^ words[j]).bit_count() == 1:
                degrees[i] += 1
                degrees[j] += 1
    return degrees


def average_degree(cc: ConceptClass) -> Fraction:
    """Average one-inclusion degree as an exact rational."""
    return Fraction(sum(one_inclusion_degrees(cc)), cc.m)


def degree_lower_bound(cc: ConceptClass) -> int:
    """``ceil(deg_avg / 2)`` computed in exact rational arithmetic.

    Rounding a float here would misround boundary cases such as an average
    degree of exactly 2, so the ceiling is taken on the exact fraction.
    """
    return math.ceil(average_degree(cc) / 2)


def _candidate_fragments(cc: ConceptClass, k: int, max_size: int) -> list[Fragment]:
    """All fragments of size <= max_size consistent with concept k, in order."""
    word = cc.words[k]
    candidates: list[Fragment] = []
    for size in range(max_size + 1):
        for mask in subset_masks(cc.n, size):
            candidates.append(Fragment(mask, word & mask))
    candidates.sort(key=Fragment.sort_key)
    return candidates


def _search_order(cc: ConceptClass, k: int, budget_cell: list[int]) -> bool:
    """Backtracking check: does a non-clashing mapping of order <= k exist?

    Concepts are assigned in input order; each candidate considered costs
    one budget node.  A partial assignment is pruned as soon as the newest
    teaching set clashes with any already-assigned concept.
    """
    words = cc.words
    m = cc.m
    candidates = [_candidate_fragments(cc, i, k) for i in range(m)]
    assigned: list[Fragment] = []

    def extend(i: int) -> bool:
        if i == m:
            return True
        word_i = words[i]
        for fragment in candidates[i]:
            budget_cell[0] -= 1
            if budget_cell[0] < 0:
                raise _OutOfNodes
            mask_i = fragment.mask
            value_i = fragment.value
            ok = True
            for j in range(i):
                frag_j = assigned[j]
                if (words[j] & mask_i) == value_i and (
                    word_i & frag_j.mask
                ) == frag_j.value:
                    ok = False
                    break
            if not ok:
                continue
            assigned.append(fragment)
            if extend(i + 1):
                return True
            assigned.pop()
        return False

    return extend(0)


class _OutOfNodes(Exception):
    pass


def nctd_exact(cc: ConceptClass, budget: int = DEFAULT_NCTD_BUDGET) -> int:
    """Smallest order of any non-clashing teacher mapping for the class.

    Iterative deepening starts at the average-degree lower bound (sound, so
    nothing below it needs searching) and can always stop by ``n``: mapping
    every concept to its full-domain projection never clashes.  Raises
    :class:`BudgetExhaustedError` with the proven bracket when the node
    limit is hit.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    lower = degree_lower_bound(cc)
    upper = cc.n
    budget_cell = [budget]
    for k in range(lower, upper + 1):
        try:
            if _search_order(cc, k, budget_cell):
                return k
        except _OutOfNodes:
            raise BudgetExhaustedError(lower=k, upper=upper, budget=budget) from None
    raise AssertionError(
        "unreachable: the full-domain mapping has order n and never clashes"
    )


@dataclass(frozen=True)
class BoundsReport:
    """All computed complexity quantities for one class.

    ``nctd_exact`` is None when the oracle ran out of budget; the bracket
    then carries what the interrupted search still proved.
    """

    vcdim: int
    td: int
    nctd_lower: int
    nctd_upper: int
    nctd_exact: int | None
    deg_avg: Fraction
    nctd_bracket: tuple[int, int] | None = None

    def __post_init__(self):
        if self.nctd_exact is not None:
            if not self.nctd_lower <= self.nctd_exact <= self.nctd_upper:
                raise AssertionError(
                    f"nctd_exact={self.nctd_exact} escapes "
                    f"[{self.nctd_lower}, {self.nctd_upper}]"
                )
            if self.nctd_exact > self.td:
                raise AssertionError(
                    f"nctd_exact={self.nctd_exact} exceeds td={self.td}"
                )


def compute_bounds(
    cc: ConceptClass, budget: int = DEFAULT_NCTD_BUDGET
) -> BoundsReport:
    """Run every route on one class and bundle the results.

    The upper bound is the order of the compression-built mapping (verified
    non-clashing before being trusted); the lower bound is the average
    degree bound; the exact value comes from the independent search.
    """
    report = vcdim(cc)
    trace = run_ordered_compression(cc)
    mapping = build_teacher_mapping(trace)
    witness = is_non_clashing(cc, mapping)
    if witness is not None:  # pragma: no cover - would disprove the construction
        raise AssertionError(
            f"compression-built mapping clashes: {witness.describe(cc)}"
        )
    exact: int | None
    bracket: tuple[int, int] | None = None
    try:
        exact = nctd_exact(cc, budget=budget)
    except BudgetExhaustedError as error:
        exact = None
        bracket = (error.lower, error.upper)
    return BoundsReport(
        vcdim=report.vcdim,
        td=teaching_dimension(cc),
        nctd_lower=degree_lower_bound(cc),
        nctd_upper=mapping.order,
        nctd_exact=exact,
        deg_avg=average_degree(cc),
        nctd_bracket=bracket,
    )
