"""Exhaustive and randomized censuses over small-domain concept classes.

A census streams every nonempty subset of ``{0,1}^n`` (or a seeded random
sample) and runs the enabled checks on each class:

* ``cardinality_bound`` - class size against the restriction-sum bound
* ``no_stall``          - ordered compression terminates and covers every
                          concept with an injective fragment map
* ``non_clash``         - the compression-built teacher mapping never clashes
* ``nctd_le_vcdim``     - the exact NCTD search stays at or below vcdim

Check failures are data, not crashes: each one is serialized as a
replayable witness.  Classes stream in ascending characteristic-bitmask
order (bit ``w`` of the mask marks concept word ``w``), which makes runs
byte-reproducible and lets workers process contiguous slices.
"""

from __future__ import annotations

import heapq
import itertools
import random
import time
from collections import Counter
from dataclasses import dataclass, field
from math import comb
from typing import Iterator, Sequence

from .compression import run_ordered_compression
from .errors import (
    BudgetExhaustedError,
    CompressionInvariantError,
    InfeasibleEnumerationError,
    StallError,
)
from .model import ConceptClass
from .teaching import build_teacher_mapping, is_non_clashing, nctd_exact
from .vc import sauer_sum_bound, vcdim

__all__ = [
    "CENSUS_CHECKS",
    "CensusConfig",
    "CensusResult",
    "FailureWitness",
    "builtin_c1",
    "enumerate_classes",
    "random_class",
    "run_census",
    "replay_witness",
    "class_from_mask",
    "mask_from_class",
    "canonical_mask",
]

CENSUS_CHECKS = ("cardinality_bound", "no_stall", "non_clash", "nctd_le_vcdim")

# Refuse exhaustive enumerations beyond ~16.7M classes; anything larger
# needs sampling or a tighter size filter.
ENUMERATION_CAP = 1 << 24

_C1_ROWS = (
    "0001",
    "0010",
    "0011",
    "0100",
    "0101",
    "0110",
    "0111",
    "1001",
    "1010",
    "1100",
)


def builtin_c1() -> ConceptClass:
    """The bundled 10-concept demo class over four instances."""
    return ConceptClass.from_strings(_C1_ROWS)


@dataclass(frozen=True)
class CensusConfig:
    """What to enumerate (or sample) and which checks to run.

    ``sample_count == 0`` means exhaustive mode.  ``max_size=None`` means no
    upper size filter.  ``budget`` is the per-class node limit for the exact
    NCTD search.  With ``stop_on_first_failure`` the census runs
    sequentially and stops at the first failing class.
    """

    n: int
    min_size: int = 1
    max_size: int | None = None
    dedup: bool = False
    checks: tuple[str, ...] = CENSUS_CHECKS
    sample_count: int = 0
    seed: int = 0
    budget: int = 100_000
    stop_on_first_failure: bool = False
    jobs: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.min_size < 1:
            raise ValueError("min_size must be at least 1")
        if self.min_size > (1 << self.n):
            raise ValueError(f"min_size {self.min_size} exceeds 2^{self.n} concepts")
        if self.max_size is not None and self.max_size < self.min_size:
            raise ValueError("max_size must be at least min_size")
        if self.sample_count < 0:
            raise ValueError("sample_count must be non-negative")
        if self.budget <= 0:
            raise ValueError("budget must be positive")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")
        object.__setattr__(self, "checks", tuple(self.checks))
        unknown = set(self.checks) - set(CENSUS_CHECKS)
        if unknown:
            raise ValueError(
                f"unknown checks: {sorted(unknown)}; valid: {list(CENSUS_CHECKS)}"
            )

    @property
    def size_range(self) -> tuple[int, int]:
        universe = 1 << self.n
        hi = universe if self.max_size is None else min(self.max_size, universe)
        return (self.min_size, hi)


@dataclass(frozen=True)
class FailureWitness:
    """A failing (class, check) pair, replayable from its serialized text."""

    class_text: str
    check: str
    evidence: str


@dataclass
class CensusResult:
    """Aggregated outcome of one census run."""

    config: CensusConfig
    classes_checked: int = 0
    passed: Counter = field(default_factory=Counter)
    failed: Counter = field(default_factory=Counter)
    nctd_budget_exhausted: int = 0
    failures: list[FailureWitness] = field(default_factory=list)
    histogram: Counter = field(default_factory=Counter)
    wall_time_s: float = 0.0

    @property
    def total_failures(self) -> int:
        return len(self.failures)


def class_from_mask(n: int, mask: int) -> ConceptClass:
    """The class whose concept-word set is the set bits of ``mask``."""
    if mask <= 0 or mask >> (1 << n):
        raise ValueError(f"mask {mask} is not a nonempty subset of {{0,1}}^{n}")
    words = []
    rest = mask
    while rest:
        low = rest & -rest
        words.append(low.bit_length() - 1)
        rest ^= low
    return ConceptClass(n=n, words=tuple(words))


def mask_from_class(cc: ConceptClass) -> int:
    mask = 0
    for word in cc.words:
        mask |= 1 << word
    return mask


# ---------------------------------------------------------------------------
# symmetry canonicalization (instance permutations x per-instance label flips)


def _word_permutation(n: int, perm: Sequence[int]) -> tuple[int, ...]:
    out = []
    for word in range(1 << n):
        image = 0
        for i in range(n):
            image |= ((word >> i) & 1) << perm[i]
        out.append(image)
    return tuple(out)


_symmetry_cache: dict[int, tuple[tuple[int, ...], ...]] = {}


def _symmetry_maps(n: int) -> tuple[tuple[int, ...], ...]:
    """Word maps for all n! * 2^n symmetries (identity first)."""
    maps = _symmetry_cache.get(n)
    if maps is None:
        built = []
        for perm in itertools.permutations(range(n)):
            base = _word_permutation(n, perm)
            for flip in range(1 << n):
                built.append(tuple(image ^ flip for image in base))
        built.sort()
        maps = tuple(built)
        _symmetry_cache[n] = maps
    return maps


def canonical_mask(n: int, mask: int) -> int:
    """Minimum characteristic mask over the class's symmetry orbit."""
    words = []
    rest = mask
    while rest:
        low = rest & -rest
        words.append(low.bit_length() - 1)
        rest ^= low
    best = mask
    for word_map in _symmetry_maps(n):
        image = 0
        for w in words:
            image |= 1 << word_map[w]
        if image < best:
            best = image
    return best


def _is_canonical(n: int, mask: int, words: Sequence[int]) -> bool:
    for word_map in _symmetry_maps(n):
        image = 0
        for w in words:
            image |= 1 << word_map[w]
        if image < mask:
            return False
    return True


# ---------------------------------------------------------------------------
# enumeration


def _colex_masks(universe: int, k: int) -> Iterator[int]:
    """Characteristic masks of all k-subsets of range(universe), ascending."""
    if k == 0:
        yield 0
        return
    for high in range(k - 1, universe):
        high_bit = 1 << high
        for rest in _colex_masks(high, k - 1):
            yield rest | high_bit


def _enumeration_size(n: int, lo: int, hi: int) -> int:
    universe = 1 << n
    total = 0
    for k in range(lo, hi + 1):
        total += comb(universe, k)
        if total > ENUMERATION_CAP:
            return total
    return total


def _iter_masks(n: int, lo: int, hi: int) -> Iterator[int]:
    universe = 1 << n
    if (lo, hi) == (1, universe):
        yield from range(1, 1 << universe)
    else:
        yield from heapq.merge(
            *(_colex_masks(universe, k) for k in range(lo, hi + 1))
        )


def enumerate_classes(config: CensusConfig) -> Iterator[ConceptClass]:
    """Stream every class matching the filter, ascending by bitmask.

    With ``dedup`` only orbit-minimal representatives under instance
    permutation plus per-instance label complement are yielded.  Raises
    :class:`InfeasibleEnumerationError` when the configured space exceeds
    the enumeration cap.
    """
    lo, hi = config.size_range
    size = _enumeration_size(config.n, lo, hi)
    if size > ENUMERATION_CAP:
        raise InfeasibleEnumerationError(
            f"{size} classes at n={config.n} exceed the cap of {ENUMERATION_CAP}; "
            "tighten the size filter or use sampling"
        )
    n = config.n
    for mask in _iter_masks(n, lo, hi):
        cc = class_from_mask(n, mask)
        if config.dedup and not _is_canonical(n, mask, cc.words):
            continue
        yield cc


def random_class(n: int, m: int, seed: int) -> ConceptClass:
    """m distinct concepts drawn uniformly from {0,1}^n, words ascending.

    The draw is fully determined by (n, m, seed).
    """
    if not 1 <= m <= (1 << n):
        raise ValueError(f"m={m} out of range [1, 2^{n}]")
    rng = random.Random(seed)
    words = sorted(rng.sample(range(1 << n), m))
    return ConceptClass(n=n, words=tuple(words))


_SEED_MIX = 0x9E3779B97F4A7C15


def _sample_seed(seed: int, index: int) -> int:
    return (seed * _SEED_MIX + index) & ((1 << 64) - 1)


def _sample_class(config: CensusConfig, index: int) -> ConceptClass:
    """Deterministic sample ``index`` of a randomized census."""
    lo, hi = config.size_range
    child = _sample_seed(config.seed, index)
    m = lo + random.Random(child ^ 1).randrange(hi - lo + 1)
    return random_class(config.n, m, child)


# ---------------------------------------------------------------------------
# checks


def _run_checks(
    cc: ConceptClass, checks: Sequence[str], budget: int
) -> tuple[dict[str, tuple[bool | None, str]], int, int | None]:
    """Outcome per check, plus (vcdim, nctd_exact-or-None) for the histogram.

    An outcome of ``(None, evidence)`` means the check was inconclusive
    (only the NCTD search can be, by exhausting its budget).
    """
    outcomes: dict[str, tuple[bool | None, str]] = {}
    report = vcdim(cc)

    if "cardinality_bound" in checks:
        bound = sauer_sum_bound(cc, report.vcdim)
        if cc.m <= bound:
            outcomes["cardinality_bound"] = (True, "")
        else:
            outcomes["cardinality_bound"] = (
                False,
                f"|C|={cc.m} exceeds restriction-sum bound {bound} at d={report.vcdim}",
            )

    trace = None
    trace_error = ""
    if "no_stall" in checks or "non_clash" in checks:
        try:
            trace = run_ordered_compression(cc)
        except StallError as error:
            trace_error = (
                f"stall in round {error.round_index} with "
                f"{len(error.pool)} concepts left"
            )
        except CompressionInvariantError as error:
            trace_error = str(error)

    if "no_stall" in checks:
        if trace is None:
            outcomes["no_stall"] = (False, trace_error)
        else:
            owners = {owner for owner in trace.fragment_index.values()}
            if owners == set(range(cc.m)):
                outcomes["no_stall"] = (True, "")
            else:
                missing = sorted(set(range(cc.m)) - owners)
                outcomes["no_stall"] = (
                    False,
                    f"concepts {missing} received no fragment",
                )

    if "non_clash" in checks:
        if trace is None:
            outcomes["non_clash"] = (False, f"no mapping: {trace_error}")
        else:
            witness = is_non_clashing(cc, build_teacher_mapping(trace))
            if witness is None:
                outcomes["non_clash"] = (True, "")
            else:
                outcomes["non_clash"] = (False, witness.describe(cc))

    nctd_value: int | None = None
    if "nctd_le_vcdim" in checks:
        try:
            nctd_value = nctd_exact(cc, budget=budget)
        except BudgetExhaustedError as error:
            outcomes["nctd_le_vcdim"] = (
                None,
                f"budget exhausted; NCTD in [{error.lower}, {error.upper}]",
            )
        else:
            if nctd_value <= report.vcdim:
                outcomes["nctd_le_vcdim"] = (True, "")
            else:
                outcomes["nctd_le_vcdim"] = (
                    False,
                    f"nctd_exact={nctd_value} exceeds vcdim={report.vcdim}",
                )

    return outcomes, report.vcdim, nctd_value


def replay_witness(
    witness: FailureWitness, budget: int = 100_000
) -> tuple[bool | None, str]:
    """Re-run a witness's check on its deserialized class."""
    from .classfile import parse_class

    cc = parse_class(witness.class_text)
    outcomes, _, _ = _run_checks(cc, (witness.check,), budget)
    return outcomes[witness.check]


# ---------------------------------------------------------------------------
# the census driver


@dataclass
class _ChunkResult:
    checked: int = 0
    passed: Counter = field(default_factory=Counter)
    failed: Counter = field(default_factory=Counter)
    exhausted: int = 0
    failures: list[FailureWitness] = field(default_factory=list)
    histogram: Counter = field(default_factory=Counter)


def _check_class(cc: ConceptClass, config: CensusConfig, out: _ChunkResult) -> bool:
    """Run all enabled checks on one class; True if any check failed."""
    from .classfile import serialize_class

    outcomes, dim, nctd_value = _run_checks(cc, config.checks, config.budget)
    out.checked += 1
    out.histogram[(dim, nctd_value)] += 1
    any_failed = False
    text = None
    for check in config.checks:
        ok, evidence = outcomes[check]
        if ok is None:
            out.exhausted += 1
        elif ok:
            out.passed[check] += 1
        else:
            out.failed[check] += 1
            any_failed = True
            if text is None:
                text = serialize_class(cc)
            out.failures.append(
                FailureWitness(class_text=text, check=check, evidence=evidence)
            )
    return any_failed


def _process_masks(config: CensusConfig, masks: Sequence[int]) -> _ChunkResult:
    out = _ChunkResult()
    n = config.n
    for mask in masks:
        cc = class_from_mask(n, mask)
        if config.dedup and not _is_canonical(n, mask, cc.words):
            continue
        if _check_class(cc, config, out) and config.stop_on_first_failure:
            break
    return out


def _process_samples(config: CensusConfig, lo: int, hi: int) -> _ChunkResult:
    out = _ChunkResult()
    for index in range(lo, hi):
        if (
            _check_class(_sample_class(config, index), config, out)
            and config.stop_on_first_failure
        ):
            break
    return out


def _worker(args) -> _ChunkResult:
    kind, config, payload = args
    if kind == "masks":
        return _process_masks(config, payload)
    return _process_samples(config, *payload)


def _chunk_args(config: CensusConfig, chunk_size: int = 2048):
    if config.sample_count > 0:
        for lo in range(0, config.sample_count, chunk_size):
            hi = min(lo + chunk_size, config.sample_count)
            yield ("samples", config, (lo, hi))
    else:
        lo, hi = config.size_range
        size = _enumeration_size(config.n, lo, hi)
        if size > ENUMERATION_CAP:
            raise InfeasibleEnumerationError(
                f"{size} classes at n={config.n} exceed the cap of "
                f"{ENUMERATION_CAP}; tighten the size filter or use sampling"
            )
        masks = _iter_masks(config.n, lo, hi)
        while True:
            batch = tuple(itertools.islice(masks, chunk_size))
            if not batch:
                break
            yield ("masks", config, batch)


def _merge(total: CensusResult, part: _ChunkResult) -> None:
    total.classes_checked += part.checked
    total.passed.update(part.passed)
    total.failed.update(part.failed)
    total.nctd_budget_exhausted += part.exhausted
    total.failures.extend(part.failures)
    total.histogram.update(part.histogram)


def run_census(config: CensusConfig) -> CensusResult:
    """Run the configured census and aggregate per-check outcomes.

    Results are byte-identical for any ``jobs`` value: chunks are merged in
    stream order and every per-class computation is deterministic.  Wall
    time is recorded on the result but deliberately excluded from rendered
    reports.
    """
    start = time.perf_counter()
    result = CensusResult(config=config)
    if config.stop_on_first_failure or config.jobs == 1:
        for args in _chunk_args(config, chunk_size=256):
            part = _worker(args)
            _merge(result, part)
            if config.stop_on_first_failure and part.failures:
                break
    else:
        import multiprocessing

        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(processes=config.jobs) as pool:
            for part in pool.imap(_worker, _chunk_args(config)):
                _merge(result, part)
    result.wall_time_s = time.perf_counter() - start
    return result
