"""Exception types shared across the package.

Structured failures that carry scientific evidence (a stalled compression
round, an exhausted search budget) keep their witness data on the exception
object so callers can report or serialize it instead of losing it in a
message string.
"""

from __future__ import annotations


class NcteachError(Exception):
    """Base class for all errors raised by this package."""


class MalformedFragmentError(NcteachError):
    """A fragment is structurally invalid or references an unknown instance."""


class MalformedSubsetError(NcteachError):
    """An instance subset is not strictly increasing or is out of range."""


class DuplicateConceptError(NcteachError):
    """Two identical concept vectors were supplied for one class."""


class ClassFormatError(NcteachError):
    """A class/mapping text file could not be parsed.

    `line` is the 1-based offending line number when known.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class StallError(NcteachError):
    """A compression round found no frequency-1 cell over a nonempty pool.

    This is the most interesting output the compressor can produce: it would
    be a counterexample to the frequency-1 guarantee the scheme relies on.
    The exception carries the full witness.
    """

    def __init__(self, round_index, pool, table):
        self.round_index = round_index
        self.pool = tuple(pool)
        self.table = table
        super().__init__(
            f"round {round_index}: no fragment of frequency 1 over a pool of "
            f"{len(self.pool)} concepts"
        )


class CompressionInvariantError(NcteachError):
    """A compression postcondition failed (e.g. a fragment assigned twice)."""


class UnassignedFragmentError(NcteachError):
    """Reconstruction was asked about a fragment no round ever assigned."""


class IncompleteMappingError(NcteachError):
    """A teacher mapping does not cover every concept of the class."""


class InconsistentTeachingSetError(NcteachError):
    """A teaching set disagrees with its own concept."""


class BudgetExhaustedError(NcteachError):
    """The exact-NCTD search hit its node limit.

    `lower` and `upper` bracket the true value: every order below `lower`
    was refuted before the budget ran out, and `upper` is always feasible.
    """

    def __init__(self, lower: int, upper: int, budget: int):
        self.lower = lower
        self.upper = upper
        self.budget = budget
        super().__init__(
            f"node budget {budget} exhausted; NCTD is in [{lower}, {upper}]"
        )


class InfeasibleEnumerationError(NcteachError):
    """The configured census space is too large to enumerate exhaustively."""
