"""Analysis toolkit for finite boolean concept classes.

Computes VC dimension, runs the ordered compression scheme that assigns
identifying fragments to concepts, builds and verifies non-clashing teacher
mappings, and cross-checks the cardinality and degree bounds against
brute-force oracles and exhaustive small-domain censuses.
"""

from .census import (
    CENSUS_CHECKS,
    CensusConfig,
    CensusResult,
    FailureWitness,
    builtin_c1,
    enumerate_classes,
    random_class,
    replay_witness,
    run_census,
)
from .classfile import (
    format_fragment,
    format_mapping,
    parse_class,
    parse_fragment,
    parse_mapping,
    serialize_class,
)
from .compression import (
    CompressionTrace,
    FrequencyTable,
    RoundRecord,
    compression_round,
    fragment_frequencies,
    reconstruct,
    run_ordered_compression,
)
from .errors import (
    BudgetExhaustedError,
    ClassFormatError,
    CompressionInvariantError,
    DuplicateConceptError,
    IncompleteMappingError,
    InconsistentTeachingSetError,
    InfeasibleEnumerationError,
    MalformedFragmentError,
    MalformedSubsetError,
    NcteachError,
    StallError,
    UnassignedFragmentError,
)
from .model import (
    ConceptClass,
    Fragment,
    LabelPattern,
    consistent,
    fragment_of,
    restriction,
)
from .render import render_assignments, render_frequency_table, render_trace_tables
from .teaching import (
    BoundsReport,
    ClashWitness,
    TeacherMapping,
    build_teacher_mapping,
    compute_bounds,
    degree_lower_bound,
    is_non_clashing,
    min_teaching_set,
    nctd_exact,
    one_inclusion_degrees,
    teaching_dimension,
)
from .vc import VcReport, check_cardinality_bound, sauer_sum_bound, shatters, vcdim

__version__ = "0.1.0"

__all__ = [
    "BoundsReport",
    "BudgetExhaustedError",
    "CENSUS_CHECKS",
    "CensusConfig",
    "CensusResult",
    "ClashWitness",
    "ClassFormatError",
    "CompressionInvariantError",
    "CompressionTrace",
    "ConceptClass",
    "DuplicateConceptError",
    "FailureWitness",
    "Fragment",
    "FrequencyTable",
    "IncompleteMappingError",
    "InconsistentTeachingSetError",
    "InfeasibleEnumerationError",
    "LabelPattern",
    "MalformedFragmentError",
    "MalformedSubsetError",
    "NcteachError",
    "RoundRecord",
    "StallError",
    "TeacherMapping",
    "UnassignedFragmentError",
    "VcReport",
    "build_teacher_mapping",
    "builtin_c1",
    "check_cardinality_bound",
    "compression_round",
    "compute_bounds",
    "consistent",
    "degree_lower_bound",
    "enumerate_classes",
    "format_fragment",
    "format_mapping",
    "fragment_frequencies",
    "fragment_of",
    "is_non_clashing",
    "min_teaching_set",
    "nctd_exact",
    "one_inclusion_degrees",
    "parse_class",
    "parse_fragment",
    "parse_mapping",
    "random_class",
    "reconstruct",
    "render_assignments",
    "render_frequency_table",
    "render_trace_tables",
    "replay_witness",
    "restriction",
    "run_census",
    "run_ordered_compression",
    "sauer_sum_bound",
    "serialize_class",
    "shatters",
    "teaching_dimension",
    "vcdim",
]
