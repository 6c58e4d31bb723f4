"""Deterministic rendering of tables and machine-readable report sections.

Text tables never recompute anything: every printed count is read straight
out of the in-memory table, so a rendered figure is exactly as trustworthy
as the trace behind it.  All orders (subsets, patterns, rows) are fixed by
the data structures, which keeps repeated runs byte-identical.
"""

from __future__ import annotations

import csv
import io
from fractions import Fraction
from typing import Sequence

from .compression import CompressionTrace, RoundRecord
from .model import ConceptClass, Fragment
from .teaching import BoundsReport, TeacherMapping
from .vc import VcReport

__all__ = [
    "render_frequency_table",
    "render_trace_tables",
    "render_assignments",
    "format_subset",
    "class_section",
    "vcdim_section",
    "rounds_section",
    "assignments_section",
    "mapping_section",
    "bounds_section",
    "census_section",
]


def format_subset(subset: Sequence[int], names: Sequence[str]) -> str:
    return "{" + ",".join(names[i] for i in subset) + "}"


def _format_fragment(fragment: Fragment, names: Sequence[str]) -> str:
    return "{" + ",".join(f"({names[i]},{b})" for i, b in fragment.entries()) + "}"


def _pattern_string(labels: Sequence[int]) -> str:
    return " ".join(str(b) for b in labels)


def render_frequency_table(
    record: RoundRecord, names: Sequence[str], style: str = "text"
) -> str:
    """One round's frequency table.

    ``text`` lays the table out with label patterns as rows (binary
    ascending) and subsets as columns (lexicographic).  ``csv`` emits one
    ``round,subset,pattern,count`` line per cell in the same order.
    """
    table = record.table
    d = table.d
    if style == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        for pattern, count in table.cells.items():
            writer.writerow(
                [
                    record.round_index,
                    format_subset(pattern.subset, names),
                    "".join(str(b) for b in pattern.labels),
                    count,
                ]
            )
        return out.getvalue().rstrip("\n")
    if style != "text":
        raise ValueError(f"unknown style {style!r}")

    subsets: list[tuple[int, ...]] = []
    for pattern in table.cells:
        if not subsets or subsets[-1] != pattern.subset:
            subsets.append(pattern.subset)
    headers = [format_subset(s, names) for s in subsets]
    widths = [max(len(h), 1) for h in headers]
    label_width = max(len("labels"), 2 * d - 1 if d else 0)

    rows = []
    patterns_per_subset = 1 << d
    cells = list(table.cells.items())
    for p in range(patterns_per_subset):
        pattern = cells[p][0]
        counts = [cells[s * patterns_per_subset + p][1] for s in range(len(subsets))]
        rows.append((_pattern_string(pattern.labels), counts))

    lines = [
        f"Round {record.round_index} frequencies "
        f"(fragment size {d}, pool {len(record.pool_before)}):"
    ]
    header = "labels".ljust(label_width)
    for h, w in zip(headers, widths):
        header += "  " + h.rjust(w)
    lines.append(header)
    for label, counts in rows:
        line = label.ljust(label_width)
        for count, w in zip(counts, widths):
            line += "  " + str(count).rjust(w)
        lines.append(line)
    return "\n".join(lines)


def render_trace_tables(
    trace: CompressionTrace, style: str = "text"
) -> str:
    """All rounds' tables, blank-line separated (text) or concatenated (csv)."""
    names = trace.concept_class.instance_names
    parts = [
        render_frequency_table(record, names, style) for record in trace.rounds
    ]
    separator = "\n\n" if style == "text" else "\n"
    return separator.join(parts)


def _assignment_rows(trace: CompressionTrace):
    """(concept index, fragments, round) grouped by removal round."""
    for record in trace.rounds:
        owners = sorted({owner for _, owner in record.assignments})
        for k in owners:
            yield k, trace.fragments_for(k), record.round_index


def render_assignments(trace: CompressionTrace, style: str = "text") -> str:
    """The per-concept identifying-fragment table plus unassigned summary.

    Rows are grouped by removal round, concepts in input order within a
    round; each concept lists all its fragments in fragment order.
    """
    cc = trace.concept_class
    names = cc.instance_names
    if style == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        for k, fragments, round_index in _assignment_rows(trace):
            for fragment in fragments:
                writer.writerow(
                    [
                        cc.concept_name(k),
                        cc.row_string(k),
                        round_index,
                        _format_fragment(fragment, names),
                    ]
                )
        return out.getvalue().rstrip("\n")
    if style != "text":
        raise ValueError(f"unknown style {style!r}")

    rows = list(_assignment_rows(trace))
    concept_width = max(len("concept"), max(len(cc.concept_name(k)) for k, _, _ in rows))
    labels_width = max(len("labels"), cc.n)
    round_width = max(len("round"), len(str(len(trace.rounds))))

    lines = [
        f"Identifying fragments (fragment size {trace.d}, "
        f"{len(trace.rounds)} rounds):"
    ]
    lines.append(
        "concept".ljust(concept_width)
        + "  "
        + "labels".ljust(labels_width)
        + "  "
        + "round".ljust(round_width)
        + "  fragments"
    )
    for k, fragments, round_index in rows:
        lines.append(
            cc.concept_name(k).ljust(concept_width)
            + "  "
            + cc.row_string(k).ljust(labels_width)
            + "  "
            + str(round_index).ljust(round_width)
            + "  "
            + ", ".join(_format_fragment(f, names) for f in fragments)
        )
    assigned = trace.assigned_count()
    slots = trace.total_fragment_slots()
    lines.append(f"Assigned fragments: {assigned} of {slots}")
    unassigned = trace.unassigned_fragments()
    if unassigned:
        listing = ", ".join(_format_fragment(f, names) for f in unassigned)
    else:
        listing = "none"
    lines.append(f"Unassigned fragments ({len(unassigned)}): {listing}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# report sections (plain dicts; json.dumps keeps insertion order)


def class_section(cc: ConceptClass) -> dict:
    return {
        "n": cc.n,
        "m": cc.m,
        "instances": list(cc.instance_names),
        "concepts": [cc.row_string(k) for k in range(cc.m)],
    }


def vcdim_section(report: VcReport, names: Sequence[str]) -> dict:
    return {
        "dim": report.vcdim,
        "witness": [names[i] for i in report.witness],
    }


def rounds_section(trace: CompressionTrace) -> list[dict]:
    cc = trace.concept_class
    names = cc.instance_names
    rounds = []
    for record in trace.rounds:
        cells = [
            {
                "subset": format_subset(pattern.subset, names),
                "pattern": "".join(str(b) for b in pattern.labels),
                "count": count,
            }
            for pattern, count in record.table.cells.items()
        ]
        rounds.append(
            {
                "round": record.round_index,
                "pool_before": [cc.concept_name(k) for k in record.pool_before],
                "cells": cells,
                "assignments": [
                    {
                        "fragment": _format_fragment(fragment, names),
                        "concept": cc.concept_name(owner),
                    }
                    for fragment, owner in record.assignments
                ],
                "pool_after": [cc.concept_name(k) for k in record.pool_after],
            }
        )
    return rounds


def assignments_section(trace: CompressionTrace) -> dict:
    cc = trace.concept_class
    names = cc.instance_names
    return {
        "d": trace.d,
        "rounds": len(trace.rounds),
        "concepts": [
            {
                "concept": cc.concept_name(k),
                "labels": cc.row_string(k),
                "round": round_index,
                "fragments": [_format_fragment(f, names) for f in fragments],
            }
            for k, fragments, round_index in _assignment_rows(trace)
        ],
        "assigned": trace.assigned_count(),
        "slots": trace.total_fragment_slots(),
        "unassigned": [
            _format_fragment(f, names) for f in trace.unassigned_fragments()
        ],
    }


def mapping_section(cc: ConceptClass, mapping: TeacherMapping) -> dict:
    names = cc.instance_names
    return {
        "order": mapping.order,
        "teaching_sets": [
            {
                "concept": cc.concept_name(k),
                "labels": cc.row_string(k),
                "fragment": _format_fragment(mapping.teaching_sets[k], names),
            }
            for k in sorted(mapping.teaching_sets)
        ],
    }


def _fraction_parts(value: Fraction) -> dict:
    return {
        "fraction": f"{value.numerator}/{value.denominator}",
        "decimal": float(value),
    }


def bounds_section(bounds: BoundsReport) -> dict:
    section = {
        "vcdim": bounds.vcdim,
        "td": bounds.td,
        "deg_avg": _fraction_parts(bounds.deg_avg),
        "nctd_lower": bounds.nctd_lower,
        "nctd_upper": bounds.nctd_upper,
        "nctd_exact": bounds.nctd_exact,
    }
    if bounds.nctd_bracket is not None:
        section["nctd_bracket"] = list(bounds.nctd_bracket)
    return section


def census_section(result) -> dict:
    config = result.config
    checks = {}
    for check in config.checks:
        entry = {
            "passed": result.passed.get(check, 0),
            "failed": result.failed.get(check, 0),
        }
        if check == "nctd_le_vcdim":
            entry["budget_exhausted"] = result.nctd_budget_exhausted
        checks[check] = entry
    histogram = [
        {"vcdim": dim, "nctd_exact": nctd, "classes": count}
        for (dim, nctd), count in sorted(
            result.histogram.items(),
            key=lambda item: (item[0][0], item[0][1] is None, item[0][1]),
        )
    ]
    return {
        "config": {
            "n": config.n,
            "min_size": config.min_size,
            "max_size": config.max_size,
            "dedup": config.dedup,
            "checks": list(config.checks),
            "mode": "random" if config.sample_count else "exhaustive",
            "sample_count": config.sample_count,
            "seed": config.seed,
            "budget": config.budget,
        },
        "classes_checked": result.classes_checked,
        "checks": checks,
        "failures": [
            {
                "check": w.check,
                "evidence": w.evidence,
                "class_text": w.class_text,
            }
            for w in result.failures
        ],
        "histogram": histogram,
    }
