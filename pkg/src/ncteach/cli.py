"""Command-line surface.

Exit codes: 0 success / all checks passed; 1 a check failed (clash, bound
violation, stall - the witness is printed); 2 usage or input parse error;
3 the exact-NCTD search exhausted its node budget.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from math import comb

from . import _figures
from .census import CensusConfig, builtin_c1, run_census
from .classfile import (
    format_fragment,
    format_mapping,
    parse_class,
    parse_mapping,
)
from .compression import run_ordered_compression
from .errors import BudgetExhaustedError, NcteachError, StallError
from .model import ConceptClass
from .render import (
    assignments_section,
    bounds_section,
    census_section,
    class_section,
    format_subset,
    mapping_section,
    render_assignments,
    render_frequency_table,
    render_trace_tables,
    rounds_section,
    vcdim_section,
)
from .teaching import (
    DEFAULT_NCTD_BUDGET,
    build_teacher_mapping,
    compute_bounds,
    is_non_clashing,
    min_teaching_set,
    nctd_exact,
)
from .vc import vcdim

__all__ = ["main"]


def _csv_lines(rows) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    for row in rows:
        writer.writerow(row)
    return out.getvalue().rstrip("\n")


def _emit_json(payload) -> None:
    print(json.dumps(payload, indent=2))


def _load_class(path: str) -> ConceptClass:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_class(handle.read())


def _print_stall(cc: ConceptClass, error: StallError) -> None:
    print(
        f"stall: round {error.round_index} has no frequency-1 fragment over "
        f"{len(error.pool)} concepts"
    )
    print("pool: " + ", ".join(cc.concept_name(k) for k in error.pool))
    fake_record_lines = []
    for pattern, count in error.table.cells.items():
        fake_record_lines.append(
            f"{format_subset(pattern.subset, cc.instance_names)} "
            f"{''.join(str(b) for b in pattern.labels)}: {count}"
        )
    print("\n".join(fake_record_lines))


def cmd_vcdim(args) -> int:
    cc = _load_class(args.file)
    report = vcdim(cc)
    witness = format_subset(report.witness, cc.instance_names)
    if args.format == "json":
        _emit_json({"class": class_section(cc),
                    "vcdim": vcdim_section(report, cc.instance_names)})
    elif args.format == "csv":
        print(_csv_lines([["vcdim", report.vcdim], ["witness", witness]]))
    else:
        print(f"vcdim: {report.vcdim}")
        print(f"witness: {witness}")
    return 0


def cmd_compress(args) -> int:
    cc = _load_class(args.file)
    try:
        trace = run_ordered_compression(cc)
    except StallError as error:
        _print_stall(cc, error)
        return 1
    if args.format == "json":
        payload = {"class": class_section(cc), "d": trace.d}
        if args.tables:
            payload["rounds"] = rounds_section(trace)
        payload["assignments"] = assignments_section(trace)
        _emit_json(payload)
    elif args.format == "csv":
        parts = []
        if args.tables:
            for record in trace.rounds:
                for line in render_frequency_table(
                    record, cc.instance_names, "csv"
                ).splitlines():
                    parts.append("cell," + line)
        for line in render_assignments(trace, "csv").splitlines():
            parts.append("assign," + line)
        print("\n".join(parts))
    else:
        if args.tables:
            print(render_trace_tables(trace, "text"))
            print()
        print(render_assignments(trace, "text"))
    return 0


def cmd_teach(args) -> int:
    cc = _load_class(args.file)
    try:
        trace = run_ordered_compression(cc)
    except StallError as error:
        _print_stall(cc, error)
        return 1
    mapping = build_teacher_mapping(trace)
    if args.format == "json":
        _emit_json({"class": class_section(cc),
                    "mapping": mapping_section(cc, mapping)})
    elif args.format == "csv":
        rows = [
            [cc.concept_name(k), cc.row_string(k),
             format_fragment(mapping.teaching_sets[k], cc.instance_names)]
            for k in range(cc.m)
        ]
        print(_csv_lines(rows))
    else:
        print(format_mapping(cc, mapping), end="")
    return 0


def cmd_check_nonclash(args) -> int:
    cc = _load_class(args.file)
    with open(args.mapping, "r", encoding="utf-8") as handle:
        mapping = parse_mapping(handle.read(), cc)
    witness = is_non_clashing(cc, mapping)
    pairs = comb(cc.m, 2)
    if args.format == "json":
        payload = {"ok": witness is None, "pairs_checked": pairs}
        if witness is not None:
            payload["clash"] = {
                "concepts": [cc.concept_name(witness.i), cc.concept_name(witness.j)],
                "teaching_sets": [
                    format_fragment(witness.teaching_set_i, cc.instance_names),
                    format_fragment(witness.teaching_set_j, cc.instance_names),
                ],
            }
        _emit_json(payload)
    elif args.format == "csv":
        rows = [["ok", str(witness is None).lower()], ["pairs_checked", pairs]]
        if witness is not None:
            rows.append([
                "clash",
                cc.concept_name(witness.i),
                cc.concept_name(witness.j),
                format_fragment(witness.teaching_set_i, cc.instance_names),
                format_fragment(witness.teaching_set_j, cc.instance_names),
            ])
        print(_csv_lines(rows))
    else:
        if witness is None:
            print(f"non-clashing: ok ({pairs} pairs checked)")
        else:
            print("clash found: " + witness.describe(cc))
            print(
                f"T({cc.concept_name(witness.i)}) = "
                f"{format_fragment(witness.teaching_set_i, cc.instance_names)}"
            )
            print(
                f"T({cc.concept_name(witness.j)}) = "
                f"{format_fragment(witness.teaching_set_j, cc.instance_names)}"
            )
    return 0 if witness is None else 1


def cmd_td(args) -> int:
    cc = _load_class(args.file)
    sets = [min_teaching_set(cc, k) for k in range(cc.m)]
    td = max(fragment.size for fragment in sets)
    if args.format == "json":
        _emit_json(
            {
                "class": class_section(cc),
                "td": td,
                "teaching_sets": [
                    {
                        "concept": cc.concept_name(k),
                        "labels": cc.row_string(k),
                        "fragment": format_fragment(sets[k], cc.instance_names),
                        "size": sets[k].size,
                    }
                    for k in range(cc.m)
                ],
            }
        )
    elif args.format == "csv":
        rows = [["td", td]]
        rows.extend(
            [cc.concept_name(k), cc.row_string(k), sets[k].size,
             format_fragment(sets[k], cc.instance_names)]
            for k in range(cc.m)
        )
        print(_csv_lines(rows))
    else:
        print(f"td: {td}")
        for k in range(cc.m):
            print(
                f"{cc.concept_name(k)}: "
                f"{format_fragment(sets[k], cc.instance_names)} "
                f"(size {sets[k].size})"
            )
    return 0


def cmd_nctd(args) -> int:
    cc = _load_class(args.file)
    try:
        value = nctd_exact(cc, budget=args.budget)
    except BudgetExhaustedError as error:
        if args.format == "json":
            _emit_json(
                {
                    "nctd_exact": None,
                    "bracket": [error.lower, error.upper],
                    "budget": args.budget,
                }
            )
        elif args.format == "csv":
            print(_csv_lines([["nctd_exact", ""],
                              ["bracket", error.lower, error.upper]]))
        else:
            print(
                f"nctd_exact: budget exhausted; "
                f"bracket [{error.lower}, {error.upper}]"
            )
        return 3
    if args.format == "json":
        _emit_json({"nctd_exact": value})
    elif args.format == "csv":
        print(_csv_lines([["nctd_exact", value]]))
    else:
        print(f"nctd_exact: {value}")
    return 0


def cmd_bounds(args) -> int:
    cc = _load_class(args.file)
    try:
        bounds = compute_bounds(cc, budget=args.budget)
    except StallError as error:
        _print_stall(cc, error)
        return 1
    if args.format == "json":
        _emit_json({"class": class_section(cc), "bounds": bounds_section(bounds)})
    elif args.format == "csv":
        rows = [
            ["vcdim", bounds.vcdim],
            ["td", bounds.td],
            ["deg_avg", f"{bounds.deg_avg.numerator}/{bounds.deg_avg.denominator}"],
            ["nctd_lower", bounds.nctd_lower],
            ["nctd_upper", bounds.nctd_upper],
            ["nctd_exact", "" if bounds.nctd_exact is None else bounds.nctd_exact],
        ]
        print(_csv_lines(rows))
    else:
        print(f"class: n={cc.n}, m={cc.m}")
        print(f"vcdim: {bounds.vcdim}")
        print(f"td: {bounds.td}")
        print(
            f"deg_avg: {bounds.deg_avg.numerator}/{bounds.deg_avg.denominator} "
            f"({float(bounds.deg_avg)})"
        )
        print(f"nctd_lower: {bounds.nctd_lower}")
        print(f"nctd_upper: {bounds.nctd_upper}")
        if bounds.nctd_exact is None:
            lo, hi = bounds.nctd_bracket
            print(f"nctd_exact: budget exhausted; bracket [{lo}, {hi}]")
        else:
            print(f"nctd_exact: {bounds.nctd_exact}")
    return 3 if bounds.nctd_exact is None else 0


def _parse_checks(value: str) -> tuple[str, ...]:
    from .census import CENSUS_CHECKS

    if value == "all":
        return CENSUS_CHECKS
    return tuple(part.strip() for part in value.split(",") if part.strip())


def cmd_census(args) -> int:
    config = CensusConfig(
        n=args.n,
        min_size=args.min_size,
        max_size=args.max_size,
        dedup=args.dedup,
        checks=_parse_checks(args.checks),
        sample_count=args.sample,
        seed=args.seed,
        budget=args.budget,
        stop_on_first_failure=args.stop_on_failure,
        jobs=args.jobs,
    )
    result = run_census(config)
    if args.timing:
        print(f"census wall time: {result.wall_time_s:.3f}s", file=sys.stderr)
    section = census_section(result)
    if args.format == "json":
        _emit_json(section)
    elif args.format == "csv":
        rows = [["classes_checked", result.classes_checked]]
        for check, entry in section["checks"].items():
            row = ["check", check, entry["passed"], entry["failed"]]
            if "budget_exhausted" in entry:
                row.append(entry["budget_exhausted"])
            rows.append(row)
        for bucket in section["histogram"]:
            rows.append(
                [
                    "histogram",
                    bucket["vcdim"],
                    "" if bucket["nctd_exact"] is None else bucket["nctd_exact"],
                    bucket["classes"],
                ]
            )
        for failure in section["failures"]:
            rows.append(
                ["failure", failure["check"], failure["evidence"],
                 failure["class_text"]]
            )
        print(_csv_lines(rows))
    else:
        mode = section["config"]["mode"]
        print(
            f"census: n={config.n}, mode={mode}, "
            f"classes checked: {result.classes_checked}"
        )
        for check, entry in section["checks"].items():
            line = f"check {check}: {entry['passed']} passed, {entry['failed']} failed"
            if "budget_exhausted" in entry:
                line += f", {entry['budget_exhausted']} budget-exhausted"
            print(line)
        for bucket in section["histogram"]:
            nctd = "?" if bucket["nctd_exact"] is None else bucket["nctd_exact"]
            print(
                f"histogram vcdim={bucket['vcdim']} nctd={nctd}: "
                f"{bucket['classes']}"
            )
        for failure in result.failures:
            print(f"FAILURE [{failure.check}] {failure.evidence}")
            for line in failure.class_text.rstrip("\n").splitlines():
                print(f"  {line}")
        print(f"result: {result.total_failures} failures")
    return 1 if result.total_failures else 0


def cmd_demo_c1(args) -> int:
    cc = builtin_c1()
    trace = run_ordered_compression(cc)
    rendered_tables = [
        render_frequency_table(record, cc.instance_names, "text")
        for record in trace.rounds
    ]
    rendered_assignments = render_assignments(trace, "text")
    for block in rendered_tables:
        print(block)
        print()
    print(rendered_assignments)
    print()
    mismatches = []
    if len(rendered_tables) != len(_figures.C1_FREQUENCY_TABLES):
        mismatches.append(
            f"expected {len(_figures.C1_FREQUENCY_TABLES)} rounds, "
            f"got {len(rendered_tables)}"
        )
    for index, (got, want) in enumerate(
        zip(rendered_tables, _figures.C1_FREQUENCY_TABLES), start=1
    ):
        if got != want:
            mismatches.append(f"round {index} frequency table differs")
    if rendered_assignments != _figures.C1_ASSIGNMENT_TABLE:
        mismatches.append("assignment table differs")
    if mismatches:
        print("demo-c1: MISMATCH against embedded fixtures")
        for item in mismatches:
            print(f"  {item}", file=sys.stderr)
        return 1
    print("demo-c1: all figures match the embedded fixtures")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ncteach",
        description=(
            "Analyze finite boolean concept classes: VC dimension, ordered "
            "compression into identifying fragments, non-clashing teacher "
            "mappings, and exhaustive small-domain censuses."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument(
            "--format",
            choices=("text", "csv", "json"),
            default="text",
            help="output format (default: text)",
        )

    p = sub.add_parser("vcdim", help="VC dimension of a class file")
    p.add_argument("file")
    add_format(p)
    p.set_defaults(handler=cmd_vcdim)

    p = sub.add_parser("compress", help="run the ordered compression")
    p.add_argument("file")
    p.add_argument(
        "--tables", action="store_true", help="include per-round frequency tables"
    )
    add_format(p)
    p.set_defaults(handler=cmd_compress)

    p = sub.add_parser("teach", help="compression-built teacher mapping")
    p.add_argument("file")
    add_format(p)
    p.set_defaults(handler=cmd_teach)

    p = sub.add_parser(
        "check-nonclash", help="verify a teacher mapping file against a class"
    )
    p.add_argument("file")
    p.add_argument("mapping")
    add_format(p)
    p.set_defaults(handler=cmd_check_nonclash)

    p = sub.add_parser("td", help="classical teaching dimension (brute force)")
    p.add_argument("file")
    add_format(p)
    p.set_defaults(handler=cmd_td)

    p = sub.add_parser("nctd", help="exact NCTD by backtracking search")
    p.add_argument("file")
    p.add_argument("--budget", type=int, default=DEFAULT_NCTD_BUDGET)
    add_format(p)
    p.set_defaults(handler=cmd_nctd)

    p = sub.add_parser("bounds", help="all bounds and exact values for a class")
    p.add_argument("file")
    p.add_argument("--budget", type=int, default=DEFAULT_NCTD_BUDGET)
    add_format(p)
    p.set_defaults(handler=cmd_bounds)

    p = sub.add_parser("census", help="check every class over a small domain")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--min-size", type=int, default=1)
    p.add_argument("--max-size", type=int, default=None)
    p.add_argument("--dedup", action="store_true",
                   help="one representative per symmetry orbit")
    p.add_argument("--checks", default="all",
                   help="comma-separated check names or 'all'")
    p.add_argument("--sample", type=int, default=0,
                   help="random mode: number of seeded samples")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=100_000)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--stop-on-failure", action="store_true")
    p.add_argument("--timing", action="store_true",
                   help="report wall time on stderr")
    add_format(p)
    p.set_defaults(handler=cmd_census)

    p = sub.add_parser(
        "demo-c1",
        help="run the bundled 10-concept example and diff the golden figures",
    )
    p.set_defaults(handler=cmd_demo_c1)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as error:
        return int(error.code or 0)
    try:
        return args.handler(args)
    except BudgetExhaustedError as error:
        print(f"error: {error}", file=sys.stderr)
        return 3
    except StallError as error:
        print(f"stall witness: {error}", file=sys.stderr)
        return 1
    except (NcteachError, ValueError) as error:
        print(f"error: {error}", file=sys.stderr)
        return 2
    except OSError as error:
        print(f"error: {error}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
