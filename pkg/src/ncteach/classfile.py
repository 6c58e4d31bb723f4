"""Text formats: class files, fragment notation, and teacher-mapping files.

Class file grammar (UTF-8):

* optional header line ``instances: x1 x2 ...``
* one concept per line as a string over ``{0, 1}``
* ``#`` starts a comment, blank lines are ignored

Fragments render as ``{(x1,1),(x4,1)}`` with instances in ascending order.
A teacher-mapping file holds one ``C<k>: <fragment>`` line per concept,
which is exactly what the ``teach`` command emits.
"""

from __future__ import annotations

import re

from .errors import ClassFormatError, DuplicateConceptError
from .model import ConceptClass, Fragment, default_instance_names
from .teaching import TeacherMapping

__all__ = [
    "parse_class",
    "serialize_class",
    "format_fragment",
    "parse_fragment",
    "format_mapping",
    "parse_mapping",
]


def parse_class(text: str) -> ConceptClass:
    """Parse a class file; concepts keep file order."""
    names: tuple[str, ...] | None = None
    rows: list[tuple[str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("instances:"):
            if names is not None:
                raise ClassFormatError("second instances: header", lineno)
            if rows:
                raise ClassFormatError(
                    "instances: header must precede concept rows", lineno
                )
            names = tuple(line[len("instances:"):].split())
            if not names:
                raise ClassFormatError("instances: header names no instances", lineno)
            continue
        rows.append((line, lineno))
    if not rows:
        raise ClassFormatError("no concept rows found")
    n = len(rows[0][0])
    seen: dict[str, int] = {}
    parsed: list[list[int]] = []
    for row, lineno in rows:
        if len(row) != n:
            raise ClassFormatError(
                f"concept row has length {len(row)}, expected {n}", lineno
            )
        if set(row) - {"0", "1"}:
            bad = next(ch for ch in row if ch not in "01")
            raise ClassFormatError(f"non-binary character {bad!r}", lineno)
        if row in seen:
            raise ClassFormatError(
                f"duplicate concept row (first seen on line {seen[row]})", lineno
            )
        seen[row] = lineno
        parsed.append([int(ch) for ch in row])
    try:
        return ConceptClass.from_rows(parsed, names)
    except (ValueError, DuplicateConceptError) as error:
        raise ClassFormatError(str(error)) from error


def serialize_class(cc: ConceptClass) -> str:
    """Inverse of :func:`parse_class`; omits the header for default names."""
    lines = []
    if cc.instance_names != default_instance_names(cc.n):
        lines.append("instances: " + " ".join(cc.instance_names))
    lines.extend(cc.row_string(k) for k in range(cc.m))
    return "\n".join(lines) + "\n"


def format_fragment(fragment: Fragment, names: tuple[str, ...]) -> str:
    """``{(x1,1),(x4,1)}`` notation, instances ascending."""
    parts = ",".join(f"({names[i]},{b})" for i, b in fragment.entries())
    return "{" + parts + "}"


_ENTRY_RE = re.compile(r"\(\s*([^\s,()]+)\s*,\s*([01])\s*\)")


def parse_fragment(text: str, names: tuple[str, ...]) -> Fragment:
    """Parse ``{(x1,1),(x4,1)}`` against the class's instance names."""
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ClassFormatError(f"fragment must be braced: {text!r}")
    body = text[1:-1].strip()
    if not body:
        return Fragment()
    index_of = {name: i for i, name in enumerate(names)}
    entries = []
    consumed = 0
    for match in _ENTRY_RE.finditer(body):
        gap = body[consumed:match.start()].strip()
        if gap not in ("", ","):
            raise ClassFormatError(f"unexpected text {gap!r} in fragment")
        name, label = match.group(1), match.group(2)
        if name not in index_of:
            raise ClassFormatError(f"unknown instance name {name!r} in fragment")
        entries.append((index_of[name], int(label)))
        consumed = match.end()
    if body[consumed:].strip():
        raise ClassFormatError(
            f"unexpected trailing text {body[consumed:].strip()!r} in fragment"
        )
    if not entries:
        raise ClassFormatError(f"unparseable fragment: {text!r}")
    try:
        return Fragment.from_entries(entries)
    except Exception as error:
        raise ClassFormatError(str(error)) from error


def format_mapping(cc: ConceptClass, mapping: TeacherMapping) -> str:
    """One ``C<k>: <fragment>`` line per concept, in concept order."""
    lines = []
    for k in range(cc.m):
        fragment = mapping.teaching_sets[k]
        lines.append(
            f"{cc.concept_name(k)}: {format_fragment(fragment, cc.instance_names)}"
        )
    return "\n".join(lines) + "\n"


def parse_mapping(text: str, cc: ConceptClass) -> TeacherMapping:
    """Parse a mapping file against a class; unknown concept names reject."""
    valid = {cc.concept_name(k): k for k in range(cc.m)}
    teaching_sets: dict[int, Fragment] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, sep, rest = line.partition(":")
        if not sep:
            raise ClassFormatError("expected 'C<k>: <fragment>'", lineno)
        name = name.strip()
        if name not in valid:
            raise ClassFormatError(f"unknown concept name {name!r}", lineno)
        k = valid[name]
        if k in teaching_sets:
            raise ClassFormatError(f"second teaching set for {name}", lineno)
        try:
            teaching_sets[k] = parse_fragment(rest, cc.instance_names)
        except ClassFormatError as error:
            raise ClassFormatError(str(error), lineno) from error
    return TeacherMapping(teaching_sets)
