"""Embedded golden fixtures for the bundled demo class.

The per-round frequency matrices and the identifying-fragment table below
were transcribed by hand and are the anchor the ``demo-c1`` command diffs
its own output against.  Matrices are indexed [round][pattern row][subset
column]; pattern rows ascend as binary numbers (00, 01, 10, 11) and subset
columns come in lexicographic order ({x1,x2}, {x1,x3}, {x1,x4}, {x2,x3},
{x2,x4}, {x3,x4}).
"""

from __future__ import annotations

C1_ROUND_POOL_SIZES = (10, 7, 4, 1)

C1_FREQUENCY_MATRICES = (
    (
        (3, 3, 3, 2, 2, 2),
        (4, 4, 4, 3, 3, 3),
        (2, 2, 2, 3, 3, 3),
        (1, 1, 1, 2, 2, 2),
    ),
    (
        (3, 3, 3, 1, 1, 1),
        (4, 4, 4, 2, 2, 2),
        (0, 0, 0, 2, 2, 2),
        (0, 0, 0, 2, 2, 2),
    ),
    (
        (1, 1, 1, 0, 0, 0),
        (3, 3, 3, 1, 1, 1),
        (0, 0, 0, 1, 1, 1),
        (0, 0, 0, 2, 2, 2),
    ),
    (
        (0, 0, 0, 0, 0, 0),
        (1, 1, 1, 0, 0, 0),
        (0, 0, 0, 0, 0, 0),
        (0, 0, 0, 1, 1, 1),
    ),
)

# concept name -> (labels, removal round, identifying fragments in order)
C1_ASSIGNED_FRAGMENTS = {
    "C8": ("1001", 1, ("{(x1,1),(x4,1)}",)),
    "C9": ("1010", 1, ("{(x1,1),(x3,1)}",)),
    "C10": ("1100", 1, ("{(x1,1),(x2,1)}",)),
    "C1": ("0001", 2, ("{(x2,0),(x3,0)}",)),
    "C2": ("0010", 2, ("{(x2,0),(x4,0)}",)),
    "C4": ("0100", 2, ("{(x3,0),(x4,0)}",)),
    "C3": ("0011", 3, ("{(x1,0),(x2,0)}", "{(x2,0),(x3,1)}", "{(x2,0),(x4,1)}")),
    "C5": ("0101", 3, ("{(x1,0),(x3,0)}", "{(x2,1),(x3,0)}", "{(x3,0),(x4,1)}")),
    "C6": ("0110", 3, ("{(x1,0),(x4,0)}", "{(x2,1),(x4,0)}", "{(x3,1),(x4,0)}")),
    "C7": (
        "0111",
        4,
        (
            "{(x1,0),(x2,1)}",
            "{(x1,0),(x3,1)}",
            "{(x1,0),(x4,1)}",
            "{(x2,1),(x3,1)}",
            "{(x2,1),(x4,1)}",
            "{(x3,1),(x4,1)}",
        ),
    ),
}

C1_UNASSIGNED_FRAGMENTS = (
    "{(x1,1),(x2,0)}",
    "{(x1,1),(x3,0)}",
    "{(x1,1),(x4,0)}",
)

C1_FREQUENCY_TABLES = (
    """\
Round 1 frequencies (fragment size 2, pool 10):
labels  {x1,x2}  {x1,x3}  {x1,x4}  {x2,x3}  {x2,x4}  {x3,x4}
0 0           3        3        3        2        2        2
0 1           4        4        4        3        3        3
1 0           2        2        2        3        3        3
1 1           1        1        1        2        2        2""",
    """\
Round 2 frequencies (fragment size 2, pool 7):
labels  {x1,x2}  {x1,x3}  {x1,x4}  {x2,x3}  {x2,x4}  {x3,x4}
0 0           3        3        3        1        1        1
0 1           4        4        4        2        2        2
1 0           0        0        0        2        2        2
1 1           0        0        0        2        2        2""",
    """\
Round 3 frequencies (fragment size 2, pool 4):
labels  {x1,x2}  {x1,x3}  {x1,x4}  {x2,x3}  {x2,x4}  {x3,x4}
0 0           1        1        1        0        0        0
0 1           3        3        3        1        1        1
1 0           0        0        0        1        1        1
1 1           0        0        0        2        2        2""",
    """\
Round 4 frequencies (fragment size 2, pool 1):
labels  {x1,x2}  {x1,x3}  {x1,x4}  {x2,x3}  {x2,x4}  {x3,x4}
0 0           0        0        0        0        0        0
0 1           1        1        1        0        0        0
1 0           0        0        0        0        0        0
1 1           0        0        0        1        1        1""",
)

C1_ASSIGNMENT_TABLE = """\
Identifying fragments (fragment size 2, 4 rounds):
concept  labels  round  fragments
C8       1001    1      {(x1,1),(x4,1)}
C9       1010    1      {(x1,1),(x3,1)}
C10      1100    1      {(x1,1),(x2,1)}
C1       0001    2      {(x2,0),(x3,0)}
C2       0010    2      {(x2,0),(x4,0)}
C4       0100    2      {(x3,0),(x4,0)}
C3       0011    3      {(x1,0),(x2,0)}, {(x2,0),(x3,1)}, {(x2,0),(x4,1)}
C5       0101    3      {(x1,0),(x3,0)}, {(x2,1),(x3,0)}, {(x3,0),(x4,1)}
C6       0110    3      {(x1,0),(x4,0)}, {(x2,1),(x4,0)}, {(x3,1),(x4,0)}
C7       0111    4      {(x1,0),(x2,1)}, {(x1,0),(x3,1)}, {(x1,0),(x4,1)}, {(x2,1),(x3,1)}, {(x2,1),(x4,1)}, {(x3,1),(x4,1)}
Assigned fragments: 21 of 24
Unassigned fragments (3): {(x1,1),(x2,0)}, {(x1,1),(x3,0)}, {(x1,1),(x4,0)}"""
