"""Named matrices used throughout the tests, demos, and fixtures.

DIM5_ORIENTED holds the seven nontrivial oriented 5-dimensional real Bott
manifolds (indices follow the standard enumeration of the 54 strictly
upper 5x5 classes).  CLASSIC_NO_SPIN_5 is the classical 5-dimensional
flat manifold without Spin structure known since the 1960s.  The 7x7
star family fixes the first two rows and varies the 9 starred entries.
"""
from __future__ import annotations

from typing import Iterator

from .bottmatrix import BottMatrix


def _m(*rows: str) -> BottMatrix:
    return BottMatrix.from_rows([[int(c) for c in row] for row in rows])


DIM5_ORIENTED: dict[str, BottMatrix] = {
    "A4": _m("01010",
             "00101",
             "00011",
             "00000",
             "00000"),
    "A23": _m("01100",
              "00000",
              "00011",
              "00000",
              "00000"),
    "A29": _m("01111",
              "00000",
              "00000",
              "00000",
              "00000"),
    "A37": _m("00000",
              "00110",
              "00011",
              "00000",
              "00000"),
    "A40": _m("00101",
              "00110",
              "00011",
              "00000",
              "00000"),
    "A48": _m("00101",
              "00110",
              "00000",
              "00000",
              "00000"),
    "A49": _m("00000",
              "00000",
              "00011",
              "00000",
              "00000"),
}

CLASSIC_NO_SPIN_5: BottMatrix = _m(
    "00110",
    "00011",
    "00000",
    "00000",
    "00000",
)

STAR_FAMILY_BASE: tuple[str, ...] = (
    "0011110",
    "0000011",
    "000****",
    "0000***",
    "00000**",
    "0000000",
    "0000000",
)

STAR_POSITIONS: tuple[tuple[int, int], ...] = tuple(
    (i, j)
    for i, row in enumerate(STAR_FAMILY_BASE)
    for j, c in enumerate(row)
    if c == "*"
)


def star_family_member(bits: int) -> BottMatrix:
    """The family member with the starred entries set from `bits` (LSB is
    the first star in row-major order)."""
    rows = [list(row) for row in STAR_FAMILY_BASE]
    for k, (i, j) in enumerate(STAR_POSITIONS):
        rows[i][j] = "1" if (bits >> k) & 1 else "0"
    return BottMatrix.from_rows([[int(c) for c in row] for row in rows])


def star_family() -> Iterator[BottMatrix]:
    """All 2^9 = 512 members of the star family."""
    for bits in range(1 << len(STAR_POSITIONS)):
        yield star_family_member(bits)
