"""Exact linear algebra over GF(2) on packed integer bitmasks.

Vectors are Python ints (bit i = coordinate i), wrapped in small frozen
value types at the public boundary.  All arithmetic is XOR/AND; there is
no floating point anywhere in this package.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

INVERTIBLE_ENUM_BOUND = 6


class Gf2Error(ValueError):
    pass


class DimensionMismatch(Gf2Error):
    pass


class BoundExceeded(Gf2Error):
    pass


def popcount(x: int) -> int:
    return x.bit_count()


def parity(x: int) -> int:
    return x.bit_count() & 1


@dataclass(frozen=True)
class Gf2Vec:
    """Fixed-length vector over GF(2), packed into an int."""

    n: int
    mask: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise Gf2Error(f"vector length must be >= 1, got {self.n}")
        if self.mask < 0 or self.mask >> self.n:
            raise Gf2Error(f"mask {self.mask:#x} does not fit in {self.n} bits")

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "Gf2Vec":
        mask = 0
        for i, b in enumerate(bits):
            if b not in (0, 1):
                raise Gf2Error(f"entry {b!r} is not a bit")
            mask |= b << i
        return cls(len(bits), mask)

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.mask >> i) & 1 for i in range(self.n))

    def __xor__(self, other: "Gf2Vec") -> "Gf2Vec":
        if self.n != other.n:
            raise DimensionMismatch(f"{self.n} != {other.n}")
        return Gf2Vec(self.n, self.mask ^ other.mask)

    def dot(self, other: "Gf2Vec") -> int:
        if self.n != other.n:
            raise DimensionMismatch(f"{self.n} != {other.n}")
        return parity(self.mask & other.mask)

    def weight(self) -> int:
        return popcount(self.mask)

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


@dataclass(frozen=True)
class Gf2Mat:
    """Rectangular GF(2) matrix; row i is an int mask over the columns."""

    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.ncols < 1 or len(self.rows) < 1:
            raise Gf2Error("matrix must have at least one row and one column")
        for r in self.rows:
            if r < 0 or r >> self.ncols:
                raise Gf2Error(f"row {r:#x} does not fit in {self.ncols} columns")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "Gf2Mat":
        vecs = [Gf2Vec.from_bits(r) for r in rows]
        ncols = vecs[0].n
        if any(v.n != ncols for v in vecs):
            raise DimensionMismatch("ragged rows")
        return cls(ncols, tuple(v.mask for v in vecs))

    @classmethod
    def identity(cls, n: int) -> "Gf2Mat":
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "Gf2Mat":
        return cls(ncols, (0,) * nrows)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def row(self, i: int) -> Gf2Vec:
        return Gf2Vec(self.ncols, self.rows[i])

    def col(self, j: int) -> Gf2Vec:
        mask = 0
        for i, r in enumerate(self.rows):
            mask |= ((r >> j) & 1) << i
        return Gf2Vec(self.nrows, mask)

    def transpose(self) -> "Gf2Mat":
        return Gf2Mat(self.nrows, tuple(self.col(j).mask for j in range(self.ncols)))

    def mul_vec(self, v: Gf2Vec) -> Gf2Vec:
        if v.n != self.ncols:
            raise DimensionMismatch(f"matrix has {self.ncols} columns, vector length {v.n}")
        mask = 0
        for i, r in enumerate(self.rows):
            mask |= parity(r & v.mask) << i
        return Gf2Vec(self.nrows, mask)

    def mul_mat(self, other: "Gf2Mat") -> "Gf2Mat":
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"{self.ncols} != {other.nrows}")
        cols = [other.col(j).mask for j in range(other.ncols)]
        rows = []
        for r in self.rows:
            out = 0
            for j, c in enumerate(cols):
                out |= parity(r & c) << j
            rows.append(out)
        return Gf2Mat(other.ncols, tuple(rows))

    def __str__(self) -> str:
        return "\n".join(str(self.row(i)) for i in range(self.nrows))


def rank_masks(rows: Iterable[int]) -> int:
    """Rank of a set of int-mask rows, by XOR elimination on top set bits."""
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
    return len(basis)


def rank(m: Gf2Mat) -> int:
    """Dimension of the row space of m over GF(2)."""
    return rank_masks(m.rows)


def solve(m: Gf2Mat, b: Gf2Vec) -> Optional[tuple[Gf2Vec, list[Gf2Vec]]]:
    """Solve m @ x = b over GF(2).

    Returns (particular solution, kernel basis) when solvable, None when
    not.  The particular solution has free variables set to 0; the kernel
    basis vectors are indexed by the free columns in ascending order.
    """
    if b.n != m.nrows:
        raise DimensionMismatch(f"matrix has {m.nrows} rows, rhs length {b.n}")
    n = m.ncols
    # Augmented rows: bit n carries the rhs.
    aug = [m.rows[i] | (((b.mask >> i) & 1) << n) for i in range(m.nrows)]
    pivots: list[int] = []  # pivot column per reduced row
    reduced: list[int] = []
    for col in range(n):
        pivot_row = None
        for idx, r in enumerate(aug):
            if (r >> col) & 1:
                pivot_row = idx
                break
        if pivot_row is None:
            continue
        prow = aug.pop(pivot_row)
        for idx, r in enumerate(aug):
            if (r >> col) & 1:
                aug[idx] = r ^ prow
        for idx, r in enumerate(reduced):
            if (r >> col) & 1:
                reduced[idx] = r ^ prow
        reduced.append(prow)
        pivots.append(col)
    if any(r == 1 << n for r in aug):
        return None
    x = 0
    for r, col in zip(reduced, pivots):
        if (r >> n) & 1:
            x |= 1 << col
    pivot_set = set(pivots)
    kernel: list[Gf2Vec] = []
    for free in range(n):
        if free in pivot_set:
            continue
        v = 1 << free
        for r, col in zip(reduced, pivots):
            if (r >> free) & 1:
                v |= 1 << col
        kernel.append(Gf2Vec(n, v))
    return Gf2Vec(n, x), kernel


def kernel_basis(m: Gf2Mat) -> list[Gf2Vec]:
    """Basis of {x : m @ x = 0}."""
    solved = solve(m, Gf2Vec(m.nrows, 0))
    assert solved is not None
    return solved[1]


def invertible_count(n: int) -> int:
    """|GL(n,2)| by the standard order formula."""
    total = 1
    for i in range(n):
        total *= (1 << n) - (1 << i)
    return total


def enumerate_invertible(n: int, bound: int = INVERTIBLE_ENUM_BOUND) -> Iterator[Gf2Mat]:
    """Yield every element of GL(n,2) exactly once.

    Rows are chosen depth-first in ascending bitmask order, skipping rows
    dependent on the ones already placed, so the stream order is the
    lexicographic order on row tuples.  Refuses n above `bound`.
    """
    if n < 1:
        raise Gf2Error(f"dimension must be >= 1, got {n}")
    if n > bound:
        raise BoundExceeded(
            f"enumerate_invertible(n={n}) exceeds the configured bound {bound}"
        )
    full = 1 << n
    rows: list[int] = []
    basis: list[int] = []

    def rec() -> Iterator[Gf2Mat]:
        if len(rows) == n:
            yield Gf2Mat(n, tuple(rows))
            return
        for v in range(1, full):
            r = v
            for b in basis:
                r = min(r, r ^ b)
            if r == 0:
                continue
            rows.append(v)
            basis.append(r)
            yield from rec()
            rows.pop()
            basis.pop()

    yield from rec()
