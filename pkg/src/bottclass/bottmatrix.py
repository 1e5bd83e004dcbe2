"""Bott matrices, the three diffeomorphism moves, and orbit classification.

A Bott matrix is a binary square matrix with zero diagonal that some
permutation conjugates to strictly upper triangular form; equivalently the
digraph with an edge k -> i whenever a[k][i] = 1 is acyclic.  Matrices are
stored as tuples of int row masks (bit j of row i is a[i][j], 0-based).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from .gf2 import BoundExceeded, parity, popcount, rank_masks

STRICT_UPPER_ENUM_BOUND = 7
CLASSIFY_BOUND = 6


class NotBottMatrix(ValueError):
    """Input fails the Bott matrix conditions (diagonal / acyclicity)."""


class ColumnMismatch(ValueError):
    """Op3 applied to columns that are not equal."""


class MatrixParseError(ValueError):
    pass


def _stuck_set(n: int, rows: Sequence[int]) -> int:
    """Mask of vertices a topological sort cannot place (the cyclic part)."""
    cols = [0] * n
    for i, r in enumerate(rows):
        for j in range(n):
            if (r >> j) & 1:
                cols[j] |= 1 << i
    placed = 0
    progress = True
    while progress:
        progress = False
        for v in range(n):
            if not (placed >> v) & 1 and cols[v] & ~placed == 0:
                placed |= 1 << v
                progress = True
    return ((1 << n) - 1) & ~placed


def _find_cycle(n: int, rows: Sequence[int], alive: int) -> list[int]:
    # Every stuck vertex has a stuck predecessor; walking predecessors
    # must revisit a vertex, closing a cycle.
    start = (alive & -alive).bit_length() - 1
    seen = {start: 0}
    path = [start]
    v = start
    while True:
        pred = next(k for k in range(n) if (alive >> k) & 1 and (rows[k] >> v) & 1)
        if pred in seen:
            # Edge direction: pred -> path[-1] -> path[-2] -> ... -> pred.
            return [pred] + path[seen[pred] + 1:][::-1]
        seen[pred] = len(path)
        path.append(pred)
        v = pred


def _topo_order(n: int, rows: Sequence[int]) -> Optional[list[int]]:
    """Topological order of the edge digraph, smallest index first on ties.

    Vertex v may be placed once all its predecessors (k with a[k][v] = 1)
    are placed.  Returns None when the digraph has a cycle.
    """
    cols = [0] * n
    for i, r in enumerate(rows):
        for j in range(n):
            if (r >> j) & 1:
                cols[j] |= 1 << i
    placed = 0
    order: list[int] = []
    for _ in range(n):
        v = next(
            (u for u in range(n) if not (placed >> u) & 1 and cols[u] & ~placed == 0),
            None,
        )
        if v is None:
            return None
        order.append(v)
        placed |= 1 << v
    return order


@dataclass(frozen=True)
class BottMatrix:
    """Binary square matrix encoding one real Bott manifold."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        n, rows = self.n, self.rows
        if n < 1 or len(rows) != n:
            raise NotBottMatrix(f"expected {n} rows, got {len(rows)}")
        for i, r in enumerate(rows):
            if r < 0 or r >> n:
                raise NotBottMatrix(f"row {i + 1} does not fit in {n} columns")
            if (r >> i) & 1:
                raise NotBottMatrix(f"nonzero diagonal entry at ({i + 1},{i + 1})")
        if _topo_order(n, rows) is None:
            cycle = _find_cycle(n, rows, _stuck_set(n, rows))
            pretty = " -> ".join(str(v + 1) for v in cycle + cycle[:1])
            raise NotBottMatrix(f"edge digraph has a cycle: {pretty}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "BottMatrix":
        n = len(rows)
        masks = []
        for r in rows:
            if len(r) != n:
                raise NotBottMatrix("matrix must be square")
            mask = 0
            for j, b in enumerate(r):
                if b not in (0, 1):
                    raise NotBottMatrix(f"entry {b!r} is not binary")
                mask |= b << j
            masks.append(mask)
        return cls(n, tuple(masks))

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def row_support(self, i: int) -> int:
        return self.rows[i]

    def col_mask(self, j: int) -> int:
        mask = 0
        for i, r in enumerate(self.rows):
            mask |= ((r >> j) & 1) << i
        return mask

    @property
    def is_strictly_upper(self) -> bool:
        return all(r & ((1 << (i + 1)) - 1) == 0 for i, r in enumerate(self.rows))

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.n)] for r in self.rows]

    def __str__(self) -> str:
        return "\n".join("".join(str((r >> j) & 1) for j in range(self.n)) for r in self.rows)


def validate(rows: Sequence[Sequence[int]] | BottMatrix) -> BottMatrix:
    """Check the Bott conditions, returning the matrix or raising NotBottMatrix."""
    if isinstance(rows, BottMatrix):
        return rows
    return BottMatrix.from_rows(rows)


# ---------------------------------------------------------------------------
# text / JSON interchange
# ---------------------------------------------------------------------------

def format_matrix_text(m: BottMatrix) -> str:
    return f"{m.n}\n{m}\n"

def to_json_dict(m: BottMatrix) -> dict:
    return {"n": m.n, "rows": ["".join(str((r >> j) & 1) for j in range(m.n)) for r in m.rows]}


def _rows_from_strings(n: int, lines: Sequence[str]) -> BottMatrix:
    if len(lines) != n:
        raise MatrixParseError(f"expected {n} rows, got {len(lines)}")
    rows = []
    for line in lines:
        if len(line) != n or any(c not in "01" for c in line):
            raise MatrixParseError(f"row {line!r} is not {n} characters of 0/1")
        rows.append([int(c) for c in line])
    try:
        return BottMatrix.from_rows(rows)
    except NotBottMatrix as exc:
        raise MatrixParseError(str(exc)) from exc


def parse_matrix(text: str) -> BottMatrix:
    """Parse either the plain text form ("n" then n rows) or the JSON form."""
    stripped = text.strip()
    if not stripped:
        raise MatrixParseError("empty matrix input")
    if stripped.startswith("{"):
        import json

        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise MatrixParseError(f"bad JSON: {exc}") from exc
        if not isinstance(data, dict) or "n" not in data or "rows" not in data:
            raise MatrixParseError('JSON matrix needs keys "n" and "rows"')
        return _rows_from_strings(int(data["n"]), list(data["rows"]))
    lines = stripped.splitlines()
    try:
        n = int(lines[0].strip())
    except ValueError as exc:
        raise MatrixParseError(f"first line must be the dimension: {lines[0]!r}") from exc
    return _rows_from_strings(n, [ln.strip() for ln in lines[1:]])


# ---------------------------------------------------------------------------
# the three operations
# ---------------------------------------------------------------------------

def _conjugate_raw(n: int, rows: Sequence[int], perm: Sequence[int]) -> tuple[int, ...]:
    # b[perm[i]][perm[j]] = a[i][j]
    out = [0] * n
    for i, r in enumerate(rows):
        ni = perm[i]
        nr = 0
        for j in range(n):
            if (r >> j) & 1:
                nr |= 1 << perm[j]
        out[ni] = nr
    return tuple(out)


def op1(m: BottMatrix, perm: Sequence[int]) -> BottMatrix:
    """Conjugate by the permutation sending index i to perm[i]."""
    if sorted(perm) != list(range(m.n)):
        raise ValueError(f"not a permutation of 0..{m.n - 1}: {perm!r}")
    return BottMatrix(m.n, _conjugate_raw(m.n, m.rows, perm))


def _op2_raw(rows: Sequence[int], k: int) -> tuple[int, ...]:
    rk = rows[k]
    return tuple(r ^ rk if (r >> k) & 1 else r for r in rows)


def op2(m: BottMatrix, k: int) -> BottMatrix:
    """Add column k into every column j with a[k][j] = 1 (an involution)."""
    if not 0 <= k < m.n:
        raise ValueError(f"index {k} out of range")
    return BottMatrix(m.n, _op2_raw(m.rows, k))


def op3(m: BottMatrix, l: int, m_idx: int) -> BottMatrix:
    """Replace row m_idx by row l + row m_idx; requires equal columns l, m_idx."""
    if l == m_idx or not 0 <= l < m.n or not 0 <= m_idx < m.n:
        raise ValueError(f"need two distinct indices in range, got {l}, {m_idx}")
    if m.col_mask(l) != m.col_mask(m_idx):
        raise ColumnMismatch(
            f"columns {l + 1} and {m_idx + 1} differ; the row move does not apply"
        )
    rows = list(m.rows)
    rows[m_idx] ^= rows[l]
    return BottMatrix(m.n, tuple(rows))


def to_strict_upper(m: BottMatrix) -> tuple[tuple[int, ...], BottMatrix]:
    """Permutation p and strictly upper B with B = P m P^-1.

    p[i] is the new position of index i; ties in the topological sort are
    broken by smallest original index first, so strictly upper input maps
    to itself under the identity.
    """
    order = _topo_order(m.n, m.rows)
    assert order is not None  # acyclicity is part of the type
    perm = [0] * m.n
    for pos, v in enumerate(order):
        perm[v] = pos
    b = BottMatrix(m.n, _conjugate_raw(m.n, m.rows, perm))
    assert b.is_strictly_upper
    return tuple(perm), b


# ---------------------------------------------------------------------------
# enumeration and invariants
# ---------------------------------------------------------------------------

def enumerate_strict_upper(
    n: int, bound: int = STRICT_UPPER_ENUM_BOUND
) -> Iterator[BottMatrix]:
    """All 2^(n(n-1)/2) strictly upper triangular binary matrices."""
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if n > bound:
        raise BoundExceeded(
            f"enumerate_strict_upper(n={n}) exceeds the configured bound {bound}"
        )
    for rows in _iter_strict_upper_raw(n):
        yield BottMatrix(n, rows)


def _iter_strict_upper_raw(n: int) -> Iterator[tuple[int, ...]]:
    positions = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for code in range(1 << len(positions)):
        rows = [0] * n
        for b, (i, j) in enumerate(positions):
            if (code >> b) & 1:
                rows[i] |= 1 << j
        yield tuple(rows)


def is_orientable(m: BottMatrix) -> bool:
    """True iff every row has even weight (w1 = 0)."""
    return all(parity(r) == 0 for r in m.rows)


def is_ghw_rbm(m: BottMatrix) -> bool:
    """True iff the GF(2) rank is n - 1 (the GHW∩RBM characterization).

    Requires n >= 2: the GHW holonomy condition asks for (Z_2)^{n-1} with
    n - 1 >= 1, so the circle does not qualify.
    """
    return m.n >= 2 and rank_masks(m.rows) == m.n - 1


# ---------------------------------------------------------------------------
# diffeomorphism classes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClassFingerprint:
    orientable: bool
    holonomy_rank: int
    ghw: bool
    w2_zero: bool


@dataclass(frozen=True)
class DiffeoClass:
    canonical: BottMatrix
    members: frozenset[BottMatrix]
    fingerprint: ClassFingerprint

    @property
    def size(self) -> int:
        return len(self.members)


def _lex_key(n: int, rows: Sequence[int]) -> tuple[int, ...]:
    return tuple((rows[i] >> j) & 1 for i in range(n) for j in range(n))


def _linear_extensions(n: int, rows: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """All vertex orders compatible with the edge partial order."""
    cols = [0] * n
    for i, r in enumerate(rows):
        for j in range(n):
            if (r >> j) & 1:
                cols[j] |= 1 << i
    order = [0] * n

    def rec(placed: int, depth: int) -> Iterator[tuple[int, ...]]:
        if depth == n:
            yield tuple(order)
            return
        for v in range(n):
            if (placed >> v) & 1 or cols[v] & ~placed:
                continue
            order[depth] = v
            yield from rec(placed | (1 << v), depth + 1)

    yield from rec(0, 0)


def _renorm_raw(n: int, rows: Sequence[int]) -> tuple[int, ...]:
    order = _topo_order(n, rows)
    assert order is not None, "operation left the Bott class"
    perm = [0] * n
    for pos, v in enumerate(order):
        perm[v] = pos
    return _conjugate_raw(n, rows, perm)


def _neighbors_raw(n: int, rows: tuple[int, ...]) -> set[tuple[int, ...]]:
    out: set[tuple[int, ...]] = set()
    # Op1: conjugates by every linear extension, i.e. every strictly upper
    # permutation conjugate of this matrix.
    for ext in _linear_extensions(n, rows):
        perm = [0] * n
        for pos, v in enumerate(ext):
            perm[v] = pos
        out.add(_conjugate_raw(n, rows, perm))
    # Op2 keeps strict upper triangularity.
    for k in range(n):
        out.add(_op2_raw(rows, k))
    # Op3 on every ordered pair with equal columns, renormalized.
    cols = [0] * n
    for i, r in enumerate(rows):
        for j in range(n):
            if (r >> j) & 1:
                cols[j] |= 1 << i
    for l in range(n):
        for m_idx in range(n):
            if l == m_idx or cols[l] != cols[m_idx]:
                continue
            moved = list(rows)
            moved[m_idx] ^= moved[l]
            lower = any(moved[i] & ((1 << (i + 1)) - 1) for i in range(n))
            out.add(_renorm_raw(n, moved) if lower else tuple(moved))
    return out


def orbit_raw(n: int, rows: tuple[int, ...]) -> set[tuple[int, ...]]:
    """Closure of one strictly-upper matrix under the three operations."""
    seen = {rows}
    frontier = [rows]
    while frontier:
        nxt = []
        for state in frontier:
            for nb in _neighbors_raw(n, state):
                if nb not in seen:
                    seen.add(nb)
                    nxt.append(nb)
        frontier = nxt
    return seen


def _fingerprint_raw(n: int, rows: tuple[int, ...]) -> ClassFingerprint:
    from . import cohomology  # local import: cohomology depends on this module

    rk = rank_masks(rows)
    return ClassFingerprint(
        orientable=all(parity(r) == 0 for r in rows),
        holonomy_rank=rk,
        ghw=n >= 2 and rk == n - 1,
        w2_zero=cohomology.w2_of_rows(n, rows) == frozenset(),
    )


@lru_cache(maxsize=None)
def diffeo_classes(n: int, bound: int = CLASSIFY_BOUND) -> tuple[DiffeoClass, ...]:
    """Partition all strictly upper matrices of size n into diffeomorphism
    classes (orbits of Op1/Op2/Op3), each with its canonical representative
    and invariant fingerprint.

    Orbit invariance of the fingerprint is asserted for every member.
    """
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if n > bound:
        raise BoundExceeded(f"diffeo_classes(n={n}) exceeds the configured bound {bound}")
    visited: set[tuple[int, ...]] = set()
    classes: list[DiffeoClass] = []
    for seed in _iter_strict_upper_raw(n):
        if seed in visited:
            continue
        members = orbit_raw(n, seed)
        visited |= members
        fp = _fingerprint_raw(n, seed)
        for other in members:
            assert _fingerprint_raw(n, other) == fp, (
                f"fingerprint not constant on orbit of {seed}: {other}"
            )
        canonical = min(members, key=lambda r: _lex_key(n, r))
        classes.append(
            DiffeoClass(
                canonical=BottMatrix(n, canonical),
                members=frozenset(BottMatrix(n, r) for r in members),
                fingerprint=fp,
            )
        )
    classes.sort(key=lambda c: _lex_key(n, c.canonical.rows))
    assert sum(c.size for c in classes) == 1 << (n * (n - 1) // 2)
    return tuple(classes)


def diffeo_class_of(m: BottMatrix) -> DiffeoClass:
    """The class of one matrix (normalized to strictly upper first)."""
    _, b = to_strict_upper(m)
    for cls in diffeo_classes(m.n):
        if b in cls.members:
            return cls
    raise AssertionError("classification did not cover the input matrix")


def count_ghw_rbm_classes(n: int) -> int:
    """Number of diffeo classes with rank n - 1 (expected 2^((n-2)(n-3)/2))."""
    return sum(1 for c in diffeo_classes(n) if c.fingerprint.ghw)
