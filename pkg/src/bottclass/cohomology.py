"""Z2 cohomology rings of real Bott manifolds and Stiefel-Whitney classes.

The ring of an n x n Bott matrix A is Z2[x_1..x_n] modulo the relations
x_j^2 = x_j * (sum_i a_{i,j} x_i).  Monomials in normal form are square
free and stored as int bitmasks over the variable indices (0-based); a
polynomial is a frozenset of such masks (symmetric-difference addition).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import comb
from typing import FrozenSet, Iterable, Sequence

from .bottmatrix import BottMatrix, to_strict_upper
from .gf2 import popcount, rank_masks

Terms = FrozenSet[int]

ZERO: Terms = frozenset()
ONE: Terms = frozenset({0})


class PolyParseError(ValueError):
    pass


@dataclass(frozen=True)
class Gf2Poly:
    """Polynomial in square-free normal form: a set of monomial masks."""

    terms: Terms = ZERO

    def __add__(self, other: "Gf2Poly") -> "Gf2Poly":
        return Gf2Poly(self.terms ^ other.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((popcount(t) for t in self.terms), default=0)

    def __str__(self) -> str:
        return format_poly(self)


def poly_from_vars(*one_based_vars: Iterable[int]) -> Gf2Poly:
    """Build a polynomial from monomials given as iterables of 1-based variables."""
    terms = set()
    for mono in one_based_vars:
        mask = 0
        for v in mono:
            mask |= 1 << (v - 1)
        terms ^= {mask}
    return Gf2Poly(frozenset(terms))


def format_poly(p: Gf2Poly) -> str:
    if not p.terms:
        return "0"
    def mono_key(mask: int) -> tuple:
        idx = tuple(i for i in range(mask.bit_length()) if (mask >> i) & 1)
        return (popcount(mask), idx)
    parts = []
    for mask in sorted(p.terms, key=mono_key):
        if mask == 0:
            parts.append("1")
        else:
            parts.append("*".join(f"x{i + 1}" for i in range(mask.bit_length()) if (mask >> i) & 1))
    return " + ".join(parts)


def parse_poly(text: str) -> Gf2Poly:
    """Parse the '+'-separated product form, e.g. "x1*x3 + x2*x5"; "0", "1"."""
    stripped = text.strip()
    if not stripped:
        raise PolyParseError("empty polynomial")
    if stripped == "0":
        return Gf2Poly()
    terms: set[int] = set()
    for raw_term in stripped.split("+"):
        term = raw_term.strip()
        if not term:
            raise PolyParseError(f"empty term in {text!r}")
        if term == "1":
            terms ^= {0}
            continue
        mask = 0
        for factor in term.split("*"):
            f = factor.strip()
            if not (f.startswith("x") and f[1:].isdigit() and int(f[1:]) >= 1):
                raise PolyParseError(f"bad factor {f!r} in {text!r}")
            bit = 1 << (int(f[1:]) - 1)
            if mask & bit:
                raise PolyParseError(f"repeated variable {f!r}: text form carries"
                                     " square-free normal forms only")
            mask |= bit
        terms ^= {mask}
    return Gf2Poly(frozenset(terms))


class CohomRing:
    """Multiplication context for H*(M(A); Z2).

    Non strictly-upper Bott matrices are normalized first; `permutation`
    records the relabeling so reported classes stay traceable to the
    input coordinates.
    """

    def __init__(self, matrix: BottMatrix):
        self.source = matrix
        if matrix.is_strictly_upper:
            self.permutation: tuple[int, ...] = tuple(range(matrix.n))
            self.matrix = matrix
        else:
            self.permutation, self.matrix = to_strict_upper(matrix)
        self.n = matrix.n
        # y_j = sum of x_i over the set column j; for strictly upper input
        # every variable in y_j has index < j, which is what makes the
        # square rewriting terminate (see _reduce_exp).
        self.cols: tuple[int, ...] = tuple(
            self.matrix.col_mask(j) for j in range(self.n)
        )
        self._exp_memo: dict[tuple[int, ...], Terms] = {}
        self._pair_memo: dict[tuple[int, int], Terms] = {}
        self._sigma: list[Gf2Poly] | None = None

    # -- normal form ------------------------------------------------------

    def _reduce_exp(self, exps: tuple[int, ...]) -> Terms:
        """Normal form of the monomial prod x_i^exps[i].

        Rewrites the highest squared variable first; each rewrite of x_j^2
        only introduces variables of strictly smaller index, so the
        recursion is well founded.
        """
        cached = self._exp_memo.get(exps)
        if cached is not None:
            return cached
        j = -1
        for i in range(self.n - 1, -1, -1):
            if exps[i] >= 2:
                j = i
                break
        if j < 0:
            mask = 0
            for i, e in enumerate(exps):
                if e:
                    mask |= 1 << i
            result: Terms = frozenset({mask})
        else:
            col = self.cols[j]
            acc: set[int] = set()
            base = list(exps)
            base[j] -= 1
            for i in range(self.n):
                if (col >> i) & 1:
                    assert i < j, "rewrite must only introduce smaller indices"
                    child = list(base)
                    child[i] += 1
                    acc ^= self._reduce_exp(tuple(child))
            result = frozenset(acc)
        self._exp_memo[exps] = result
        return result

    def _mono_mul(self, u: int, v: int) -> Terms:
        key = (u, v) if u <= v else (v, u)
        cached = self._pair_memo.get(key)
        if cached is not None:
            return cached
        common = u & v
        if common == 0:
            result: Terms = frozenset({u | v})
        else:
            exps = tuple(
                ((u >> i) & 1) + ((v >> i) & 1) for i in range(self.n)
            )
            result = self._reduce_exp(exps)
        self._pair_memo[key] = result
        return result

    def multiply_terms(self, p: Terms, q: Terms) -> Terms:
        acc: set[int] = set()
        for u in p:
            for v in q:
                acc ^= self._mono_mul(u, v)
        return frozenset(acc)

    def multiply(self, p: Gf2Poly, q: Gf2Poly) -> Gf2Poly:
        """Square-free normal form of p * q."""
        for t in p.terms | q.terms:
            if t >> self.n:
                raise ValueError("polynomial uses variables beyond the ring")
        return Gf2Poly(self.multiply_terms(p.terms, q.terms))

    def square_of_var(self, j: int) -> Terms:
        """Normal form of x_j^2, i.e. x_j * y_j."""
        return self._mono_mul(1 << j, 1 << j)

    def square_of_linear(self, mask: int) -> Terms:
        """Normal form of (sum_{i in mask} x_i)^2; squaring is linear over Z2."""
        acc: set[int] = set()
        for i in range(self.n):
            if (mask >> i) & 1:
                acc ^= self.square_of_var(i)
        return frozenset(acc)

    def y(self, j: int) -> Gf2Poly:
        """Degree-1 class of the j-th line bundle: y_j = sum_i a_{i,j} x_i."""
        return Gf2Poly(frozenset(1 << i for i in range(self.n) if (self.cols[j] >> i) & 1))

    # -- characteristic classes -------------------------------------------

    def stiefel_whitney(self, k: int) -> Gf2Poly:
        """sigma_k(y_1, ..., y_n) in normal form (zero above degree n)."""
        if k < 0:
            raise ValueError(f"degree {k} is negative")
        if k > self.n:
            return Gf2Poly()
        if k == 0:
            return Gf2Poly(ONE)
        if k == 1 and self._sigma is None:
            # sigma_1 = sum_j y_j needs no products; skip the full table
            acc: set[int] = set()
            for col in self.cols:
                for i in range(self.n):
                    if (col >> i) & 1:
                        acc ^= {1 << i}
            return Gf2Poly(frozenset(acc))
        if self._sigma is None:
            sigma: list[Terms] = [ONE] + [ZERO] * self.n
            for j in range(self.n):
                yj = self.y(j).terms
                if not yj:
                    continue
                for k_ in range(min(j + 1, self.n), 0, -1):
                    if sigma[k_ - 1]:
                        sigma[k_] = sigma[k_] ^ self.multiply_terms(sigma[k_ - 1], yj)
            self._sigma = [Gf2Poly(t) for t in sigma]
        return self._sigma[k]

    def betti_z2(self, k: int) -> int:
        """GF(2) dimension of the degree-k part, computed as the rank of the
        span of the normal forms of every degree-k monomial; asserts that
        the square-free monomials of size k are exactly the basis."""
        if not 0 <= k <= self.n:
            raise ValueError(f"degree {k} out of range 0..{self.n}")
        index = {m: i for i, m in enumerate(_masks_of_weight(self.n, k))}
        span_rows = []
        for combo in combinations_with_replacement(range(self.n), k):
            exps = [0] * self.n
            for i in combo:
                exps[i] += 1
            terms = self._reduce_exp(tuple(exps))
            row = 0
            for t in terms:
                assert popcount(t) == k, "reduction must preserve degree"
                row |= 1 << index[t]
            span_rows.append(row)
        dim = rank_masks(span_rows)
        assert dim == comb(self.n, k), "normal-form basis must be the square-free monomials"
        return dim


def _masks_of_weight(n: int, k: int) -> list[int]:
    return [m for m in range(1 << n) if popcount(m) == k]


def ring_of(m: BottMatrix) -> CohomRing:
    """Ring context with the relations x_j^2 -> x_j * (sum_i a_{i,j} x_i)."""
    return CohomRing(m)


def w2_of_rows(n: int, rows: Sequence[int]) -> Terms:
    """Normal form of w_2 = sum_{i<j} y_i y_j straight from the row masks.

    Products of two degree-1 classes need at most one rewriting step, so
    this avoids building a full ring context (used in the classification
    inner loop).
    """
    cols = [0] * n
    for i, r in enumerate(rows):
        for j in range(n):
            if (r >> j) & 1:
                cols[j] |= 1 << i
    acc: set[int] = set()
    for i in range(n):
        yi = cols[i]
        if not yi:
            continue
        for j in range(i + 1, n):
            yj = cols[j]
            if not yj:
                continue
            for a in range(n):
                if not (yi >> a) & 1:
                    continue
                for b in range(n):
                    if not (yj >> b) & 1:
                        continue
                    if a == b:
                        # x_a^2 = x_a * y_a, already square free
                        for c in range(n):
                            if (cols[a] >> c) & 1:
                                acc ^= {(1 << c) | (1 << a)}
                    else:
                        acc ^= {(1 << a) | (1 << b)}
    return frozenset(acc)


def h2_real_is_zero(m: BottMatrix) -> bool:
    """True iff no two columns sum to zero over GF(2) (all columns distinct),
    the matrix form of H^2(M(A); R) = 0."""
    cols = [m.col_mask(j) for j in range(m.n)]
    return len(set(cols)) == m.n
