"""Spin and Spin^C existence for oriented real Bott manifolds.

Two independent routes are implemented: the matrix-level obstruction
detectors (odd row overlap with a zero entry; disjoint rows of weight
2 mod 4) together with the w_2 = 0 criterion, and a brute-force search
for a lift of the holonomy through the sign-monomial subgroup of
Spin(n), mirroring the group-theoretic definition.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import bieberbach, cohomology, gf2
from .bottmatrix import BottMatrix, is_orientable, to_strict_upper
from .gf2 import parity, popcount

PART_I = "Part I"
PART_II = "Part II"


class NonOrientable(ValueError):
    """Spin questions are posed for oriented manifolds only."""


def _require_orientable(m: BottMatrix) -> None:
    if not is_orientable(m):
        raise NonOrientable("matrix has a row of odd weight; the manifold is not orientable")


# ---------------------------------------------------------------------------
# the finite sign-monomial subgroup of Spin(n)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CliffordElement:
    """+-(product of distinct generators e_i), with e_i e_j = -e_j e_i and
    e_i^2 = -1; the support mask lists the factors in ascending order."""

    n: int
    sign: int
    support: int

    def __post_init__(self) -> None:
        if self.sign not in (-1, 1):
            raise ValueError(f"sign must be +-1, got {self.sign}")
        if self.support < 0 or self.support >> self.n:
            raise ValueError("support does not fit the ambient dimension")

    @classmethod
    def identity(cls, n: int) -> "CliffordElement":
        return cls(n, 1, 0)


def clifford_mul(a: CliffordElement, b: CliffordElement) -> CliffordElement:
    """Product in the sign-monomial group.

    The sign picks up one -1 per transposition needed to interleave the
    sorted supports and one -1 per common generator (from e_i^2 = -1).
    """
    if a.n != b.n:
        raise ValueError(f"ambient dimensions differ: {a.n} != {b.n}")
    swaps = 0
    for i in range(b.n):
        if (b.support >> i) & 1:
            swaps += popcount(a.support >> (i + 1))
    sign = a.sign * b.sign
    if (swaps + popcount(a.support & b.support)) & 1:
        sign = -sign
    return CliffordElement(a.n, sign, a.support ^ b.support)


def clifford_inv(a: CliffordElement) -> CliffordElement:
    # a * a = sq.sign * 1, so a^-1 = sq.sign * a (signs are self-inverse)
    sq = clifford_mul(a, a)
    assert sq.support == 0
    return CliffordElement(a.n, a.sign * sq.sign, a.support)


# ---------------------------------------------------------------------------
# matrix-level obstruction detectors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ObstructionWitness:
    """A pair of rows certifying that no Spin structure exists.

    kind PART_I: a[i][j] = 0 and the supports overlap in an odd set.
    kind PART_II: a[i][j] = 1 and disjoint supports, both of weight
    2 mod 4.  (The a[i][j] = 1 condition is what makes s_i^2 = (s_i s_j)^2
    in the group; without it the obstruction is false, e.g. rows {5,6}
    and {3,4} in dimension 6 give a Spin manifold.)
    Indices are 0-based; `data` is the overlap size for PART_I and the
    two support sizes for PART_II.
    """

    kind: str
    i: int
    j: int
    data: tuple[int, ...]

    def verify(self, m: BottMatrix) -> bool:
        ri, rj = m.rows[self.i], m.rows[self.j]
        if self.kind == PART_I:
            return m.entry(self.i, self.j) == 0 and popcount(ri & rj) % 2 == 1
        if self.kind == PART_II:
            return (
                m.entry(self.i, self.j) == 1
                and ri & rj == 0
                and ri != 0
                and rj != 0
                and popcount(ri) % 4 == 2
                and popcount(rj) % 4 == 2
            )
        return False


def odd_overlap_witness(m: BottMatrix) -> Optional[ObstructionWitness]:
    """First (i, j) in lexicographic order with a[i][j] = 0 and odd row
    overlap; such a pair rules out a Spin structure."""
    _require_orientable(m)
    for i in range(m.n):
        for j in range(i + 1, m.n):
            if m.entry(i, j):
                continue
            overlap = popcount(m.rows[i] & m.rows[j])
            if overlap & 1:
                return ObstructionWitness(PART_I, i, j, (overlap,))
    return None


def disjoint_rows_witness(m: BottMatrix) -> Optional[ObstructionWitness]:
    """First (i, j) with a[i][j] = 1 and disjoint nonzero supports both of
    weight 2 mod 4; such a pair rules out a Spin structure."""
    _require_orientable(m)
    for i in range(m.n):
        ri = m.rows[i]
        if ri == 0 or popcount(ri) % 4 != 2:
            continue
        for j in range(i + 1, m.n):
            if not m.entry(i, j):
                continue
            rj = m.rows[j]
            if rj == 0 or ri & rj or popcount(rj) % 4 != 2:
                continue
            return ObstructionWitness(PART_II, i, j, (popcount(ri), popcount(rj)))
    return None


def has_spin(m: BottMatrix) -> bool:
    """Spin structure exists iff w_2 = 0 (oriented input required)."""
    _require_orientable(m)
    return cohomology.ring_of(m).stiefel_whitney(2).is_zero()


def spinc_obstructed(m: BottMatrix) -> bool:
    """True when the Part I detector fires and H^2(M; R) = 0, which rules
    out even a Spin^C structure."""
    _require_orientable(m)
    return odd_overlap_witness(m) is not None and cohomology.h2_real_is_zero(m)


# ---------------------------------------------------------------------------
# the lift oracle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpinLift:
    """A homomorphism from Gamma(A) to the sign-monomial group covering the
    holonomy: a sign per generator and a +-1 character on the translation
    lattice (keyed by the doubled HNF basis rows)."""

    generator_signs: dict[int, int]
    lattice_character: dict[tuple[int, ...], int]

    def __hash__(self) -> int:  # dict fields; hash by content
        return hash(
            (
                tuple(sorted(self.generator_signs.items())),
                tuple(sorted(self.lattice_character.items())),
            )
        )


def _lattice_coords_mod2(basis2: tuple[tuple[int, ...], ...], trans2: tuple[int, ...]) -> int:
    """Coordinates (mod 2) of a lattice vector in the HNF basis, as a mask."""
    n = len(trans2)
    v = list(trans2)
    coeffs = [0] * len(basis2)
    pivots = []
    for idx, row in enumerate(basis2):
        p = next(j for j in range(n) if row[j])
        pivots.append((p, idx))
    for p, idx in sorted(pivots):
        row = basis2[idx]
        assert v[p] % row[p] == 0, "vector is not in the lattice"
        q = v[p] // row[p]
        coeffs[idx] = q
        if q:
            for k in range(p, n):
                v[k] -= q * row[k]
    assert all(x == 0 for x in v), "vector is not in the lattice"
    mask = 0
    for idx, c in enumerate(coeffs):
        if c & 1:
            mask |= 1 << idx
    return mask


def spin_lift_search(m: BottMatrix) -> Optional[SpinLift]:
    """Exhaustive search for a lift of the holonomy to Spin(n).

    Each generator with support S (even, by orientability) must map to
    +-e_{S}; translations must map through a +-1 character on N.  The
    constraints are the squares, the commutators, the pure-translation
    products over a kernel basis, and invariance of the character under
    the holonomy action.  Character-only constraints are checked before
    the sign loop.  Returns the first lift in counting order, or None.
    """
    _require_orientable(m)
    if not m.is_strictly_upper:
        _, m = to_strict_upper(m)
    n = m.n
    pres = bieberbach.generators_of(m)
    gens = pres.generators
    basis2 = pres.lattice.basis2
    nbasis = len(basis2)

    def coords(t2: tuple[int, ...]) -> int:
        return _lattice_coords_mod2(basis2, t2)

    active = [i for i, g in enumerate(gens) if not g.is_translation]
    supports = {i: gens[i].exponent_mask for i in active}

    # chi-only constraints: pairs (coordinate mask, required sign bit)
    chi_constraints: list[tuple[int, int]] = []
    for i in active:
        sq = gens[i].compose(gens[i])
        half = popcount(supports[i]) // 2
        chi_constraints.append((coords(sq.trans2), half & 1))
    for ai, i in enumerate(active):
        for j in active[ai + 1:]:
            comm = (
                gens[i].compose(gens[j]).compose(gens[i].inverse()).compose(gens[j].inverse())
            )
            chi_constraints.append((coords(comm.trans2), popcount(supports[i] & supports[j]) & 1))
    for row_idx, row in enumerate(basis2):
        for i in active:
            conj = tuple(s * t for s, t in zip(gens[i].signs, row))
            chi_constraints.append((coords(conj) ^ (1 << row_idx), 0))

    # mixed constraints from kernel products of the active generators:
    # (sign-index mask, coordinate mask, required bit)
    rows = []
    for coord in range(n):
        mask = 0
        for pos, i in enumerate(active):
            if (supports[i] >> coord) & 1:
                mask |= 1 << pos
        rows.append(mask)
    mixed: list[tuple[int, int, int]] = []
    if active:
        for kvec in gf2.kernel_basis(gf2.Gf2Mat(len(active), tuple(rows))):
            subset = [active[pos] for pos in range(len(active)) if (kvec.mask >> pos) & 1]
            prod_group = bieberbach._ordered_product(gens, subset)
            assert prod_group.is_translation
            cliff = CliffordElement.identity(n)
            for i in subset:
                cliff = clifford_mul(cliff, CliffordElement(n, 1, supports[i]))
            assert cliff.support == 0
            mixed.append((kvec.mask, coords(prod_group.trans2), 0 if cliff.sign == 1 else 1))

    for chi in range(1 << nbasis):
        if any(parity(chi & cmask) != bit for cmask, bit in chi_constraints):
            continue
        for sigma in range(1 << len(active)):
            if all(
                (parity(sigma & smask) ^ parity(chi & cmask)) == bit
                for smask, cmask, bit in mixed
            ):
                gen_signs: dict[int, int] = {}
                for pos, i in enumerate(active):
                    gen_signs[i] = -1 if (sigma >> pos) & 1 else 1
                for i, g in enumerate(gens):
                    if g.is_translation:
                        gen_signs[i] = -1 if parity(chi & coords(g.trans2)) else 1
                character = {
                    row: (-1 if (chi >> idx) & 1 else 1) for idx, row in enumerate(basis2)
                }
                lift = SpinLift(gen_signs, character)
                assert _verify_lift(m, pres, lift)
                return lift
    return None


def _verify_lift(m: BottMatrix, pres: bieberbach.GroupPresentation, lift: SpinLift) -> bool:
    """Re-check every relation of the found lift with honest Clifford and
    group arithmetic (soundness net under the packed search)."""
    n = m.n
    gens = pres.generators
    basis2 = pres.lattice.basis2

    def chi(t2: tuple[int, ...]) -> int:
        mask = _lattice_coords_mod2(basis2, t2)
        sign = 1
        for idx, row in enumerate(basis2):
            if (mask >> idx) & 1:
                sign *= lift.lattice_character[row]
        return sign

    def eps(i: int) -> CliffordElement:
        g = gens[i]
        if g.is_translation:
            return CliffordElement(n, chi(g.trans2), 0)
        return CliffordElement(n, lift.generator_signs[i], g.exponent_mask)

    for i, g in enumerate(gens):
        sq = g.compose(g)
        if clifford_mul(eps(i), eps(i)).sign != chi(sq.trans2):
            return False
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            comm = gens[i].compose(gens[j]).compose(gens[i].inverse()).compose(gens[j].inverse())
            ei, ej = eps(i), eps(j)
            cliff_comm = clifford_mul(clifford_mul(ei, ej), clifford_mul(clifford_inv(ei), clifford_inv(ej)))
            if cliff_comm.support != 0 or cliff_comm.sign != chi(comm.trans2):
                return False
    for row in basis2:
        for g in gens:
            conj = tuple(s * t for s, t in zip(g.signs, row))
            if chi(conj) != chi(row):
                return False
    return True
