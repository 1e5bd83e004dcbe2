"""Graded-ring isomorphism testing over Z2 and the rigidity experiment.

The rings are generated in degree 1, so a graded isomorphism is a matrix
in GL(n,2) acting on the x_i that carries each source relation to zero in
the target ring.  Candidates are enumerated row by row in ascending
bitmask order; the relation for x_j only involves rows up to j (source
matrices are normalized to strictly upper), so each level is filtered
exactly as soon as its row is chosen.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .bottmatrix import BottMatrix, diffeo_classes
from .cohomology import CohomRing, Terms
from .gf2 import BoundExceeded, DimensionMismatch, Gf2Mat, rank_masks

EXHAUSTIVE_BOUND = 5
PRUNED_BOUND = 6


@dataclass(frozen=True)
class RingIsoWitness:
    """Invertible degree-1 substitution x_i -> sum_j map[i][j] x_j."""

    map: Gf2Mat


def _linear_mul(ring: CohomRing, u: int, v: int) -> Terms:
    acc: set[int] = set()
    for a in range(ring.n):
        if not (u >> a) & 1:
            continue
        for b in range(ring.n):
            if (v >> b) & 1:
                acc ^= ring._mono_mul(1 << a, 1 << b)
    return frozenset(acc)


def _relation_holds(ring_b: CohomRing, image_j: int, image_yj: int) -> bool:
    """Does the image of x_j^2 + x_j y_j reduce to zero in the target?"""
    return not (ring_b.square_of_linear(image_j) ^ _linear_mul(ring_b, image_j, image_yj))


def _degree2_index(n: int) -> dict[int, int]:
    masks = [m for m in range(1 << n) if bin(m).count("1") == 2]
    return {m: i for i, m in enumerate(masks)}


def _terms_to_bits(index: dict[int, int], terms: Terms) -> int:
    out = 0
    for t in terms:
        out |= 1 << index[t]
    return out


@lru_cache(maxsize=None)
def ring_invariants(m: BottMatrix) -> tuple:
    """Isomorphism invariants used for pruning: the dimension of the
    degree-1 classes with zero square, and the sorted multiset of
    annihilator dimensions dim{v : v w = 0} over all nonzero w."""
    ring = CohomRing(m)
    n = ring.n
    index = _degree2_index(n)
    sq_rows = [_terms_to_bits(index, ring.square_of_var(i)) for i in range(n)]
    sq_ker_dim = n - rank_masks(sq_rows)
    ann_dims = []
    for w in range(1, 1 << n):
        rows = [_terms_to_bits(index, _linear_mul(ring, 1 << i, w)) for i in range(n)]
        ann_dims.append(n - rank_masks(rows))
    return (sq_ker_dim, tuple(sorted(ann_dims)))


def ring_isomorphic(
    a: BottMatrix, b: BottMatrix, prune: bool = True
) -> Optional[RingIsoWitness]:
    """First graded-ring isomorphism H*(M(a)) -> H*(M(b)) in the fixed
    enumeration order of GL(n,2), or None.

    Pruning discards candidate pairs only via proven invariants and never
    changes the verdict.  Exhaustive search is allowed up to n = 5; n = 6
    requires pruning.
    """
    if a.n != b.n:
        raise DimensionMismatch(f"{a.n} != {b.n}")
    n = a.n
    if n > PRUNED_BOUND or (n > EXHAUSTIVE_BOUND and not prune):
        raise BoundExceeded(
            f"ring_isomorphic at n={n} needs pruning enabled (bound {EXHAUSTIVE_BOUND} "
            f"exhaustive, {PRUNED_BOUND} with pruning)"
        )
    ring_a = CohomRing(a)
    ring_b = CohomRing(b)
    if prune and ring_invariants(ring_a.matrix) != ring_invariants(ring_b.matrix):
        return None
    cols_a = ring_a.cols
    chosen = [0] * n
    basis: list[int] = []

    def rec(level: int) -> Optional[tuple[int, ...]]:
        if level == n:
            return tuple(chosen)
        for v in range(1, 1 << n):
            r = v
            for bb in basis:
                r = min(r, r ^ bb)
            if r == 0:
                continue
            image_y = 0
            col = cols_a[level]
            for i in range(level):
                if (col >> i) & 1:
                    image_y ^= chosen[i]
            if not _relation_holds(ring_b, v, image_y):
                continue
            chosen[level] = v
            basis.append(r)
            found = rec(level + 1)
            if found is not None:
                return found
            basis.pop()
        chosen[level] = 0
        return None

    found = rec(0)
    if found is None:
        return None
    witness = RingIsoWitness(Gf2Mat(n, found))
    assert _is_witness(ring_a, ring_b, found)
    return witness


def _is_witness(ring_a: CohomRing, ring_b: CohomRing, rows: tuple[int, ...]) -> bool:
    """Full check: rows invertible and every source relation maps to zero."""
    n = ring_a.n
    if rank_masks(rows) != n:
        return False
    for j in range(n):
        image_y = 0
        for i in range(n):
            if (ring_a.cols[j] >> i) & 1:
                image_y ^= rows[i]
        if not _relation_holds(ring_b, rows[j], image_y):
            return False
    return True


def witness_inverse(witness: RingIsoWitness) -> Gf2Mat:
    """Inverse substitution over GF(2) (exists: the witness is invertible)."""
    n = witness.map.ncols
    aug = [witness.map.rows[i] | (1 << (n + i)) for i in range(n)]
    for col in range(n):
        pivot = next(i for i in range(col, n) if (aug[i] >> col) & 1)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        for i in range(n):
            if i != col and (aug[i] >> col) & 1:
                aug[i] ^= aug[col]
    return Gf2Mat(n, tuple(r >> n for r in aug))


def rigidity_experiment(
    n: int,
    inter_samples: int = 10,
    seed: int = 0,
    prune: bool = True,
) -> dict:
    """Check that ring isomorphism matches the diffeomorphism partition.

    n <= 4: every member is checked against its class canonical and every
    pair of canonicals against each other (exhaustive).  n = 5: all pairs
    of full-holonomy-rank (GHW) class canonicals, two members per such
    class, plus `inter_samples` seeded inter-class canonical pairs.
    Violations are returned in the report; the acceptance suite requires
    none.
    """
    if n > 5:
        raise BoundExceeded(f"rigidity experiment supports n <= 5, got {n}")
    classes = diffeo_classes(n)
    violations: list[dict] = []
    pairs_checked = 0

    def expect_iso(x: BottMatrix, y: BottMatrix) -> None:
        nonlocal pairs_checked
        pairs_checked += 1
        if ring_isomorphic(x, y, prune=prune) is None:
            violations.append(
                {"kind": "missing-isomorphism", "a": str(x).split(), "b": str(y).split()}
            )

    def expect_not_iso(x: BottMatrix, y: BottMatrix) -> None:
        nonlocal pairs_checked
        pairs_checked += 1
        if ring_isomorphic(x, y, prune=prune) is not None:
            violations.append(
                {"kind": "unexpected-isomorphism", "a": str(x).split(), "b": str(y).split()}
            )

    mode = "exhaustive" if n <= 4 else "sampled"
    if n <= 4:
        for cls in classes:
            for member in sorted(cls.members, key=lambda m: m.rows):
                if member != cls.canonical:
                    expect_iso(member, cls.canonical)
        for i, ci in enumerate(classes):
            for cj in classes[i + 1:]:
                expect_not_iso(ci.canonical, cj.canonical)
    else:
        ghw = [c for c in classes if c.fingerprint.ghw]
        for cls in ghw:
            members = sorted(cls.members, key=lambda m: m.rows)
            for member in members[:3]:
                if member != cls.canonical:
                    expect_iso(member, cls.canonical)
        for i, ci in enumerate(ghw):
            for cj in ghw[i + 1:]:
                expect_not_iso(ci.canonical, cj.canonical)
        rng = random.Random(seed)
        for _ in range(inter_samples):
            i, j = rng.sample(range(len(classes)), 2)
            expect_not_iso(classes[i].canonical, classes[j].canonical)
    return {
        "dim": n,
        "classes": len(classes),
        "mode": mode,
        "seed": seed if mode == "sampled" else None,
        "pruning": prune,
        "pairs_checked": pairs_checked,
        "violations": violations,
    }
