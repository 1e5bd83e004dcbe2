"""Ring isomorphism search and the rigidity experiment."""
import itertools
import random

import pytest

from bottclass import catalog
from bottclass.bottmatrix import BottMatrix, diffeo_classes, enumerate_strict_upper
from bottclass.cohomology import CohomRing
from bottclass.gf2 import BoundExceeded, enumerate_invertible
from bottclass.rigidity import (
    RingIsoWitness,
    _is_witness,
    rigidity_experiment,
    ring_isomorphic,
    witness_inverse,
)

A40 = catalog.DIM5_ORIENTED["A40"]
A48 = catalog.DIM5_ORIENTED["A48"]


def brute_force_isomorphic(a, b):
    """Oracle: plain full enumeration of GL(n,2) with the complete relation
    check, no pruning and no incremental filtering."""
    ring_a, ring_b = CohomRing(a), CohomRing(b)
    for cand in enumerate_invertible(a.n):
        if _is_witness(ring_a, ring_b, cand.rows):
            return cand.rows
    return None


def test_identity_witness_on_self():
    w = ring_isomorphic(A40, A40)
    assert w is not None
    assert w.map.rows == tuple(1 << i for i in range(5))


def test_a40_vs_a48_not_isomorphic():
    # distinct diffeomorphism classes with the same w2; the ring comparison
    # is a genuine computation and must come back empty
    assert ring_isomorphic(A40, A48) is None
    assert ring_isomorphic(A40, A48, prune=False) is None


def test_torus_vs_superdiagonal_n3():
    torus = BottMatrix(3, (0, 0, 0))
    sup = BottMatrix(3, (0b010, 0b100, 0))
    assert ring_isomorphic(torus, sup) is None


def test_dimension_mismatch():
    with pytest.raises(Exception):
        ring_isomorphic(BottMatrix(2, (0, 0)), BottMatrix(3, (0, 0, 0)))


def test_bound_without_pruning():
    a = BottMatrix(6, (0,) * 6)
    with pytest.raises(BoundExceeded):
        ring_isomorphic(a, a, prune=False)


def test_search_matches_brute_force_all_n3_pairs():
    mats = list(enumerate_strict_upper(3))
    for a, b in itertools.combinations_with_replacement(mats, 2):
        got = ring_isomorphic(a, b, prune=False)
        expected = brute_force_isomorphic(a, b)
        assert (got is None) == (expected is None)
        if got is not None:
            # both are the first witness in the same enumeration order
            assert got.map.rows == expected


def test_pruning_never_changes_verdicts_n3_exhaustive():
    mats = list(enumerate_strict_upper(3))
    for a, b in itertools.combinations(mats, 2):
        assert (ring_isomorphic(a, b, prune=True) is None) == (
            ring_isomorphic(a, b, prune=False) is None
        )


def test_pruning_never_changes_verdicts_n4_sampled():
    rng = random.Random(11)
    mats = list(enumerate_strict_upper(4))
    for _ in range(40):
        a, b = rng.sample(mats, 2)
        wa = ring_isomorphic(a, b, prune=True)
        wb = ring_isomorphic(a, b, prune=False)
        assert (wa is None) == (wb is None)
        if wa is not None:
            assert wa == wb


def test_witness_is_symmetric():
    classes = diffeo_classes(4)
    checked = 0
    for cls in classes:
        members = sorted(cls.members, key=lambda m: m.rows)
        if len(members) < 2:
            continue
        a, b = members[0], members[1]
        w = ring_isomorphic(a, b)
        assert w is not None
        inv = witness_inverse(w)
        assert _is_witness(CohomRing(b), CohomRing(a), inv.rows)
        checked += 1
    assert checked > 0


def test_same_class_members_isomorphic_n3():
    for cls in diffeo_classes(3):
        for m in cls.members:
            assert ring_isomorphic(m, cls.canonical) is not None


def test_distinct_classes_not_isomorphic_n3():
    canonicals = [c.canonical for c in diffeo_classes(3)]
    for a, b in itertools.combinations(canonicals, 2):
        assert ring_isomorphic(a, b) is None


def test_experiment_n3():
    rep = rigidity_experiment(3)
    assert rep["violations"] == []
    assert rep["classes"] == 4
    assert rep["mode"] == "exhaustive"


def test_experiment_n5_sampled():
    rep = rigidity_experiment(5, inter_samples=4, seed=123)
    assert rep["violations"] == []
    assert rep["mode"] == "sampled"


def test_experiment_bound():
    with pytest.raises(BoundExceeded):
        rigidity_experiment(6)
