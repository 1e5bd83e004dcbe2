"""The groups behind the manifolds: generators, lattices, torsion.

A real Bott manifold is R^n divided by a Bieberbach group Gamma(A) whose
generators combine a diagonal +-1 linear part with a half-integer
translation.  This script builds a few of these groups, inspects their
translation lattices and holonomy, and checks the conjugation that
identifies the classical tower groups Gamma_n with Gamma(A) for the
superdiagonal matrix.
"""
from bottclass import (
    BottMatrix,
    catalog,
    format_iso,
    generators_of,
    holonomy_rep,
    is_torsion_free,
    gamma_n_generators,
    verify_tower_conjugation,
)
from bottclass.bieberbach import squares_lattice_rank, superdiagonal_matrix

print("Klein bottle group, presented as Gamma_2:")
klein = gamma_n_generators(2)
for g in klein.generators:
    print(f"  {format_iso(g)}")
print(f"  translation lattice (doubled basis): {klein.lattice.basis2}")
print(f"  holonomy images: {holonomy_rep(klein)}")
print(f"  torsion free: {is_torsion_free(klein)}")

print()
print("Gamma(A4), the group of the Spin^C-less 5-manifold:")
pres = generators_of(catalog.DIM5_ORIENTED["A4"])
for g in pres.generators:
    print(f"  {format_iso(g)}")
print(f"  point group order: {1 << pres.point_rank}")
print(f"  generator squares span a rank-{squares_lattice_rank(pres)} lattice")
print(f"  torsion free: {is_torsion_free(pres)}")

print()
print("The torus group is the degenerate case (trivial holonomy):")
torus = generators_of(BottMatrix(3, (0, 0, 0)))
print(f"  holonomy images: {holonomy_rep(torus)}")

print()
print("Conjugating Gamma_n by the coordinate reversal gives Gamma(A) with A")
print("superdiagonal; membership of every conjugated generator verifies it:")
for n in range(2, 9):
    print(f"  n={n}: {verify_tower_conjugation(n)}")
print()
print(f"(superdiagonal matrix for n=4:)")
print(superdiagonal_matrix(4))
