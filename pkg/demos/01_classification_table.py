"""Count diffeomorphism classes of real Bott manifolds, dimension by dimension.

Every strictly upper triangular binary matrix encodes a real Bott manifold;
two matrices give diffeomorphic manifolds exactly when a sequence of the
three moves (permutation conjugation, column addition, row addition between
equal columns) carries one to the other.  This script reproduces the
classification table up to dimension 5 (pass --full for dimension 6, which
takes a few seconds more).
"""
import sys

from bottclass import count_ghw_rbm_classes, diffeo_classes

max_dim = 6 if "--full" in sys.argv else 5

print(f"{'dim':>3} {'matrices':>9} {'classes':>8} {'oriented':>9} {'rank n-1':>9}")
for n in range(1, max_dim + 1):
    classes = diffeo_classes(n)
    oriented = sum(1 for c in classes if c.fingerprint.orientable)
    print(
        f"{n:>3} {1 << (n * (n - 1) // 2):>9} {len(classes):>8} "
        f"{oriented:>9} {count_ghw_rbm_classes(n):>9}"
    )

print()
print("The rank n-1 column follows the closed formula 2^((n-2)(n-3)/2) for n >= 3:")
for n in range(3, max_dim + 1):
    print(f"  n={n}: {count_ghw_rbm_classes(n)} == {1 << ((n - 2) * (n - 3) // 2)}")

print()
print("Orbit sizes in dimension 4 (classes sorted by canonical representative):")
for cls in diffeo_classes(4):
    fp = cls.fingerprint
    tags = [t for t, on in [("oriented", fp.orientable), ("spin-candidate", fp.w2_zero)] if on]
    print(f"  size {cls.size:>2}  rank {fp.holonomy_rank}  {' '.join(tags)}")
    for line in str(cls.canonical).splitlines():
        print(f"      {line}")
