"""Interval exchange maps, orbits, and the distinct-orbit check.

Two quadratic rotations serve as running examples everywhere: the
sqrt(2) exchange with lengths (sqrt(2)-1, 2-sqrt(2)) and the golden
rotation with lengths ((sqrt(5)-1)/2, (3-sqrt(5))/2).
"""

from fractions import Fraction

from ietlab import idoc_check, iet_new, orbit, permutation, quad, quad_approx, radical

r2 = radical(2)
T = iet_new(permutation(2, 1), [r2 - 1, 2 - r2])

print("separation points:", [str(b) for b in T.beta])
print("translations:     ", [str(t) for t in T.tau])

print("\nOrbit of 0 (exact, with 12-digit decimals):")
for k, x in enumerate(orbit(T, quad(0), 1, 6), start=1):
    print(f"  T^{k}(0) = {x}  ~ {quad_approx(x, 12)}")

print("\nDistinct-orbit check to depth 200:")
result = idoc_check(T, 200)
print(" ", result.status)

print("\nA rational rotation fails, with an explicit witness:")
R = iet_new(permutation(2, 1), [quad(Fraction(1, 3)), quad(Fraction(2, 3))])
failed = idoc_check(R, 10)
print("  verified:", failed.verified)
print("  reason:  ", failed.reason)
print("  witness: ", failed.witness, "(orbit indices (i, k) with equal points)")
