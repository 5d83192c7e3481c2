"""Towers, Bratteli diagrams, dimension groups, and suspension data.

The first-return towers present the system as a nested sequence of
finite-dimensional algebras; the induction chain and the strip chain
give two presentations of the same ordered group, and their positivity
verdicts agree.
"""

from ietlab import (
    GroupElement,
    basic_interval,
    bratteli,
    dimension_group,
    export_bratteli,
    iet_new,
    l_sigma,
    permutation,
    positivity,
    quad,
    radical,
    shrink_sequence,
    singularity_profile,
    strip_class_matrix,
    strip_coordinates,
    strip_decomposition,
    towers,
)

r2 = radical(2)
T = iet_new(permutation(2, 1), [r2 - 1, 2 - r2])

partition = towers(T, basic_interval(T, 1))
print("tower heights over [beta(1), 1):", partition.algebra_dims)

chain = shrink_sequence(T, quad(0), 6)
diagram = bratteli(chain)
print("\nBratteli diagram (first lines of the DOT export):")
for line in export_bratteli(diagram).splitlines()[:6]:
    print(" ", line)

G = dimension_group(chain=chain)
strips = strip_decomposition(T, 6)
H = dimension_group(strips=strips)
W = strip_class_matrix(T, strips[0])
print("\ntwo presentations of the ordered group:")
print("  induction matrices:", G.matrices[:2], "...")
print("  strip matrices:    ", H.matrices[:2], "...")
print("  change of basis W =", W)

for v in ((1, 1), (2, -1), (-1, -1), (3, -2)):
    verdict_i = positivity(G, GroupElement(0, v), G.depth)
    verdict_s = positivity(H, GroupElement(0, strip_coordinates(W, v)), H.depth)
    print(f"  v={v}: induction says {verdict_i}, strips say {verdict_s}")

print("\nsuspension singularity data:")
for images in ((2, 1), (3, 1, 4, 2)):
    profile = singularity_profile(permutation(*images))
    print(f"  sigma={images}: genus {profile.genus}, "
          f"multiplicities {[s.multiplicity for s in profile.singularities]}, "
          f"prongs {[s.prongs for s in profile.singularities]}")

print("\npairing matrix for sigma=(2 1):", l_sigma(permutation(2, 1)).matrix)
