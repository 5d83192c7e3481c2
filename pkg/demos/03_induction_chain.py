"""First-return induction, shrinking windows, and invariant measures.

A chain of induced maps around a point yields unimodular transition
matrices; their products pinch the measure cone onto the Lebesgue
direction, and entrywise-positive blocks certify unique ergodicity.
"""

from fractions import Fraction

from ietlab import (
    basic_interval,
    cone_approx,
    det,
    empirical_measure,
    iet_new,
    induce,
    permutation,
    quad,
    radical,
    shrink_sequence,
    unique_ergodicity_certificate,
)

r5 = radical(5)
T = iet_new(permutation(2, 1), [(r5 - 1) / 2, (3 - r5) / 2])

step = induce(T, basic_interval(T, 1))
print("first-return map on [beta(1), 1):")
print("  A =", step.A, " det =", det(step.A))
print("  return times =", step.return_times)
print("  alpha = A alpha':",
      all(T.alpha[i] == sum((step.induced.alpha[j] * step.A[i][j]
                             for j in range(T.n)), quad(0))
          for i in range(T.n)))

print("\nshrinking chain around y0 = 1/10:")
chain = shrink_sequence(T, quad(Fraction(1, 10)), 8)
for k, s in enumerate(chain):
    width = s.induced.total
    print(f"  stage {k}: A={s.A}  window width ~ {float(width):.6f}")

print("\ncone of invariant measures after 15 stages:")
cone = cone_approx(shrink_sequence(T, quad(0), 15))
print("  clusters:", cone.clusters, "-> nu =", cone.nu_estimate)
print("  ray:", [str(v) for v in cone.rays[0]],
      "~", [float(v) for v in cone.rays[0]])

certificate = unique_ergodicity_certificate(shrink_sequence(T, quad(0), 10), 2)
print("\nunique ergodicity certificate:", certificate.certified,
      "blocks:", certificate.block_ranges)

vector = empirical_measure(T, quad(0), 0, 10**4)
print("empirical frequencies over 10^4 steps:",
      [f"{float(v):.6f}" for v in vector.normalized],
      "(limit (sqrt(5)-1)/2 ~ 0.618034)")
