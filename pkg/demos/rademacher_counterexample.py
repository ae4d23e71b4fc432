"""
A measure whose averages never catch up
=======================================

Integration against Lebesgue measure, viewed as a measure with values in the
dual of the step functions.  Its range is not totally bounded: the odd
dyadic unions A_n sit at mutual distance 1/2, and no dyadic averaging level
brings the averaged measure within 1/2 of the original.
"""
from fractions import Fraction

from vmeasure import (
    dyadic_partition,
    example7_gap,
    example7_measure,
    lebesgue,
    nonconvergence_witness,
    odd_dyadic_union,
    rademacher,
    range_diameter,
)

N = 6
m = example7_measure(N)
alg = m.alg

for n in range(1, 4):
    print(f"r_{n}:", "".join("+" if v[0] > 0 else "-" for v in rademacher(n, alg).values))
    print(f"A_{n}:", sorted(odd_dyadic_union(n, alg)))

# pairwise gaps between the sets A_n, with the Rademacher witness
print()
print(" n  k  gap  witness")
for n in range(2, N + 1):
    for k in range(1, n):
        gap, witness = example7_gap(n, k, N, m)
        print(f"{n:2d} {k:2d}  {gap}  {witness}")

# averaging over level-n blocks erases r_{n+1} completely
print()
for n in range(1, N):
    print(f"level {n}: (m - m_pi)(A_{n + 1}) applied to r_{n + 1} =", nonconvergence_witness(N, n, m))

# a finer look at one level: the averaged value of A_3 is flat
m_pi = m.conditional_expectation(lebesgue(alg), dyadic_partition(alg, 2))
A3 = odd_dyadic_union(3, alg)
print("averaged functional on A_3 applied to r_3:", m_pi.evaluate(A3)(rademacher(3, alg)))
print("norm of m(A_3):", m.evaluate(A3).norm(), "=", Fraction(len(A3), alg.size))

print("range diameter at level 4:", range_diameter(example7_measure(4)))
