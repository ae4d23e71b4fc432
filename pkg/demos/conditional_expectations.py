"""
Conditional expectations along the dyadic ladder
=================================================

Average an R^2-valued measure over coarser and coarser dyadic blocks, look at
the martingale densities, and watch the distances to the original measure
shrink to zero once the partition reaches the atoms.
"""
from fractions import Fraction

from vmeasure import (
    ScalarMeasure,
    SimpleFunction,
    VectorMeasure,
    conditional_expectation,
    convergence_sweep,
    density_to_measure,
    dyadic_partition,
    lebesgue,
    make_dyadic_algebra,
    martingale_function,
)

# a level-3 space: eight atoms, Lebesgue weights 1/8
alg = make_dyadic_algebra(3)
lam = lebesgue(alg)

# a density with a jump in the middle and a wiggle on the right
f = SimpleFunction(alg, 2, "l2", [(1, 0), (1, 0), (1, 1), (1, 1), (0, 2), (0, -2), (3, 0), (-3, 0)])
m = density_to_measure(f, lam)
print("atom values of m:", [tuple(str(x) for x in v) for v in m.vectors()])

# block averages at each level; 0/0 = 0 never triggers here since lambda > 0
for k in range(4):
    m_k = conditional_expectation(m, lam, dyadic_partition(alg, k))
    f_k = martingale_function(m, lam, dyadic_partition(alg, k))
    print(f"level {k}: f_pi =", [tuple(str(x) for x in v) for v in f_k.values])

# averaging twice over nested partitions is averaging once over the coarse one
coarse, fine = dyadic_partition(alg, 1), dyadic_partition(alg, 2)
twice = conditional_expectation(conditional_expectation(m, lam, fine), lam, coarse)
print("tower property holds:", twice == conditional_expectation(m, lam, coarse))

# the full sweep: variation, semivariation and Pettis distances per level
print()
print(convergence_sweep(m, lam, measure_id="jump density").to_csv())

# a singular measure: opposite masses on two null atoms, so every average is 0
mu = ScalarMeasure(alg, [0, 0] + [Fraction(1, 6)] * 6)
singular = VectorMeasure.from_vectors(alg, [(1, 0), (-1, 0)] + [(0, 0)] * 6, "l2")
report = convergence_sweep(singular, mu, norms=["variation"])
print("singular measure, variation distance per level:", [str(d) for d in report.column("variation_dist")])
