"""
Pettis distance against the Bochner norm
========================================

For a density f, the martingale f_pi tends to f.  The Pettis distance tests
f_pi - f one functional at a time and can be much smaller than the Bochner
(L1) distance; both reach zero at the atoms.
"""
from vmeasure import (
    SimpleFunction,
    density_to_measure,
    dyadic_chain,
    l1_norm,
    lebesgue,
    make_dyadic_algebra,
    martingale_function,
    pettis_sweep,
)

alg = make_dyadic_algebra(4)
lam = lebesgue(alg)

# unit vectors rotating through the four coordinate directions of R^4 (l1 norm)
basis = [tuple(1 if j == i % 4 else 0 for j in range(4)) for i in range(alg.size)]
f = SimpleFunction(alg, 4, "l1", basis)

report = pettis_sweep(f, lam, measure_id="rotating basis")
m = density_to_measure(f, lam)
print("level  pettis  bochner  ||f_pi||_1")
for row, pi in zip(report.rows, dyadic_chain(alg)):
    bochner = l1_norm(martingale_function(m, lam, pi) - f, lam)
    print(f"{row.level:5d}  {str(row.pettis_dist.value):6s}  {str(bochner):7s}  {row.f_pi_l1}")

# the scalar example from the docs: a spike on the first quarter
g = SimpleFunction(make_dyadic_algebra(2), 1, "l1", [(1,), (0,), (0,), (0,)])
print()
print("spike:", [str(r.pettis_dist.value) for r in pettis_sweep(g, lebesgue(g.alg)).rows])
