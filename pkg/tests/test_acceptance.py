"""Exit criteria, one test per criterion, each at its stated tolerance and time limit.

Run under pytest (one PASS/FAIL line per criterion is printed) or directly:
``python3 tests/test_acceptance.py``.
"""
from __future__ import annotations

import contextlib
import csv
import io
import json
import os
import random
import sys
import time
from fractions import Fraction as F

import pytest

sys.path.insert(0, os.path.dirname(__file__))

import oracles  # noqa: E402
from strategies import (  # noqa: E402
    KINDS,
    rand_function,
    rand_measure,
    rand_mu,
    rand_partition,
    rand_rational,
    rand_refinement_pair,
)
from vmeasure import (  # noqa: E402
    VectorMeasure,
    conditional_expectation,
    convergence_sweep,
    density_to_measure,
    dual_norm,
    emit_spec,
    evaluate,
    example7_gap,
    example7_measure,
    functional_slice,
    l1_norm,
    make_algebra,
    make_dyadic_algebra,
    martingale_function,
    nonconvergence_witness,
    operator_semivariation,
    opnorm,
    parse_spec,
    scalar_semivariation,
    variation,
)
from vmeasure.cli import main as cli_main  # noqa: E402
from vmeasure.norms import L2_TOL  # noqa: E402

HALF = F(1, 2)


def _le(a, b, tol=L2_TOL):
    """``a <= b``: exact for rationals, relative ``tol`` once a float is involved."""
    if isinstance(a, F) and isinstance(b, F):
        return a <= b
    return float(a) <= float(b) + tol * max(1.0, abs(float(b)))


def _eq(a, b, tol=L2_TOL):
    if isinstance(a, F) and isinstance(b, F):
        return a == b
    return abs(float(a) - float(b)) <= tol * max(1.0, abs(float(b)))


# -- criteria -------------------------------------------------------------------

def criterion_1():
    N = 10
    m = example7_measure(N)
    bad = [(n, k) for n in range(2, N + 1) for k in range(1, n) if example7_gap(n, k, N, m) != (HALF, HALF)]
    return not bad, f"45 pairs at N=10, gap = witness = 1/2; failures {bad[:3]}"


def criterion_2():
    N = 10
    m = example7_measure(N)
    vals = [nonconvergence_witness(N, n, m) for n in range(1, N)]
    return all(v == HALF for v in vals), f"n=1..9 witnesses {sorted(set(map(str, vals)))}"


def criterion_3():
    rng = random.Random(3)
    alg = make_dyadic_algebra(8)
    failures = []
    for i in range(100):
        q, kind = rng.randint(1, 4), rng.choice(KINDS)
        mu = rand_mu(rng, alg)
        m = density_to_measure(rand_function(rng, alg, q, kind), mu)
        report = convergence_sweep(m, mu)
        last = report.rows[-1]
        zero = (last.variation_dist == 0 and last.scalar_semivar_dist.exact == 0
                and last.pettis_dist.exact == 0)
        l1 = report.column("f_pi_l1")
        mono = all(_le(a, b) for a, b in zip(l1, l1[1:]))
        if not (zero and mono):
            failures.append(i)
    return not failures, f"100 sweeps of 9 levels (256 atoms); failing instances {failures[:5]}"


def criterion_4():
    rng = random.Random(4)
    bad = 0
    for _ in range(200):
        alg = make_algebra(range(rng.randint(1, 12)))
        m = rand_measure(rng, alg, 1, rng.randint(1, 4))
        mu = rand_mu(rng, alg)
        pi = rand_partition(rng, alg)
        f_pi = martingale_function(m, mu, pi)
        m_pi = conditional_expectation(m, mu, pi)
        if density_to_measure(f_pi, mu) != m_pi or variation(m_pi) != l1_norm(f_pi, mu):
            bad += 1
    return bad == 0, f"200 instances, {bad} mismatches"


def criterion_5():
    rng = random.Random(5)
    bad = 0
    for i in range(100):
        alg = make_algebra(range(rng.randint(1, 12)))
        if i % 2 == 0:
            m = rand_measure(rng, alg, 1, rng.randint(1, 4))
            ok = operator_semivariation(m) == scalar_semivariation(m) and scalar_semivariation(m).is_exact
        else:
            m = rand_measure(rng, alg, rng.randint(1, 4), 1)
            cert = operator_semivariation(m)
            ok = cert.is_exact and cert.exact == variation(m)
        bad += not ok
    return bad == 0, f"50 instances with p=1 and 50 with q=1, {bad} mismatches"


def criterion_6():
    rng = random.Random(6)
    violations, scalar_cases, scalar_equal = 0, 0, 0
    for i in range(100):
        alg = make_algebra(range(rng.randint(1, 6)))
        p, q = (1, 1) if i % 4 == 0 else (rng.randint(1, 3), rng.randint(1, 3))
        m = rand_measure(rng, alg, p, q)
        upper = operator_semivariation(m).upper
        samples = [[rand_rational(rng) for _ in range(q)] for _ in range(8)]
        hit = False
        for y in samples:
            lhs = variation(functional_slice(m, y))
            rhs = dual_norm(y, m.norm_y) * upper
            violations += not _le(lhs, rhs)
            hit = hit or abs(float(lhs) - float(rhs)) <= 1e-6
        if p == q == 1:
            scalar_cases += 1
            scalar_equal += hit
    ok = violations == 0 and scalar_equal == scalar_cases
    return ok, (f"800 (m, y*) pairs, {violations} bound violations; equality reached in "
                f"{scalar_equal}/{scalar_cases} p=q=1 instances")


def criterion_7():
    rng = random.Random(7)
    worst, order_bad = 0.0, 0
    for _ in range(50):
        M = rng.randint(1, 8)
        vecs = [(rand_rational(rng), rand_rational(rng)) for _ in range(M)]
        m = VectorMeasure.from_vectors(make_algebra(range(M)), vecs, "l2")
        exact = scalar_semivariation(m)
        worst = max(worst, abs(float(exact.exact) - oracles.circle_semivariation(vecs, 100_000)))
        heuristic = scalar_semivariation(m, enum_cap=1)
        order_bad += not (_le(heuristic.lower, exact.exact) and _le(exact.exact, heuristic.upper)
                          and _eq(heuristic.upper, variation(m)))
    return worst <= 1e-6 and order_bad == 0, (
        f"50 planar l2 instances, max |enumeration - circle| = {worst:.2e}; "
        f"bracket violations {order_bad}")


def criterion_8():
    rng = random.Random(8)
    bad = {"idempotence": 0, "tower": 0, "mass": 0, "contraction": 0}
    for _ in range(500):
        alg = make_algebra(range(rng.randint(1, 16)))
        m = rand_measure(rng, alg, rng.randint(1, 2), rng.randint(1, 3))
        fine, coarse = rand_refinement_pair(rng, alg)
        # null atoms only where the finer blocks keep positive mass
        mu = rand_mu(rng, alg, positive=True)
        keep = {min(B) for B in fine.blocks}
        mu = type(mu)(alg, [w if i in keep or rng.random() < 0.7 else 0 for i, w in enumerate(mu.weights)])
        m_c = conditional_expectation(m, mu, coarse)
        bad["idempotence"] += conditional_expectation(m_c, mu, coarse) != m_c
        bad["tower"] += conditional_expectation(conditional_expectation(m, mu, fine), mu, coarse) != m_c
        bad["mass"] += evaluate(m_c, alg.omega()) != evaluate(m, alg.omega())
        block_sum = variation(conditional_expectation(m, mu, coarse))
        direct = sum((variation_of_value(m, B) for B in coarse.blocks), F(0))
        bad["contraction"] += not (_eq(block_sum, direct) and _le(block_sum, variation(m)))
    return not any(bad.values()), f"500 instances, failures {bad}"


def variation_of_value(m, B):
    return opnorm(evaluate(m, B), m.norm_x, m.norm_y)


def criterion_9():
    rng = random.Random(9)
    bad = 0
    for _ in range(50):
        alg = make_algebra(range(rng.randint(1, 12)))
        dim = rng.randint(1, 4)
        f = rand_function(rng, alg, dim, rng.choice(KINDS))
        mu = rand_mu(rng, alg)
        pi = rand_partition(rng, alg)
        x = [rand_rational(rng) for _ in range(dim)]
        m = density_to_measure(f, mu)
        f_pi = martingale_function(m, mu, pi)
        lhs = sum((w * abs(sum(a * (u - v) for a, u, v in zip(x, fp, fv)))
                   for w, fp, fv in zip(mu.weights, f_pi.values, f.values)), F(0))
        rhs = variation(functional_slice(conditional_expectation(m, mu, pi) - m, x))
        bad += lhs != rhs
    return bad == 0, f"50 instances, {bad} mismatches"


def _random_spec(rng):
    rat = lambda: str(rand_rational(rng, 20, 9))  # noqa: E731
    if rng.random() < 0.5:
        level = rng.randint(0, 3)
        space, M = {"dyadic_level": level}, 2 ** level
    else:
        M = rng.randint(1, 6)
        space = {"atoms": [f"a{i}" for i in range(M)]}
    p, q = rng.randint(1, 3), rng.randint(1, 3)
    if p == 1 and rng.random() < 0.5:
        measure = {"density": [[rat() for _ in range(q)] for _ in range(M)]}
    else:
        measure = {"atom_values": [[[rat() for _ in range(p)] for _ in range(q)] for _ in range(M)]}
    return {"space": space, "dims": {"p": p, "q": q}, "norm_x": rng.choice(KINDS), "norm_y": rng.choice(KINDS),
            "mu": [str(F(rng.randint(0, 9), rng.randint(1, 9))) for _ in range(M)], "measure": measure}


def criterion_10():
    rng = random.Random(10)
    unstable = 0
    for _ in range(50):
        text = emit_spec(parse_spec(json.dumps(_random_spec(rng))))
        unstable += emit_spec(parse_spec(text)) != text or parse_spec(text) != parse_spec(text.encode())
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli_main(["example7", "--levelN", "10"])
    rows = list(csv.DictReader(io.StringIO(buf.getvalue())))
    m = example7_measure(10)
    table = {(int(r["n"]), int(r["k"])): (F(r["gap"]), F(r["witness"])) for r in rows}
    expected = {(n, k): example7_gap(n, k, 10, m) for n in range(2, 11) for k in range(1, n)}
    ok = code == 0 and unstable == 0 and table == expected and len(rows) == 45
    return ok, f"50 specs, {unstable} unstable round-trips; example7 N=10 table {len(rows)} rows, matches={table == expected}"


CRITERIA = [
    (1, "Rademacher gap", criterion_1, 5.0),
    (2, "non-convergence witness", criterion_2, 5.0),
    (3, "convergence with density", criterion_3, 60.0),
    (4, "martingale identities", criterion_4, None),
    (5, "degenerate norm identities", criterion_5, None),
    (6, "slice bound", criterion_6, None),
    (7, "sign enumeration vs dual sphere", criterion_7, None),
    (8, "algebraic invariants", criterion_8, None),
    (9, "Pettis slice identity", criterion_9, None),
    (10, "CLI contract", criterion_10, None),
]


def evaluate_criterion(number, title, fn, limit):
    start = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - start
    timely = limit is None or elapsed < limit
    budget = f"{elapsed:.2f}s" + (f" (limit {limit:.0f}s)" if limit else "")
    verdict = "PASS" if ok and timely else "FAIL"
    return ok and timely, f"[{verdict}] criterion {number:>2} {title}: {detail}; {budget}"


@pytest.mark.acceptance
@pytest.mark.parametrize("number, title, fn, limit", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, fn, limit, capsys):
    ok, line = evaluate_criterion(number, title, fn, limit)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate_criterion(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
