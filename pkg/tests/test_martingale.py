import json
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from strategies import algebras, control_measures, partitions, rand_function, rand_mu, vector_measures
from vmeasure import (
    ConvergenceReport,
    ConvergenceRow,
    DomainError,
    ScalarMeasure,
    SimpleFunction,
    VectorMeasure,
    conditional_expectation,
    convergence_sweep,
    density_to_measure,
    distance,
    dyadic_chain,
    dyadic_partition,
    finest_partition,
    l1_norm,
    lebesgue,
    make_algebra,
    make_dyadic_algebra,
    martingale_function,
    partition_from_labels,
    pettis_sweep,
    scalar_semivariation,
    trivial_partition,
    variation,
)
from vmeasure.martingale import CSV_HEADER


class TestMartingaleFunction:
    def test_recovers_density(self):
        alg = make_algebra(range(4))
        mu = ScalarMeasure(alg, [1, 2, 3, F(1, 2)])
        f = SimpleFunction(alg, 2, "l1", ((1, 2), (0, 0), (-1, 5), (F(1, 3), 1)))
        assert martingale_function(density_to_measure(f, mu), mu, finest_partition(alg)) == f

    def test_trivial_partition_zero_total(self):
        alg = make_dyadic_algebra(1)
        m = VectorMeasure.from_vectors(alg, [(1,), (-1,)], "l1")
        assert martingale_function(m, lebesgue(alg), trivial_partition(alg)).values == ((0,), (0,))

    def test_null_block(self):
        alg = make_algebra(range(3))
        m = VectorMeasure.from_vectors(alg, [(4,), (1,), (2,)], "l1")
        mu = ScalarMeasure(alg, [0, 0, 1])
        f = martingale_function(m, mu, partition_from_labels(alg, [0, 0, 1]))
        assert f.values == ((0,), (0,), (2,))

    def test_needs_p_one(self):
        alg = make_algebra("ab")
        with pytest.raises(DomainError):
            martingale_function(VectorMeasure.zero(alg, 2, 1), lebesgue_like(alg), finest_partition(alg))


def lebesgue_like(alg):
    return ScalarMeasure(alg, [1] * alg.size)


class TestDistance:
    def test_trivial_cases(self):
        alg = make_algebra(range(3))
        m = VectorMeasure.from_vectors(alg, [(1, 2), (0, -1), (3, 3)], "l1")
        zero = VectorMeasure.zero(alg, 1, 2, "l1", "l1")
        assert distance(m, m) == 0
        assert distance(m, zero, "variation") == variation(m)
        m2 = VectorMeasure.from_vectors(alg, [(0, 2), (5, -1), (3, 1)], "l1")
        for which in ("variation", "scalar", "operator"):
            a, b = distance(m, m2, which), distance(m2, m, which)
            assert a == b

    def test_shape_mismatch(self):
        alg = make_algebra("ab")
        with pytest.raises(DomainError):
            distance(VectorMeasure.zero(alg, 1, 2), VectorMeasure.zero(alg, 1, 3))
        with pytest.raises(DomainError):
            distance(VectorMeasure.zero(alg, 1, 2), VectorMeasure.zero(alg, 1, 2), "pettis")


class TestConvergenceSweep:
    def test_density_final_row_zero(self):
        rng = random.Random(1)
        alg = make_dyadic_algebra(4)
        mu = lebesgue(alg)
        m = density_to_measure(rand_function(rng, alg, 2, "l2"), mu)
        report = convergence_sweep(m, mu)
        last = report.rows[-1]
        assert [r.level for r in report.rows] == list(range(5))
        assert last.variation_dist == 0 and last.scalar_semivar_dist.value == 0
        assert last.opsemivar_dist.value == 0 and last.pettis_dist.value == 0
        l1 = report.column("f_pi_l1")
        assert all(a <= b for a, b in zip(l1, l1[1:]))

    def test_singular_measure_does_not_converge(self):
        alg = make_dyadic_algebra(3)
        mu = ScalarMeasure(alg, [0] + [F(1, 7)] * 7)
        m = VectorMeasure.from_vectors(alg, [(2, 1)] + [(0, 0)] * 7, "l1")
        col = convergence_sweep(m, mu).column("variation_dist")
        # m_pi vanishes on the null atom, so the distance never drops below |m|
        assert all(d >= variation(m) > 0 for d in col)
        assert col[-1] == variation(m)

    def test_singular_cancelling_mass_gives_constant_column(self):
        # mass on two null atoms cancelling inside every coarser block: m_pi = 0 at all levels
        alg = make_dyadic_algebra(3)
        mu = ScalarMeasure(alg, [0, 0] + [F(1, 6)] * 6)
        m = VectorMeasure.from_vectors(alg, [(2, 1), (-2, -1)] + [(0, 0)] * 6, "l1")
        for pi in dyadic_chain(alg):
            assert conditional_expectation(m, mu, pi).is_zero()
        assert convergence_sweep(m, mu).column("variation_dist") == [variation(m)] * 4 == [6] * 4

    def test_csv_header_and_shape(self):
        alg = make_dyadic_algebra(2)
        m = VectorMeasure.from_vectors(alg, [(1, 0), (0, 1), (-1, 0), (0, -1)])
        text = convergence_sweep(m, lebesgue(alg)).to_csv()
        lines = text.splitlines()
        assert lines[0] == ",".join(CSV_HEADER)
        assert lines[0] == "level,variation_dist,scalar_semivar_dist,opsemivar_lb,opsemivar_ub,pettis_lb,pettis_ub,f_pi_l1"
        assert len(lines) == 4
        assert lines[-1].split(",")[1:7] == ["0"] * 6

    def test_json_report(self):
        alg = make_dyadic_algebra(1)
        m = VectorMeasure.from_vectors(alg, [(1,), (3,)], "l1")
        data = json.loads(convergence_sweep(m, lebesgue(alg), measure_id="demo").to_json())
        assert data["metadata"]["measure"] == "demo"
        assert data["rows"][0]["variation_dist"] == "2"
        assert data["rows"][0]["opsemivar_dist"]["method"] == "enumeration"

    def test_norm_selection(self):
        alg = make_dyadic_algebra(2)
        m = VectorMeasure.from_vectors(alg, [(1,), (2,), (3,), (4,)], "l1")
        report = convergence_sweep(m, lebesgue(alg), norms=["variation"])
        assert all(r.scalar_semivar_dist is None and r.pettis_dist is None for r in report.rows)
        with pytest.raises(DomainError):
            convergence_sweep(m, lebesgue(alg), norms=["sup"])

    def test_operator_valued_measure(self):
        rng = random.Random(4)
        alg = make_dyadic_algebra(2)
        mu = lebesgue(alg)
        vals = tuple(tuple(tuple(F(rng.randint(-3, 3)) for _ in range(2)) for _ in range(2)) for _ in range(4))
        m = VectorMeasure(alg, 2, 2, "linf", "l1", vals)
        report = convergence_sweep(m, mu)
        last = report.rows[-1]
        assert last.variation_dist == 0 and last.opsemivar_dist.value == 0
        assert last.pettis_dist is None and last.f_pi_l1 is None

    def test_unordered_chain_rejected(self):
        alg = make_dyadic_algebra(2)
        m = VectorMeasure.zero(alg, 1, 1)
        chain = [dyadic_partition(alg, 2), dyadic_partition(alg, 1)]
        with pytest.raises(DomainError):
            convergence_sweep(m, lebesgue(alg), chain)

    def test_levels_strictly_increasing(self):
        with pytest.raises(DomainError):
            ConvergenceReport([ConvergenceRow(1), ConvergenceRow(1)])

    def test_plain_chain(self):
        alg = make_algebra("abc")
        mu = ScalarMeasure(alg, [1, 1, 2])
        m = VectorMeasure.from_vectors(alg, [(1,), (-1,), (2,)], "l1")
        rows = convergence_sweep(m, mu, [trivial_partition(alg), finest_partition(alg)]).rows
        assert rows[0].variation_dist == 3 and rows[1].variation_dist == 0


class TestPettisSweep:
    def test_example(self):
        alg = make_dyadic_algebra(2)
        f = SimpleFunction(alg, 1, "l1", ((1,), (0,), (0,), (0,)))
        report = pettis_sweep(f, lebesgue(alg))
        assert [r.pettis_dist.value for r in report.rows] == [F(3, 8), F(1, 4), 0]
        # independent check by full sign enumeration at each level
        for k, row in enumerate(report.rows):
            fk = martingale_function(density_to_measure(f, lebesgue(alg)), lebesgue(alg), dyadic_partition(alg, k))
            g = [(F(1, 4) * (a[0] - b[0]),) for a, b in zip(fk.values, f.values)]
            assert row.pettis_dist.value == oracles.brute_sign_semivariation(g, "l1")

    def test_constant_is_all_zero(self):
        alg = make_dyadic_algebra(3)
        report = pettis_sweep(SimpleFunction.constant(alg, (2, -1)), lebesgue(alg))
        assert all(r.pettis_dist.value == 0 for r in report.rows)

    def test_single_finest_row(self):
        alg = make_dyadic_algebra(2)
        f = SimpleFunction(alg, 2, "l2", ((1, 2), (3, 4), (5, 6), (7, 8)))
        report = pettis_sweep(f, lebesgue(alg), [finest_partition(alg)], [2])
        assert len(report.rows) == 1 and report.rows[0].pettis_dist.value == 0

    def test_unordered_chain(self):
        alg = make_dyadic_algebra(2)
        with pytest.raises(DomainError):
            pettis_sweep(SimpleFunction.constant(alg, 1), lebesgue(alg), dyadic_chain(alg, [1, 0]))


# -- properties ---------------------------------------------------------------

@given(st.data())
def test_martingale_identities(data):
    alg = data.draw(algebras(max_atoms=10))
    m = data.draw(vector_measures(alg, p=1))
    mu = data.draw(control_measures(alg))
    pi = data.draw(partitions(alg))
    f_pi = martingale_function(m, mu, pi)
    m_pi = conditional_expectation(m, mu, pi)
    assert density_to_measure(f_pi, mu) == m_pi
    assert variation(m_pi) == l1_norm(f_pi, mu)


@given(st.integers(0, 10**6), st.integers(1, 4))
@settings(max_examples=30, deadline=None)
def test_l1_monotone_and_bounded(seed, level):
    rng = random.Random(seed)
    alg = make_dyadic_algebra(level)
    mu = rand_mu(rng, alg)
    f = rand_function(rng, alg, rng.randint(1, 3), rng.choice(["l1", "l2", "linf"]))
    m = density_to_measure(f, mu)
    l1 = [l1_norm(martingale_function(m, mu, pi), mu) for pi in dyadic_chain(alg)]
    tol = 1e-9
    assert all(float(a) <= float(b) + tol for a, b in zip(l1, l1[1:]))
    assert float(l1[-1]) <= float(l1_norm(f, mu)) + tol


@given(st.data())
@settings(max_examples=40, deadline=None)
def test_terminal_convergence(data):
    level = data.draw(st.integers(0, 3))
    alg = make_dyadic_algebra(level)
    m = data.draw(vector_measures(alg, p=1, max_dim=2))
    mu = data.draw(control_measures(alg, positive=True))
    last = convergence_sweep(m, mu).rows[-1]
    assert last.variation_dist == 0
    assert last.scalar_semivar_dist.value == 0 and last.pettis_dist.value == 0


@given(st.data())
def test_mean_preservation(data):
    alg = data.draw(algebras(max_atoms=8))
    m = data.draw(vector_measures(alg, p=1))
    mu = data.draw(control_measures(alg, positive=True))
    pi = data.draw(partitions(alg))
    from vmeasure import evaluate, integrate
    one = SimpleFunction.constant(alg, 1)
    assert integrate(conditional_expectation(m, mu, pi), one) == tuple(r[0] for r in evaluate(m, alg.omega()))


def test_scalar_semivariation_column_matches_kernel():
    alg = make_dyadic_algebra(2)
    mu = lebesgue(alg)
    m = VectorMeasure.from_vectors(alg, [(1, 0), (0, 1), (-1, 0), (0, -1)])
    rows = convergence_sweep(m, mu).rows
    for k, row in enumerate(rows):
        m_pi = conditional_expectation(m, mu, dyadic_partition(alg, k))
        assert row.scalar_semivar_dist == scalar_semivariation(m_pi - m)
