"""Rademacher/dyadic counterexample and range diagnostics.

The continuous-function space on [0, 1) is replaced by level-``N`` dyadic
step functions with the sup norm; a functional ``f -> sum_b c_b f(b)`` then
has norm ``sum_b |c_b|``.  Rademacher functions and indicators of dyadic
unions all live in this space, so every inequality of the construction can
be checked exactly.

Conventions: atoms are 0-based; ``r_n`` is ``+1`` on the odd-numbered
(counting from 1, i.e. left-first) level-``n`` intervals and ``-1`` on the
others, so its positivity set is ``A_n``.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import Mapping

import numpy as np

from ._numbers import scale_to_int
from .exceptions import DomainError, ResourceError
from .measure import (
    NormTag,
    ScalarMeasure,
    SimpleFunction,
    VectorMeasure,
    lebesgue,
    scalar_tag,
)
from .norms import _exact_int_norm, _float_norms, _int_scores, opnorm
from .space import (
    FiniteAlgebra,
    MeasurableSet,
    Partition,
    check_same_algebra,
    dyadic_partition,
    make_dyadic_algebra,
)

__all__ = [
    "EXAMPLE7_MAX_LEVEL",
    "EXHAUSTIVE_MAX_ATOMS",
    "StepFunctional",
    "FunctionalMeasure",
    "rademacher",
    "odd_dyadic_union",
    "example7_measure",
    "example7_gap",
    "nonconvergence_witness",
    "range_diameter",
]

EXAMPLE7_MAX_LEVEL = 20
EXHAUSTIVE_MAX_ATOMS = 20


def _dyadic(alg_or_level) -> FiniteAlgebra:
    if isinstance(alg_or_level, FiniteAlgebra):
        if not alg_or_level.is_dyadic:
            raise DomainError("a dyadic algebra is required")
        return alg_or_level
    return make_dyadic_algebra(alg_or_level)


def rademacher(n: int, N) -> SimpleFunction:
    """``r_n`` as a scalar step function on the level-``N`` algebra.

    ``N`` may be a level or an already built dyadic algebra.
    """
    alg = _dyadic(N)
    level = alg.dyadic_level
    if not 1 <= n <= level:
        raise DomainError(f"Rademacher index {n} outside [1, {level}]")
    shift = level - n
    one, minus = (Fraction(1),), (Fraction(-1),)
    values = tuple(one if (i >> shift) % 2 == 0 else minus for i in range(alg.size))
    return SimpleFunction(alg, 1, scalar_tag(), values)


def odd_dyadic_union(n: int, alg) -> MeasurableSet:
    """``A_n``: union of the odd-numbered level-``n`` dyadic intervals."""
    alg = _dyadic(alg)
    level = alg.dyadic_level
    if not 1 <= n <= level:
        raise DomainError(f"index {n} outside [1, {level}]")
    shift = level - n
    return MeasurableSet(alg, frozenset(i for i in range(alg.size) if (i >> shift) % 2 == 0))


class StepFunctional:
    """Linear functional ``f -> sum_b c_b f(b)`` on sup-normed step functions.

    Coefficients are stored sparsely (atom index -> nonzero rational).
    """

    __slots__ = ("alg", "coefficients")

    def __init__(self, alg: FiniteAlgebra, coefficients: Mapping[int, Fraction]):
        self.alg = alg
        self.coefficients = {int(i): Fraction(c) for i, c in coefficients.items() if c}

    def norm(self) -> Fraction:
        return sum((abs(c) for c in self.coefficients.values()), Fraction(0))

    def __call__(self, f) -> Fraction:
        if isinstance(f, SimpleFunction):
            check_same_algebra(self.alg, f.alg)
            if f.dim != 1:
                raise DomainError("step functionals act on scalar step functions")
            vals = [v[0] for v in f.values]
        else:
            vals = [Fraction(x) for x in f]
        return sum((c * vals[i] for i, c in self.coefficients.items()), Fraction(0))

    def _combine(self, other: "StepFunctional", sign: int) -> "StepFunctional":
        check_same_algebra(self.alg, other.alg)
        out = dict(self.coefficients)
        for i, c in other.coefficients.items():
            out[i] = out.get(i, 0) + sign * c
        return StepFunctional(self.alg, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def scaled(self, c) -> "StepFunctional":
        c = Fraction(c)
        return StepFunctional(self.alg, {i: c * x for i, x in self.coefficients.items()})

    def __eq__(self, other):
        if not isinstance(other, StepFunctional):
            return NotImplemented
        return self.alg == other.alg and self.coefficients == other.coefficients

    def __repr__(self):
        items = ", ".join(f"{i}: {c}" for i, c in sorted(self.coefficients.items()))
        return f"StepFunctional({{{items}}})"


class FunctionalMeasure:
    """Finitely additive measure with :class:`StepFunctional` values, one per atom."""

    def __init__(self, alg: FiniteAlgebra, values):
        values = tuple(values)
        if len(values) != alg.size:
            raise DomainError(f"expected {alg.size} atom values, got {len(values)}")
        self.alg = alg
        self.values = values

    def evaluate(self, A: MeasurableSet) -> StepFunctional:
        check_same_algebra(self.alg, A.alg)
        # atoms of one averaging block share a value object; add each once, weighted
        counts = Counter(id(self.values[i]) for i in A.members)
        objs = {id(self.values[i]): self.values[i] for i in A.members}
        out: dict[int, Fraction] = {}
        for key, k in counts.items():
            for i, c in objs[key].coefficients.items():
                out[i] = out.get(i, 0) + k * c
        return StepFunctional(self.alg, out)

    __call__ = evaluate

    def conditional_expectation(self, mu: ScalarMeasure, pi: Partition) -> "FunctionalMeasure":
        """Block averages ``(mu(b)/mu(A)) m(A)``, with ``0/0 = 0``."""
        check_same_algebra(self.alg, mu.alg, pi.alg)
        masses = mu.block_masses(pi)
        zero = StepFunctional(self.alg, {})
        block_vals = [self.evaluate(B) for B in pi.blocks]
        cache: dict[tuple[int, Fraction], StepFunctional] = {}
        out = []
        for w, j in zip(mu.weights, pi.labels):
            if not w or not masses[j]:
                out.append(zero)
                continue
            val = cache.get((j, w))
            if val is None:
                val = cache[(j, w)] = block_vals[j].scaled(w / masses[j])
            out.append(val)
        return FunctionalMeasure(self.alg, out)

    def __sub__(self, other: "FunctionalMeasure") -> "FunctionalMeasure":
        check_same_algebra(self.alg, other.alg)
        return FunctionalMeasure(self.alg, (a - b for a, b in zip(self.values, other.values)))

    def to_vector_measure(self) -> VectorMeasure:
        """Dense ``L(X, R)`` form with ``X = (R^M, linf)``: atom value is the ``1 x M`` coefficient row."""
        M = self.alg.size
        values = []
        for v in self.values:
            row = [Fraction(0)] * M
            for i, c in v.coefficients.items():
                row[i] = c
            values.append((tuple(row),))
        return VectorMeasure(self.alg, M, 1, NormTag("linf", M), scalar_tag(), tuple(values))


def example7_measure(N: int) -> FunctionalMeasure:
    """``m(A)(f) = int_A f dlambda`` on level-``N`` step functions: atom ``b`` carries ``2**-N`` at ``b``."""
    if not 1 <= N <= EXAMPLE7_MAX_LEVEL:
        raise ResourceError(f"level {N} outside [1, {EXAMPLE7_MAX_LEVEL}]")
    alg = make_dyadic_algebra(N)
    w = Fraction(1, alg.size)
    return FunctionalMeasure(alg, (StepFunctional(alg, {b: w}) for b in range(alg.size)))


def example7_gap(n: int, k: int, N: int, m: FunctionalMeasure | None = None) -> tuple[Fraction, Fraction]:
    """``(||m(A_n) - m(A_k)||, (m(A_n) - m(A_k))(r_n))`` for ``k <= n <= N``.

    The norm equals ``lambda(A_n symmetric-difference A_k)``, which is ``1/2``
    whenever ``k < n``; the second entry evaluates the difference at the unit
    vector ``r_n`` and certifies the lower bound ``1/2``.
    """
    if not 1 <= k <= n <= N:
        raise DomainError(f"need 1 <= k <= n <= N, got n={n}, k={k}, N={N}")
    if m is None:
        m = example7_measure(N)
    elif m.alg.dyadic_level != N:
        raise DomainError("measure level does not match N")
    diff = m.evaluate(odd_dyadic_union(n, m.alg)) - m.evaluate(odd_dyadic_union(k, m.alg))
    return diff.norm(), diff(rademacher(n, m.alg))


def nonconvergence_witness(levelN: int, n: int, m: FunctionalMeasure | None = None) -> Fraction:
    """``(m - m_pi_n)(A_{n+1})(r_{n+1})`` with ``pi_n`` the level-``n`` dyadic partition, ``mu = lambda``.

    Every level-``n`` block is split evenly by ``r_{n+1}``, so the averaged
    term vanishes and the value is ``lambda(A_{n+1}) = 1/2`` at every level:
    a uniform lower bound on ``|m - m_pi_n|(Omega)``.
    """
    if not 1 <= n < levelN:
        raise DomainError(f"need 1 <= n < N, got n={n}, N={levelN}")
    if m is None:
        m = example7_measure(levelN)
    elif m.alg.dyadic_level != levelN:
        raise DomainError("measure level does not match N")
    alg = m.alg
    m_pi = m.conditional_expectation(lebesgue(alg), dyadic_partition(alg, n))
    A = odd_dyadic_union(n + 1, alg)
    functional = m.evaluate(A) - m_pi.evaluate(A)
    return functional(rademacher(n + 1, alg))


def _set_gap(m, A: MeasurableSet, B: MeasurableSet):
    if isinstance(m, FunctionalMeasure):
        return (m.evaluate(A) - m.evaluate(B)).norm()
    diff = tuple(
        tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(m(A), m(B))
    )
    return opnorm(diff, m.norm_x, m.norm_y)


def range_diameter(m, strategy: str = "exhaustive", count: int = 1000, seed: int = 0):
    """``sup ||m(A) - m(B)||`` over pairs of sets.

    ``"exhaustive"`` (``M <= 20``) tabulates ``m(A)`` for all ``2**M`` sets.
    Since ``m(A) - m(B) = m(A - B) - m(B - A)`` and the norm of
    ``sum_b t_b m(b)`` is convex in ``t in [-1, 1]^M``, the supremum is
    attained at a complementary pair ``(A, Omega - A)``; the table is scanned
    over those pairs.  ``"sampled"`` draws ``count`` random pairs and returns
    a lower bound.
    """
    if strategy == "sampled":
        rng = np.random.default_rng(seed)
        alg = m.alg
        best = Fraction(0)
        for _ in range(count):
            mask = rng.integers(0, 2, size=(2, alg.size))
            A = alg.subset(np.flatnonzero(mask[0]).tolist())
            B = alg.subset(np.flatnonzero(mask[1]).tolist())
            best = max(best, _set_gap(m, A, B))
        return best
    if strategy != "exhaustive":
        raise DomainError(f"unknown strategy {strategy!r}")
    M = m.alg.size
    if M > EXHAUSTIVE_MAX_ATOMS:
        raise ResourceError(f"exhaustive diameter needs M <= {EXHAUSTIVE_MAX_ATOMS}, got {M}")
    if isinstance(m, FunctionalMeasure):
        m = m.to_vector_measure()
    if m.p == 1:
        tag = m.norm_y
    elif m.q == 1:
        tag = m.norm_x.dual()  # a 1 x p matrix is normed as a functional
    else:
        tag = NormTag("op", m.p * m.q, domain=m.norm_x, codomain=m.norm_y)
    ints, denom = scale_to_int([tuple(x for row in mat for x in row) for mat in m.values])
    dim = ints.shape[1]
    table = np.zeros((1, dim), dtype=ints.dtype)
    for b in range(M):
        table = np.concatenate([table, table + ints[b]])
    diffs = 2 * table - table[-1]  # m(A) - m(Omega - A) for every A
    scores = _int_scores(diffs, tag)
    if scores is not None:
        return _exact_int_norm(diffs[int(np.argmax(scores))], denom, tag)
    approx = _float_norms(diffs.astype(float) / denom, tag)
    top = approx.max()
    cand = np.flatnonzero(approx >= top - 1e-9 * max(1.0, top))
    return max(_exact_int_norm(diffs[i], denom, tag) for i in cand)
