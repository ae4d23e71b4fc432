"""Martingales of a measure and refinement-directed convergence sweeps.

For an ``R^q``-valued measure ``m``, a control measure ``mu`` and a partition
``pi``, the martingale ``f_pi = sum_{A in pi} m(A)/mu(A) 1_A`` is the density
of ``m_pi`` with respect to ``mu``.  A sweep walks a chain of successively
finer partitions and tabulates how far ``m_pi`` is from ``m`` in each norm.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from ._numbers import json_number, number_text
from .exceptions import DomainError
from .measure import (
    ScalarMeasure,
    SimpleFunction,
    VectorMeasure,
    conditional_expectation,
    density_to_measure,
    sharp_lift,
)
from .norms import (
    DEFAULT_ENUM_CAP,
    DEFAULT_RESTARTS,
    BoundCertificate,
    l1_norm,
    operator_semivariation,
    pettis_norm,
    scalar_semivariation,
    variation,
)
from .space import Partition, check_same_algebra, dyadic_chain, finest_partition, is_refinement

__all__ = [
    "NORM_SELECTORS",
    "CSV_HEADER",
    "ConvergenceRow",
    "ConvergenceReport",
    "martingale_function",
    "distance",
    "convergence_sweep",
    "pettis_sweep",
]

NORM_SELECTORS = ("variation", "scalar", "operator", "pettis")
CSV_HEADER = (
    "level",
    "variation_dist",
    "scalar_semivar_dist",
    "opsemivar_lb",
    "opsemivar_ub",
    "pettis_lb",
    "pettis_ub",
    "f_pi_l1",
)


def martingale_function(m: VectorMeasure, mu: ScalarMeasure, pi: Partition) -> SimpleFunction:
    """``f_pi``: the value ``m(A)/mu(A)`` on each block ``A`` (``0`` on ``mu``-null blocks)."""
    check_same_algebra(m.alg, mu.alg, pi.alg)
    if m.p != 1:
        raise DomainError("martingale_function needs an X-valued measure (p == 1)")
    masses = mu.block_masses(pi)
    sums = [[Fraction(0)] * m.q for _ in range(len(pi))]
    for vec, j in zip(m.vectors(), pi.labels):
        acc = sums[j]
        for i, x in enumerate(vec):
            acc[i] += x
    zero = (Fraction(0),) * m.q
    block_vals = [tuple(x / mass for x in s) if mass else zero for s, mass in zip(sums, masses)]
    return SimpleFunction(m.alg, m.q, m.norm_y, tuple(block_vals[j] for j in pi.labels))


def distance(m1: VectorMeasure, m2: VectorMeasure, which: str = "variation", **kwargs):
    """Norm of ``m1 - m2``.

    ``which`` is ``"variation"`` (a number), ``"scalar"`` or ``"operator"``
    (bound certificates); extra keyword arguments go to the semivariation
    kernels.  For ``p > 1`` the scalar semivariation is that of the lifted
    measure ``(m1 - m2)#``.
    """
    diff = m1 - m2
    if which == "variation":
        return variation(diff)
    if which == "scalar":
        return scalar_semivariation(sharp_lift(diff), **kwargs)
    if which == "operator":
        return operator_semivariation(diff, **kwargs)
    raise DomainError(f"unknown norm selector {which!r}; expected variation, scalar or operator")


@dataclass
class ConvergenceRow:
    level: int
    variation_dist: object = None
    scalar_semivar_dist: BoundCertificate | None = None
    opsemivar_dist: BoundCertificate | None = None
    pettis_dist: BoundCertificate | None = None
    f_pi_l1: object = None

    def csv_fields(self) -> list[str]:
        def txt(x):
            return "" if x is None else number_text(x)

        def cert(c, side):
            return "" if c is None else number_text(getattr(c, side))

        return [
            str(self.level),
            txt(self.variation_dist),
            "" if self.scalar_semivar_dist is None else number_text(self.scalar_semivar_dist.value),
            cert(self.opsemivar_dist, "lower"),
            cert(self.opsemivar_dist, "upper"),
            cert(self.pettis_dist, "lower"),
            cert(self.pettis_dist, "upper"),
            txt(self.f_pi_l1),
        ]

    def to_dict(self) -> dict:
        def c(x):
            return None if x is None else x.to_dict()

        return {
            "level": self.level,
            "variation_dist": json_number(self.variation_dist),
            "scalar_semivar_dist": c(self.scalar_semivar_dist),
            "opsemivar_dist": c(self.opsemivar_dist),
            "pettis_dist": c(self.pettis_dist),
            "f_pi_l1": json_number(self.f_pi_l1),
        }


@dataclass
class ConvergenceReport:
    rows: list[ConvergenceRow]
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        levels = [r.level for r in self.rows]
        if any(b <= a for a, b in zip(levels, levels[1:])):
            raise DomainError("report levels must be strictly increasing")

    def column(self, name: str) -> list:
        return [getattr(r, name) for r in self.rows]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for r in self.rows:
            writer.writerow(r.csv_fields())
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {"metadata": self.metadata, "rows": [r.to_dict() for r in self.rows]}

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def _resolve_chain(alg, chain, levels):
    if chain is None:
        chain = dyadic_chain(alg, levels)
        if levels is None:
            levels = range(alg.dyadic_level + 1)
    chain = list(chain)
    if not chain:
        raise DomainError("empty partition chain")
    levels = list(range(len(chain))) if levels is None else list(levels)
    if len(levels) != len(chain):
        raise DomainError("one level label per partition is required")
    for pi in chain:
        check_same_algebra(alg, pi.alg)
    for coarse, fine in zip(chain, chain[1:]):
        if not is_refinement(fine, coarse):
            raise DomainError("chain is not ordered by refinement (each partition must refine its predecessor)")
    return chain, levels


def _selectors(norms) -> set[str]:
    sel = set(NORM_SELECTORS if norms is None else norms)
    unknown = sel - set(NORM_SELECTORS)
    if unknown:
        raise DomainError(f"unknown norm selectors {sorted(unknown)}")
    return sel


def convergence_sweep(
    m: VectorMeasure,
    mu: ScalarMeasure,
    chain: Sequence[Partition] | None = None,
    norms: Iterable[str] | None = None,
    levels: Sequence[int] | None = None,
    enum_cap: int = DEFAULT_ENUM_CAP,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = 0,
    measure_id: str = "m",
) -> ConvergenceReport:
    """Distances between ``m_pi`` and ``m`` along a refinement chain.

    ``chain`` defaults to the dyadic ladder ``0..n`` of a dyadic algebra.
    Divergent inputs (for instance ``m`` not absolutely continuous) simply
    produce nonzero rows.  For ``p == 1`` the Pettis column compares ``f_pi``
    with the density ``f`` of the ``mu``-continuous part of ``m`` (its
    martingale on the atom partition) and ``f_pi_l1`` is ``||f_pi||_1``.
    """
    check_same_algebra(m.alg, mu.alg)
    chain, levels = _resolve_chain(m.alg, chain, levels)
    sel = _selectors(norms)
    kw = dict(enum_cap=enum_cap, restarts=restarts, seed=seed)
    density = martingale_function(m, mu, finest_partition(m.alg)) if m.p == 1 else None
    rows = []
    for level, pi in zip(levels, chain):
        m_pi = conditional_expectation(m, mu, pi)
        diff = m_pi - m
        row = ConvergenceRow(level)
        if "variation" in sel:
            row.variation_dist = variation(diff)
        scalar = None
        if "scalar" in sel or ("operator" in sel and m.p == 1):
            scalar = scalar_semivariation(sharp_lift(diff), **kw)
            if "scalar" in sel:
                row.scalar_semivar_dist = scalar
        if "operator" in sel:
            # for p == 1 the operator semivariation is the scalar one
            row.opsemivar_dist = scalar if m.p == 1 else operator_semivariation(diff, **kw)
        if m.p == 1:
            f_pi = martingale_function(m, mu, pi)
            row.f_pi_l1 = l1_norm(f_pi, mu)
            if "pettis" in sel:
                g = f_pi - density
                if scalar is not None and density_to_measure(g, mu) == diff:
                    row.pettis_dist = scalar
                else:
                    row.pettis_dist = pettis_norm(g, mu, **kw)
        rows.append(row)
    meta = {"measure": measure_id, "chain": _describe(chain, levels), "p": m.p, "q": m.q}
    return ConvergenceReport(rows, meta)


def pettis_sweep(
    f: SimpleFunction,
    mu: ScalarMeasure,
    chain: Sequence[Partition] | None = None,
    levels: Sequence[int] | None = None,
    enum_cap: int = DEFAULT_ENUM_CAP,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = 0,
    measure_id: str = "f",
) -> ConvergenceReport:
    """Pettis distances ``||f_pi - f||_P`` along a refinement chain.

    ``f_pi`` is the martingale of ``B -> int_B f dmu``.  Choosing ``mu`` (for
    instance the variation of the represented measure) is up to the caller.
    """
    check_same_algebra(f.alg, mu.alg)
    chain, levels = _resolve_chain(f.alg, chain, levels)
    m = density_to_measure(f, mu)
    rows = []
    for level, pi in zip(levels, chain):
        f_pi = martingale_function(m, mu, pi)
        rows.append(ConvergenceRow(
            level,
            pettis_dist=pettis_norm(f_pi - f, mu, enum_cap=enum_cap, restarts=restarts, seed=seed),
            f_pi_l1=l1_norm(f_pi, mu),
        ))
    meta = {"function": measure_id, "chain": _describe(chain, levels), "dim": f.dim}
    return ConvergenceReport(rows, meta)


def _describe(chain, levels) -> str:
    sizes = ",".join(str(len(pi)) for pi in chain)
    return f"levels {levels[0]}..{levels[-1]} ({len(chain)} partitions; blocks {sizes})"
