"""Scalar and operator-valued measures on a finite algebra.

A :class:`VectorMeasure` stores one ``q x p`` rational matrix per atom: an
element of ``L(X, Y)`` with ``X = R^p`` and ``Y = R^q``.  The value of a set
is the sum of its atom matrices, so finite additivity holds by construction.
With ``p == 1`` the matrices are column vectors and the measure is simply
``Y``-valued; all ``Y``-valued constructions (densities, martingales, scalar
semivariation) use this layout.

Everything here is exact: entries are :class:`fractions.Fraction` and no
operation rounds.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Sequence

from .exceptions import DomainError
from .space import FiniteAlgebra, MeasurableSet, Partition, check_same_algebra

__all__ = [
    "NormTag",
    "scalar_tag",
    "ScalarMeasure",
    "VectorMeasure",
    "SimpleFunction",
    "to_fraction",
    "lebesgue",
    "evaluate",
    "conditional_expectation",
    "density_to_measure",
    "is_absolutely_continuous",
    "functional_slice",
    "sharp_lift",
    "integrate",
    "apply_T_pi",
]

NORM_KINDS = ("l1", "l2", "linf")
_DUAL = {"l1": "linf", "linf": "l1", "l2": "l2"}


def to_fraction(x) -> Fraction:
    """Exact conversion; floats are refused so nothing inexact slips in."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise DomainError(f"not a rational: {x!r}")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"cannot parse rational {x!r}") from exc
    raise DomainError(f"expected an exact rational (int, Fraction or 'p/q' string), got {x!r}")


@dataclass(frozen=True, eq=False)
class NormTag:
    """Norm on ``R^dim``.

    ``kind`` is ``"l1"``, ``"l2"`` or ``"linf"``; ``"op"`` marks the operator
    norm on flattened ``q x p`` matrices (row-major), with ``domain`` and
    ``codomain`` the tags of ``R^p`` and ``R^q``.
    """

    kind: str
    dim: int
    domain: "NormTag | None" = None
    codomain: "NormTag | None" = None

    def __post_init__(self):
        if self.dim < 1:
            raise DomainError(f"norm dimension must be >= 1, got {self.dim}")
        if self.kind == "op":
            if self.domain is None or self.codomain is None:
                raise DomainError("operator norm tag needs domain and codomain tags")
            if self.domain.dim * self.codomain.dim != self.dim:
                raise DomainError("operator norm tag dimension must equal p*q")
        elif self.kind not in NORM_KINDS:
            raise DomainError(f"unknown norm kind {self.kind!r}")

    def _key(self):
        # every norm on R^1 is |.|, so the kind is irrelevant there
        if self.kind != "op" and self.dim == 1:
            return ("abs", 1)
        return (self.kind, self.dim, self.domain, self.codomain)

    def __eq__(self, other):
        if not isinstance(other, NormTag):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    @property
    def polyhedral(self) -> bool:
        # the unit ball of R^1 is the polytope [-1, 1]
        return self.kind in ("l1", "linf") or self.dim == 1

    def dual(self) -> "NormTag":
        if self.kind == "op":
            raise DomainError("dual of an operator norm tag is not supported")
        return NormTag(_DUAL[self.kind], self.dim)

    def with_dim(self, dim: int) -> "NormTag":
        if self.kind == "op":
            raise DomainError("cannot resize an operator norm tag")
        return NormTag(self.kind, dim)

    def __str__(self):
        if self.kind == "op":
            return f"op({self.domain}->{self.codomain})"
        return f"{self.kind}[{self.dim}]"


def scalar_tag() -> NormTag:
    """The (unique) norm ``|.|`` on ``R``."""
    return NormTag("l1", 1)


def _tag(t, dim: int) -> NormTag:
    if isinstance(t, NormTag):
        if t.dim != dim:
            raise DomainError(f"norm tag {t} does not match dimension {dim}")
        return t
    return NormTag(str(t).lower(), dim)


@dataclass(frozen=True)
class ScalarMeasure:
    """Nonnegative finitely additive measure given by one weight per atom."""

    alg: FiniteAlgebra
    weights: tuple

    def __post_init__(self):
        w = tuple(to_fraction(x) for x in self.weights)
        if len(w) != self.alg.size:
            raise DomainError(f"expected {self.alg.size} weights, got {len(w)}")
        for i, x in enumerate(w):
            if x < 0:
                raise DomainError(f"weight of atom {i} is negative ({x})")
        object.__setattr__(self, "weights", w)

    def __call__(self, A: MeasurableSet) -> Fraction:
        check_same_algebra(self.alg, A.alg)
        return sum((self.weights[i] for i in A.members), Fraction(0))

    def total(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def block_masses(self, pi: Partition) -> list[Fraction]:
        check_same_algebra(self.alg, pi.alg)
        out = [Fraction(0)] * len(pi)
        for w, j in zip(self.weights, pi.labels):
            out[j] += w
        return out


def lebesgue(alg: FiniteAlgebra) -> ScalarMeasure:
    """Uniform weights ``1/M``; on a dyadic algebra this is Lebesgue measure on [0, 1)."""
    w = Fraction(1, alg.size)
    return ScalarMeasure(alg, (w,) * alg.size)


# -- small exact matrix helpers (matrices are tuples of row tuples) -----------

def _zero_mat(q: int, p: int) -> tuple:
    z = Fraction(0)
    return tuple((z,) * p for _ in range(q))


def _mat_add(a: tuple, b: tuple) -> tuple:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _mat_sub(a: tuple, b: tuple) -> tuple:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _mat_scale(a: tuple, c: Fraction) -> tuple:
    return tuple(tuple(c * x for x in row) for row in a)


def _mat_is_zero(a: tuple) -> bool:
    return not any(x for row in a for x in row)


def _matvec(a: tuple, v: Sequence[Fraction]) -> tuple:
    return tuple(sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a)


def _mat_sum(mats, q: int, p: int) -> tuple:
    acc = [[Fraction(0)] * p for _ in range(q)]
    for m in mats:
        for i, row in enumerate(m):
            acc_i = acc[i]
            for j, x in enumerate(row):
                if x:
                    acc_i[j] += x
    return tuple(tuple(r) for r in acc)


def _vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


@dataclass(frozen=True)
class VectorMeasure:
    """Finitely additive ``L(R^p, R^q)``-valued measure, one matrix per atom."""

    alg: FiniteAlgebra
    p: int
    q: int
    norm_x: NormTag
    norm_y: NormTag
    values: tuple

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise DomainError("dimensions p and q must be >= 1")
        object.__setattr__(self, "norm_x", _tag(self.norm_x, self.p))
        object.__setattr__(self, "norm_y", _tag(self.norm_y, self.q))
        if len(self.values) != self.alg.size:
            raise DomainError(f"expected {self.alg.size} atom values, got {len(self.values)}")
        vals = []
        for b, mat in enumerate(self.values):
            if len(mat) != self.q or any(len(row) != self.p for row in mat):
                raise DomainError(f"atom {b}: value is not a {self.q}x{self.p} matrix")
            vals.append(tuple(tuple(to_fraction(x) for x in row) for row in mat))
        object.__setattr__(self, "values", tuple(vals))

    @classmethod
    def from_vectors(cls, alg: FiniteAlgebra, vectors, norm="l2") -> "VectorMeasure":
        """``R^q``-valued measure (``p == 1``) from one vector per atom."""
        vectors = [tuple(v) if isinstance(v, (list, tuple)) else (v,) for v in vectors]
        if not vectors:
            raise DomainError("no atom values")
        q = len(vectors[0])
        values = tuple(tuple((x,) for x in v) for v in vectors)
        return cls(alg, 1, q, scalar_tag(), _tag(norm, q), values)

    @classmethod
    def zero(cls, alg: FiniteAlgebra, p: int, q: int, norm_x="l2", norm_y="l2") -> "VectorMeasure":
        z = _zero_mat(q, p)
        return cls(alg, p, q, _tag(norm_x, p), _tag(norm_y, q), (z,) * alg.size)

    @property
    def shape(self):
        return (self.alg.size, self.q, self.p)

    def vectors(self) -> list[tuple]:
        """Atom values as ``q``-vectors (only for ``p == 1``)."""
        if self.p != 1:
            raise DomainError("vectors() needs an X-valued measure (p == 1)")
        return [tuple(row[0] for row in mat) for mat in self.values]

    def _like(self, values) -> "VectorMeasure":
        obj = object.__new__(VectorMeasure)
        for name in ("alg", "p", "q", "norm_x", "norm_y"):
            object.__setattr__(obj, name, getattr(self, name))
        object.__setattr__(obj, "values", tuple(values))
        return obj

    def _check_shape(self, other: "VectorMeasure"):
        check_same_algebra(self.alg, other.alg)
        if (self.p, self.q, self.norm_x, self.norm_y) != (other.p, other.q, other.norm_x, other.norm_y):
            raise DomainError("measures differ in dimensions or norm tags")

    def __add__(self, other: "VectorMeasure") -> "VectorMeasure":
        self._check_shape(other)
        return self._like(_mat_add(a, b) for a, b in zip(self.values, other.values))

    def __sub__(self, other: "VectorMeasure") -> "VectorMeasure":
        self._check_shape(other)
        return self._like(_mat_sub(a, b) for a, b in zip(self.values, other.values))

    def __neg__(self) -> "VectorMeasure":
        return self.scaled(-1)

    def scaled(self, c) -> "VectorMeasure":
        c = to_fraction(c)
        return self._like(_mat_scale(a, c) for a in self.values)

    def is_zero(self) -> bool:
        return all(_mat_is_zero(a) for a in self.values)

    def __call__(self, A: MeasurableSet) -> tuple:
        return evaluate(self, A)


@dataclass(frozen=True)
class SimpleFunction:
    """``R^dim``-valued step function, one vector per atom."""

    alg: FiniteAlgebra
    dim: int
    norm: NormTag
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "norm", _tag(self.norm, self.dim))
        if len(self.values) != self.alg.size:
            raise DomainError(f"expected {self.alg.size} atom values, got {len(self.values)}")
        vals = []
        for b, v in enumerate(self.values):
            if not isinstance(v, (list, tuple)):
                v = (v,)
            if len(v) != self.dim:
                raise DomainError(f"atom {b}: expected a vector of length {self.dim}")
            vals.append(tuple(to_fraction(x) for x in v))
        object.__setattr__(self, "values", tuple(vals))

    @classmethod
    def constant(cls, alg: FiniteAlgebra, c, norm="l2") -> "SimpleFunction":
        c = tuple(c) if isinstance(c, (list, tuple)) else (c,)
        return cls(alg, len(c), _tag(norm, len(c)), (c,) * alg.size)

    def _like(self, values) -> "SimpleFunction":
        obj = object.__new__(SimpleFunction)
        for name in ("alg", "dim", "norm"):
            object.__setattr__(obj, name, getattr(self, name))
        object.__setattr__(obj, "values", tuple(values))
        return obj

    def _check(self, other: "SimpleFunction"):
        check_same_algebra(self.alg, other.alg)
        if self.dim != other.dim or self.norm != other.norm:
            raise DomainError("functions differ in dimension or norm tag")

    def __add__(self, other):
        self._check(other)
        return self._like(_vec_add(a, b) for a, b in zip(self.values, other.values))

    def __sub__(self, other):
        self._check(other)
        return self._like(tuple(x - y for x, y in zip(a, b)) for a, b in zip(self.values, other.values))

    def __neg__(self):
        return self.scaled(-1)

    def scaled(self, c) -> "SimpleFunction":
        c = to_fraction(c)
        return self._like(tuple(c * x for x in v) for v in self.values)

    def __call__(self, b: int) -> tuple:
        return self.values[b]


# -- operations ----------------------------------------------------------------

def evaluate(m: VectorMeasure, A: MeasurableSet) -> tuple:
    """``m(A)``: entrywise sum of the atom matrices over ``A``."""
    check_same_algebra(m.alg, A.alg)
    return _mat_sum((m.values[i] for i in A.members), m.q, m.p)


def _block_values(m: VectorMeasure, pi: Partition) -> list[tuple]:
    groups: list[list] = [[] for _ in range(len(pi))]
    for mat, j in zip(m.values, pi.labels):
        groups[j].append(mat)
    return [_mat_sum(g, m.q, m.p) for g in groups]


def conditional_expectation(m: VectorMeasure, mu: ScalarMeasure, pi: Partition) -> VectorMeasure:
    """``m_pi(B) = sum_{A in pi} mu(A & B)/mu(A) * m(A)`` with ``0/0 = 0``.

    Atom ``b`` inside block ``A`` receives ``(mu(b)/mu(A)) * m(A)``.  A block
    of ``mu``-measure zero contributes nothing, even if ``m(A) != 0``.
    """
    check_same_algebra(m.alg, mu.alg, pi.alg)
    masses = mu.block_masses(pi)
    block_vals = _block_values(m, pi)
    zero = _zero_mat(m.q, m.p)
    cache: dict[tuple[int, Fraction], tuple] = {}
    out = []
    for w, j in zip(mu.weights, pi.labels):
        mass = masses[j]
        if not mass or not w:
            out.append(zero)
            continue
        key = (j, w)
        val = cache.get(key)
        if val is None:
            val = cache[key] = _mat_scale(block_vals[j], w / mass)
        out.append(val)
    return m._like(out)


def density_to_measure(f: SimpleFunction, mu: ScalarMeasure) -> VectorMeasure:
    """Indefinite integral ``B -> int_B f dmu``: atom value ``mu(b) * f(b)``."""
    check_same_algebra(f.alg, mu.alg)
    values = tuple(tuple((w * x,) for x in v) for w, v in zip(mu.weights, f.values))
    return VectorMeasure(f.alg, 1, f.dim, scalar_tag(), f.norm, values)


def is_absolutely_continuous(m: VectorMeasure, mu: ScalarMeasure) -> bool:
    """``m << mu``: every ``mu``-null atom is ``m``-null."""
    check_same_algebra(m.alg, mu.alg)
    return all(w or _mat_is_zero(mat) for w, mat in zip(mu.weights, m.values))


def functional_slice(m: VectorMeasure, ystar: Sequence) -> VectorMeasure:
    """The ``X*``-valued measure ``A -> y* o m(A)``.

    The row ``y*^T m(b)`` is stored transposed, as a column in ``R^p`` normed
    by the dual of ``m.norm_x``; the result therefore has ``p == 1``.
    """
    if len(ystar) != m.q:
        raise DomainError(f"functional has length {len(ystar)}, expected {m.q}")
    y = [to_fraction(c) for c in ystar]
    values = []
    for mat in m.values:
        row = [sum((y[i] * mat[i][j] for i in range(m.q)), Fraction(0)) for j in range(m.p)]
        values.append(tuple((x,) for x in row))
    return VectorMeasure(m.alg, 1, m.p, scalar_tag(), m.norm_x.dual(), tuple(values))


def sharp_lift(m: VectorMeasure) -> VectorMeasure:
    """``m#(A)(r) = r m(A)``, stored as the ``R^(q*p)``-valued measure of flattened matrices.

    The value space carries the operator norm ``norm_x -> norm_y``, so the
    lift is an isometric relabeling of ``m``.  When ``p == 1`` that operator
    norm is just ``norm_y`` on the column, and ``m`` is returned unchanged.
    """
    if m.p == 1:
        return m
    tag = NormTag("op", m.p * m.q, domain=m.norm_x, codomain=m.norm_y)
    values = tuple(tuple((x,) for row in mat for x in row) for mat in m.values)
    return VectorMeasure(m.alg, 1, m.p * m.q, scalar_tag(), tag, values)


def integrate(m: VectorMeasure, f: SimpleFunction) -> tuple:
    """``T(f) = int f dm = sum_b m(b) f(b)``; no control measure is involved."""
    check_same_algebra(m.alg, f.alg)
    if f.dim != m.p:
        raise DomainError(f"function dimension {f.dim} does not match p = {m.p}")
    acc = (Fraction(0),) * m.q
    for mat, v in zip(m.values, f.values):
        acc = _vec_add(acc, _matvec(mat, v))
    return acc


def apply_T_pi(m: VectorMeasure, mu: ScalarMeasure, pi: Partition, f: SimpleFunction) -> tuple:
    """``T_pi(f) = sum_{A in pi} m(A) (int_A f dmu / mu(A))`` with ``0/0 = 0``."""
    check_same_algebra(m.alg, mu.alg, pi.alg, f.alg)
    if f.dim != m.p:
        raise DomainError(f"function dimension {f.dim} does not match p = {m.p}")
    masses = mu.block_masses(pi)
    block_vals = _block_values(m, pi)
    integrals = [[Fraction(0)] * m.p for _ in range(len(pi))]
    for w, v, j in zip(mu.weights, f.values, pi.labels):
        if w:
            acc = integrals[j]
            for i, x in enumerate(v):
                acc[i] += w * x
    out = (Fraction(0),) * m.q
    for mass, val, integral in zip(masses, block_vals, integrals):
        if mass:
            avg = [x / mass for x in integral]
            out = _vec_add(out, _matvec(val, avg))
    return out
