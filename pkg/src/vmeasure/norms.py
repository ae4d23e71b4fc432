"""Norms of measures and simple functions.

On a finite algebra every supremum over partitions is attained at the atom
partition, which turns the classical definitions into finite formulas:

variation
    ``|m|(Omega) = sum_b ||m(b)||``.  Merging atoms into a coarser block can
    only lower the sum (triangle inequality), so the atom partition is optimal.

scalar semivariation (``p == 1``)
    ``||m||(Omega) = sup_{||x*|| <= 1} sum_b |<x*, v_b>|``.  Writing
    ``|t| = max(t, -t)`` and swapping the two maxima gives
    ``max_{eps in {+1,-1}^M} ||sum_b eps_b v_b||``, since the dual norm of
    ``sum_b eps_b v_b`` is its norm.  Flipping every sign leaves the norm
    unchanged, so only patterns with ``eps_0 = +1`` are enumerated.

operator semivariation
    ``m~(Omega) = sup {||sum_b m(b) x_b|| : x_b in B_X}``.  A coarser
    partition forces equal tags inside a block, so it is dominated by the atom
    partition.  The objective is convex in each ``x_b``, so when ``B_X`` is a
    polytope (``l1``, ``linf``) the supremum is reached at vertex tuples.
    Dually ``m~(Omega) = sup_{y* in B_Y*} sum_b ||m(b)^T y*||_{X*}``, a convex
    function of ``y*`` that peaks at vertices of ``B_Y*`` when ``Y`` is
    polyhedral.

Polyhedral (``l1``/``linf``) kernels return exact :class:`~fractions.Fraction`
values; ``l2`` quantities are floats unless they happen to be rational.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from ._numbers import exact_sqrt, json_number, scale_to_int
from .exceptions import DomainError
from .measure import (
    NormTag,
    ScalarMeasure,
    SimpleFunction,
    VectorMeasure,
    check_same_algebra,
    density_to_measure,
)

__all__ = [
    "DEFAULT_ENUM_CAP",
    "DEFAULT_RESTARTS",
    "L2_TOL",
    "BoundCertificate",
    "vector_norm",
    "dual_norm",
    "opnorm",
    "variation",
    "scalar_semivariation",
    "operator_semivariation",
    "pettis_norm",
    "l1_norm",
    "operator_norm_lower_bound",
]

DEFAULT_ENUM_CAP = 2 ** 20
DEFAULT_RESTARTS = 32
L2_TOL = 1e-9
_CHUNK = 2 ** 16
_POWER_TOL = 1e-12


@dataclass
class BoundCertificate:
    """Certified bracket ``lower <= value <= upper``.

    ``exact`` is set when the bracket is closed.  ``method`` records how:
    ``"enumeration"`` (exhaustive vertex or sign search), ``"local-search"``
    (heuristic lower bound, triangle-inequality upper bound) or
    ``"triangle-bound"`` (the search reached the triangle bound, closing the
    bracket).
    """

    lower: Any
    upper: Any
    method: str
    exact: Any = None
    witness: Any = field(default=None, compare=False)

    def __post_init__(self):
        if self.lower > self.upper:
            floaty = isinstance(self.lower, float) or isinstance(self.upper, float)
            if floaty and self.lower - self.upper <= L2_TOL * max(1.0, abs(float(self.upper))):
                # rounding in the float search; widen the (valid) upper bound
                self.upper = self.lower
            else:
                raise ValueError(f"lower bound {self.lower} exceeds upper bound {self.upper}")
        if self.exact is None and self.lower == self.upper:
            self.exact = self.upper
        if self.exact is not None and not (self.lower == self.exact == self.upper):
            raise ValueError("exact value must equal both bounds")

    @classmethod
    def closed(cls, value, method: str, witness=None) -> "BoundCertificate":
        return cls(value, value, method, exact=value, witness=witness)

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    @property
    def value(self):
        """The exact value, or the lower bound when the bracket is open."""
        return self.exact if self.exact is not None else self.lower

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "lower": json_number(self.lower),
            "upper": json_number(self.upper),
            "exact": json_number(self.exact),
            "witness": self.witness,
        }


# -- vector and operator norms ----------------------------------------------

def vector_norm(v: Sequence[Fraction], tag: NormTag):
    """Norm of an exact vector under ``tag`` (exact unless an irrational l2 root)."""
    if len(v) != tag.dim:
        raise DomainError(f"vector of length {len(v)} does not match norm {tag}")
    if tag.kind == "op":
        p, q = tag.domain.dim, tag.codomain.dim
        mat = tuple(tuple(v[i * p:(i + 1) * p]) for i in range(q))
        return opnorm(mat, tag.domain, tag.codomain)
    if tag.dim == 1:
        return abs(Fraction(v[0]))
    if tag.kind == "l1":
        return sum((abs(x) for x in v), Fraction(0))
    if tag.kind == "linf":
        return max(abs(Fraction(x)) for x in v)
    return exact_sqrt(sum((Fraction(x) * x for x in v), Fraction(0)))


def dual_norm(v: Sequence[Fraction], tag: NormTag):
    """Norm of ``v`` viewed as a functional on ``(R^dim, tag)``."""
    return vector_norm(v, tag.dual())


def _sign_vertices(n: int, half: bool) -> np.ndarray:
    """All ``{+1,-1}^n`` vectors in lexicographic order (+ before -); ``half`` fixes the first to +1."""
    pats = np.array(list(itertools.product((1, -1), repeat=n)), dtype=np.int64).reshape(-1, n)
    return pats[pats[:, 0] == 1] if half and n else pats


def opnorm(mat, norm_x: NormTag, norm_y: NormTag):
    """Operator norm of a ``q x p`` matrix from ``(R^p, norm_x)`` to ``(R^q, norm_y)``.

    Closed forms: from ``l1`` it is the largest column norm; into ``linf``
    the largest dual row norm; ``l2 -> l2`` is the top singular value found
    by power iteration.  Remaining polyhedral pairs enumerate sign vertices
    of a ``linf`` ball (the domain ball, or the codomain's dual ball for
    ``l2 -> l1``), up to 20 coordinates.
    """
    q = len(mat)
    p = len(mat[0]) if q else 0
    if p != norm_x.dim or q != norm_y.dim:
        raise DomainError(f"{q}x{p} matrix does not match norms {norm_x} -> {norm_y}")
    if q == 1:
        return vector_norm(mat[0], norm_x.dual())
    if p == 1:
        return vector_norm([row[0] for row in mat], norm_y)
    if norm_x.kind == "l1" and norm_y.kind != "op":
        return max(vector_norm([row[j] for row in mat], norm_y) for j in range(p))
    if norm_y.kind == "linf":
        return max(vector_norm(row, norm_x.dual()) for row in mat)
    if norm_x.kind == "l2" and norm_y.kind == "l2":
        return _power_opnorm(np.array([[float(x) for x in row] for row in mat]))
    if norm_x.kind == "linf" and norm_y.kind in ("l1", "l2") and p <= 20:
        return _vertex_opnorm(mat, p, norm_y)
    if norm_x.kind == "l2" and norm_y.kind == "l1" and q <= 20:
        transposed = tuple(tuple(mat[i][j] for i in range(q)) for j in range(p))
        return _vertex_opnorm(transposed, q, NormTag("l2", p))
    raise DomainError(f"operator norm {norm_x} -> {norm_y} is not supported for a {q}x{p} matrix")


def _vertex_opnorm(mat, p: int, norm_y: NormTag):
    # max of ||A s|| over s in {+1,-1}^p with s_0 = +1 (s and -s give equal norms)
    ints, denom = scale_to_int(mat)
    signs = _sign_vertices(p, half=True)
    images = (signs.astype(object) if ints.dtype == object else signs) @ ints.T
    if norm_y.kind == "l1":
        return Fraction(int(np.abs(images).sum(axis=1).max()), denom)
    sq = (images * images).sum(axis=1).max()
    return exact_sqrt(Fraction(int(sq), denom * denom))


def _power_opnorm(a: np.ndarray, tol: float = _POWER_TOL, max_iter: int = 100_000) -> float:
    """Largest singular value of ``a`` by power iteration on ``a^T a``."""
    gram = a.T @ a
    if not np.any(gram):
        return 0.0
    rng = np.random.default_rng(0)
    v = np.ones(a.shape[1]) + 0.1 * rng.standard_normal(a.shape[1])
    v /= np.linalg.norm(v)
    lam = float(v @ gram @ v)
    for _ in range(max_iter):
        w = gram @ v
        nw = np.linalg.norm(w)
        if nw == 0.0:
            return 0.0
        v = w / nw
        new = float(v @ gram @ v)
        if abs(new - lam) <= tol * max(new, tol):
            lam = new
            break
        lam = new
    return math.sqrt(max(lam, 0.0))


def _float_norms(arr: np.ndarray, tag: NormTag) -> np.ndarray:
    """Row-wise norms of a float array of shape ``(n, dim)``."""
    if tag.kind == "op":
        q, p = tag.codomain.dim, tag.domain.dim
        return _float_opnorms(arr.reshape(-1, q, p), tag.domain, tag.codomain)
    if tag.dim == 1 or tag.kind == "l1":
        return np.abs(arr).sum(axis=1)
    if tag.kind == "linf":
        return np.abs(arr).max(axis=1)
    return np.sqrt((arr * arr).sum(axis=1))


def _float_opnorms(mats: np.ndarray, norm_x: NormTag, norm_y: NormTag) -> np.ndarray:
    n, q, p = mats.shape
    if q == 1:
        return _float_norms(mats[:, 0, :], norm_x.dual())
    if p == 1:
        return _float_norms(mats[:, :, 0], norm_y)
    if norm_x.kind == "l1":
        cols = np.transpose(mats, (0, 2, 1)).reshape(n * p, q)
        return _float_norms(cols, norm_y).reshape(n, p).max(axis=1)
    if norm_y.kind == "linf":
        return _float_norms(mats.reshape(n * q, p), norm_x.dual()).reshape(n, q).max(axis=1)
    if norm_x.kind == "l2" and norm_y.kind == "l2":
        return np.linalg.norm(mats, ord=2, axis=(1, 2))
    if norm_x.kind == "linf":
        s = _sign_vertices(p, half=True).astype(float)
        imgs = np.einsum("nqp,sp->nsq", mats, s).reshape(-1, q)
        return _float_norms(imgs, norm_y).reshape(n, -1).max(axis=1)
    if norm_x.kind == "l2" and norm_y.kind == "l1":
        s = _sign_vertices(q, half=True).astype(float)
        imgs = np.einsum("nqp,sq->nsp", mats, s).reshape(-1, p)
        return np.sqrt((imgs * imgs).sum(axis=1)).reshape(n, -1).max(axis=1)
    raise DomainError(f"operator norm {norm_x} -> {norm_y} is not supported")


# -- measure norms -------------------------------------------------------------

def variation(m: VectorMeasure):
    """``|m|(Omega)``: sum of the atom values' norms (operator norms when ``p > 1``).

    The supremum over finite partitions is attained at the atom partition:
    splitting a block into atoms can only raise ``sum ||m(A_i)||`` by the
    triangle inequality.
    """
    total = Fraction(0)
    for mat in m.values:
        total += opnorm(mat, m.norm_x, m.norm_y)
    return total


def _exact_int_norm(vec, denom: int, tag: NormTag):
    """Exact norm of the rational vector ``vec / denom`` (``vec`` integer)."""
    vec = [int(x) for x in vec]
    if tag.kind == "op":
        return vector_norm([Fraction(x, denom) for x in vec], tag)
    if tag.dim == 1 or tag.kind == "l1":
        return Fraction(sum(abs(x) for x in vec), denom)
    if tag.kind == "linf":
        return Fraction(max(abs(x) for x in vec), denom)
    return exact_sqrt(Fraction(sum(x * x for x in vec), denom * denom))


def _int_scores(block: np.ndarray, tag: NormTag):
    """Exact integer scores ordering rows like their ``tag`` norms (None for op tags)."""
    if tag.kind == "op":
        return None
    if tag.dim == 1 or tag.kind == "l1":
        return np.abs(block).sum(axis=1)
    if tag.kind == "linf":
        return np.abs(block).max(axis=1)
    return (block * block).sum(axis=1)


def _enumerate_choices(choices: list[np.ndarray], denom: int, tag: NormTag):
    """Maximise ``||sum_b c_b||`` over one row ``c_b`` from each ``choices[b]``.

    Rows are integer vectors (true value = row / denom).  Tuples are scanned
    in lexicographic order of choice indices and the first maximiser wins.
    Returns ``(indices, exact value)``.
    """
    dim = choices[0].shape[1]
    dtype = object if any(c.dtype == object for c in choices) else np.int64
    # split into high atoms (looped) and low atoms (tabulated, <= _CHUNK rows)
    split = len(choices)
    size = 1
    while split > 0 and size * len(choices[split - 1]) <= _CHUNK:
        split -= 1
        size *= len(choices[split])
    low = np.zeros((1, dim), dtype=dtype)
    for c in reversed(choices[split:]):
        low = (c.astype(dtype)[:, None, :] + low[None, :, :]).reshape(-1, dim)
    low_shape = [len(c) for c in choices[split:]]

    best_score = None
    best = None
    for combo in itertools.product(*(range(len(c)) for c in choices[:split])):
        offset = np.zeros(dim, dtype=dtype)
        for b, k in enumerate(combo):
            offset = offset + choices[b][k].astype(dtype)
        block = low + offset
        scores = _int_scores(block, tag)
        if scores is None:
            approx = _float_norms(block.astype(float) / denom, tag)
            top = approx.max()
            cand = np.flatnonzero(approx >= top - L2_TOL * max(1.0, top))
            local_best, local_idx = None, None
            for i in cand:
                val = _exact_int_norm(block[i], denom, tag)
                if local_best is None or val > local_best:
                    local_best, local_idx = val, int(i)
            score, idx = local_best, local_idx
        else:
            idx = int(np.argmax(scores))
            score = int(scores[idx])
        if best_score is None or score > best_score:
            best_score = score
            low_idx = np.unravel_index(idx, low_shape) if low_shape else ()
            best = (combo + tuple(int(i) for i in low_idx), block[idx])
    indices, vec = best
    return indices, _exact_int_norm(vec, denom, tag)


def _nonzero_atoms(m: VectorMeasure) -> list[int]:
    return [b for b, mat in enumerate(m.values) if any(x for row in mat for x in row)]


def _sign_enumeration(vectors: list, tag: NormTag):
    """Exact ``max_eps ||sum eps_b v_b||`` with ``eps_0 = +1``; returns ``(eps, value)``."""
    ints, denom = scale_to_int(vectors)
    choices = [ints[0:1]] + [np.stack([ints[b], -ints[b]]) for b in range(1, len(vectors))]
    indices, value = _enumerate_choices(choices, denom, tag)
    eps = [1] + [1 if k == 0 else -1 for k in indices[1:]]
    return eps, value


def _dual_vertices(tag: NormTag) -> np.ndarray | None:
    """Vertices of the dual unit ball (up to sign), or None if not polyhedral."""
    if tag.kind == "op":
        return None
    if tag.dim == 1:
        return np.ones((1, 1), dtype=np.int64)
    if tag.kind == "linf":
        return np.eye(tag.dim, dtype=np.int64)
    if tag.kind == "l1":
        return _sign_vertices(tag.dim, half=True)
    return None


def _dual_vertex_semivariation(vectors: list, tag: NormTag, verts: np.ndarray):
    """``max_{y* vertex} sum_b |<y*, v_b>|``; returns ``(eps, value, y*)``."""
    ints, denom = scale_to_int(vectors)
    if ints.dtype == object:
        verts = verts.astype(object)
    pairings = verts @ ints.T  # (vertices, atoms)
    scores = np.abs(pairings).sum(axis=1)
    k = int(np.argmax(scores))
    eps = [1 if x >= 0 else -1 for x in pairings[k]]
    return eps, Fraction(int(scores[k]), denom), [int(x) for x in verts[k]]


def _sign_local_search(vectors: list, tag: NormTag, restarts: int, seed: int):
    """Greedy first-improvement sign flips from several starts; returns ``(eps, exact value)``."""
    ints, denom = scale_to_int(vectors)
    V = np.array([[float(x) for x in v] for v in vectors])
    M = len(vectors)
    rng = np.random.default_rng(seed)
    starts = [np.ones(M)]
    if M:
        lead = V[np.argmax(_float_norms(V, tag))]
        starts.append(np.where(V @ lead >= 0, 1.0, -1.0))
    while len(starts) < restarts:
        d = rng.standard_normal(V.shape[1])
        starts.append(np.where(V @ d >= 0, 1.0, -1.0))
    best_eps, best_val = None, None
    for eps in starts[:max(restarts, 1)]:
        S = eps @ V
        cur = float(_float_norms(S[None, :], tag)[0])
        for _ in range(50 * M + 50):
            cand = S[None, :] - 2.0 * eps[:, None] * V
            vals = _float_norms(cand, tag)
            better = np.flatnonzero(vals > cur + 1e-12 * max(1.0, cur))
            if better.size == 0:
                break
            b = int(better[0])
            S = cand[b]
            cur = float(vals[b])
            eps[b] = -eps[b]
        signs = eps.astype(np.int64)
        if signs[0] < 0:
            signs = -signs
        vec = signs.astype(ints.dtype) @ ints
        val = _exact_int_norm(vec, denom, tag)
        if best_val is None or val > best_val:
            best_val, best_eps = val, [int(s) for s in signs]
    return best_eps, best_val


def scalar_semivariation(
    m: VectorMeasure,
    enum_cap: int = DEFAULT_ENUM_CAP,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = 0,
) -> BoundCertificate:
    """``||m||(Omega) = max_eps ||sum_b eps_b m(b)||`` for an ``R^q``-valued measure.

    Exact by sign enumeration when ``2**(M-1) <= enum_cap`` (``M`` counts
    nonzero atoms); otherwise exact by enumerating the dual-ball vertices when
    ``norm_y`` is polyhedral and the work fits the cap; otherwise a bracket
    from local search (lower) and the variation (upper).  The witness is the
    maximising sign pattern over all atoms.
    """
    if m.p != 1:
        raise DomainError("scalar semivariation needs an X-valued measure (p == 1)")
    tag = m.norm_y
    vecs = m.vectors()
    support = _nonzero_atoms(m)
    full = [1] * m.alg.size
    if not support:
        return BoundCertificate.closed(Fraction(0), "enumeration", witness=full)
    sub = [vecs[b] for b in support]

    def widen(eps):
        out = list(full)
        for b, e in zip(support, eps):
            out[b] = e
        return out

    if 2 ** (len(sub) - 1) <= enum_cap:
        eps, value = _sign_enumeration(sub, tag)
        return BoundCertificate.closed(value, "enumeration", witness=widen(eps))
    verts = _dual_vertices(tag)
    if verts is not None and len(verts) * len(sub) <= enum_cap:
        eps, value, _ = _dual_vertex_semivariation(sub, tag, verts)
        return BoundCertificate.closed(value, "enumeration", witness=widen(eps))
    eps, lower = _sign_local_search(sub, tag, restarts, seed)
    upper = variation(m)
    method = "triangle-bound" if lower == upper else "local-search"
    return BoundCertificate(lower, upper, method, witness=widen(eps))


def _domain_vertices(tag: NormTag, half: bool) -> np.ndarray:
    """Vertices of the closed unit ball of a polyhedral norm, lexicographically ordered."""
    if tag.dim == 1:
        return np.array([[1]] if half else [[1], [-1]], dtype=np.int64)
    if tag.kind == "linf":
        return _sign_vertices(tag.dim, half)
    eye = np.eye(tag.dim, dtype=np.int64)
    if half:
        return eye
    return np.stack([s * eye[j] for j in range(tag.dim) for s in (1, -1)])


def _domain_vertex_count(tag: NormTag) -> int:
    if tag.dim == 1:
        return 2
    return 2 ** tag.dim if tag.kind == "linf" else 2 * tag.dim


def _coordinate_ascent(m: VectorMeasure, support: list[int], restarts: int, seed: int):
    """Block coordinate ascent over ``x_b in B_X``; returns ``(x tuple, value)``.

    Each step fixes a norming functional ``y*`` of the current sum and sets
    ``x_b`` to the maximiser of ``<m(b)^T y*, x>`` over ``B_X``, which never
    lowers ``||sum_b m(b) x_b||``.
    """
    nx, ny = m.norm_x, m.norm_y
    A = np.array([[[float(x) for x in row] for row in m.values[b]] for b in support])
    M, q, p = A.shape
    rng = np.random.default_rng(seed)

    def best_x(g):
        if nx.kind == "l2" and nx.dim > 1:
            n = np.linalg.norm(g)
            return g / n if n > 0 else np.eye(p)[0]
        if nx.kind == "linf" or nx.dim == 1:
            return np.where(g >= 0, 1.0, -1.0)
        j = int(np.argmax(np.abs(g)))
        x = np.zeros(p)
        x[j] = 1.0 if g[j] >= 0 else -1.0
        return x

    def norming(S):
        if ny.kind == "l2" and ny.dim > 1:
            n = np.linalg.norm(S)
            return S / n if n > 0 else rng.standard_normal(q)
        if ny.kind == "l1" or ny.dim == 1:
            return np.where(S >= 0, 1.0, -1.0)
        j = int(np.argmax(np.abs(S)))
        y = np.zeros(q)
        y[j] = 1.0 if S[j] >= 0 else -1.0
        return y

    def value(X):
        return float(_float_norms(np.einsum("bqp,bp->q", A, X)[None, :], ny)[0])

    best_X, best_val = None, -1.0
    for r in range(max(restarts, 1)):
        X = np.array([best_x(rng.standard_normal(p)) for _ in range(M)])
        if r == 0:
            y0 = rng.standard_normal(q)
            X = np.array([best_x(A[b].T @ y0) for b in range(M)])
        cur = value(X)
        for _ in range(200):
            improved = False
            for b in range(M):
                S = np.einsum("bqp,bp->q", A, X)
                xb = best_x(A[b].T @ norming(S))
                old = X[b].copy()
                X[b] = xb
                new = value(X)
                if new > cur + 1e-12 * max(1.0, cur):
                    cur, improved = new, True
                elif new < cur:
                    X[b] = old
            if not improved:
                break
        if cur > best_val:
            best_val, best_X = cur, X.copy()
    return best_X, best_val


def _exact_tuple_value(m: VectorMeasure, support: list[int], X) -> Any:
    """``||sum_b m(b) x_b||`` for integer vertex tags ``x_b`` (exact)."""
    total = [Fraction(0)] * m.q
    for b, x in zip(support, X):
        for i, row in enumerate(m.values[b]):
            total[i] += sum((a * int(t) for a, t in zip(row, x)), Fraction(0))
    return vector_norm(total, m.norm_y)


def operator_semivariation(
    m: VectorMeasure,
    enum_cap: int = DEFAULT_ENUM_CAP,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = 0,
) -> BoundCertificate:
    """``m~(Omega) = sup {||sum_b m(b) x_b|| : x_b in B_X}``.

    For ``p == 1`` the ball ``B_X`` is ``[-1, 1]`` and this is the scalar
    semivariation.  Otherwise exact routes are tried in order: vertex tuples
    of a polyhedral ``B_X`` (witness: the ``x_b``), then vertices of a
    polyhedral ``B_Y*`` (witness: ``y*``); each only if its work fits
    ``enum_cap``.  Failing both, coordinate ascent gives the lower bound and
    ``sum_b ||m(b)||`` the upper bound.
    """
    if m.p == 1:
        return scalar_semivariation(m, enum_cap=enum_cap, restarts=restarts, seed=seed)
    support = _nonzero_atoms(m)
    if not support:
        return BoundCertificate.closed(Fraction(0), "enumeration")
    M = len(support)
    nx, ny = m.norm_x, m.norm_y

    if nx.polyhedral and _domain_vertex_count(nx) ** M // 2 <= enum_cap:
        full, half = _domain_vertices(nx, False), _domain_vertices(nx, True)
        ints, denom = scale_to_int([tuple(x for row in m.values[b] for x in row) for b in support])
        vdtype = object if ints.dtype == object else np.int64
        choices = [
            (half if k == 0 else full).astype(vdtype) @ ints[k].reshape(m.q, m.p).T
            for k in range(M)
        ]
        indices, value = _enumerate_choices(choices, denom, ny)
        tags = [(half if k == 0 else full)[i].tolist() for k, i in enumerate(indices)]
        witness = {"x": {str(b): t for b, t in zip(support, tags)}}
        return BoundCertificate.closed(value, "enumeration", witness=witness)

    verts = _dual_vertices(ny)
    if verts is not None and len(verts) * M <= enum_cap:
        dual_x = nx.dual()
        best, best_y = None, None
        for y in verts:
            total = Fraction(0)
            for b in support:
                mat = m.values[b]
                row = [sum((int(y[i]) * mat[i][j] for i in range(m.q)), Fraction(0)) for j in range(m.p)]
                total += vector_norm(row, dual_x)
            if best is None or total > best:
                best, best_y = total, [int(t) for t in y]
        return BoundCertificate.closed(best, "enumeration", witness={"ystar": best_y})

    X, approx = _coordinate_ascent(m, support, restarts, seed)
    if nx.polyhedral:
        lower = _exact_tuple_value(m, support, np.rint(X).astype(np.int64))
    else:
        lower = approx
    upper = variation(m)
    method = "triangle-bound" if lower == upper else "local-search"
    return BoundCertificate(lower, upper, method, witness={"x": {str(b): list(map(float, x)) for b, x in zip(support, X)}})


def pettis_norm(
    f: SimpleFunction,
    mu: ScalarMeasure,
    enum_cap: int = DEFAULT_ENUM_CAP,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = 0,
) -> BoundCertificate:
    """``sup_{||x*|| <= 1} int |x* f| dmu``: the scalar semivariation of ``B -> int_B f dmu``."""
    return scalar_semivariation(density_to_measure(f, mu), enum_cap=enum_cap, restarts=restarts, seed=seed)


def l1_norm(f: SimpleFunction, mu: ScalarMeasure):
    """Bochner norm ``int ||f|| dmu = sum_b mu(b) ||f(b)||``.

    Summed as ``sum_b ||mu(b) f(b)||``, the variation of ``B -> int_B f dmu``,
    so that l2 values round identically on both sides of that identity.
    """
    check_same_algebra(f.alg, mu.alg)
    return variation(density_to_measure(f, mu))


def operator_norm_lower_bound(m: VectorMeasure, trials: int = 256, seed: int = 0):
    """Largest ``||T(f)|| = ||int f dm||`` found over simple ``f`` with values in ``B_X``.

    When the vertex tuples of a polyhedral ``B_X`` number at most ``trials``
    they are all tried (exact, and equal to the operator semivariation);
    otherwise ``trials`` random tuples mixing vertices and random unit
    vectors are drawn.
    """
    if trials < 1:
        raise DomainError("trials must be >= 1")
    support = _nonzero_atoms(m)
    if not support:
        return Fraction(0)
    nx, ny = m.norm_x, m.norm_y
    M = len(support)
    if nx.polyhedral and _domain_vertex_count(nx) ** M <= trials:
        verts = _domain_vertices(nx, False)
        best = Fraction(0)
        for combo in itertools.product(range(len(verts)), repeat=M):
            val = _exact_tuple_value(m, support, [verts[k] for k in combo])
            if val > best:
                best = val
        return best
    A = np.array([[[float(x) for x in row] for row in m.values[b]] for b in support])
    rng = np.random.default_rng(seed)
    verts = _domain_vertices(nx, False).astype(float) if nx.polyhedral else None
    best = 0.0
    for _ in range(trials):
        if verts is not None and rng.random() < 0.5:
            X = verts[rng.integers(len(verts), size=M)]
        else:
            X = rng.standard_normal((M, m.p))
            norms = _float_norms(X, nx)
            X = X / np.where(norms > 0, norms, 1.0)[:, None]
        val = float(_float_norms(np.einsum("bqp,bp->q", A, X)[None, :], ny)[0])
        best = max(best, val)
    return best
