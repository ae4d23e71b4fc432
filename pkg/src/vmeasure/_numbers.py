"""Number helpers: exact square roots, integer scaling, text formatting."""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

_INT64_SAFE = 2 ** 62


def exact_sqrt(x: Fraction):
    """``sqrt(x)`` as a Fraction when ``x`` is a rational square, else a float."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("square root of a negative number")
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return math.sqrt(n) / math.sqrt(d) if n < 2 ** 1000 and d < 2 ** 1000 else math.sqrt(float(x))


def common_denominator(values) -> int:
    d = 1
    for x in values:
        den = x.denominator
        if d % den:
            d = d * den // math.gcd(d, den)
    return d


def scale_to_int(rows, denom: int | None = None):
    """Scale rational rows by their common denominator ``D``.

    Returns ``(array, D)`` where ``array`` holds the integers ``D * x``, as
    int64 when entries are small enough for the kernels' sums, otherwise as a
    Python-int object array.
    """
    rows = [tuple(r) for r in rows]
    if denom is None:
        denom = common_denominator(x for r in rows for x in r)
    ints = [[int(x * denom) for x in r] for r in rows]
    width = len(rows[0]) if rows else 0
    bound = sum(max((abs(v) for v in r), default=0) for r in ints) * max(width, 1)
    if bound * bound < _INT64_SAFE:
        arr = np.array(ints, dtype=np.int64).reshape(len(rows), width)
    else:
        arr = np.empty((len(rows), width), dtype=object)
        for i, r in enumerate(ints):
            for j, v in enumerate(r):
                arr[i, j] = v
    return arr, denom


def number_text(x, digits: int = 12) -> str:
    """Exact rationals as ``p/q``; floats with ``digits`` significant digits."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), f".{digits}g")


def json_number(x, digits: int = 12):
    """JSON value for a norm: rationals become ``"p/q"`` strings, floats stay numbers."""
    if x is None:
        return None
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return float(format(float(x), f".{digits}g"))
