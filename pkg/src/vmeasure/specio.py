"""Measure-spec JSON files.

A spec describes a measurable space, a control measure ``mu`` and a vector
measure, given either by atom matrices or by a density w.r.t. ``mu``::

    {
      "space": {"dyadic_level": 2},          # or {"atoms": ["a", "b", ...]}
      "dims": {"p": 1, "q": 2},
      "norm_x": "l2",
      "norm_y": "l2",
      "mu": ["1/4", "1/4", "1/4", "1/4"],
      "measure": {"atom_values": [[["1"], ["0"]], ...]}   # q x p matrix per atom
                                                         # or {"density": [["1", "0"], ...]}
    }

Rationals are ``"p/q"`` strings (plain JSON integers are accepted on input).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .exceptions import DomainError
from .measure import (
    NORM_KINDS,
    ScalarMeasure,
    SimpleFunction,
    VectorMeasure,
    density_to_measure,
)
from .space import FiniteAlgebra, make_algebra, make_dyadic_algebra

__all__ = ["SpecError", "MeasureSpec", "parse_spec", "emit_spec", "load_spec", "spec_from_measure"]


class SpecError(DomainError):
    """Malformed measure spec; the message starts with the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def _rational(x, path: str) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise SpecError(path, f"expected a rational string like \"p/q\", got {x!r}")
    try:
        return Fraction(x.strip() if isinstance(x, str) else x)
    except (ValueError, ZeroDivisionError):
        raise SpecError(path, f"cannot parse rational {x!r}") from None


def _list(x, path: str, length: int | None = None) -> list:
    if not isinstance(x, list):
        raise SpecError(path, f"expected a list, got {type(x).__name__}")
    if length is not None and len(x) != length:
        raise SpecError(path, f"expected {length} entries, got {len(x)}")
    return x


def _field(obj: dict, key: str, path: str):
    if not isinstance(obj, dict):
        raise SpecError(path or "<root>", "expected a JSON object")
    if key not in obj:
        raise SpecError(f"{path}.{key}" if path else key, "missing field")
    return obj[key]


@dataclass(frozen=True)
class MeasureSpec:
    dyadic_level: int | None
    atoms: tuple | None
    p: int
    q: int
    norm_x: str
    norm_y: str
    mu: tuple
    atom_values: tuple | None = None
    density: tuple | None = None

    @property
    def size(self) -> int:
        return 2 ** self.dyadic_level if self.dyadic_level is not None else len(self.atoms)

    def algebra(self) -> FiniteAlgebra:
        if self.dyadic_level is not None:
            return make_dyadic_algebra(self.dyadic_level)
        return make_algebra(self.atoms)

    def control(self, alg: FiniteAlgebra | None = None) -> ScalarMeasure:
        return ScalarMeasure(alg or self.algebra(), self.mu)

    def density_function(self, alg: FiniteAlgebra | None = None) -> SimpleFunction | None:
        if self.density is None:
            return None
        return SimpleFunction(alg or self.algebra(), self.q, self.norm_y, self.density)

    def build(self) -> tuple[VectorMeasure, ScalarMeasure]:
        """The ``(measure, control measure)`` pair this spec describes."""
        alg = self.algebra()
        mu = self.control(alg)
        if self.density is not None:
            m = density_to_measure(self.density_function(alg), mu)
            return VectorMeasure(alg, 1, self.q, self.norm_x, self.norm_y, m.values), mu
        return VectorMeasure(alg, self.p, self.q, self.norm_x, self.norm_y, self.atom_values), mu

    def to_dict(self) -> dict:
        space = {"dyadic_level": self.dyadic_level} if self.dyadic_level is not None \
            else {"atoms": list(self.atoms)}
        if self.density is not None:
            measure = {"density": [[str(x) for x in v] for v in self.density]}
        else:
            measure = {"atom_values": [[[str(x) for x in row] for row in mat] for mat in self.atom_values]}
        return {
            "space": space,
            "dims": {"p": self.p, "q": self.q},
            "norm_x": self.norm_x,
            "norm_y": self.norm_y,
            "mu": [str(x) for x in self.mu],
            "measure": measure,
        }


def _norm_name(x, path: str) -> str:
    if x not in NORM_KINDS:
        raise SpecError(path, f"expected one of {', '.join(NORM_KINDS)}, got {x!r}")
    return x


def _positive_int(x, path: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int) or x < 1:
        raise SpecError(path, f"expected a positive integer, got {x!r}")
    return x


def parse_spec(source: str | bytes | dict) -> MeasureSpec:
    """Validate and parse a measure spec (JSON text or an already decoded dict)."""
    if isinstance(source, (str, bytes)):
        try:
            obj = json.loads(source)
        except json.JSONDecodeError as exc:
            raise SpecError("<root>", f"invalid JSON ({exc})") from None
    else:
        obj = source
    if not isinstance(obj, dict):
        raise SpecError("<root>", "expected a JSON object")

    space = _field(obj, "space", "")
    if not isinstance(space, dict):
        raise SpecError("space", "expected a JSON object")
    level = atoms = None
    if "dyadic_level" in space:
        level = space["dyadic_level"]
        if isinstance(level, bool) or not isinstance(level, int) or not 0 <= level <= 24:
            raise SpecError("space.dyadic_level", f"expected an integer in [0, 24], got {level!r}")
        M = 2 ** level
    elif "atoms" in space:
        atoms = tuple(_list(space["atoms"], "space.atoms"))
        if not atoms:
            raise SpecError("space.atoms", "need at least one atom")
        if len(set(atoms)) != len(atoms):
            raise SpecError("space.atoms", "atom names must be distinct")
        for i, a in enumerate(atoms):
            if not isinstance(a, (str, int)) or isinstance(a, bool):
                raise SpecError(f"space.atoms[{i}]", "atom names must be strings or integers")
        M = len(atoms)
    else:
        raise SpecError("space", "expected 'dyadic_level' or 'atoms'")

    dims = _field(obj, "dims", "")
    p = _positive_int(_field(dims, "p", "dims"), "dims.p")
    q = _positive_int(_field(dims, "q", "dims"), "dims.q")
    norm_x = _norm_name(_field(obj, "norm_x", ""), "norm_x")
    norm_y = _norm_name(_field(obj, "norm_y", ""), "norm_y")

    mu = []
    for i, x in enumerate(_list(_field(obj, "mu", ""), "mu", M)):
        w = _rational(x, f"mu[{i}]")
        if w < 0:
            raise SpecError(f"mu[{i}]", f"weights must be >= 0, got {w}")
        mu.append(w)

    measure = _field(obj, "measure", "")
    if not isinstance(measure, dict):
        raise SpecError("measure", "expected a JSON object")
    atom_values = density = None
    if "atom_values" in measure:
        mats = []
        for b, mat in enumerate(_list(measure["atom_values"], "measure.atom_values", M)):
            path = f"measure.atom_values[{b}]"
            rows = _list(mat, path, q)
            mats.append(tuple(
                tuple(_rational(x, f"{path}[{i}][{j}]") for j, x in enumerate(_list(row, f"{path}[{i}]", p)))
                for i, row in enumerate(rows)
            ))
        atom_values = tuple(mats)
    elif "density" in measure:
        if p != 1:
            raise SpecError("measure.density", "a density spec needs dims.p == 1")
        vecs = []
        for b, v in enumerate(_list(measure["density"], "measure.density", M)):
            path = f"measure.density[{b}]"
            vecs.append(tuple(_rational(x, f"{path}[{i}]") for i, x in enumerate(_list(v, path, q))))
        density = tuple(vecs)
    else:
        raise SpecError("measure", "expected 'atom_values' or 'density'")
    return MeasureSpec(level, atoms, p, q, norm_x, norm_y, tuple(mu), atom_values, density)


def emit_spec(spec: MeasureSpec) -> str:
    """Canonical JSON text; ``emit_spec(parse_spec(emit_spec(s))) == emit_spec(s)``."""
    return json.dumps(spec.to_dict(), indent=2) + "\n"


def load_spec(path: str) -> MeasureSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SpecError("<file>", f"cannot read {path}: {exc.strerror}") from None
    return parse_spec(text)


def spec_from_measure(m: VectorMeasure, mu: ScalarMeasure) -> MeasureSpec:
    """Atom-value spec for ``(m, mu)``; norm tags must be plain ``l1``/``l2``/``linf``."""
    alg = m.alg
    if m.norm_x.kind == "op" or m.norm_y.kind == "op":
        raise DomainError("operator-norm tags cannot be written to a measure spec")
    level = alg.dyadic_level
    atoms = None if level is not None else tuple(alg.atoms)
    return MeasureSpec(level, atoms, m.p, m.q, m.norm_x.kind, m.norm_y.kind, mu.weights, m.values)
