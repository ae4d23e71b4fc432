"""Finite measurable spaces, measurable sets and partitions.

Atoms are addressed by their 0-based position in ``FiniteAlgebra.atoms``.
A dyadic algebra of level ``n`` has ``2**n`` atoms; atom ``i`` is the
half-open interval ``[i/2**n, (i+1)/2**n)`` of ``[0, 1)``.

Partitions are ordered by refinement: ``fine`` refines ``coarse`` when every
block of ``fine`` sits inside a block of ``coarse``.  This order directs every
conditional-expectation net in the package.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .exceptions import DomainError, ResourceError

__all__ = [
    "MAX_DYADIC_LEVEL",
    "FiniteAlgebra",
    "MeasurableSet",
    "Partition",
    "make_algebra",
    "make_dyadic_algebra",
    "atom_interval",
    "dyadic_partition",
    "dyadic_chain",
    "finest_partition",
    "trivial_partition",
    "partition_from_labels",
    "is_refinement",
    "common_refinement",
]

MAX_DYADIC_LEVEL = 24


@dataclass(frozen=True)
class FiniteAlgebra:
    """The power set of a finite, ordered list of atoms."""

    atoms: tuple
    dyadic_level: int | None = None

    def __post_init__(self):
        if len(self.atoms) < 1:
            raise DomainError("an algebra needs at least one atom")
        if len(set(self.atoms)) != len(self.atoms):
            raise DomainError("atom identifiers must be distinct")
        if self.dyadic_level is not None and len(self.atoms) != 2 ** self.dyadic_level:
            raise DomainError(
                f"dyadic level {self.dyadic_level} requires {2 ** self.dyadic_level} atoms, "
                f"got {len(self.atoms)}"
            )

    @property
    def size(self) -> int:
        return len(self.atoms)

    @property
    def is_dyadic(self) -> bool:
        return self.dyadic_level is not None

    def omega(self) -> "MeasurableSet":
        return MeasurableSet(self, frozenset(range(self.size)))

    def empty(self) -> "MeasurableSet":
        return MeasurableSet(self, frozenset())

    def subset(self, indices: Iterable[int]) -> "MeasurableSet":
        return MeasurableSet(self, frozenset(indices))

    def atom(self, i: int) -> "MeasurableSet":
        return MeasurableSet(self, frozenset((i,)))


def same_algebra(a: FiniteAlgebra, b: FiniteAlgebra) -> bool:
    return a is b or a == b


def check_same_algebra(*algs: FiniteAlgebra) -> FiniteAlgebra:
    first = algs[0]
    for other in algs[1:]:
        if not same_algebra(first, other):
            raise DomainError("objects live on different algebras")
    return first


def make_algebra(atoms: Sequence) -> FiniteAlgebra:
    """Plain (non-dyadic) algebra over the given atom identifiers."""
    return FiniteAlgebra(tuple(atoms))


def make_dyadic_algebra(n: int, cap: int = MAX_DYADIC_LEVEL) -> FiniteAlgebra:
    """Level-``n`` dyadic algebra on [0, 1) with ``2**n`` atoms."""
    if n < 0:
        raise DomainError(f"dyadic level must be >= 0, got {n}")
    if n > cap:
        raise ResourceError(f"dyadic level {n} exceeds the cap {cap}")
    return FiniteAlgebra(tuple(range(2 ** n)), dyadic_level=n)


def atom_interval(alg: FiniteAlgebra, i: int) -> tuple[Fraction, Fraction]:
    """Endpoints ``(a, b)`` of the half-open interval ``[a, b)`` carried by atom ``i``."""
    if not alg.is_dyadic:
        raise DomainError("algebra carries no dyadic metadata")
    if not 0 <= i < alg.size:
        raise DomainError(f"atom index {i} out of range")
    width = Fraction(1, alg.size)
    return i * width, (i + 1) * width


@dataclass(frozen=True)
class MeasurableSet:
    """A set of atoms of one algebra; equality is extensional."""

    alg: FiniteAlgebra = field(compare=False)
    members: frozenset

    def __post_init__(self):
        if not isinstance(self.members, frozenset):
            object.__setattr__(self, "members", frozenset(self.members))
        size = self.alg.size
        for i in self.members:
            if not 0 <= i < size:
                raise DomainError(f"atom index {i} outside [0, {size})")

    def __eq__(self, other):
        if not isinstance(other, MeasurableSet):
            return NotImplemented
        return same_algebra(self.alg, other.alg) and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    def __contains__(self, i):
        return i in self.members

    def _other(self, other: "MeasurableSet") -> frozenset:
        check_same_algebra(self.alg, other.alg)
        return other.members

    def __or__(self, other):
        return MeasurableSet(self.alg, self.members | self._other(other))

    def __and__(self, other):
        return MeasurableSet(self.alg, self.members & self._other(other))

    def __sub__(self, other):
        return MeasurableSet(self.alg, self.members - self._other(other))

    def __xor__(self, other):
        return MeasurableSet(self.alg, self.members ^ self._other(other))

    def complement(self) -> "MeasurableSet":
        return MeasurableSet(self.alg, frozenset(range(self.alg.size)) - self.members)

    def issubset(self, other: "MeasurableSet") -> bool:
        return self.members <= self._other(other)

    def __repr__(self):
        return f"MeasurableSet({sorted(self.members)})"


class Partition:
    """Disjoint cover of an algebra's atoms by nonempty blocks.

    Blocks are stored in canonical order (by smallest atom index), so two
    partitions with the same blocks compare equal.  ``labels[i]`` is the
    index of the block holding atom ``i``.
    """

    __slots__ = ("alg", "blocks", "labels")

    def __init__(self, alg: FiniteAlgebra, blocks: Iterable[Iterable[int]]):
        sets = []
        labels = [-1] * alg.size
        for block in blocks:
            members = block.members if isinstance(block, MeasurableSet) else frozenset(block)
            if not members:
                raise DomainError("partition blocks must be nonempty")
            sets.append(members)
        sets.sort(key=min)
        for j, members in enumerate(sets):
            for i in members:
                if not 0 <= i < alg.size:
                    raise DomainError(f"atom index {i} outside [0, {alg.size})")
                if labels[i] != -1:
                    raise DomainError(f"atom {i} lies in two blocks")
                labels[i] = j
        if -1 in labels:
            raise DomainError(f"atom {labels.index(-1)} is not covered by any block")
        self.alg = alg
        self.blocks = tuple(MeasurableSet(alg, s) for s in sets)
        self.labels = tuple(labels)

    @classmethod
    def _from_labels(cls, alg: FiniteAlgebra, labels: Sequence[int]) -> "Partition":
        # relabel so block order is canonical (first appearance == smallest atom)
        remap: dict[int, int] = {}
        canon = []
        groups: list[list[int]] = []
        for i, lab in enumerate(labels):
            j = remap.get(lab)
            if j is None:
                j = remap[lab] = len(groups)
                groups.append([])
            groups[j].append(i)
            canon.append(j)
        obj = cls.__new__(cls)
        obj.alg = alg
        obj.blocks = tuple(MeasurableSet(alg, frozenset(g)) for g in groups)
        obj.labels = tuple(canon)
        return obj

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return same_algebra(self.alg, other.alg) and self.labels == other.labels

    def __hash__(self):
        return hash(self.labels)

    def block_members(self) -> list[list[int]]:
        """Sorted atom indices of each block."""
        out: list[list[int]] = [[] for _ in self.blocks]
        for i, j in enumerate(self.labels):
            out[j].append(i)
        return out

    def __repr__(self):
        return f"Partition({self.block_members()})"


def partition_from_labels(alg: FiniteAlgebra, labels: Sequence[int]) -> Partition:
    """Partition whose blocks are the level sets of ``labels`` (one label per atom)."""
    if len(labels) != alg.size:
        raise DomainError(f"expected {alg.size} labels, got {len(labels)}")
    return Partition._from_labels(alg, labels)


def finest_partition(alg: FiniteAlgebra) -> Partition:
    return Partition._from_labels(alg, range(alg.size))


def trivial_partition(alg: FiniteAlgebra) -> Partition:
    return Partition._from_labels(alg, [0] * alg.size)


def dyadic_partition(alg: FiniteAlgebra, k: int) -> Partition:
    """Partition of a level-``n`` dyadic algebra into the ``2**k`` level-``k`` intervals."""
    if not alg.is_dyadic:
        raise DomainError("dyadic_partition needs an algebra with dyadic metadata")
    n = alg.dyadic_level
    if not 0 <= k <= n:
        raise DomainError(f"partition level {k} outside [0, {n}]")
    shift = n - k
    return Partition._from_labels(alg, [i >> shift for i in range(alg.size)])


def dyadic_chain(alg: FiniteAlgebra, levels: Iterable[int] | None = None) -> list[Partition]:
    """Dyadic partitions at the given levels (default ``0..n``)."""
    if levels is None:
        if not alg.is_dyadic:
            raise DomainError("dyadic_chain needs an algebra with dyadic metadata")
        levels = range(alg.dyadic_level + 1)
    return [dyadic_partition(alg, k) for k in levels]


def is_refinement(fine: Partition, coarse: Partition) -> bool:
    """True iff every block of ``fine`` lies inside a single block of ``coarse``."""
    check_same_algebra(fine.alg, coarse.alg)
    seen: dict[int, int] = {}
    for fl, cl in zip(fine.labels, coarse.labels):
        prev = seen.setdefault(fl, cl)
        if prev != cl:
            return False
    return True


def common_refinement(p1: Partition, p2: Partition) -> Partition:
    """Coarsest partition refining both: the nonempty pairwise block intersections."""
    alg = check_same_algebra(p1.alg, p2.alg)
    return Partition._from_labels(alg, list(zip(p1.labels, p2.labels)))
