"""Finite posets, subsets and the upper/lower-bound operator calculus.

Elements are identified by their position in the label list; subsets are
bitmasks over those positions.  The two derived operators

    A^u  =  intersection of the principal up-sets of the members of A
    A^l  =  intersection of the principal down-sets of the members of A

use the convention that an intersection over an empty family is the full
carrier, so ``A = {}`` gives ``A^u = A^l = X``.

All values are immutable after construction and every operation is a pure
function, so everything here is safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence, Union

from .errors import (
    CycleDetected,
    DuplicateLabel,
    NotAPartialOrder,
    ParentMismatch,
    ResourceCap,
    UnknownElement,
)

DEFAULT_MAX_ARITY = 20


def _mask_members(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@dataclass(frozen=True)
class CarrierSet:
    """A bare, unordered carrier: distinct labels and nothing else."""

    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.labels)) != len(self.labels):
            raise DuplicateLabel("carrier labels must be distinct")

    @property
    def arity(self) -> int:
        return len(self.labels)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.labels)) - 1

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownElement(f"unknown element {label!r}") from None

    @cached_property
    def _index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.labels)}


@dataclass(frozen=True)
class Poset:
    """A finite partial order.

    ``up_masks[i]`` is the bitmask of ``{j : i <= j}`` (the principal
    up-set of element i, itself included).  The three poset axioms are
    re-validated on construction.
    """

    labels: tuple[str, ...]
    up_masks: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise DuplicateLabel("poset labels must be distinct")
        if len(self.up_masks) != n:
            raise NotAPartialOrder("relation size does not match carrier")
        full = (1 << n) - 1
        for i, row in enumerate(self.up_masks):
            if row & ~full:
                raise NotAPartialOrder("relation references unknown elements")
            if not (row >> i) & 1:
                raise NotAPartialOrder(f"relation is not reflexive at {self.labels[i]!r}")
        for i in range(n):
            for j in _mask_members(self.up_masks[i]):
                if i != j and (self.up_masks[j] >> i) & 1:
                    raise NotAPartialOrder(
                        f"relation is not antisymmetric on "
                        f"{self.labels[i]!r}, {self.labels[j]!r}"
                    )
                if self.up_masks[j] & ~self.up_masks[i]:
                    raise NotAPartialOrder(
                        f"relation is not transitive through {self.labels[j]!r}"
                    )

    @property
    def arity(self) -> int:
        return len(self.labels)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.labels)) - 1

    @cached_property
    def down_masks(self) -> tuple[int, ...]:
        n = len(self.labels)
        cols = [0] * n
        for i in range(n):
            row = self.up_masks[i]
            for j in _mask_members(row):
                cols[j] |= 1 << i
        return tuple(cols)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.labels)}

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownElement(f"unknown element {label!r}") from None

    def leq(self, a: str, b: str) -> bool:
        return bool((self.up_masks[self.index(a)] >> self.index(b)) & 1)

    def leq_index(self, i: int, j: int) -> bool:
        return bool((self.up_masks[i] >> j) & 1)

    def subset(self, members: Iterable[str]) -> "Subset":
        mask = 0
        for name in members:
            mask |= 1 << self.index(name)
        return Subset(self, mask)

    def subset_of_indices(self, indices: Iterable[int]) -> "Subset":
        mask = 0
        for i in indices:
            if not 0 <= i < self.arity:
                raise UnknownElement(f"element index {i} out of range")
            mask |= 1 << i
        return Subset(self, mask)


Parent = Union[Poset, CarrierSet]


@dataclass(frozen=True)
class Subset:
    """A subset of one specific carrier, stored as a bitmask.

    Mixing subsets of different parents raises ParentMismatch in every
    consuming operation.
    """

    parent: Parent
    mask: int

    def __post_init__(self) -> None:
        if self.mask < 0 or self.mask & ~self.parent.full_mask:
            raise UnknownElement("subset mask references elements outside its parent")

    def members(self) -> tuple[int, ...]:
        return _mask_members(self.mask)

    def names(self) -> tuple[str, ...]:
        labels = self.parent.labels
        return tuple(labels[i] for i in self.members())

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, label: str) -> bool:
        return bool((self.mask >> self.parent.index(label)) & 1)

    def is_subset_of(self, other: "Subset") -> bool:
        _require_same_parent(self.parent, other)
        return self.mask & ~other.mask == 0


def _require_same_parent(parent: Parent, subset: Subset) -> None:
    if subset.parent != parent:
        raise ParentMismatch("subset belongs to a different carrier")


def build_poset(
    labels: Sequence[str],
    pairs: Iterable[tuple[str, str]],
    kind: str = "covers",
    max_arity: int = DEFAULT_MAX_ARITY,
) -> Poset:
    """Build a poset from either cover pairs or a full relation.

    kind="covers": the reflexive-transitive closure of ``pairs`` is taken;
    a directed cycle raises CycleDetected.  kind="full": ``pairs`` is the
    entire relation and the three axioms are checked as given.
    """
    labels = tuple(labels)
    if len(set(labels)) != len(labels):
        raise DuplicateLabel("poset labels must be distinct")
    if len(labels) > max_arity:
        raise ResourceCap(f"poset arity {len(labels)} exceeds cap {max_arity}")
    if kind not in ("covers", "full"):
        raise ValueError(f"kind must be 'covers' or 'full', got {kind!r}")

    n = len(labels)
    index = {name: i for i, name in enumerate(labels)}
    rows = [0] * n
    for a, b in pairs:
        if a not in index:
            raise UnknownElement(f"unknown element {a!r} in relation")
        if b not in index:
            raise UnknownElement(f"unknown element {b!r} in relation")
        rows[index[a]] |= 1 << index[b]

    if kind == "covers":
        for i in range(n):
            rows[i] |= 1 << i
        for k in range(n):
            bit = 1 << k
            for i in range(n):
                if rows[i] & bit:
                    rows[i] |= rows[k]
        for i in range(n):
            for j in _mask_members(rows[i]):
                if i != j and (rows[j] >> i) & 1:
                    raise CycleDetected(
                        f"cover pairs contain a cycle through "
                        f"{labels[i]!r} and {labels[j]!r}"
                    )
    # kind="full" rows go to the validating constructor as-is
    return Poset(labels, tuple(rows))


def down_set(poset: Poset, label: str) -> Subset:
    """Principal down-set: all elements <= the given one."""
    return Subset(poset, poset.down_masks[poset.index(label)])


def up_set(poset: Poset, label: str) -> Subset:
    """Principal up-set: all elements >= the given one."""
    return Subset(poset, poset.up_masks[poset.index(label)])


def upper_bounds(poset: Poset, subset: Subset) -> Subset:
    """All common upper bounds of the subset; the full carrier for {}."""
    _require_same_parent(poset, subset)
    out = poset.full_mask
    for i in subset.members():
        out &= poset.up_masks[i]
    return Subset(poset, out)


def lower_bounds(poset: Poset, subset: Subset) -> Subset:
    """All common lower bounds of the subset; the full carrier for {}."""
    _require_same_parent(poset, subset)
    out = poset.full_mask
    for i in subset.members():
        out &= poset.down_masks[i]
    return Subset(poset, out)


def minimals(poset: Poset) -> Subset:
    mask = 0
    for i in range(poset.arity):
        if poset.down_masks[i] == 1 << i:
            mask |= 1 << i
    return Subset(poset, mask)


def maximals(poset: Poset) -> Subset:
    mask = 0
    for i in range(poset.arity):
        if poset.up_masks[i] == 1 << i:
            mask |= 1 << i
    return Subset(poset, mask)


def has_minimum(poset: Poset) -> bool:
    return any(row == poset.full_mask for row in poset.up_masks)


def has_maximum(poset: Poset) -> bool:
    return any(row == poset.full_mask for row in poset.down_masks)


def minimum_index(poset: Poset, mask: int) -> int | None:
    """Index of the least member of the masked subset, or None."""
    for i in _mask_members(mask):
        if mask & ~poset.up_masks[i] == 0:
            return i
    return None


def maximum_index(poset: Poset, mask: int) -> int | None:
    """Index of the greatest member of the masked subset, or None."""
    for i in _mask_members(mask):
        if mask & ~poset.down_masks[i] == 0:
            return i
    return None
