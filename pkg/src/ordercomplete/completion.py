"""Cuts and the completion of a finite poset by cuts.

A subset A is a *cut* when A^ul = A.  The set of all cuts, ordered by
inclusion, is the smallest order-complete poset into which the original
embeds densely via x -> <x].  Enumeration works by closing the family of
principal down-sets under pairwise intersection (plus the full carrier
for the empty intersection), which is output-sensitive; the exponential
2^n scan lives in `oracle` as the reference implementation.

Canonical cut order is (cardinality, then member indices lexicographically);
all reports and file formats rely on it for reproducibility.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import InvalidCut, ResourceCap
from .poset import (
    Poset,
    Subset,
    _mask_members,
    _require_same_parent,
    has_maximum,
    has_minimum,
    maximum_index,
    minimum_index,
)

DEFAULT_MAX_CUTS = 4096


def _upper_mask(poset: Poset, mask: int) -> int:
    out = poset.full_mask
    for i in _mask_members(mask):
        out &= poset.up_masks[i]
    return out


def _lower_mask(poset: Poset, mask: int) -> int:
    out = poset.full_mask
    for i in _mask_members(mask):
        out &= poset.down_masks[i]
    return out


def _closure_mask(poset: Poset, mask: int) -> int:
    return _lower_mask(poset, _upper_mask(poset, mask))


def cut_label(poset: Poset, mask: int) -> str:
    """Canonical printable name of a cut, e.g. ``{a,b}``."""
    return "{" + ",".join(poset.labels[i] for i in _mask_members(mask)) + "}"


@dataclass(frozen=True)
class Cut(Subset):
    """A subset equal to its own upper-lower closure."""

    def __post_init__(self) -> None:
        Subset.__post_init__(self)
        if not isinstance(self.parent, Poset):
            raise InvalidCut("cuts require an ordered parent")
        if _closure_mask(self.parent, self.mask) != self.mask:
            raise InvalidCut(
                f"{cut_label(self.parent, self.mask)} is not closed under "
                "the upper-lower bound operators"
            )

    def label(self) -> str:
        return cut_label(self.parent, self.mask)


def cut_closure(poset: Poset, subset: Subset) -> Cut:
    """Least cut containing the subset: A^ul."""
    _require_same_parent(poset, subset)
    return Cut(poset, _closure_mask(poset, subset.mask))


def is_cut(poset: Poset, subset: Subset) -> bool:
    _require_same_parent(poset, subset)
    return _closure_mask(poset, subset.mask) == subset.mask


def embed(poset: Poset, label: str) -> Cut:
    """The principal cut <x] of an element."""
    return Cut(poset, poset.down_masks[poset.index(label)])


def _canonical_key(mask: int) -> tuple[int, tuple[int, ...]]:
    return (bin(mask).count("1"), _mask_members(mask))


@dataclass(frozen=True)
class CompletedPoset:
    """All cuts of a poset in canonical order, plus the element embedding.

    ``embedding[i]`` is the index of the principal cut of element i.
    """

    parent: Poset
    cut_masks: tuple[int, ...]
    embedding: tuple[int, ...]

    def __post_init__(self) -> None:
        seen = set()
        for mask in self.cut_masks:
            if mask in seen:
                raise InvalidCut("duplicate cut in completion")
            seen.add(mask)
            if _closure_mask(self.parent, mask) != mask:
                raise InvalidCut(
                    f"{cut_label(self.parent, mask)} listed in a completion "
                    "but is not a cut"
                )
        if list(self.cut_masks) != sorted(self.cut_masks, key=_canonical_key):
            raise InvalidCut("completion cuts are not in canonical order")
        for i in range(self.parent.arity):
            principal = self.parent.down_masks[i]
            if self.cut_masks[self.embedding[i]] != principal:
                raise InvalidCut("embedding does not point at the principal cuts")

    @property
    def cut_count(self) -> int:
        return len(self.cut_masks)

    @cached_property
    def cuts(self) -> tuple[Cut, ...]:
        return tuple(Cut(self.parent, m) for m in self.cut_masks)

    @cached_property
    def _mask_index(self) -> dict[int, int]:
        return {m: i for i, m in enumerate(self.cut_masks)}

    @property
    def empty_set_is_cut(self) -> bool:
        return self.cut_masks[0] == 0 if self.cut_masks else False

    def index_of(self, cut: Subset) -> int:
        _require_same_parent(self.parent, cut)
        try:
            return self._mask_index[cut.mask]
        except KeyError:
            raise InvalidCut(
                f"{cut_label(self.parent, cut.mask)} is not a cut of this completion"
            ) from None

    def leq(self, i: int, j: int) -> bool:
        """Inclusion order between cuts by index."""
        return self.cut_masks[i] & ~self.cut_masks[j] == 0

    def cut_labels(self) -> tuple[str, ...]:
        return tuple(cut_label(self.parent, m) for m in self.cut_masks)

    @cached_property
    def as_poset(self) -> Poset:
        """The cut lattice itself as a plain poset (labels are cut names)."""
        rows = []
        for i, a in enumerate(self.cut_masks):
            row = 0
            for j, b in enumerate(self.cut_masks):
                if a & ~b == 0:
                    row |= 1 << j
            rows.append(row)
        return Poset(self.cut_labels(), tuple(rows))


def macneille_completion(poset: Poset, max_cuts: int = DEFAULT_MAX_CUTS) -> CompletedPoset:
    """Enumerate every cut of the poset.

    Worklist closure of the principal down-sets under pairwise
    intersection; the empty intersection contributes the full carrier.
    Raises ResourceCap as soon as the cut count would exceed ``max_cuts``
    (the completion can be exponential in arity).
    """
    found = {poset.full_mask}
    queue: deque[int] = deque(poset.down_masks)
    while queue:
        mask = queue.popleft()
        if mask in found:
            continue
        if len(found) >= max_cuts:
            raise ResourceCap(f"completion exceeds cut cap {max_cuts}")
        snapshot = list(found)
        found.add(mask)
        for other in snapshot:
            meet = other & mask
            if meet not in found:
                queue.append(meet)

    cut_masks = tuple(sorted(found, key=_canonical_key))
    index = {m: i for i, m in enumerate(cut_masks)}
    embedding = tuple(index[poset.down_masks[i]] for i in range(poset.arity))
    return CompletedPoset(poset, cut_masks, embedding)


def _member_cut(completion: CompletedPoset, subset: Subset) -> int:
    """Mask of a family member after checking it belongs to the completion."""
    _require_same_parent(completion.parent, subset)
    if subset.mask not in completion._mask_index:
        raise InvalidCut(
            f"{cut_label(completion.parent, subset.mask)} is not a cut of this completion"
        )
    return subset.mask


def sup_cuts(completion: CompletedPoset, family: Iterable[Subset]) -> Cut:
    """Least upper bound of a cut family: (union)^ul.

    The empty family yields the least cut, i.e. the closure of {}.
    """
    union = 0
    for cut in family:
        union |= _member_cut(completion, cut)
    return Cut(completion.parent, _closure_mask(completion.parent, union))


def inf_cuts(completion: CompletedPoset, family: Iterable[Subset]) -> Cut:
    """Greatest lower bound of a cut family: the plain intersection.

    The empty family yields the full carrier, the greatest cut.
    """
    meet = completion.parent.full_mask
    for cut in family:
        meet &= _member_cut(completion, cut)
    return Cut(completion.parent, meet)


@dataclass(frozen=True)
class MacNeilleReport:
    """Outcome of the structural verification of a completion."""

    complete: bool
    embedding_ok: bool
    density_ok: bool
    cut_count: int
    empty_set_is_cut: bool
    has_minimum: bool
    has_maximum: bool
    exhaustive: bool
    inf_side_empty: tuple[str, ...]
    failures: tuple[str, ...]

    @property
    def all_ok(self) -> bool:
        return self.complete and self.embedding_ok and self.density_ok


def _iter_index_families(
    count: int, limit: int, seed: int, sample_budget: int = 256
) -> Iterable[tuple[int, ...]]:
    """All index subsets when 2^count fits the limit, a fixed sample otherwise.

    The sample always contains the empty family, the full family and all
    singletons, topped up with seeded random families.
    """
    if count <= 0:
        yield ()
        return
    if 1 << count <= limit:
        for mask in range(1 << count):
            yield _mask_members(mask)
        return
    yield ()
    yield tuple(range(count))
    for i in range(count):
        yield (i,)
    rng = random.Random(seed)
    for _ in range(sample_budget):
        size = rng.randint(1, count)
        yield tuple(sorted(rng.sample(range(count), size)))


def verify_macneille(
    completion: CompletedPoset,
    family_limit: int = 4096,
    sample_seed: int = 0,
) -> MacNeilleReport:
    """Check completeness, the embedding and order density of a completion.

    Completeness is exhaustive over all cut families when there are at
    most log2(family_limit) cuts, sampled deterministically above that;
    the same policy governs the sup/inf preservation scan over parent
    subsets.
    """
    poset = completion.parent
    masks = completion.cut_masks
    k = len(masks)
    failures: list[str] = []

    exhaustive = (1 << k) <= family_limit and (1 << poset.arity) <= family_limit

    # (1) every family has a genuine least upper / greatest lower bound
    complete = True
    for indices in _iter_index_families(k, family_limit, sample_seed):
        union = 0
        meet = poset.full_mask
        for i in indices:
            union |= masks[i]
            meet &= masks[i]
        sup_mask = _closure_mask(poset, union)
        if union & ~sup_mask:
            complete = False
            failures.append(f"sup is not an upper bound for family {indices}")
        if meet not in completion._mask_index:
            complete = False
            failures.append(f"intersection of family {indices} is not a cut")
        for m in masks:
            is_ub = union & ~m == 0
            if is_ub and sup_mask & ~m:
                complete = False
                failures.append(
                    f"sup {cut_label(poset, sup_mask)} is not least "
                    f"(beaten by {cut_label(poset, m)})"
                )
                break
            is_lb = all(m & ~masks[i] == 0 for i in indices)
            if is_lb and m & ~meet:
                complete = False
                failures.append(
                    f"inf {cut_label(poset, meet)} is not greatest "
                    f"(beaten by {cut_label(poset, m)})"
                )
                break
        if not complete and len(failures) > 4:
            break

    # (2) the embedding is an OIE and preserves existing bounds
    embedding_ok = True
    principal = poset.down_masks
    if len(set(principal)) != poset.arity:
        embedding_ok = False
        failures.append("embedding is not injective")
    for i in range(poset.arity):
        for j in range(poset.arity):
            if poset.leq_index(i, j) != (principal[i] & ~principal[j] == 0):
                embedding_ok = False
                failures.append(
                    f"embedding does not reflect order on "
                    f"{poset.labels[i]!r}, {poset.labels[j]!r}"
                )
    for indices in _iter_index_families(poset.arity, family_limit, sample_seed + 1):
        subset_mask = 0
        union = 0
        meet = poset.full_mask
        for i in indices:
            subset_mask |= 1 << i
            union |= principal[i]
            meet &= principal[i]
        names = ",".join(poset.labels[i] for i in indices)
        s = minimum_index(poset, _upper_mask(poset, subset_mask))
        if s is not None and _closure_mask(poset, union) != principal[s]:
            embedding_ok = False
            failures.append(f"embedding loses the supremum of {{{names}}}")
        t = maximum_index(poset, _lower_mask(poset, subset_mask))
        if t is not None and meet != principal[t]:
            embedding_ok = False
            failures.append(f"embedding loses the infimum of {{{names}}}")

    # (3) order density: every cut is the sup and the inf of principals
    density_ok = True
    inf_side_empty: list[str] = []
    for mask in masks:
        below = 0
        for i in range(poset.arity):
            if principal[i] & ~mask == 0:
                below |= principal[i]
        if _closure_mask(poset, below) != mask:
            density_ok = False
            failures.append(f"{cut_label(poset, mask)} is not a sup of principals")
        above = [i for i in range(poset.arity) if mask & ~principal[i] == 0]
        if not above:
            # no single element dominates: the inf family is empty and the
            # empty-meet convention yields the full carrier
            inf_side_empty.append(cut_label(poset, mask))
            if mask != poset.full_mask:
                density_ok = False
                failures.append(
                    f"{cut_label(poset, mask)} has an empty inf family yet is proper"
                )
        else:
            meet = poset.full_mask
            for i in above:
                meet &= principal[i]
            if meet != mask:
                density_ok = False
                failures.append(f"{cut_label(poset, mask)} is not an inf of principals")

    return MacNeilleReport(
        complete=complete,
        embedding_ok=embedding_ok,
        density_ok=density_ok,
        cut_count=k,
        empty_set_is_cut=completion.empty_set_is_cut,
        has_minimum=has_minimum(poset),
        has_maximum=has_maximum(poset),
        exhaustive=exhaustive,
        inf_side_empty=tuple(inf_side_empty),
        failures=tuple(failures[:8]),
    )


def cover_pairs(masks: Sequence[int]) -> list[tuple[int, int]]:
    """Cover edges (i, j) of the inclusion order on a family of masks."""
    n = len(masks)
    covers = []
    for i in range(n):
        for j in range(n):
            if i == j or masks[i] & ~masks[j]:
                continue
            if any(
                k not in (i, j)
                and masks[i] & ~masks[k] == 0
                and masks[k] & ~masks[j] == 0
                for k in range(n)
            ):
                continue
            covers.append((i, j))
    return covers


def to_dot(completion: CompletedPoset) -> str:
    """Hasse diagram of the completion as DOT text.

    Principal (embedded) cuts are drawn with a double border.
    """
    poset = completion.parent
    principal = set(completion.embedding)
    lines = ["digraph completion {", "  rankdir=BT;", '  node [shape=box];']
    for i, mask in enumerate(completion.cut_masks):
        label = cut_label(poset, mask).replace('"', '\\"')
        extra = ", peripheries=2" if i in principal else ""
        lines.append(f'  c{i} [label="{label}"{extra}];')
    for i, j in sorted(cover_pairs(completion.cut_masks)):
        lines.append(f"  c{i} -> c{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
