"""Solving T(A) = F over completions.

Given any map T from a bare set X into a poset Y, identifying elements
with equal images yields a quotient X_T on which the order of Y pulls
back; the induced class map is then an order isomorphic embedding into
Y.  Completing both sides extends T to a map T# between cut lattices,
and the equation T#(A) = F becomes decidable:

    solvable  <=>  sup of the images below F  ==  inf of the images above F

with the unique solution (the extension is injective on cuts) given by
the sup of the lower family, equal to the inf of the upper family.

Finite carriers often have minima and maxima, which the general theory
deliberately excludes; in particular the lower family can be genuinely
empty when the empty set is not a cut of the quotient.  Reports carry
explicit flags for those situations instead of hiding them behind the
empty-family sup/inf conventions (least cut, full carrier).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .completion import (
    CompletedPoset,
    Cut,
    DEFAULT_MAX_CUTS,
    inf_cuts,
    is_cut,
    macneille_completion,
    sup_cuts,
)
from .errors import InvalidCut, OrderCompletionError, ParentMismatch, UnknownElement
from .mapext import ExtendedMap, PosetMap, apply_extension, extension_cut_map
from .poset import (
    CarrierSet,
    Poset,
    Subset,
    has_maximum,
    has_minimum,
)


@dataclass(frozen=True)
class QuotientPoset:
    """Fibers of a map, ordered by pulling back the codomain order.

    Classes are labeled by their representative (first member in carrier
    order); ``classes[i]`` lists the member indices of class i.
    """

    classes: tuple[tuple[int, ...], ...]
    representatives: tuple[int, ...]
    order: Poset

    @property
    def class_count(self) -> int:
        return len(self.classes)


@dataclass(frozen=True)
class AssumptionFlags:
    """Where a finite instance departs from the no-minimum/no-maximum setting."""

    quotient_has_minimum: bool
    quotient_has_maximum: bool
    codomain_has_minimum: bool
    codomain_has_maximum: bool
    empty_set_in_quotient_completion: bool
    empty_set_in_codomain_completion: bool


@dataclass(frozen=True)
class EquationInstance:
    """A map T : X -> Y with its quotient, both completions and T# cached."""

    domain: CarrierSet
    codomain: Poset
    t: PosetMap
    quotient: QuotientPoset
    t_approx: PosetMap
    codomain_completion: CompletedPoset
    quotient_completion: CompletedPoset
    images: tuple[int, ...]

    @cached_property
    def extended(self) -> ExtendedMap:
        return ExtendedMap(self.t_approx, self.codomain_completion)

    @cached_property
    def assumption_flags(self) -> AssumptionFlags:
        return AssumptionFlags(
            quotient_has_minimum=has_minimum(self.quotient.order),
            quotient_has_maximum=has_maximum(self.quotient.order),
            codomain_has_minimum=has_minimum(self.codomain),
            codomain_has_maximum=has_maximum(self.codomain),
            empty_set_in_quotient_completion=self.quotient_completion.empty_set_is_cut,
            empty_set_in_codomain_completion=self.codomain_completion.empty_set_is_cut,
        )


def build_equation(
    domain: CarrierSet,
    codomain: Poset,
    t: PosetMap,
    max_cuts: int = DEFAULT_MAX_CUTS,
) -> EquationInstance:
    """Group the fibers of T, pull back the order and complete both sides."""
    if t.source != domain or t.target != codomain:
        raise ParentMismatch("map does not go from the given domain to the codomain")
    if domain.arity == 0:
        raise UnknownElement("the domain must be nonvoid")

    fibers: dict[int, list[int]] = {}
    for i, image in enumerate(t.assignment):
        fibers.setdefault(image, []).append(i)
    # class order follows first appearance in the carrier
    ordered = sorted(fibers.items(), key=lambda kv: kv[1][0])
    classes = tuple(tuple(members) for _, members in ordered)
    representatives = tuple(members[0] for members in classes)
    class_images = tuple(image for image, _ in ordered)

    labels = tuple(domain.labels[r] for r in representatives)
    rows = []
    for a in class_images:
        row = 0
        for j, b in enumerate(class_images):
            if codomain.leq_index(a, b):
                row |= 1 << j
        rows.append(row)
    order = Poset(labels, tuple(rows))
    quotient = QuotientPoset(classes, representatives, order)
    t_approx = PosetMap(order, codomain, class_images)

    codomain_completion = macneille_completion(codomain, max_cuts=max_cuts)
    quotient_completion = macneille_completion(order, max_cuts=max_cuts)
    extended = ExtendedMap(t_approx, codomain_completion)
    images = extension_cut_map(extended, quotient_completion)

    # principal cuts must land on principal cuts of the class images
    for i in range(order.arity):
        got = images[quotient_completion.embedding[i]]
        want = codomain_completion.embedding[class_images[i]]
        if got != want:
            raise OrderCompletionError(
                "extension broke on a principal cut; this is a bug"
            )

    return EquationInstance(
        domain=domain,
        codomain=codomain,
        t=t,
        quotient=quotient,
        t_approx=t_approx,
        codomain_completion=codomain_completion,
        quotient_completion=quotient_completion,
        images=images,
    )


def t_sharp(instance: EquationInstance, cut: Subset) -> Cut:
    """Extended map on a cut of the quotient completion."""
    instance.quotient_completion.index_of(cut)  # membership + parent check
    return apply_extension(instance.extended, cut)


@dataclass(frozen=True)
class EmptyFamilyFlags:
    lower: bool
    upper: bool


@dataclass(frozen=True)
class SolveReport:
    """Everything the solvability criterion looked at, not just the verdict."""

    target: Cut
    solvable: bool
    solution: Cut | None
    sup_of_images: Cut
    inf_of_images: Cut
    lower_family: tuple[Cut, ...]
    upper_family: tuple[Cut, ...]
    empty_family_flags: EmptyFamilyFlags
    assumption_flags: AssumptionFlags


def solve(instance: EquationInstance, target: Subset) -> SolveReport:
    """Decide T#(A) = F and construct the solution when one exists.

    ``target`` must be a cut of the codomain; anything else is rejected
    rather than silently closed.
    """
    if target.parent != instance.codomain:
        raise ParentMismatch("target does not live in the codomain")
    if not is_cut(instance.codomain, target):
        raise InvalidCut("the right hand side must be a cut of the codomain")
    f_mask = target.mask

    qc = instance.quotient_completion
    cc = instance.codomain_completion
    lower: list[int] = []
    upper: list[int] = []
    for i, image_index in enumerate(instance.images):
        image_mask = cc.cut_masks[image_index]
        if image_mask & ~f_mask == 0:
            lower.append(i)
        if f_mask & ~image_mask == 0:
            upper.append(i)

    sup_images = sup_cuts(cc, [cc.cuts[instance.images[i]] for i in lower])
    inf_images = inf_cuts(cc, [cc.cuts[instance.images[i]] for i in upper])
    solvable = sup_images.mask == inf_images.mask

    solution: Cut | None = None
    if solvable:
        from_lower = sup_cuts(qc, [qc.cuts[i] for i in lower])
        from_upper = inf_cuts(qc, [qc.cuts[i] for i in upper])
        if from_lower.mask != from_upper.mask:
            raise OrderCompletionError(
                "sup of the lower family differs from inf of the upper family; "
                "this is a bug"
            )
        applied = cc.cut_masks[instance.images[qc.index_of(from_lower)]]
        if applied != f_mask:
            raise OrderCompletionError(
                "constructed solution does not map onto the target; this is a bug"
            )
        solution = from_lower

    return SolveReport(
        target=Cut(instance.codomain, f_mask),
        solvable=solvable,
        solution=solution,
        sup_of_images=sup_images,
        inf_of_images=inf_images,
        lower_family=tuple(qc.cuts[i] for i in lower),
        upper_family=tuple(qc.cuts[i] for i in upper),
        empty_family_flags=EmptyFamilyFlags(lower=not lower, upper=not upper),
        assumption_flags=instance.assumption_flags,
    )


@dataclass(frozen=True)
class GlobalReport:
    """Surjectivity character of T# over the whole codomain completion."""

    covers_embedded_codomain: bool
    image_is_whole_completion: bool
    order_isomorphism: bool | None
    image_size: int
    completion_sizes: tuple[int, int]
    assumption_flags: AssumptionFlags

    @property
    def flags_agree(self) -> bool:
        return self.covers_embedded_codomain == self.image_is_whole_completion


def global_character(instance: EquationInstance) -> GlobalReport:
    """Check whether every embedded codomain element (equivalently, every
    cut of the codomain completion) is hit by T#, and when the image is
    everything, that T# is an order isomorphism."""
    qc = instance.quotient_completion
    cc = instance.codomain_completion
    image_set = set(instance.images)

    covers_embedded = all(e in image_set for e in cc.embedding)
    image_is_all = len(image_set) == cc.cut_count

    order_iso: bool | None = None
    if image_is_all:
        order_iso = len(instance.images) == cc.cut_count
        if order_iso:
            qmasks = qc.cut_masks
            cmasks = cc.cut_masks
            for i in range(len(qmasks)):
                for j in range(len(qmasks)):
                    lhs = qmasks[i] & ~qmasks[j] == 0
                    rhs = (
                        cmasks[instance.images[i]] & ~cmasks[instance.images[j]] == 0
                    )
                    if lhs != rhs:
                        order_iso = False
                        break
                if not order_iso:
                    break

    return GlobalReport(
        covers_embedded_codomain=covers_embedded,
        image_is_whole_completion=image_is_all,
        order_isomorphism=order_iso,
        image_size=len(image_set),
        completion_sizes=(qc.cut_count, cc.cut_count),
        assumption_flags=instance.assumption_flags,
    )
