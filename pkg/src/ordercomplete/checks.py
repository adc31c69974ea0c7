"""Verification suites: operator identities, completion structure,
closed-form sizes, the solvability criterion against exhaustive search,
the global surjectivity characterization and the bound chain.

Each check returns a list of failure strings (empty means pass) so that
both the `check` command and the test suite can share them.  Subset- and
family-indexed checks run exhaustively up to the documented thresholds
and fall back to seeded deterministic samples beyond, so a fixed corpus
always produces the same verdict.

Note on the full-carrier equivalence: on a carrier with a minimum, the
set of upper bounds of {minimum} is everything, so the textbook
"A^u = X iff A empty" only survives in the corrected form
"A^u = X iff A is contained in the lower bounds of X" (dually for A^l).
The corrected form degenerates to the textbook one exactly when there is
no minimum (no maximum), which the reports surface separately.
"""

from __future__ import annotations

import random
from typing import Iterable

from .completion import (
    CompletedPoset,
    _closure_mask,
    _iter_index_families,
    _lower_mask,
    _upper_mask,
    inf_cuts,
    macneille_completion,
    sup_cuts,
    verify_macneille,
)
from .errors import UnknownSuite
from .generators import GeneratorSpec, generate, random_equation
from .mapext import ExtendedMap, PosetMap, check_bound_chain, extension_cut_map, is_oie
from .oracle import (
    brute_bound,
    brute_cuts,
    brute_lower,
    brute_solve,
    brute_upper,
)
from .poset import Poset, Subset, build_poset, lower_bounds, upper_bounds
from .solver import EquationInstance, global_character, solve

EXHAUSTIVE_MASKS = 4096  # all subsets when 2^arity fits
EXHAUSTIVE_PAIRS = 19683  # all subset pairs when 3^arity fits
FAMILY_SAMPLE = 256


# ---------------------------------------------------------------- corpora


def structured_posets() -> list[tuple[str, Poset]]:
    out = []
    for n in range(1, 9):
        out.append((f"chain({n})", generate(GeneratorSpec("chain", n=n))))
    for n in range(1, 9):
        out.append((f"antichain({n})", generate(GeneratorSpec("antichain", n=n))))
    for k in range(0, 5):
        out.append((f"boolean({k})", generate(GeneratorSpec("boolean", k=k))))
    for m in range(1, 61):
        out.append((f"divisor({m})", generate(GeneratorSpec("divisor", m=m))))
    return out


def random_posets(count: int = 200, max_n: int = 8) -> list[tuple[str, Poset]]:
    densities = (0.15, 0.3, 0.5, 0.7)
    out = []
    for seed in range(count):
        n = 2 + seed % (max_n - 1)
        density = densities[seed % len(densities)]
        spec = GeneratorSpec("random", n=n, density=density, seed=seed)
        out.append((f"random(n={n},density={density},seed={seed})", generate(spec)))
    return out


def corpus_posets(random_count: int = 200) -> list[tuple[str, Poset]]:
    return structured_posets() + random_posets(random_count)


def equation_corpus(count: int = 100) -> list[tuple[str, EquationInstance]]:
    return [(f"equation(seed={seed})", random_equation(seed)) for seed in range(count)]


# ------------------------------------------------- operator identities


def _sampled_masks(poset: Poset, seed: int) -> list[int]:
    n = poset.arity
    if (1 << n) <= EXHAUSTIVE_MASKS:
        return list(range(1 << n))
    rng = random.Random(seed)
    masks = {0, poset.full_mask}
    masks.update(1 << i for i in range(n))
    masks.update(poset.down_masks)
    masks.update(poset.up_masks)
    while len(masks) < EXHAUSTIVE_MASKS:
        masks.add(rng.randint(0, poset.full_mask))
    return sorted(masks)


def check_bound_calculus(name: str, poset: Poset, seed: int = 0) -> list[str]:
    """Identities of the upper/lower-bound operators on one poset."""
    fails: list[str] = []
    n = poset.arity
    if n == 0:
        return fails
    full = poset.full_mask
    masks = _sampled_masks(poset, seed)
    upper = {}
    lower = {}
    for m in masks:
        s = Subset(poset, m)
        upper[m] = upper_bounds(poset, s).mask
        lower[m] = lower_bounds(poset, s).mask

    def closure(m: int) -> int:
        u = upper.get(m)
        if u is None:
            u = _upper_mask(poset, m)
        l = lower.get(u)
        if l is None:
            l = _lower_mask(poset, u)
        return l

    # raw-definition equivalence on small carriers
    if n <= 8:
        for m in masks:
            if upper[m] != brute_upper(poset, m) or lower[m] != brute_lower(poset, m):
                fails.append(f"{name}: operators disagree with the double loop on {m:#x}")
                break

    # empty set maps to the full carrier; the converse in corrected form
    if upper[0] != full or lower[0] != full:
        fails.append(f"{name}: bounds of the empty set are not the full carrier")
    min_mask = lower[full]
    max_mask = upper[full]
    for m in masks:
        if (upper[m] == full) != (m & ~min_mask == 0):
            fails.append(f"{name}: full-carrier test for upper bounds broke on {m:#x}")
            break
        if (lower[m] == full) != (m & ~max_mask == 0):
            fails.append(f"{name}: full-carrier test for lower bounds broke on {m:#x}")
            break

    # empty bounds exactly mean unbounded
    down = poset.down_masks
    up = poset.up_masks
    for m in masks:
        bounded_above = any(m & ~down[x] == 0 for x in range(n))
        if (upper[m] == 0) == bounded_above:
            fails.append(f"{name}: boundedness above mismatched on {m:#x}")
            break
        bounded_below = any(m & ~up[x] == 0 for x in range(n))
        if (lower[m] == 0) == bounded_below:
            fails.append(f"{name}: boundedness below mismatched on {m:#x}")
            break

    # antitone on inclusion
    if 3**n <= EXHAUSTIVE_PAIRS:
        pairs: Iterable[tuple[int, int]] = (
            (small, big)
            for big in range(1 << n)
            for small in _submasks(big)
        )
    else:
        rng = random.Random(seed + 1)
        pairs = (
            (big & rng.randint(0, full), big)
            for big in rng.choices(masks, k=EXHAUSTIVE_MASKS)
        )
    for small, big in pairs:
        u_small = upper.get(small)
        if u_small is None:
            u_small = _upper_mask(poset, small)
        l_small = lower.get(small)
        if l_small is None:
            l_small = _lower_mask(poset, small)
        if upper[big] & ~u_small or lower[big] & ~l_small:
            fails.append(f"{name}: bounds are not antitone on {small:#x} <= {big:#x}")
            break

    # expansion and the three-step collapse
    for m in masks:
        ul = lower.get(upper[m])
        if ul is None:
            ul = _lower_mask(poset, upper[m])
        lu = upper.get(lower[m])
        if lu is None:
            lu = _upper_mask(poset, lower[m])
        if m & ~ul or m & ~lu:
            fails.append(f"{name}: subset not contained in its closures on {m:#x}")
            break
        if _upper_mask(poset, ul) != upper[m] or _lower_mask(poset, lu) != lower[m]:
            fails.append(f"{name}: triple bound operator did not collapse on {m:#x}")
            break

    # principal identities
    for x in range(n):
        sx = 1 << x
        if _upper_mask(poset, sx) != up[x] or _lower_mask(poset, sx) != down[x]:
            fails.append(f"{name}: singleton bounds differ from principal sets at {x}")
        if _lower_mask(poset, up[x]) != down[x] or _upper_mask(poset, down[x]) != up[x]:
            fails.append(f"{name}: principal sets are not mutual bounds at {x}")
        if closure(sx) != down[x] or _upper_mask(poset, _lower_mask(poset, sx)) != up[x]:
            fails.append(f"{name}: singleton closures are not principal at {x}")

    completion = macneille_completion(poset)
    cuts = completion.cut_masks
    cut_set = set(cuts)

    # closures are least cuts
    def least_cut_violation() -> str | None:
        for m in masks:
            ul = closure(m)
            if ul not in cut_set:
                return f"{name}: closure of {m:#x} is not a cut"
            if closure(ul) != ul:
                return f"{name}: closure is not idempotent on {m:#x}"
            for c in cuts:
                if m & ~c == 0 and ul & ~c:
                    return f"{name}: closure of {m:#x} is not least above it"
                if c & ~m == 0 and c & ~ul:
                    return f"{name}: cut below {m:#x} escapes the closure"
        return None

    violation = least_cut_violation()
    if violation:
        fails.append(violation)
    if (1 << n) <= EXHAUSTIVE_MASKS:
        if {closure(m) for m in masks} != cut_set:
            fails.append(f"{name}: closures of all subsets do not give all cuts")

    # closure equals the sup of the embedded members
    for m in masks:
        union = 0
        for x in range(n):
            if (m >> x) & 1:
                union |= down[x]
        if closure(m) != _closure_mask(poset, union):
            fails.append(f"{name}: closure is not the sup of embedded members on {m:#x}")
            break

    # family sup and inf in the cut lattice
    k = len(cuts)
    for indices in _iter_index_families(k, EXHAUSTIVE_MASKS, seed + 2, FAMILY_SAMPLE):
        union = 0
        meet = full
        for i in indices:
            union |= cuts[i]
            meet &= cuts[i]
        sup_mask = _closure_mask(poset, union)
        containing = full
        for c in cuts:
            if union & ~c == 0:
                containing &= c
        if containing not in cut_set or containing != sup_mask:
            fails.append(f"{name}: family sup is not the meet of covers on {indices}")
            break
        if meet not in cut_set:
            fails.append(f"{name}: family intersection is not a cut on {indices}")
            break
        contained = 0
        for c in cuts:
            if c & ~meet == 0:
                contained |= c
        if _closure_mask(poset, contained) != meet:
            fails.append(f"{name}: family inf is not the join of cuts below on {indices}")
            break

    return fails


def _submasks(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


# ------------------------------------------------- completion structure


def check_completion(name: str, poset: Poset, seed: int = 0) -> list[str]:
    """Fast enumeration equals the exhaustive scan; the completion verifies."""
    fails: list[str] = []
    completion = macneille_completion(poset)
    if poset.arity <= 16:
        reference = brute_cuts(poset, max_arity=16)
        if [s.mask for s in reference] != list(completion.cut_masks):
            fails.append(f"{name}: enumerated cuts differ from the exhaustive scan")
    report = verify_macneille(completion)
    if not report.complete:
        fails.append(f"{name}: completeness failed: {report.failures[:2]}")
    if not report.embedding_ok:
        fails.append(f"{name}: embedding check failed: {report.failures[:2]}")
    if not report.density_ok:
        fails.append(f"{name}: density failed: {report.failures[:2]}")

    k = completion.cut_count
    for indices in _iter_index_families(k, EXHAUSTIVE_MASKS, seed, 64):
        family = [completion.cuts[i] for i in indices]
        fast_sup = sup_cuts(completion, family)
        fast_inf = inf_cuts(completion, family)
        if fast_sup != brute_bound(completion, family, "sup"):
            fails.append(f"{name}: sup disagrees with the bound scan on {indices}")
            break
        if fast_inf != brute_bound(completion, family, "inf"):
            fails.append(f"{name}: inf disagrees with the bound scan on {indices}")
            break
    return fails


def _squarefree(m: int) -> bool:
    d = 2
    while d * d <= m:
        if m % (d * d) == 0:
            return False
        d += 1
    return True


def check_closed_forms() -> list[str]:
    """Exact completion sizes for the families where they are known."""
    fails: list[str] = []
    for n in range(1, 11):
        poset = generate(GeneratorSpec("chain", n=n))
        count = macneille_completion(poset).cut_count
        if count != n:
            fails.append(f"chain({n}): expected {n} cuts, got {count}")
    for n in range(2, 11):
        poset = generate(GeneratorSpec("antichain", n=n))
        count = macneille_completion(poset).cut_count
        if count != n + 2:
            fails.append(f"antichain({n}): expected {n + 2} cuts, got {count}")
    for k in range(0, 5):
        poset = generate(GeneratorSpec("boolean", k=k))
        fails.extend(_check_self_complete(f"boolean({k})", poset))
    for m in range(1, 61):
        if _squarefree(m):
            poset = generate(GeneratorSpec("divisor", m=m))
            fails.extend(_check_self_complete(f"divisor({m})", poset))
    return fails


def _check_self_complete(name: str, poset: Poset) -> list[str]:
    """A lattice completes to itself: every cut principal, embedding an OI."""
    completion = macneille_completion(poset)
    fails = []
    if completion.cut_count != poset.arity:
        fails.append(
            f"{name}: expected {poset.arity} cuts, got {completion.cut_count}"
        )
        return fails
    if sorted(completion.embedding) != list(range(completion.cut_count)):
        fails.append(f"{name}: embedding is not onto the cuts")
    report = verify_macneille(completion)
    if not report.embedding_ok:
        fails.append(f"{name}: embedding is not an order isomorphism")
    return fails


# ------------------------------------------------- the equation solver


def check_equation(name: str, instance: EquationInstance) -> list[str]:
    """Solver verdicts against exhaustive search, for every possible target."""
    fails: list[str] = []
    if not is_oie(instance.t_approx):
        fails.append(f"{name}: induced class map is not an OIE")
    qc = instance.quotient_completion
    cc = instance.codomain_completion
    for target in cc.cuts:
        report = solve(instance, target)
        reference = brute_solve(instance, target)
        if report.solvable != (reference is not None):
            fails.append(
                f"{name}: verdict mismatch on {target.label()}: "
                f"criterion={report.solvable} search={reference is not None}"
            )
            continue
        if report.solvable and report.solution.mask != reference.mask:
            fails.append(f"{name}: solutions differ on {target.label()}")
        if report.sup_of_images.mask & ~target.mask:
            fails.append(f"{name}: sup of images escapes {target.label()}")
        if target.mask & ~report.inf_of_images.mask:
            fails.append(f"{name}: {target.label()} escapes inf of images")
        sup_lower = sup_cuts(qc, report.lower_family)
        inf_upper = inf_cuts(qc, report.upper_family)
        img_sup = cc.cut_masks[instance.images[qc.index_of(sup_lower)]]
        img_inf = cc.cut_masks[instance.images[qc.index_of(inf_upper)]]
        if report.sup_of_images.mask & ~img_sup:
            fails.append(f"{name}: inclusion chain broke at the lower end")
        if img_sup & ~img_inf:
            fails.append(f"{name}: inclusion chain broke in the middle")
        if img_inf & ~report.inf_of_images.mask:
            fails.append(f"{name}: inclusion chain broke at the upper end")
    return fails


def check_global(name: str, instance: EquationInstance) -> list[str]:
    """The two surjectivity conditions agree; when they hold, T# is an OI."""
    fails: list[str] = []
    report = global_character(instance)
    if not report.flags_agree:
        fails.append(
            f"{name}: embedded-coverage and whole-completion flags disagree"
        )
    if report.image_is_whole_completion:
        if report.image_size != instance.codomain_completion.cut_count:
            fails.append(f"{name}: image claimed whole but sizes differ")
        if report.order_isomorphism is not True:
            fails.append(f"{name}: surjective extension is not an order isomorphism")
    return fails


# ------------------------------------------------- increasing-map chain


def bound_chain_fixture(seed: int) -> tuple[CompletedPoset, CompletedPoset, tuple[int, ...], list]:
    """A seeded increasing cut map plus a nonvoid family to feed it."""
    rng = random.Random(seed)

    def small_poset(prefix: str) -> Poset:
        n = rng.randint(2, 5)
        labels = tuple(f"{prefix}{i}" for i in range(n))
        pairs = [
            (labels[i], labels[j])
            for i in range(n)
            for j in range(i + 1, n)
            if rng.random() < 0.4
        ]
        return build_poset(labels, pairs, "covers")

    source_poset = small_poset("s")
    target_poset = small_poset("t")
    source = macneille_completion(source_poset)
    target = macneille_completion(target_poset)
    phi = PosetMap(
        source_poset,
        target_poset,
        tuple(rng.randrange(target_poset.arity) for _ in range(source_poset.arity)),
    )
    mu = extension_cut_map(ExtendedMap(phi, target), source)
    size = rng.randint(1, source.cut_count)
    family = [source.cuts[i] for i in sorted(rng.sample(range(source.cut_count), size))]
    return source, target, mu, family


def check_bound_chain_instance(seed: int) -> list[str]:
    source, target, mu, family = bound_chain_fixture(seed)
    report = check_bound_chain(source, target, mu, family)
    if not report.chain_holds:
        return [
            f"boundchain(seed={seed}): chain broke: "
            f"{report.mu_of_inf.label()} / {report.inf_of_images.label()} / "
            f"{report.sup_of_images.label()} / {report.mu_of_sup.label()}"
        ]
    return []


# ------------------------------------------------------------- suites


SUITES = ("cutcalc", "macneille", "closedforms", "theorem41", "theorem42", "boundchain")


def run_suite(
    name: str,
    poset: Poset | None = None,
    instance: EquationInstance | None = None,
    count: int | None = None,
) -> tuple[bool, list[str]]:
    """Run one named suite; returns (ok, printable output lines)."""
    failures: list[str] = []

    if name == "cutcalc":
        targets = [("input", poset)] if poset is not None else corpus_posets(count or 50)
        for pname, p in targets:
            failures.extend(check_bound_calculus(pname, p))
        summary = f"cutcalc on {len(targets)} posets"
    elif name == "macneille":
        targets = [("input", poset)] if poset is not None else corpus_posets(count or 50)
        for pname, p in targets:
            failures.extend(check_completion(pname, p))
        summary = f"macneille on {len(targets)} posets"
    elif name == "closedforms":
        failures.extend(check_closed_forms())
        summary = "closed-form completion sizes"
    elif name == "theorem41":
        instances = (
            [("input", instance)]
            if instance is not None
            else equation_corpus(count or 25)
        )
        for ename, e in instances:
            failures.extend(check_equation(ename, e))
        summary = f"solvability criterion on {len(instances)} instances"
    elif name == "theorem42":
        instances = (
            [("input", instance)]
            if instance is not None
            else equation_corpus(count or 25)
        )
        for ename, e in instances:
            failures.extend(check_global(ename, e))
        summary = f"global characterization on {len(instances)} instances"
    elif name == "boundchain":
        seeds = range(count or 100)
        for seed in seeds:
            failures.extend(check_bound_chain_instance(seed))
        summary = f"bound chain on {len(seeds)} increasing maps"
    else:
        raise UnknownSuite(f"unknown suite {name!r}")

    ok = not failures
    lines = [("PASS " if ok else "FAIL ") + summary]
    for f in failures[:10]:
        lines.append("  counterexample: " + f)
    return ok, lines
