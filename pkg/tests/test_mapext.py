import pytest
from hypothesis import given
from hypothesis import strategies as st

from ordercomplete.completion import cut_closure, embed, macneille_completion
from ordercomplete.errors import (
    EmptyFamily,
    NotIncreasing,
    ParentMismatch,
    SourceNotOrdered,
    UnknownElement,
)
from ordercomplete.mapext import (
    ExtendedMap,
    PosetMap,
    apply_extension,
    check_bound_chain,
    check_extension_laws,
    extend,
    extension_cut_map,
    is_increasing,
    is_oie,
)
from ordercomplete.poset import CarrierSet, Subset, build_poset

from conftest import posets


def chain3():
    return build_poset(["a", "b", "c"], [("a", "b"), ("b", "c")])


def antichain2():
    return build_poset(["p", "q"], [])


def identity_map(poset):
    return PosetMap.from_names(poset, poset, {x: x for x in poset.labels})


class TestPosetMap:
    def test_totality_enforced(self):
        with pytest.raises(UnknownElement):
            PosetMap.from_names(chain3(), antichain2(), {"a": "p"})

    def test_unknown_source_key(self):
        with pytest.raises(UnknownElement):
            PosetMap.from_names(
                antichain2(), chain3(), {"p": "a", "q": "b", "zz": "c"}
            )

    def test_unknown_target_value(self):
        with pytest.raises(UnknownElement):
            PosetMap.from_names(antichain2(), chain3(), {"p": "a", "q": "zz"})

    def test_apply(self):
        phi = PosetMap.from_names(antichain2(), chain3(), {"p": "a", "q": "c"})
        assert phi.apply("q") == "c"

    def test_carrier_set_source_allowed(self):
        carrier = CarrierSet(("u", "v"))
        phi = PosetMap.from_names(carrier, chain3(), {"u": "a", "v": "a"})
        assert phi.apply("v") == "a"


class TestApplyExtension:
    def test_singleton_lands_on_principal(self):
        p, target = antichain2(), chain3()
        phi = extend(PosetMap.from_names(p, target, {"p": "a", "q": "c"}))
        for x in p.labels:
            got = apply_extension(phi, p.subset([x]))
            assert got == embed(target, phi.base.apply(x))

    def test_empty_subset_gives_least_cut(self):
        p, target = antichain2(), chain3()
        phi = extend(PosetMap.from_names(p, target, {"p": "a", "q": "c"}))
        assert apply_extension(phi, p.subset([])) == cut_closure(
            target, target.subset([])
        )

    def test_identity_on_chain_closes_subsets(self):
        p = chain3()
        phi = extend(identity_map(p))
        assert apply_extension(phi, p.subset(["b"])).names() == ("a", "b")

    def test_carrier_set_source(self):
        carrier = CarrierSet(("u", "v"))
        target = antichain2()
        phi = extend(PosetMap.from_names(carrier, target, {"u": "p", "v": "q"}))
        got = apply_extension(phi, Subset(carrier, 0b11))
        assert got.mask == target.full_mask

    def test_parent_mismatch(self):
        p = chain3()
        phi = extend(identity_map(p))
        with pytest.raises(ParentMismatch):
            apply_extension(phi, antichain2().subset(["p"]))

    @given(posets(max_n=4), st.integers(0, 2**4 - 1), st.integers(0, 2**4 - 1))
    def test_monotone_for_inclusion(self, poset, a, b):
        phi = extend(identity_map(poset))
        small = Subset(poset, a & b & poset.full_mask)
        big = Subset(poset, b & poset.full_mask)
        assert apply_extension(phi, small).mask & ~apply_extension(phi, big).mask == 0


class TestClassification:
    def test_identity_is_increasing_and_oie(self):
        phi = identity_map(chain3())
        assert is_increasing(phi)
        assert is_oie(phi)

    def test_constant_is_increasing_not_oie(self):
        p = chain3()
        phi = PosetMap.from_names(p, p, {"a": "a", "b": "a", "c": "a"})
        assert is_increasing(phi)
        assert not is_oie(phi)

    def test_chain_into_antichain_not_increasing(self):
        two = build_poset(["a", "b"], [("a", "b")])
        phi = PosetMap.from_names(two, antichain2(), {"a": "p", "b": "q"})
        assert not is_increasing(phi)

    def test_antichain_into_chain_increasing_but_not_oie(self):
        p = antichain2()
        two = build_poset(["a", "b"], [("a", "b")])
        phi = PosetMap.from_names(p, two, {"p": "a", "q": "b"})
        assert is_increasing(phi)
        assert not is_oie(phi)

    def test_carrier_set_source_rejected(self):
        carrier = CarrierSet(("u",))
        phi = PosetMap.from_names(carrier, chain3(), {"u": "a"})
        with pytest.raises(SourceNotOrdered):
            is_increasing(phi)
        with pytest.raises(SourceNotOrdered):
            is_oie(phi)


class TestExtensionLaws:
    def test_identity_passes_everything(self):
        report = check_extension_laws(identity_map(chain3()))
        assert report.extension_monotone
        assert report.principal_commutes is True
        assert report.oie_on_cuts is True
        assert report.all_ok
        assert report.exhaustive

    def test_non_increasing_skips_conditional_parts(self):
        two = build_poset(["a", "b"], [("a", "b")])
        phi = PosetMap.from_names(two, antichain2(), {"a": "p", "b": "q"})
        report = check_extension_laws(phi)
        assert report.extension_monotone
        assert report.principal_commutes is None
        assert report.oie_on_cuts is None
        assert report.all_ok

    def test_increasing_non_oie_checks_principals_only(self):
        p = antichain2()
        two = build_poset(["a", "b"], [("a", "b")])
        phi = PosetMap.from_names(p, two, {"p": "a", "q": "b"})
        report = check_extension_laws(phi)
        assert report.extension_monotone
        assert report.principal_commutes is True
        assert report.oie_on_cuts is None

    def test_carrier_source_checks_monotonicity_only(self):
        carrier = CarrierSet(("u", "v"))
        phi = PosetMap.from_names(carrier, chain3(), {"u": "a", "v": "c"})
        report = check_extension_laws(phi)
        assert report.extension_monotone
        assert report.principal_commutes is None

    @given(posets(max_n=4))
    def test_identity_everywhere(self, poset):
        report = check_extension_laws(identity_map(poset))
        assert report.all_ok
        assert report.principal_commutes is True and report.oie_on_cuts is True


class TestLemmaChain:
    def test_identity_map_collapses_to_equalities(self):
        c = macneille_completion(chain3())
        mu = tuple(range(c.cut_count))
        family = [c.cuts[0], c.cuts[2]]
        report = check_bound_chain(c, c, mu, family)
        assert report.chain_holds
        assert report.mu_of_inf == report.inf_of_images
        assert report.mu_of_sup == report.sup_of_images

    def test_extension_of_oie_on_incomparable_principals(self):
        source_poset = antichain2()
        target_poset = build_poset(
            ["p", "q", "r", "s"], [("p", "r"), ("q", "r"), ("p", "s"), ("q", "s")]
        )
        phi = PosetMap.from_names(source_poset, target_poset, {"p": "p", "q": "q"})
        assert is_oie(phi)
        source = macneille_completion(source_poset)
        target = macneille_completion(target_poset)
        mu = extension_cut_map(ExtendedMap(phi, target), source)
        family = [embed(source_poset, "p"), embed(source_poset, "q")]
        report = check_bound_chain(source, target, mu, family)
        assert report.chain_holds

    def test_collapsing_map_makes_first_inequality_strict(self):
        source_poset = antichain2()
        target_poset = antichain2()
        phi = PosetMap.from_names(source_poset, target_poset, {"p": "p", "q": "p"})
        source = macneille_completion(source_poset)
        target = macneille_completion(target_poset)
        mu = extension_cut_map(ExtendedMap(phi, target), source)
        family = [embed(source_poset, "p"), embed(source_poset, "q")]
        report = check_bound_chain(source, target, mu, family)
        assert report.chain_holds
        # inf of the family is the empty cut, whose image stays empty,
        # while both images share p below them
        assert report.mu_of_inf.names() == ()
        assert report.inf_of_images.names() == ("p",)

    def test_constant_map_collapses_inner_inequality(self):
        c = macneille_completion(chain3())
        mu = tuple(1 for _ in range(c.cut_count))
        family = list(c.cuts)
        report = check_bound_chain(c, c, mu, family)
        assert report.chain_holds
        assert report.inf_of_images == report.sup_of_images

    def test_decreasing_map_rejected(self):
        c = macneille_completion(chain3())
        mu = tuple(reversed(range(c.cut_count)))
        with pytest.raises(NotIncreasing):
            check_bound_chain(c, c, mu, [c.cuts[0]])

    def test_empty_family_rejected(self):
        c = macneille_completion(chain3())
        mu = tuple(range(c.cut_count))
        with pytest.raises(EmptyFamily):
            check_bound_chain(c, c, mu, [])

    def test_callable_map_accepted(self):
        p = chain3()
        c = macneille_completion(p)
        report = check_bound_chain(c, c, lambda cut: cut, [c.cuts[1]])
        assert report.chain_holds
