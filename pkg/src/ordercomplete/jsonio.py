"""Stable JSON formats shared by the CLI and its fixtures.

Data files (posets, maps, equations, targets) are plain schemas; report
payloads additionally carry ``schema_version``.  Output is canonical:
element order follows the input label order, cuts follow the completion
order, and no payload contains timestamps, so equal inputs produce
byte-equal outputs.
"""

from __future__ import annotations

import json
from typing import Any

from .completion import CompletedPoset
from .errors import SchemaError
from .poset import CarrierSet, DEFAULT_MAX_ARITY, Parent, Poset, Subset, build_poset
from .mapext import PosetMap
from .solver import GlobalReport, SolveReport

SCHEMA_VERSION = 1


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def _expect_list_of_strings(value: Any, where: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise SchemaError(f"{where} must be an array of strings")
    return value


def _expect_dict(value: Any, where: str) -> dict:
    if not isinstance(value, dict):
        raise SchemaError(f"{where} must be an object")
    return value


def cover_relation(poset: Poset) -> list[tuple[str, str]]:
    """Cover pairs of a poset in element order (its Hasse diagram)."""
    pairs = []
    for i in range(poset.arity):
        strict_up = poset.up_masks[i] & ~(1 << i)
        reachable = 0
        for j in range(poset.arity):
            if (strict_up >> j) & 1:
                reachable |= poset.up_masks[j] & ~(1 << j)
        covers = strict_up & ~reachable
        for j in range(poset.arity):
            if (covers >> j) & 1:
                pairs.append((poset.labels[i], poset.labels[j]))
    return pairs


def poset_to_data(poset: Poset) -> dict:
    return {
        "elements": list(poset.labels),
        "relation": [list(p) for p in cover_relation(poset)],
        "relation_kind": "covers",
    }


def poset_from_data(data: Any, max_arity: int = DEFAULT_MAX_ARITY) -> Poset:
    data = _expect_dict(data, "poset")
    for key in ("elements", "relation", "relation_kind"):
        if key not in data:
            raise SchemaError(f"poset is missing {key!r}")
    elements = _expect_list_of_strings(data["elements"], "elements")
    kind = data["relation_kind"]
    if kind not in ("covers", "full"):
        raise SchemaError("relation_kind must be 'covers' or 'full'")
    relation = data["relation"]
    if not isinstance(relation, list):
        raise SchemaError("relation must be an array of pairs")
    pairs = []
    for entry in relation:
        if (
            not isinstance(entry, list)
            or len(entry) != 2
            or not all(isinstance(x, str) for x in entry)
        ):
            raise SchemaError("relation entries must be [from, to] name pairs")
        pairs.append((entry[0], entry[1]))
    return build_poset(elements, pairs, kind, max_arity=max_arity)


def carrier_to_data(carrier: CarrierSet) -> dict:
    return {"elements": list(carrier.labels)}


def carrier_from_data(data: Any) -> CarrierSet:
    data = _expect_dict(data, "carrier set")
    if "elements" not in data:
        raise SchemaError("carrier set is missing 'elements'")
    return CarrierSet(tuple(_expect_list_of_strings(data["elements"], "elements")))


def source_from_data(data: Any, max_arity: int = DEFAULT_MAX_ARITY) -> Parent:
    data = _expect_dict(data, "map source")
    if "relation" in data or "relation_kind" in data:
        return poset_from_data(data, max_arity)
    return carrier_from_data(data)


def subset_to_data(subset: Subset) -> list[str]:
    return list(subset.names())


def map_to_data(mapping: PosetMap) -> dict:
    if isinstance(mapping.source, Poset):
        source = poset_to_data(mapping.source)
    else:
        source = carrier_to_data(mapping.source)
    return {
        "source": source,
        "target": poset_to_data(mapping.target),
        "map": {
            name: mapping.target.labels[mapping.assignment[i]]
            for i, name in enumerate(mapping.source.labels)
        },
    }


def _mapping_from_data(data: Any) -> dict[str, str]:
    data = _expect_dict(data, "map assignment")
    for key, value in data.items():
        if not isinstance(key, str) or not isinstance(value, str):
            raise SchemaError("map assignment must send names to names")
    return data


def map_from_data(data: Any, max_arity: int = DEFAULT_MAX_ARITY) -> PosetMap:
    data = _expect_dict(data, "map")
    for key in ("source", "target", "map"):
        if key not in data:
            raise SchemaError(f"map is missing {key!r}")
    source = source_from_data(data["source"], max_arity)
    target = poset_from_data(data["target"], max_arity)
    return PosetMap.from_names(source, target, _mapping_from_data(data["map"]))


def equation_to_data(domain: CarrierSet, codomain: Poset, t: PosetMap) -> dict:
    return {
        "domain": carrier_to_data(domain),
        "codomain": poset_to_data(codomain),
        "map": {
            name: codomain.labels[t.assignment[i]]
            for i, name in enumerate(domain.labels)
        },
    }


def equation_from_data(
    data: Any, max_arity: int = DEFAULT_MAX_ARITY
) -> tuple[CarrierSet, Poset, PosetMap]:
    data = _expect_dict(data, "equation")
    for key in ("domain", "codomain", "map"):
        if key not in data:
            raise SchemaError(f"equation is missing {key!r}")
    domain = carrier_from_data(data["domain"])
    codomain = poset_from_data(data["codomain"], max_arity)
    t = PosetMap.from_names(domain, codomain, _mapping_from_data(data["map"]))
    return domain, codomain, t


def target_from_data(data: Any, codomain: Poset) -> Subset:
    """A right hand side: either an explicit cut or a principal one."""
    data = _expect_dict(data, "target")
    if "cut" in data:
        names = _expect_list_of_strings(data["cut"], "cut")
        return codomain.subset(names)
    if "principal" in data:
        name = data["principal"]
        if not isinstance(name, str):
            raise SchemaError("principal must be an element name")
        return Subset(codomain, codomain.down_masks[codomain.index(name)])
    raise SchemaError("target must contain 'cut' or 'principal'")


def completed_to_data(completion: CompletedPoset) -> dict:
    parent = completion.parent
    return {
        "parent": poset_to_data(parent),
        "cuts": [
            [parent.labels[i] for i in _bits(mask)] for mask in completion.cut_masks
        ],
        "embedding": {
            parent.labels[i]: completion.embedding[i] for i in range(parent.arity)
        },
    }


def _bits(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if (mask >> i) & 1]


def solve_report_to_data(report: SolveReport) -> dict:
    flags = report.assumption_flags
    return {
        "schema_version": SCHEMA_VERSION,
        "target": subset_to_data(report.target),
        "solvable": report.solvable,
        "solution": None if report.solution is None else subset_to_data(report.solution),
        "sup_of_images": subset_to_data(report.sup_of_images),
        "inf_of_images": subset_to_data(report.inf_of_images),
        "lower_family": [subset_to_data(c) for c in report.lower_family],
        "upper_family": [subset_to_data(c) for c in report.upper_family],
        "empty_family_flags": {
            "lower": report.empty_family_flags.lower,
            "upper": report.empty_family_flags.upper,
        },
        "assumption_flags": {
            "quotient_has_minimum": flags.quotient_has_minimum,
            "quotient_has_maximum": flags.quotient_has_maximum,
            "codomain_has_minimum": flags.codomain_has_minimum,
            "codomain_has_maximum": flags.codomain_has_maximum,
            "empty_set_in_quotient_completion": flags.empty_set_in_quotient_completion,
            "empty_set_in_codomain_completion": flags.empty_set_in_codomain_completion,
        },
    }


def global_report_to_data(report: GlobalReport) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "covers_embedded_codomain": report.covers_embedded_codomain,
        "image_is_whole_completion": report.image_is_whole_completion,
        "flags_agree": report.flags_agree,
        "order_isomorphism": report.order_isomorphism,
        "image_size": report.image_size,
        "completion_sizes": list(report.completion_sizes),
    }
