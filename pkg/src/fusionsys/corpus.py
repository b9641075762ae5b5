"""The verification corpus: named systems with oracle-derived expected data.

Each entry realizes one fusion system, either from a permutation group
(table-backed when small, element-array-backed when large), or generated
from explicit automorphisms (including deliberately unsaturated ones).
Expected-result blocks are regenerable by the oracle runner and stored
with provenance tags; a corpus run recomputes everything and fails on
any mismatch.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

from .bigperm import (
    BigPermGroup,
    close_perm_rows,
    fusion_of_big_group,
    subsystem_of_subgroup,
)
from .classify import (
    alperin_generates,
    center_of,
    centric_radical_indices,
    focal_subgroup,
    is_saturated,
    is_saturated_sylow_extension,
)
from .fusion import FusionSystem, fusion_of_group, generate_fusion, inner_fusion
from .groups import FiniteGroup, Subgroup, full_subgroup, perm_from_cycles, sylow_p
from .normal import is_constrained, normal_p_core

A5_BLOCKS = {
    1: ([[1, 2, 3, 4, 5]], [[1, 2, 3]]),
    6: ([[6, 7, 8, 9, 10]], [[6, 7, 8]]),
    11: ([[11, 12, 13, 14, 15]], [[11, 12, 13]]),
}


@dataclass
class CorpusEntry:
    name: str
    prime: int
    kind: str                      # table | bigperm | generated
    description: str
    degree: int = 0
    generators: list = field(default_factory=list)   # cycle lists
    factors: list = field(default_factory=list)      # per-factor cycle lists
    subfamilies: list = field(default_factory=list)  # J subsets to verify
    build_fn: object = None        # for generated entries


def _sl23_perms():
    vecs = [(a, b) for a in range(3) for b in range(3) if (a, b) != (0, 0)]
    idx = {v: i for i, v in enumerate(vecs)}

    def mat_perm(m):
        return tuple(
            idx[
                (
                    (m[0][0] * v[0] + m[0][1] * v[1]) % 3,
                    (m[1][0] * v[0] + m[1][1] * v[1]) % 3,
                )
            ]
            for v in vecs
        )

    return [mat_perm([[1, 1], [0, 1]]), mat_perm([[0, 2], [1, 0]])]


def _build_generated_v4_swap():
    V4 = FiniteGroup.from_cycles("V4", 4, [[[1, 2], [3, 4]], [[1, 3], [2, 4]]])
    S = full_subgroup(V4)
    m = S.members
    return generate_fusion(S, 2, [(m, (m[0], m[2], m[1], m[3]))])


def _build_generated_c4_aut():
    C4 = FiniteGroup.cyclic(4)
    S = full_subgroup(C4)
    images = tuple(C4.inv_table[x] for x in S.members)
    return generate_fusion(S, 2, [(S.members, images)])


def _build_generated_d8_outer():
    D8 = FiniteGroup.from_cycles("D8", 4, [[[1, 2, 3, 4]], [[1, 3]]])
    S = full_subgroup(D8)
    r = next(x for x in S.members if D8.element_order(x) == 4)
    refls = [x for x in S.members if D8.element_order(x) == 2 and x != D8.mul(r, r)]
    s = refls[0]
    # outer automorphism: fix r, send s to r*s
    gen_images = {r: r, s: D8.mul(r, s)}
    images = _hom_from_generator_images(D8, S, gen_images)
    return generate_fusion(S, 2, [(S.members, images)])


def _build_generated_v4_triple():
    V4 = FiniteGroup.from_cycles("V4", 4, [[[1, 2], [3, 4]], [[1, 3], [2, 4]]])
    S = full_subgroup(V4)
    m = S.members
    # cycle the three involutions
    return generate_fusion(S, 2, [(m, (m[0], m[2], m[3], m[1]))])


def _hom_from_generator_images(G, S, gen_images):
    """Total image tuple from images of a generating set, by closure."""
    known = {0: 0}
    frontier = [0]
    gens = list(gen_images)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = G.mul_table[a][g]
                if b not in known:
                    known[b] = G.mul_table[known[a]][gen_images[g]]
                    nxt.append(b)
        frontier = nxt
    return tuple(known[x] for x in S.members)


ENTRIES = {}


def _register(entry):
    ENTRIES[entry.name] = entry
    return entry


_register(CorpusEntry(
    name="trivial", prime=2, kind="table",
    description="the one-object system over the trivial group",
    degree=1, generators=[],
))
_register(CorpusEntry(
    name="klein_inner", prime=2, kind="table",
    description="inner fusion of the Klein four group",
    degree=4, generators=[[[1, 2], [3, 4]], [[1, 3], [2, 4]]],
))
_register(CorpusEntry(
    name="c4_inner", prime=2, kind="table",
    description="inner fusion of the cyclic group of order 4",
    degree=4, generators=[[[1, 2, 3, 4]]],
))
_register(CorpusEntry(
    name="d8_inner", prime=2, kind="table",
    description="inner fusion of the dihedral group of order 8",
    degree=4, generators=[[[1, 2, 3, 4]], [[1, 3]]],
))
_register(CorpusEntry(
    name="s4_d8", prime=2, kind="table",
    description="the symmetric group on 4 points over its dihedral Sylow",
    degree=4, generators=[[[1, 2, 3, 4]], [[1, 2]]],
))
_register(CorpusEntry(
    name="a5_v4", prime=2, kind="table",
    description="the alternating group on 5 points over a Klein four Sylow",
    degree=5, generators=[[[1, 2, 3, 4, 5]], [[1, 2, 3]]],
))
_register(CorpusEntry(
    name="a6_d8", prime=2, kind="table",
    description="the alternating group on 6 points over a dihedral Sylow",
    degree=6, generators=[[[1, 2, 3]], [[2, 3, 4, 5, 6]]],
))
_register(CorpusEntry(
    name="q8_sl23", prime=2, kind="table",
    description="the special linear group SL(2,3) over a quaternion Sylow",
    degree=8, generators="sl23",
))
_register(CorpusEntry(
    name="sl23_c2", prime=2, kind="table",
    description="SL(2,3) times C2; nontrivial center with a spare factor",
    degree=10, generators="sl23_c2",
))
_register(CorpusEntry(
    name="a5xa5", prime=2, kind="bigperm",
    description="two commuting copies of the A5 system",
    degree=10,
    generators=[[[1, 2, 3, 4, 5]], [[1, 2, 3]], [[6, 7, 8, 9, 10]], [[6, 7, 8]]],
    factors=[
        [[[1, 2, 3, 4, 5]], [[1, 2, 3]]],
        [[[6, 7, 8, 9, 10]], [[6, 7, 8]]],
    ],
    subfamilies=[[0], [0, 1]],
))
_register(CorpusEntry(
    name="wreath_a5", prime=2, kind="bigperm",
    description="the wreath-type extension swapping two A5 factors",
    degree=10,
    generators=[
        [[1, 2, 3, 4, 5]], [[1, 2, 3]],
        [[6, 7, 8, 9, 10]], [[6, 7, 8]],
        [[1, 6], [2, 7], [3, 8], [4, 9], [5, 10]],
    ],
    factors=[
        [[[1, 2, 3, 4, 5]], [[1, 2, 3]]],
        [[[6, 7, 8, 9, 10]], [[6, 7, 8]]],
    ],
    subfamilies=[[0], [0, 1]],
))
_register(CorpusEntry(
    name="a6xa6", prime=2, kind="bigperm",
    description="two commuting copies of the simple A6 system",
    degree=12,
    generators=[[[1, 2, 3]], [[2, 3, 4, 5, 6]], [[7, 8, 9]], [[8, 9, 10, 11, 12]]],
    factors=[
        [[[1, 2, 3]], [[2, 3, 4, 5, 6]]],
        [[[7, 8, 9]], [[8, 9, 10, 11, 12]]],
    ],
    subfamilies=[[0], [0, 1]],
))
_register(CorpusEntry(
    name="cube_a5_c3", prime=2, kind="bigperm",
    description="three A5 factors cycled by an order-3 extension",
    degree=15,
    generators=[
        [[1, 2, 3, 4, 5]], [[1, 2, 3]],
        [[6, 7, 8, 9, 10]], [[6, 7, 8]],
        [[11, 12, 13, 14, 15]], [[11, 12, 13]],
        [[1, 6, 11], [2, 7, 12], [3, 8, 13], [4, 9, 14], [5, 10, 15]],
    ],
    factors=[
        [[[1, 2, 3, 4, 5]], [[1, 2, 3]]],
        [[[6, 7, 8, 9, 10]], [[6, 7, 8]]],
        [[[11, 12, 13, 14, 15]], [[11, 12, 13]]],
    ],
    subfamilies=[[0], [0, 1, 2]],
))
_register(CorpusEntry(
    name="broken_v4_swap", prime=2, kind="generated",
    description="Klein four group with a single involution swap; unsaturated",
    build_fn=_build_generated_v4_swap,
))
_register(CorpusEntry(
    name="broken_c4_aut", prime=2, kind="generated",
    description="cyclic group of order 4 with its inversion; unsaturated",
    build_fn=_build_generated_c4_aut,
))
_register(CorpusEntry(
    name="broken_d8_outer", prime=2, kind="generated",
    description="dihedral group of order 8 with an outer automorphism; unsaturated",
    build_fn=_build_generated_d8_outer,
))
_register(CorpusEntry(
    name="gen_v4_triple", prime=2, kind="generated",
    description="Klein four group with an order-3 automorphism; saturated",
    build_fn=_build_generated_v4_triple,
))


_BUILT = {}


def corpus_names():
    return sorted(ENTRIES)


def build(name: str) -> dict:
    """Build (and cache) everything for one corpus entry.

    Returns {"entry", "system", and for realizable entries "group" or
    "big", plus "factors": explicit factor subsystems when declared}.
    """
    if name in _BUILT:
        return _BUILT[name]
    entry = ENTRIES[name]
    out = {"entry": entry}
    if entry.kind == "generated":
        out["system"] = entry.build_fn()
    elif entry.kind == "table":
        gens = entry.generators
        if gens == "sl23":
            perms = _sl23_perms()
            G = FiniteGroup.from_permutations(entry.name, 8, perms)
        elif gens == "sl23_c2":
            base = _sl23_perms()
            perms = [tuple(list(g) + [8, 9]) for g in base]
            perms.append(tuple(list(range(8)) + [9, 8]))
            G = FiniteGroup.from_permutations(entry.name, 10, perms)
        elif entry.degree <= 1:
            G = FiniteGroup.trivial()
        else:
            G = FiniteGroup.from_cycles(entry.name, entry.degree, gens, cap=512)
        out["group"] = G
        out["system"] = fusion_of_group(G, entry.prime)
    else:
        big = BigPermGroup.from_cycles(entry.name, entry.degree, entry.generators)
        out["big"] = big
        out["system"] = fusion_of_big_group(big, entry.prime)
        factors = []
        for fac in entry.factors:
            rows = close_perm_rows(
                entry.degree, [perm_from_cycles(entry.degree, c) for c in fac]
            )
            factors.append(
                subsystem_of_subgroup(out["system"], big, rows, entry.prime)
            )
        out["factors"] = factors
    _BUILT[name] = out
    return out


def expected_results(name: str) -> dict:
    """Compute the expected-results block for an entry with the oracle
    (direct-definition) code paths; every field carries its provenance."""
    built = build(name)
    F = built["system"]
    entry = built["entry"]

    def derived(v):
        return {"value": v, "provenance": "derived-by-oracle"}

    def trivial(v):
        return {"value": v, "provenance": "trivial"}

    sat_def = is_saturated(F)
    sat_axioms = is_saturated_sylow_extension(F)
    block = {
        "prime": trivial(entry.prime),
        "sylow_order": derived(F.S.order),
        "subgroup_count": derived(len(F.lattice.subs)),
        "isomorphism_count": derived(F.iso_count),
        "class_count": derived(len(F.subgroup_class_reps())),
        "saturated_by_definition": derived(sat_def),
        "saturated_by_axioms": derived(sat_axioms),
        "deciders_agree": derived(sat_def == sat_axioms),
        "focal_order": derived(focal_subgroup(F).order),
        "center_order": derived(center_of(F).order),
        "p_core_order": derived(normal_p_core(F).order),
        "constrained": derived(is_constrained(F)),
        "centric_radical_count": derived(len(centric_radical_indices(F))),
    }
    if "group" in built:
        block["group_order"] = trivial(built["group"].order)
    if "big" in built:
        block["group_order"] = trivial(built["big"].order)
    if sat_def:
        block["alperin_generates"] = derived(alperin_generates(F))
    return block


def expected_values(block: dict) -> dict:
    return {k: v["value"] for k, v in block.items()}


def load_expected() -> dict:
    ref = resources.files("fusionsys").joinpath("data/corpus_expected.json")
    with ref.open("r", encoding="utf-8") as fh:
        return json.load(fh)


def regenerate_expected(path=None) -> dict:
    data = {name: expected_results(name) for name in corpus_names()}
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(data, fh, indent=1, sort_keys=True)
            fh.write("\n")
    return data


def run_entry(name: str, stored: dict) -> dict:
    """Recompute one entry and compare with its stored expected block."""
    computed = expected_results(name)
    mismatches = []
    want = stored.get(name, {})
    for key in sorted(set(want) | set(computed)):
        a = want.get(key, {}).get("value")
        b = computed.get(key, {}).get("value")
        if a != b:
            mismatches.append({"field": key, "stored": a, "computed": b})
    return {
        "name": name,
        "ok": not mismatches,
        "mismatches": mismatches,
        "computed": computed,
    }
