"""Saturation deciders, collection properties, criteria, transfer lemma."""

import pytest

from fusionsys.errors import (
    HNotClosedUnderOvergroups,
    HNotConjugacyClosed,
    MalformedH,
)
from fusionsys.classify import (
    is_fully_automized,
    is_fully_centralized,
    is_fully_normalized,
    is_H_generated,
    is_H_saturated,
    is_receptive,
    is_saturated,
    is_saturated_sylow_extension,
    centric_radical_indices,
    receptivity_transfer_check,
    saturation_criterion,
    strongly_closed_indices,
)
from fusionsys.fusion import generate_fusion, inner_fusion, subsystem_on_lattice
from fusionsys.groups import FiniteGroup, full_subgroup
from fusionsys import corpus


def test_abelian_inner_saturated():
    V4 = FiniteGroup.from_cycles("V4", 4, [[[1, 2], [3, 4]], [[1, 3], [2, 4]]])
    F = inner_fusion(full_subgroup(V4), 2)
    assert is_saturated(F)
    assert is_saturated_sylow_extension(F)


@pytest.mark.parametrize("name", corpus.corpus_names())
def test_deciders_agree_everywhere(name):
    F = corpus.build(name)["system"]
    assert is_saturated(F) == is_saturated_sylow_extension(F)


@pytest.mark.parametrize(
    "name", ["broken_v4_swap", "broken_c4_aut", "broken_d8_outer"]
)
def test_broken_systems_unsaturated(name):
    F = corpus.build(name)["system"]
    assert not is_saturated(F)
    assert not is_saturated_sylow_extension(F)


def test_broken_swap_failure_detail():
    F = corpus.build("broken_v4_swap")["system"]
    i = F.lattice.S_idx
    # the swap makes Aut_F(S) of order 2 while Aut_S(S) = 1
    assert F.aut_order(i) == 2
    assert not is_fully_automized(F, i)


def test_realizable_systems_saturated():
    for name in corpus.corpus_names():
        built = corpus.build(name)
        if "group" in built or "big" in built:
            assert is_saturated(built["system"]), name


def test_sylow_extension_axioms_direction(s4_d8):
    # classwise cross-check: a fully normalized member is automized and
    # centralized, a fully centralized one is receptive
    F = s4_d8["system"]
    for i in range(len(F.lattice.subs)):
        if is_fully_normalized(F, i):
            assert is_fully_automized(F, i)
            assert is_fully_centralized(F, i)
        if is_fully_centralized(F, i):
            assert is_receptive(F, i)


def test_h_saturated_all_subgroups_equals_saturated(s4_d8):
    F = s4_d8["system"]
    allh = list(range(len(F.lattice.subs)))
    assert is_H_saturated(F, allh) == is_saturated(F)
    assert is_H_generated(F, allh)


def test_h_generated_centric_radicals(s4_d8):
    # conjugacy-and-overgroup closure of the centric radicals generates
    F = s4_d8["system"]
    from fusionsys.classify import overgroup_closure

    seed = set(centric_radical_indices(F))
    closed = set()
    for i in seed:
        closed |= set(F.subgroup_class(i))
    closed = {j for i in overgroup_closure(F, closed) for j in F.subgroup_class(i)}
    assert is_H_generated(F, sorted(closed))


def test_h_generated_sylow_only_fails(s4_d8):
    F = s4_d8["system"]
    assert not is_H_generated(F, [F.lattice.S_idx])


def test_h_closure_errors(s4_d8):
    F = s4_d8["system"]
    order2 = [i for i, H in enumerate(F.lattice.subs) if H.order == 2]
    fused = [i for i in order2 if len(F.subgroup_class(i)) > 1]
    with pytest.raises(HNotConjugacyClosed):
        is_H_saturated(F, [fused[0]])


def test_saturation_criterion_s4(s4_d8):
    F = s4_d8["system"]
    from fusionsys.classify import overgroup_closure

    seed = set()
    for i in centric_radical_indices(F):
        seed |= set(F.subgroup_class(i))
    closed = {j for i in overgroup_closure(F, seed) for j in F.subgroup_class(i)}
    rep = saturation_criterion(F, sorted(closed))
    assert rep["criterion_a"] is True
    assert rep["criterion_b"] is True
    # hypotheses hold, so the direct decider must agree
    assert is_saturated(F)


def test_saturation_criterion_full_collection(a5_v4):
    F = a5_v4["system"]
    allh = list(range(len(F.lattice.subs)))
    rep = saturation_criterion(F, allh)
    assert rep["criterion_a"] is True
    assert rep["criterion_b"] is True


def test_saturation_criterion_broken():
    F = corpus.build("broken_d8_outer")["system"]
    allh = list(range(len(F.lattice.subs)))
    rep = saturation_criterion(F, allh)
    # consistency: since saturation fails, some hypothesis must fail
    assert not (rep["criterion_a"] and rep["criterion_b"]) or is_saturated(F)
    assert not is_saturated(F)
    assert rep["criterion_b"] is False


def test_receptivity_transfer_trivial_instance(s4_d8):
    # E = F, collection = all subgroups of S: hypotheses (i)-(ii) hold
    F = s4_d8["system"]
    allh = list(range(len(F.lattice.subs)))
    rep = receptivity_transfer_check(F, F, allh)
    assert rep["hypotheses"]["i"]
    assert rep["hypotheses"]["ii"]
    assert rep["hypotheses"]["iii"]
    assert rep["conclusions"]["receptive_transfer"]
    assert rep["conclusions"]["collection_saturated"]


def test_receptivity_transfer_factorwise(wreath):
    # E = the factorwise normalizer subsystem of the wreath family
    from fusionsys.normalizers import build_family, construct_normalizers, normalizer_objects

    F = wreath["system"]
    fam = build_family(F, wreath["factors"])
    pair = construct_normalizers(fam, [0, 1])
    E = pair.factorwise
    lat = F.lattice
    objs = [
        i
        for i in normalizer_objects(fam, [0, 1])
        if lat.masks[i] & ~E.S.mask == 0
    ]
    rep = receptivity_transfer_check(F, E, objs)
    assert rep["hypotheses"]["i"]
    assert rep["hypotheses"]["ii"]
    assert rep["hypotheses"]["iii"]
    assert rep["conclusions"]["receptive_transfer"]
    assert rep["conclusions"]["collection_saturated"]


def test_receptivity_transfer_detects_bad_input(s4_d8):
    F = s4_d8["system"]
    with pytest.raises(MalformedH):
        receptivity_transfer_check(F, F, [0])  # not closed under overgroups


def test_receptivity_transfer_flags_failed_hypothesis():
    # an unsaturated generated system on D8 fails hypothesis (iii):
    # the inner automorphisms are index 2 in its Sylow automorphisms
    F = corpus.build("broken_d8_outer")["system"]
    allh = list(range(len(F.lattice.subs)))
    rep = receptivity_transfer_check(F, F, allh)
    assert rep["hypotheses"]["iii"] is False
    assert "collection_saturated" not in rep["conclusions"]
