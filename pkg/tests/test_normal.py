"""Normal subsystems, enumeration, quasisimplicity, components.

Several expected values here are honest oracle results that contradict
folklore: the Klein-four system of A5 equals the constrained A4 system,
so its inner system is normal in it and it is not quasisimple.  The
exhaustive enumerator is the oracle for all simplicity verdicts.
"""

import pytest

from fusionsys.errors import NotSaturatedInput, NotSubsystem
from fusionsys.classify import center_of, is_saturated
from fusionsys.fusion import inner_fusion, is_subsystem, subsystem_on_lattice
from fusionsys.groups import FiniteGroup, Subgroup, full_subgroup
from fusionsys.normal import (
    all_subsystems_over,
    components_of,
    enumerate_normal_subsystems,
    group_components,
    is_constrained,
    is_normal,
    is_normal_p_subgroup,
    is_quasisimple,
    is_subnormal,
    normal_p_core,
    simplicity_verdict,
    strong_invariance_check,
)


def test_system_normal_in_itself(a5_v4):
    F = a5_v4["system"]
    rep = is_normal(F, F)
    assert rep.overall
    assert rep.as_dict()["overall"]


def test_inner_v4_is_normal_in_a5_system(a5_v4):
    # the A5 system over V4 equals the A4 system; every morphism is the
    # restriction of an automorphism of V4, so all four conditions hold
    F = a5_v4["system"]
    inner = inner_fusion(F.S, 2)
    rep = is_normal(inner, F)
    assert rep.strongly_closed
    assert rep.invariance
    assert rep.frattini
    assert rep.extension
    assert rep.overall


def test_inner_not_normal_when_frattini_fails(a6_d8):
    F = a6_d8["system"]
    inner = inner_fusion(F.S, 2)
    rep = is_normal(inner, F)
    assert not rep.frattini
    assert not rep.overall
    assert "frattini" in rep.witnesses


def test_normality_premises_checked(a6_d8):
    F = a6_d8["system"]
    c4 = next(
        H
        for H in F.lattice.subs
        if H.order == 4
        and any(F.lattice.parent.element_order(m) == 4 for m in H.members)
    )
    E = subsystem_on_lattice(F, c4)  # Aut of order 2 over C4: unsaturated
    with pytest.raises(NotSaturatedInput):
        is_normal(E, F)


def test_product_normal_in_wreath(wreath):
    from fusionsys.normalizers import central_product

    F = wreath["system"]
    E = central_product(F, wreath["factors"])
    assert is_normal(E, F).overall


def test_single_factor_not_normal_in_wreath(wreath):
    # the swap fuses the first factor's support into the second, so its
    # support is not strongly closed and the factor is not normal
    F = wreath["system"]
    E1 = wreath["factors"][0]
    rep = is_normal(E1, F)
    assert not rep.strongly_closed
    assert "strongly_closed" in rep.witnesses
    assert not rep.overall


def test_strong_invariance_follows_from_normal(a5_v4, sl23):
    for built in (a5_v4, sl23):
        F = built["system"]
        inner = inner_fusion(F.S, 2)
        if is_normal(inner, F).overall:
            assert strong_invariance_check(inner, F)
        assert strong_invariance_check(F, F)


def test_strong_invariance_holds_for_factor_despite_fusion(wreath):
    # strong invariance quantifies only morphisms into the support, which
    # the swap never produces; the condition holds even though strong
    # closure fails
    F = wreath["system"]
    E1 = wreath["factors"][0]
    assert strong_invariance_check(E1, F)


def test_strong_invariance_fails_for_partial_fusion(a6_d8):
    # the subsystem fusing only one Klein subgroup of the A6 system: an
    # ambient morphism can twist an inner map into unfused territory
    from fusionsys.fusion import generate_fusion

    F = a6_d8["system"]
    kleins = [
        i
        for i, H in enumerate(F.lattice.subs)
        if H.order == 4 and F.aut_order(i) == 6
    ]
    assert len(kleins) == 2
    v4a = kleins[0]
    gens = [
        (F.lattice.subs[v4a].members, images)
        for images in F.automorphism_images(v4a)
    ]
    E = generate_fusion(F.S, 2, gens)
    assert E.iso_count < F.iso_count
    assert not strong_invariance_check(E, F)


# -- normal p-subgroups -------------------------------------------------------


def test_trivial_subgroup_normal(s4_d8):
    F = s4_d8["system"]
    assert is_normal_p_subgroup(F, Subgroup(F.lattice.parent, (0,)))


def test_inner_system_sylow_normal():
    D8 = FiniteGroup.from_cycles("D8", 4, [[[1, 2, 3, 4]], [[1, 3]]])
    from fusionsys.fusion import fusion_of_group

    F = fusion_of_group(D8, 2)
    assert is_normal_p_subgroup(F, F.S)
    assert is_constrained(F)


def test_a5_p_core_is_v4(a5_v4):
    # honest value: the A5 system is the A4 system, so O_2 = V4
    F = a5_v4["system"]
    assert normal_p_core(F).order == 4
    assert is_constrained(F)


def test_a6_p_core_trivial(a6_d8):
    F = a6_d8["system"]
    assert normal_p_core(F).order == 1
    assert not is_constrained(F)


def test_wreath_constrained(wreath):
    F = wreath["system"]
    assert normal_p_core(F).order == 16
    assert is_constrained(F)


# -- enumeration ---------------------------------------------------------------


def test_enumerate_inner_cyclic():
    C4 = FiniteGroup.cyclic(4)
    from fusionsys.fusion import fusion_of_group

    F = fusion_of_group(C4, 2)
    enum = enumerate_normal_subsystems(F)
    assert enum.complete
    # every subgroup is strongly closed; the full systems over each are normal
    assert [E.S.order for E in enum.systems] == [1, 2, 4]


def test_enumerate_a5(a5_v4):
    F = a5_v4["system"]
    enum = enumerate_normal_subsystems(F)
    assert enum.complete
    shapes = [(E.S.order, E.iso_count) for E in enum.systems]
    assert shapes == [(1, 1), (4, 5), (4, 13)]  # trivial, inner, everything


def test_enumerate_closed_under_verification(a5_v4):
    # cross-check against exhaustive search: no verified-normal subsystem
    # exists outside the enumerated list
    F = a5_v4["system"]
    enum = enumerate_normal_subsystems(F)
    keys = {frozenset(E.iso_key_set()) for E in enum.systems}
    for i in range(len(F.lattice.subs)):
        T = F.lattice.subs[i]
        from fusionsys.classify import is_strongly_closed

        if not is_strongly_closed(F, i):
            continue
        for E in all_subsystems_over(F, T):
            if is_saturated(E) and is_normal(E, F, check_premises=False).overall:
                assert frozenset(E.iso_key_set()) in keys


def test_enumerate_wreath_finds_product(wreath):
    from fusionsys.normalizers import central_product

    F = wreath["system"]
    E = central_product(F, wreath["factors"])
    enum = enumerate_normal_subsystems(F)
    assert any(N.same_system(E) for N in enum.systems)
    assert not enum.complete  # supports of order 16 and 32 exceed the cap


# -- simplicity and quasisimplicity ----------------------------------------------


def test_trivial_system_never_quasisimple():
    triv = FiniteGroup.trivial()
    from fusionsys.fusion import fusion_of_group

    F = fusion_of_group(triv, 2)
    assert not is_quasisimple(F)


def test_a5_not_simple_not_quasisimple(a5_v4):
    F = a5_v4["system"]
    assert simplicity_verdict(F) == "no"
    assert not is_quasisimple(F)


def test_a6_simple_and_quasisimple(a6_d8):
    F = a6_d8["system"]
    assert simplicity_verdict(F) == "yes"
    assert is_quasisimple(F)
    assert center_of(F).order == 1


def test_product_of_simples_not_quasisimple(a6xa6):
    F = a6xa6["system"]
    E1 = a6xa6["factors"][0]
    assert simplicity_verdict(E1) == "yes"
    # foc(F) = S but F/1 = F decomposes, hence not simple


def test_subnormal_self_and_factors(a6xa6):
    F = a6xa6["system"]
    E1, E2 = a6xa6["factors"]
    assert is_subnormal(F, F)
    assert is_subnormal(E1, F)
    assert is_subnormal(E2, F)


def test_not_subnormal(a6_d8):
    F = a6_d8["system"]
    inner = inner_fusion(F.S, 2)
    assert not is_subnormal(inner, F)


# -- components --------------------------------------------------------------------


def test_group_components_a5_a6():
    A5 = FiniteGroup.from_cycles("A5", 5, [[[1, 2, 3, 4, 5]], [[1, 2, 3]]])
    assert [K.order for K in group_components(A5)] == [60]
    S4 = FiniteGroup.from_cycles("S4", 4, [[[1, 2, 3, 4]], [[1, 2]]])
    assert group_components(S4) == []


def test_components_a5_empty(a5_v4):
    # the group A5 is its own component but its fusion system is not
    # quasisimple, so the fusion system has none (it is constrained)
    F = a5_v4["system"]
    comps = components_of(F, group=a5_v4["group"])
    assert comps == []
    assert is_constrained(F)


def test_components_a6_self(a6_d8):
    F = a6_d8["system"]
    comps = components_of(F, group=a6_d8["group"])
    assert len(comps) == 1
    assert comps[0].same_system(F)


def test_components_a6xa6(a6xa6):
    F = a6xa6["system"]
    comps = components_of(F, candidates=a6xa6["factors"])
    assert len(comps) == 2
    assert sorted(E.S.order for E in comps) == [8, 8]
    # components present, so the system is not constrained
    assert not is_constrained(F)


def test_components_wreath_empty(wreath):
    F = wreath["system"]
    comps = components_of(F, candidates=wreath["factors"])
    assert comps == []
