"""Central quotients, central extensions of subsystems, and their laws."""

import pytest

from fusionsys.errors import NotCentral
from fusionsys.classify import (
    center_of,
    central_extension_subsystem,
    is_saturated,
    quotient_central,
)
from fusionsys.fusion import (
    assert_valid_fusion_system,
    inner_fusion,
    subsystem_on_lattice,
    transport,
)
from fusionsys.groups import FiniteGroup, GroupMap, Subgroup, full_subgroup


def test_quotient_by_trivial_is_isomorphic(sl23):
    F = sl23["system"]
    triv = Subgroup(F.lattice.parent, (0,))
    quot = quotient_central(F, triv)
    assert quot.system.S.order == F.S.order
    assert quot.system.iso_count == F.iso_count
    assert is_saturated(quot.system)


def test_quotient_requires_central(s4_d8):
    F = s4_d8["system"]
    from fusionsys.groups import centralizer

    Z = centralizer(F.lattice.parent, F.S, within=F.S)
    with pytest.raises(NotCentral):
        quotient_central(F, Z)  # Z(D8) is not central in the S4 system


def test_sl23_quotient_is_a4_fusion(sl23, a5_v4):
    # SL(2,3)/center = A4 and the quotient system is the A4 = A5 system
    F = sl23["system"]
    Z = center_of(F)
    assert Z.order == 2
    quot = quotient_central(F, Z)
    assert_valid_fusion_system(quot.system)
    assert is_saturated(quot.system)
    assert quot.system.S.order == 4
    assert quot.system.iso_count == a5_v4["system"].iso_count == 13


def test_quotient_saturation_for_every_central_subgroup(sl23, sl23_c2):
    for built in (sl23, sl23_c2):
        F = built["system"]
        Z = center_of(F)
        lat = F.lattice
        for i, H in enumerate(lat.subs):
            if set(H.members) <= set(Z.members):
                quot = quotient_central(F, H)
                assert_valid_fusion_system(quot.system)
                assert is_saturated(quot.system)


def test_central_extension_inner_factor(sl23_c2):
    # E = the SL(2,3)-fusion over Q8 x 1 inside F(SL(2,3) x C2), Z = Z(F)
    F = sl23_c2["system"]
    G = F.lattice.parent
    Z = center_of(F)
    assert Z.order == 4
    q8 = next(
        H
        for H in F.lattice.subs
        if H.order == 8 and not H.is_abelian()
        and all(G.element_order(x) in (1, 2, 4) for x in H.members)
    )
    E = subsystem_on_lattice(F, q8)
    assert is_saturated(E)
    ZE = central_extension_subsystem(F, E, Z)
    assert_valid_fusion_system(ZE)
    assert is_saturated(ZE)
    assert ZE.S.order == 16

    # the quotient of ZE by Z matches E modulo its own center through the
    # natural map
    ZofE = center_of(E)
    assert set(ZofE.members) <= set(Z.members)
    zeq = quotient_central(ZE, Subgroup(ZE.lattice.parent, Z.members))
    eq = quotient_central(E, ZofE)
    psi = GroupMap(
        full_subgroup(eq.group),
        zeq.system.S,
        tuple(zeq.projection[r] for r in eq.reps),
    )
    moved = transport(eq.system, psi)
    assert moved.same_system(zeq.system)


def test_central_extension_trivial_z(a5_v4):
    # Z = 1: the extension is the subsystem itself
    F = a5_v4["system"]
    triv = Subgroup(F.lattice.parent, (0,))
    E = inner_fusion(F.S, 2)
    ZE = central_extension_subsystem(F, E, triv)
    assert ZE.same_system(E)


def test_normality_descends_with_extension_condition(sl23_c2):
    # instance of the intermediate-system lemma
    from fusionsys.normal import is_normal, lemma_normality_in_intermediate

    F = sl23_c2["system"]
    G = F.lattice.parent
    q8 = next(
        H
        for H in F.lattice.subs
        if H.order == 8 and not H.is_abelian()
    )
    E = subsystem_on_lattice(F, q8)
    assert is_normal(E, F).overall
    Z = center_of(F)
    F0 = central_extension_subsystem(F, E, Z)  # a saturated intermediate
    out = lemma_normality_in_intermediate(E, F, F0)
    assert out["extension_holds"] is True
    assert out["confirmed"] is True


def test_lemma_premise_enforced(s4_d8):
    from fusionsys.errors import PremiseFailed
    from fusionsys.normal import lemma_normality_in_intermediate

    F = s4_d8["system"]
    inner = inner_fusion(F.S, 2)
    with pytest.raises(PremiseFailed):
        lemma_normality_in_intermediate(inner, F, F)
