"""Property-based checks of the structural invariants."""

import itertools

from hypothesis import given, settings, strategies as st

from fusionsys.fusion import fusion_of_group, generate_fusion, inner_fusion
from fusionsys.classify import is_saturated, is_saturated_sylow_extension
from fusionsys.groups import (
    FiniteGroup,
    generated_subgroup,
    perm_from_cycles,
    subgroup_lattice,
    sylow_p,
)

D8 = FiniteGroup.from_cycles("D8", 4, [[[1, 2, 3, 4]], [[1, 3]]])
S4 = FiniteGroup.from_cycles("S4", 4, [[[1, 2, 3, 4]], [[1, 2]]])
FD8 = fusion_of_group(S4, 2)

ALL_ISOS = sorted(
    (FD8.lattice.subs[i].members, images) for i, images, _ in FD8.iso_pairs()
)


@settings(max_examples=40, deadline=None)
@given(st.sets(st.sampled_from(range(len(ALL_ISOS))), max_size=6))
def test_closure_idempotent(picks):
    gens = [ALL_ISOS[k] for k in sorted(picks)]
    once = generate_fusion(FD8.S, 2, gens, lattice=FD8.lattice)
    keys = [
        (once.lattice.subs[i].members, images) for i, images, _ in once.iso_pairs()
    ]
    twice = generate_fusion(FD8.S, 2, keys, lattice=FD8.lattice)
    assert twice.same_system(once)


@settings(max_examples=40, deadline=None)
@given(
    st.sets(st.sampled_from(range(len(ALL_ISOS))), max_size=5),
    st.sets(st.sampled_from(range(len(ALL_ISOS))), max_size=3),
)
def test_closure_monotone(small, extra):
    a = generate_fusion(
        FD8.S, 2, [ALL_ISOS[k] for k in sorted(small)], lattice=FD8.lattice
    )
    b = generate_fusion(
        FD8.S, 2, [ALL_ISOS[k] for k in sorted(small | extra)], lattice=FD8.lattice
    )
    assert b.contains_system(a)


@settings(max_examples=40, deadline=None)
@given(st.sets(st.sampled_from(range(len(ALL_ISOS))), max_size=6))
def test_generated_systems_are_valid_and_deciders_agree(picks):
    from fusionsys.fusion import assert_valid_fusion_system

    gens = [ALL_ISOS[k] for k in sorted(picks)]
    F = generate_fusion(FD8.S, 2, gens, lattice=FD8.lattice)
    assert_valid_fusion_system(F)
    assert F.contains_system(inner_fusion(FD8.S, 2, lattice=FD8.lattice))
    assert is_saturated(F) == is_saturated_sylow_extension(F)


PERMS_S4 = list(itertools.permutations(range(4)))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.sampled_from(PERMS_S4), min_size=1, max_size=3))
def test_group_axioms_for_generated_permutation_groups(gens):
    G = FiniteGroup.from_permutations("gen", 4, gens)
    G._validate()
    assert sorted({G.mul(a, b) for a in range(G.order) for b in range(G.order)}) == list(
        range(G.order)
    )


@settings(max_examples=30, deadline=None)
@given(st.sets(st.sampled_from(range(24)), min_size=1, max_size=4))
def test_generated_subgroup_in_lattice(seed):
    lat = {H.members for H in subgroup_lattice(S4)}
    assert generated_subgroup(S4, seed).members in lat


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([2, 3]))
def test_sylow_conjugates_are_sylow(p):
    P = sylow_p(S4, p)
    for x in range(S4.order):
        from fusionsys.groups import conjugate_subgroup

        Q = conjugate_subgroup(S4, P, x)
        assert Q.order == P.order
