"""Commuting families of subsystems and their normalizer subsystems.

Given pairwise commuting saturated subsystems whose central product is
normal in the ambient system, the automorphisms of the joint support
permute the factors; labeling every morphism by that permutation induces
a verified labeling setup, and the normalizers of a subfamily are the
subsystems cut out by the stabilizer subgroups.  The two normalizer
theorems (setwise and factorwise) are verified here exhaustively, with
maximality tested against a deterministic candidate pool.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import (
    Constrained,
    HypothesisFailed,
    IncompleteEnumeration,
    NotCommuting,
    NotFullyNormalized,
    NotInH,
    NotSaturatedInput,
    NotSubsystem,
)
from .classify import (
    center_of,
    focal_subgroup,
    is_fully_normalized,
    is_saturated,
    is_strongly_closed,
    quotient_central,
    central_extension_subsystem,
    strongly_closed_indices,
)
from .fusion import (
    FusionSystem,
    generate_fusion,
    inner_fusion,
    is_subsystem,
    subsystem_on_lattice,
    transport,
)
from .groups import (
    FiniteGroup,
    GroupMap,
    Subgroup,
    generated_subgroup,
    normalizer,
    subgroup_lattice,
)
from .labeling import MorphismLabeling, build_labeling
from .normal import is_normal, components_of, is_constrained


# -- commuting families --------------------------------------------------------


def commute_check(F: FusionSystem, systems, witness: list = None) -> bool:
    """Whether the subsystems commute: disjoint commuting supports and
    joint extensions of every tuple of morphisms, checked exhaustively."""
    G = F.lattice.parent
    supports = [E.S for E in systems]
    for a in range(len(systems)):
        for b in range(a + 1, len(systems)):
            for x in supports[a].members:
                for y in supports[b].members:
                    if G.mul_table[x][y] != G.mul_table[y][x]:
                        if witness is not None:
                            witness.append(("commutator", a, b, x, y))
                        return False
    iso_lists = []
    for E in systems:
        entries = []
        for i, bucket in enumerate(E.isos_by_dom):
            dom = E.lattice.subs[i].members
            for images in sorted(bucket):
                entries.append((dom, images))
        iso_lists.append(entries)
    for combo in itertools.product(*iso_lists):
        if not _joint_extension_exists(F, combo):
            if witness is not None:
                witness.append(("no_joint_extension", combo))
            return False
    return True


def _joint_extension_exists(F: FusionSystem, combo) -> bool:
    lat = F.lattice
    G = lat.parent
    dom_members = set()
    for dom, _ in combo:
        dom_members |= set(dom)
    P = generated_subgroup(G, dom_members)
    p_idx = lat.idx_of(P.members)
    pos = lat.member_pos[p_idx]
    img_members = set()
    for _, images in combo:
        img_members |= set(images)
    Q = generated_subgroup(G, img_members)
    qmask = Q.mask
    for psi, tgt in F.isos_by_dom[p_idx].items():
        if lat.masks[tgt] & ~qmask:
            continue
        ok = True
        for dom, images in combo:
            if any(psi[pos[m]] != images[k] for k, m in enumerate(dom)):
                ok = False
                break
        if ok:
            return True
    return False


def central_product(F: FusionSystem, systems, verify_saturated: bool = True) -> FusionSystem:
    """The central product subsystem generated by joint morphisms over the
    product of the supports."""
    wit = []
    if not commute_check(F, systems, witness=wit):
        raise NotCommuting(f"subsystems do not commute: {wit[:1]}")
    lat = F.lattice
    G = lat.parent
    supports = [E.S for E in systems]
    T = generated_subgroup(G, set().union(*(set(s.members) for s in supports)))
    t_masks = [s.mask for s in supports]
    gens = []
    for i in range(len(lat.subs)):
        if lat.masks[i] & ~T.mask:
            continue
        dom = lat.subs[i].members
        parts = []
        prod_members = {0}
        for mask in t_masks:
            part = tuple(m for m in dom if (1 << m) & mask)
            parts.append(part)
            for m in part:
                prod_members |= {G.mul_table[x][m] for x in set(prod_members)}
        joint = generated_subgroup(G, set().union(*(set(pt) for pt in parts)) | {0})
        if joint.members != dom:
            continue  # not a product of its factor intersections
        pos = lat.member_pos[i]
        for images, tgt in F.isos_by_dom[i].items():
            good = True
            for k, mask in enumerate(t_masks):
                part = parts[k]
                restr = tuple(images[pos[m]] for m in part)
                if any((1 << y) & ~mask for y in restr):
                    good = False
                    break
                if not systems[k].has_iso(part, restr):
                    good = False
                    break
            if good:
                gens.append((dom, images))
    E = generate_fusion(T, F.p, gens)
    if verify_saturated and not is_saturated(E):
        raise NotSaturatedInput("central product failed its saturation check")
    return E


@dataclass
class CommutingFamily:
    """A verified family: commuting saturated subsystems with normal
    central product whose supports are permuted by ambient automorphisms."""

    system: FusionSystem
    members: tuple
    product: FusionSystem
    support: Subgroup          # T, product of the member supports
    center: Subgroup           # Z, the center of the product
    perm_group: FiniteGroup    # image of the factor-permutation labeling
    perm_of_aut: dict          # Aut_F(T) image tuple -> perm_group element
    sylow_perm_image: Subgroup
    objects: tuple             # lattice indices with P meet T_i outside Z
    labeling: MorphismLabeling = field(default=None)

    @property
    def k(self) -> int:
        return len(self.members)

    def support_of(self, i: int) -> Subgroup:
        return self.members[i].S


def build_family(F: FusionSystem, systems) -> CommutingFamily:
    """Verify the family hypotheses and package the permutation data.

    Fails with HypothesisFailed('i') when the central product is not
    normal, ('ii') when a support sits inside the product's center, and
    ('iii') when some automorphism of the support fails to permute the
    factor supports.
    """
    for E in systems:
        if not is_subsystem(E, F):
            raise NotSubsystem("family member is not a subsystem")
        if not is_saturated(E):
            raise NotSaturatedInput("family members must be saturated")
    E = central_product(F, systems)
    rep = is_normal(E, F, check_premises=False)
    if not rep.overall:
        raise HypothesisFailed("i", "central product is not normal", witness=rep.as_dict())
    Z = center_of(E)
    zset = set(Z.members)
    for k, Ek in enumerate(systems):
        if set(Ek.S.members) <= zset:
            raise HypothesisFailed("ii", f"support {k} lies in the product center", witness=k)

    lat = F.lattice
    G = lat.parent
    T = E.S
    t_idx = lat.idx_of(T.members)
    tz_sets = []
    for Ek in systems:
        tz = generated_subgroup(G, set(Ek.S.members) | zset)
        tz_sets.append(frozenset(tz.members))
    if len(set(tz_sets)) != len(tz_sets):
        raise HypothesisFailed("iii", "factor supports collide modulo the center")

    perm_of_aut = {}
    perms = set()
    for a_images in F.automorphism_images(t_idx):
        alpha = dict(zip(T.members, a_images))
        sigma = []
        for k, tz in enumerate(tz_sets):
            img = frozenset(alpha[m] for m in tz)
            try:
                sigma.append(tz_sets.index(img))
            except ValueError:
                raise HypothesisFailed(
                    "iii",
                    f"automorphism does not permute the factor supports",
                    witness=(a_images, k),
                )
        sigma = tuple(sigma)
        perm_of_aut[a_images] = sigma
        perms.add(sigma)

    k = len(systems)
    ordered = sorted(perms)
    identity = tuple(range(k))
    if identity not in perms:
        raise HypothesisFailed("iii", "identity permutation missing; family data corrupt")
    ordered = [identity] + [s for s in ordered if s != identity]
    pindex = {s: i for i, s in enumerate(ordered)}
    mul = [
        [pindex[tuple(a[b[i]] for i in range(k))] for b in ordered] for a in ordered
    ]
    inv = []
    for a in ordered:
        back = [0] * k
        for i, v in enumerate(a):
            back[v] = i
        inv.append(pindex[tuple(back)])
    perm_group = FiniteGroup(f"FactorPerm{k}", mul, inv, perms=ordered, validate=False)

    sylow_members = set()
    for x in F.S.members:
        if all(G.conj(x, m) in set(T.members) for m in T.members):
            cx = tuple(G.conj(x, m) for m in T.members)
            sylow_members.add(pindex[perm_of_aut[cx]])
    U = Subgroup(perm_group, tuple(sorted(sylow_members)))

    objects = []
    for i in range(len(lat.subs)):
        pm = set(lat.subs[i].members)
        if all(not ((pm & set(systems[j].S.members)) <= zset) for j in range(k)):
            objects.append(i)

    fam = CommutingFamily(
        system=F,
        members=tuple(systems),
        product=E,
        support=T,
        center=Z,
        perm_group=perm_group,
        perm_of_aut={a: pindex[s] for a, s in perm_of_aut.items()},
        sylow_perm_image=U,
        objects=tuple(objects),
    )
    return fam


def factor_permutation_of(fam: CommutingFamily, dom_members, images) -> int:
    """The unique factor permutation realized by a morphism whose domain
    meets every support outside the center."""
    F = fam.system
    lat = F.lattice
    i = lat.idx_of(tuple(sorted(dom_members)))
    if i not in set(fam.objects):
        raise NotInH("morphism domain misses a factor support modulo the center")
    pos = lat.member_pos[i]
    dom = lat.subs[i].members
    parts = []
    for Ek in fam.members:
        mask = Ek.S.mask
        part = [m for m in dom if (1 << m) & mask]
        parts.append({images[pos[m]] for m in part})
    support_sets = [set(Ek.S.members) for Ek in fam.members]
    found = None
    for g in range(fam.perm_group.order):
        sigma = fam.perm_group.perms[g]
        if all(parts[j] <= support_sets[sigma[j]] for j in range(fam.k)):
            if found is not None:
                raise NotInH("factor permutation is not unique")
            found = g
    if found is None:
        raise NotInH("no factor permutation matches the morphism")
    return found


def induced_labeling(fam: CommutingFamily) -> MorphismLabeling:
    """The labeling setup defined by factor permutations; building it runs
    the full hypothesis verification, which must succeed for any valid
    family."""
    if fam.labeling is None:
        fam.labeling = build_labeling(
            fam.system,
            fam.support,
            fam.objects,
            fam.perm_group,
            lambda dom, images: factor_permutation_of(fam, dom, images),
        )
    return fam.labeling


# -- structure of the central product -------------------------------------------


def product_structure_suite(fam: CommutingFamily) -> dict:
    """Four structural facts about the central product, by enumeration:
    full-subcategory factors, element-class products, the direct product
    decomposition of T/Z, and the factorization of E/Z."""
    F, E = fam.system, fam.product
    G = F.lattice.parent
    Z = fam.center
    report = {}

    # (a) each factor is the full subcategory on its support
    ok_a = True
    for Ek in fam.members:
        full = subsystem_on_lattice(E, Ek.S)
        if not full.same_system(Ek):
            ok_a = False
    report["a_full_subcategories"] = ok_a

    # (b) element classes multiply across factors
    ok_b = True
    member_lists = [Ek.S.members for Ek in fam.members]
    for combo in itertools.product(*member_lists):
        t = 0
        for u in combo:
            t = G.mul_table[t][u]
        expect = set()
        for ucombo in itertools.product(
            *(Ek.element_class(u) for Ek, u in zip(fam.members, combo))
        ):
            y = 0
            for u in ucombo:
                y = G.mul_table[y][u]
            expect.add(y)
        if set(E.element_class(t)) != expect:
            ok_b = False
            break
    report["b_class_products"] = ok_b

    # (c) T/Z decomposes as the direct product of the factor images
    tz = [generated_subgroup(G, set(Ek.S.members) | set(Z.members)) for Ek in fam.members]
    ok_c = True
    for a in range(fam.k):
        for b in range(a + 1, fam.k):
            inter = set(tz[a].members) & set(tz[b].members)
            if inter != set(Z.members):
                ok_c = False
    everything = set(Z.members)
    for t in tz:
        new = set()
        for x in everything:
            for y in t.members:
                new.add(G.mul_table[x][y])
        everything |= new
    if generated_subgroup(G, everything).members != fam.support.members:
        ok_c = False
    sizes = 1
    for t in tz:
        sizes *= t.order // Z.order
    if sizes != fam.support.order // Z.order:
        ok_c = False
    report["c_direct_product_mod_center"] = ok_c

    # (d) E/Z is the direct product of the factor quotients, each
    # isomorphic to the factor modulo its own center
    quot = quotient_central(E, Z)
    factors = []
    ok_d = True
    for Ek in fam.members:
        zek = central_extension_subsystem(E, Ek, Z)
        if not is_saturated(zek):
            ok_d = False
        if center_of(Ek).members != tuple(
            sorted(set(Z.members) & set(Ek.S.members))
        ):
            ok_d = False
        factors.append(zek)
    quotient_factors = []
    for zek in factors:
        proj_members = tuple(
            sorted({quot.projection[m] for m in zek.S.members})
        )
        Tbar = Subgroup(quot.group, proj_members)
        sub = _project_system(zek, quot, Tbar)
        quotient_factors.append(sub)
    prod_gens = []
    for combo in itertools.product(
        *(_iso_entries(sub) for sub in quotient_factors)
    ):
        entry = _combine_disjoint(quot.system, combo)
        if entry is not None:
            prod_gens.append(entry)
    regen = generate_fusion(quot.system.S, F.p, prod_gens)
    if not regen.same_system(quot.system):
        ok_d = False
    for Ek, sub in zip(fam.members, quotient_factors):
        zk = center_of(Ek)
        ek_bar = quotient_central(Ek, zk)
        # the natural map t.Z(E_k) -> t.Z carries the factor quotient
        # onto the projected factor
        try:
            psi = GroupMap(
                Subgroup(ek_bar.group, tuple(range(ek_bar.group.order))),
                sub.S,
                tuple(quot.projection[rep] for rep in ek_bar.reps),
            )
            moved = transport(ek_bar.system, psi)
        except Exception:
            ok_d = False
            continue
        if not moved.same_system(sub):
            ok_d = False
    report["d_quotient_factorization"] = ok_d
    report["all"] = ok_a and ok_b and ok_c and ok_d
    return report


def _project_system(E: FusionSystem, quot, Tbar: Subgroup) -> FusionSystem:
    """Image of a subsystem under a central quotient, over Tbar."""
    from .fusion import SubgroupLattice, FusionSystem as FS

    lat = E.lattice
    proj = quot.projection
    tlat = SubgroupLattice(Tbar)
    by_dom = [dict() for _ in tlat.subs]
    for i, bucket in enumerate(E.isos_by_dom):
        dom = lat.subs[i].members
        bar_dom = tuple(sorted({proj[m] for m in dom}))
        bi = tlat.index.get(bar_dom)
        if bi is None:
            continue
        bar_members = tlat.subs[bi].members
        rep_lookup = {}
        for m in dom:
            rep_lookup.setdefault(proj[m], m)
        pos = lat.member_pos[i]
        for images in bucket:
            bar_images = tuple(
                proj[images[pos[rep_lookup[c]]]] for c in bar_members
            )
            if -1 in bar_images:
                continue
            bj = tlat.index.get(tuple(sorted(set(bar_images))))
            if bj is not None and bar_images not in by_dom[bi]:
                by_dom[bi][bar_images] = bj
    return FS(E.p, Tbar, tlat, by_dom)


def _iso_entries(E: FusionSystem):
    out = []
    for i, bucket in enumerate(E.isos_by_dom):
        dom = E.lattice.subs[i].members
        for images in sorted(bucket):
            out.append((dom, images))
    return out


def _combine_disjoint(F: FusionSystem, combo):
    """Combine morphisms with pairwise trivially-intersecting commuting
    domains into one map on the product subgroup."""
    G = F.lattice.parent
    mapping = {0: 0}
    for dom, images in combo:
        new = {}
        for x, y in mapping.items():
            for k, m in enumerate(dom):
                xm = G.mul_table[x][m]
                ym = G.mul_table[y][images[k]]
                if xm in mapping and mapping[xm] != ym:
                    return None
                if xm in new and new[xm] != ym:
                    return None
                new[xm] = ym
        mapping.update(new)
    dom_sorted = tuple(sorted(mapping))
    images = tuple(mapping[m] for m in dom_sorted)
    return (dom_sorted, images)


def indecomposability_check(E: FusionSystem, budget: int = 20000) -> dict:
    """Brute-force search for a direct factorization of E; returns the
    verdict with a witness factorization when one exists."""
    lat = E.lattice
    G = lat.parent
    sc = strongly_closed_indices(E)
    pairs = 0
    for a in sc:
        for b in sc:
            A, B = lat.subs[a], lat.subs[b]
            if A.order == 1 or B.order == 1:
                continue
            if A.order * B.order != E.S.order:
                continue
            if set(A.members) & set(B.members) != {0}:
                continue
            if any(
                G.mul_table[x][y] != G.mul_table[y][x]
                for x in A.members
                for y in B.members
            ):
                continue
            pairs += 1
            if pairs > budget:
                raise IncompleteEnumeration("factorization search budget exhausted")
            EA = subsystem_on_lattice(E, A)
            EB = subsystem_on_lattice(E, B)
            gens = []
            for combo in itertools.product(_iso_entries(EA), _iso_entries(EB)):
                entry = _combine_disjoint(E, combo)
                if entry is not None:
                    gens.append(entry)
            regen = generate_fusion(E.S, E.p, gens)
            if regen.same_system(E):
                return {
                    "indecomposable": False,
                    "witness": (list(A.members), list(B.members)),
                }
    return {"indecomposable": True, "witness": None}


def factor_criteria_check(F: FusionSystem, systems) -> dict:
    """The two sufficient conditions for the support-permutation property:
    indecomposable quotients with full focal subgroups, or indecomposable
    quotients with trivial quotient centers and supports above the center.
    When either holds, the permutation property itself is asserted."""
    E = central_product(F, systems)
    Z = center_of(E)
    G = F.lattice.parent
    report = {"prime": [], "doubleprime": []}
    for Ek in systems:
        zk = center_of(Ek)
        quot = quotient_central(Ek, zk).system if zk.order > 1 else Ek
        ind = indecomposability_check(quot)
        foc_full = focal_subgroup(Ek).members == Ek.S.members
        zbar_trivial = center_of(quot).order == 1
        z_in_support = set(Z.members) <= set(Ek.S.members)
        report["prime"].append(ind["indecomposable"] and foc_full)
        report["doubleprime"].append(
            ind["indecomposable"] and z_in_support and zbar_trivial
        )
    report["prime_all"] = all(report["prime"])
    report["doubleprime_all"] = all(report["doubleprime"])
    if report["prime_all"] or report["doubleprime_all"]:
        # the permutation property must follow; verify directly
        t_idx = F.lattice.idx_of(E.S.members)
        zset = set(Z.members)
        tz_sets = [
            frozenset(
                generated_subgroup(G, set(Ek.S.members) | zset).members
            )
            for Ek in systems
        ]
        ok = True
        for a_images in F.automorphism_images(t_idx):
            alpha = dict(zip(E.S.members, a_images))
            for tz in tz_sets:
                if frozenset(alpha[m] for m in tz) not in tz_sets:
                    ok = False
        report["permutation_property"] = ok
    return report


# -- normalizer subsystems -------------------------------------------------------


@dataclass
class NormalizerPair:
    """The subsystems normalizing a subfamily setwise and factorwise."""

    family: CommutingFamily
    indices: tuple
    joint_support: Subgroup       # T_J
    setwise_group: Subgroup       # N_S(T_J)
    factorwise_group: Subgroup    # intersection of the N_S(T_j)
    setwise: FusionSystem
    factorwise: FusionSystem
    objects: tuple                # indices with P meet T_j outside Z, j in J


def normalizer_objects(fam: CommutingFamily, J) -> list:
    lat = fam.system.lattice
    zset = set(fam.center.members)
    out = []
    for i in range(len(lat.subs)):
        pm = set(lat.subs[i].members)
        if all(
            not ((pm & set(fam.members[j].S.members)) <= zset) for j in J
        ):
            out.append(i)
    return out


def construct_normalizers(fam: CommutingFamily, J) -> NormalizerPair:
    """Build the setwise and factorwise normalizer subsystems for a
    nonempty subfamily with fully normalized joint support, and check the
    object-set robustness (family objects give the same systems)."""
    J = tuple(sorted(set(J)))
    if not J or any(j < 0 or j >= fam.k for j in J):
        raise ValueError("subfamily indices out of range")
    F = fam.system
    lat = F.lattice
    G = lat.parent
    TJ = generated_subgroup(
        G, set().union(*(set(fam.members[j].S.members) for j in J))
    )
    tj_idx = lat.idx_of(TJ.members)
    if not is_fully_normalized(F, tj_idx):
        raise NotFullyNormalized("joint support is not fully normalized")
    NJ = lat.subs[lat.normalizer_in_S(tj_idx)]
    wj_members = set(F.S.members)
    for j in J:
        nj = lat.subs[lat.normalizer_in_S(lat.idx_of(fam.members[j].S.members))]
        wj_members &= set(nj.members)
    WJ = Subgroup(G, tuple(sorted(wj_members)))

    objs = normalizer_objects(fam, J)
    setwise = _generated_normalizer(fam, objs, NJ, [J])
    factorwise = _generated_normalizer(fam, objs, WJ, [[j] for j in J])

    # object-set robustness: generating from the family objects agrees
    fam_objs = list(fam.objects)
    setwise0 = _generated_normalizer(fam, fam_objs, NJ, [J])
    factorwise0 = _generated_normalizer(fam, fam_objs, WJ, [[j] for j in J])
    if not setwise0.same_system(setwise):
        raise AssertionError("setwise normalizer depends on the object set")
    if not factorwise0.same_system(factorwise):
        raise AssertionError("factorwise normalizer depends on the object set")

    return NormalizerPair(
        family=fam,
        indices=J,
        joint_support=TJ,
        setwise_group=NJ,
        factorwise_group=WJ,
        setwise=setwise,
        factorwise=factorwise,
        objects=tuple(objs),
    )


def _generated_normalizer(fam: CommutingFamily, objs, bound: Subgroup, groupings) -> FusionSystem:
    """Generate from morphisms between objects inside ``bound`` that map
    each grouped support-intersection into the grouped support."""
    F = fam.system
    lat = F.lattice
    G = lat.parent
    bmask = bound.mask
    group_supports = []
    for J in groupings:
        sup = generated_subgroup(
            G, set().union(*(set(fam.members[j].S.members) for j in J))
        )
        group_supports.append(sup)
    gens = []
    for i in objs:
        if lat.masks[i] & ~bmask:
            continue
        dom = lat.subs[i].members
        pos = lat.member_pos[i]
        for images, tgt in F.isos_by_dom[i].items():
            if lat.masks[tgt] & ~bmask:
                continue
            ok = True
            for sup in group_supports:
                part = [m for m in dom if (1 << m) & sup.mask]
                if any((1 << images[pos[m]]) & ~sup.mask for m in part):
                    ok = False
                    break
            if ok:
                gens.append((dom, images))
    return generate_fusion(bound, F.p, gens)


def verify_normalizer_theorem(fam: CommutingFamily, J, extra_pool=()) -> dict:
    """Exhaustive verification of the normalizer theorem for one subfamily:
    saturation of both normalizers, factorwise normal in setwise, the
    closed-form hom descriptions, normality of the central products, and
    pool-quantified maximality."""
    pair = construct_normalizers(fam, J)
    F = fam.system
    lat = F.lattice
    G = lat.parent
    J = pair.indices
    report = {"J": list(J)}

    report["setwise_saturated"] = is_saturated(pair.setwise)
    report["factorwise_saturated"] = is_saturated(pair.factorwise)
    report["factorwise_normal_in_setwise"] = is_normal(
        pair.factorwise, pair.setwise, check_premises=False
    ).overall

    # closed-form hom sets on object pairs
    tj_mask = pair.joint_support.mask
    nj_mask = pair.setwise_group.mask
    wj_mask = pair.factorwise_group.mask
    ok_f1 = True
    ok_f2 = True
    sup_masks = [fam.members[j].S.mask for j in J]
    for i in pair.objects:
        if lat.masks[i] & ~nj_mask == 0:
            dom = lat.subs[i].members
            pos = lat.member_pos[i]
            part = [m for m in dom if (1 << m) & tj_mask]
            want = set()
            for images, tgt in F.isos_by_dom[i].items():
                if lat.masks[tgt] & ~nj_mask:
                    continue
                if all((1 << images[pos[m]]) & tj_mask for m in part):
                    want.add(images)
            got = {
                images
                for images, tgt in pair.setwise.isos_by_dom[
                    pair.setwise.lattice.idx_of(dom)
                ].items()
            }
            if got != want:
                ok_f1 = False
        if lat.masks[i] & ~wj_mask == 0:
            dom = lat.subs[i].members
            pos = lat.member_pos[i]
            want = set()
            for images, tgt in F.isos_by_dom[i].items():
                if lat.masks[tgt] & ~wj_mask:
                    continue
                good = True
                for mask in sup_masks:
                    for m in dom:
                        if (1 << m) & mask and not (1 << images[pos[m]]) & mask:
                            good = False
                            break
                    if not good:
                        break
                if good:
                    want.add(images)
            got = {
                images
                for images in pair.factorwise.isos_by_dom[
                    pair.factorwise.lattice.idx_of(dom)
                ]
            }
            if got != want:
                ok_f2 = False
    report["setwise_hom_formula"] = ok_f1
    report["factorwise_hom_formula"] = ok_f2

    EJ = central_product(F, [fam.members[j] for j in J]) if len(J) > 1 else fam.members[J[0]]
    report["product_normal_in_setwise"] = is_normal(
        EJ, pair.setwise, check_premises=False
    ).overall
    report["factors_normal_in_factorwise"] = all(
        is_normal(fam.members[j], pair.factorwise, check_premises=False).overall
        for j in J
    )

    # pool-quantified maximality
    pool = _candidate_pool(fam, pair, EJ)
    for name, D in extra_pool:
        pool.append((name, D))
    set_rows = []
    fact_rows = []
    for name, D in pool:
        premise_n = _normal_premise(EJ, D)
        contained_n = None
        if premise_n:
            contained_n = pair.setwise.contains_system(D)
        set_rows.append({"candidate": name, "premise": premise_n, "contained": contained_n})
        premise_w = all(_normal_premise(fam.members[j], D) for j in J)
        contained_w = None
        if premise_w:
            contained_w = pair.factorwise.contains_system(D)
        fact_rows.append({"candidate": name, "premise": premise_w, "contained": contained_w})
    report["setwise_maximality"] = set_rows
    report["factorwise_maximality"] = fact_rows
    report["setwise_maximality_ok"] = all(
        r["contained"] for r in set_rows if r["premise"]
    )
    report["factorwise_maximality_ok"] = all(
        r["contained"] for r in fact_rows if r["premise"]
    )
    report["pool_premise_count"] = sum(1 for r in set_rows if r["premise"])
    report["all_ok"] = all(
        report[k]
        for k in (
            "setwise_saturated",
            "factorwise_saturated",
            "factorwise_normal_in_setwise",
            "setwise_hom_formula",
            "factorwise_hom_formula",
            "product_normal_in_setwise",
            "factors_normal_in_factorwise",
            "setwise_maximality_ok",
            "factorwise_maximality_ok",
        )
    )
    report["_pair"] = pair
    return report


def _normal_premise(E: FusionSystem, D: FusionSystem) -> bool:
    try:
        if not is_subsystem(E, D):
            return False
        return is_normal(E, D).overall
    except (NotSubsystem, NotSaturatedInput):
        return False


def _candidate_pool(fam: CommutingFamily, pair: NormalizerPair, EJ: FusionSystem) -> list:
    F = fam.system
    pool = [
        ("product_over_J", EJ),
        ("setwise_normalizer", pair.setwise),
        ("factorwise_normalizer", pair.factorwise),
        ("full_family_product", fam.product),
        ("ambient", F),
        ("inner_joint_support", inner_fusion(pair.joint_support, F.p)),
        ("inner_factorwise_group", inner_fusion(pair.factorwise_group, F.p)),
    ]
    for j in pair.indices:
        pool.append((f"factor_{j}", fam.members[j]))
    subsets = []
    for r in range(1, len(pair.indices)):
        subsets.extend(itertools.combinations(pair.indices, r))
    for sub in subsets:
        if len(sub) == 1:
            continue
        pool.append(
            (
                "product_over_" + "_".join(map(str, sub)),
                central_product(F, [fam.members[j] for j in sub]),
            )
        )
    lab = induced_labeling(fam)
    for H in subgroup_lattice(fam.perm_group):
        pool.append(
            ("labeled_subsystem_" + "_".join(map(str, H.members)), lab.subsystem_for(H))
        )
    return pool


def subfamily_normality_suite(fam: CommutingFamily, J) -> dict:
    """Two facts tied to a subfamily: normality of its central product
    when the permutation image stabilizes it, and the object property for
    systems containing that product."""
    J = tuple(sorted(set(J)))
    F = fam.system
    report = {"J": list(J)}
    stabilized = all(
        all(fam.perm_group.perms[g][j] in J for j in J)
        for g in range(fam.perm_group.order)
    )
    report["stabilized"] = stabilized
    EJ = (
        central_product(F, [fam.members[j] for j in J])
        if len(J) > 1
        else fam.members[J[0]]
    )
    if stabilized:
        report["product_normal"] = is_normal(EJ, F, check_premises=False).overall
    else:
        report["product_normal"] = None

    # centric radicals of any system containing the product normally lie
    # in the subfamily objects; checked for the factorwise normalizer
    try:
        pair = construct_normalizers(fam, J)
        D = pair.factorwise
        obj_members = {
            F.lattice.subs[i].members for i in normalizer_objects(fam, J)
        }
        from .classify import centric_radical_indices

        ok = True
        for i in centric_radical_indices(D):
            if D.lattice.subs[i].members not in obj_members:
                ok = False
        report["cr_inside_objects"] = ok
    except NotFullyNormalized:
        report["cr_inside_objects"] = None
    return report


def verify_component_normalizer_pipeline(
    F: FusionSystem,
    J,
    group: FiniteGroup = None,
    candidates: list = None,
    extra_pool=(),
) -> dict:
    """End-to-end: find the components, verify the family hypotheses,
    build the normalizers for J, and run the full theorem check."""
    if is_constrained(F):
        raise Constrained("the system is constrained, so it has no components")
    comps = components_of(F, group=group, candidates=candidates)
    if not comps:
        raise Constrained("no components were found")
    fam = build_family(F, comps)
    report = verify_normalizer_theorem(fam, J, extra_pool=extra_pool)
    report["component_count"] = len(comps)
    report["component_orders"] = [E.S.order for E in comps]
    report["_family"] = fam
    return report
