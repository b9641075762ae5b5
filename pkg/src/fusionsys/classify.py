"""Subgroup classification and saturation machinery for fusion systems.

Every predicate here is decided by direct enumeration of its definition
over the stored isomorphism table; nothing is sampled.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    HNotClosedUnderOvergroups,
    HNotConjugacyClosed,
    MalformedH,
    NotCentral,
    NotSaturated,
)
from .fusion import (
    FusionSystem,
    SubgroupLattice,
    fusion_from_conjugation_maps,
    generate_fusion,
    inner_fusion,
    labeled_morphism_list,
    transport,
)
from .groups import (
    FiniteGroup,
    GroupMap,
    Subgroup,
    generated_subgroup,
    O_p,
    p_part,
    quotient_group,
)


@dataclass(frozen=True)
class SubgroupClassification:
    """Classification flags of one subgroup in a fusion system."""

    fully_normalized: bool
    fully_centralized: bool
    fully_automized: bool
    receptive: bool
    centric: bool
    radical: bool
    strongly_closed: bool
    central: bool

    def as_dict(self):
        return {
            "fully_normalized": self.fully_normalized,
            "fully_centralized": self.fully_centralized,
            "fully_automized": self.fully_automized,
            "receptive": self.receptive,
            "centric": self.centric,
            "radical": self.radical,
            "strongly_closed": self.strongly_closed,
            "central": self.central,
        }


# -- individual flags -------------------------------------------------------


def _flag_cache(F: FusionSystem, name: str):
    return F.flags_cache.setdefault(name, {})


def is_fully_normalized(F: FusionSystem, i: int) -> bool:
    cache = _flag_cache(F, "fn")
    if i not in cache:
        lat = F.lattice
        mine = lat.subs[lat.normalizer_in_S(i)].order
        cache[i] = all(
            lat.subs[lat.normalizer_in_S(j)].order <= mine for j in F.subgroup_class(i)
        )
    return cache[i]


def is_fully_centralized(F: FusionSystem, i: int) -> bool:
    cache = _flag_cache(F, "fc")
    if i not in cache:
        lat = F.lattice
        mine = lat.subs[lat.centralizer_in_S(i)].order
        cache[i] = all(
            lat.subs[lat.centralizer_in_S(j)].order <= mine for j in F.subgroup_class(i)
        )
    return cache[i]


def is_fully_automized(F: FusionSystem, i: int) -> bool:
    cache = _flag_cache(F, "fa")
    if i not in cache:
        aut_f = F.aut_order(i)
        aut_s = len(F.aut_s_images(i))
        cache[i] = (aut_f // aut_s) % F.p != 0
    return cache[i]


def is_receptive(F: FusionSystem, i: int) -> bool:
    """Every isomorphism onto subgroup i extends over its control subgroup."""
    cache = _flag_cache(F, "rec")
    if i not in cache:
        cache[i] = _receptive_direct(F, i)
    return cache[i]


def _receptive_direct(F: FusionSystem, i: int) -> bool:
    lat = F.lattice
    G = lat.parent
    p_members = lat.subs[i].members
    aut_s_p = F.aut_s_images(i)
    for q in F.subgroup_class(i):
        bucket = F.isos_by_dom[q]
        q_members = lat.subs[q].members
        pos_q = lat.member_pos[q]
        n_q_idx = lat.normalizer_in_S(q)
        n_q = lat.subs[n_q_idx]
        # centralizing elements induce the identity, which always lies in
        # Aut_S(P); only the rest need their induced map computed
        c_q = set(lat.subs[lat.centralizer_in_S(q)].members)
        movers = [x for x in n_q.members if x not in c_q]
        for images, tgt in bucket.items():
            if tgt != i:
                continue
            # N_phi = { x in N_S(Q) : phi c_x phi^-1 in Aut_S(P) }
            if not movers:
                n_idx = n_q_idx
            else:
                inv = {images[k]: m for k, m in enumerate(q_members)}
                n_phi = sorted(c_q)
                for x in movers:
                    conj_map = tuple(
                        images[pos_q[G.conj(x, inv[y])]] for y in p_members
                    )
                    if conj_map in aut_s_p:
                        n_phi.append(x)
                n_idx = lat.index[tuple(sorted(n_phi))]
            if images not in F.restrictions_to(n_idx, q):
                return False
    return True


def is_centric(F: FusionSystem, i: int) -> bool:
    cache = _flag_cache(F, "centric")
    if i not in cache:
        lat = F.lattice
        cache[i] = all(
            lat.masks[lat.centralizer_in_S(j)] & ~lat.masks[j] == 0
            for j in F.subgroup_class(i)
        )
    return cache[i]


def outer_automorphism_group(F: FusionSystem, i: int):
    """Out_F(P) as a table group; returns (group, coset reps as image tuples,
    coset index of each Aut_F(P) element)."""
    lat = F.lattice
    G = lat.parent
    P = lat.subs[i]
    pos = lat.member_pos[i]
    auts = F.automorphism_images(i)
    inner = sorted({tuple(G.conj(u, m) for m in P.members) for u in P.members})
    inner_set = set(inner)
    aut_index = {a: k for k, a in enumerate(auts)}
    coset_of = {}
    reps = []
    for a in auts:
        if a in coset_of:
            continue
        idx = len(reps)
        reps.append(a)
        for h in inner_set:
            comp = tuple(a[pos[y]] for y in h)
            coset_of[comp] = idx
    # force identity coset to index 0
    id_t = tuple(P.members)
    zero = coset_of[id_t]
    if zero != 0:
        remap = {zero: 0, 0: zero}
        reps[0], reps[zero] = reps[zero], reps[0]
        coset_of = {a: remap.get(c, c) for a, c in coset_of.items()}
    k = len(reps)
    mul = [[0] * k for _ in range(k)]
    for x in range(k):
        for y in range(k):
            comp = tuple(reps[x][pos[z]] for z in reps[y])
            mul[x][y] = coset_of[comp]
    inv = [0] * k
    for x in range(k):
        rep = reps[x]
        r_inv = [0] * len(rep)
        for t, m in enumerate(P.members):
            r_inv[pos[rep[t]]] = m
        inv[x] = coset_of[tuple(r_inv)]
    table = FiniteGroup(f"Out(sub{i})", mul, inv, validate=False)
    return table, reps, coset_of


def is_radical(F: FusionSystem, i: int) -> bool:
    cache = _flag_cache(F, "radical")
    if i not in cache:
        table, _, _ = outer_automorphism_group(F, i)
        cache[i] = O_p(table, F.p).order == 1
    return cache[i]


def is_strongly_closed(F: FusionSystem, i: int) -> bool:
    cache = _flag_cache(F, "sc")
    if i not in cache:
        mem = set(F.lattice.subs[i].members)
        cache[i] = all(set(F.element_class(x)) <= mem for x in mem)
    return cache[i]


def is_central(F: FusionSystem, i: int) -> bool:
    """Every morphism extends to one acting as the identity on subgroup i."""
    cache = _flag_cache(F, "central")
    if i not in cache:
        cache[i] = _central_direct(F, i)
    return cache[i]


def _central_direct(F: FusionSystem, i: int) -> bool:
    lat = F.lattice
    G = lat.parent
    p_members = lat.subs[i].members
    if len(p_members) == 1:
        return True  # every morphism extends itself, trivially fixing 1
    # quick necessary conditions: fixed elementwise, central in S
    for x in p_members:
        if F.element_class(x) != (x,):
            return False
        if any(G.mul_table[x][s] != G.mul_table[s][x] for s in F.S.members):
            return False
    for q, bucket in enumerate(F.isos_by_dom):
        if not bucket:
            continue
        q_members = lat.subs[q].members
        pq = generated_subgroup(G, set(p_members) | set(q_members))
        pq_idx = lat.index[pq.members]
        pos_pq = lat.member_pos[pq_idx]
        # restrictions to Q of extensions fixing P pointwise, built once
        allowed = set()
        for ext_images in F.isos_by_dom[pq_idx]:
            if all(ext_images[pos_pq[m]] == m for m in p_members):
                allowed.add(tuple(ext_images[pos_pq[m]] for m in q_members))
        for images in bucket:
            if images not in allowed:
                return False
    return True


def classify_subgroup(F: FusionSystem, P: Subgroup) -> SubgroupClassification:
    i = F.lattice.idx_of(P.members)
    return SubgroupClassification(
        fully_normalized=is_fully_normalized(F, i),
        fully_centralized=is_fully_centralized(F, i),
        fully_automized=is_fully_automized(F, i),
        receptive=is_receptive(F, i),
        centric=is_centric(F, i),
        radical=is_radical(F, i),
        strongly_closed=is_strongly_closed(F, i),
        central=is_central(F, i),
    )


def centric_radical_indices(F: FusionSystem) -> list:
    return [
        i
        for i in range(len(F.lattice.subs))
        if is_centric(F, i) and is_radical(F, i)
    ]


def strongly_closed_indices(F: FusionSystem) -> list:
    return [i for i in range(len(F.lattice.subs)) if is_strongly_closed(F, i)]


# -- center and focal subgroup ----------------------------------------------


def center_of(F: FusionSystem) -> Subgroup:
    """The largest subgroup central in F (the product of all of them)."""
    G = F.lattice.parent
    fixed = [
        x
        for x in F.S.members
        if F.element_class(x) == (x,)
        and all(G.mul_table[x][s] == G.mul_table[s][x] for s in F.S.members)
    ]
    candidates = [
        i
        for i, H in enumerate(F.lattice.subs)
        if set(H.members) <= set(fixed)
    ]
    central = [i for i in candidates if is_central(F, i)]
    members = {0}
    for i in central:
        members |= set(F.lattice.subs[i].members)
    Z = generated_subgroup(G, members)
    if not is_central(F, F.lattice.idx_of(Z.members)):
        raise AssertionError("product of central subgroups failed the central check")
    return Z


def focal_subgroup(F: FusionSystem) -> Subgroup:
    """Generated by all fusion differences x^-1 y with y F-conjugate to x."""
    G = F.lattice.parent
    gens = set()
    seen_roots = set()
    for x in F.S.members:
        cls = F.element_class(x)
        if cls in seen_roots:
            continue
        seen_roots.add(cls)
        for a in cls:
            ai = G.inv_table[a]
            for b in cls:
                gens.add(G.mul_table[ai][b])
    return generated_subgroup(G, gens)


# -- saturation deciders -------------------------------------------------------


def is_saturated(F: FusionSystem) -> bool:
    """Every conjugacy class has a fully automized, receptive member."""
    for rep in F.subgroup_class_reps():
        cls = F.subgroup_class(rep)
        if not any(
            is_fully_automized(F, i) and is_receptive(F, i) for i in cls
        ):
            return False
    return True


def saturation_failures(F: FusionSystem) -> list:
    """Class representatives with no fully automized receptive member."""
    bad = []
    for rep in F.subgroup_class_reps():
        cls = F.subgroup_class(rep)
        if not any(is_fully_automized(F, i) and is_receptive(F, i) for i in cls):
            bad.append(rep)
    return bad


def is_saturated_sylow_extension(F: FusionSystem) -> bool:
    """Independent decider: the Sylow axiom plus the extension axiom."""
    n = len(F.lattice.subs)
    for i in range(n):
        if is_fully_normalized(F, i):
            if not (is_fully_automized(F, i) and is_fully_centralized(F, i)):
                return False
    for i in range(n):
        if is_fully_centralized(F, i):
            if not is_receptive(F, i):
                return False
    return True


# -- object-collection properties ---------------------------------------------


def check_class_closed(F: FusionSystem, indices) -> None:
    hset = set(indices)
    for i in indices:
        if not set(F.subgroup_class(i)) <= hset:
            raise HNotConjugacyClosed(f"class of subgroup {i} leaves the collection")


def overgroup_closure(F: FusionSystem, indices) -> set:
    out = set()
    masks = F.lattice.masks
    for i in indices:
        for j in range(len(masks)):
            if masks[i] & ~masks[j] == 0:
                out.add(j)
    return out


def is_H_saturated(F: FusionSystem, indices) -> bool:
    check_class_closed(F, indices)
    seen = set()
    for i in indices:
        root = F._sub_find(i)
        if root in seen:
            continue
        seen.add(root)
        cls = F.subgroup_class(i)
        if not any(is_fully_automized(F, j) and is_receptive(F, j) for j in cls):
            return False
    return True


def is_H_generated(F: FusionSystem, indices) -> bool:
    """Whether morphisms between collection members generate all of F."""
    check_class_closed(F, indices)
    gens = []
    lat = F.lattice
    hmask_list = [lat.masks[i] for i in indices]
    for i in sorted(set(indices)):
        bucket = F.isos_by_dom[i]
        dom = lat.subs[i].members
        for images in sorted(bucket):
            tgt_mask = lat.masks[bucket[images]]
            if any(tgt_mask & ~hm == 0 for hm in hmask_list):
                gens.append((dom, images))
    regen = generate_fusion(F.S, F.p, gens, lattice=lat)
    return regen.same_system(F)


def saturation_criterion(F: FusionSystem, indices) -> dict:
    """Hypothesis checks of the two saturation criteria over a collection.

    Returns a report with the hypothesis verdicts; when either criterion's
    hypotheses all hold, the system must be saturated, which callers
    cross-check against the direct deciders.
    """
    report = {}
    check_class_closed(F, indices)
    hset = set(indices)

    gen_ok = is_H_generated(F, indices)
    sat_ok = is_H_saturated(F, indices)
    outer_ok = True
    witness = None
    for i in range(len(F.lattice.subs)):
        if i in hset or not is_centric(F, i):
            continue
        if not any(_outer_s_meets_op(F, j) for j in F.subgroup_class(i)):
            outer_ok = False
            witness = i
            break
    report["generated"] = gen_ok
    report["h_saturated"] = sat_ok
    report["outer_condition"] = outer_ok
    report["criterion_a"] = gen_ok and sat_ok and outer_ok
    report["criterion_a_witness"] = witness

    over = overgroup_closure(F, indices)
    if not over <= hset:
        report["criterion_b"] = None
        report["criterion_b_error"] = "collection not closed under overgroups"
    else:
        s_ok = is_fully_automized(F, F.lattice.S_idx)
        recpt_ok = all(
            is_receptive(F, i) for i in indices if is_fully_normalized(F, i)
        )
        report["criterion_b"] = s_ok and recpt_ok
    return report


def require_overgroup_closed(F: FusionSystem, indices):
    if not overgroup_closure(F, indices) <= set(indices):
        raise HNotClosedUnderOvergroups("collection is not closed under overgroups")


def _outer_s_meets_op(F: FusionSystem, i: int) -> bool:
    """Whether Out_S(P) meets O_p(Out_F(P)) nontrivially at subgroup i."""
    table, reps, coset_of = outer_automorphism_group(F, i)
    op = set(O_p(table, F.p).members)
    if op == {0}:
        return False
    out_s = {coset_of[a] for a in F.aut_s_images(i)}
    return len(op & out_s) > 1


def alperin_generates(F: FusionSystem) -> bool:
    """Whether automorphisms of centric radical subgroups generate F."""
    if not is_saturated(F):
        raise NotSaturated("generation by centric radicals assumes saturation")
    gens = []
    lat = F.lattice
    for i in centric_radical_indices(F):
        dom = lat.subs[i].members
        for images in F.automorphism_images(i):
            gens.append((dom, images))
    regen = generate_fusion(F.S, F.p, gens, lattice=lat)
    return regen.same_system(F)


# -- central quotients ---------------------------------------------------------


@dataclass(frozen=True)
class CentralQuotient:
    """A central quotient F/Z with the bookkeeping needed to map back."""

    system: FusionSystem
    group: FiniteGroup
    projection: tuple  # parent element -> quotient element index (or -1)
    reps: tuple


def quotient_central(F: FusionSystem, Z: Subgroup) -> CentralQuotient:
    """The quotient system over S/Z for a central subgroup Z."""
    lat = F.lattice
    z_idx = lat.index.get(Z.members)
    if z_idx is None or not is_central(F, z_idx):
        raise NotCentral("quotient requires a subgroup central in the system")
    G = lat.parent
    s_members = F.S.members
    zset = set(Z.members)
    mt = G.mul_table

    coset_of = {}
    reps = []
    for x in s_members:
        if x in coset_of:
            continue
        idx = len(reps)
        reps.append(x)
        for z in zset:
            coset_of[mt[x][z]] = idx
    k = len(reps)
    mul = [[coset_of[mt[reps[a]][reps[b]]] for b in range(k)] for a in range(k)]
    inv = [coset_of[G.inv_table[reps[a]]] for a in range(k)]
    Q = FiniteGroup(f"{G.name}-mod-{Z.order}", mul, inv, validate=False)
    Sbar = Subgroup(Q, tuple(range(k)))
    qlat = SubgroupLattice(Sbar)

    by_dom = [dict() for _ in qlat.subs]
    zmask = Z.mask
    for i, bucket in enumerate(F.isos_by_dom):
        if zmask & ~lat.masks[i]:
            continue
        dom = lat.subs[i].members
        bar_dom = tuple(sorted({coset_of[m] for m in dom}))
        bi = qlat.index[bar_dom]
        bar_members = qlat.subs[bi].members
        rep_lookup = {coset_of[m]: m for m in dom}
        pos = lat.member_pos[i]
        for images in bucket:
            bar_images = tuple(
                coset_of[images[pos[rep_lookup[c]]]] for c in bar_members
            )
            if bar_images not in by_dom[bi]:
                tgt = tuple(sorted(set(bar_images)))
                by_dom[bi][bar_images] = qlat.index[tgt]
    system = FusionSystem(F.p, Sbar, qlat, by_dom)
    proj = tuple(coset_of.get(x, -1) for x in range(G.order))
    return CentralQuotient(system, Q, proj, tuple(reps))


def central_extension_subsystem(F: FusionSystem, E: FusionSystem, Z: Subgroup) -> FusionSystem:
    """The subsystem ZE over ZT: morphisms of F between subgroups of ZT
    whose restriction to the T-part lies in E."""
    lat = F.lattice
    z_idx = lat.index.get(Z.members)
    if z_idx is None or not is_central(F, z_idx):
        raise NotCentral("extension requires a subgroup central in the system")
    G = lat.parent
    T = E.S
    ZT = generated_subgroup(G, set(Z.members) | set(T.members))
    zt_mask = ZT.mask
    t_mask = T.mask
    elat = SubgroupLattice(ZT)
    by_dom = [dict() for _ in elat.subs]
    for i, bucket in enumerate(F.isos_by_dom):
        if lat.masks[i] & ~zt_mask:
            continue
        dom = lat.subs[i].members
        pt = tuple(m for m in dom if (1 << m) & t_mask)
        pt_sorted = tuple(sorted(pt))
        pos = lat.member_pos[i]
        ei = elat.index[dom]
        for images, tgt in bucket.items():
            if lat.masks[tgt] & ~zt_mask:
                continue
            restr = tuple(images[pos[m]] for m in pt_sorted)
            if any((1 << y) & ~t_mask for y in restr):
                continue
            if not E.has_iso(pt_sorted, restr):
                continue
            by_dom[ei][images] = elat.index[lat.subs[tgt].members]
    return FusionSystem(F.p, ZT, elat, by_dom)


# -- receptivity transfer (technical lemma, executable form) -------------------


def receptivity_transfer_check(F: FusionSystem, E: FusionSystem, indices) -> dict:
    """Evaluate the hypotheses under which full normalization in a
    subsystem forces receptivity in both systems, then assert the
    conclusions when they hold.

    ``E`` is a subsystem of F over T; ``indices`` are F-lattice indices of
    subgroups of T forming a collection closed under E-conjugacy and
    overgroups inside T.  Returns a report dict with per-hypothesis
    verdicts, witnesses on failure, and the asserted conclusions.
    """
    lat = F.lattice
    T = E.S
    t_mask = T.mask
    report = {"hypotheses": {}, "conclusions": {}}
    hset = set(indices)
    for i in indices:
        if lat.masks[i] & ~t_mask:
            raise MalformedH("collection member is not inside T")
    e_index = {E.lattice.subs[k].members: k for k in range(len(E.lattice.subs))}

    def e_idx(i):
        return e_index[lat.subs[i].members]

    # closure under E-conjugacy and overgroups in T
    for i in indices:
        cls = E.subgroup_class(e_idx(i))
        for j in cls:
            fj = lat.index[E.lattice.subs[j].members]
            if fj not in hset:
                raise MalformedH("collection not closed under subsystem conjugacy")
    for i in indices:
        for j in range(len(lat.subs)):
            if lat.masks[i] & ~lat.masks[j] == 0 and lat.masks[j] & ~t_mask == 0:
                if j not in hset:
                    raise MalformedH("collection not closed under overgroups in T")

    # (i) morphisms of F into T that restrict into E on a member stay in E
    hyp_i = True
    wit_i = None
    for i in sorted(hset):
        for pbar in range(len(lat.subs)):
            if lat.masks[i] & ~lat.masks[pbar] or lat.masks[pbar] & ~t_mask:
                continue
            pos = lat.member_pos[pbar]
            p_members = lat.subs[i].members
            pbar_members = lat.subs[pbar].members
            for images, tgt in F.isos_by_dom[pbar].items():
                if lat.masks[tgt] & ~t_mask:
                    continue
                restr = tuple(images[pos[m]] for m in p_members)
                in_e_restr = E.has_iso(p_members, restr)
                in_e_full = E.has_iso(pbar_members, images)
                if in_e_restr and not in_e_full:
                    hyp_i = False
                    wit_i = (pbar, images)
                    break
            if not hyp_i:
                break
        if not hyp_i:
            break
    report["hypotheses"]["i"] = hyp_i
    if wit_i:
        report["hypotheses"]["i_witness"] = wit_i

    # (ii) every morphism on N_T(P) can be pushed back into E
    hyp_ii = True
    wit_ii = None
    G = lat.parent
    for i in sorted(hset):
        nt = normalizer_in(F, i, t_mask)
        nt_members = lat.subs[nt].members
        pos_nt = lat.member_pos[nt]
        for images, tgt in F.isos_by_dom[nt].items():
            phi_p = tuple(sorted(images[pos_nt[m]] for m in lat.subs[i].members))
            cs_idx = lat.centralizer_in_S(lat.index[phi_p])
            need = generated_subgroup(
                G, set(images) | set(lat.subs[cs_idx].members)
            )
            ok = False
            for r_idx in range(len(lat.subs)):
                if need.mask & ~lat.masks[r_idx]:
                    continue
                pos_r = lat.member_pos[r_idx]
                for psi_images, psi_tgt in F.isos_by_dom[r_idx].items():
                    if lat.masks[psi_tgt] & ~t_mask:
                        continue
                    comp = tuple(psi_images[pos_r[y]] for y in images)
                    if E.has_iso(nt_members, comp):
                        ok = True
                        break
                if ok:
                    break
            if not ok:
                hyp_ii = False
                wit_ii = (nt, images)
                break
        if not hyp_ii:
            break
    report["hypotheses"]["ii"] = hyp_ii
    if wit_ii:
        report["hypotheses"]["ii_witness"] = wit_ii

    # (iii) inner automorphisms of T form a Sylow p-subgroup of Aut_E(T)
    t_idx_e = e_index[T.members]
    inn = len(E.aut_s_images(t_idx_e))
    aut = E.aut_order(t_idx_e)
    hyp_iii = (aut // inn) % F.p != 0
    report["hypotheses"]["iii"] = hyp_iii

    if hyp_i and hyp_ii:
        concl = True
        for i in sorted(hset):
            ei = e_idx(i)
            if is_fully_normalized(E, ei) or is_fully_centralized(E, ei):
                if not (
                    is_receptive(E, ei)
                    and is_fully_centralized(E, ei)
                    and is_receptive(F, i)
                    and is_fully_centralized(F, i)
                ):
                    concl = False
                    report["conclusions"]["receptive_witness"] = i
                    break
        report["conclusions"]["receptive_transfer"] = concl
        if hyp_iii:
            e_indices = [e_idx(i) for i in sorted(hset)]
            report["conclusions"]["collection_saturated"] = is_H_saturated(E, e_indices)
    return report


def normalizer_in(F: FusionSystem, i: int, within_mask: int) -> int:
    """Lattice index of N(P) intersected with the given member mask."""
    lat = F.lattice
    G = lat.parent
    P = lat.subs[i]
    pset = set(P.members)
    members = [
        x
        for x in F.S.members
        if (1 << x) & within_mask and all(G.conj(x, m) in pset for m in P.members)
    ]
    return lat.index[tuple(sorted(members))]
