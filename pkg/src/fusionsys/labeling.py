"""Group-valued labelings of fusion-system morphisms and the subsystems
they cut out.

A labeling assigns to every morphism between members of an object
collection an element of a finite label group, functorially, with inner
automorphisms of a distinguished normal subgroup labeled trivially.  For
each subgroup H of the label group this induces a fusion subsystem; the
central theorem characterizes exactly when that subsystem is saturated
(label Sylow condition) and saturated-and-normal (H normal in the label
group), and both directions are verified here by enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import HypothesisFailed, BudgetExceeded
from .classify import (
    is_centric,
    is_fully_centralized,
    is_fully_normalized,
    is_radical,
    is_receptive,
    is_saturated,
    is_strongly_closed,
    outer_automorphism_group,
    _outer_s_meets_op,
)
from .fusion import FusionSystem, generate_fusion, labeled_morphism_list
from .groups import (
    FiniteGroup,
    Subgroup,
    O_p,
    normalizer,
    p_part,
    subgroup_lattice,
    trivial_subgroup,
)

DEFAULT_LABEL_GROUP_CAP = 120


@dataclass
class MorphismLabeling:
    """A verified labeling setup.

    ``labels`` maps (dom_idx, images) of every isomorphism between
    objects to an element index of ``label_group``.  ``core`` is the
    distinguished normal subgroup of S whose inner maps are labeled 1;
    ``objects`` the object collection as lattice indices.
    """

    system: FusionSystem
    core: Subgroup
    objects: frozenset
    label_group: FiniteGroup
    labels: dict
    element_labels: tuple = field(default=None)
    sylow_image: Subgroup = field(default=None)
    _sub_cache: dict = field(default_factory=dict)

    # -- derived data ------------------------------------------------------

    def label_of(self, dom_members, images) -> int:
        i = self.system.lattice.idx_of(tuple(sorted(dom_members)))
        return self.labels[(i, tuple(images))]

    def element_label(self, x: int) -> int:
        return self.element_labels[x]

    def preimage_subgroup(self, V: Subgroup) -> Subgroup:
        vset = set(V.members)
        members = [x for x in self.system.S.members if self.element_labels[x] in vset]
        return Subgroup(self.system.lattice.parent, tuple(sorted(members)))

    def objects_inside(self, V: Subgroup) -> list:
        sv_mask = self.preimage_subgroup(V).mask
        lat = self.system.lattice
        return [i for i in sorted(self.objects) if lat.masks[i] & ~sv_mask == 0]

    def label_kernel(self) -> Subgroup:
        return self.preimage_subgroup(trivial_subgroup(self.label_group))

    # -- induced subsystems --------------------------------------------------

    def subsystem_for(self, H: Subgroup, budget=None) -> FusionSystem:
        """The subsystem generated by morphisms with labels in H, over the
        preimage of the Sylow part of H."""
        key = H.members
        if key in self._sub_cache:
            return self._sub_cache[key]
        F = self.system
        lat = F.lattice
        hset = set(H.members)
        V = Subgroup(
            self.label_group,
            tuple(sorted(set(self.sylow_image.members) & hset)),
        )
        SV = self.preimage_subgroup(V)
        sv_mask = SV.mask
        gens = []
        for i in sorted(self.objects):
            if lat.masks[i] & ~sv_mask:
                continue
            dom = lat.subs[i].members
            bucket = F.isos_by_dom[i]
            for images in sorted(bucket):
                if lat.masks[bucket[images]] & ~sv_mask:
                    continue
                if self.labels[(i, images)] in hset:
                    gens.append((dom, images))
        sub = generate_fusion(SV, F.p, gens, budget=budget)
        self._sub_cache[key] = sub
        return sub


def build_labeling(
    F: FusionSystem,
    core: Subgroup,
    object_indices,
    label_group: FiniteGroup,
    label_fn,
) -> MorphismLabeling:
    """Materialize and verify a labeling; fails with the first violated
    hypothesis (i: object closure, ii: functoriality, iii: core labels,
    iv: escape condition below the core).

    ``label_fn(dom_members, images)`` must return a label-group element
    index for every isomorphism between objects.
    """
    lat = F.lattice
    objects = frozenset(object_indices)
    t_idx = lat.idx_of(core.members)

    # (i) core in objects, normal in S, collection closed under
    # F-conjugacy and overgroups
    if t_idx not in objects:
        raise HypothesisFailed("i", "core subgroup is not an object")
    n_idx = lat.normalizer_in_S(t_idx)
    if lat.subs[n_idx].members != F.S.members:
        raise HypothesisFailed("i", "core subgroup is not normal in S")
    for i in objects:
        for j in F.subgroup_class(i):
            if j not in objects:
                raise HypothesisFailed(
                    "i", f"objects not closed under conjugacy at {i}", witness=j
                )
        for j in range(len(lat.subs)):
            if lat.masks[i] & ~lat.masks[j] == 0 and j not in objects:
                raise HypothesisFailed(
                    "i", f"objects not closed under overgroups at {i}", witness=j
                )

    # materialize the table over isomorphisms between objects
    labels = {}
    for i in sorted(objects):
        bucket = F.isos_by_dom[i]
        for images in sorted(bucket):
            tgt = bucket[images]
            if tgt not in objects:
                raise HypothesisFailed("i", "image of an object is not an object")
            val = int(label_fn(lat.subs[i].members, images))
            if not 0 <= val < label_group.order:
                raise HypothesisFailed("ii", "label outside the label group")
            labels[(i, images)] = val

    # (ii) functoriality: identities map to 1, labels are stable under
    # restriction, and composition is multiplicative
    L = label_group
    for i in sorted(objects):
        if labels[(i, lat.subs[i].members)] != 0:
            raise HypothesisFailed("ii", f"identity of object {i} has label != 1")
    # one maximal step suffices: every subgroup between two objects is an
    # object (overgroup closure), so stability propagates along chains
    for i in sorted(objects):
        pos_i = lat.member_pos[i]
        obj_maximals = [j for j in lat.maximals(i) if j in objects]
        for images in F.isos_by_dom[i]:
            val = labels[(i, images)]
            for j in obj_maximals:
                restr = tuple(images[pos_i[m]] for m in lat.subs[j].members)
                if labels[(j, restr)] != val:
                    raise HypothesisFailed(
                        "ii",
                        "label changes under restriction",
                        witness=(i, images, j),
                    )
    for (i, images), val in labels.items():
        j = F.isos_by_dom[i][images]
        pos_j = lat.member_pos[j]
        for psi_images, psi_val in _bucket_labels(F, labels, j):
            comp = tuple(psi_images[pos_j[y]] for y in images)
            expect = L.mul(psi_val, val)
            if labels[(i, comp)] != expect:
                raise HypothesisFailed(
                    "ii", "labels are not multiplicative", witness=(i, images, psi_images)
                )

    # (iii) inner automorphisms of the core are labeled 1, and the core's
    # automorphisms reach the whole label group
    G = lat.parent
    for x in core.members:
        inner = tuple(G.conj(x, m) for m in core.members)
        if labels[(t_idx, inner)] != 0:
            raise HypothesisFailed(
                "iii", "inner automorphism of the core has label != 1", witness=x
            )
    reached = {labels[(t_idx, a)] for a in F.automorphism_images(t_idx)}
    if reached != set(range(L.order)):
        raise HypothesisFailed(
            "iii", "core automorphisms do not cover the label group", witness=sorted(reached)
        )

    # (iv) below the core, subgroups outside the objects are escapable
    t_mask = core.mask
    for i in range(len(lat.subs)):
        if lat.masks[i] & ~t_mask or i in objects:
            continue
        if not _has_op_escape(F, i, core):
            raise HypothesisFailed(
                "iv", f"no escape element for subgroup {i} below the core", witness=i
            )

    elabels = [None] * G.order
    for x in F.S.members:
        inner = tuple(G.conj(x, m) for m in core.members)
        elabels[x] = labels[(t_idx, inner)]
    sylow_members = sorted({elabels[x] for x in F.S.members})
    sylow_image = Subgroup(L, tuple(sylow_members))

    lab = MorphismLabeling(
        system=F,
        core=core,
        objects=objects,
        label_group=L,
        labels=labels,
        element_labels=tuple(-1 if v is None else v for v in elabels),
        sylow_image=sylow_image,
    )
    return lab


def _bucket_labels(F, labels, j):
    out = []
    for psi_images in F.isos_by_dom[j]:
        key = (j, psi_images)
        if key in labels:
            out.append((psi_images, labels[key]))
    return out


def _has_op_escape(F: FusionSystem, i: int, core: Subgroup) -> bool:
    """Some element of N_T(P) - P conjugates inside O_p(Aut_F(P))."""
    lat = F.lattice
    G = lat.parent
    P = lat.subs[i]
    pset = set(P.members)
    # centralizing elements induce the identity, which is always in O_p
    if any(
        x not in pset
        and all(G.mul_table[x][m] == G.mul_table[m][x] for m in P.members)
        for x in core.members
    ):
        return True
    candidates_op = None
    for x in core.members:
        if x in pset:
            continue
        if any(G.conj(x, m) not in pset for m in P.members):
            continue
        cx = tuple(G.conj(x, m) for m in P.members)
        if candidates_op is None:
            auts = F.automorphism_images(i)
            if len(auts) == 1:
                candidates_op = {auts[0]}
            else:
                table = _aut_table(F, i)
                op = O_p(table, F.p)
                candidates_op = {auts[k] for k in op.members}
        if cx in candidates_op:
            return True
    return False


def _aut_table(F: FusionSystem, i: int) -> FiniteGroup:
    """Aut_F(P) as a table group (identity first)."""
    lat = F.lattice
    pos = lat.member_pos[i]
    auts = F.automorphism_images(i)
    id_t = lat.subs[i].members
    ordered = [id_t] + [a for a in auts if a != id_t]
    index = {a: k for k, a in enumerate(ordered)}
    mul = [
        [index[tuple(f[pos[y]] for y in g)] for g in ordered] for f in ordered
    ]
    inv = [0] * len(ordered)
    members = lat.subs[i].members
    for k, f in enumerate(ordered):
        back = [0] * len(f)
        for t, m in enumerate(members):
            back[pos[f[t]]] = m
        inv[k] = index[tuple(back)]
    return FiniteGroup(f"AutF(sub{i})", mul, inv, validate=False)


def trivial_labeling(F: FusionSystem) -> MorphismLabeling:
    """Constant labeling into the trivial group over all subgroups."""
    return build_labeling(
        F,
        F.S,
        range(len(F.lattice.subs)),
        FiniteGroup.trivial(),
        lambda dom, images: 0,
    )


# -- property suites -----------------------------------------------------------


def labeling_property_suite(lab: MorphismLabeling, extra_subsystems=()) -> dict:
    """The five structural consequences of a valid labeling, by enumeration."""
    F = lab.system
    lat = F.lattice
    G = lat.parent
    L = lab.label_group
    report = {}

    # (a) element labels agree with conjugation labels on every object,
    # and labels conjugate element labels through morphisms
    ok = True
    for i in sorted(lab.objects):
        P = lat.subs[i]
        n_idx = lat.normalizer_in_S(i)
        for x in lat.subs[n_idx].members:
            cx = tuple(G.conj(x, m) for m in P.members)
            if lab.labels[(i, cx)] != lab.element_labels[x]:
                ok = False
    equivariant = True
    for (i, images), val in lab.labels.items():
        dom = lat.subs[i].members
        vinv = L.inv(val)
        for k, m in enumerate(dom):
            lhs = lab.element_labels[images[k]]
            rhs = L.mul(L.mul(val, lab.element_labels[m]), vinv)
            if lhs != rhs:
                equivariant = False
                break
        if not equivariant:
            break
    report["a_element_labels"] = ok
    report["a_equivariance"] = equivariant

    # (b) labels of morphisms between label-level preimages, and the
    # Sylow property of the image of S
    U = lab.sylow_image
    ok_b = True
    u_subs = [Q for Q in subgroup_lattice(L) if set(Q.members) <= set(U.members)]
    for Q in u_subs:
        SQ = lab.preimage_subgroup(Q)
        sq_idx = lat.idx_of(SQ.members)
        for R in u_subs:
            SR = lab.preimage_subgroup(R)
            sr_mask = SR.mask
            got = set()
            for images, tgt in F.isos_by_dom[sq_idx].items():
                if lat.masks[tgt] & ~sr_mask == 0:
                    got.add(lab.labels[(sq_idx, images)])
            want = {
                g
                for g in range(L.order)
                if all(L.conj(g, q) in set(R.members) for q in Q.members)
            }
            if got != want:
                ok_b = False
    u_sylow = p_part(L.order, F.p) == U.order and p_part(U.order, F.p) == U.order
    report["b_label_image"] = ok_b
    report["b_sylow_image"] = u_sylow

    # (c) centralizers of objects land in the label kernel
    ker_mask = lab.label_kernel().mask
    ok_c = all(
        lat.masks[lat.centralizer_in_S(i)] & ~ker_mask == 0 for i in lab.objects
    )
    report["c_centralizers"] = ok_c

    # (d) for subsystems containing the core: centric radicals are objects
    ok_d = True
    systems = [F] + list(extra_subsystems)
    for D in systems:
        if not set(lab.core.members) <= set(D.S.members):
            continue
        dlat = D.lattice
        for i in range(len(dlat.subs)):
            fi = lat.idx_of(dlat.subs[i].members)
            if fi in lab.objects:
                continue
            if not is_centric(D, i):
                continue
            if is_radical(D, i) or not _outer_s_meets_op(D, i):
                ok_d = False
    report["d_centric_radicals_are_objects"] = ok_d

    # (e) preimages of strongly closed label subgroups are strongly closed
    ok_e = True
    for V in u_subs:
        closed = all(
            all(
                L.conj(g, v) in set(V.members)
                for g in range(L.order)
                if L.conj(g, v) in set(U.members)
            )
            for v in V.members
        )
        if not closed:
            continue
        SV = lab.preimage_subgroup(V)
        if not is_strongly_closed(F, lat.idx_of(SV.members)):
            ok_e = False
    report["e_strongly_closed_preimages"] = ok_e
    report["all"] = all(
        v for k, v in report.items() if isinstance(v, bool)
    )
    return report


def subsystem_property_suite(lab: MorphismLabeling, H: Subgroup) -> dict:
    """Receptivity transfer and centric-radical inclusions for one induced
    subsystem."""
    F = lab.system
    lat = F.lattice
    sub = lab.subsystem_for(H)
    slat = sub.lattice
    report = {}

    # (a) fully normalized or centralized members are receptive and fully
    # centralized in both systems
    ok_a = True
    sv_mask = sub.S.mask
    for i in sorted(lab.objects):
        if lat.masks[i] & ~sv_mask:
            continue
        si = slat.idx_of(lat.subs[i].members)
        if is_fully_normalized(sub, si) or is_fully_centralized(sub, si):
            if not (
                is_receptive(sub, si)
                and is_fully_centralized(sub, si)
                and is_receptive(F, i)
                and is_fully_centralized(F, i)
            ):
                ok_a = False
    report["a_receptive_transfer"] = ok_a

    # (b) centric radicals of the subsystem are objects and ambient-centric
    sub_cr = [
        i
        for i in range(len(slat.subs))
        if is_centric(sub, i) and is_radical(sub, i)
    ]
    sub_c_objects = [
        i
        for i in range(len(slat.subs))
        if is_centric(sub, i)
        and lat.idx_of(slat.subs[i].members) in lab.objects
    ]
    ok_b1 = set(sub_cr) <= set(sub_c_objects)
    ok_b2 = all(
        is_centric(F, lat.idx_of(slat.subs[i].members)) for i in sub_c_objects
    )
    report["b_cr_in_objects"] = ok_b1
    report["b_objects_ambient_centric"] = ok_b2
    report["all"] = ok_a and ok_b1 and ok_b2
    return report


def saturation_normality_matrix(lab: MorphismLabeling, cap: int = DEFAULT_LABEL_GROUP_CAP) -> dict:
    """For every subgroup H of the label group: construct the induced
    subsystem, decide saturation and normality directly, and check both
    characterizations.  Exhaustive over subgroups of the label group."""
    from .normal import is_normal

    L = lab.label_group
    if L.order > cap:
        raise BudgetExceeded(f"label group order {L.order} above cap {cap}")
    F = lab.system
    p = F.p
    rows = []
    all_ok = True
    for H in subgroup_lattice(L):
        sub = lab.subsystem_for(H)
        sat = is_saturated(sub)
        V_order = len(set(H.members) & set(lab.sylow_image.members))
        sylow_cond = V_order == p_part(H.order, p)
        nrm = False
        if sat:
            nrm = is_normal(sub, F, check_premises=False).overall
        normal_cond = normalizer(L, H).order == L.order
        ok_a = sat == sylow_cond
        ok_b = (sat and nrm) == normal_cond
        all_ok = all_ok and ok_a and ok_b
        rows.append(
            {
                "H": list(H.members),
                "H_order": H.order,
                "sylow_intersection_order": V_order,
                "sylow_condition": sylow_cond,
                "saturated": sat,
                "normal": nrm,
                "normal_condition": normal_cond,
                "saturation_matches": ok_a,
                "normality_matches": ok_b,
                "subsystem_order": sub.S.order,
                "subsystem_isos": sub.iso_count,
            }
        )
    return {"rows": rows, "all_ok": all_ok}


# -- serialization ---------------------------------------------------------------


def labeling_to_dict(lab: MorphismLabeling) -> dict:
    F = lab.system
    morphs = labeled_morphism_list(F, lab.objects)
    mindex = {m: k for k, m in enumerate(morphs)}
    pairs = []
    for i in sorted(lab.objects):
        for images in sorted(F.isos_by_dom[i]):
            key = (i, images)
            if key in lab.labels:
                pairs.append([mindex[(i, images)], lab.labels[key]])
    return {
        "core": list(lab.core.members),
        "objects": sorted(lab.objects),
        "label_group_order": lab.label_group.order,
        "label_group_mul": [list(r) for r in lab.label_group.mul_table],
        "labels": pairs,
    }


def labeling_from_dict(F: FusionSystem, data: dict) -> MorphismLabeling:
    L = FiniteGroup("label-group", data["label_group_mul"],
                    _inv_from_mul(data["label_group_mul"]))
    objects = data["objects"]
    morphs = labeled_morphism_list(F, objects)
    table = {}
    for mid, val in data["labels"]:
        i, images = morphs[mid]
        table[(i, images)] = val
    core = Subgroup(F.lattice.parent, tuple(data["core"]))

    def fn(dom_members, images):
        i = F.lattice.idx_of(dom_members)
        return table[(i, tuple(images))]

    return build_labeling(F, core, objects, L, fn)


def _inv_from_mul(mul):
    n = len(mul)
    inv = [0] * n
    for a in range(n):
        for b in range(n):
            if mul[a][b] == 0:
                inv[a] = b
    return inv
