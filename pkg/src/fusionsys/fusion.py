"""Fusion systems over small finite p-groups, stored explicitly.

A fusion system is held as the set of its isomorphisms: every morphism
factors uniquely as an isomorphism onto its image followed by an
inclusion, so the isomorphism table determines every hom set
``Hom(P, Q)`` exactly.  Isomorphisms are closed under composition,
restriction and inversion by a deterministic worklist fixpoint, and hom
sets are materialized on demand from the table.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .errors import (
    ClosureBudgetExceeded,
    NotAHomomorphism,
    NotIsomorphism,
)
from .groups import (
    FiniteGroup,
    GroupMap,
    Subgroup,
    centralizer,
    is_prime,
    normalizer,
    p_part,
    subgroup_lattice,
)

DEFAULT_MORPHISM_BUDGET = int(os.environ.get("FUSIONSYS_MORPHISM_BUDGET", "2000000"))


class SubgroupLattice:
    """The subgroups of S with index structures used by fusion closures."""

    def __init__(self, S: Subgroup):
        self.parent = S.group
        self.S = S
        if S.order == self.parent.order:
            subs = subgroup_lattice(self.parent)
        else:
            subs = subgroup_lattice(self.parent, within=S)
        self.subs = tuple(subs)
        self.index = {H.members: i for i, H in enumerate(self.subs)}
        self.masks = tuple(H.mask for H in self.subs)
        n = self.parent.order
        pos = []
        for H in self.subs:
            arr = [-1] * n
            for i, m in enumerate(H.members):
                arr[m] = i
            pos.append(tuple(arr))
        self.member_pos = tuple(pos)
        self._maximals = None
        self._norm = {}
        self._cent = {}
        self.S_idx = self.index[S.members]

    def __len__(self):
        return len(self.subs)

    def idx_of(self, members) -> int:
        return self.index[tuple(members)]

    def maximals(self, i: int):
        """Indices of the maximal proper subgroups of subgroup i."""
        if self._maximals is None:
            self._maximals = [None] * len(self.subs)
        if self._maximals[i] is None:
            mask_i = self.masks[i]
            order_i = self.subs[i].order
            below = [
                j
                for j in range(len(self.subs))
                if self.subs[j].order < order_i and self.masks[j] & ~mask_i == 0
            ]
            maxi = []
            for j in below:
                if not any(
                    self.subs[k].order > self.subs[j].order
                    and self.masks[j] & ~self.masks[k] == 0
                    for k in below
                    if k != j
                ):
                    maxi.append(j)
            self._maximals[i] = tuple(maxi)
        return self._maximals[i]

    def normalizer_in_S(self, i: int) -> int:
        if i not in self._norm:
            N = normalizer(self.parent, self.subs[i], within=self.S)
            self._norm[i] = self.index[N.members]
        return self._norm[i]

    def centralizer_in_S(self, i: int) -> int:
        if i not in self._cent:
            C = centralizer(self.parent, self.subs[i], within=self.S)
            self._cent[i] = self.index[C.members]
        return self._cent[i]

    def subs_below(self, i: int):
        mask_i = self.masks[i]
        return [j for j in range(len(self.subs)) if self.masks[j] & ~mask_i == 0]


@dataclass(frozen=True)
class FusionMorphism:
    """An injective homomorphism between subgroups of S.

    ``images[k]`` is the image of ``domain.members[k]``.  Equality
    includes the codomain, so the same map with different codomains gives
    distinct morphisms.
    """

    domain: Subgroup
    codomain: Subgroup
    images: tuple

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if len(set(self.images)) != len(self.images):
            raise NotIsomorphism("fusion morphisms must be injective")
        GroupMap(self.domain, self.codomain, self.images)  # hom check

    @property
    def is_isomorphism(self) -> bool:
        return len(self.images) == self.codomain.order

    def image_members(self) -> tuple:
        return tuple(sorted(self.images))

    def apply(self, x: int) -> int:
        return self.images[self.domain.members.index(x)]

    def sort_key(self):
        return (self.domain.members, self.codomain.members, self.images)


class FusionSystem:
    """A fusion system over a p-group S, given by its isomorphism table.

    ``isos_by_dom[i]`` maps image tuples to the lattice index of the
    image subgroup, for every isomorphism with domain ``lattice.subs[i]``.
    Immutable after construction.
    """

    def __init__(self, p: int, S: Subgroup, lattice: SubgroupLattice, isos_by_dom):
        self.p = p
        self.S = S
        self.lattice = lattice
        self.isos_by_dom = tuple(dict(d) for d in isos_by_dom)
        self._iso_count = sum(len(d) for d in self.isos_by_dom)
        self._restr_sets = {}
        self._aut_s_sets = {}
        self._elem_class = None
        self._sub_class = None
        self._hom_cache = {}
        self.flags_cache = {}
        self.meta = {}

    # -- size and identity --------------------------------------------------

    @property
    def iso_count(self) -> int:
        return self._iso_count

    def iso_pairs(self):
        """Iterate (dom_idx, images, img_idx) deterministically."""
        for i, bucket in enumerate(self.isos_by_dom):
            for images in sorted(bucket):
                yield i, images, bucket[images]

    def iso_key_set(self):
        """Canonical set of (domain members, images) pairs."""
        out = set()
        for i, bucket in enumerate(self.isos_by_dom):
            dom = self.lattice.subs[i].members
            for images in bucket:
                out.add((dom, images))
        return out

    def same_system(self, other: "FusionSystem") -> bool:
        if self.S.members != other.S.members or self.p != other.p:
            return False
        if self._iso_count != other._iso_count:
            return False
        return self.iso_key_set() == other.iso_key_set()

    def contains_system(self, other: "FusionSystem") -> bool:
        """Hom-table containment: every morphism of ``other`` is in self."""
        if set(other.S.members) > set(self.S.members):
            return False
        for i, bucket in enumerate(other.isos_by_dom):
            dom = other.lattice.subs[i].members
            j = self.lattice.index.get(dom)
            if j is None:
                return False
            mine = self.isos_by_dom[j]
            for images in bucket:
                if images not in mine:
                    return False
        return True

    # -- hom sets -----------------------------------------------------------

    def iso_images(self, i: int):
        return self.isos_by_dom[i]

    def has_iso(self, dom_members, images) -> bool:
        j = self.lattice.index.get(tuple(dom_members))
        if j is None:
            return False
        return tuple(images) in self.isos_by_dom[j]

    def isomorphisms(self, P: Subgroup, Q: Subgroup):
        """Iso_F(P, Q) as image tuples."""
        i = self.lattice.idx_of(P.members)
        j = self.lattice.idx_of(Q.members)
        return sorted(im for im, tgt in self.isos_by_dom[i].items() if tgt == j)

    def automorphism_images(self, i: int):
        return sorted(im for im, tgt in self.isos_by_dom[i].items() if tgt == i)

    def aut_order(self, i: int) -> int:
        return sum(1 for tgt in self.isos_by_dom[i].values() if tgt == i)

    def hom_set(self, P: Subgroup, Q: Subgroup):
        """Hom_F(P, Q) as FusionMorphism objects, sorted."""
        key = (P.members, Q.members)
        if key not in self._hom_cache:
            i = self.lattice.idx_of(P.members)
            qmask = Q.mask
            out = []
            for images, tgt in self.isos_by_dom[i].items():
                if self.lattice.masks[tgt] & ~qmask == 0:
                    out.append(FusionMorphism(P, Q, images))
            out.sort(key=lambda m: m.images)
            self._hom_cache[key] = tuple(out)
        return self._hom_cache[key]

    def hom_images(self, i: int, qmask: int):
        """Image tuples of morphisms from subgroup i into the mask."""
        masks = self.lattice.masks
        return [im for im, tgt in self.isos_by_dom[i].items() if masks[tgt] & ~qmask == 0]

    def morphism_count(self) -> int:
        """Total number of (P, Q, map) morphisms over all pairs."""
        total = 0
        masks = self.lattice.masks
        for bucket in self.isos_by_dom:
            for tgt in bucket.values():
                m = masks[tgt]
                total += sum(1 for q in masks if m & ~q == 0)
        return total

    # -- conjugacy ----------------------------------------------------------

    def element_class(self, x: int):
        """The F-conjugacy class of an element of S."""
        self._ensure_element_classes()
        root = self._elem_find(x)
        return self._elem_members[root]

    def _ensure_element_classes(self):
        if self._elem_class is not None:
            return
        n = self.lattice.parent.order
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for i, bucket in enumerate(self.isos_by_dom):
            dom = self.lattice.subs[i].members
            for images in bucket:
                for a, b in zip(dom, images):
                    ra, rb = find(a), find(b)
                    if ra != rb:
                        parent[max(ra, rb)] = min(ra, rb)
        members = {}
        for x in self.S.members:
            members.setdefault(find(x), []).append(x)
        self._elem_class = parent
        self._elem_members = {r: tuple(sorted(v)) for r, v in members.items()}

    def _elem_find(self, a):
        parent = self._elem_class
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def subgroup_class(self, i: int):
        """Lattice indices F-conjugate to subgroup i."""
        self._ensure_subgroup_classes()
        return self._sub_members[self._sub_find(i)]

    def subgroup_class_reps(self):
        self._ensure_subgroup_classes()
        return sorted(self._sub_members)

    def _ensure_subgroup_classes(self):
        if self._sub_class is not None:
            return
        n = len(self.lattice.subs)
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for i, bucket in enumerate(self.isos_by_dom):
            for tgt in set(bucket.values()):
                ra, rb = find(i), find(tgt)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        members = {}
        for i in range(n):
            members.setdefault(find(i), []).append(i)
        self._sub_class = parent
        self._sub_members = {r: tuple(sorted(v)) for r, v in members.items()}

    def _sub_find(self, a):
        parent = self._sub_class
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    # -- helper sets for saturation ------------------------------------------

    def aut_s_images(self, i: int):
        """Image tuples of Aut_S(P) for subgroup i."""
        if i not in self._aut_s_sets:
            G = self.lattice.parent
            P = self.lattice.subs[i]
            N = self.lattice.subs[self.lattice.normalizer_in_S(i)]
            out = set()
            for x in N.members:
                out.add(tuple(G.conj(x, m) for m in P.members))
            self._aut_s_sets[i] = frozenset(out)
        return self._aut_s_sets[i]

    def restrictions_to(self, n_idx: int, q_idx: int):
        """All restrictions to subgroup q of isomorphisms with domain n."""
        key = (n_idx, q_idx)
        if key not in self._restr_sets:
            pos = self.lattice.member_pos[n_idx]
            qmem = self.lattice.subs[q_idx].members
            out = set()
            for images in self.isos_by_dom[n_idx]:
                out.add(tuple(images[pos[m]] for m in qmem))
            self._restr_sets[key] = out
        return self._restr_sets[key]


# -- the closure engine -----------------------------------------------------


def _inner_seeds(lattice: SubgroupLattice):
    """All S-conjugation isomorphisms, the mandatory inner morphisms."""
    G = lattice.parent
    S = lattice.S
    seeds = []
    for i, P in enumerate(lattice.subs):
        seen = set()
        for x in S.members:
            images = tuple(G.conj(x, m) for m in P.members)
            if images not in seen:
                seen.add(images)
                seeds.append((i, images))
    return seeds


def _close_isos(lattice: SubgroupLattice, seeds, budget: int):
    """Fixpoint closure of isomorphisms under restriction, composition
    and inversion.  Seeds are (dom_idx, images) pairs; inner morphisms
    must be included by the caller."""
    index = lattice.index
    member_pos = lattice.member_pos
    subs = lattice.subs

    by_dom = [dict() for _ in subs]
    by_img = [[] for _ in subs]
    count = 0
    work = []

    def img_idx_of(images):
        key = tuple(sorted(images))
        j = index.get(key)
        if j is None:
            raise NotAHomomorphism("image is not a subgroup inside S")
        return j

    def add(i, images):
        nonlocal count
        bucket = by_dom[i]
        if images in bucket:
            return
        j = img_idx_of(images)
        bucket[images] = j
        by_img[j].append((i, images))
        count += 1
        if count > budget:
            raise ClosureBudgetExceeded(
                f"fusion closure exceeded morphism budget {budget}"
            )
        work.append((i, images, j))

    for i, images in seeds:
        add(i, images)

    while work:
        i, images, j = work.pop()
        dom = subs[i].members
        pos_i = member_pos[i]
        pos_j = member_pos[j]

        # inverse
        inv = [0] * len(images)
        for k, m in enumerate(dom):
            inv[pos_j[images[k]]] = m
        add(j, tuple(inv))

        # restrictions to maximal subgroups
        for mx in lattice.maximals(i):
            sub = subs[mx].members
            add(mx, tuple(images[pos_i[m]] for m in sub))

        # compositions: new first, then new second
        for psi_images in list(by_dom[j]):
            add(i, tuple(psi_images[pos_j[y]] for y in images))
        for (k, rho_images) in list(by_img[i]):
            add(k, tuple(images[pos_i[y]] for y in rho_images))

    return by_dom


def generate_fusion(
    S: Subgroup,
    p: int,
    generators,
    budget: int = None,
    lattice: SubgroupLattice = None,
) -> FusionSystem:
    """The smallest fusion system over S containing the generators.

    Generators may be FusionMorphism, GroupMap, or (domain_members,
    images) pairs; each must be an injective homomorphism between
    subgroups of S.
    """
    budget = DEFAULT_MORPHISM_BUDGET if budget is None else budget
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    lat = lattice if lattice is not None else SubgroupLattice(S)
    seeds = _inner_seeds(lat)
    sset = set(S.members)
    for gen in generators:
        if isinstance(gen, FusionMorphism):
            dom, images = gen.domain.members, gen.images
        elif isinstance(gen, GroupMap):
            dom, images = gen.domain.members, gen.images
        else:
            dom, images = gen
            dom = tuple(dom)
            images = tuple(images)
        if len(set(images)) != len(images):
            raise NotIsomorphism("generator is not injective")
        if not (set(dom) <= sset and set(images) <= sset):
            raise NotAHomomorphism("generator leaves S")
        i = lat.index.get(tuple(sorted(dom)))
        if i is None or tuple(sorted(dom)) != tuple(dom):
            i = lat.index[tuple(sorted(dom))]
            order = {m: k for k, m in enumerate(dom)}
            images = tuple(images[order[m]] for m in lat.subs[i].members)
        GroupMap(lat.subs[i], S, images)  # validates the homomorphism law
        seeds.append((i, images))
    by_dom = _close_isos(lat, seeds, budget)
    return FusionSystem(p, S, lat, by_dom)


def fusion_from_conjugation_maps(
    S: Subgroup,
    p: int,
    maps,
    lattice: SubgroupLattice = None,
) -> FusionSystem:
    """Build a fusion system from a restriction-complete conjugation family.

    ``maps`` is an iterable of (domain_members, images) pairs that is
    closed under composition as partial maps and contains the inner
    conjugations on their full domains; all restrictions are then
    materialized directly, with no fixpoint.  Used for F_S(G), where the
    family {c_x restricted to S meet x^-1 S x} has both properties.
    """
    lat = lattice if lattice is not None else SubgroupLattice(S)
    index = lat.index
    masks = lat.masks
    subs = lat.subs

    by_domain_mask = {}
    for dom, images in maps:
        dom = tuple(dom)
        m = 0
        for x in dom:
            m |= 1 << x
        pos = {x: k for k, x in enumerate(dom)}
        by_domain_mask.setdefault(m, []).append((pos, tuple(images)))

    by_dom = [dict() for _ in subs]
    for i, P in enumerate(subs):
        pmask = masks[i]
        bucket = by_dom[i]
        pmem = P.members
        for dmask, entries in by_domain_mask.items():
            if pmask & ~dmask:
                continue
            for pos, images in entries:
                restr = tuple(images[pos[x]] for x in pmem)
                if restr not in bucket:
                    j = index.get(tuple(sorted(restr)))
                    if j is None:
                        raise NotAHomomorphism("conjugation image is not inside S")
                    bucket[restr] = j
    return FusionSystem(p, S, lat, by_dom)


def conjugation_maps_of_group(G: FiniteGroup, S: Subgroup, acting=None):
    """Deduplicated maps c_x on S meet x^-1 S x, for x in the acting set."""
    sset = set(S.members)
    pool = range(G.order) if acting is None else acting
    seen = {}
    for x in pool:
        dom = []
        images = []
        for s in S.members:
            y = G.conj(x, s)
            if y in sset:
                dom.append(s)
                images.append(y)
        key = (tuple(dom), tuple(images))
        seen[key] = None
    return list(seen)


def fusion_of_group(G: FiniteGroup, p: int, S: Subgroup = None) -> FusionSystem:
    """The fusion system of the group G over a Sylow p-subgroup."""
    from .groups import sylow_p

    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if S is None:
        S = sylow_p(G, p)
    if p_part(S.order, p) != S.order or p_part(G.order, p) != S.order:
        raise ValueError("S must be a Sylow p-subgroup of G")
    maps = conjugation_maps_of_group(G, S)
    F = fusion_from_conjugation_maps(S, p, maps)
    F.meta["group_order"] = G.order
    return F


def inner_fusion(S: Subgroup, p: int, lattice=None) -> FusionSystem:
    """F_S(S): conjugation inside S only."""
    lat = lattice if lattice is not None else SubgroupLattice(S)
    maps = conjugation_maps_of_group(lat.parent, S, acting=S.members)
    return fusion_from_conjugation_maps(S, p, maps, lattice=lat)


def subsystem_on_lattice(F: FusionSystem, T: Subgroup) -> FusionSystem:
    """The full subcategory of F on the subgroups of T, as a system over T.

    This is only a fusion system when T is closed enough; callers verify
    validity where the math does not already guarantee it.
    """
    lat = SubgroupLattice(T)
    by_dom = [dict() for _ in lat.subs]
    tmask = T.mask
    for i, bucket in enumerate(F.isos_by_dom):
        dom = F.lattice.subs[i].members
        k = lat.index.get(dom)
        if k is None:
            continue
        for images, tgt in bucket.items():
            if F.lattice.masks[tgt] & ~tmask == 0:
                by_dom[k][images] = lat.index[F.lattice.subs[tgt].members]
    return FusionSystem(F.p, T, lat, by_dom)


def is_subsystem(D: FusionSystem, F: FusionSystem) -> bool:
    """Hom-table containment of D in F (shared parent group required)."""
    if D.lattice.parent is not F.lattice.parent:
        raise ValueError("systems must share a parent group for containment")
    return F.contains_system(D)


def assert_valid_fusion_system(F: FusionSystem):
    """Exhaustively check the fusion system axioms and closure properties.

    Verifies inner morphisms are present and that the isomorphism table
    is closed under restriction, inversion and composition.  Intended for
    tests and debug runs; cost is roughly quadratic in the table.
    """
    lat = F.lattice
    for i, images in _inner_seeds(lat):
        if images not in F.isos_by_dom[i]:
            raise AssertionError(f"inner morphism missing at subgroup {i}")
    for i, bucket in enumerate(F.isos_by_dom):
        dom = lat.subs[i].members
        pos_i = lat.member_pos[i]
        for images, j in bucket.items():
            pos_j = lat.member_pos[j]
            inv = [0] * len(images)
            for k, m in enumerate(dom):
                inv[pos_j[images[k]]] = m
            if tuple(inv) not in F.isos_by_dom[j]:
                raise AssertionError("inverse missing")
            for mx in lat.maximals(i):
                sub = lat.subs[mx].members
                restr = tuple(images[pos_i[m]] for m in sub)
                if restr not in F.isos_by_dom[mx]:
                    raise AssertionError("restriction missing")
            for psi_images in F.isos_by_dom[j]:
                comp = tuple(psi_images[pos_j[y]] for y in images)
                if comp not in bucket:
                    raise AssertionError("composition missing")


# -- transported systems ------------------------------------------------------


def transport(F: FusionSystem, beta: GroupMap) -> FusionSystem:
    """The system over beta(S) with morphisms beta . phi . beta^-1.

    ``beta`` must be a group isomorphism defined on all of S.
    """
    if beta.domain.members != F.S.members:
        raise NotIsomorphism("transport map must be defined on S")
    if not beta.is_injective() or len(beta.images) != beta.codomain.order:
        raise NotIsomorphism("transport map must be a group isomorphism")
    fwd = dict(zip(beta.domain.members, beta.images))
    T = beta.codomain
    lat = SubgroupLattice(T)
    by_dom = [dict() for _ in lat.subs]
    for i, bucket in enumerate(F.isos_by_dom):
        dom = F.lattice.subs[i].members
        new_dom = tuple(sorted(fwd[m] for m in dom))
        k = lat.index[new_dom]
        order = sorted(range(len(dom)), key=lambda t: fwd[dom[t]])
        for images, tgt in bucket.items():
            new_images = tuple(fwd[images[t]] for t in order)
            by_dom[k][new_images] = lat.index[
                tuple(sorted(fwd[F.lattice.subs[tgt].members[s]] for s in range(len(images))))
            ]
    out = FusionSystem(F.p, T, lat, by_dom)
    return out


def transport_by_automorphism(F: FusionSystem, images) -> FusionSystem:
    """Transport along an automorphism of S given by an image tuple."""
    beta = GroupMap(F.S, F.S, tuple(images))
    return transport(F, beta)


# -- serialization ------------------------------------------------------------


def system_to_dict(F: FusionSystem) -> dict:
    """Deterministic JSON-ready description of the system."""
    subs = [list(H.members) for H in F.lattice.subs]
    isos = []
    for i, images, j in F.iso_pairs():
        isos.append([i, j, list(images)])
    return {
        "p": F.p,
        "sylow": list(F.S.members),
        "subgroups": subs,
        "isomorphisms": isos,
    }


def labeled_morphism_list(F: FusionSystem, object_indices) -> list:
    """Deterministic (dom_idx, images) list of isos between given objects.

    The position of each entry is its morphism id in serialized labelings.
    """
    objset = set(object_indices)
    out = []
    for i in sorted(objset):
        bucket = F.isos_by_dom[i]
        for images in sorted(bucket):
            if bucket[images] in objset:
                out.append((i, images))
    return out
