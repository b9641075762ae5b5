"""Permutation-group backend for ambient groups too large for tables.

Only two things are ever needed from a large realizing group: a Sylow
p-subgroup, and the family of conjugation maps it induces on that Sylow
subgroup.  Both are extracted here with vectorized passes over the
element list; everything downstream works with the small Sylow group.
"""

from __future__ import annotations

import numpy as np

from .errors import ClosureBudgetExceeded, InvalidPermutation
from .groups import FiniteGroup, Subgroup, p_part, perm_from_cycles

DEFAULT_ELEMENT_LIMIT = 2_000_000


def _pack_keys(rows: np.ndarray) -> np.ndarray:
    """Injective int64 key per row, ordered like lexicographic row order."""
    d = rows.shape[1]
    if d > 15:
        raise InvalidPermutation("degree above 15 is not supported by the packer")
    weights = (16 ** np.arange(d - 1, -1, -1, dtype=np.int64))
    return rows.astype(np.int64) @ weights


def close_perm_rows(degree: int, gens, limit: int = DEFAULT_ELEMENT_LIMIT) -> np.ndarray:
    """All elements generated by the permutations, as a lex-sorted array."""
    gen_rows = np.array([list(g) for g in gens], dtype=np.int8)
    if gen_rows.size and (
        np.any(np.sort(gen_rows, axis=1) != np.arange(degree, dtype=np.int8))
    ):
        raise InvalidPermutation("generator is not a permutation")
    identity = np.arange(degree, dtype=np.int8)[None, :]
    all_rows = identity
    all_keys = _pack_keys(all_rows)
    frontier = identity
    while frontier.shape[0]:
        batches = []
        for g in gen_rows:
            batches.append(frontier[:, g])
        if not batches:
            break
        cand = np.concatenate(batches, axis=0)
        keys = _pack_keys(cand)
        keys, first = np.unique(keys, return_index=True)
        cand = cand[first]
        fresh = ~np.isin(keys, all_keys, assume_unique=False)
        cand = cand[fresh]
        if cand.shape[0] == 0:
            break
        all_rows = np.concatenate([all_rows, cand], axis=0)
        all_keys = np.concatenate([all_keys, keys[fresh]])
        order = np.argsort(all_keys)
        all_rows = all_rows[order]
        all_keys = all_keys[order]
        if all_rows.shape[0] > limit:
            raise ClosureBudgetExceeded(
                f"permutation closure exceeded {limit} elements"
            )
        frontier = cand
    return all_rows


def conjugation_images(rows: np.ndarray, sub_rows: np.ndarray) -> np.ndarray:
    """For each x in rows and each s in sub_rows, the index in sub_rows of
    x s x^-1, or -1 when the conjugate lies outside.  Shape (N, |sub|)."""
    n, d = rows.shape
    inv = np.argsort(rows, axis=1).astype(np.int8)
    sub_keys = _pack_keys(sub_rows)
    order = np.argsort(sub_keys)
    sorted_keys = sub_keys[order]
    out = np.empty((n, sub_rows.shape[0]), dtype=np.int16)
    for j in range(sub_rows.shape[0]):
        s = sub_rows[j]
        xs = rows[:, s]
        b = np.take_along_axis(xs, inv, axis=1)
        keys = _pack_keys(b)
        posn = np.searchsorted(sorted_keys, keys)
        posn = np.clip(posn, 0, len(sorted_keys) - 1)
        hit = sorted_keys[posn] == keys
        mapped = np.where(hit, order[posn], -1)
        out[:, j] = mapped.astype(np.int16)
    return out


def partial_conjugation_maps(rows: np.ndarray, sub_rows: np.ndarray) -> list:
    """Deduplicated maximal conjugation maps on the subgroup, in local
    sub_rows-sorted indices: a list of (domain_indices, image_indices)."""
    table = conjugation_images(rows, sub_rows)
    uniq = np.unique(table, axis=0)
    out = []
    for row in uniq:
        dom = tuple(int(j) for j in range(len(row)) if row[j] >= 0)
        images = tuple(int(row[j]) for j in dom)
        out.append((dom, images))
    return out


def element_orders(rows: np.ndarray) -> np.ndarray:
    """Order of each permutation via its cycle type."""
    n, d = rows.shape
    orders = np.ones(n, dtype=np.int64)
    rng = np.arange(n)
    for start in range(d):
        # cycle length through `start` for every row at once
        cur = np.full(n, start, dtype=np.int64)
        cyclen = np.zeros(n, dtype=np.int64)
        done = np.zeros(n, dtype=bool)
        for step in range(1, d + 1):
            cur = rows[rng, cur].astype(np.int64)
            newly = (cur == start) & ~done
            cyclen[newly] = step
            done |= newly
            if done.all():
                break
        orders = np.lcm(orders, cyclen)
    return orders


def p_element_mask(rows: np.ndarray, p: int) -> np.ndarray:
    """Boolean mask of elements of p-power order.

    An element has p-power order iff its p^m-th power is the identity,
    where p^m is the p-part of the group order.
    """
    n, d = rows.shape
    m = 0
    k = p_part(n, p)
    while k > 1:
        k //= p
        m += 1
    y = rows
    identity = np.arange(d, dtype=rows.dtype)
    for _ in range(m):
        z = y
        for _ in range(p - 1):
            z = np.take_along_axis(y, z, axis=1)
        y = z
    return (y == identity[None, :]).all(axis=1)


def sylow_rows(rows: np.ndarray, p: int) -> np.ndarray:
    """Rows of one Sylow p-subgroup, grown through normalizer scans over
    the p-power-order elements."""
    n, d = rows.shape
    target = p_part(n, p)
    prows = rows[p_element_mask(rows, p)]

    sub = rows[:1]  # identity (rows are lex sorted, identity first)
    while sub.shape[0] < target:
        table = conjugation_images(prows, sub)
        normalizes = (table >= 0).all(axis=1)
        sub_keys = set(_pack_keys(sub).tolist())
        candidates = np.nonzero(normalizes)[0]
        grown = False
        for idx in candidates:
            key = int(_pack_keys(prows[idx : idx + 1])[0])
            if key in sub_keys:
                continue
            new_rows = _close_small(sub, prows[idx], d)
            if is_p_power_int(new_rows.shape[0], p):
                sub = new_rows
                grown = True
                break
        if not grown:
            raise RuntimeError("sylow growth stalled in permutation backend")
    return sub


def is_p_power_int(k: int, p: int) -> bool:
    while k % p == 0:
        k //= p
    return k == 1


def _close_small(sub: np.ndarray, extra: np.ndarray, degree: int) -> np.ndarray:
    elems = {tuple(int(v) for v in r) for r in sub}
    gens = [tuple(int(v) for v in r) for r in sub] + [tuple(int(v) for v in extra)]
    frontier = list(elems | {gens[-1]})
    elems.add(gens[-1])
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = tuple(a[i] for i in g)
                if c not in elems:
                    elems.add(c)
                    nxt.append(c)
        frontier = nxt
    rows = np.array(sorted(elems), dtype=np.int8)
    return rows


def table_group_from_rows(name: str, rows: np.ndarray) -> FiniteGroup:
    """A table group over explicit permutation rows (lex-sorted)."""
    perms = [tuple(int(v) for v in r) for r in rows]
    index = {pm: i for i, pm in enumerate(perms)}
    n = len(perms)
    mul = [[index[tuple(a[i] for i in b)] for b in perms] for a in perms]
    inv = []
    for a in perms:
        back = [0] * len(a)
        for i, v in enumerate(a):
            back[v] = i
        inv.append(index[tuple(back)])
    return FiniteGroup(name, mul, inv, perms=perms, validate=False)


class BigPermGroup:
    """A large permutation group kept as an element array."""

    def __init__(self, name, degree, gens, limit=DEFAULT_ELEMENT_LIMIT):
        self.name = name
        self.degree = degree
        self.gen_rows = [tuple(g) for g in gens]
        self.rows = close_perm_rows(degree, gens, limit=limit)
        self.order = int(self.rows.shape[0])

    @classmethod
    def from_cycles(cls, name, degree, cycle_gens, limit=DEFAULT_ELEMENT_LIMIT):
        gens = [perm_from_cycles(degree, cycles) for cycles in cycle_gens]
        return cls(name, degree, gens, limit=limit)

    def sylow_table_group(self, p):
        """The Sylow p-subgroup as its own table group, plus its rows."""
        sub = sylow_rows(self.rows, p)
        return table_group_from_rows(f"{self.name}-Syl{p}", sub), sub

    def fusion_maps_on(self, sub_rows: np.ndarray) -> list:
        return partial_conjugation_maps(self.rows, sub_rows)


def fusion_of_big_group(big: BigPermGroup, p: int):
    """The fusion system of a large permutation group over its Sylow
    p-subgroup, with the Sylow group realized as its own table group."""
    from .fusion import fusion_from_conjugation_maps
    from .groups import full_subgroup

    s_table, s_rows = big.sylow_table_group(p)
    maps = big.fusion_maps_on(s_rows)
    index_maps = []
    for dom, images in maps:
        index_maps.append((dom, images))
    S = full_subgroup(s_table)
    F = fusion_from_conjugation_maps(S, p, index_maps)
    F.meta["group_order"] = big.order
    F.meta["group_name"] = big.name
    F.meta["sylow_rows"] = s_rows
    F.meta["big_group"] = big
    return F


def subsystem_of_subgroup(F, big: BigPermGroup, member_rows: np.ndarray, p: int):
    """The fusion system induced on F's Sylow by a subgroup given by its
    element rows: maps are conjugation by that subgroup's elements, over
    its intersection with the Sylow group.  Returned over the Sylow
    group's table coordinates, as a subsystem of F."""
    from .fusion import fusion_from_conjugation_maps

    s_rows = F.meta["sylow_rows"]
    s_keys = _pack_keys(s_rows)
    k_keys = set(_pack_keys(member_rows).tolist())
    t_local = [i for i, key in enumerate(s_keys.tolist()) if key in k_keys]
    T = Subgroup(F.lattice.parent, tuple(t_local))
    t_rows = s_rows[np.array(t_local, dtype=np.int64)]
    raw = partial_conjugation_maps(member_rows, t_rows)
    maps = []
    for dom, images in raw:
        maps.append(
            (
                tuple(t_local[j] for j in dom),
                tuple(t_local[j] for j in images),
            )
        )
    E = fusion_from_conjugation_maps(T, p, maps)
    E.meta["group_order"] = int(member_rows.shape[0])
    return E
