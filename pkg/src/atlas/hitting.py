"""Exact minimum hitting set by branch and bound over vertex bitmasks."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


class InfeasibleError(ValueError):
    pass


class CapExceeded(RuntimeError):
    """An exact computation was refused because the instance is above its cap."""


@dataclass(frozen=True)
class HittingSetInstance:
    family: tuple[frozenset[int], ...]
    candidates: frozenset[int] | None = None
    cap: int | None = None


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def to_mask(items: Iterable[int]) -> int:
    mask = 0
    for x in items:
        mask |= 1 << x
    return mask


def reduce_family(masks: Iterable[int]) -> list[int]:
    """Drop duplicates and every set that contains another set of the family."""
    uniq = sorted(set(masks), key=lambda m: (m.bit_count(), m))
    kept: list[int] = []
    for m in uniq:
        if not any(k & m == k for k in kept):
            kept.append(m)
    return kept


def greedy_hitting_set(masks: list[int]) -> int:
    chosen = 0
    open_sets = [m for m in masks]
    while open_sets:
        counts: dict[int, int] = {}
        for m in open_sets:
            for b in _bits(m):
                counts[b] = counts.get(b, 0) + 1
        v = min(counts, key=lambda b: (-counts[b], b))
        chosen |= 1 << v
        open_sets = [m for m in open_sets if not m >> v & 1]
    return chosen


def disjoint_lower_bound(masks: list[int]) -> int:
    used, count = 0, 0
    for m in sorted(masks, key=lambda m: (m.bit_count(), m)):
        if not m & used:
            used |= m
            count += 1
    return count


def min_hitting_set_masks(masks: Iterable[int], candidates: int | None = None) -> int:
    """Minimum hitting set of bitmask sets, as a bitmask.

    Sets are first restricted to ``candidates``.  Among minimum solutions the
    search returns the first one met when branching on vertices in id order.
    """
    restricted = []
    for m in masks:
        r = m if candidates is None else m & candidates
        if r == 0:
            raise InfeasibleError(f"set {sorted(_bits(m))} has no candidate hitter")
        restricted.append(r)
    fam = reduce_family(restricted)
    if not fam:
        return 0
    best = [greedy_hitting_set(fam)]

    def search(open_sets: list[int], chosen: int, size: int) -> None:
        if not open_sets:
            if size < best[0].bit_count():
                best[0] = chosen
            return
        if size + disjoint_lower_bound(open_sets) >= best[0].bit_count():
            return
        # branch on the smallest open set; later branches exclude earlier vertices
        pivot = min(open_sets, key=lambda m: (m.bit_count(), m))
        banned = 0
        for v in _bits(pivot):
            bit = 1 << v
            rest = []
            dead = False
            for m in open_sets:
                if m & bit:
                    continue
                m2 = m & ~banned
                if m2 == 0:
                    dead = True
                    break
                rest.append(m2)
            if not dead:
                search(reduce_family(rest), chosen | bit, size + 1)
            banned |= bit

    search(fam, 0, 0)
    return best[0]


def min_hitting_set(instance: HittingSetInstance | Iterable[Iterable[int]],
                    candidates: Iterable[int] | None = None) -> frozenset[int]:
    if isinstance(instance, HittingSetInstance):
        family, cands, cap = instance.family, instance.candidates, instance.cap
    else:
        family, cands, cap = tuple(frozenset(s) for s in instance), candidates, None
    family = tuple(family)
    if cap is not None and len(family) > cap:
        raise CapExceeded(f"hitting-set family of {len(family)} sets exceeds cap {cap}")
    if any(not s for s in family):
        raise InfeasibleError("family contains an empty set")
    cmask = None if cands is None else to_mask(cands)
    return frozenset(_bits(min_hitting_set_masks([to_mask(s) for s in family], cmask)))
