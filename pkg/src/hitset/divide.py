"""Divide-and-conquer enumerators: the Boolean recursion (exact) and the
heuristic-ordered, optionally truncated STACCATO variant."""

from __future__ import annotations

import math

from .errors import ValidationError
from .family import (
    MhsCollection,
    SetFamily,
    collection_from_masks,
    empty_collection,
    minimize_masks,
)


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        lsb = mask & -mask
        out.append(lsb)
        mask ^= lsb
    return out


def _bool_rec(masks: list[int], budget: int) -> list[int]:
    """Minimal hitting sets of an antichain family, sizes <= budget.

    Four cases: trivial (fewer than two sets), an element common to every set,
    a singleton set, and the general element split.  The split element is the
    highest-frequency one (ties to the lowest index): it empties the
    containing-sets branch fastest and keeps runs deterministic.
    """
    if not masks:
        return [0] if budget >= 0 else []
    if any(s == 0 for s in masks):
        return []
    if len(masks) == 1:
        return _bits(masks[0]) if budget >= 1 else []

    common = masks[0]
    for s in masks[1:]:
        common &= s
        if not common:
            break
    if common:
        # the common element is itself minimal; everything else avoids it
        e = common & -common
        stripped = minimize_masks(s & ~e for s in masks)
        rest = _bool_rec(stripped, budget)
        return ([e] if budget >= 1 else []) + rest

    for s in masks:
        if s.bit_count() == 1:
            # antichain input: no other set contains this element, so it is
            # mandatory and the rest of the problem is the other sets
            others = [t for t in masks if t != s]
            return [t | s for t in _bool_rec(others, budget - 1)]

    freq: dict[int, int] = {}
    for s in masks:
        for b in _bits(s):
            freq[b] = freq.get(b, 0) + 1
    e = max(freq, key=lambda b: (freq[b], -b.bit_length()))
    s1 = minimize_masks(s & ~e for s in masks if s & e)
    s2 = [s for s in masks if not s & e]
    r1 = _bool_rec(s1, budget)
    r2 = _bool_rec(s2, budget)
    cand: set[int] = set()
    for t in r2:
        if t.bit_count() < budget:
            cand.add(t | e)
    for a in r1:
        for b in r2:
            u = a | b
            if u.bit_count() <= budget:
                cand.add(u)
    # cross-branch results can subsume each other, so minimize the union
    return minimize_masks(cand)


def bool_algorithm(family: SetFamily, cutoff: int | None = None) -> MhsCollection:
    """Exact recursive decomposition on the family's elements.

    The split branch combines "hitting sets containing e" (e joined onto the
    answer for the e-free sets) with "hitting sets avoiding e" (the answer for
    the family with e deleted everywhere, computed as the minimized cross
    union of the two sub-answers).
    """
    if family.has_empty_set():
        return empty_collection(family, complete=cutoff is None)
    budget = cutoff if cutoff is not None else family.universe_size
    result = _bool_rec(minimize_masks(family.masks), budget)
    return collection_from_masks(family, result, complete=cutoff is None)


def staccato(
    family: SetFamily,
    rank_fraction: float = 1.0,
    max_results: int | None = None,
    cutoff: int | None = None,
) -> MhsCollection:
    """Ranked-exploration variant of the Boolean split.

    Elements are ranked by the fraction of current sets containing them (ties
    to the lower index); each recursion level explores only the top
    rank_fraction of its ranking, and emission stops at max_results.  Emitted
    sets are always hitting sets; with rank_fraction=1 and no caps the
    minimized output is the complete answer.
    """
    if not (0.0 < rank_fraction <= 1.0):
        raise ValidationError(f"rank_fraction must be in (0, 1], got {rank_fraction}")
    if max_results is not None and max_results < 0:
        raise ValidationError("max_results must be non-negative")
    if family.has_empty_set():
        return empty_collection(family, complete=cutoff is None)
    budget = cutoff if cutoff is not None else family.universe_size
    truncated = False
    memo: dict[tuple[tuple[int, ...], int], list[int]] = {}

    def ranked_elements(masks: tuple[int, ...]) -> list[int]:
        freq: dict[int, int] = {}
        for s in masks:
            for b in _bits(s):
                freq[b] = freq.get(b, 0) + 1
        order = sorted(freq, key=lambda b: (-freq[b], b.bit_length()))
        k = math.ceil(rank_fraction * len(order))
        nonlocal truncated
        if k < len(order):
            truncated = True
        return order[:k]

    def solve(masks: tuple[int, ...], budget: int) -> list[int]:
        key = (masks, budget)
        hit = memo.get(key)
        if hit is not None:
            return hit
        acc: list[int] = []
        for e in ranked_elements(masks):
            if budget < 1:
                break
            s2 = tuple(s for s in masks if not s & e)
            if not s2:
                acc.append(e)
            elif budget >= 2:
                acc.extend(t | e for t in solve(s2, budget - 1))
        res = minimize_masks(acc)
        memo[key] = res
        return res

    masks = family.masks
    if not masks:
        return collection_from_masks(family, [0], complete=True)

    raw: list[int] = []
    seen: set[int] = set()
    capped = False
    for e in ranked_elements(masks):
        if budget < 1:
            break
        s2 = tuple(s for s in masks if not s & e)
        branch = [e] if not s2 else (
            [t | e for t in solve(s2, budget - 1)] if budget >= 2 else []
        )
        for t in branch:
            if t not in seen:
                seen.add(t)
                raw.append(t)
                if max_results is not None and len(raw) >= max_results:
                    capped = True
                    break
        if capped:
            break
    if capped:
        # a cap only truncates if un-emitted work remained
        truncated = True
    complete = not truncated and cutoff is None
    return collection_from_masks(family, minimize_masks(raw), complete=complete)
