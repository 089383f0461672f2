"""Full-cover decomposition.

A full cover of a family is a second family such that every input set is a
subset of some cover member.  Restricting the input to each cover member
gives independent subproblems whose answers recombine through the minimized
wedge (cross union).  Two classic cover constructions are provided; the
dualizer itself builds its covers from an edge of the simplified family,
which is provably a full cover of it.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .buildup import solve_masks
from .errors import ValidationError
from .family import (
    ElementSet,
    MhsCollection,
    SetFamily,
    collection_from_masks,
    elems_of,
    empty_collection,
    is_hitting,
    mask_of,
    minimize_masks,
)


@dataclass(frozen=True)
class FullCover:
    """Cover members over a family's universe; every target set must lie
    inside at least one member."""

    covers: tuple[ElementSet, ...]

    def __len__(self) -> int:
        return len(self.covers)


def _dedup(masks: Iterable[int]) -> list[int]:
    seen: set[int] = set()
    out: list[int] = []
    for x in masks:
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out


def cover_from_transversal(family: SetFamily, t: Iterable[int]) -> FullCover:
    """The cover {V minus {i} : i in t} plus {t} for a hitting set t.

    This covers the family's transversal side: any minimal hitting set either
    equals t or misses some element of t.  Requires t to hit the family.
    """
    elems = tuple(sorted(set(t)))
    if not is_hitting(family, elems):
        raise ValidationError("t is not a hitting set of the family")
    v = (1 << family.universe_size) - 1
    tmask = mask_of(elems)
    members = _dedup([v & ~(1 << i) for i in elems] + [tmask])
    return FullCover(tuple(elems_of(x) for x in members))


def cover_from_edge(family: SetFamily, e: Iterable[int]) -> FullCover:
    """The cover {(V minus f) plus {i} : f in family, i in f & e} for an edge e.

    Also a transversal-side cover: every minimal hitting set shares an
    element with e and avoids the rest of some set f it hits through that
    element.
    """
    emask = mask_of(sorted(set(e)))
    if emask not in family.masks:
        raise ValidationError("e is not an edge of the family")
    v = (1 << family.universe_size) - 1
    members: list[int] = []
    for f in family.masks:
        inter = f & emask
        while inter:
            lsb = inter & -inter
            inter ^= lsb
            members.append((v & ~f) | lsb)
    return FullCover(tuple(elems_of(x) for x in _dedup(members)))


def _edge_cover(masks: Sequence[int], universe_size: int) -> list[int]:
    """Co-singleton cover built from a largest edge of a simplified family.

    For an antichain family and an edge t, no other set contains t, so every
    set avoids some element of t (covered by that co-singleton) or is t
    itself.  Using the largest edge maximizes the number of cover members.
    """
    t = max(masks, key=lambda s: s.bit_count())
    v = (1 << universe_size) - 1
    members = []
    rest = t
    while rest:
        lsb = rest & -rest
        rest ^= lsb
        members.append(v & ~lsb)
    members.append(t)
    cover = _dedup(members)
    assert all(any(s & ~c == 0 for c in cover) for s in masks), "not a full cover"
    return cover


def _merge(parts: Sequence[Sequence[int]]) -> list[int]:
    """Minimized wedge across the subproblem answers.

    Cross unions are accumulated with deduplication and minimized once per
    merge level rather than per pairwise fold.
    """
    acc: set[int] = {0}
    for part in parts:
        acc = {a | b for a in acc for b in part}
        if not acc:
            return []
    return minimize_masks(acc)


def _dualize(masks: list[int], universe_size: int, base_threshold: int) -> list[int]:
    masks = minimize_masks(masks)
    if not masks:
        return [0]
    if any(s == 0 for s in masks):
        return []
    if len(masks) <= base_threshold:
        return solve_masks(masks, universe_size)
    cover = _edge_cover(masks, universe_size)
    parts = []
    for c in cover:
        sub = [s for s in masks if s & ~c == 0]
        if len(sub) == len(masks):
            # degenerate cover member: no shrinkage, hand the whole problem
            # to the base algorithm rather than recurse forever
            return solve_masks(masks, universe_size)
        parts.append(_dualize(sub, universe_size, base_threshold))
    return _merge(parts)


_TASK_CTX: tuple[int, int] | None = None


def _init_task(universe_size: int, base_threshold: int) -> None:
    global _TASK_CTX
    _TASK_CTX = (universe_size, base_threshold)


def _subproblem_task(masks: list[int]) -> list[int]:
    universe_size, base_threshold = _TASK_CTX
    return _dualize(masks, universe_size, base_threshold)


def full_cover_dualize(
    family: SetFamily,
    base_threshold: int = 8,
    workers: int = 1,
) -> MhsCollection:
    """Decompose along a full cover, solve the restricted subfamilies
    (recursively above `base_threshold` sets, with mmcs at the base), and
    recombine with the minimized wedge.

    Cover members are independent subproblems; with workers > 1 the top-level
    members run on a process pool.  The merge order is fixed, so results are
    identical for any worker count.
    """
    if base_threshold < 1:
        raise ValidationError("base_threshold must be >= 1")
    if workers < 1:
        raise ValidationError("workers must be >= 1")
    if family.has_empty_set():
        return empty_collection(family)
    m = family.universe_size
    masks = minimize_masks(family.masks)
    if not masks:
        return collection_from_masks(family, [0])
    if len(masks) <= base_threshold or workers == 1:
        return collection_from_masks(family, _dualize(masks, m, base_threshold))

    cover = _edge_cover(masks, m)
    subs = []
    degenerate = False
    for c in cover:
        sub = [s for s in masks if s & ~c == 0]
        if len(sub) == len(masks):
            degenerate = True
            break
        subs.append(sub)
    if degenerate:
        return collection_from_masks(family, solve_masks(masks, m))
    with ProcessPoolExecutor(
        max_workers=workers, initializer=_init_task, initargs=(m, base_threshold)
    ) as pool:
        parts = list(pool.map(_subproblem_task, subs))
    return collection_from_masks(family, _merge(parts))
