"""Set-iteration enumerators: Berge's sequential algorithm and the
Reiter-style tree/DAG searches (HST, HS-DAG)."""

from __future__ import annotations

from collections import deque
from typing import Iterator, Sequence

from .errors import ValidationError
from .family import (
    MhsCollection,
    SetFamily,
    collection_from_masks,
    empty_collection,
    minimize_masks,
)


def _berge_stages(masks: Sequence[int], cutoff: int | None) -> Iterator[list[int]]:
    """Yield the working transversal collection after each processed set.

    The stage-i collection is exactly the answer for the length-i prefix
    family (filtered by the cutoff), which is what makes the cutoff variant
    exact: candidates only ever grow, so discarding over-large ones at the
    build and minimize steps loses nothing below the bound.
    """
    current = [0]
    for s in masks:
        if not current:
            yield current
            continue
        cand: set[int] = set()
        ebits = []
        rest = s
        while rest:
            lsb = rest & -rest
            ebits.append(lsb)
            rest ^= lsb
        for t in current:
            if t & s:
                cand.add(t)
            else:
                for b in ebits:
                    u = t | b
                    if cutoff is None or u.bit_count() <= cutoff:
                        cand.add(u)
        current = minimize_masks(cand)
        yield current


def berge(family: SetFamily, cutoff: int | None = None, order: str = "input") -> MhsCollection:
    """Process sets one at a time, extending and re-minimizing the working
    transversal collection.

    `order` selects the processing order: "input" (default) or "size"
    (ascending set size, which often keeps the intermediate collection small).
    """
    if order not in ("input", "size"):
        raise ValidationError(f"unknown set order {order!r}")
    masks = list(family.masks)
    if order == "size":
        masks.sort(key=lambda x: x.bit_count())
    result: list[int] = [0]
    for stage in _berge_stages(masks, cutoff):
        result = stage
    return collection_from_masks(
        family, result, complete=cutoff is None, unhittable=family.has_empty_set()
    )


def _first_unhit(masks: Sequence[int], path: int) -> int | None:
    for s in masks:
        if not s & path:
            return s
    return None


def _all_critical(masks: Sequence[int], path: int) -> bool:
    # path is a minimal hitting set iff each of its elements is the sole
    # hitter of at least one set
    rest = path
    while rest:
        lsb = rest & -rest
        rest ^= lsb
        for s in masks:
            if s & path == lsb:
                break
        else:
            return False
    return True


def hst(family: SetFamily, cutoff: int | None = None) -> MhsCollection:
    """Depth-first hitting-set tree search.

    Nodes are labelled with the first set in input order not hit by the path;
    children branch on that set's elements.  Duplicate paths are avoided by
    banning each element from the subtrees of its earlier siblings, and a
    candidate is emitted only if every element is critical, so the output is
    an antichain no matter the expansion order.  The cutoff bounds the depth.
    """
    if family.has_empty_set():
        return empty_collection(family, complete=cutoff is None)
    masks = family.masks
    bound = cutoff if cutoff is not None else family.universe_size
    out: list[int] = []

    def rec(path: int, depth: int, banned: int) -> None:
        s = _first_unhit(masks, path)
        if s is None:
            if _all_critical(masks, path):
                out.append(path)
            return
        if depth >= bound:
            return
        avail = s & ~banned
        bits = []
        while avail:
            lsb = avail & -avail
            bits.append(lsb)
            avail ^= lsb
        suffix = [0] * (len(bits) + 1)
        for i in range(len(bits) - 1, -1, -1):
            suffix[i] = suffix[i + 1] | bits[i]
        for i, b in enumerate(bits):
            # each branch bans its later siblings throughout its subtree,
            # so every hitting set is reached along exactly one path
            rec(path | b, depth + 1, banned | suffix[i + 1])

    rec(0, 0, 0)
    return collection_from_masks(family, out, complete=cutoff is None)


def hsdag(family: SetFamily, cutoff: int | None = None) -> MhsCollection:
    """Breadth-first DAG search with node reuse and closing.

    Nodes are keyed by their path set, so identical paths are expanded once
    (the DAG repair of the original tree's completeness defect).  A node whose
    path contains an already-emitted hitting set is closed.  Breadth-first
    order guarantees any proper hitting subset was emitted earlier, so the
    emitted collection is exactly the minimal antichain.
    """
    if family.has_empty_set():
        return empty_collection(family, complete=cutoff is None)
    masks = family.masks
    bound = cutoff if cutoff is not None else family.universe_size
    emitted: list[int] = []
    seen = {0}
    queue: deque[int] = deque([0])
    while queue:
        path = queue.popleft()
        if any(e & path == e for e in emitted):
            continue
        s = _first_unhit(masks, path)
        if s is None:
            emitted.append(path)
            continue
        if path.bit_count() >= bound:
            continue
        rest = s
        while rest:
            lsb = rest & -rest
            rest ^= lsb
            child = path | lsb
            if child not in seen:
                seen.add(child)
                queue.append(child)
    return collection_from_masks(family, emitted, complete=cutoff is None)
