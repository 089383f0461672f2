"""Bottom-up enumerators.

mtminer grows candidate sets level by level, apriori style.  mmcs and rs run
a depth-first search over partial sets satisfying the minimality condition
(every element is the sole hitter of at least one set); mmcs maintains
per-element critical-set masks incrementally, rs re-verifies the condition on
each extension.  Both support cardinality cutoffs, count-only streaming, and
process-based parallel enumeration of recursion subtrees.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from .enumeration import EnumerationOutcome
from .errors import ValidationError
from .family import (
    ElementSet,
    MhsSink,
    SetFamily,
    collection_from_masks,
    elems_of,
    empty_collection,
)

DEFAULT_SPAWN_DEPTH = 4


def mtminer(family: SetFamily, cutoff: int | None = None) -> MhsCollection:
    """Level-wise candidate growth from singletons.

    Level-i candidates are non-hitting sets whose every element is critical;
    two candidates sharing all but their last element merge into a size-(i+1)
    candidate if each of its i-subsets is a live candidate that hits strictly
    fewer sets.  Hitting sets are emitted as they appear (guaranteed minimal);
    with a cutoff, levels past the bound are never generated.
    """
    if family.has_empty_set():
        return empty_collection(family, complete=cutoff is None)
    n = len(family.masks)
    if n == 0:
        return collection_from_masks(family, [0])
    if cutoff is not None and cutoff < 1:
        return collection_from_masks(family, [], complete=False)
    all_sets = (1 << n) - 1
    elem_hits: dict[int, int] = {}
    for i, s in enumerate(family.masks):
        bit = 1 << i
        rest = s
        while rest:
            lsb = rest & -rest
            rest ^= lsb
            elem_hits[lsb] = elem_hits.get(lsb, 0) | bit
    out: list[int] = []
    live: dict[int, int] = {}
    for ebit in sorted(elem_hits):
        hm = elem_hits[ebit]
        if hm == all_sets:
            out.append(ebit)
        else:
            live[ebit] = hm
    level = 1
    while live and (cutoff is None or level + 1 <= cutoff):
        groups: dict[int, list[tuple[int, int, int]]] = {}
        for mask, hm in live.items():
            last = 1 << (mask.bit_length() - 1)
            groups.setdefault(mask ^ last, []).append((mask, last, hm))
        nxt: dict[int, int] = {}
        for members in groups.values():
            members.sort(key=lambda t: t[1])
            for i in range(len(members)):
                mask_a, last_a, hm_a = members[i]
                for j in range(i + 1, len(members)):
                    mask_b, last_b, hm_b = members[j]
                    cm = mask_a | mask_b
                    chm = hm_a | hm_b
                    ok = True
                    rest = cm
                    while rest:
                        lsb = rest & -rest
                        rest ^= lsb
                        sub_hm = live.get(cm ^ lsb)
                        if sub_hm is None or sub_hm == chm:
                            ok = False
                            break
                    if ok:
                        if chm == all_sets:
                            out.append(cm)
                        else:
                            nxt[cm] = chm
        live = nxt
        level += 1
    return collection_from_masks(family, out, complete=cutoff is None)


def _prepare(family: SetFamily) -> tuple[list[int], list[int], int, int]:
    """Set masks, per-element set-index masks, initial uncovered and candidate
    masks."""
    masks = list(family.masks)
    elem_sets = [0] * family.universe_size
    for i, s in enumerate(masks):
        bit = 1 << i
        rest = s
        while rest:
            lsb = rest & -rest
            rest ^= lsb
            elem_sets[lsb.bit_length() - 1] |= bit
    uncov = (1 << len(masks)) - 1
    cand = 0
    for s in masks:
        cand |= s
    return masks, elem_sets, uncov, cand

# Search state passed between frontier producer and subtree workers:
# (uncov set-index mask, candidate element mask, chosen elements, critical
# set-index mask per chosen element).
MmcsState = tuple[int, int, tuple[int, ...], tuple[int, ...]]


def _mmcs_run(
    masks: Sequence[int],
    elem_sets: Sequence[int],
    state: MmcsState,
    cutoff: int | None,
    out: list[ElementSet] | None,
    check_invariants: bool = False,
) -> int:
    """Enumerate the subtree rooted at `state`; returns the number of minimal
    hitting sets found (appended to `out` unless counting only).

    The per-step work is one pass over the uncovered sets plus an O(|current|)
    critical-mask update, i.e. linear in the family size.
    """
    bit_count = int.bit_count

    def rec(uncov: int, cand: int, cur: tuple[int, ...], crit: list[int]) -> int:
        if check_invariants:
            assert all(c for c in crit), "minimality condition violated"
            for v in cur:
                assert uncov & elem_sets[v] == 0, "uncovered set already hit"
        if uncov == 0:
            if out is not None:
                out.append(tuple(sorted(cur)))
            return 1
        if cutoff is not None and len(cur) >= cutoff:
            return 0
        # branch on the uncovered set with the fewest eligible elements
        best_cd = -1
        best_n = -1
        u = uncov
        while u:
            lsb = u & -u
            u ^= lsb
            cd = masks[lsb.bit_length() - 1] & cand
            k = bit_count(cd)
            if k == 0:
                return 0
            if best_n < 0 or k < best_n:
                best_n = k
                best_cd = cd
                if k == 1:
                    break
        cd = best_cd
        cand &= ~cd
        total = 0
        while cd:
            vb = cd & -cd
            cd ^= vb
            hit = elem_sets[vb.bit_length() - 1]
            ncrit = []
            ok = True
            for cm in crit:
                cm2 = cm & ~hit
                if cm2 == 0:
                    ok = False
                    break
                ncrit.append(cm2)
            if ok:
                ncrit.append(uncov & hit)
                total += rec(uncov & ~hit, cand, cur + (vb.bit_length() - 1,), ncrit)
            cand |= vb
        return total

    uncov, cand, cur, crit = state
    return rec(uncov, cand, cur, list(crit))


def _rs_run(
    masks: Sequence[int],
    elem_sets: Sequence[int],
    state: MmcsState,
    cutoff: int | None,
    out: list[ElementSet] | None,
) -> int:
    """RS subtree enumeration: branch on the minimum-index uncovered set and
    re-verify the minimality condition from scratch on each extension."""
    def minimal_ok(members: int) -> bool:
        need = members
        got = 0
        for s in masks:
            x = s & members
            if x and not (x & (x - 1)):
                got |= x
                if got == need:
                    return True
        return got == need

    def rec(uncov: int, cand: int, cur_mask: int, size: int) -> int:
        if uncov == 0:
            if out is not None:
                out.append(elems_of(cur_mask))
            return 1
        if cutoff is not None and size >= cutoff:
            return 0
        lsb = uncov & -uncov
        cd = masks[lsb.bit_length() - 1] & cand
        if cd == 0:
            return 0
        cand &= ~cd
        total = 0
        while cd:
            vb = cd & -cd
            cd ^= vb
            nm = cur_mask | vb
            if minimal_ok(nm):
                total += rec(uncov & ~elem_sets[vb.bit_length() - 1], cand, nm, size + 1)
            cand |= vb
        return total

    uncov, cand, cur, _ = state
    cur_mask = 0
    for v in cur:
        cur_mask |= 1 << v
    return rec(uncov, cand, cur_mask, len(cur))


def _frontier(
    masks: Sequence[int],
    elem_sets: Sequence[int],
    cutoff: int | None,
    spawn_depth: int,
) -> list[tuple[str, object]]:
    """Walk the mmcs recursion to `spawn_depth`, recording emissions found on
    the way and the pending subtree states, in depth-first order."""
    events: list[tuple[str, object]] = []

    def rec(uncov: int, cand: int, cur: tuple[int, ...], crit: list[int], depth: int) -> None:
        if uncov == 0:
            events.append(("mhs", tuple(sorted(cur))))
            return
        if cutoff is not None and len(cur) >= cutoff:
            return
        if depth >= spawn_depth:
            events.append(("task", (uncov, cand, cur, tuple(crit))))
            return
        best_cd = -1
        best_n = -1
        u = uncov
        while u:
            lsb = u & -u
            u ^= lsb
            cd = masks[lsb.bit_length() - 1] & cand
            k = cd.bit_count()
            if k == 0:
                return
            if best_n < 0 or k < best_n:
                best_n = k
                best_cd = cd
                if k == 1:
                    break
        cd = best_cd
        cand &= ~cd
        while cd:
            vb = cd & -cd
            cd ^= vb
            hit = elem_sets[vb.bit_length() - 1]
            ncrit = []
            ok = True
            for cm in crit:
                cm2 = cm & ~hit
                if cm2 == 0:
                    ok = False
                    break
                ncrit.append(cm2)
            if ok:
                ncrit.append(uncov & hit)
                rec(uncov & ~hit, cand, cur + (vb.bit_length() - 1,), ncrit, depth + 1)
            cand |= vb

    rec((1 << len(masks)) - 1, _or_all(masks), (), [], 0)
    return events


def _or_all(masks: Sequence[int]) -> int:
    acc = 0
    for s in masks:
        acc |= s
    return acc


_WORKER_CTX: tuple[list[int], list[int], int | None, bool, str] | None = None


def _init_worker(masks: list[int], elem_sets: list[int], cutoff: int | None,
                 count_only: bool, engine: str) -> None:
    global _WORKER_CTX
    _WORKER_CTX = (masks, elem_sets, cutoff, count_only, engine)


def _run_task(state: MmcsState) -> tuple[int, list[ElementSet] | None]:
    masks, elem_sets, cutoff, count_only, engine = _WORKER_CTX
    out: list[ElementSet] | None = None if count_only else []
    run = _mmcs_run if engine == "mmcs" else _rs_run
    n = run(masks, elem_sets, state, cutoff, out)
    return n, out


class _SinkAppender:
    """Adapts the enumeration cores' list-append protocol to a sink."""

    __slots__ = ("append",)

    def __init__(self, sink: MhsSink) -> None:
        self.append = sink.emit


def _enumerate(
    family: SetFamily,
    engine: str,
    cutoff: int | None,
    workers: int,
    count_only: bool,
    spawn_depth: int,
    check_invariants: bool = False,
    sink: MhsSink | None = None,
) -> EnumerationOutcome:
    if workers < 1:
        raise ValidationError("workers must be >= 1")
    start = time.perf_counter()
    if family.has_empty_set():
        coll = empty_collection(family, complete=cutoff is None)
        return EnumerationOutcome(
            None if count_only or sink else coll, 0,
            elapsed_seconds=time.perf_counter() - start,
        )
    masks, elem_sets, uncov, cand = _prepare(family)
    root: MmcsState = (uncov, cand, (), ())

    if workers == 1:
        out: list[ElementSet] | _SinkAppender | None
        if count_only:
            out = None
        elif sink is not None:
            out = _SinkAppender(sink)
        else:
            out = []
        if engine == "mmcs":
            count = _mmcs_run(masks, elem_sets, root, cutoff, out, check_invariants)
        else:
            count = _rs_run(masks, elem_sets, root, cutoff, out)
        coll = None
        if not count_only and sink is None:
            coll = collection_from_masks(
                family, (_mask_of_sorted(t) for t in out), complete=cutoff is None
            )
        return EnumerationOutcome(coll, count, elapsed_seconds=time.perf_counter() - start)

    events = _frontier(masks, elem_sets, cutoff, spawn_depth)
    tasks = [payload for kind, payload in events if kind == "task"]
    if len(tasks) < 2:
        return _enumerate(family, engine, cutoff, 1, count_only, spawn_depth,
                          check_invariants, sink)
    with ProcessPoolExecutor(
        max_workers=workers,
        initializer=_init_worker,
        initargs=(masks, elem_sets, cutoff, count_only, engine),
    ) as pool:
        results = list(pool.map(_run_task, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    count = 0
    sets: list[ElementSet] = []
    emit = sink.emit if sink is not None else (None if count_only else sets.append)
    it = iter(results)
    for kind, payload in events:
        if kind == "mhs":
            count += 1
            if emit is not None:
                emit(payload)  # type: ignore[arg-type]
        else:
            c, found = next(it)
            count += c
            if emit is not None and found:
                for t in found:
                    emit(t)
    coll = None
    if not count_only and sink is None:
        coll = collection_from_masks(
            family, (_mask_of_sorted(t) for t in sets), complete=cutoff is None
        )
    return EnumerationOutcome(coll, count, elapsed_seconds=time.perf_counter() - start)


def _mask_of_sorted(elems: ElementSet) -> int:
    m = 0
    for e in elems:
        m |= 1 << e
    return m


def mmcs(
    family: SetFamily,
    cutoff: int | None = None,
    workers: int = 1,
    count_only: bool = False,
    spawn_depth: int = DEFAULT_SPAWN_DEPTH,
    check_invariants: bool = False,
    sink: MhsSink | None = None,
) -> EnumerationOutcome:
    """Depth-first minimality-condition search with incremental critical-set
    maintenance.

    With workers > 1, subtrees at `spawn_depth` become tasks on a process
    pool; the merged result is identical to the single-worker run.  A `sink`
    receives each hitting set as it is found instead of building a collection
    (count-only mode is the degenerate sink that retains nothing).
    check_invariants asserts the minimality condition at every node (debug).
    """
    return _enumerate(family, "mmcs", cutoff, workers, count_only, spawn_depth,
                      check_invariants, sink)


def rs(
    family: SetFamily,
    cutoff: int | None = None,
    workers: int = 1,
    count_only: bool = False,
    spawn_depth: int = DEFAULT_SPAWN_DEPTH,
    sink: MhsSink | None = None,
) -> EnumerationOutcome:
    """Like mmcs but branches on the minimum-index uncovered set and
    re-verifies the minimality condition on each extension."""
    return _enumerate(family, "rs", cutoff, workers, count_only, spawn_depth,
                      sink=sink)


def solve_masks(masks: Sequence[int], universe_size: int) -> list[int]:
    """Sequential mmcs core over raw masks; returns result masks.

    Internal entry point for algorithms that decompose into subproblems.
    """
    elem_sets = [0] * universe_size
    for i, s in enumerate(masks):
        bit = 1 << i
        rest = s
        while rest:
            lsb = rest & -rest
            rest ^= lsb
            elem_sets[lsb.bit_length() - 1] |= bit
    if any(s == 0 for s in masks):
        return []
    out: list[ElementSet] = []
    _mmcs_run(list(masks), elem_sets, ((1 << len(masks)) - 1, _or_all(masks), (), ()), None, out)
    return [_mask_of_sorted(t) for t in out]
