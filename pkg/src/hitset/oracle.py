"""Brute-force reference enumerator and duality checker.

Enumerates all subsets of the universe in cardinality order, so it is exact
(including under a cardinality cutoff) but only usable for small universes.
Every algorithm in the suite is validated against this oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import OracleLimitError
from .family import (
    ElementSet,
    MhsCollection,
    SetFamily,
    collection_from_masks,
    empty_collection,
    minimize,
)

DEFAULT_ORACLE_LIMIT = 20


@dataclass(frozen=True)
class DualityVerdict:
    """Outcome of a transversal-recognition check.

    When the two inputs disagree, `witness` is a set demonstrating it and
    `kind` says how: a non-hitting member, a non-minimal member, or a missing
    minimal hitting set.
    """

    equal: bool
    witness: ElementSet | None = None
    kind: str | None = None


def _check_limit(family: SetFamily, limit: int) -> None:
    if family.universe_size > limit:
        raise OracleLimitError(
            f"universe size {family.universe_size} exceeds oracle limit {limit}"
        )


def brute_force_mhs(
    family: SetFamily,
    cutoff: int | None = None,
    limit: int = DEFAULT_ORACLE_LIMIT,
) -> MhsCollection:
    """All minimal hitting sets of the family, by exhaustive subset sweep.

    With a cutoff c the result is exactly the full answer filtered to
    cardinality <= c.  Refuses universes larger than `limit`.
    """
    _check_limit(family, limit)
    if family.has_empty_set():
        return empty_collection(family, complete=cutoff is None)
    m = family.universe_size
    masks = family.masks
    bits = [1 << e for e in range(m)]
    max_k = m if cutoff is None else min(cutoff, m)
    retained: list[int] = []
    for k in range(max_k + 1):
        for combo in combinations(range(m), k):
            c = 0
            for e in combo:
                c |= bits[e]
            # retained members are strictly smaller, so subset-hit means non-minimal
            if any(r & c == r for r in retained):
                continue
            if all(c & s for s in masks):
                retained.append(c)
    return collection_from_masks(family, retained, complete=cutoff is None)


def check_duality(
    h: SetFamily,
    g: SetFamily,
    limit: int = DEFAULT_ORACLE_LIMIT,
) -> DualityVerdict:
    """Decide whether min(g) is exactly the minimal-hitting-set family of h."""
    _check_limit(h, limit)
    _check_limit(g, limit)
    truth = set(brute_force_mhs(h, limit=limit).sets)
    gmin = set(minimize(g.sets))
    if gmin == truth:
        return DualityVerdict(True)
    extras = sorted(gmin - truth)
    if extras:
        w = extras[0]
        hitting = all(set(w) & set(s) for s in h.sets)
        kind = "non-minimal" if hitting else "non-hitting"
        return DualityVerdict(False, w, kind)
    missing = sorted(truth - gmin)
    return DualityVerdict(False, missing[0], "missing")
