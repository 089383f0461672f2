"""Set-family core: canonical families, hitting/minimality predicates, the
vee/wedge/min algebra, and equal-membership condensing.

Element sets are dense bitmasks internally (Python ints); elements are the
indices 0..universe_size-1.  All public surfaces speak sorted integer tuples.
"""

from __future__ import annotations

import hashlib
import threading
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Sequence

from .errors import ValidationError

ElementSet = tuple[int, ...]


def mask_of(elems: Iterable[int]) -> int:
    m = 0
    for e in elems:
        m |= 1 << e
    return m


def elems_of(mask: int) -> ElementSet:
    """Decompose a bitmask into its ascending element tuple."""
    out = []
    while mask:
        lsb = mask & -mask
        out.append(lsb.bit_length() - 1)
        mask ^= lsb
    return tuple(out)


def minimize_masks(masks: Iterable[int]) -> list[int]:
    """Inclusion-minimal, deduplicated members of a mask collection.

    Sorts by cardinality ascending and subset-tests each candidate against the
    retained antichain, so earlier (smaller) survivors knock out supersets.
    """
    uniq = sorted(set(masks), key=lambda x: (x.bit_count(), x))
    kept: list[int] = []
    for c in uniq:
        for r in kept:
            if r & c == r:
                break
        else:
            kept.append(c)
    return kept


@dataclass(frozen=True)
class SetFamily:
    """A family of element sets over the universe 0..universe_size-1.

    Sets are stored canonically (sorted, duplicate-free elements); the family
    itself may contain repeated or non-minimal sets.  Immutable after
    construction and safe to share across workers.
    """

    universe_size: int
    sets: tuple[ElementSet, ...]
    masks: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.universe_size < 0:
            raise ValidationError("universe_size must be non-negative")
        masks = []
        for i, s in enumerate(self.sets):
            if any(e < 0 for e in s):
                raise ValidationError(f"set {i}: negative element index")
            if any(e >= self.universe_size for e in s):
                raise ValidationError(
                    f"set {i}: element {max(s)} outside universe of size {self.universe_size}"
                )
            if tuple(sorted(set(s))) != tuple(s):
                raise ValidationError(f"set {i}: not canonical (sorted, deduplicated)")
            masks.append(mask_of(s))
        object.__setattr__(self, "masks", tuple(masks))

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self) -> Iterator[ElementSet]:
        return iter(self.sets)

    @property
    def total_size(self) -> int:
        """Sum of set sizes (the usual input-size measure for enumerators)."""
        return sum(len(s) for s in self.sets)

    def element_mask(self) -> int:
        """Bitmask of elements that occur in at least one set."""
        m = 0
        for s in self.masks:
            m |= s
        return m

    def has_empty_set(self) -> bool:
        return any(not s for s in self.sets)

    def fingerprint(self) -> str:
        h = hashlib.blake2b(digest_size=8)
        h.update(str(self.universe_size).encode())
        for s in self.sets:
            h.update(b"|")
            h.update(",".join(map(str, s)).encode())
        return h.hexdigest()


def make_family(sets: Sequence[Iterable[int]], universe_size: int | None = None) -> SetFamily:
    """Build a SetFamily, canonicalizing each set (sorted, deduplicated).

    The universe defaults to 1 + the largest index seen (0 for empty input).
    Declaring a universe_size smaller than an element is an error.
    """
    canon: list[ElementSet] = []
    max_e = -1
    for i, s in enumerate(sets):
        t = tuple(sorted({int(e) for e in s}))
        if t and t[0] < 0:
            raise ValidationError(f"set {i}: negative element index {t[0]}")
        if t:
            max_e = max(max_e, t[-1])
        canon.append(t)
    if universe_size is None:
        m = max_e + 1
    else:
        m = int(universe_size)
        if max_e >= m:
            raise ValidationError(f"element {max_e} outside declared universe of size {m}")
    return SetFamily(m, tuple(canon))


def is_hitting(family: SetFamily, candidate: Iterable[int]) -> bool:
    """True iff the candidate intersects every set of the family.

    Vacuously true for an empty family.
    """
    elems = tuple(candidate)
    if any(e < 0 or e >= family.universe_size for e in elems):
        raise ValidationError("candidate element outside the family universe")
    c = mask_of(elems)
    return all(c & s for s in family.masks)


def minimize(sets: Sequence[Iterable[int]]) -> list[ElementSet]:
    """The inclusion-minimal, deduplicated members of a set collection.

    Idempotent and order-independent; returns canonically sorted tuples.
    """
    kept = minimize_masks(mask_of(set(s)) for s in sets)
    return sorted(elems_of(k) for k in kept)


def vee(a: SetFamily, b: SetFamily) -> SetFamily:
    """Family union over the joined universe, deduplicated."""
    m = max(a.universe_size, b.universe_size)
    seen: set[ElementSet] = set()
    out: list[ElementSet] = []
    for s in a.sets + b.sets:
        if s not in seen:
            seen.add(s)
            out.append(s)
    return SetFamily(m, tuple(out))


def wedge(a: SetFamily, b: SetFamily) -> SetFamily:
    """All pairwise set unions over the joined universe, minimized.

    Every consumer in the enumeration suite needs the minimized form, so the
    minimization is built in.
    """
    m = max(a.universe_size, b.universe_size)
    unions = {x | y for x in a.masks for y in b.masks}
    kept = minimize_masks(unions)
    return SetFamily(m, tuple(sorted(elems_of(k) for k in kept)))


@dataclass(frozen=True)
class MhsCollection:
    """An antichain of element sets produced by an enumerator.

    `source` is the fingerprint of the originating family.  `complete` is
    False when the run was truncated (cutoff, rank truncation, result cap).
    `unhittable` flags the family-contains-an-empty-set case, where no hitting
    set exists and the collection is empty by convention.
    """

    source: str
    sets: tuple[ElementSet, ...]
    complete: bool = True
    unhittable: bool = False

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self) -> Iterator[ElementSet]:
        return iter(self.sets)

    def as_set(self) -> frozenset[ElementSet]:
        return frozenset(self.sets)


def collection_from_masks(
    family: SetFamily,
    masks: Iterable[int],
    complete: bool = True,
    unhittable: bool = False,
) -> MhsCollection:
    """Canonicalize enumerator output: sorted tuples, lexicographic order."""
    sets = sorted({elems_of(x) for x in masks})
    return MhsCollection(family.fingerprint(), tuple(sets), complete, unhittable)


def empty_collection(family: SetFamily, complete: bool = True) -> MhsCollection:
    """The no-hitting-set result used when the family contains an empty set."""
    return MhsCollection(family.fingerprint(), (), complete, unhittable=True)


class MhsSink:
    """Streaming consumer of hitting sets as they are found.

    emit() may be called from several workers; emissions are serialized
    internally.
    """

    def __init__(self) -> None:
        self._lock = threading.Lock()

    def emit(self, elems: ElementSet) -> None:
        with self._lock:
            self._accept(elems)

    def _accept(self, elems: ElementSet) -> None:  # pragma: no cover - interface
        raise NotImplementedError


class CollectingSink(MhsSink):
    def __init__(self) -> None:
        super().__init__()
        self.sets: list[ElementSet] = []

    def _accept(self, elems: ElementSet) -> None:
        self.sets.append(elems)


class CountingSink(MhsSink):
    """Counts emissions without retaining them (count-only mode)."""

    def __init__(self) -> None:
        super().__init__()
        self.count = 0

    def _accept(self, elems: ElementSet) -> None:
        self.count += 1


@dataclass(frozen=True)
class ElementGroupMap:
    """Partition of the occurring elements into equal-membership classes.

    Two elements share a class iff they occur in exactly the same sets; the
    representative of a class is its least element.  Elements that occur in no
    set form no class.
    """

    source: str
    representatives: tuple[int, ...]
    groups: tuple[ElementSet, ...]

    def group_of(self, representative: int) -> ElementSet:
        try:
            i = self.representatives.index(representative)
        except ValueError:
            raise ValidationError(f"representative {representative} not in group map") from None
        return self.groups[i]


def condense(family: SetFamily) -> tuple[SetFamily, ElementGroupMap]:
    """Collapse equal-membership element classes to one representative each.

    The condensed family maps every set through element -> representative;
    expand() restores results for the original family exactly.
    """
    n = len(family.masks)
    membership: list[int] = [0] * family.universe_size
    for i, s in enumerate(family.masks):
        bit = 1 << i
        rest = s
        while rest:
            lsb = rest & -rest
            membership[lsb.bit_length() - 1] |= bit
            rest ^= lsb
    classes: dict[int, list[int]] = {}
    for e in range(family.universe_size):
        if membership[e]:
            classes.setdefault(membership[e], []).append(e)
    groups = sorted(tuple(v) for v in classes.values())
    reps = tuple(g[0] for g in groups)
    rep_of = {e: g[0] for g in groups for e in g}
    cond_sets = tuple(tuple(sorted({rep_of[e] for e in s})) for s in family.sets)
    condensed = SetFamily(family.universe_size, cond_sets)
    gmap = ElementGroupMap(family.fingerprint(), reps, tuple(groups))
    return condensed, gmap


def expand(condensed_mhses: MhsCollection, gmap: ElementGroupMap) -> MhsCollection:
    """Expand condensed results into hitting sets of the original family.

    Each member of size p with group sizes g1..gp expands to prod(gi) sets,
    one choice per group.  The output is an antichain for the original family.
    """
    rep_to_group = dict(zip(gmap.representatives, gmap.groups))
    out: set[ElementSet] = set()
    for s in condensed_mhses.sets:
        try:
            choices = [rep_to_group[r] for r in s]
        except KeyError as exc:
            raise ValidationError(f"representative {exc.args[0]} not in group map") from None
        for combo in product(*choices):
            out.add(tuple(sorted(combo)))
    return MhsCollection(
        gmap.source,
        tuple(sorted(out)),
        complete=condensed_mhses.complete,
        unhittable=condensed_mhses.unhittable,
    )
