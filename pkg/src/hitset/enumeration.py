"""Uniform front end over the nine enumerators.

Each algorithm keeps its native signature in its own module; this wraps them
behind one request/outcome surface for the CLI and the benchmark harness.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .errors import UnknownAlgorithmError
from .family import MhsCollection, SetFamily

ALGORITHM_NAMES = (
    "berge",
    "hst",
    "hsdag",
    "bool",
    "staccato",
    "mtminer",
    "mmcs",
    "rs",
    "fullcover",
)

STATUS_OK = "ok"
STATUS_TIMEOUT = "timeout"
STATUS_MEMORY = "memory-exhausted"
STATUS_ERROR = "error"


@dataclass(frozen=True)
class EnumerationRequest:
    algorithm: str
    cutoff: int | None = None
    workers: int = 1
    count_only: bool = False


@dataclass
class EnumerationOutcome:
    """Result of one enumeration run: the collection (or just its count in
    count-only mode), wall time, and a termination status."""

    collection: MhsCollection | None
    count: int
    status: str = STATUS_OK
    elapsed_seconds: float = 0.0


def enumerate_mhs(
    family: SetFamily,
    algorithm: str,
    cutoff: int | None = None,
    workers: int = 1,
    count_only: bool = False,
) -> EnumerationOutcome:
    """Run one named algorithm on a family.

    Only mmcs and rs use `workers` and stream in count-only mode; the other
    algorithms are single-threaded and count after the fact.
    """
    if algorithm not in ALGORITHM_NAMES:
        raise UnknownAlgorithmError(
            f"unknown algorithm {algorithm!r}; valid names: {', '.join(ALGORITHM_NAMES)}"
        )
    from . import buildup, divide, fullcover, iterative

    if algorithm in ("mmcs", "rs"):
        fn = buildup.mmcs if algorithm == "mmcs" else buildup.rs
        return fn(family, cutoff=cutoff, workers=workers, count_only=count_only)

    start = time.perf_counter()
    if algorithm == "berge":
        coll = iterative.berge(family, cutoff=cutoff)
    elif algorithm == "hst":
        coll = iterative.hst(family, cutoff=cutoff)
    elif algorithm == "hsdag":
        coll = iterative.hsdag(family, cutoff=cutoff)
    elif algorithm == "bool":
        coll = divide.bool_algorithm(family, cutoff=cutoff)
    elif algorithm == "staccato":
        coll = divide.staccato(family, cutoff=cutoff)
    elif algorithm == "mtminer":
        coll = buildup.mtminer(family, cutoff=cutoff)
    else:
        coll = fullcover.full_cover_dualize(family, workers=workers)
        if cutoff is not None:
            # the full-cover dualizer has no native cutoff; filter afterwards
            sets = tuple(s for s in coll.sets if len(s) <= cutoff)
            coll = MhsCollection(coll.source, sets, complete=False,
                                 unhittable=coll.unhittable)
    elapsed = time.perf_counter() - start
    count = len(coll)
    return EnumerationOutcome(
        collection=None if count_only else coll,
        count=count,
        status=STATUS_OK,
        elapsed_seconds=elapsed,
    )


def run_request(family: SetFamily, request: EnumerationRequest) -> EnumerationOutcome:
    return enumerate_mhs(
        family,
        request.algorithm,
        cutoff=request.cutoff,
        workers=request.workers,
        count_only=request.count_only,
    )
