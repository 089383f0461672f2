"""Synthetic instance generators for tests and benchmarks.

Generation is deterministic given the seed, so benchmark runs are
reproducible.
"""

from __future__ import annotations

import random

from .errors import ValidationError
from .family import SetFamily, make_family


def matching_graph(n: int) -> SetFamily:
    """n disjoint 2-element sets {0,1},{2,3},... over 2n elements.

    The canonical witness that output size can be exponential: there are
    exactly 2^n minimal hitting sets, one element chosen per pair.
    """
    if n < 0:
        raise ValidationError("pair count must be non-negative")
    return make_family([(2 * i, 2 * i + 1) for i in range(n)], universe_size=2 * n)


def random_family(
    m: int,
    n: int,
    size_range: tuple[int, int],
    seed: int,
) -> SetFamily:
    """n sets of uniform random size in size_range, elements drawn without
    replacement from a universe of m elements."""
    lo, hi = size_range
    if not (1 <= lo <= hi <= m):
        raise ValidationError(
            f"infeasible size range {lo}..{hi} for universe of size {m}"
        )
    rng = random.Random(seed)
    sets = []
    for _ in range(n):
        k = rng.randint(lo, hi)
        sets.append(sorted(rng.sample(range(m), k)))
    return make_family(sets, universe_size=m)
