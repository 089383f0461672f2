import random

import pytest

from hitset import make_family
from hitset.generators import random_family


def sets_of(result):
    """Normalize any result (collection or outcome) to a frozenset of tuples."""
    coll = getattr(result, "collection", result)
    return frozenset(coll.sets)


def seeded_family(seed, max_m=12, max_n=10):
    """A small random family; seeds are stable across the suite."""
    rng = random.Random(seed)
    m = rng.randint(1, max_m)
    n = rng.randint(0, max_n)
    if n == 0:
        return make_family([], universe_size=m)
    return random_family(m, n, (1, m), seed=seed * 7919 + 13)


@pytest.fixture
def worked_example():
    """The CNF clause family {{2,3},{1,3}} whose answer is {{3},{1,2}}."""
    return make_family([[2, 3], [1, 3]])
