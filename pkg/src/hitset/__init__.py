"""Minimal hitting set enumeration toolkit.

A shared set-family core, nine enumeration algorithms, a brute-force
verification oracle, synthetic instance generators, and a benchmark harness
with a CLI front end.
"""

from .enumeration import (
    ALGORITHM_NAMES,
    EnumerationOutcome,
    EnumerationRequest,
    enumerate_mhs,
)
from .family import (
    ElementGroupMap,
    MhsCollection,
    SetFamily,
    condense,
    expand,
    is_hitting,
    make_family,
    minimize,
    vee,
    wedge,
)
from .generators import matching_graph, random_family
from .oracle import DualityVerdict, brute_force_mhs, check_duality

__all__ = [
    "ALGORITHM_NAMES",
    "DualityVerdict",
    "ElementGroupMap",
    "EnumerationOutcome",
    "EnumerationRequest",
    "MhsCollection",
    "SetFamily",
    "brute_force_mhs",
    "check_duality",
    "condense",
    "enumerate_mhs",
    "expand",
    "is_hitting",
    "make_family",
    "matching_graph",
    "minimize",
    "random_family",
    "vee",
    "wedge",
]

__version__ = "0.1.0"
