"""File formats for families and result collections.

Two interchangeable formats:

* json -- an object with key "sets" (array of arrays of non-negative
  integers) and an optional "universe_size"; collections are written with
  keys "sets" and "complete".
* dat  -- one set per line, whitespace-separated indices, blank lines
  ignored.

Collection output is canonical (elements ascending, lines sorted
lexicographically) so results are diffable byte for byte.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import ParseError, ValidationError
from .family import MhsCollection, SetFamily, make_family

FORMATS = ("json", "dat")


def detect_format(path: str | Path, explicit: str | None = None) -> str:
    if explicit is not None:
        if explicit not in FORMATS:
            raise ValidationError(f"unknown format {explicit!r}; expected json or dat")
        return explicit
    return "dat" if Path(path).suffix in (".dat", ".txt") else "json"


def _family_from_json_text(text: str, origin: str) -> SetFamily:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{origin}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict) or "sets" not in doc:
        raise ParseError(f"{origin}: expected an object with a 'sets' key")
    sets = doc["sets"]
    if not isinstance(sets, list):
        raise ParseError(f"{origin}: 'sets' must be an array of arrays")
    for i, s in enumerate(sets):
        if not isinstance(s, list):
            raise ParseError(f"{origin}: set {i} is not an array")
        for j, e in enumerate(s):
            if not isinstance(e, int) or isinstance(e, bool):
                raise ParseError(f"{origin}: set {i} entry {j} is not an integer")
            if e < 0:
                raise ParseError(f"{origin}: set {i} entry {j}: negative index {e}")
    universe = doc.get("universe_size")
    if universe is not None and (not isinstance(universe, int) or universe < 0):
        raise ParseError(f"{origin}: 'universe_size' must be a non-negative integer")
    try:
        return make_family(sets, universe_size=universe)
    except ValidationError as exc:
        raise ParseError(f"{origin}: {exc}") from None


def _family_from_dat_text(text: str, origin: str) -> SetFamily:
    sets = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        row = []
        for col, tok in enumerate(line.split(), start=1):
            try:
                e = int(tok)
            except ValueError:
                raise ParseError(
                    f"{origin}:{lineno}: token {col} ({tok!r}) is not an integer"
                ) from None
            if e < 0:
                raise ParseError(f"{origin}:{lineno}: token {col}: negative index {e}")
            row.append(e)
        sets.append(row)
    return make_family(sets)


def read_family(path: str | Path, format: str | None = None) -> SetFamily:
    """Load a family from a json or dat file (format inferred from the suffix
    when not given)."""
    fmt = detect_format(path, format)
    text = Path(path).read_text()
    if fmt == "json":
        return _family_from_json_text(text, str(path))
    return _family_from_dat_text(text, str(path))


def family_to_text(family: SetFamily, format: str = "json") -> str:
    if format == "json":
        doc = {"sets": [list(s) for s in family.sets], "universe_size": family.universe_size}
        return json.dumps(doc) + "\n"
    return "".join(" ".join(map(str, s)) + "\n" for s in family.sets)


def collection_to_text(collection: MhsCollection, format: str = "json") -> str:
    sets = sorted(collection.sets)
    if format == "json":
        doc = {"sets": [list(s) for s in sets], "complete": collection.complete}
        return json.dumps(doc) + "\n"
    return "".join(" ".join(map(str, s)) + "\n" for s in sets)


def write_collection(path: str | Path, format: str, collection: MhsCollection) -> None:
    """Write a collection canonically; see module docstring for the formats."""
    if format not in FORMATS:
        raise ValidationError(f"unknown format {format!r}; expected json or dat")
    Path(path).write_text(collection_to_text(collection, format))


def read_collection_as_family(path: str | Path, format: str | None = None) -> SetFamily:
    """Read a written collection back as a plain family (the member sets).

    json collections carry a "sets" key just like families, so both formats
    round-trip through the family reader.
    """
    return read_family(path, format)
