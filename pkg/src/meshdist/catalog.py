"""Numbered length-2 mesh patterns (numbering of Hilmarsson et al.).

Each shading is the representative drawn for that number; boxes are written
``"ij"`` for box ``(i, j)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .patterns import InvalidInput, MeshPattern

PROVED = "proved-distribution"
CONJECTURED = "conjectured"
EQUIDISTRIBUTION_ONLY = "equidistribution-only"


@dataclass(frozen=True)
class CatalogEntry:
    nr: int
    pattern: MeshPattern
    status: str


_SHADINGS = {
    # patterns with a known (or conjectured) distribution
    1: "",
    3: "00 01 12",
    5: "00 01 02",
    8: "00 01 10 11",
    9: "01 11 12 21",
    10: "00 01 02 20 21 22",
    11: "00 01 02 10 11 12 20 21 22",
    12: "00 01 02 10 20",
    13: "00 01 02 10 12 20 21 22",
    14: "01 10 11 12 21",
    15: "01 02 10 11 12",
    16: "01 02 10 20",
    17: "00 01 02 10 12 20 21",
    18: "00 01 02 12 20 22",
    19: "01 02 11 12 20 22",
    20: "00 01 02 11 12 20 21",
    21: "00 01 12 20 22",
    22: "00 01 11 12 20 22",
    27: "01 02 10 11 20 22",
    28: "00 01 10 12 21 22",
    30: "01 02 10 11 12 20 21",
    33: "01 02 10 12 20 21",
    34: "00 01 10 11 12 21 22",
    36: "00 01 10 11 12 21",
    45: "01 02 10 11 12 21",
    55: "00 01 11 12 20 21",
    56: "00 01 11 12 21 22",
    63: "00 01 12 20 21",
    64: "01 02 11 12 20",
    65: "00 01 10 11 22",
    # equidistributions with unknown enumeration
    23: "00 02 10 11 12",
    24: "00 01 10 11 12",
    48: "00 01 12 21 22",
    49: "00 01 11 12 20",
    50: "00 01 11 12 22",
    53: "00 01 12 21",
    54: "00 01 11 22",
    57: "01 11 12 20",
    58: "01 10 11 22",
    61: "00 01 12 20",
    62: "00 01 10 22",
}

_TABLE_2 = {23, 24, 48, 49, 50, 53, 54, 57, 58, 61, 62}


def _status(nr: int) -> str:
    if nr == 3:
        return CONJECTURED
    if nr in _TABLE_2:
        return EQUIDISTRIBUTION_ONLY
    return PROVED


def _entry(nr: int) -> CatalogEntry:
    boxes = frozenset((int(s[0]), int(s[1])) for s in _SHADINGS[nr].split())
    return CatalogEntry(nr, MeshPattern((1, 2), boxes), _status(nr))


_CATALOG = {nr: _entry(nr) for nr in sorted(_SHADINGS)}


def catalog() -> list[CatalogEntry]:
    return list(_CATALOG.values())


def lookup(nr: int) -> MeshPattern:
    try:
        return _CATALOG[nr].pattern
    except KeyError:
        raise InvalidInput(f"pattern Nr. {nr} is not catalogued") from None


def entry(nr: int) -> CatalogEntry:
    lookup(nr)
    return _CATALOG[nr]
