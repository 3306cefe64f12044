"""Bijections between permutations containing Nr. 48 and Nr. 49.

Every letter takes part in at most one occurrence of either pattern, so a
permutation with ``k`` occurrences splits into the occurrences, a block
``A`` and, for each occurrence, three blocks ``X1, X2, X3``.

For Nr. 48 the occurrences ``x_i y_i`` run left to right and downwards. For
occurrence ``i`` (``y_{k+1} = 0``, ``x_{k+1}`` at position ``n+1``):

* ``X1``: between ``x_i`` and ``y_i``, values in ``(y_{i+1}, x_i)``
* ``X3``: between ``x_i`` and ``y_i``, values in ``(x_i, y_i)``
* ``X2``: between ``y_i`` and ``x_{i+1}``, values in ``(y_{i+1}, x_i)``
* ``A``: left of ``x_1`` (every such letter is above ``y_1``)

For Nr. 49 the occurrences are nested, numbered from the innermost
(lowest) outwards. For occurrence ``i`` (``x_{k+1}`` at position 0 with
value ``n+1``, ``y_{k+1}`` at position ``n+1``):

* ``X1``: between ``y_i`` and ``y_{i+1}``, values in ``(y_i, x_{i+1})``
* ``X3``: between ``y_i`` and ``y_{i+1}``, values in ``(x_i, y_i)``
* ``X2``: between ``x_{i+1}`` and ``x_i``, values in ``(y_i, x_{i+1})``
* ``A``: between ``x_1`` and ``y_1`` (every such letter is below ``x_1``)

Equivalently, a Nr. 48 permutation is a skew sum ``A, gamma_1, ..., gamma_k``
where each *group* ``gamma_i`` (``x_i``, ``y_i`` and their three blocks) is a
permutation with a single occurrence starting at its first letter. A Nr. 49
permutation nests its groups ``delta_i`` around ``A`` the same way, each
``delta_i`` having a single occurrence whose two letters are adjacent.

``map_g`` sends ``A`` to ``f(red(A))`` and group ``i`` of the Nr. 48 picture
to group ``i`` (from the inside) of the Nr. 49 picture. On a group the map is
the half-turn of ``X1, X2, X3`` followed by re-laying ``X2`` as
``f(red(X2))`` on its own values. That recipe needs ``X2`` to avoid Nr. 48
on its own and its image to be a valid group, which fails for some groups
(``X1`` can switch off occurrences inside ``X2``, and ``X3`` can switch off
occurrences across ``X2`` and ``X1`` on the other side). The groups of each
size where it fails are paired in lexicographic order with the groups the
recipe misses. Both sides have the same number of groups of every size, so
the result is a bijection.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache
from string import ascii_uppercase

import numpy as np

from . import catalog
from .oracle import HARD_CEILING, ResourceLimit, avoiders_lex, count_all, permutation_array
from .patterns import (
    InvalidInput,
    MeshPattern,
    Permutation,
    count_occurrences,
    find_occurrences,
    reduce,
)

Point = tuple[int, int]  # (position, value), both 1-based


class EquidistributionViolation(ValueError):
    pass


P48 = catalog.lookup(48)
P49 = catalog.lookup(49)

_f_lock = threading.Lock()


@lru_cache(maxsize=None)
def _lex_table(n: int, p_from: MeshPattern, p_to: MeshPattern) -> dict[Permutation, Permutation]:
    src = avoiders_lex(p_from, n, allow_unsafe=True)
    dst = avoiders_lex(p_to, n, allow_unsafe=True)
    if len(src) != len(dst):
        raise EquidistributionViolation(
            f"n = {n}: {len(src)} avoiders of {p_from} but {len(dst)} of {p_to}"
        )
    return dict(zip(src, dst))


def lex_bijection_f(n: int, p_from: MeshPattern = P48, p_to: MeshPattern = P49) -> dict[Permutation, Permutation]:
    """Pair the i-th smallest avoider of ``p_from`` with the i-th smallest avoider of ``p_to``."""
    with _f_lock:
        return _lex_table(n, p_from, p_to)


def apply_f(perm: Permutation, p_from: MeshPattern = P48, p_to: MeshPattern = P49) -> Permutation:
    table = lex_bijection_f(len(perm), p_from, p_to)
    try:
        return table[tuple(perm)]
    except KeyError:
        raise InvalidInput(f"{perm} contains the source pattern") from None


@dataclass(frozen=True)
class Group:
    x: Point
    y: Point
    block1: tuple[Point, ...]
    block2: tuple[Point, ...]
    block3: tuple[Point, ...]


@dataclass(frozen=True)
class BlockDecomposition:
    nr: int
    perm: Permutation
    A: tuple[Point, ...]
    groups: tuple[Group, ...]

    @property
    def occurrences(self) -> list[tuple[int, int]]:
        """Occurrences as (value of x, value of y)."""
        return [(g.x[1], g.y[1]) for g in self.groups]

    def blocks(self) -> dict[str, set[int]]:
        """Value sets keyed ``"A"``, ``"B1"``, ``"B2"``, ``"B3"``, ``"C1"``, ..."""
        out = {"A": {v for _, v in self.A}}
        for letter, g in zip(ascii_uppercase[1:], self.groups):
            for j, block in enumerate((g.block1, g.block2, g.block3), start=1):
                out[f"{letter}{j}"] = {v for _, v in block}
        return out


def _points(perm: Permutation, pos_lo: int, pos_hi: int, val_lo: int, val_hi: int) -> tuple[Point, ...]:
    return tuple(
        (i, perm[i - 1]) for i in range(pos_lo + 1, pos_hi) if val_lo < perm[i - 1] < val_hi
    )


def decompose(nr: int, perm) -> BlockDecomposition:
    """Split a permutation containing Nr. 48 or Nr. 49 into occurrences and blocks."""
    perm = tuple(perm)
    n = len(perm)
    if nr not in (48, 49):
        raise InvalidInput("decompose handles Nr. 48 and Nr. 49 only")
    occ = [((i, perm[i - 1]), (j, perm[j - 1])) for i, j in find_occurrences(catalog.lookup(nr), perm)]
    if not occ:
        raise InvalidInput(f"{perm} avoids Nr. {nr}")
    groups = []
    if nr == 48:
        occ.sort()
        for i, (x, y) in enumerate(occ):
            nxt_y_val = occ[i + 1][1][1] if i + 1 < len(occ) else 0
            nxt_x_pos = occ[i + 1][0][0] if i + 1 < len(occ) else n + 1
            groups.append(
                Group(
                    x,
                    y,
                    _points(perm, x[0], y[0], nxt_y_val, x[1]),
                    _points(perm, y[0], nxt_x_pos, nxt_y_val, x[1]),
                    _points(perm, x[0], y[0], x[1], y[1]),
                )
            )
        A = _points(perm, 0, occ[0][0][0], 0, n + 1)
    else:
        occ.sort(key=lambda xy: xy[0][1])
        for i, (x, y) in enumerate(occ):
            if i + 1 < len(occ):
                (nx_pos, nx_val), (ny_pos, _) = occ[i + 1]
            else:
                nx_pos, nx_val, ny_pos = 0, n + 1, n + 1
            groups.append(
                Group(
                    x,
                    y,
                    _points(perm, y[0], ny_pos, y[1], nx_val),
                    _points(perm, nx_pos, x[0], y[1], nx_val),
                    _points(perm, y[0], ny_pos, x[1], y[1]),
                )
            )
        x1, y1 = occ[0]
        A = _points(perm, x1[0], y1[0], 0, n + 1)
    dec = BlockDecomposition(nr, perm, A, tuple(groups))
    used = len(A) + sum(2 + len(g.block1) + len(g.block2) + len(g.block3) for g in groups)
    if used != n:
        raise AssertionError(f"decomposition of {perm} for Nr. {nr} is not a partition")
    return dec



def _red(block) -> Permutation:
    """Reduced form of a block read left to right."""
    return reduce([v for _, v in sorted(block)])


def _half_turn_keys(block: tuple[Point, ...], pattern: Permutation) -> dict[Point, int]:
    """Sort keys for ``block`` after a half-turn, re-laid out to read as ``pattern``.

    After the turn the letters run in reverse position order and rank by
    negated value; the block keeps its set of keys but the j-th letter gets
    the ``pattern[j]``-th smallest one.
    """
    letters = sorted(block, reverse=True)
    keys = sorted(-v for _, v in block)
    return {pt: keys[pattern[j] - 1] for j, pt in enumerate(letters)}


def _assemble(pos_segments: list[list], val_bands: list[list]) -> Permutation:
    """Permutation whose letters run through ``pos_segments`` left to right and
    through ``val_bands`` bottom to top."""
    rank = {}
    for letter in (letter for band in val_bands for letter in band):
        rank[letter] = len(rank) + 1
    return tuple(rank[letter] for seg in pos_segments for letter in seg)


def _group_letters(g: Group) -> Permutation:
    """The group as a permutation: its letters in position order, reduced."""
    return _red((g.x, g.y, *g.block1, *g.block2, *g.block3))


# -- the recipe on a single group -------------------------------------------


def _recipe(gamma: Permutation) -> Permutation | None:
    """Half-turn plus ``f`` on one Nr. 48 group; ``None`` if ``X2`` contains Nr. 48."""
    (g,) = decompose(48, gamma).groups
    try:
        pattern = apply_f(_red(g.block2), P48, P49)
    except InvalidInput:
        return None
    keys = {("X1", pt): -pt[1] for pt in g.block1}
    keys.update({("X2", pt): k for pt, k in _half_turn_keys(g.block2, pattern).items()})
    tag = {pt: "X1" for pt in g.block1} | {pt: "X3" for pt in g.block3}
    right = [(tag[pt], pt) for pt in sorted(g.block1 + g.block3, reverse=True)]
    x2 = [("X2", pt) for pt in sorted(g.block2, reverse=True)]
    low = [("X3", pt) for pt in sorted(g.block3, key=lambda pt: -pt[1])]
    high = sorted(keys, key=keys.__getitem__)
    return _assemble([[*x2, "x", "y", *right]], [["x", *low, "y", *high]])


def _recipe_inverse(delta: Permutation) -> Permutation | None:
    (g,) = decompose(49, delta).groups
    try:
        pattern = apply_f(_red(g.block2), P49, P48)
    except InvalidInput:
        return None
    keys = {("X1", pt): -pt[1] for pt in g.block1}
    keys.update({("X2", pt): k for pt, k in _half_turn_keys(g.block2, pattern).items()})
    tag = {pt: "X1" for pt in g.block1} | {pt: "X3" for pt in g.block3}
    left = [(tag[pt], pt) for pt in sorted(g.block1 + g.block3, reverse=True)]
    x2 = [("X2", pt) for pt in sorted(g.block2, reverse=True)]
    high = [("X3", pt) for pt in sorted(g.block3, key=lambda pt: -pt[1])]
    low = sorted(keys, key=keys.__getitem__)
    return _assemble([["x", *left, "y", *x2]], [[*low, "x", *high, "y"]])


def _is_group(nr: int, perm: Permutation) -> bool:
    p = P48 if nr == 48 else P49
    return count_occurrences(p, perm) == 1 and count_occurrences(_GROUP_PATTERN[nr], perm) == 1


# A group of Nr. 48 starts with its x; a group of Nr. 49 has x and y adjacent.
_GROUP_PATTERN = {
    48: MeshPattern(P48.tau, P48.shading | {(0, 2)}),
    49: MeshPattern(P49.tau, P49.shading | {(1, 0)}),
}


def _groups_lex(nr: int, size: int) -> list[Permutation]:
    perms = np.concatenate([permutation_array(size, f) for f in range(1, size + 1)])
    p = P48 if nr == 48 else P49
    keep = (count_all(p, perms) == 1) & (count_all(_GROUP_PATTERN[nr], perms) == 1)
    return [tuple(int(v) for v in row) for row in perms[keep]]


_group_lock = threading.Lock()


@lru_cache(maxsize=None)
def _leftover_pairing(size: int) -> tuple[dict[Permutation, Permutation], dict[Permutation, Permutation]]:
    """Lexicographic pairing of the groups of length ``size`` the recipe does not cover."""
    if size > HARD_CEILING:
        raise ResourceLimit(f"pairing groups of length {size} needs enumeration beyond n = {HARD_CEILING}")
    src = _groups_lex(48, size)
    dst = _groups_lex(49, size)
    if len(src) != len(dst):
        raise EquidistributionViolation(f"{len(src)} groups of length {size} for Nr. 48 but {len(dst)} for Nr. 49")
    hit = set()
    rest_src = []
    for gamma in src:
        delta = _recipe(gamma)
        if delta is not None and _is_group(49, delta):
            hit.add(delta)
        else:
            rest_src.append(gamma)
    rest_dst = [delta for delta in dst if delta not in hit]
    fwd = dict(zip(rest_src, rest_dst))
    return fwd, {v: k for k, v in fwd.items()}


def _pairing(size: int):
    with _group_lock:
        return _leftover_pairing(size)


def group_map(gamma) -> Permutation:
    """The bijection on single groups: Nr. 48 group to Nr. 49 group of the same length."""
    gamma = tuple(gamma)
    if not _is_group(48, gamma):
        raise InvalidInput(f"{gamma} is not a single Nr. 48 group")
    delta = _recipe(gamma)
    if delta is not None and _is_group(49, delta):
        return delta
    return _pairing(len(gamma))[0][gamma]


def group_map_inverse(delta) -> Permutation:
    delta = tuple(delta)
    if not _is_group(49, delta):
        raise InvalidInput(f"{delta} is not a single Nr. 49 group")
    gamma = _recipe_inverse(delta)
    if gamma is not None and _is_group(48, gamma) and _recipe(gamma) == delta:
        return gamma
    return _pairing(len(delta))[1][delta]


# -- whole permutations -----------------------------------------------------


def map_g(perm) -> Permutation:
    """Send a permutation with k >= 1 occurrences of Nr. 48 to one with k occurrences of Nr. 49."""
    dec = decompose(48, perm)
    a_new = apply_f(_red(dec.A), P48, P49)
    deltas = [group_map(_group_letters(g)) for g in dec.groups]
    # delta_i nests around everything inside it; x of each delta is its letter 1
    lefts, rights, base = [], [], len(a_new)
    for delta in deltas:
        cut = delta.index(1) + 1
        shifted = [v + base for v in delta]
        lefts.append(shifted[:cut])
        rights.append(shifted[cut:])
        base += len(delta)
    out = [v for seg in reversed(lefts) for v in seg]
    out += a_new
    out += [v for seg in rights for v in seg]
    return tuple(out)


def map_g_inverse(perm) -> Permutation:
    """Inverse of :func:`map_g`: from k occurrences of Nr. 49 back to Nr. 48."""
    dec = decompose(49, perm)
    a_old = apply_f(_red(dec.A), P49, P48)
    gammas = [group_map_inverse(_group_letters(g)) for g in dec.groups]
    # skew sum: A on top, then gamma_1, gamma_2, ... going down
    out, top = [], len(perm)
    for block in (a_old, *gammas):
        top -= len(block)
        out += [v + top for v in block]
    return tuple(out)
