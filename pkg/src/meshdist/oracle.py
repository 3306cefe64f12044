"""Exhaustive ground truth over S_n.

Every permutation of length ``n`` is enumerated in lexicographic order and
occurrences are counted with a numpy-vectorised matcher that works on the
whole block of permutations at once. The scalar matcher in
:mod:`meshdist.patterns` stays the reference definition; the two are
cross-checked in the test-suite.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from itertools import combinations, permutations

import numpy as np

from .patterns import MeshPattern, Permutation, format_pattern, inverse
from .tables import DistributionTable, JointTable, trim

log = logging.getLogger(__name__)

DEFAULT_CEILING = 9
HARD_CEILING = 10

# directory for memoised avoider lists; unset means no disk cache
CACHE_ENV = "MESHDIST_CACHE_DIR"


class ResourceLimit(ValueError):
    pass


def check_ceiling(n: int, allow_unsafe: bool = False) -> None:
    limit = HARD_CEILING if allow_unsafe else DEFAULT_CEILING
    if n > limit:
        hint = "" if allow_unsafe or n > HARD_CEILING else " (pass the unsafe override to allow n = 10)"
        raise ResourceLimit(f"n = {n} exceeds the enumeration ceiling {limit}{hint}")


@lru_cache(maxsize=32)
def permutation_array(n: int, first: int | None = None) -> np.ndarray:
    """All n-permutations (optionally only those starting with ``first``), lexicographic."""
    if first is None:
        rows = list(permutations(range(1, n + 1)))
    else:
        rest = [v for v in range(1, n + 1) if v != first]
        rows = [(first, *r) for r in permutations(rest)]
    arr = np.array(rows, dtype=np.int8).reshape(len(rows), n)
    arr.setflags(write=False)
    return arr


def count_all(p: MeshPattern, perms: np.ndarray) -> np.ndarray:
    """Occurrence count of ``p`` in every row of ``perms``."""
    m, n = perms.shape
    k = p.k
    counts = np.zeros(m, dtype=np.int64)
    if k > n:
        return counts
    if k == 0:
        return counts + 1
    rank_to_slot = [i - 1 for i in inverse(p.tau)]
    boxes = sorted(p.shading)
    zero = np.zeros(m, dtype=np.int8)
    top = np.full(m, n + 1, dtype=np.int8)
    for idx in combinations(range(n), k):
        sel = perms[:, idx]
        vals = [sel[:, s] for s in rank_to_slot]
        ok = np.ones(m, dtype=bool)
        for lo, hi in zip(vals, vals[1:]):
            ok &= lo < hi
        if not ok.any():
            continue
        rows = np.flatnonzero(ok)
        bounds = [zero, *vals, top]
        edges = (-1, *idx, n)
        for a, b in boxes:
            start, stop = edges[a] + 1, edges[a + 1]
            if start >= stop:
                continue
            region = perms[rows, start:stop]
            lo = bounds[b][rows, None]
            hi = bounds[b + 1][rows, None]
            hit = ((region > lo) & (region < hi)).any(axis=1)
            rows = rows[~hit]
            if rows.size == 0:
                break
        counts[rows] += 1
    return counts


def descent_counts(perms: np.ndarray) -> np.ndarray:
    if perms.shape[1] < 2:
        return np.zeros(perms.shape[0], dtype=np.int64)
    return (perms[:, :-1] > perms[:, 1:]).sum(axis=1).astype(np.int64)


def _shard_counts(args) -> tuple[np.ndarray, np.ndarray]:
    p, n, first = args
    perms = permutation_array(n, first)
    return count_all(p, perms), descent_counts(perms)


def occurrence_counts(
    p: MeshPattern, n: int, shards: int = 1, allow_unsafe: bool = False
) -> tuple[np.ndarray, np.ndarray]:
    """Occurrence and descent counts for all of S_n, in lexicographic order.

    The work is split by first letter; ``shards > 1`` runs the pieces in
    worker processes. Results are concatenated in first-letter order so the
    output does not depend on ``shards``.
    """
    check_ceiling(n, allow_unsafe)
    if n == 0:
        return np.array([1 if p.k == 0 else 0]), np.array([0])
    jobs = [(p, n, first) for first in range(1, n + 1)]
    if shards > 1 and n >= 7:
        with ProcessPoolExecutor(max_workers=shards) as pool:
            parts = list(pool.map(_shard_counts, jobs))
    else:
        parts = [_shard_counts(job) for job in jobs]
    occ = np.concatenate([o for o, _ in parts])
    des = np.concatenate([d for _, d in parts])
    return occ, des


def _label(p: MeshPattern, name: str | None) -> str:
    return name or format_pattern(p)


def brute_distribution(
    p: MeshPattern,
    n_max: int,
    *,
    shards: int = 1,
    allow_unsafe: bool = False,
    name: str | None = None,
) -> DistributionTable:
    check_ceiling(n_max, allow_unsafe)
    rows = []
    for n in range(n_max + 1):
        occ, _ = occurrence_counts(p, n, shards, allow_unsafe)
        rows.append(trim(np.bincount(occ).tolist()))
        log.debug("%s n=%d row=%s", _label(p, name), n, rows[-1])
    return DistributionTable(_label(p, name), rows)


def brute_row(p: MeshPattern, n: int, shards: int = 1, allow_unsafe: bool = False) -> list[int]:
    occ, _ = occurrence_counts(p, n, shards, allow_unsafe)
    return trim(np.bincount(occ).tolist())


def _cache_file(p: MeshPattern, n: int) -> str | None:
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    key = hashlib.sha1(format_pattern(p).encode()).hexdigest()[:16]
    return os.path.join(root, f"avoiders-{key}-n{n}.json")


def avoiders_lex(p: MeshPattern, n: int, allow_unsafe: bool = False) -> list[Permutation]:
    """The n-permutations avoiding ``p``, in lexicographic order.

    When ``MESHDIST_CACHE_DIR`` is set the lists are kept there as JSON.
    """
    check_ceiling(n, allow_unsafe)
    if n == 0:
        return [()] if p.k > 0 else []
    path = _cache_file(p, n)
    if path and os.path.exists(path):
        with open(path) as fh:
            data = json.load(fh)
        if data.get("pattern") == format_pattern(p):
            return [tuple(w) for w in data["avoiders"]]
    occ, _ = occurrence_counts(p, n, 1, allow_unsafe)
    perms = np.concatenate([permutation_array(n, f) for f in range(1, n + 1)])
    out = [tuple(int(v) for v in row) for row in perms[occ == 0]]
    if path:
        os.makedirs(os.path.dirname(path), exist_ok=True)
        tmp = f"{path}.{os.getpid()}.tmp"
        with open(tmp, "w") as fh:
            json.dump({"pattern": format_pattern(p), "n": n, "avoiders": out}, fh)
        os.replace(tmp, path)
    return out


def brute_joint(
    p: MeshPattern,
    n_max: int,
    *,
    shards: int = 1,
    allow_unsafe: bool = False,
    name: str | None = None,
) -> JointTable:
    """Joint counts of (occurrences, descents) for n = 0..n_max."""
    check_ceiling(n_max, allow_unsafe)
    rows = []
    for n in range(n_max + 1):
        occ, des = occurrence_counts(p, n, shards, allow_unsafe)
        grid = np.zeros((int(occ.max()) + 1, max(n, 1)), dtype=np.int64)
        np.add.at(grid, (occ, des), 1)
        rows.append([trim(r) for r in grid.tolist()])
    return JointTable(_label(p, name), rows)
