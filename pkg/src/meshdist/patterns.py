"""Permutations, mesh patterns and occurrence matching.

Permutations are plain tuples of ints in one-line notation over ``1..n``.
A mesh pattern is a permutation ``tau`` of length ``k`` together with a set
of shaded boxes ``(i, j)``, ``0 <= i, j <= k``; box ``(i, j)`` is the unit
cell between the i-th and (i+1)-th vertical lines (positions) and the j-th
and (j+1)-th horizontal lines (values).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

Permutation = tuple[int, ...]
Box = tuple[int, int]


class InvalidInput(ValueError):
    pass


def is_permutation(word: Sequence[int]) -> bool:
    return sorted(word) == list(range(1, len(word) + 1))


def as_permutation(word: Iterable[int]) -> Permutation:
    perm = tuple(int(w) for w in word)
    if not is_permutation(perm):
        raise InvalidInput(f"not a permutation of 1..{len(perm)}: {perm}")
    return perm


def reduce(seq: Sequence[int]) -> Permutation:
    """Return the permutation order-isomorphic to ``seq`` (its reduced form)."""
    if len(set(seq)) != len(seq):
        raise InvalidInput(f"entries are not distinct: {tuple(seq)}")
    rank = {v: r for r, v in enumerate(sorted(seq), start=1)}
    return tuple(rank[v] for v in seq)


def reverse(perm: Sequence[int]) -> Permutation:
    return tuple(reversed(perm))


def complement(perm: Sequence[int]) -> Permutation:
    n = len(perm)
    return tuple(n + 1 - v for v in perm)


def inverse(perm: Sequence[int]) -> Permutation:
    inv = [0] * len(perm)
    for i, v in enumerate(perm, start=1):
        inv[v - 1] = i
    return tuple(inv)


def descents(perm: Sequence[int]) -> int:
    return sum(1 for a, b in zip(perm, perm[1:]) if a > b)


def parse_permutation(text: str) -> Permutation:
    """Parse one-line notation.

    Accepts space/comma separated letters (``"15 17 16 9"``), the
    parenthesised form for multi-digit letters (``"(15)(17)(16)9"``), and a bare
    digit string for permutations of length < 10 (``"132"``).
    """
    text = text.strip()
    if not text:
        return ()
    if re.search(r"[\s,]", text):
        word = [int(t) for t in re.split(r"[\s,]+", text) if t]
    elif "(" in text:
        word = [int(a or b) for a, b in re.findall(r"\((\d+)\)|(\d)", text)]
    else:
        word = [int(c) for c in text]
    return as_permutation(word)


def format_permutation(perm: Sequence[int], sep: str | None = None) -> str:
    """One-line notation; digits are run together when every letter is < 10."""
    if sep is None:
        sep = "" if len(perm) < 10 else " "
    return sep.join(str(v) for v in perm)


def format_parenthesised(perm: Sequence[int]) -> str:
    """Letters above 9 in parentheses, the rest as bare digits: ``(15)(17)9``."""
    return "".join(str(v) if v < 10 else f"({v})" for v in perm)


@dataclass(frozen=True)
class MeshPattern:
    tau: Permutation
    shading: frozenset[Box] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "tau", as_permutation(self.tau))
        object.__setattr__(self, "shading", frozenset((int(i), int(j)) for i, j in self.shading))
        k = len(self.tau)
        for i, j in self.shading:
            if not (0 <= i <= k and 0 <= j <= k):
                raise InvalidInput(f"box {(i, j)} outside [0,{k}]x[0,{k}]")

    @property
    def k(self) -> int:
        return len(self.tau)

    def __str__(self) -> str:
        return format_pattern(self)


def format_pattern(p: MeshPattern) -> str:
    boxes = "".join(f"({i},{j})" for i, j in sorted(p.shading))
    return f"tau={format_permutation(p.tau, sep='' if p.k < 10 else ' ')};R={boxes}"


_LITERAL = re.compile(r"^\s*tau=([^;]*);R=((?:\(\d+,\d+\))*)\s*$")


def parse_pattern(text: str) -> MeshPattern:
    """Parse ``tau=<word>;R=(i,j)(i,j)...``."""
    m = _LITERAL.match(text)
    if not m:
        raise InvalidInput(f"bad pattern literal: {text!r}")
    tau = parse_permutation(m.group(1))
    boxes = [(int(i), int(j)) for i, j in re.findall(r"\((\d+),(\d+)\)", m.group(2))]
    if len(set(boxes)) != len(boxes):
        raise InvalidInput(f"duplicate box in {text!r}")
    return MeshPattern(tau, frozenset(boxes))


def _box_empty(pi: Permutation, pos: Sequence[int], vals: Sequence[int], box: Box) -> bool:
    a, b = box
    lo_pos, hi_pos = pos[a], pos[a + 1]
    lo_val, hi_val = vals[b], vals[b + 1]
    for m in range(lo_pos + 1, hi_pos):
        if lo_val < pi[m - 1] < hi_val:
            return False
    return True


def iter_occurrences(p: MeshPattern, pi: Permutation):
    n, k = len(pi), p.k
    # boxes checked cheapest-first is not worth it at these sizes
    boxes = sorted(p.shading)
    for idx in combinations(range(1, n + 1), k):
        sub = [pi[i - 1] for i in idx]
        if reduce(sub) != p.tau:
            continue
        pos = (0, *idx, n + 1)
        vals = (0, *sorted(sub), n + 1)
        if all(_box_empty(pi, pos, vals, box) for box in boxes):
            yield idx


def find_occurrences(p: MeshPattern, pi: Sequence[int]) -> list[tuple[int, ...]]:
    """All occurrences of ``p`` in ``pi`` as 1-based index tuples, in lexicographic order."""
    return list(iter_occurrences(p, tuple(pi)))


def count_occurrences(p: MeshPattern, pi: Sequence[int]) -> int:
    return sum(1 for _ in iter_occurrences(p, tuple(pi)))


def transform(p: MeshPattern, op: str) -> MeshPattern:
    """Apply ``reverse``, ``complement`` or ``inverse`` to a mesh pattern."""
    k = p.k
    if op == "reverse":
        return MeshPattern(reverse(p.tau), frozenset((k - i, j) for i, j in p.shading))
    if op == "complement":
        return MeshPattern(complement(p.tau), frozenset((i, k - j) for i, j in p.shading))
    if op == "inverse":
        return MeshPattern(inverse(p.tau), frozenset((j, i) for i, j in p.shading))
    raise InvalidInput(f"unknown transform {op!r}")


PERMUTATION_TRANSFORMS = {"reverse": reverse, "complement": complement, "inverse": inverse}


def classical(tau: Sequence[int]) -> MeshPattern:
    return MeshPattern(tuple(tau), frozenset())


# the length-1 pattern whose occurrences are the strong fixed points
STRONG_FIXED_POINT = MeshPattern((1,), frozenset({(0, 1), (1, 0)}))
