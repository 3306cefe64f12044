"""Equidistribution checks for groups of catalogued patterns.

Every group is compared on the full distribution vectors from the oracle,
not only on avoider counts.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

from . import catalog
from .oracle import brute_distribution
from .patterns import InvalidInput

PROVED = "proved"
CONJECTURED = "conjectured"

PROVED_GROUPS: tuple[tuple[int, ...], ...] = ((8, 9), (14, 15), (48, 49), (63, 64, 65))
CONJECTURED_GROUPS: tuple[tuple[int, ...], ...] = ((23, 24), (48, 49, 50), (53, 54), (57, 58), (61, 62))


@dataclass
class Divergence:
    n: int
    k: int
    counts: dict[int, int]  # nr -> T_{n,k}


@dataclass
class EquidistReport:
    nrs: tuple[int, ...]
    status: str
    n_max: int
    equal_up_to: int  # largest n with all rows equal so far
    divergence: Divergence | None = None
    rows: dict[int, list[list[int]]] = field(default_factory=dict)

    @property
    def equal(self) -> bool:
        return self.divergence is None

    def verdicts(self) -> list[str]:
        out = []
        for n in range(self.n_max + 1):
            if n <= self.equal_up_to:
                out.append("equal")
            elif self.divergence is not None and n == self.divergence.n:
                out.append(f"diverges at k={self.divergence.k}")
            else:
                out.append("not checked")
        return out

    def to_dict(self) -> dict:
        d = asdict(self)
        d["nrs"] = list(self.nrs)
        d["rows"] = {str(k): v for k, v in self.rows.items()}
        d["equal"] = self.equal
        d["verdicts"] = self.verdicts()
        if self.divergence is not None:
            d["divergence"]["counts"] = {str(k): v for k, v in self.divergence.counts.items()}
        return d

    def summary(self) -> str:
        group = "{" + ", ".join(map(str, self.nrs)) + "}"
        if self.equal:
            verdict = f"equal for n <= {self.n_max}"
        else:
            d = self.divergence
            counts = ", ".join(f"Nr. {nr}: {c}" for nr, c in d.counts.items())
            verdict = f"DIVERGE at n={d.n}, k={d.k} ({counts})"
        return f"{group:<14} {self.status:<11} {verdict}"


def _status(nrs: tuple[int, ...]) -> str:
    return PROVED if tuple(sorted(nrs)) in PROVED_GROUPS else CONJECTURED


def check_group(nrs, n_max: int, *, shards: int = 1, allow_unsafe: bool = False) -> EquidistReport:
    nrs = tuple(nrs)
    if len(nrs) < 2:
        raise InvalidInput("a group needs at least two patterns")
    for nr in nrs:
        catalog.lookup(nr)
    tables = {
        nr: brute_distribution(catalog.lookup(nr), n_max, shards=shards, allow_unsafe=allow_unsafe)
        for nr in nrs
    }
    report = EquidistReport(nrs, _status(nrs), n_max, -1, rows={nr: t.rows for nr, t in tables.items()})
    for n in range(n_max + 1):
        rows = {nr: tables[nr].row(n) for nr in nrs}
        width = max(len(r) for r in rows.values())
        for k in range(width):
            counts = {nr: (r[k] if k < len(r) else 0) for nr, r in rows.items()}
            if len(set(counts.values())) > 1:
                report.divergence = Divergence(n, k, counts)
                return report
        report.equal_up_to = n
    return report


def check_all(n_max: int, *, groups=None, workers: int = 1, allow_unsafe: bool = False) -> list[EquidistReport]:
    """Reports for ``groups`` (default: every proved and conjectured group), in input order."""
    groups = list(groups if groups is not None else PROVED_GROUPS + CONJECTURED_GROUPS)
    if workers <= 1:
        return [check_group(g, n_max, allow_unsafe=allow_unsafe) for g in groups]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda g: check_group(g, n_max, allow_unsafe=allow_unsafe), groups))


def reports_json(reports: list[EquidistReport]) -> str:
    return json.dumps([r.to_dict() for r in reports])


def reports_text(reports: list[EquidistReport]) -> str:
    return "\n".join(r.summary() for r in reports) + "\n"
