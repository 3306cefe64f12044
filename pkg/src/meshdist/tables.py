from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import factorial


def trim(row) -> list[int]:
    row = [int(v) for v in row]
    while len(row) > 1 and row[-1] == 0:
        row.pop()
    return row or [0]


@dataclass
class DistributionTable:
    """Counts ``rows[n][k]`` of n-permutations with exactly k occurrences.

    Rows are stored with trailing zeros trimmed, so ``rows[0] == [1]``.
    """

    pattern: str
    rows: list[list[int]]
    conjectural: bool = False

    def __post_init__(self):
        self.rows = [trim(r) for r in self.rows]

    @property
    def n_max(self) -> int:
        return len(self.rows) - 1

    def row(self, n: int) -> list[int]:
        return self.rows[n]

    def column(self, k: int) -> list[int]:
        return [r[k] if k < len(r) else 0 for r in self.rows]

    def check_row_sums(self) -> bool:
        return all(sum(r) == factorial(n) and min(r) >= 0 for n, r in enumerate(self.rows))

    def to_dict(self) -> dict:
        out = {"pattern": self.pattern, "rows": self.rows}
        if self.conjectural:
            out["conjectural"] = True
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> DistributionTable:
        data = json.loads(text)
        return cls(data["pattern"], data["rows"], bool(data.get("conjectural", False)))


@dataclass
class JointTable:
    """``rows[n][k][d]``: n-permutations with k occurrences and d descents."""

    pattern: str
    rows: list[list[list[int]]] = field(default_factory=list)

    def marginal_occurrences(self) -> DistributionTable:
        return DistributionTable(self.pattern, [[sum(byd) for byd in r] for r in self.rows])

    def marginal_descents(self) -> list[list[int]]:
        out = []
        for r in self.rows:
            width = max(len(byd) for byd in r)
            out.append(trim([sum(byd[d] for byd in r if d < len(byd)) for d in range(width)]))
        return out

    def to_json(self) -> str:
        return json.dumps({"pattern": self.pattern, "rows": self.rows})


def bfile(values, offset: int = 0) -> str:
    """OEIS b-file body: ``index value`` per line."""
    return "".join(f"{offset + i} {v}\n" for i, v in enumerate(values))
