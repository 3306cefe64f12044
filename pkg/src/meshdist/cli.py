"""Command line front end: ``meshdist <command> [options]``.

Exit status is 0 on success (conjecture divergences included), 1 when a
proved result disagrees with the oracle, and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass

import numpy as np

from . import catalog, equidist, formulas
from .bijections import apply_f, map_g, map_g_inverse
from .oracle import ResourceLimit, brute_distribution, brute_joint, occurrence_counts, permutation_array
from .patterns import (
    STRONG_FIXED_POINT,
    InvalidInput,
    MeshPattern,
    count_occurrences,
    format_parenthesised,
    format_pattern,
    parse_pattern,
    parse_permutation,
)
from .series import SingularSeries
from .tables import DistributionTable, bfile, trim

ORDER_CAP = 16
EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2

log = logging.getLogger("meshdist")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    nr: int | None = None
    pattern: MeshPattern | None = None
    n: int | None = None
    n_max: int | None = None
    order: int = 12
    source: str = "oracle"
    fmt: str = "text"
    shards: int = 1
    unsafe: bool = False

    def __post_init__(self):
        if self.order < 0 or self.order > ORDER_CAP:
            raise UsageError(f"--order must lie in 0..{ORDER_CAP}")
        for v in (self.n, self.n_max):
            if v is not None and v < 0:
                raise UsageError("n must be non-negative")
        if self.shards < 1:
            raise UsageError("--shards must be positive")


# -- selection ----------------------------------------------------------------


def _selected(cfg: RunConfig) -> tuple[str, MeshPattern, int | None, bool]:
    """(label, pattern, nr, is_strong_fixed_point) for the selector in ``cfg``."""
    if cfg.nr is not None:
        return f"nr={cfg.nr}", catalog.lookup(cfg.nr), cfg.nr, False
    if cfg.pattern is None:
        raise UsageError("give --nr or --pattern")
    p = cfg.pattern
    if p == STRONG_FIXED_POINT:
        return format_pattern(p), p, None, True
    nr = next((e.nr for e in catalog.catalog() if e.pattern == p), None)
    return format_pattern(p), p, nr, False


def _table(cfg: RunConfig, n_max: int) -> DistributionTable:
    label, p, nr, sfp = _selected(cfg)
    if cfg.source == "oracle":
        return brute_distribution(p, n_max, shards=cfg.shards, allow_unsafe=cfg.unsafe, name=label)
    if nr is None and not sfp:
        raise UsageError(f"no formula is known for {label}; use --source oracle")
    table = formulas.formula_table(None if sfp else nr, n_max)
    table.pattern = label
    return table


def _default_n_max(cfg: RunConfig) -> int:
    if cfg.n_max is not None:
        return cfg.n_max
    return cfg.order if cfg.source == "formula" else 8


# -- commands -------------------------------------------------------------------


def cmd_dist(cfg: RunConfig) -> tuple[str, int]:
    n_max = cfg.n if cfg.n is not None else _default_n_max(cfg)
    table = _table(cfg, n_max)
    if cfg.n is not None:
        table = DistributionTable(table.pattern, [table.row(cfg.n)], table.conjectural)
        first = cfg.n
    else:
        first = 0
    if cfg.fmt == "json":
        d = table.to_dict()
        if cfg.n is not None:
            d["n"] = cfg.n
        return json.dumps(d) + "\n", EXIT_OK
    if cfg.fmt == "bfile":
        return bfile([v for r in table.rows for v in r]), EXIT_OK
    lines = []
    if table.conjectural:
        lines.append("# conjectural")
    for n, row in enumerate(table.rows, start=first):
        lines.append(" ".join(map(str, row)) if cfg.n is not None else f"{n}: " + " ".join(map(str, row)))
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_bfile(cfg: RunConfig, column: int | None, offset: int) -> tuple[str, int]:
    n_max = _default_n_max(cfg)
    table = _table(cfg, n_max)
    if column is not None:
        values = table.column(column)
    else:
        # the triangle T(n, k), n >= 1, 0 <= k <= n - 1, read by rows
        values = []
        for n in range(1, table.n_max + 1):
            row = table.row(n)
            values += [row[k] if k < len(row) else 0 for k in range(n)]
    return bfile(values, offset), EXIT_OK


def _witness(p: MeshPattern, n: int, k: int, allow_unsafe: bool) -> list[int] | None:
    """Lexicographically first n-permutation with exactly k occurrences."""
    if n == 0:
        return [] if k == (1 if p.k == 0 else 0) else None
    occ, _ = occurrence_counts(p, n, 1, allow_unsafe)
    hits = np.flatnonzero(occ == k)
    if not hits.size:
        return None
    perms = np.concatenate([permutation_array(n, f) for f in range(1, n + 1)])
    return [int(v) for v in perms[hits[0]]]


def _first_difference(a: list[list[int]], b: list[list[int]]) -> tuple[int, int] | None:
    for n, (ra, rb) in enumerate(zip(a, b)):
        ra, rb = trim(ra), trim(rb)
        if ra != rb:
            width = max(len(ra), len(rb))
            ra = ra + [0] * (width - len(ra))
            rb = rb + [0] * (width - len(rb))
            k = next(k for k in range(width) if ra[k] != rb[k])
            return n, k
    return None


def _verify_theorem(tag: str, n_max: int, cfg: RunConfig) -> list[tuple[dict, bool, bool]]:
    """(record, ok, conjectural) per pattern covered by ``tag``."""
    if tag.upper() == formulas.JOINT_TAG:
        return [_verify_joint(n_max, cfg)]
    thm = formulas.theorem(tag)
    out = []
    for label, p in thm.patterns():
        nr = int(label.split("=")[1]) if label.startswith("nr=") else None
        formula = thm.rows(nr, n_max)[: n_max + 1]
        oracle = brute_distribution(p, n_max, shards=cfg.shards, allow_unsafe=cfg.unsafe).rows
        diff = _first_difference(formula, oracle)
        rec = {"tag": thm.tag, "pattern": label, "n_max": n_max}
        if diff is None:
            rec["status"] = "SUPPORTED" if thm.conjectural else "OK"
        else:
            n, k = diff
            fk = formula[n][k] if k < len(formula[n]) else 0
            ok_ = oracle[n][k] if k < len(oracle[n]) else 0
            rec.update(
                status="CONJECTURE-DIVERGENCE" if thm.conjectural else "MISMATCH",
                n=n,
                k=k,
                formula=fk,
                oracle=ok_,
                formula_row=trim(formula[n]),
                oracle_row=oracle[n],
                witness=_witness(p, n, k, cfg.unsafe),
            )
        out.append((rec, diff is None, thm.conjectural))
    return out


def _verify_joint(n_max: int, cfg: RunConfig) -> tuple[dict, bool, bool]:
    formula = formulas.joint_rows(n_max)
    oracle = brute_joint(STRONG_FIXED_POINT, n_max, shards=cfg.shards, allow_unsafe=cfg.unsafe).rows
    rec = {"tag": formulas.JOINT_TAG, "pattern": "strong-fixed-point+descents", "n_max": n_max}
    bad = next((n for n in range(n_max + 1) if formula[n] != oracle[n]), None)
    if bad is None:
        rec["status"] = "OK"
    else:
        rec.update(status="MISMATCH", n=bad, formula_row=formula[bad], oracle_row=oracle[bad])
    return rec, bad is None, False


def cmd_verify(cfg: RunConfig, tags: list[str], conjectures: list[str], run_all: bool) -> tuple[str, int]:
    n_max = cfg.n_max if cfg.n_max is not None else 8
    if run_all:
        tags = [t for t, thm in formulas.THEOREMS.items() if not thm.conjectural] + [formulas.JOINT_TAG]
        conjectures = [t for t, thm in formulas.THEOREMS.items() if thm.conjectural]
    for tag in conjectures:
        if not formulas.theorem(tag).conjectural:
            raise UsageError(f"{tag} is a proved result; use --theorem")
    if not tags and not conjectures:
        raise UsageError("give --theorem, --conjecture or --all")
    lines, status = [], EXIT_OK
    for tag in [*tags, *conjectures]:
        for rec, ok, conjectural in _verify_theorem(tag, n_max, cfg):
            text = json.dumps(rec)
            if not ok and conjectural:
                lines.append(f"CONJECTURE-DIVERGENCE {text}")
            else:
                lines.append(text)
            if not ok and not conjectural:
                status = EXIT_MISMATCH
    return "\n".join(lines) + "\n", status


def cmd_bijection(
    cfg: RunConfig, perm_text: str, which: str, nr_pair: tuple[int, int], inverse: bool, parenthesised: bool
) -> tuple[str, int]:
    pi = parse_permutation(perm_text)
    if cfg.n is not None and cfg.n != len(pi):
        raise UsageError(f"--n {cfg.n} does not match the permutation length {len(pi)}")
    src_nr, dst_nr = nr_pair
    if inverse:
        src_nr, dst_nr = dst_nr, src_nr
    p_src, p_dst = catalog.lookup(src_nr), catalog.lookup(dst_nr)
    k_src = count_occurrences(p_src, pi)
    if which == "f":
        if k_src:
            raise UsageError(f"{perm_text} contains Nr. {src_nr}; f is defined on avoiders (use --map g)")
        sigma = apply_f(pi, p_src, p_dst)
    else:
        if {src_nr, dst_nr} != {48, 49}:
            raise UsageError("g is defined for the pair 48,49")
        if k_src == 0:
            raise UsageError(f"{perm_text} avoids Nr. {src_nr}; use --map f for avoiders")
        sigma = map_g(pi) if src_nr == 48 else map_g_inverse(pi)
    k_dst = count_occurrences(p_dst, sigma)
    if cfg.fmt == "json":
        rec = {
            "map": which if not inverse else f"{which}^-1",
            "from": src_nr,
            "to": dst_nr,
            "input": list(pi),
            "output": list(sigma),
            "occurrences": {str(src_nr): k_src, str(dst_nr): k_dst},
        }
        return json.dumps(rec) + "\n", EXIT_OK
    shown = format_parenthesised(sigma) if parenthesised else " ".join(map(str, sigma))
    return f"{shown}\noccurrences: Nr. {src_nr} in input = {k_src}, Nr. {dst_nr} in output = {k_dst}\n", EXIT_OK


def cmd_equidist(cfg: RunConfig, groups: list[tuple[int, ...]] | None) -> tuple[str, int]:
    n_max = cfg.n_max if cfg.n_max is not None else 8
    reports = equidist.check_all(n_max, groups=groups, workers=cfg.shards, allow_unsafe=cfg.unsafe)
    text = equidist.reports_json(reports) + "\n" if cfg.fmt == "json" else equidist.reports_text(reports)
    failed = any(r.status == equidist.PROVED and not r.equal for r in reports)
    return text, EXIT_MISMATCH if failed else EXIT_OK


def cmd_catalog(cfg: RunConfig) -> tuple[str, int]:
    entries = catalog.catalog()
    if cfg.fmt == "json":
        rows = []
        for e in entries:
            thm = formulas.theorem_for(e.nr)
            rows.append(
                {"nr": e.nr, "pattern": format_pattern(e.pattern), "status": e.status, "theorem": thm.tag if thm else None}
            )
        return json.dumps(rows) + "\n", EXIT_OK
    lines = []
    for e in entries:
        thm = formulas.theorem_for(e.nr)
        lines.append(f"Nr. {e.nr:<3} {format_pattern(e.pattern):<44} {e.status:<22} {thm.tag if thm else '-'}")
    return "\n".join(lines) + "\n", EXIT_OK


# -- argument parsing -----------------------------------------------------------


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from None


def _pattern(text: str) -> MeshPattern:
    try:
        return parse_pattern(text)
    except InvalidInput as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n-max", type=int)
    common.add_argument("--shards", type=int, default=1, help="worker processes for the oracle")
    common.add_argument(
        "--unsafe-n-max", action="store_true", help="allow exhaustive enumeration at n = 10"
    )
    common.add_argument("--format", dest="fmt", choices=("text", "json", "bfile"), default="text")
    common.add_argument("-v", "--verbose", action="store_true")

    select = argparse.ArgumentParser(add_help=False)
    group = select.add_mutually_exclusive_group()
    group.add_argument("--nr", type=int, help="catalogue number of a length-2 pattern")
    group.add_argument("--pattern", type=_pattern, help='literal such as "tau=12;R=(0,0)(0,1)"')
    select.add_argument("--source", choices=("oracle", "formula"), default="oracle")
    select.add_argument("--order", type=int, default=12, help="series truncation for formulas")

    parser = argparse.ArgumentParser(prog="meshdist", description="Distributions of mesh patterns.")
    sub = parser.add_subparsers(dest="command", required=True)

    d = sub.add_parser("dist", parents=[common, select], help="distribution table")
    d.add_argument("--n", type=int, help="print the single row n")

    b = sub.add_parser("bfile", parents=[common, select], help="OEIS b-file of a column or the triangle")
    b.add_argument("--column", type=int, help="k for the column T(n, k); default is the triangle by rows")
    b.add_argument("--offset", type=int, default=0, help="index of the first value")

    v = sub.add_parser("verify", parents=[common], help="formulas against the oracle")
    v.add_argument("--theorem", action="append", default=[], help="tag such as T3.10 or J6")
    v.add_argument("--conjecture", action="append", default=[], help="tag such as C6.1")
    v.add_argument("--all", action="store_true")

    m = sub.add_parser("bijection", parents=[common], help="the maps f and g between Nr. 48 and Nr. 49")
    m.add_argument("--perm", required=True)
    m.add_argument("--map", dest="which", choices=("f", "g"), default="g")
    m.add_argument("--nr-pair", type=_int_list, default=(48, 49))
    m.add_argument("--n", type=int)
    m.add_argument("--inverse", action="store_true")
    m.add_argument("--parenthesised", action="store_true", help="write letters above 9 as (15)")

    e = sub.add_parser("equidist", parents=[common], help="equidistribution of pattern groups")
    e.add_argument("--group", type=_int_list, action="append", help="e.g. 53,54 (repeatable)")
    e.add_argument("--all", action="store_true", help="every proved and conjectured group (default)")

    sub.add_parser("catalog", parents=[common], help="list the catalogued patterns")
    return parser


def run(argv=None) -> tuple[str, int]:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(message)s")
    cfg = RunConfig(
        command=args.command,
        nr=getattr(args, "nr", None),
        pattern=getattr(args, "pattern", None),
        n=getattr(args, "n", None),
        n_max=args.n_max,
        order=getattr(args, "order", 12),
        source=getattr(args, "source", "oracle"),
        fmt=args.fmt,
        shards=args.shards,
        unsafe=args.unsafe_n_max,
    )
    if args.command == "dist":
        return cmd_dist(cfg)
    if args.command == "bfile":
        return cmd_bfile(cfg, args.column, args.offset)
    if args.command == "verify":
        return cmd_verify(cfg, args.theorem, args.conjecture, args.all)
    if args.command == "bijection":
        if len(args.nr_pair) != 2:
            raise UsageError("--nr-pair takes two numbers")
        return cmd_bijection(cfg, args.perm, args.which, args.nr_pair, args.inverse, args.parenthesised)
    if args.command == "equidist":
        return cmd_equidist(cfg, None if args.all else args.group)
    return cmd_catalog(cfg)


def main(argv=None) -> int:
    try:
        text, status = run(argv)
    except (UsageError, InvalidInput, ResourceLimit, SingularSeries) as exc:
        print(f"meshdist: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
