"""Closed forms, generating functions and recurrences for the catalogued patterns.

Every result is exposed twice where that is cheap: as the series/table it
produces, and through the :data:`THEOREMS` registry that ties a tag such as
``"T3.10"`` to the patterns it covers and a row builder comparable with the
exhaustive oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial
from typing import Callable

from . import catalog
from .patterns import STRONG_FIXED_POINT, MeshPattern, InvalidInput
from .series import (
    Q,
    Poly,
    Series,
    eulerian_series,
    factorial_series,
    reciprocal,
    substitute_x_scale,
    delta_cf_series,
)
from .tables import DistributionTable, trim


def _fact(m: int) -> int:
    # factorials of negative arguments contribute nothing to the sums below
    return factorial(m) if m >= 0 else 0


# ---------------------------------------------------------------------------
# length-1 and classical patterns


def avoid_strong_fixed_points(order: int) -> Series:
    F = factorial_series(order)
    return F / (1 + F.shift(1))


def dist_strong_fixed_points(order: int) -> Series:
    """``F(x) / (1 + x(1-q)F(x))``: permutations by number of strong fixed points."""
    F = factorial_series(order)
    return F / (1 + F.shift(1) * (1 - Q))


def dist_inversions(order: int) -> Series:
    """Coefficient of ``x**n`` is ``(1+q)(1+q+q^2)...(1+...+q^(n-1))``."""
    coeffs = []
    acc = Poly.const(1)
    for n in range(order + 1):
        if n >= 1:
            acc = acc * Poly.from_q([1] * n)
        coeffs.append(acc)
    return Series(coeffs, order)


# ---------------------------------------------------------------------------
# patterns with at most one occurrence, or with forced occurrences

TRIVIAL_NRS = (5, 10, 11, 12, 13, 18, 19, 20, 21, 22)


def _split(n: int, avoiding: int) -> list[int]:
    return [avoiding, factorial(n) - avoiding]


def dist_trivial(nr: int, n: int) -> list[int]:
    """Row ``T_{n,.}`` for one of the patterns with an elementary distribution."""
    if nr not in TRIVIAL_NRS:
        raise InvalidInput(f"Nr. {nr} has no elementary distribution")
    if n < 0:
        raise InvalidInput("n must be non-negative")
    if n < 2:
        return [1]
    f = factorial
    if nr == 5:
        # first letter k gives n-k occurrences
        return [f(n - 1)] * n
    if nr == 10:
        return [f(n) // 2, f(n) // 2]
    if nr == 11:
        return [1, 1] if n == 2 else [f(n)]
    if nr == 12:
        # a leading 1 pairs with each of the other n-1 letters
        row = [0] * n
        row[0] = f(n) - f(n - 1)
        row[n - 1] += f(n - 1)
        return trim(row)
    if nr == 13:
        return _split(n, f(n) - f(n - 2))
    if nr == 18:
        return _split(n, f(n) - sum(f(n - 1) // i for i in range(1, n)))
    if nr == 19:
        return _split(n, f(n) - sum(f(i) * f(n - i - 1) for i in range(n - 1)))
    if nr == 20:
        return _split(n, f(n) - sum(f(i - 1) * f(n - i - 1) for i in range(1, n)))
    if nr == 21:
        contain = sum(
            _fact(l) * _fact(i - l) * _fact(n - i - l) for i in range(1, n) for l in range(1, i + 1)
        )
        return _split(n, f(n) - contain)
    # nr == 22
    contain = sum(f(l) * f(i - l) * f(n - 2 - i) for i in range(n - 1) for l in range(i + 1))
    return _split(n, f(n) - contain)


def nr21_containing(n: int) -> int:
    """Number of n-permutations containing Nr. 21, counted directly.

    With the occurrence ``ab`` fixed, the letters above ``b`` all sit left of
    ``a`` and the letters in ``(a, b)`` split between the two gaps; summing
    over ``a`` gives ``(b-1)!/a`` arrangements for each ``b``.
    """
    total = 0
    for b in range(2, n + 1):
        total += factorial(n - b) * sum(factorial(b - 1) // a for a in range(1, b))
    return total


# ---------------------------------------------------------------------------
# generating functions

GF_NRS = (16, 17, 27, 28, 30, 33, 34, 55, 56, 63, 64, 65)


def _sfp_avoiders(F: Series) -> Series:
    return F / (1 + F.shift(1))


def _gf_16(F: Series) -> Series:
    G = _sfp_avoiders(F)
    N = F.order
    scaled = [substitute_x_scale(G, j) for j in range(N + 1)]
    total = Series.const(0, N)
    for i in range(N + 1):
        term = Series.x(N, i, Poly.monomial(q=comb(i, 2)))
        for j in range(i + 1):
            term = term * scaled[j]
        total = total + term
    return total


def _gf_17(F: Series) -> Series:
    x = Series.x(F.order)
    return (1 - x + x / (1 + F.shift(1) * (1 - Q))) * F


def _gf_27(F: Series) -> Series:
    return F - (F**3).shift(2) * (1 - Q) / (1 + F.shift(1) * (1 - Q))


def _gf_28(F: Series) -> Series:
    return F / (1 + (F * F).shift(2) * (1 - Q))


def _gf_30(F: Series) -> Series:
    x = Series.x(F.order)
    num = (1 + x * (1 - Q)) * F
    return num / (1 + x * (1 - Q) + F.shift(2) * (1 - Q))


def _gf_33(F: Series) -> Series:
    G = _sfp_avoiders(F)
    N = F.order
    total = Series.const(0, N)
    power = G
    for i in range(N + 1):
        total = total + (power * Poly.monomial(q=comb(i, 2))).shift(i)
        power = power * G
    return total


def _gf_34(F: Series) -> Series:
    return F / (1 + F.shift(2) * (1 - Q))


def _gf_55(F: Series) -> Series:
    return F / (1 + (F - 1).shift(1) * (1 - Q))


def _gf_63(F: Series) -> Series:
    return (F * (2 - Q) + (Q - 1)) / (F * (1 - Q) + Q)


_GF = {
    16: _gf_16,
    17: _gf_17,
    27: _gf_27,
    28: _gf_28,
    30: _gf_30,
    33: _gf_33,
    34: _gf_34,
    55: _gf_55,
    56: _gf_55,
    63: _gf_63,
    64: _gf_63,
    65: _gf_63,
}


def dist_gf(nr: int, order: int) -> Series:
    """``F(x, q)`` for pattern ``nr``, exact modulo ``x**(order+1)``."""
    try:
        build = _GF[nr]
    except KeyError:
        raise InvalidInput(f"Nr. {nr} has no generating-function formula") from None
    return build(factorial_series(order))


def _avoid(nr: int, F: Series) -> Series:
    x = Series.x(F.order)
    xF = F.shift(1)
    if nr == 16:
        return (1 + x) * F / (1 + xF)
    if nr == 27:
        return F - (F**3).shift(2) / (1 + xF)
    if nr == 28:
        return F / (1 + (F * F).shift(2))
    if nr == 30:
        return (1 + x) * F / (1 + x + F.shift(2))
    if nr == 33:
        return (1 + 2 * xF) * F / ((1 + xF) * (1 + xF))
    if nr == 34:
        return F / (1 + F.shift(2))
    if nr == 55:
        return F / (1 + (F - 1).shift(1))
    if nr == 56:
        return F / (1 - x + xF)
    if nr in (63, 64, 65):
        return (2 * F - 1) / F
    raise InvalidInput(f"no stated avoidance formula for Nr. {nr}")


AVOIDANCE_NRS = (16, 27, 28, 30, 33, 34, 55, 56, 63, 64, 65)


def avoidance_gf(nr: int, order: int) -> Series:
    """The closed form ``A(x)`` for the avoiders of pattern ``nr``."""
    return _avoid(nr, factorial_series(order))


# ---------------------------------------------------------------------------
# recurrences

RECURRENCE_NRS = (8, 9, 14, 15, 36, 45)


def _get(rows: list[list[int]], n: int, k: int) -> int:
    if n < 0 or k < 0:
        return 0
    row = rows[n]
    return row[k] if k < len(row) else 0


def _stirling_rows(n_max: int) -> list[list[int]]:
    rows = [[1]]
    for n in range(1, n_max + 1):
        if n == 1:
            rows.append([1])
            continue
        row = [factorial(n - 1)]
        row += [_get(rows, n - 1, k - 1) + (n - 1) * _get(rows, n - 1, k) for k in range(1, n)]
        rows.append(row)
    return rows


def _small_ascent_rows(n_max: int) -> list[list[int]]:
    rows = [[1], [1], [1, 1]]
    for n in range(3, n_max + 1):
        T = lambda k: _get(rows, n - 1, k)  # noqa: E731
        rows.append([T(k - 1) + (k + 1) * T(k + 1) + (n - k - 1) * T(k) for k in range(n)])
    return rows[: n_max + 1]


def _nr36_rows(n_max: int) -> list[list[int]]:
    rows = [[1], [1], [1, 1]]
    for n in range(3, n_max + 1):
        rows.append(
            [
                (k + 1) * _get(rows, n - 1, k + 1)
                + (n - k) * _get(rows, n - 1, k)
                - _get(rows, n - 2, k)
                + _get(rows, n - 2, k - 1)
                for k in range(n)
            ]
        )
    return rows[: n_max + 1]


def _nr45_rows(n_max: int) -> list[list[int]]:
    rows = [[1], [1], [1, 1]]
    for n in range(3, n_max + 1):
        T1 = lambda k: _get(rows, n - 1, k)  # noqa: E731
        T2 = lambda k: _get(rows, n - 2, k)  # noqa: E731
        rows.append(
            [
                (k + 1) * T1(k + 1)
                + (n - k - 1) * T1(k)
                + T1(k - 1)
                + (k + 1) * T2(k + 1)
                + (n - 2 * k - 2) * T2(k)
                - (n - k - 1) * T2(k - 1)
                for k in range(n)
            ]
        )
    return rows[: n_max + 1]


def nr45_coupled(n_max: int) -> tuple[list[list[int]], list[list[int]]]:
    """``(T, B)`` for Nr. 45 from the coupled recurrences.

    ``B[n][k]`` counts n-permutations starting with 1 that have k occurrences.
    """
    T: list[list[int]] = [[1], [1]]
    B: list[list[int]] = [[0], [1]]
    for n in range(2, n_max + 1):
        T.append(
            [
                _get(B, n - 1, k - 1)
                + (k + 1) * _get(T, n - 1, k + 1)
                + (n - k) * _get(T, n - 1, k)
                - _get(B, n - 1, k)
                for k in range(n)
            ]
        )
        B.append([_get(B, n - 1, k - 1) + _get(T, n - 1, k) - _get(B, n - 1, k) for k in range(n)])
    return T[: n_max + 1], B[: n_max + 1]


_RECURRENCES: dict[int, Callable[[int], list[list[int]]]] = {
    8: _stirling_rows,
    9: _stirling_rows,
    14: _small_ascent_rows,
    15: _small_ascent_rows,
    36: _nr36_rows,
    45: _nr45_rows,
}


def dist_recurrence(nr: int, n_max: int) -> DistributionTable:
    try:
        build = _RECURRENCES[nr]
    except KeyError:
        raise InvalidInput(f"Nr. {nr} has no recurrence") from None
    if n_max < 1:
        raise InvalidInput("n_max must be at least 1")
    return DistributionTable(f"nr={nr}", build(n_max))


# Polynomial forms of the same recurrences, used as an independent route.
# Polynomials are coefficient lists in x, lowest degree first.


def _padd(*ps: list[int]) -> list[int]:
    out = [0] * max(len(p) for p in ps)
    for p in ps:
        for i, c in enumerate(p):
            out[i] += c
    return out


def _pmul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, c in enumerate(a):
        for j, d in enumerate(b):
            out[i + j] += c * d
    return out


def _pderiv(p: list[int]) -> list[int]:
    return [i * c for i, c in enumerate(p)][1:] or [0]


def rising_product(n: int) -> list[int]:
    """Coefficients of ``(x+1)(x+2)...(x+n-1)``."""
    out = [1]
    for i in range(1, n):
        out = _pmul(out, [i, 1])
    return out


def recurrence_poly_route(nr: int, n_max: int) -> list[list[int]]:
    """Rows from the row-polynomial identities rather than the coefficient recurrences."""
    one_minus_x = [1, -1]
    if nr in (8, 9):
        rows = [[1]] + [rising_product(n) for n in range(1, n_max + 1)]
        return [trim(r) for r in rows]
    rows = [[1], [1], [1, 1]]
    for n in range(3, n_max + 1):
        T1, T2 = rows[n - 1], rows[n - 2]
        if nr in (14, 15):
            new = _padd(_pmul([n - 1, 1], T1), _pmul(one_minus_x, _pderiv(T1)))
        elif nr == 36:
            new = _padd(
                [n * c for c in T1],
                _pmul(one_minus_x, _pderiv(T1)),
                _pmul([-1, 1], T2),
            )
        elif nr == 45:
            new = _padd(
                _pmul([n - 1, 1], T1),
                _pmul(one_minus_x, _pderiv(T1)),
                [(n - 2) * c for c in _pmul(one_minus_x, T2)],
                _pmul(_pmul(one_minus_x, one_minus_x), _pderiv(T2)),
            )
        else:
            raise InvalidInput(f"Nr. {nr} has no recurrence")
        rows.append(trim(new))
    return [trim(r) for r in rows[: n_max + 1]]


# ---------------------------------------------------------------------------
# conjecture and joint distribution


def nr3_cf_sequences(length: int) -> tuple[list[int], list[int]]:
    """``r = (1,0,2,1,3,2,...)`` and ``s = (0,1,0,1,...)``."""
    r = [i // 2 + 1 if i % 2 == 0 else i // 2 for i in range(length)]
    s = [i % 2 for i in range(length)]
    return r, s


def dist_conjecture_nr3(order: int) -> Series:
    """Conjectured ``F(x, q)`` for Nr. 3 (coefficient of ``y^k`` read as ``q^k``)."""
    r, s = nr3_cf_sequences(order + 1)
    return delta_cf_series(r, s, order)


def dist_joint_sfp_des(order: int) -> Series:
    """``F(x,q,t)``: strong fixed points marked by ``q``, descents by ``t``."""
    Ft = eulerian_series(order)
    return Ft / (1 + Ft.shift(1) * (1 - Q))


def avoid_sfp_des(order: int) -> Series:
    Ft = eulerian_series(order)
    return Ft / (1 + Ft.shift(1))


def series_table(s: Series, name: str, n_max: int | None = None, conjectural: bool = False) -> DistributionTable:
    rows = s.q_rows()
    if n_max is not None:
        rows = rows[: n_max + 1]
    return DistributionTable(name, rows, conjectural)


# ---------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class Theorem:
    tag: str
    nrs: tuple[int, ...]
    rows: Callable[[int, int], list[list[int]]]
    conjectural: bool = False

    def patterns(self) -> list[tuple[str, MeshPattern]]:
        if not self.nrs:
            return [("strong-fixed-point", STRONG_FIXED_POINT)]
        return [(f"nr={nr}", catalog.lookup(nr)) for nr in self.nrs]

    def table(self, nr: int | None, n_max: int) -> DistributionTable:
        label = f"nr={nr}" if nr is not None else "strong-fixed-point"
        return DistributionTable(label, self.rows(nr, n_max), self.conjectural)


def _series_rows(make: Callable[[int], Series]):
    return lambda nr, n_max: make(n_max).q_rows()


def _build_registry() -> dict[str, Theorem]:
    reg: dict[str, Theorem] = {}
    reg["T1.1"] = Theorem("T1.1", (), _series_rows(dist_strong_fixed_points))
    reg["E1"] = Theorem("E1", (1,), _series_rows(dist_inversions))
    for i, nr in enumerate(TRIVIAL_NRS, start=1):
        reg[f"T2.{i}"] = Theorem(
            f"T2.{i}", (nr,), lambda nr, n_max: [dist_trivial(nr, n) for n in range(n_max + 1)]
        )
    for i, nr in enumerate(GF_NRS, start=1):
        reg[f"T3.{i}"] = Theorem(f"T3.{i}", (nr,), lambda nr, n_max: dist_gf(nr, n_max).q_rows())
    for i, nrs in enumerate(((8, 9), (14, 15), (36,), (45,)), start=1):
        reg[f"T4.{i}"] = Theorem(f"T4.{i}", nrs, lambda nr, n_max: dist_recurrence(nr, max(n_max, 1)).rows[: n_max + 1])
    reg["C6.1"] = Theorem("C6.1", (3,), _series_rows(dist_conjecture_nr3), conjectural=True)
    return reg


THEOREMS = _build_registry()


def theorem(tag: str) -> Theorem:
    try:
        return THEOREMS[tag.upper()]
    except KeyError:
        raise InvalidInput(f"unknown theorem tag {tag!r}") from None


JOINT_TAG = "J6"


def joint_rows(n_max: int) -> list[list[list[int]]]:
    """``rows[n][k][d]`` from the trivariate series, laid out like the oracle's joint table."""
    out = []
    for c in dist_joint_sfp_des(n_max).coeffs:
        out.append([trim(r) for r in c.grid()] or [[0]])
    return out


def theorem_for(nr: int) -> Theorem | None:
    """The registered result covering catalogue pattern ``nr`` (proved ones first)."""
    for thm in THEOREMS.values():
        if nr in thm.nrs:
            return thm
    return None


def formula_table(nr: int | None, n_max: int) -> DistributionTable:
    """Formula rows for catalogue pattern ``nr`` (``None`` means strong fixed points)."""
    if nr is None:
        return THEOREMS["T1.1"].table(None, n_max)
    thm = theorem_for(nr)
    if thm is None:
        raise InvalidInput(f"no formula is known for Nr. {nr}")
    return thm.table(nr, n_max)
