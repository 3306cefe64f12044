"""Exact truncated power series in ``x`` with polynomial coefficients in ``q, t``.

A :class:`Poly` is an integer polynomial in two variables stored sparsely as
``{(deg_q, deg_t): coeff}``. A :class:`Series` holds ``order + 1`` such
coefficients, one per power of ``x``, and all arithmetic is exact modulo
``x**(order + 1)``.

The second variable ``t`` marks descents; the continued-fraction evaluator
reuses the ``q`` slot for its triangle variable ``y``.
"""

from __future__ import annotations

import json
from math import factorial
from typing import Iterable, Mapping, Sequence

from .patterns import InvalidInput

DEFAULT_ORDER = 12


class OrderMismatch(InvalidInput):
    pass


class SingularSeries(ValueError):
    pass


class Poly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, c: int) -> Poly:
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, c: int = 1, q: int = 0, t: int = 0) -> Poly:
        return cls({(q, t): c})

    @classmethod
    def from_q(cls, coeffs: Sequence[int]) -> Poly:
        return cls({(k, 0): c for k, c in enumerate(coeffs)})

    @staticmethod
    def coerce(value) -> Poly:
        return value if isinstance(value, Poly) else Poly.const(value)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return self.terms == Poly.coerce(other).terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in Poly.coerce(other).terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-Poly.coerce(other))

    def __rsub__(self, other):
        return Poly.coerce(other) - self

    def __mul__(self, other):
        other = Poly.coerce(other)
        out: dict[tuple[int, int], int] = {}
        for (a, b), c in self.terms.items():
            for (d, e), g in other.terms.items():
                key = (a + d, b + e)
                out[key] = out.get(key, 0) + c * g
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Poly:
        out = Poly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def shift_q(self, k: int) -> Poly:
        return Poly({(a + k, b): c for (a, b), c in self.terms.items()})

    def deg_q(self) -> int:
        return max((a for a, _ in self.terms), default=-1)

    def deg_t(self) -> int:
        return max((b for _, b in self.terms), default=-1)

    def at_q_one(self) -> Poly:
        return self.subs(q=1)

    def subs(self, q: int | None = None, t: int | None = None) -> Poly:
        out: dict[tuple[int, int], int] = {}
        for (a, b), c in self.terms.items():
            if q is not None:
                c, a = c * q**a, 0
            if t is not None:
                c, b = c * t**b, 0
            out[(a, b)] = out.get((a, b), 0) + c
        return Poly(out)

    def value(self) -> int:
        """Integer value at ``q = t = 1``."""
        return sum(self.terms.values())

    def q_coeffs(self) -> list[int]:
        """Coefficients of ``q^0 .. q^d`` with ``t`` set to 1."""
        vec = [0] * (self.deg_q() + 1)
        for (a, _), c in self.terms.items():
            vec[a] += c
        return vec

    def t_coeffs(self) -> list[int]:
        vec = [0] * (self.deg_t() + 1)
        for (_, b), c in self.terms.items():
            vec[b] += c
        return vec

    def grid(self) -> list[list[int]]:
        """Dense ``[deg_q][deg_t]`` coefficient matrix."""
        rows = [[0] * (self.deg_t() + 1) for _ in range(self.deg_q() + 1)]
        for (a, b), c in self.terms.items():
            rows[a][b] = c
        return rows

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, b), c in sorted(self.terms.items()):
            mono = "*".join(
                s for s in (_power("q", a), _power("t", b)) if s
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _power(var: str, k: int) -> str:
    if k == 0:
        return ""
    return var if k == 1 else f"{var}^{k}"


Q = Poly.monomial(q=1)
T = Poly.monomial(t=1)
ONE = Poly.const(1)
ZERO = Poly()


class Series:
    """Power series in ``x`` truncated after ``x**order``."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable, order: int):
        coeffs = [Poly.coerce(c) for c in coeffs][: order + 1]
        coeffs += [ZERO] * (order + 1 - len(coeffs))
        self.order = order
        self.coeffs = tuple(coeffs)

    @classmethod
    def const(cls, c, order: int) -> Series:
        return cls([c], order)

    @classmethod
    def x(cls, order: int, power: int = 1, coeff=1) -> Series:
        return cls([ZERO] * power + [coeff], order)

    def __getitem__(self, n: int) -> Poly:
        return self.coeffs[n]

    def __len__(self):
        return self.order + 1

    def _check(self, other) -> Series:
        if not isinstance(other, Series):
            return Series.const(other, self.order)
        if other.order != self.order:
            raise OrderMismatch(f"orders differ: {self.order} vs {other.order}")
        return other

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __add__(self, other):
        other = self._check(other)
        return Series([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    __radd__ = __add__

    def __neg__(self):
        return Series([-a for a in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Poly)):
            return Series([a * other for a in self.coeffs], self.order)
        other = self._check(other)
        out = []
        for n in range(self.order + 1):
            acc = ZERO
            for i in range(n + 1):
                if self.coeffs[i] and other.coeffs[n - i]:
                    acc = acc + self.coeffs[i] * other.coeffs[n - i]
            out.append(acc)
        return Series(out, self.order)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Series:
        out = Series.const(1, self.order)
        for _ in range(k):
            out = out * self
        return out

    def __truediv__(self, other):
        if isinstance(other, (int, Poly)):
            other = Series.const(other, self.order)
        return self * reciprocal(self._check(other))

    def __rtruediv__(self, other):
        return self._check(other) * reciprocal(self)

    def shift(self, k: int) -> Series:
        """Multiply by ``x**k``."""
        return Series([ZERO] * k + list(self.coeffs), self.order)

    def q_rows(self) -> list[list[int]]:
        """Per power of ``x``, the ``q`` coefficient vector (``t`` set to 1)."""
        return [c.q_coeffs() or [0] for c in self.coeffs]

    def values(self) -> list[int]:
        return [c.value() for c in self.coeffs]

    def __repr__(self):
        return f"Series(order={self.order}, {self})"

    def __str__(self):
        return format_series(self)


def _as_unit(c: Poly) -> int:
    if c == ONE:
        return 1
    if c == Poly.const(-1):
        return -1
    raise SingularSeries(f"constant term {c} is not a unit")


def add(a: Series, b: Series) -> Series:
    return a + b


def sub(a: Series, b: Series) -> Series:
    return a - b


def mul(a: Series, b: Series) -> Series:
    return a * b


def reciprocal(a: Series) -> Series:
    """Inverse of ``a`` modulo ``x**(order+1)``; the constant term must be 1 (or -1)."""
    u = _as_unit(a[0])
    inv = [Poly.const(u)]
    for n in range(1, a.order + 1):
        acc = ZERO
        for i in range(1, n + 1):
            if a[i] and inv[n - i]:
                acc = acc + a[i] * inv[n - i]
        inv.append(-acc * u)
    return Series(inv, a.order)


def substitute_x_scale(a: Series, j: int) -> Series:
    """``a(q**j * x)``."""
    if j < 0:
        raise InvalidInput("scale exponent must be non-negative")
    return Series([c.shift_q(j * n) for n, c in enumerate(a.coeffs)], a.order)


def eval_q_one(a: Series) -> Series:
    return Series([c.subs(q=1) for c in a.coeffs], a.order)


def eval_t_one(a: Series) -> Series:
    return Series([c.subs(t=1) for c in a.coeffs], a.order)


def factorial_series(order: int) -> Series:
    """``sum n! x**n``."""
    if order < 0:
        raise InvalidInput("order must be non-negative")
    return Series([factorial(n) for n in range(order + 1)], order)


def eulerian_polynomials(order: int) -> list[Poly]:
    """``A_0 .. A_order`` in ``t`` via ``A(n,k) = (k+1)A(n-1,k) + (n-k)A(n-1,k-1)``."""
    rows = [[1], [1]]
    for n in range(2, order + 1):
        prev = rows[-1] + [0]
        rows.append([(k + 1) * prev[k] + (n - k) * (prev[k - 1] if k else 0) for k in range(n)])
    return [Poly({(0, k): c for k, c in enumerate(r)}) for r in rows[: order + 1]]


def eulerian_series(order: int) -> Series:
    """``sum A_n(t) x**n`` with ``A_n`` the Eulerian polynomials (descents)."""
    return Series(eulerian_polynomials(order), order)


def delta_cf_series(r: Sequence[int], s: Sequence[int], order: int) -> Series:
    """Triangle ``r DELTA s`` as a series in ``x`` with ``y`` carried by the ``q`` slot.

    Evaluates ``1/(1 - (r0 x + s0 x y)/(1 - (r1 x + s1 x y)/(1 - ...)))``
    bottom-up with ``order + 1`` levels; level ``k`` first contributes at
    ``x**(k+1)`` so the truncation is exact.
    """
    depth = order + 1
    if len(r) < depth or len(s) < depth:
        raise InvalidInput(f"need at least {depth} terms of r and s")
    tail = Series.const(1, order)
    for k in reversed(range(depth)):
        step = Series.x(order, 1, Poly({(0, 0): r[k], (1, 0): s[k]}))
        tail = reciprocal(1 - step * tail)
    return tail


def format_series(a: Series) -> str:
    parts = []
    for n, c in enumerate(a.coeffs):
        if not c:
            continue
        coeff = str(c)
        if len(c.terms) > 1:
            coeff = f"({coeff})"
        if n == 0:
            parts.append(coeff)
        else:
            xs = "x" if n == 1 else f"x^{n}"
            parts.append(xs if coeff == "1" else f"{coeff}*{xs}")
    return " + ".join(parts) if parts else "0"


def to_json(a: Series) -> str:
    """``[n][k]`` coefficient matrix in ``q`` (``t`` summed out)."""
    return json.dumps({"order": a.order, "coeffs": a.q_rows()})


def from_json(text: str) -> Series:
    data = json.loads(text)
    return Series([Poly.from_q(row) for row in data["coeffs"]], data["order"])
