"""Truncated formal power series with exact rational coefficients.

Exponents of q live on a half-integer grid: the integer key ``e`` stands for
``q**(e/2)``.  A :class:`QSeries` knows its truncation order ``order2`` (also
in half units) and stores only nonzero coefficients, so ``==`` is structural.

A :class:`BiSeries` is a polynomial in a second variable (lambda) truncated at
``lambda_order`` whose coefficients are QSeries of one common q-order.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Mapping

__all__ = [
    "QSeries",
    "BiSeries",
    "qs_mul",
    "qs_exp",
    "qs_log",
    "lambda_coeff",
    "format_rational",
]


def format_rational(x: Fraction) -> str:
    """Render as ``"p/q"`` (or ``"p"`` for integers)."""
    return str(Fraction(x))


def _check_order2(order2: int) -> int:
    if not isinstance(order2, int) or order2 < 0:
        raise ValueError(f"truncation order must be a nonnegative int, got {order2!r}")
    return order2


class QSeries:
    """Series ``sum c_e q^(e/2)`` truncated above ``q^(order2/2)``.

    Values are immutable; arithmetic returns new series.  Both operands of a
    binary operation must share ``order2``.
    """

    __slots__ = ("order2", "_c")

    def __init__(self, coeffs: Mapping[int, object] | None = None, order2: int = 0):
        self.order2 = _check_order2(order2)
        c = {}
        for e, v in (coeffs or {}).items():
            if e < 0:
                raise ValueError(f"negative exponent {e}")
            if e > order2:
                continue
            v = Fraction(v)
            if v:
                c[int(e)] = v
        self._c = c

    @classmethod
    def _raw(cls, c: dict, order2: int) -> "QSeries":
        s = object.__new__(cls)
        s.order2 = order2
        s._c = c
        return s

    # constructors -------------------------------------------------------

    @classmethod
    def from_list(cls, coeffs: Iterable, N: int) -> "QSeries":
        """Integer-grid series from ``[a_0, a_1, ...]`` truncated at ``q^N``."""
        return cls({2 * n: a for n, a in enumerate(coeffs)}, 2 * N)

    @classmethod
    def zero(cls, order2: int) -> "QSeries":
        return cls._raw({}, _check_order2(order2))

    @classmethod
    def one(cls, order2: int) -> "QSeries":
        return cls({0: 1}, order2)

    @classmethod
    def monomial(cls, e: int, c, order2: int) -> "QSeries":
        return cls({e: c}, order2)

    # access -------------------------------------------------------------

    @property
    def N(self) -> int:
        """Truncation order in whole powers of q (rounded down)."""
        return self.order2 // 2

    def coeff2(self, e: int) -> Fraction:
        """Coefficient of ``q^(e/2)``."""
        if e > self.order2:
            raise IndexError(f"q^({e}/2) is beyond the truncation order")
        return self._c.get(e, Fraction(0))

    def __getitem__(self, n: int) -> Fraction:
        """Coefficient of ``q^n`` for integer ``n``."""
        return self.coeff2(2 * n)

    def items(self):
        """Sorted ``(e, coeff)`` pairs of nonzero terms."""
        return sorted(self._c.items())

    def to_list(self) -> list[Fraction]:
        """Integer-grid coefficients ``[a_0, ..., a_N]``."""
        self._require_integer_grid()
        return [self._c.get(2 * n, Fraction(0)) for n in range(self.N + 1)]

    def is_integer_grid(self) -> bool:
        return all(e % 2 == 0 for e in self._c)

    def _require_integer_grid(self):
        if not self.is_integer_grid():
            raise ValueError("series has half-integer exponents")

    def __bool__(self):
        return bool(self._c)

    def __len__(self):
        return len(self._c)

    def __eq__(self, other):
        if isinstance(other, QSeries):
            return self.order2 == other.order2 and self._c == other._c
        return NotImplemented

    def __hash__(self):
        return hash((self.order2, frozenset(self._c.items())))

    def __repr__(self):
        if not self._c:
            body = "0"
        else:
            parts = []
            for e, c in self.items():
                mono = "" if e == 0 else ("q" if e == 2 else f"q^{e // 2}" if e % 2 == 0 else f"q^({e}/2)")
                parts.append(f"{c}" if not mono else (mono if c == 1 else f"{c}*{mono}"))
            body = " + ".join(parts)
        return f"QSeries({body} + O(q^({self.order2 + 1}/2)))"

    # arithmetic ---------------------------------------------------------

    def _same_order(self, other: "QSeries"):
        if self.order2 != other.order2:
            raise ValueError(f"truncation orders differ: {self.order2} vs {other.order2}")

    def __add__(self, other):
        if not isinstance(other, QSeries):
            other = QSeries({0: other}, self.order2)
        self._same_order(other)
        c = dict(self._c)
        for e, v in other._c.items():
            s = c.get(e, 0) + v
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return QSeries._raw(c, self.order2)

    __radd__ = __add__

    def __neg__(self):
        return QSeries._raw({e: -v for e, v in self._c.items()}, self.order2)

    def __sub__(self, other):
        if not isinstance(other, QSeries):
            other = QSeries({0: other}, self.order2)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, k) -> "QSeries":
        k = Fraction(k)
        if not k:
            return QSeries.zero(self.order2)
        return QSeries._raw({e: v * k for e, v in self._c.items()}, self.order2)

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return qs_mul(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = QSeries.one(self.order2)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift2(self, e: int) -> "QSeries":
        """Multiply by ``q^(e/2)`` (``e >= 0``), truncating."""
        o = self.order2
        return QSeries._raw({k + e: v for k, v in self._c.items() if k + e <= o}, o)

    def truncate(self, order2: int) -> "QSeries":
        if order2 > self.order2:
            raise ValueError("cannot raise the truncation order")
        return QSeries._raw({e: v for e, v in self._c.items() if e <= order2}, order2)

    # serialization ------------------------------------------------------

    def to_dict(self) -> dict:
        return {"order2": self.order2, "coeffs": [[e, format_rational(c)] for e, c in self.items()]}

    @classmethod
    def from_dict(cls, d: Mapping) -> "QSeries":
        return cls({int(e): Fraction(c) for e, c in d["coeffs"]}, int(d["order2"]))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_json(cls, s: str) -> "QSeries":
        return cls.from_dict(json.loads(s))


def qs_mul(a: QSeries, b: QSeries) -> QSeries:
    """Truncated product (Cauchy convolution on the half-grid)."""
    a._same_order(b)
    o = a.order2
    out: dict[int, Fraction] = {}
    bi = b.items()
    for ea, ca in a.items():
        lim = o - ea
        for eb, cb in bi:
            if eb > lim:
                break
            e = ea + eb
            out[e] = out.get(e, 0) + ca * cb
    return QSeries._raw({e: v for e, v in out.items() if v}, o)


class BiSeries:
    """``sum_k T_k(q) lambda^k`` for ``0 <= k <= lambda_order``."""

    __slots__ = ("lambda_order", "order2", "terms")

    def __init__(self, terms: Iterable[QSeries], lambda_order: int | None = None, order2: int | None = None):
        terms = list(terms)
        if lambda_order is None:
            lambda_order = len(terms) - 1
        if order2 is None:
            if not terms:
                raise ValueError("order2 is required for an empty term list")
            order2 = terms[0].order2
        if lambda_order < 0:
            raise ValueError("lambda_order must be >= 0")
        for t in terms:
            if t.order2 != order2:
                raise ValueError("all lambda-coefficients must share one q-order")
        terms = terms[: lambda_order + 1]
        terms += [QSeries.zero(order2)] * (lambda_order + 1 - len(terms))
        self.lambda_order = lambda_order
        self.order2 = order2
        self.terms = tuple(terms)

    @classmethod
    def zero(cls, lambda_order: int, order2: int) -> "BiSeries":
        return cls([], lambda_order, order2)

    @classmethod
    def one(cls, lambda_order: int, order2: int) -> "BiSeries":
        return cls([QSeries.one(order2)], lambda_order, order2)

    @classmethod
    def from_qseries(cls, f: QSeries, lambda_order: int = 0) -> "BiSeries":
        return cls([f], lambda_order, f.order2)

    @classmethod
    def from_coeffs(cls, coeffs: Mapping[tuple[int, int], object], lambda_order: int, order2: int) -> "BiSeries":
        """Build from ``{(k, e): c}`` meaning ``c * lambda^k q^(e/2)``."""
        per_k: dict[int, dict[int, object]] = {}
        for (k, e), c in coeffs.items():
            if k <= lambda_order:
                per_k.setdefault(k, {})[e] = c
        return cls([QSeries(per_k.get(k, {}), order2) for k in range(lambda_order + 1)], lambda_order, order2)

    def __getitem__(self, k: int) -> QSeries:
        return lambda_coeff(self, k)

    def constant_term(self) -> Fraction:
        return self.terms[0].coeff2(0)

    def coeff(self, k: int, n: int) -> Fraction:
        """Coefficient of ``lambda^k q^n`` (integer ``n``)."""
        return self.terms[k][n]

    def __eq__(self, other):
        if isinstance(other, BiSeries):
            return (self.lambda_order, self.order2, self.terms) == (other.lambda_order, other.order2, other.terms)
        return NotImplemented

    def __hash__(self):
        return hash((self.lambda_order, self.order2, self.terms))

    def __bool__(self):
        return any(self.terms)

    def __repr__(self):
        return f"BiSeries(lambda_order={self.lambda_order}, order2={self.order2}, terms={list(self.terms)!r})"

    def _same_shape(self, other: "BiSeries"):
        if (self.lambda_order, self.order2) != (other.lambda_order, other.order2):
            raise ValueError("BiSeries truncation orders differ")

    def __add__(self, other):
        if not isinstance(other, BiSeries):
            other = BiSeries([QSeries({0: other}, self.order2)], self.lambda_order, self.order2)
        self._same_shape(other)
        return BiSeries([a + b for a, b in zip(self.terms, other.terms)], self.lambda_order, self.order2)

    __radd__ = __add__

    def __neg__(self):
        return BiSeries([-t for t in self.terms], self.lambda_order, self.order2)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return BiSeries([t.scale(other) for t in self.terms], self.lambda_order, self.order2)
        if isinstance(other, QSeries):
            return BiSeries([t * other for t in self.terms], self.lambda_order, self.order2)
        if not isinstance(other, BiSeries):
            return NotImplemented
        self._same_shape(other)
        L = self.lambda_order
        out = [QSeries.zero(self.order2) for _ in range(L + 1)]
        for i, a in enumerate(self.terms):
            if not a:
                continue
            for j in range(L + 1 - i):
                b = other.terms[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return BiSeries(out, L, self.order2)

    __rmul__ = __mul__

    def mul_lambda_poly(self, poly) -> "BiSeries":
        """Multiply by ``sum_i poly[i] lambda^i`` with scalar coefficients."""
        L = self.lambda_order
        poly = [Fraction(p) for p in poly]
        out = []
        for k in range(L + 1):
            acc = QSeries.zero(self.order2)
            for i in range(min(k, len(poly) - 1) + 1):
                if poly[i] and self.terms[k - i]:
                    acc = acc + self.terms[k - i].scale(poly[i])
            out.append(acc)
        return BiSeries(out, L, self.order2)

    def shift2(self, e: int) -> "BiSeries":
        return BiSeries([t.shift2(e) for t in self.terms], self.lambda_order, self.order2)

    def truncate(self, lambda_order: int | None = None, order2: int | None = None) -> "BiSeries":
        L = self.lambda_order if lambda_order is None else lambda_order
        o = self.order2 if order2 is None else order2
        if L > self.lambda_order or o > self.order2:
            raise ValueError("cannot raise truncation orders")
        return BiSeries([t.truncate(o) for t in self.terms[: L + 1]], L, o)

    def is_integer_grid(self) -> bool:
        return all(t.is_integer_grid() for t in self.terms)

    def to_dict(self) -> dict:
        return {"lambda_order": self.lambda_order, "order2": self.order2, "terms": [t.to_dict() for t in self.terms]}

    @classmethod
    def from_dict(cls, d: Mapping) -> "BiSeries":
        return cls([QSeries.from_dict(t) for t in d["terms"]], int(d["lambda_order"]), int(d["order2"]))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


def lambda_coeff(a: BiSeries, k: int) -> QSeries:
    """The q-series multiplying ``lambda^k``."""
    if not 0 <= k <= a.lambda_order:
        raise IndexError(f"lambda power {k} outside 0..{a.lambda_order}")
    return a.terms[k]


# exp and log ----------------------------------------------------------------
#
# Both use the Euler-operator recurrence D(exp a) = exp(a) * D(a), where D
# multiplies lambda^k q^(e/2) by (k + e).  The truncation box is closed under
# taking smaller exponents, so every computed coefficient is exact.


def _sparse_grid(a: BiSeries) -> list[list[tuple[int, Fraction]]]:
    return [t.items() for t in a.terms]


def _as_bi(a) -> tuple[BiSeries, bool]:
    if isinstance(a, QSeries):
        return BiSeries.from_qseries(a), True
    return a, False


def qs_exp(a):
    """``exp(a)`` for a series with zero constant term.

    Accepts a BiSeries, or a QSeries (treated as lambda-free).
    """
    a, unwrap = _as_bi(a)
    if a.constant_term() != 0:
        raise ValueError("exp needs a series with zero constant term")
    L, o = a.lambda_order, a.order2
    weighted = [[(e, (k + e) * c) for e, c in row] for k, row in enumerate(_sparse_grid(a))]
    F = [[Fraction(0)] * (o + 1) for _ in range(L + 1)]
    F[0][0] = Fraction(1)
    for k in range(L + 1):
        for e in range(o + 1):
            if k == 0 and e == 0:
                continue
            s = 0
            for k1 in range(k + 1):
                Fk = F[k - k1]
                for e1, wc in weighted[k1]:
                    if e1 > e:
                        break
                    f = Fk[e - e1]
                    if f:
                        s += wc * f
            if s:
                F[k][e] = Fraction(s) / (k + e)
    out = BiSeries([QSeries(dict(enumerate(row)), o) for row in F], L, o)
    return out.terms[0] if unwrap else out


def qs_log(a):
    """``log(a)`` for a series with constant term 1."""
    a, unwrap = _as_bi(a)
    if a.constant_term() != 1:
        raise ValueError("log needs a series with constant term 1")
    L, o = a.lambda_order, a.order2
    f_rows = _sparse_grid(a)
    A = [[Fraction(0)] * (o + 1) for _ in range(L + 1)]
    for k in range(L + 1):
        for e in range(o + 1):
            if k == 0 and e == 0:
                continue
            s = 0
            # sum over nonzero f[k2][e2] with (k2, e2) != (0, 0), pairing a[k-k2][e-e2]
            for k2 in range(k + 1):
                Ak = A[k - k2]
                for e2, fc in f_rows[k2]:
                    if e2 > e:
                        break
                    if k2 == 0 and e2 == 0:
                        continue
                    k1, e1 = k - k2, e - e2
                    if k1 == 0 and e1 == 0:
                        continue
                    av = Ak[e1]
                    if av:
                        s += (k1 + e1) * av * fc
            fke = a.terms[k].coeff2(e) if e <= o else 0
            val = fke - Fraction(s) / (k + e)
            if val:
                A[k][e] = val
    out = BiSeries([QSeries(dict(enumerate(row)), o) for row in A], L, o)
    return out.terms[0] if unwrap else out
