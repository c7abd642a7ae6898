"""Eisenstein series, the q-derivation, and recognition in C[E2, E4, E6].

All series are integer-grid :class:`~ellqm.series.QSeries`.  Weights are
graded by ``deg E2 = 2``, ``deg E4 = 4``, ``deg E6 = 6``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, isqrt

from .linalg import SingularMatrixError, solve
from .series import QSeries, format_rational

__all__ = [
    "bernoulli",
    "sigma",
    "eisenstein",
    "qd_derive",
    "ramanujan_residuals",
    "serre_derivative",
    "weight_monomials",
    "QMPolynomial",
    "qm_eval",
    "RecognitionReport",
    "recognize",
    "MIN_EXTRA_COEFFS",
]

# coefficients that must match beyond the ones used to solve
MIN_EXTRA_COEFFS = 10


@lru_cache(maxsize=None)
def _bernoulli_all(n: int) -> tuple[Fraction, ...]:
    B = [Fraction(1)]
    for m in range(1, n + 1):
        # sum_{j=0}^{m} C(m+1, j) B_j = 0
        s = sum(comb(m + 1, j) * B[j] for j in range(m))
        B.append(-s / (m + 1))
    return tuple(B)


def bernoulli(k: int) -> Fraction:
    """Bernoulli number ``B_k`` for even ``k >= 2``."""
    if not isinstance(k, int) or k < 2 or k % 2:
        raise ValueError(f"bernoulli() needs an even k >= 2, got {k!r}")
    return _bernoulli_all(k)[k]


def sigma(i: int, n: int) -> int:
    """Sum of ``d**i`` over the positive divisors ``d`` of ``n``."""
    if n < 1:
        raise ValueError(f"sigma() needs n >= 1, got {n}")
    s = 0
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            s += d**i
            e = n // d
            if e != d:
                s += e**i
    return s


@lru_cache(maxsize=64)
def eisenstein(k: int, N: int) -> QSeries:
    """Normalized Eisenstein series ``E_k`` (constant term 1) to ``q^N``."""
    if k not in (2, 4, 6):
        raise ValueError(f"only E2, E4, E6 are supported, got k={k!r}")
    c = -Fraction(2 * k) / bernoulli(k)
    return QSeries.from_list([1] + [c * sigma(k - 1, n) for n in range(1, N + 1)], N)


def qd_derive(f: QSeries) -> QSeries:
    """``q d/dq``: multiplies the ``q^n`` coefficient by ``n``."""
    if not f.is_integer_grid():
        raise ValueError("q-derivation is only defined here on integer-grid series")
    return QSeries({e: c * (e // 2) for e, c in f.items()}, f.order2)


def ramanujan_residuals(N: int) -> tuple[QSeries, QSeries, QSeries]:
    """The three Ramanujan identities as residual series (all zero when they hold)."""
    if N < 1:
        raise ValueError("N must be >= 1")
    E2, E4, E6 = eisenstein(2, N), eisenstein(4, N), eisenstein(6, N)
    r2 = qd_derive(E2) - (E2 * E2 - E4).scale(Fraction(1, 12))
    r4 = qd_derive(E4) - (E2 * E4 - E6).scale(Fraction(1, 3))
    r6 = qd_derive(E6) - (E2 * E6 - E4 * E4).scale(Fraction(1, 2))
    return r2, r4, r6


def serre_derivative(f: QSeries, k: int) -> QSeries:
    """``f' - (k/12) E2 f`` at the truncation order of ``f``."""
    E2 = eisenstein(2, f.N)
    if E2.order2 != f.order2:
        E2 = QSeries(dict(E2.items()), f.order2)
    return qd_derive(f) - (E2 * f).scale(Fraction(k, 12))


def weight_monomials(w: int) -> list[tuple[int, int, int]]:
    """Exponent triples ``(a, b, c)`` with ``2a + 4b + 6c = w``, lexicographic."""
    if w < 0 or w % 2:
        return []
    h = w // 2
    return [(a, b, c) for a in range(h + 1) for b in range((h - a) // 2 + 1) for c in range(h + 1)
            if a + 2 * b + 3 * c == h]


@dataclass(frozen=True)
class QMPolynomial:
    """A weighted-homogeneous polynomial in E2, E4, E6."""

    weight: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (a, b, c), v in self.terms.items():
            if 2 * a + 4 * b + 6 * c != self.weight:
                raise ValueError(f"monomial {(a, b, c)} does not have weight {self.weight}")
            v = Fraction(v)
            if v:
                clean[(a, b, c)] = v
        object.__setattr__(self, "terms", clean)

    def __eq__(self, other):
        if not isinstance(other, QMPolynomial):
            return NotImplemented
        return self.weight == other.weight and self.terms == other.terms

    def __hash__(self):
        return hash((self.weight, frozenset(self.terms.items())))

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for (a, b, c), v in sorted(self.terms.items()):
            mono = "*".join(f"E{2 * i}" + (f"^{p}" if p > 1 else "") for i, p in ((1, a), (2, b), (3, c)) if p)
            out.append(f"({v})*{mono}" if mono else f"({v})")
        return " + ".join(out)

    def to_dict(self) -> dict:
        return {"weight": self.weight,
                "terms": [[a, b, c, format_rational(v)] for (a, b, c), v in sorted(self.terms.items())]}

    @classmethod
    def from_dict(cls, d) -> "QMPolynomial":
        return cls(int(d["weight"]), {(a, b, c): Fraction(v) for a, b, c, v in d["terms"]})

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


def _monomial_series(mono: tuple[int, int, int], N: int) -> QSeries:
    a, b, c = mono
    return (eisenstein(2, N) ** a) * (eisenstein(4, N) ** b) * (eisenstein(6, N) ** c)


def qm_eval(p: QMPolynomial, N: int) -> QSeries:
    """The q-expansion of ``p`` truncated at ``q^N``."""
    out = QSeries.zero(2 * N)
    for mono, v in p.terms.items():
        out = out + _monomial_series(mono, N).scale(v)
    return out


@dataclass
class RecognitionReport:
    poly: QMPolynomial
    solve_orders: list[int]
    residual_orders: list[int]
    residual_max: Fraction
    first_mismatch: int | None = None

    @property
    def ok(self) -> bool:
        return self.residual_max == 0

    def to_dict(self) -> dict:
        return {
            "poly": self.poly.to_dict(),
            "solve_orders": self.solve_orders,
            "residual_orders": self.residual_orders,
            "residual_max": format_rational(self.residual_max),
            "first_mismatch": self.first_mismatch,
            "pass": self.ok,
        }


def recognize(f: QSeries, w: int) -> RecognitionReport:
    """Write ``f`` as a weight-``w`` polynomial in E2, E4, E6.

    The coefficients are fixed by the first ``dim`` q-coefficients (``dim`` the
    number of weight-``w`` monomials); every further coefficient up to the
    truncation order is then checked.  A mismatch gives a report with
    ``ok == False``; it is not an exception.
    """
    if not f.is_integer_grid():
        raise ValueError("recognize() needs an integer-grid series")
    monos = weight_monomials(w)
    dim = len(monos)
    N = f.N
    if N < dim + MIN_EXTRA_COEFFS:
        raise ValueError(f"need q-order >= {dim + MIN_EXTRA_COEFFS} for weight {w}, got {N}")
    fl = f.to_list()
    basis = [_monomial_series(m, N).to_list() for m in monos]
    if dim == 0:
        coeffs = []
    else:
        A = [[basis[j][n] for j in range(dim)] for n in range(dim)]
        try:
            coeffs = solve(A, fl[:dim])
        except SingularMatrixError as exc:
            raise RuntimeError(f"weight-{w} monomial basis is degenerate on its first {dim} coefficients") from exc
    poly = QMPolynomial(w, dict(zip(monos, coeffs)))
    residual_max = Fraction(0)
    first = None
    for n in range(dim, N + 1):
        r = fl[n] - sum(c * basis[j][n] for j, c in enumerate(coeffs))
        if r and first is None:
            first = n
        residual_max = max(residual_max, abs(r))
    return RecognitionReport(poly, list(range(dim)), list(range(dim, N + 1)), residual_max, first)
