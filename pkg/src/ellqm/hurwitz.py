"""Simply branched covers of an elliptic curve: partition functions and counts.

``zhat`` is the generating function of possibly disconnected covers,
``sum_d sum_{lam |- d} exp(c(lam) * lambda) q^d`` with ``c`` the content sum,
and ``z_connected = log(1 + zhat)``.  The coefficient of ``lambda^(2g-2)`` in
``z_connected`` is ``F_g / (2g-2)!``.

The genus-one series ``F_1`` carries an extra ``-(1/24) log q`` which does not
fit in a power series ring; here genus one is visible only through the
``lambda^0`` part of ``z_connected`` (whose ``q^d`` coefficient is
``sigma_1(d)/d``).
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .series import BiSeries, QSeries, format_rational, lambda_coeff, qs_exp, qs_log
from .symgroup import frobenius_eigenvalue, partitions

__all__ = ["eigenvalue_multiset", "zhat", "z_connected", "f_g", "HurwitzTable", "n_table"]


def eigenvalue_multiset(d: int) -> Counter:
    """Eigenvalues of the degree-``d`` class matrix with multiplicity."""
    return Counter(int(frobenius_eigenvalue(lam)) for lam in partitions(d))


def zhat(N_q: int, M_lambda: int) -> BiSeries:
    """Disconnected partition function to ``q^N_q`` and ``lambda^M_lambda``."""
    coeffs = {}
    for d in range(1, N_q + 1):
        eig = eigenvalue_multiset(d)
        for k in range(M_lambda + 1):
            s = sum(m * a**k for a, m in eig.items())
            if s:
                coeffs[k, 2 * d] = Fraction(s, factorial(k))
    return BiSeries.from_coeffs(coeffs, M_lambda, 2 * N_q)


def z_connected(N_q: int, M_lambda: int) -> BiSeries:
    """Connected partition function ``log(1 + zhat)``."""
    return qs_log(1 + zhat(N_q, M_lambda))


def f_g(g: int, N_q: int) -> QSeries:
    """``F_g(q) = sum_d N_{g,d} q^d`` for ``g >= 2``."""
    if g < 2:
        raise ValueError("f_g needs g >= 2 (genus one has a log q term)")
    b = 2 * g - 2
    return lambda_coeff(z_connected(N_q, b), b).scale(factorial(b))


@dataclass(frozen=True)
class HurwitzTable:
    g: int
    rows: tuple[tuple[int, Fraction], ...]

    def to_dict(self) -> dict:
        return {"g": self.g, "rows": [[d, format_rational(n)] for d, n in self.rows]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


def n_table(g: int, D: int) -> HurwitzTable:
    """Weighted cover counts ``N_{g,d}`` for ``1 <= d <= D``."""
    if D < 1:
        raise ValueError("D must be >= 1")
    F = f_g(g, D)
    return HurwitzTable(g, tuple((d, F[d]) for d in range(1, D + 1)))


def exp_check(N_q: int, M_lambda: int) -> bool:
    """``exp(z_connected) - 1 == zhat`` exactly."""
    return qs_exp(z_connected(N_q, M_lambda)) - 1 == zhat(N_q, M_lambda)
