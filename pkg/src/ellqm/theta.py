"""The Kaneko-Zagier product and its zeta^0 coefficient.

    Theta = prod_n (1 - q^n) * prod_u (1 + zeta q^u e^{u^2 lambda / 2})
                             * prod_v (1 + zeta^-1 q^v e^{-v^2 lambda / 2})

with ``u, v`` running over positive half-integers.  Factors with ``u > N_q``
only contribute beyond ``q^N_q`` and are dropped, so the expansion is a
finite product computed on the half-integer q grid.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .hurwitz import zhat
from .series import BiSeries, QSeries, format_rational, lambda_coeff

__all__ = [
    "ZetaSeries",
    "euler_product",
    "exp_poly",
    "theta_product",
    "theta_zeta0",
    "a_n",
    "CrosscheckReport",
    "crosscheck",
]


@dataclass(frozen=True)
class ZetaSeries:
    """Laurent polynomial in zeta with BiSeries coefficients."""

    window: int
    coeffs: dict

    def __getitem__(self, j: int) -> BiSeries:
        if abs(j) > self.window:
            raise IndexError(f"zeta^{j} is outside the window {self.window}")
        any_val = next(iter(self.coeffs.values()))
        return self.coeffs.get(j, BiSeries.zero(any_val.lambda_order, any_val.order2))

    def powers(self) -> list[int]:
        return sorted(self.coeffs)


def euler_product(N_q: int, order2: int | None = None) -> QSeries:
    """``prod_{n <= N_q} (1 - q^n)``."""
    o = 2 * N_q if order2 is None else order2
    out = QSeries.one(o)
    for n in range(1, N_q + 1):
        out = out - out.shift2(2 * n)
    return out


def exp_poly(c: Fraction, M: int) -> list[Fraction]:
    """Taylor coefficients of ``exp(c * lambda)`` up to ``lambda^M``."""
    return [Fraction(c) ** k / factorial(k) for k in range(M + 1)]


def theta_product(N_q: int, M_lambda: int) -> ZetaSeries:
    """Expand the full product to ``q^N_q``, ``lambda^M_lambda``.

    Factors are multiplied in ascending ``u``; zeta powers whose coefficient
    has been truncated to zero are pruned after each step.
    """
    o = 2 * N_q
    state = {0: BiSeries.one(M_lambda, o)}
    us = [Fraction(2 * i - 1, 2) for i in range(1, N_q + 1)]
    for u in us:
        e = int(2 * u)
        for sign in (1, -1):
            poly = exp_poly(sign * u * u / 2, M_lambda)
            nxt = dict(state)
            for j, s in state.items():
                term = s.shift2(e).mul_lambda_poly(poly)
                if term:
                    nxt[j + sign] = nxt[j + sign] + term if j + sign in nxt else term
            state = {j: s for j, s in nxt.items() if s}
    eul = euler_product(N_q, o)
    coeffs = {j: s * eul for j, s in state.items()}
    return ZetaSeries(len(us), {j: s for j, s in coeffs.items() if s})


def theta_zeta0(N_q: int, M_lambda: int) -> BiSeries:
    """The ``zeta^0`` coefficient, re-checked to lie on the integer q grid."""
    t0 = theta_product(N_q, M_lambda)[0]
    if not t0.is_integer_grid():
        raise RuntimeError("half-integer q power survived in the zeta^0 coefficient")
    return t0


def a_n(n: int, N_q: int, M_lambda: int | None = None, theta0: BiSeries | None = None) -> QSeries:
    """Coefficient of ``lambda^(2n)`` in the ``zeta^0`` part."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if theta0 is not None:
        M_lambda = theta0.lambda_order
    elif M_lambda is None:
        M_lambda = 2 * n
    if M_lambda < 2 * n:
        raise ValueError(f"lambda-order {M_lambda} is too small for A_{n}")
    if theta0 is None:
        theta0 = theta_zeta0(N_q, M_lambda)
    return lambda_coeff(theta0, 2 * n)


@dataclass
class CrosscheckReport:
    N_q: int
    M_lambda: int
    residuals: list  # (lambda power, q power, residual)

    @property
    def passed(self) -> bool:
        return all(r == 0 for _, _, r in self.residuals)

    def first_failure(self):
        return next(((k, d, r) for k, d, r in self.residuals if r), None)

    def to_dict(self) -> dict:
        return {
            "orders": {"q": self.N_q, "lambda": self.M_lambda},
            "residuals": [[k, d, format_rational(r)] for k, d, r in self.residuals],
            "pass": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


def crosscheck(N_q: int, M_lambda: int) -> CrosscheckReport:
    """Compare ``Theta_0`` with ``prod(1 - q^n) * (zhat + 1)`` coefficientwise."""
    left = theta_zeta0(N_q, M_lambda)
    right = (zhat(N_q, M_lambda) + 1) * euler_product(N_q)
    diff = left - right
    residuals = [(k, d, abs(diff.coeff(k, d))) for k in range(M_lambda + 1) for d in range(N_q + 1)]
    return CrosscheckReport(N_q, M_lambda, residuals)
