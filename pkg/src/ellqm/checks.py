"""End-to-end verification suites, each returning a :class:`Check`."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from . import gaussmanin as gm
from .hurwitz import exp_check, f_g, z_connected, zhat
from .quasimodular import MIN_EXTRA_COEFFS, ramanujan_residuals, recognize, weight_monomials
from .series import QSeries, format_rational, lambda_coeff
from .symgroup import build_Md, charpoly_Md, connected_count, enumerate_phi, frobenius_eigenvalue, partition_count, trace_power
from .theta import a_n, crosscheck, theta_zeta0

__all__ = [
    "Check",
    "ORACLE_CASES",
    "check_ramanujan",
    "check_spectrum",
    "check_oracle",
    "check_partition_function",
    "check_weight",
    "check_crosscheck",
    "check_gm",
    "check_sl2",
    "check_ode",
    "SUITES",
]

ORACLE_CASES = ((1, 0), (1, 2), (2, 0), (2, 2), (2, 4), (3, 0), (3, 2), (3, 4), (4, 0), (4, 2))


@dataclass
class Check:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    failure: str | None = None

    def to_dict(self) -> dict:
        return {"check": self.name, "pass": self.passed, "detail": self.detail, "failure": self.failure}


def _first_nonzero(series):
    for e, c in series.items():
        return e, c
    return None


def check_ramanujan(N: int = 200) -> Check:
    names = ("E2' = (E2^2 - E4)/12", "E4' = (E2 E4 - E6)/3", "E6' = (E2 E6 - E4^2)/2")
    for name, r in zip(names, ramanujan_residuals(N)):
        bad = _first_nonzero(r)
        if bad:
            e, c = bad
            return Check("ramanujan", False, {"N": N}, f"{name}: residual {c} at q^{e // 2}")
    return Check("ramanujan", True, {"N": N, "identities": list(names)})


def _poly_from_roots(roots):
    coeffs = [Fraction(1)]
    for r in roots:
        # multiply by (x - r)
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] += c
            nxt[i] -= r * c
        coeffs = nxt
    return coeffs


def check_spectrum(d_max: int = 8, k_max: int = 10) -> Check:
    for d in range(1, d_max + 1):
        M = build_Md(d)
        eig = [frobenius_eigenvalue(lam) for lam in M.classes]
        if charpoly_Md(M) != _poly_from_roots(eig):
            return Check("spectrum", False, {"d_max": d_max}, f"characteristic polynomial mismatch at d={d}")
        for k in range(k_max + 1):
            tr = trace_power(M, k)
            if tr != sum(a**k for a in eig):
                return Check("spectrum", False, {"d_max": d_max}, f"Tr(M_{d}^{k}) = {tr} != power sum")
        if set(M.row_sums()) != {d * (d - 1) // 2}:
            return Check("spectrum", False, {"d_max": d_max}, f"row sums of M_{d} are {M.row_sums()}")
    return Check("spectrum", True, {"d_max": d_max, "k_max": k_max})


def check_oracle(cases=ORACLE_CASES, budget: int | None = None) -> Check:
    kw = {} if budget is None else {"budget": budget}
    rows = []
    D = max(d for d, _ in cases)
    zc = z_connected(D, max(b for _, b in cases))
    for d, b in cases:
        trace_side = factorial(d) * trace_power(build_Md(d), b)
        phi = enumerate_phi(b, d, **kw)
        conn = connected_count(b, d, **kw)
        series_side = lambda_coeff(zc, b)[d] * factorial(b)
        rows.append([d, b, trace_side, phi, format_rational(conn), format_rational(series_side)])
        if trace_side != phi:
            return Check("oracle", False, {"rows": rows}, f"d!*Tr(M_{d}^{b}) = {trace_side} but |Phi| = {phi}")
        if conn != series_side:
            return Check("oracle", False, {"rows": rows},
                         f"connected count {conn} != series coefficient {series_side} at (d={d}, b={b})")
    return Check("oracle", True, {"columns": ["d", "b", "d!Tr", "phi", "connected", "series"], "rows": rows})


def check_partition_function(N_q: int = 20, M_lambda: int = 8, N_part: int = 30) -> Check:
    if not exp_check(N_q, M_lambda):
        return Check("partition-function", False, {}, "exp(Z) - 1 != Zhat")
    z0 = lambda_coeff(zhat(N_part, 0), 0)
    for d in range(1, N_part + 1):
        if z0[d] != partition_count(d):
            return Check("partition-function", False, {}, f"lambda^0 q^{d} coefficient {z0[d]} != p({d})")
    return Check("partition-function", True, {"exp_log": [N_q, M_lambda], "partition_gf_to": N_part})


def check_weight(N_q: int = 24) -> Check:
    detail = {}
    for g in (2, 3):
        rep = recognize(f_g(g, N_q), 6 * g - 6)
        detail[f"F_{g}"] = rep.to_dict()
        if not rep.ok:
            return Check("weight", False, detail, f"F_{g} not recognized at weight {6 * g - 6}: q^{rep.first_mismatch}")
    return Check("weight", True, detail)


def check_crosscheck(N_q: int = 15, M_lambda: int = 8, recognize_an: bool = True) -> Check:
    rep = crosscheck(N_q, M_lambda)
    detail = {"crosscheck": rep.to_dict()}
    if not rep.passed:
        k, d, r = rep.first_failure()
        return Check("crosscheck", False, detail, f"residual {r} at lambda^{k} q^{d}")
    if recognize_an:
        # recognition needs MIN_EXTRA_COEFFS coefficients past the solve window
        N_rec = max(N_q, len(weight_monomials(12)) + MIN_EXTRA_COEFFS)
        t0 = theta_zeta0(N_rec, M_lambda)
        if a_n(0, N_rec, theta0=t0) != QSeries.one(2 * N_rec):
            return Check("crosscheck", False, detail, "A_0 != 1")
        for n in (1, 2):
            if 2 * n > M_lambda:
                continue
            r = recognize(a_n(n, N_rec, theta0=t0), 6 * n)
            detail[f"A_{n}"] = r.to_dict()
            if not r.ok:
                return Check("crosscheck", False, detail, f"A_{n} not recognized at weight {6 * n}")
    return Check("crosscheck", True, detail)


def check_gm() -> Check:
    detail = {}
    for name, g in gm.GENERATORS.items():
        R = gm.vector_field(name)
        solved = gm.solve_vf(g)
        rep = gm.verify_connection(g, R)
        detail[name] = {"solve_vf_matches": solved == R, "connection": rep.passed}
        if solved != R:
            return Check("gm", False, detail, f"solve_vf reproduces a different {name} field: {solved}")
        if not rep.passed:
            i, j, r = rep.first_failure()
            return Check("gm", False, detail, f"{name}: connection entry ({i},{j}) residual {r}")
    return Check("gm", True, detail)


def check_sl2() -> Check:
    rep = gm.verify_sl2()
    if not rep.closed:
        return Check("sl2", False, rep.to_dict(), "brackets leave the span of the three fields")
    if rep.triple is None:
        return Check("sl2", False, rep.to_dict(), "no standard triple found")
    return Check("sl2", True, rep.to_dict())


def check_ode(N: int = 100) -> Check:
    rep = gm.verify_ode(N)
    for i, r in enumerate(rep.residuals + rep.field_residuals):
        bad = _first_nonzero(r)
        if bad:
            e, c = bad
            which = "ODE" if i < 3 else "vector field"
            return Check("ode", False, {"N": N}, f"{which} residual for g{i % 3 + 1}: {c} at q^{e // 2}")
    return Check("ode", True, {"N": N})


SUITES = {
    "ramanujan": check_ramanujan,
    "spectrum": check_spectrum,
    "oracle": check_oracle,
    "partition-function": check_partition_function,
    "weight": check_weight,
    "crosscheck": check_crosscheck,
    "gm": check_gm,
    "sl2": check_sl2,
    "ode": check_ode,
}
