"""Command-line front end.

Exit codes: 0 success, 1 verification or recognition failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import checks
from .hurwitz import n_table, z_connected, zhat
from .quasimodular import eisenstein, qd_derive, recognize, serre_derivative
from .series import BiSeries, QSeries
from .symgroup import DEFAULT_BUDGET, BudgetExceeded, build_Md, connected_count, enumerate_phi
from .theta import a_n, theta_zeta0

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class CommandResult:
    status: str  # "pass", "fail" or "value"
    payload: dict
    exit_code: int
    text: str = ""
    json_mode: bool = False


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _table(headers, rows) -> str:
    cells = [list(map(str, headers))] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells)


def _series_text(f: QSeries) -> str:
    rows = [[f"{e // 2}" if e % 2 == 0 else f"{e}/2", c] for e, c in f.items()]
    return _table(["q^", "coeff"], rows) + f"\n(truncated above q^{Fraction(f.order2, 2)})"


def _biseries_text(f: BiSeries) -> str:
    rows = [[k, f"{e // 2}" if e % 2 == 0 else f"{e}/2", c] for k, t in enumerate(f.terms) for e, c in t.items()]
    return _table(["lambda^", "q^", "coeff"], rows)


def _read_series(path: str) -> QSeries:
    try:
        text = sys.stdin.read() if path == "-" else open(path).read()
        return QSeries.from_json(text)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read a series from {path!r}: {exc}") from exc


def _value(payload: dict, text: str) -> CommandResult:
    return CommandResult("value", payload, EXIT_OK, text)


def _cmd_eisenstein(a):
    f = eisenstein(a.k, a.terms)
    return _value(f.to_dict(), f"E{a.k}\n" + _series_text(f))


def _cmd_derive(a):
    f = _read_series(a.input)
    out = qd_derive(f) if a.weight is None else serre_derivative(f, a.weight)
    return _value(out.to_dict(), _series_text(out))


def _cmd_recognize(a):
    f = _read_series(a.input)
    rep = recognize(f, a.weight)
    if rep.ok:
        text = f"recognized at weight {a.weight}: {rep.poly}\n" \
               f"solved on q^0..q^{len(rep.solve_orders) - 1}, zero residual through q^{f.N}"
        return CommandResult("pass", rep.to_dict(), EXIT_OK, text)
    text = f"not quasi-modular of weight {a.weight}: first mismatch at q^{rep.first_mismatch}, " \
           f"max residual {rep.residual_max}"
    return CommandResult("fail", rep.to_dict(), EXIT_FAIL, text)


def _cmd_hurwitz(a):
    t = n_table(a.genus, a.max_degree)
    return _value(t.to_dict(), f"N_(g={a.genus},d)\n" + _table(["d", "N"], t.rows))


def _cmd_partition_function(a):
    f = (z_connected if a.connected else zhat)(a.terms, a.lambda_order)
    return _value(f.to_dict(), _biseries_text(f))


def _cmd_theta(a):
    if a.coefficient is not None:
        f = a_n(a.coefficient, a.terms, max(a.lambda_order, 2 * a.coefficient))
        return _value(f.to_dict(), f"A_{a.coefficient}\n" + _series_text(f))
    f = theta_zeta0(a.terms, a.lambda_order)
    return _value(f.to_dict(), _biseries_text(f))


def _cmd_class_matrix(a):
    M = build_Md(a.degree)
    rows = [[",".join(map(str, c))] + list(r) for c, r in zip(M.classes, M.entries)]
    return _value(M.to_dict(), _table(["class"] + [",".join(map(str, c)) for c in M.classes], rows))


def _cmd_brute_force(a):
    b = 2 * a.genus - 2
    try:
        phi = enumerate_phi(b, a.degree, a.budget)
        conn = connected_count(b, a.degree, a.budget)
    except BudgetExceeded as exc:
        raise UsageError(str(exc)) from exc
    payload = {"g": a.genus, "b": b, "d": a.degree, "phi": phi, "connected": str(conn)}
    text = _table(["g", "b", "d", "|Phi|", "N_(g,d)"], [[a.genus, b, a.degree, phi, conn]])
    return _value(payload, text)


def _verify_kwargs(a):
    kw = {}
    if a.suite in ("ramanujan", "ode") and a.terms is not None:
        kw["N"] = a.terms
    if a.suite in ("crosscheck", "partition-function", "weight") and a.terms is not None:
        kw["N_q"] = a.terms
    if a.suite in ("crosscheck", "partition-function") and a.lambda_order is not None:
        kw["M_lambda"] = a.lambda_order
    if a.suite == "spectrum" and a.degree is not None:
        kw["d_max"] = a.degree
    if a.suite == "oracle" and a.budget is not None:
        kw["budget"] = a.budget
    return kw


def _cmd_verify(a):
    suites = list(checks.SUITES) if a.suite == "all" else [a.suite]
    results = []
    for name in suites:
        a.suite = name
        results.append(checks.SUITES[name](**_verify_kwargs(a)))
    ok = all(r.passed for r in results)
    lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.name}" + (f": {r.failure}" if r.failure else "") for r in results]
    payload = results[0].to_dict() if len(results) == 1 else {"pass": ok, "checks": [r.to_dict() for r in results]}
    return CommandResult("pass" if ok else "fail", payload, EXIT_OK if ok else EXIT_FAIL, "\n".join(lines))


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ellqm", description="Exact quasi-modular forms and Hurwitz numbers of an elliptic curve.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--json", action="store_true", help="print JSON instead of a table")
        sp.set_defaults(func=func)
        return sp

    sp = add("eisenstein", _cmd_eisenstein, "q-expansion of E2, E4 or E6")
    sp.add_argument("--k", type=int, required=True, choices=(2, 4, 6))
    sp.add_argument("--terms", type=int, required=True)

    sp = add("derive", _cmd_derive, "q d/dq (or Serre derivative with --weight) of a JSON series")
    sp.add_argument("input", nargs="?", default="-")
    sp.add_argument("--weight", type=int)

    sp = add("recognize", _cmd_recognize, "express a JSON series as a polynomial in E2, E4, E6")
    sp.add_argument("input", nargs="?", default="-")
    sp.add_argument("--weight", type=int, required=True)

    sp = add("hurwitz", _cmd_hurwitz, "table of N_(g,d)")
    sp.add_argument("--genus", type=int, required=True)
    sp.add_argument("--max-degree", type=int, required=True)

    sp = add("partition-function", _cmd_partition_function, "Zhat (or Z with --connected)")
    sp.add_argument("--terms", type=int, required=True)
    sp.add_argument("--lambda-order", type=int, required=True)
    sp.add_argument("--connected", action="store_true")

    sp = add("theta", _cmd_theta, "zeta^0 coefficient of the theta product, or one A_n")
    sp.add_argument("--terms", type=int, required=True)
    sp.add_argument("--lambda-order", type=int, default=4)
    sp.add_argument("--coefficient", type=int, metavar="N", help="print only A_N")

    sp = add("class-matrix", _cmd_class_matrix, "the transposition class matrix M_d")
    sp.add_argument("--degree", type=int, required=True)

    sp = add("brute-force", _cmd_brute_force, "count monodromy tuples by exhaustive enumeration")
    sp.add_argument("--genus", type=int, required=True)
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    sp = add("verify", _cmd_verify, "run a verification suite")
    sp.add_argument("suite", choices=list(checks.SUITES) + ["all"])
    sp.add_argument("--terms", type=int)
    sp.add_argument("--lambda-order", type=int)
    sp.add_argument("--degree", type=int)
    sp.add_argument("--budget", type=int)
    return p


def run(argv=None) -> CommandResult:
    """Parse ``argv`` and execute; never prints and never exits."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        result = args.func(args)
    except UsageError as exc:
        return CommandResult("fail", {"error": str(exc)}, EXIT_USAGE, str(exc))
    except ValueError as exc:
        return CommandResult("fail", {"error": str(exc)}, EXIT_USAGE, f"ellqm: error: {exc}")
    result.json_mode = args.json
    return result


def main(argv=None) -> int:
    res = run(argv)
    if res.exit_code == EXIT_USAGE:
        print(res.text, file=sys.stderr)
    elif res.json_mode:
        print(json.dumps(res.payload, separators=(",", ":")))
    else:
        print(res.text)
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())
