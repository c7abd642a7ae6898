"""Gauss-Manin connection and vector fields on the enhanced moduli space.

Functions live in ``Q[t1, t2, t3, 1/Delta]`` with ``Delta = 27 t3^2 - t2^3``.
A :class:`RationalFunction` is a polynomial numerator over a power of Delta,
kept with the smallest possible power.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import linalg
from .series import QSeries, format_rational

__all__ = [
    "Poly",
    "RationalFunction",
    "T1",
    "T2",
    "T3",
    "DELTA",
    "VectorField",
    "GMMatrix",
    "G0",
    "G1",
    "G1T",
    "gm_matrix",
    "vector_field",
    "solve_vf",
    "lie_bracket",
    "ConnectionReport",
    "verify_connection",
    "SL2Report",
    "verify_sl2",
    "ODEReport",
    "verify_ode",
]


def _grlex_key(e):
    return (sum(e), e)


class Poly:
    """Sparse polynomial in t1, t2, t3: ``{(e1, e2, e3): Fraction}``."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for e, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def const(cls, c) -> "Poly":
        return cls({(0, 0, 0): c})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if isinstance(other, Poly):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly({e: c * other for e, c in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Poly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def diff(self, i: int) -> "Poly":
        """Partial derivative in ``t_{i+1}`` (``i`` is 0, 1 or 2)."""
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return Poly(out)

    def divmod_delta(self) -> tuple["Poly", "Poly"]:
        """Division by ``27 t3^2 - t2^3`` as a polynomial in t3."""
        rem = dict(self.terms)
        quo = {}
        while True:
            lead = [e for e in rem if e[2] >= 2]
            if not lead:
                break
            e = max(lead, key=lambda e: (e[2], e))
            c = rem[e] / 27
            q = (e[0], e[1], e[2] - 2)
            quo[q] = quo.get(q, 0) + c
            # subtract c * t^q * (27 t3^2 - t2^3)
            for de, dc in ((0, 0, 2), 27), ((0, 3, 0), -1):
                m = (q[0] + de[0], q[1] + de[1], q[2] + de[2])
                v = rem.get(m, 0) - c * dc
                if v:
                    rem[m] = v
                else:
                    rem.pop(m, None)
        return Poly(quo), Poly(rem)

    def evaluate(self, t1, t2, t3):
        """Substitute values (numbers or q-series) for the variables."""
        total = None
        for (a, b, c), coef in self.terms.items():
            term = (t1**a) * (t2**b) * (t3**c) * coef
            total = term if total is None else total + term
        if total is None:
            return 0 * t1
        return total

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in reversed(self.sorted_terms()):
            mono = "*".join(f"t{i + 1}" + (f"^{p}" if p > 1 else "") for i, p in enumerate(e) if p)
            parts.append(f"{c}*{mono}" if mono else f"{c}")
        return " + ".join(parts)


T1 = Poly({(1, 0, 0): 1})
T2 = Poly({(0, 1, 0): 1})
T3 = Poly({(0, 0, 1): 1})
DELTA = Poly({(0, 0, 2): 27, (0, 3, 0): -1})


class RationalFunction:
    """``numerator / Delta**delta_power`` in lowest terms."""

    __slots__ = ("numerator", "delta_power")

    def __init__(self, numerator, delta_power: int = 0):
        if isinstance(numerator, (int, Fraction)):
            numerator = Poly.const(numerator)
        if delta_power < 0:
            numerator = numerator * DELTA ** (-delta_power)
            delta_power = 0
        if not numerator:
            delta_power = 0
        while delta_power:
            q, r = numerator.divmod_delta()
            if r:
                break
            numerator, delta_power = q, delta_power - 1
        self.numerator = numerator
        self.delta_power = delta_power

    def __bool__(self):
        return bool(self.numerator)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            other = RationalFunction(other)
        if isinstance(other, RationalFunction):
            return self.delta_power == other.delta_power and self.numerator == other.numerator
        return NotImplemented

    def __hash__(self):
        return hash((self.delta_power, self.numerator))

    @staticmethod
    def _lift(x) -> "RationalFunction":
        return x if isinstance(x, RationalFunction) else RationalFunction(x)

    def __add__(self, other):
        other = self._lift(other)
        k = max(self.delta_power, other.delta_power)
        n = self.numerator * DELTA ** (k - self.delta_power) + other.numerator * DELTA ** (k - other.delta_power)
        return RationalFunction(n, k)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.numerator, self.delta_power)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalFunction(self.numerator * other, self.delta_power)
        other = self._lift(other)
        return RationalFunction(self.numerator * other.numerator, self.delta_power + other.delta_power)

    __rmul__ = __mul__

    def over_delta(self, k: int = 1) -> "RationalFunction":
        return RationalFunction(self.numerator, self.delta_power + k)

    def diff(self, i: int) -> "RationalFunction":
        # d(N / D^k) = (N' D - k N D') / D^(k+1)
        k, N = self.delta_power, self.numerator
        if k == 0:
            return RationalFunction(N.diff(i))
        return RationalFunction(N.diff(i) * DELTA - N * DELTA.diff(i) * k, k + 1)

    def evaluate(self, t1, t2, t3):
        num = self.numerator.evaluate(t1, t2, t3)
        if self.delta_power == 0:
            return num
        return num / DELTA.evaluate(t1, t2, t3) ** self.delta_power

    def to_dict(self) -> dict:
        return {"delta_power": self.delta_power,
                "terms": [[*e, format_rational(c)] for e, c in self.numerator.sorted_terms()]}

    @classmethod
    def from_dict(cls, d) -> "RationalFunction":
        return cls(Poly({(a, b, c): Fraction(v) for a, b, c, v in d["terms"]}), int(d["delta_power"]))

    def __repr__(self):
        if self.delta_power == 0:
            return repr(self.numerator)
        return f"({self.numerator!r}) / Delta^{self.delta_power}"


def _rf(x) -> RationalFunction:
    return RationalFunction._lift(x)


@dataclass(frozen=True)
class VectorField:
    """``a1 d/dt1 + a2 d/dt2 + a3 d/dt3``."""

    a1: RationalFunction
    a2: RationalFunction
    a3: RationalFunction

    def __post_init__(self):
        for name in ("a1", "a2", "a3"):
            object.__setattr__(self, name, _rf(getattr(self, name)))

    @property
    def coeffs(self) -> tuple[RationalFunction, RationalFunction, RationalFunction]:
        return (self.a1, self.a2, self.a3)

    def __call__(self, f) -> RationalFunction:
        """Apply the derivation to a function."""
        f = _rf(f)
        return sum((a * f.diff(i) for i, a in enumerate(self.coeffs)), RationalFunction(0))

    def __add__(self, other):
        return VectorField(*(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return VectorField(*(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return VectorField(*(a * c for a in self.coeffs))

    __rmul__ = __mul__

    def __bool__(self):
        return any(self.coeffs)

    def to_dict(self) -> dict:
        return {"a1": self.a1.to_dict(), "a2": self.a2.to_dict(), "a3": self.a3.to_dict()}


ZERO_FIELD = VectorField(0, 0, 0)


def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    """``[X, Y]_i = X(Y_i) - Y(X_i)``."""
    return VectorField(*(X(y) - Y(x) for x, y in zip(X.coeffs, Y.coeffs)))


# Gauss-Manin matrix ---------------------------------------------------------


@dataclass(frozen=True)
class GMMatrix:
    """2x2 matrix of 1-forms ``p dt2 + r dt3`` (no dt1 part in the base frame).

    ``entries[i][j] = (coefficient of dt2, coefficient of dt3)``.
    """

    entries: tuple

    def contract(self, R: VectorField) -> list[list[RationalFunction]]:
        """Evaluate every 1-form on ``R``."""
        return [[p * R.a2 + r * R.a3 for p, r in row] for row in self.entries]

    def trace(self) -> tuple[RationalFunction, RationalFunction]:
        (a, _), (_, d) = self.entries
        return (a[0] + d[0], a[1] + d[1])


def gm_matrix() -> GMMatrix:
    """Connection matrix in the frame ``(dx/y, x dx/y)`` of ``y^2 = x^3 - t2 x - t3``."""
    dDelta = (-3 * T2 * T2, 54 * T3)  # d(27 t3^2 - t2^3)
    alpha = (3 * T3, -2 * T2)  # 3 t3 dt2 - 2 t2 dt3

    def form(c, pair):
        return tuple(RationalFunction(c * p, 1) for p in pair)

    return GMMatrix((
        (form(Fraction(-1, 12), dDelta), form(Fraction(3, 2), alpha)),
        (form(Fraction(-1, 8) * T2, alpha), form(Fraction(1, 12), dDelta)),
    ))


# constant matrices spanning the Lie algebra
G0 = ((1, 0), (0, -1))
G1 = ((0, 1), (0, 0))
G1T = ((0, 0), (1, 0))


def _transpose(g):
    return ((g[0][0], g[1][0]), (g[0][1], g[1][1]))


def _frame():
    """``S = [[1, 0], [t1, 1]]``."""
    one, zero = RationalFunction(1), RationalFunction(0)
    return [[one, zero], [RationalFunction(T1), one]]


def _gT_S(g):
    gT = _transpose(g)
    S = _frame()
    return [[sum((S[k][j] * Fraction(gT[i][k]) for k in range(2)), RationalFunction(0)) for j in range(2)]
            for i in range(2)]


def _check_g(g):
    g = tuple(tuple(Fraction(x) for x in row) for row in g)
    if len(g) != 2 or any(len(r) != 2 for r in g):
        raise ValueError("g must be a 2x2 matrix")
    if g[0][0] + g[1][1] != 0:
        raise ValueError("g must be traceless (a combination of g0, g1 and g1^T)")
    return g


def vector_field(tag: str) -> VectorField:
    """One of the three named fields: ``ramanujan``, ``radial`` or ``translation``."""
    if tag == "ramanujan":
        return VectorField(
            Fraction(1, 12) * T2 - T1 * T1,
            6 * T3 - 4 * T1 * T2,
            Fraction(1, 3) * T2 * T2 - 6 * T1 * T3,
        )
    if tag == "radial":
        return VectorField(-2 * T1, -4 * T2, -6 * T3)
    if tag == "translation":
        return VectorField(1, 0, 0)
    raise ValueError(f"unknown vector field {tag!r}; expected ramanujan, radial or translation")


GENERATORS = {"ramanujan": G1T, "radial": G0, "translation": G1}


def solve_vf(g) -> VectorField:
    """The vector field ``R`` with ``nabla_R (alpha, beta)^T = g^T (alpha, beta)^T``.

    Entries (1,1) and (1,2) of the connection equation are linear in
    ``(a2, a3)`` with matrix ``(1/Delta) [[t2^2/4, -9/2 t3], [9/2 t3, -3 t2]]``;
    its inverse times Delta is ``(4/3) [[-3 t2, 9/2 t3], [-9/2 t3, t2^2/4]]``.
    Entry (2,1) then gives ``a1``.
    """
    g = _check_g(g)
    rhs = _gT_S(g)
    r11, r12 = rhs[0][0], rhs[0][1]
    c = Fraction(4, 3)
    a2 = (r11 * (-3 * T2) + r12 * (Fraction(9, 2) * T3)) * c
    a3 = (r11 * (Fraction(-9, 2) * T3) + r12 * (Fraction(1, 4) * T2 * T2)) * c
    t1, t2, t3 = _rf(T1), _rf(T2), _rf(T3)
    ddelta_R = a3 * (54 * t3) - a2 * (3 * t2 * t2)
    alpha_R = a2 * (3 * t3) - a3 * (2 * t2)
    a1 = rhs[1][0] - (t1 * ddelta_R * Fraction(-1, 12) + t2 * alpha_R * Fraction(-1, 8)).over_delta()
    return VectorField(a1, a2, a3)


@dataclass
class ConnectionReport:
    residuals: list  # 2x2 RationalFunction

    @property
    def passed(self) -> bool:
        return not any(r for row in self.residuals for r in row)

    def first_failure(self):
        for i, row in enumerate(self.residuals):
            for j, r in enumerate(row):
                if r:
                    return (i + 1, j + 1, r)
        return None

    def to_dict(self) -> dict:
        return {"pass": self.passed,
                "residuals": [[i + 1, j + 1, r.to_dict()] for i, row in enumerate(self.residuals)
                              for j, r in enumerate(row)]}


def verify_connection(g, R: VectorField) -> ConnectionReport:
    """Check ``dS(R) + S GM(R) == g^T S`` entry by entry."""
    g = _check_g(g)
    S = _frame()
    GM = gm_matrix().contract(R)
    lhs = [[sum((S[i][k] * GM[k][j] for k in range(2)), RationalFunction(0)) for j in range(2)] for i in range(2)]
    lhs[1][0] = lhs[1][0] + R.a1  # dS(R) = [[0, 0], [R(t1), 0]]
    rhs = _gT_S(g)
    return ConnectionReport([[lhs[i][j] - rhs[i][j] for j in range(2)] for i in range(2)])


# sl2 structure ------------------------------------------------------------


def _field_vector(X: VectorField, k: int, monos) -> list[Fraction]:
    out = []
    for a in X.coeffs:
        num = a.numerator * DELTA ** (k - a.delta_power)
        out.extend(num.terms.get(m, Fraction(0)) for m in monos)
    return out


def _express(target: VectorField, basis: list[VectorField]):
    """Constant rational coefficients ``c`` with ``sum c_i basis_i == target``, or None."""
    fields = basis + [target]
    k = max(a.delta_power for X in fields for a in X.coeffs)
    monos = sorted({m for X in fields for a in X.coeffs
                    for m in (a.numerator * DELTA ** (k - a.delta_power)).terms})
    cols = [_field_vector(X, k, monos) for X in fields]
    rows = [[col[r] for col in cols] for r in range(len(cols[0]))]
    if not rows:
        return [Fraction(0)] * len(basis)
    R, pivots = linalg.rref(rows)
    n = len(basis)
    if n in pivots:
        return None
    sol = [Fraction(0)] * n
    for i, p in enumerate(pivots):
        sol[p] = R[i][n]
    return sol


@dataclass
class SL2Report:
    names: list
    structure: list  # structure[i][j] = coefficients of [X_i, X_j] in the basis
    closed: bool
    triple: dict | None  # {"e": coeffs, "f": coeffs, "h": coeffs}

    @property
    def passed(self) -> bool:
        return self.closed and self.triple is not None

    def to_dict(self) -> dict:
        fmt = lambda v: None if v is None else [format_rational(x) for x in v]
        return {
            "pass": self.passed,
            "basis": self.names,
            "closed": self.closed,
            "structure": [[fmt(c) for c in row] for row in self.structure],
            "triple": None if self.triple is None else {k: fmt(v) for k, v in self.triple.items()},
        }


def _bracket_coeffs(C, x, y):
    n = len(x)
    return [sum(x[i] * y[j] * C[i][j][k] for i in range(n) for j in range(n)) for k in range(n)]


def _find_triple(C):
    """Search small integer recombinations for ``h`` with ad-eigenvectors of eigenvalue +-2."""
    n = len(C)
    candidates = sorted((h for h in product(range(-2, 3), repeat=n) if any(h)),
                        key=lambda h: (sum(map(abs, h)), [-x for x in h]))
    for h in candidates:
        h = [Fraction(x) for x in h]
        # ad_h as a matrix acting on coefficient vectors
        ad = [[_bracket_coeffs(C, h, [Fraction(int(i == j)) for i in range(n)])[k] for j in range(n)]
              for k in range(n)]
        vecs = {}
        for ev in (2, -2):
            shifted = [[ad[r][c] - (ev if r == c else 0) for c in range(n)] for r in range(n)]
            ns = linalg.nullspace(shifted)
            if len(ns) != 1:
                break
            vecs[ev] = ns[0]
        else:
            e, f = vecs[2], vecs[-2]
            ef = _bracket_coeffs(C, e, f)
            ratio = {ef[k] / h[k] for k in range(n) if h[k]}
            if len(ratio) == 1 and all(ef[k] == 0 for k in range(n) if not h[k]):
                r = ratio.pop()
                if r:
                    f = [x / r for x in f]
                    return {"e": e, "f": f, "h": h}
    return None


def verify_sl2(names=("translation", "radial", "ramanujan")) -> SL2Report:
    """Bracket table of the three fields, closure, and an explicit sl2 triple."""
    names = list(names)
    basis = [vector_field(n) for n in names]
    structure = [[_express(lie_bracket(X, Y), basis) for Y in basis] for X in basis]
    closed = all(c is not None for row in structure for c in row)
    triple = None
    if closed:
        triple = _find_triple(structure)
        if triple is not None:
            # confirm the triple on the fields themselves, not just the constants
            comb = {k: sum((b * c for b, c in zip(basis, v)), ZERO_FIELD) for k, v in triple.items()}
            ok = (lie_bracket(comb["h"], comb["e"]) == comb["e"] * 2
                  and lie_bracket(comb["h"], comb["f"]) == comb["f"] * -2
                  and lie_bracket(comb["e"], comb["f"]) == comb["h"])
            if not ok:
                triple = None
    return SL2Report(names, structure, closed, triple)


# q-expansion side ----------------------------------------------------------


@dataclass
class ODEReport:
    N: int
    residuals: list  # three QSeries: literal ODE system
    field_residuals: list  # three QSeries: g_i' + a_i(g) for the Ramanujan field

    @property
    def passed(self) -> bool:
        return not any(self.residuals) and not any(self.field_residuals)

    def to_dict(self) -> dict:
        return {"pass": self.passed, "N": self.N,
                "residuals": [r.to_dict() for r in self.residuals],
                "field_residuals": [r.to_dict() for r in self.field_residuals]}


def eisenstein_g(N: int) -> tuple[QSeries, QSeries, QSeries]:
    """``(g1, g2, g3) = (E2/12, E4/12, E6/216)`` as q-series."""
    from .quasimodular import eisenstein

    return (eisenstein(2, N).scale(Fraction(1, 12)), eisenstein(4, N).scale(Fraction(1, 12)),
            eisenstein(6, N).scale(Fraction(1, 216)))


def verify_ode(N: int) -> ODEReport:
    """Check the g-system and its agreement with the Ramanujan vector field.

    Along the q-expansions, ``q dg_i/dq = -a_i(g)`` where ``a_i`` are the
    coefficients of the Ramanujan field.
    """
    from .quasimodular import qd_derive

    g1, g2, g3 = eisenstein_g(N)
    d1, d2, d3 = qd_derive(g1), qd_derive(g2), qd_derive(g3)
    res = [
        d1 - (g1 * g1 - g2.scale(Fraction(1, 12))),
        d2 - (g1 * g2 * 4 - g3 * 6),
        d3 - (g1 * g3 * 6 - (g2 * g2).scale(Fraction(1, 3))),
    ]
    R = vector_field("ramanujan")
    field_res = [d + a.numerator.evaluate(g1, g2, g3) for d, a in zip((d1, d2, d3), R.coeffs)]
    return ODEReport(N, res, field_res)
