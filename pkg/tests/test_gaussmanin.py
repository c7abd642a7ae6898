import json
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from ellqm.gaussmanin import (
    DELTA,
    G0,
    G1,
    G1T,
    T1,
    T2,
    T3,
    Poly,
    RationalFunction,
    ZERO_FIELD,
    VectorField,
    gm_matrix,
    lie_bracket,
    solve_vf,
    vector_field,
    verify_connection,
    verify_ode,
    verify_sl2,
)

t1, t2, t3 = sp.symbols("t1 t2 t3")
D_SYM = 27 * t3**2 - t2**3
NAMES = ("translation", "radial", "ramanujan")
PAIRS = [(G1, "translation"), (G0, "radial"), (G1T, "ramanujan")]


def to_sympy(f):
    f = RationalFunction._lift(f)
    num = sum((sp.Rational(c.numerator, c.denominator) * t1**a * t2**b * t3**e
               for (a, b, e), c in f.numerator.terms.items()), sp.Integer(0))
    return num / D_SYM**f.delta_power


def sym_field(X):
    return [to_sympy(a) for a in X.coeffs]


def sym_bracket(X, Y):
    v = (t1, t2, t3)
    return [sp.simplify(sum(X[j] * sp.diff(Y[i], v[j]) - Y[j] * sp.diff(X[i], v[j]) for j in range(3)))
            for i in range(3)]


def same(f, expr):
    return sp.simplify(to_sympy(f) - expr) == 0


# polynomials and rational functions ---------------------------------------


def test_delta_at_point():
    assert DELTA.evaluate(0, 0, 1) == 27
    assert DELTA.evaluate(Fraction(5), 3, 2) == 27 * 4 - 27


def test_divmod_delta():
    p = T1 * DELTA * DELTA + T2
    q, r = p.divmod_delta()
    assert q == T1 * DELTA and r == T2
    for poly in (T3**5 + T1 * T2, T2**4 * T3**3 - 7):
        q, r = poly.divmod_delta()
        assert q * DELTA + r == poly
        assert all(e[2] < 2 for e in r.terms)


def test_rational_function_reduces():
    f = RationalFunction(T1 * DELTA, 1)
    assert f.delta_power == 0 and f == T1
    g = RationalFunction(T1 * DELTA + 1, 2)
    assert g.delta_power == 2
    assert RationalFunction(0, 3).delta_power == 0
    assert RationalFunction(T2, -1) == T2 * DELTA


def test_rational_function_json():
    f = RationalFunction(T2 * T2 * Fraction(3, 2) - T3, 1)
    d = json.loads(json.dumps(f.to_dict()))
    assert d == {"delta_power": 1, "terms": [[0, 0, 1, "-1"], [0, 2, 0, "3/2"]]}
    assert RationalFunction.from_dict(d) == f


small_polys = st.dictionaries(
    st.tuples(st.integers(0, 2), st.integers(0, 3), st.integers(0, 3)),
    st.fractions(-5, 5, max_denominator=6),
    max_size=4,
).map(Poly)


@settings(max_examples=40, deadline=None)
@given(small_polys, st.integers(0, 2), small_polys, st.integers(0, 2), st.integers(0, 2))
def test_rational_calculus_matches_sympy(n1, k1, n2, k2, i):
    f, g = RationalFunction(n1, k1), RationalFunction(n2, k2)
    var = (t1, t2, t3)[i]
    assert same(f + g, to_sympy(f) + to_sympy(g))
    assert same(f * g, to_sympy(f) * to_sympy(g))
    assert same(f.diff(i), sp.diff(to_sympy(f), var))


# GM matrix -----------------------------------------------------------------


def test_gm_entry_12():
    dt2, dt3 = gm_matrix().entries[0][1]
    assert dt2 == RationalFunction(Fraction(3, 2) * 3 * T3, 1)
    assert dt3 == RationalFunction(Fraction(3, 2) * -2 * T2, 1)


def test_gm_trace_zero():
    assert all(not c for c in gm_matrix().trace())


def test_gm_diagonal_is_dlog_delta():
    (a, _), (_, d) = gm_matrix().entries
    assert same(a[0], -sp.diff(D_SYM, t2) / 12 / D_SYM)
    assert same(d[1], sp.diff(D_SYM, t3) / 12 / D_SYM)


# vector fields ---------------------------------------------------------------


def test_named_fields():
    assert vector_field("translation") == VectorField(1, 0, 0)
    assert vector_field("radial") == VectorField(-2 * T1, -4 * T2, -6 * T3)
    assert vector_field("ramanujan").a2 == 6 * T3 - 4 * T1 * T2


def test_unknown_field():
    with pytest.raises(ValueError):
        vector_field("euler")


@pytest.mark.parametrize("g, name", PAIRS)
def test_solve_vf_reproduces_fields(g, name):
    X = solve_vf(g)
    assert X == vector_field(name)
    assert all(a.delta_power == 0 for a in X.coeffs)


def test_solve_vf_zero_and_linear():
    assert solve_vf(((0, 0), (0, 0))) == ZERO_FIELD
    g = ((3, Fraction(1, 2)), (-2, -3))
    expected = vector_field("radial") * 3 + vector_field("translation") * Fraction(1, 2) + vector_field("ramanujan") * -2
    assert solve_vf(g) == expected


def test_solve_vf_rejects_trace():
    with pytest.raises(ValueError):
        solve_vf(((1, 0), (0, 0)))


# brackets --------------------------------------------------------------------


def test_bracket_self():
    R = vector_field("ramanujan")
    assert not lie_bracket(R, R)


def test_bracket_table():
    e, h, f = (vector_field(n) for n in NAMES)
    assert lie_bracket(e, h) == e * -2
    assert lie_bracket(e, f) == h
    assert lie_bracket(h, f) == f * -2


@pytest.mark.parametrize("a, b", [(0, 1), (0, 2), (1, 2)])
def test_bracket_matches_sympy(a, b):
    X, Y = vector_field(NAMES[a]), vector_field(NAMES[b])
    expected = sym_bracket(sym_field(X), sym_field(Y))
    got = lie_bracket(X, Y)
    assert all(same(c, x) for c, x in zip(got.coeffs, expected))


def test_jacobi():
    X, Y, Z = (vector_field(n) for n in NAMES)
    total = (lie_bracket(X, lie_bracket(Y, Z)) + lie_bracket(Y, lie_bracket(Z, X))
             + lie_bracket(Z, lie_bracket(X, Y)))
    assert not total


def test_jacobi_on_rational_fields():
    X = VectorField(RationalFunction(T1, 1), T2 * T3, 0)
    Y = VectorField(T3, RationalFunction(T1 * T2, 2), 1)
    Z = vector_field("ramanujan")
    total = (lie_bracket(X, lie_bracket(Y, Z)) + lie_bracket(Y, lie_bracket(Z, X))
             + lie_bracket(Z, lie_bracket(X, Y)))
    assert not total


def test_sl2():
    rep = verify_sl2()
    assert rep.closed and rep.passed
    # [translation, ramanujan] = radial
    assert rep.structure[0][2] == [0, 1, 0]
    for i in range(3):
        assert rep.structure[i][i] == [0, 0, 0]
    e, f, h = (rep.triple[k] for k in "efh")
    assert (e, f, h) == ([1, 0, 0], [0, 0, 1], [0, 1, 0])
    assert json.loads(json.dumps(rep.to_dict()))["pass"] is True


def test_sl2_detects_non_closure(monkeypatch):
    from ellqm import gaussmanin as gm

    real = gm.vector_field

    def fake(tag):
        # [d/dt1, t1^2 d/dt1] = 2 t1 d/dt1 is outside the span
        return VectorField(T1 * T1, 0, 0) if tag == "ramanujan" else real(tag)

    monkeypatch.setattr(gm, "vector_field", fake)
    rep = verify_sl2()
    assert not rep.closed and not rep.passed
    assert rep.structure[0][2] is None


# connection ------------------------------------------------------------------


@pytest.mark.parametrize("g, name", PAIRS)
def test_verify_connection(g, name):
    rep = verify_connection(g, vector_field(name))
    assert rep.passed
    assert rep.first_failure() is None


def test_verify_connection_zero_field_fails():
    rep = verify_connection(G1T, ZERO_FIELD)
    assert not rep.passed
    assert rep.residuals[0][1]
    assert rep.to_dict()["pass"] is False


@pytest.mark.parametrize("g, name", PAIRS)
def test_connection_matches_sympy(g, name):
    # literal left side built independently of GMMatrix.contract
    a1, a2, a3 = sym_field(vector_field(name))
    dD = 54 * t3 * a3 - 3 * t2**2 * a2
    alpha = 3 * t3 * a2 - 2 * t2 * a3
    GM = sp.Matrix([[-dD / 12, sp.Rational(3, 2) * alpha], [-t2 * alpha / 8, dD / 12]]) / D_SYM
    S = sp.Matrix([[1, 0], [t1, 1]])
    lhs = sp.Matrix([[0, 0], [a1, 0]]) + S * GM
    rhs = sp.Matrix(g).T * S
    assert sp.simplify(lhs - rhs) == sp.zeros(2, 2)


# q-expansions ------------------------------------------------------------------


def test_ode_to_order_100():
    rep = verify_ode(100)
    assert rep.passed
    assert all(r.N == 100 for r in rep.residuals)
