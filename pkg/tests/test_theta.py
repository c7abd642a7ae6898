import json
from fractions import Fraction
from math import factorial

import pytest

from ellqm.hurwitz import zhat
from ellqm.quasimodular import recognize
from ellqm.series import QSeries, lambda_coeff
from ellqm.theta import a_n, crosscheck, euler_product, theta_product, theta_zeta0


def test_zeta1_lowest_term():
    M = 4
    t = theta_product(3, M)
    for k in range(M + 1):
        # single factor u = 1/2 contributes q^(1/2) e^(lambda/8)
        assert lambda_coeff(t[1], k).items()[0] == (1, Fraction(1, 8) ** k / factorial(k))
        assert lambda_coeff(t[-1], k).items()[0] == (1, Fraction(-1, 8) ** k / factorial(k))


def test_window():
    t = theta_product(5, 2)
    assert t.window <= 6
    assert all(abs(j) <= t.window for j in t.powers())


def test_lambda0_is_one():
    assert lambda_coeff(theta_zeta0(20, 0), 0) == QSeries.one(40)


def test_theta0_parity_and_grid():
    t0 = theta_zeta0(10, 7)
    assert t0.is_integer_grid()
    for k in (1, 3, 5, 7):
        assert not lambda_coeff(t0, k)


def test_lambda2_matches_disconnected_side():
    N = 8
    t0 = theta_zeta0(N, 2)
    rhs = lambda_coeff((zhat(N, 2) + 1) * euler_product(N), 2)
    assert lambda_coeff(t0, 2) == rhs
    assert lambda_coeff(t0, 2)[1] == rhs[1] == 0
    assert lambda_coeff(t0, 2)[2] == 1


def test_a_n():
    assert a_n(0, 12) == QSeries.one(24)
    assert recognize(a_n(1, 16), 6).ok
    assert recognize(a_n(2, 17), 12).ok
    with pytest.raises(ValueError):
        a_n(2, 10, M_lambda=2)


@pytest.mark.parametrize("N, M", [(10, 6), (2, 2), (6, 0)])
def test_crosscheck_passes(N, M):
    rep = crosscheck(N, M)
    assert rep.passed
    assert len(rep.residuals) == (N + 1) * (M + 1)
    assert rep.first_failure() is None


def test_crosscheck_json():
    d = json.loads(crosscheck(2, 2).to_json())
    assert d["orders"] == {"q": 2, "lambda": 2}
    assert d["pass"] is True
    assert all(r == "0" for _, _, r in d["residuals"])


def test_crosscheck_detects_perturbation(monkeypatch):
    import ellqm.theta as theta_mod
    from ellqm.series import BiSeries

    real = theta_mod.zhat

    def bumped(N, M):
        z = real(N, M)
        return z + BiSeries.from_coeffs({(2, 6): 1}, z.lambda_order, z.order2)

    monkeypatch.setattr(theta_mod, "zhat", bumped)
    rep = crosscheck(5, 2)
    assert not rep.passed
    assert rep.first_failure()[:2] == (2, 3)
