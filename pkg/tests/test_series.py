import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import PARTITION_NUMBERS, biseries, naive_convolve, qseries
from ellqm.series import BiSeries, QSeries, lambda_coeff, qs_exp, qs_log, qs_mul

Q = QSeries.from_list


def q_int(n, N):
    return QSeries.monomial(2 * n, 1, 2 * N)


class TestQSeriesBasics:
    def test_no_stored_zeros(self):
        f = QSeries({0: 1, 2: 0, 4: Fraction(0)}, 6)
        assert f.items() == [(0, 1)]
        assert f == QSeries.one(6)

    def test_drops_terms_past_order(self):
        assert QSeries({0: 1, 9: 5}, 8) == QSeries.one(8)

    def test_negative_exponent_rejected(self):
        with pytest.raises(ValueError):
            QSeries({-1: 1}, 4)

    def test_mismatched_orders(self):
        with pytest.raises(ValueError):
            qs_mul(QSeries.one(4), QSeries.one(6))
        with pytest.raises(ValueError):
            QSeries.one(4) + QSeries.one(6)

    def test_telescoping(self):
        assert Q([1, 1], 3) * Q([1, -1], 3) == Q([1, 0, -1], 3)

    def test_half_grid_addition(self):
        h = QSeries.monomial(1, 1, 6)
        assert h * h == QSeries.monomial(2, 1, 6)

    def test_e4_squared_against_double_sum(self):
        from ellqm.quasimodular import eisenstein

        e4 = [1, 240, 2160, 6720]  # 240 * sigma_3(n)
        expected = naive_convolve(e4, e4, 3)
        assert expected == [1, 480, 61920, 1050240]
        assert eisenstein(4, 3) * eisenstein(4, 3) == Q(expected, 3)

    def test_json_roundtrip(self):
        f = QSeries({0: 1, 1: Fraction(-3, 2), 4: 7}, 6)
        d = json.loads(f.to_json())
        assert d == {"order2": 6, "coeffs": [[0, "1"], [1, "-3/2"], [4, "7"]]}
        assert QSeries.from_json(f.to_json()) == f

    def test_integer_access(self):
        f = Q([3, 0, 5], 2)
        assert f[0] == 3 and f[1] == 0 and f[2] == 5
        with pytest.raises(IndexError):
            f[3]


class TestExpLog:
    def test_exp_zero(self):
        assert qs_exp(BiSeries.zero(2, 6)) == BiSeries.one(2, 6)

    def test_exp_q(self):
        assert qs_exp(q_int(1, 3)) == Q([1, 1, Fraction(1, 2), Fraction(1, 6)], 3)

    def test_exp_rejects_constant(self):
        with pytest.raises(ValueError):
            qs_exp(QSeries.one(4))

    def test_exp_sigma_gives_partitions(self):
        from ellqm.quasimodular import sigma

        N = 10
        f = Q([0] + [Fraction(sigma(1, n), n) for n in range(1, N + 1)], N)
        assert qs_exp(f).to_list() == PARTITION_NUMBERS[: N + 1]

    def test_log_one(self):
        assert qs_log(BiSeries.one(3, 4)) == BiSeries.zero(3, 4)

    def test_log_one_plus_q(self):
        assert qs_log(Q([1, 1], 3)) == Q([0, 1, Fraction(-1, 2), Fraction(1, 3)], 3)

    def test_log_rejects_bad_constant(self):
        with pytest.raises(ValueError):
            qs_log(Q([2, 1], 3))

    def test_log_exp_specific(self):
        f = BiSeries.from_coeffs({(0, 2): Fraction(3, 2), (2, 4): 1}, 4, 10)
        assert qs_log(qs_exp(f)) == f

    def test_exp_matches_power_sum(self):
        # sum_m a^m / m! computed directly
        a = BiSeries.from_coeffs({(0, 1): 1, (1, 0): Fraction(1, 2), (2, 3): -2}, 3, 6)
        direct = BiSeries.one(3, 6)
        term = BiSeries.one(3, 6)
        for m in range(1, 10):
            term = term * a * Fraction(1, m)
            direct = direct + term
        assert qs_exp(a) == direct


class TestLambdaCoeff:
    def test_basic(self):
        b = BiSeries.from_coeffs({(0, 0): 1, (2, 2): 1}, 2, 4)
        assert lambda_coeff(b, 2) == QSeries.monomial(2, 1, 4)

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            lambda_coeff(BiSeries.one(2, 4), 3)

    def test_zhat_odd_and_constant(self):
        from ellqm.hurwitz import zhat

        z = zhat(10, 3)
        assert not lambda_coeff(z, 1)
        assert lambda_coeff(z, 0).to_list()[1:] == PARTITION_NUMBERS[1:11]


# properties -----------------------------------------------------------------


@given(qseries(), qseries(), qseries())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + b == b + a


@given(qseries(integer_grid=True), qseries(integer_grid=True))
def test_integer_grid_closed(a, b):
    assert (a * b).is_integer_grid()


@given(st.integers(0, 4), st.integers(0, 4), st.fractions(-3, 3, max_denominator=4), st.fractions(-3, 3, max_denominator=4))
def test_half_grid_monomials_multiply_to_integer_grid(i, j, c1, c2):
    a = QSeries.monomial(2 * i + 1, c1, 20)
    b = QSeries.monomial(2 * j + 1, c2, 20)
    assert (a * b).is_integer_grid()


@settings(max_examples=40, deadline=None)
@given(biseries(constant=0))
def test_log_exp_inverse(a):
    assert qs_log(qs_exp(a)) == a


@settings(max_examples=40, deadline=None)
@given(biseries(constant=1))
def test_exp_log_inverse(a):
    assert qs_exp(qs_log(a)) == a


@settings(max_examples=30, deadline=None)
@given(biseries(lambda_order=3, order2=8, constant=0), st.integers(0, 3), st.integers(0, 8))
def test_truncation_consistency(a, L, o):
    small = a.truncate(L, o)
    assert qs_exp(a).truncate(L, o) == qs_exp(small)
    assert (a * a).truncate(L, o) == small * small
