"""Exact computations with elliptic quasi-modular forms and Hurwitz numbers of an elliptic curve."""

from .series import BiSeries, QSeries, lambda_coeff, qs_exp, qs_log, qs_mul
from .quasimodular import (
    QMPolynomial,
    RecognitionReport,
    bernoulli,
    eisenstein,
    qd_derive,
    qm_eval,
    ramanujan_residuals,
    recognize,
    serre_derivative,
    sigma,
    weight_monomials,
)
from .symgroup import (
    ClassMatrix,
    build_Md,
    class_size,
    connected_count,
    enumerate_phi,
    frobenius_eigenvalue,
    partitions,
    trace_power,
    transpose,
)
from .hurwitz import HurwitzTable, f_g, n_table, z_connected, zhat
from .theta import a_n, crosscheck, theta_product, theta_zeta0
from .gaussmanin import gm_matrix, lie_bracket, solve_vf, vector_field, verify_connection, verify_ode, verify_sl2

__all__ = [
    "BiSeries",
    "QSeries",
    "lambda_coeff",
    "qs_exp",
    "qs_log",
    "qs_mul",
    "QMPolynomial",
    "RecognitionReport",
    "bernoulli",
    "eisenstein",
    "qd_derive",
    "qm_eval",
    "ramanujan_residuals",
    "recognize",
    "serre_derivative",
    "sigma",
    "weight_monomials",
    "ClassMatrix",
    "build_Md",
    "class_size",
    "connected_count",
    "enumerate_phi",
    "frobenius_eigenvalue",
    "partitions",
    "trace_power",
    "transpose",
    "HurwitzTable",
    "f_g",
    "n_table",
    "z_connected",
    "zhat",
    "a_n",
    "crosscheck",
    "theta_product",
    "theta_zeta0",
    "gm_matrix",
    "lie_bracket",
    "solve_vf",
    "vector_field",
    "verify_connection",
    "verify_ode",
    "verify_sl2",
]

__version__ = "0.1.0"
