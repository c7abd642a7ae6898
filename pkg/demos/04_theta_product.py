# The zeta^0 part of a theta-type product reproduces (Zhat + 1) times prod(1 - q^n).
from ellqm import a_n, crosscheck, recognize, theta_product
from ellqm.series import lambda_coeff

t = theta_product(3, 2)
print("zeta powers:", t.powers())
print("zeta^1, lambda^1:", lambda_coeff(t[1], 1).items())

rep = crosscheck(10, 6)
print("cross-check passed:", rep.passed, "over", len(rep.residuals), "coefficients")

# the lambda^(2n) parts are quasi-modular of weight 6n
N = 17
print(a_n(0, N).to_json())
print(recognize(a_n(1, N), 6).poly)
print(recognize(a_n(2, N), 12).ok)
