# Eisenstein series, the q-derivative, and the three Ramanujan identities.
from fractions import Fraction

from ellqm import eisenstein, qd_derive, ramanujan_residuals, recognize, serre_derivative

N = 8
E2, E4, E6 = eisenstein(2, N), eisenstein(4, N), eisenstein(6, N)
print("E2:", [str(c) for c in E2.to_list()])
print("E4:", [str(c) for c in E4.to_list()])
print("E6:", [str(c) for c in E6.to_list()])

# q dE2/dq against (E2^2 - E4)/12, coefficient by coefficient
lhs = qd_derive(E2)
rhs = (E2 * E2 - E4).scale(Fraction(1, 12))
print(lhs.to_json())
print(rhs.to_json())

# all three identities at a larger order; each residual is the zero series
print([bool(r) for r in ramanujan_residuals(100)])

# Serre derivative takes E4 to -E6/3
print(serre_derivative(E4, 4) == E6.scale(Fraction(-1, 3)))

# recognition: E2*E4 as a weight-6 polynomial, checked on 10 more coefficients
rep = recognize(eisenstein(2, 14) * eisenstein(4, 14), 6)
print(rep.poly, rep.ok, rep.residual_orders)
