# Generating functions for covers of an elliptic curve by simply branched maps.
from ellqm import connected_count, f_g, n_table, recognize, z_connected, zhat
from ellqm.series import lambda_coeff, qs_exp

Zh = zhat(8, 4)
print("lambda^0:", [str(c) for c in lambda_coeff(Zh, 0).to_list()])  # partition numbers
print("lambda^2:", [str(c) for c in lambda_coeff(Zh, 2).to_list()])

# connected part: log(1 + Zhat)
Z = z_connected(8, 4)
print(qs_exp(Z) - 1 == Zh)

# Hurwitz numbers of genus 2 and the brute-force count for d = 3
t = n_table(2, 6)
print(t.to_json())
print(connected_count(2, 3))

# F_2 is a quasi-modular form of weight 6
F2 = f_g(2, 20)
rep = recognize(F2, 6)
print(rep.poly)
print(rep.ok, len(rep.residual_orders), "extra coefficients checked")

F3 = f_g(3, 20)
print(recognize(F3, 12).poly)
