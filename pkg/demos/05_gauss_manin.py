# Vector fields on the moduli of enhanced elliptic curves.
from ellqm import gm_matrix, lie_bracket, solve_vf, vector_field, verify_connection, verify_ode, verify_sl2
from ellqm.gaussmanin import G0, G1, G1T

GM = gm_matrix()
for row in GM.entries:
    print(row)
print("trace:", GM.trace())

# each generator of sl2 determines a unique field through the connection
for g, name in ((G1, "translation"), (G0, "radial"), (G1T, "ramanujan")):
    R = solve_vf(g)
    print(name, R.coeffs, R == vector_field(name), verify_connection(g, R).passed)

e, h, f = vector_field("translation"), vector_field("radial"), vector_field("ramanujan")
print(lie_bracket(e, f) == h)
print(lie_bracket(e, h) == e * -2)

rep = verify_sl2()
print(rep.closed, {k: [str(c) for c in v] for k, v in rep.triple.items()})

# along (E2/12, E4/12, E6/216) the field integrates the Ramanujan system
print(verify_ode(60).passed)
