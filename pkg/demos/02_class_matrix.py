# Multiplication by the class of transpositions in the centre of S_d.
from ellqm import build_Md, enumerate_phi, frobenius_eigenvalue, trace_power
from ellqm.symgroup import charpoly_Md, content_sum

M = build_Md(4)
for lam, row in zip(M.classes, M.entries):
    print(lam, row)

# eigenvalues are content sums, equal to the Frobenius-coordinate formula
eig = [content_sum(lam) for lam in M.classes]
print(eig)
print([frobenius_eigenvalue(lam) for lam in M.classes] == eig)
print([str(c) for c in charpoly_Md(M)])  # lowest degree first

# traces of powers count monodromy tuples: d! Tr(M^b) = |Phi|
for b in (0, 2, 4):
    print(b, 24 * trace_power(M, b), sum(a**b for a in eig) * 24)
print(enumerate_phi(2, 4))

# the class-matrix side scales far past brute force
M8 = build_Md(8)
print(len(M8.classes), trace_power(M8, 10))
