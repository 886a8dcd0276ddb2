# Sign patterns of inverses, positivity on trees, hyperbolicity, serial families.
from fractions import Fraction

from cartankit import CartanSpec, Matrix, inverse
from cartankit import analysis, catalog
from cartankit.serial import SerialFamily, closed_inverse, family_matrix

# almost affine entries: the inverse has no positive entry
e = catalog.load_file("sec8_1.jsonl")[0]
c = analysis.zhang_classify(inverse(e.matrix))
print(e.name, c.all_nonpositive, c.all_negative, c.zero_positions)

# a path with negative off-diagonal entries and positive principal minors
C = Matrix([[3, -1, 0], [-2, 4, Fraction(-1, 2)], [0, -1, 1]])
adj = Matrix([[0, 1, 0], [1, 0, 1], [0, 1, 0]])
print(analysis.lt_condition_check(C, adj).ok, analysis.lusztig_tits_verify(C, adj))
print(inverse(C))   # all entries positive

# a hyperbolic matrix and its certificate
ok, cert = analysis.hyperbolic_check(CartanSpec.from_rows([[2, -3], [-3, 2]], "e,e"))
print(ok)
print(cert)

# the largest rank in the hyperbolic table
last = catalog.load_file("sec8_2.jsonl")[-1]
print(last.name, last.matrix.n, analysis.hyperbolic_check(last.spec)[0])

# serial families: closed form against elimination
for fam in (SerialFamily("Tn", n=5), SerialFamily("B1_0n", n=3), SerialFamily("Sl_m0n", m=1, n=2)):
    print(fam, closed_inverse(fam) == inverse(family_matrix(fam).matrix))
