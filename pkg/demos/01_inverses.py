# Exact inverses over Q, F_p and Q(alpha), and what the catalog stores.
from cartankit import Matrix, content_split, determinant, field_from_spec, inverse
from cartankit import catalog

# sl(1|2): one odd isotropic root (zero on the diagonal)
A = Matrix([[0, -1], [-1, 2]])
print(inverse(A))          # every entry is a Fraction, nothing is rounded
print("det", determinant(A))

# the same rows in characteristic 3
F3 = field_from_spec(3)
B = Matrix.parse([["2", "-1", "0"], ["-1", "2", "-1"], ["0", "-1", "2"]], F3)
print(B)                   # -1 prints as 2
print("det", F3.render(determinant(B)))   # 4 = 1 mod 3

# parametric matrices: entries are rational functions of alpha
Qa = field_from_spec(0, "alpha")
C = Matrix.parse([["2", "-1", "0"], ["-1", "0", "alpha"], ["0", "-1", "2"]], Qa)
scale, N = content_split(inverse(C))
print("inverse =", Qa.render(scale), "*")
print(N)

# catalog entries carry the printed inverse; verify_entry recomputes it
e = catalog.find_entry("ag(2)-1")
print(e.name, e.spec.parities, catalog.verify_entry(e).ok)

# the whole bundled catalog, with the known misprints explained
report = catalog.verify_all(catalog.load_all(), catalog.load_exceptions())
print(report.summary())
for s in report.statuses:
    if not s.ok:
        print("  misprint:", s)
