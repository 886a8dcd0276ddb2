# Odd reflections, the inverse update and whole reflection classes.
from cartankit import CartanSpec, inverse, inverse_update, normalize, odd_reflect
from cartankit import analysis, catalog

s = CartanSpec.from_rows([[0, -1], [-1, 2]], "o,e")
r, factors = odd_reflect(s, 0)
print(r.matrix, r.parities)

# new inverse from the old one, no elimination needed
upd = inverse_update(inverse(s.matrix), factors)
print(upd == inverse(r.matrix))

# ag(2): four inequivalent simple root systems
seed = catalog.find_entry("ag(2)-1").spec
cls = analysis.enumerate_class(seed)
print(len(cls), "members")
for m, d in zip(cls.members, cls.determinants):
    print(m.parities, d)

# determinants depend on how rows with zero diagonal are scaled;
# with the printed representatives they are the tabulated ones
printed = [e.spec for e in catalog.family_cases("ag(2)")]
print(analysis.det_spectrum(analysis.represent(cls, printed))[0])

# osp(4|2;alpha) counts 2 only once alpha -> -1-alpha etc. are identified
osp = catalog.family_cases("osp(4|2;alpha)")[0].spec
print(len(analysis.enumerate_class(osp)),
      len(analysis.enumerate_class(osp, substitutions=analysis.osp42_parameter_orbit(osp.field))))

# modular case: even roots with zero diagonal reflect too in char p
g = catalog.family_cases("g(4,3)")[0].spec
print(len(analysis.enumerate_class(g)), "members over", g.field)
