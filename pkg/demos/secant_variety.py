"""
Symmetric matrices and the secant variety
=========================================

Points of PG(5,2) are 3x3 symmetric matrices.  Rank splits them into four
orbits; the singular ones form the cubic det = 0.
"""

from collections import Counter

from polarlab import gf2core, projgeom
from polarlab.projgeom import SymMatrix3

orbits = Counter(projgeom.conic_orbit(SymMatrix3(p)) for p in gf2core.all_points(6))
print({o.name: orbits[o] for o in projgeom.ConicOrbit})

m = SymMatrix3(0b111111)
print("all-ones matrix:\n", m.to_array())
print("det:", projgeom.det3(m), "orbit:", projgeom.conic_orbit(m).name)

# the Veronese surface is the rank-one stratum
ver = sorted(projgeom.veronese_map(z) for z in gf2core.all_points(3))
print("Veronese points:", [gf2core.fmt(v, 6) for v in ver])

# rank two with zero diagonal: a plane
o2 = [p for p in gf2core.all_points(6) if projgeom.conic_orbit(SymMatrix3(p)) is projgeom.ConicOrbit.O2]
print("O2 spans a plane:", projgeom.o2_is_plane(), gf2core.echelon_basis(o2, 6).label())

forms = projgeom.quadrics_meeting_secant_in_plane()
print("hyperbolic quadrics meeting det=0 exactly in O2:")
for f in forms:
    print("  ", f)

# nonsingular conics: three points plus a nucleus
c = projgeom.nonsingular_conics()[0]
print("conic", gf2core.fmt(c, 6), "points", sorted(gf2core.fmt(z, 3) for z in projgeom.conic_point_set(c)),
      "nucleus", gf2core.fmt(projgeom.conic_nucleus(c), 3))
