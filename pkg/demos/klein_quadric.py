"""
The Klein quadric over GF(2)
============================

Lines of PG(3,2) become points of the hyperbolic quadric x0x5 + x1x4 + x2x3 = 0
in PG(5,2) through Pluecker coordinates.
"""

from collections import Counter

from polarlab import gf2core, projgeom

q = projgeom.hyperbolic_form(3)
print("form:", q)

# 35 singular points out of 63
pts = projgeom.quadric_points(q)
print("points on the quadric:", len(pts))

# each of the 63 points is on the quadric or not; count line types through one
p = pts[0]
types = Counter(projgeom.line_type(q, p, r).name for r in gf2core.all_points(6) if r != p)
print("lines through", gf2core.fmt(p, 6), {k: v // 2 for k, v in types.items()})

# the planes on the quadric fall into two families of 15
latin, greek = projgeom.split_families(projgeom.generators(q))
print("generators:", len(latin), "latin +", len(greek), "greek")
print("one latin plane:", latin[0].label())

# every line of PG(3,2) lands on the quadric, and nothing is hit twice
lines = projgeom.lines_pg3()
images = {projgeom.klein_image(l) for l in lines}
print("lines of PG(3,2):", len(lines), "distinct images:", len(images), "all singular:", images <= set(pts))

for name, rec in projgeom.klein_dictionary().items():
    print(f"  {name:<28} {rec['checked']:>4} checked  ok={rec['ok']}")
