"""
Same parameters, different graphs
=================================

At n = 3 removing a generator from the quadric gives the complement of
NO+(6,2).  At n = 4 the parameters still agree but the graphs do not.
"""

import time

from polarlab import constructions as cons
from polarlab.canon import canonical_form, isomorphism
from polarlab.graphcore import srg_params

for n in (3, 4):
    a = cons.build_hole(n, complement_graph=True)
    b = cons.build_no_plus(n)
    t = time.perf_counter()
    same = isomorphism(a, b) is not None
    print(f"n={n}: {srg_params(a)} vs {srg_params(b)}  isomorphic={same}  ({time.perf_counter() - t:.2f}s)")

for name, g in (("NO+(8,2)", cons.build_no_plus(4)), ("hole complement", cons.build_hole(4, complement_graph=True))):
    res = canonical_form(g)
    print(f"|Aut {name}| = {res.group_order}  ({res.nodes} search nodes)")
