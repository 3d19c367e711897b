"""
Antiflags of PG(2,2) and PG(3,2)
================================

A point P and a hyperplane h with P off h.  Five relations on pairs of
antiflags form an association scheme; three of them together give NO+(2n,2).
"""

import numpy as np

from polarlab import constructions as cons
from polarlab.canon import certificate
from polarlab.graphcore import verify_scheme

for n in (3, 4):
    s = cons.build_antiflag_scheme(n)
    p = verify_scheme(s)
    print(f"n={n}: {s.order} antiflags, valencies {s.valencies()}")
    # p[0] holds the products A_i A_j on the diagonal: the valencies again
    print("  diagonal of p^0:", np.diag(p[0]).tolist())
    same = certificate(s.graph((2, 3, 4))) == certificate(cons.build_no_plus(n))
    print("  A2+A3+A4 isomorphic to NO+:", same)

# without precedence the relations overlap
flags = cons.antiflags(3)
overlap = sum(len(cons.literal_relations(flags[0], f)) > 1 for f in flags[1:])
print("pairs in two literal relations at once:", overlap)
