"""
Eight descriptions of one graph
===============================

Each builder below starts from a different geometric object yet produces
srg(28,15,6,10).  Canonical certificates show they are the same graph.
"""

from polarlab import constructions as cons
from polarlab.canon import canonical_form
from polarlab.graphcore import srg_params

results = {}
for cid in cons.EQUIVALENT_28:
    g = cons.build(cid, 3)
    res = canonical_form(g)
    results[cid] = res
    print(f"{cid.value:<16} {cons.ambient(cid, 3):<11} {srg_params(g)}  {cons.VERTEX_SETS[cid]}")

certs = {r.certificate for r in results.values()}
print("distinct certificates:", len(certs))
print("automorphism group order:", results[cons.ConstructionId.NO_PLUS].group_order)

# the graph with the generator removed is the complement
bar = cons.build_hole(3)
print("hole graph:", srg_params(bar))
