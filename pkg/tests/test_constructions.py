from collections import Counter
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from polarlab import constructions as cons
from polarlab import gf2core, projgeom
from polarlab.canon import certificate, isomorphism
from polarlab.constructions import ConstructionId
from polarlab.graphcore import LabeledGraph, SrgParams, complement_params, srg_params


def _matrix_no_plus(n):
    """NO+(2n,2) from the Gram matrix of the polar form, written with numpy."""
    d = 2 * n
    gram = np.fliplr(np.eye(d, dtype=np.int64))
    vecs = np.array([[(p >> i) & 1 for i in range(d)] for p in range(1, 1 << d)])
    qvals = (vecs[:, :n] * vecs[:, ::-1][:, :n]).sum(axis=1) % 2
    off = vecs[qvals == 1]
    adj = (off @ gram @ off.T) % 2 == 0
    np.fill_diagonal(adj, False)
    return LabeledGraph.from_matrix(adj)


@pytest.mark.parametrize("n, params", [(2, (6, 3, 0, 3)), (3, (28, 15, 6, 10)), (4, (120, 63, 30, 36))])
def test_no_plus_params(n, params):
    assert cons.no_plus_params(n).astuple() == params


@pytest.mark.parametrize("n", [2, 3, 4])
def test_no_plus_matches_gram_matrix_oracle(n):
    g = cons.build_no_plus(n)
    assert g.rows == _matrix_no_plus(n).rows
    assert srg_params(g) == cons.no_plus_params(n)


def _displayed_hole(n, q):
    g = lambda m: Fraction(q**m - 1, q - 1)
    return (
        q ** (n - 1) * g(n),
        q ** (n - 1) * g(n - 1),
        q ** (n - 1) * g(n - 2) + q ** (n - 2) * (q - 1),
        q ** (n - 1) * g(n - 2),
    )


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("q", [2, 3, 4])
def test_hole_params_formulas(n, q):
    assert cons.hole_params(n, q).astuple() == _displayed_hole(n, q)


def test_hole_params_q2_values():
    assert cons.hole_params(3, 2).astuple() == (28, 12, 6, 4)
    assert cons.hole_params(4, 2).astuple() == (120, 56, 28, 24)
    for n in (2, 3, 4):
        assert complement_params(cons.hole_params(n, 2)) == cons.no_plus_params(n)
    with pytest.raises(ValueError):
        cons.hole_params(1, 2)
    with pytest.raises(ValueError):
        cons.no_plus_params(1)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_hole_graphs(n):
    bar = cons.build_hole(n)
    assert srg_params(bar) == cons.hole_params(n, 2)
    g = cons.build_hole(n, complement_graph=True)
    assert srg_params(g) == cons.no_plus_params(n)
    assert all(l.startswith("hole_complement:") for l in g.labels)


def test_n2_is_k33():
    k33 = LabeledGraph.from_edges(6, nx.complete_bipartite_graph(3, 3).edges())
    assert isomorphism(cons.build_no_plus(2), k33) is not None
    assert isomorphism(cons.build_hole(2, complement_graph=True), k33) is not None


def test_hole_vertices_avoid_generator():
    q = projgeom.hyperbolic_form(3)
    pi = projgeom.generators(q)[0]
    g = cons.build_hole(3, generator=pi)
    pts = [int(l.split(":")[1][::-1], 2) for l in g.labels]
    assert len(pts) == 28 and not any(p in pi for p in pts)
    assert all(projgeom.eval_form(q, p) == 0 for p in pts)


def test_hole_relation_kinds():
    q = projgeom.hyperbolic_form(3)
    pi = projgeom.generators(q)[0]
    verts = [p for p in projgeom.quadric_points(q) if p not in pi]
    kinds = Counter(cons.hole_relation(q, pi, verts[0], b) for b in verts[1:])
    # 12 line-in-X neighbours, the other 15 split between the two relations
    assert kinds["line-in-X"] == 12
    assert kinds["secant"] + kinds["meets-pi"] == 15


def test_klein_vertex_sets():
    assert len(cons.klein_vertices("greek")) == 28
    assert len(cons.klein_vertices("latin")) == 28
    with pytest.raises(ValueError):
        cons.klein_vertices("roman")


@pytest.mark.parametrize("variant", ["greek", "latin"])
def test_klein_graphs(variant, no_plus3):
    g = cons.build_klein(variant)
    assert srg_params(g).astuple() == (28, 15, 6, 10)
    assert certificate(g) == certificate(no_plus3)
    assert Counter(cons.klein_degree_split(variant)) == {(12, 3): 28}


def test_antiflag_counts():
    assert len(cons.antiflags(3)) == 28
    assert len(cons.antiflags(4)) == 120
    for p, h in cons.antiflags(3):
        assert gf2core.dot(p, h) == 1


def test_antiflag_relation_examples():
    e1, e2, e3 = 1, 2, 4
    a = (e1, e1)
    assert cons.antiflag_relation(a, a) == 0
    assert cons.antiflag_relation(a, (e1, e1 | e2)) == 3
    assert cons.antiflag_relation(a, (e1 | e2, e1)) == 3
    # each point lies on the other's hyperplane
    assert cons.antiflag_relation(a, (e2, e2)) == 2
    # e2 on x1=0 but e1 off x1+x2=0
    assert cons.antiflag_relation(a, (e2, e1 | e2)) == 1
    assert cons.antiflag_relation(a, (e1 | e2, e1 | e3)) == 4


@given(st.sampled_from(cons.antiflags(3)), st.sampled_from(cons.antiflags(3)))
def test_antiflag_relation_properties(a, b):
    r = cons.antiflag_relation(a, b)
    assert r == cons.antiflag_relation(b, a)
    assert r in cons.literal_relations(a, b)


@pytest.mark.parametrize("n, valencies", [(3, (12, 6, 6, 3)), (4, (56, 28, 14, 21))])
def test_antiflag_scheme_valencies(n, valencies):
    s = cons.build_antiflag_scheme(n)
    assert s.valencies() == valencies
    assert sum(valencies[1:]) == cons.no_plus_params(n).k


def test_literal_reading_overcounts():
    flags = cons.antiflags(3)
    lit = Counter()
    for f in flags[1:]:
        lit.update(cons.literal_relations(flags[0], f))
    assert [lit[i] for i in (1, 2, 3, 4)] == [12, 6, 6, 9]


def test_antiflag_scheme_rejects_n():
    with pytest.raises(ValueError):
        cons.build_antiflag_scheme(2)


def test_conic_antiflag_map():
    m = cons.conic_antiflag_map()
    assert len(m) == 28 and sorted(m.values()) == cons.antiflags(3)
    for c, (nuc, line) in m.items():
        assert nuc == projgeom.conic_nucleus(c)
        assert all(gf2core.dot(z, line) == 0 for z in gf2core.all_points(3)
                   if z not in projgeom.conic_point_set(c) and z != nuc)


def test_secant_and_symmat_agree():
    s, m = cons.build_secant_graph(), cons.build_symmetric_graph()
    assert s.order == m.order == 28
    # same vertex order (increasing point value), and a+b singular iff one hit on the line
    assert s.rows == m.rows


def test_all_28_builders(graphs28, no_plus3):
    cert = certificate(no_plus3)
    for cid, g in graphs28.items():
        assert srg_params(g).astuple() == (28, 15, 6, 10), cid
        assert certificate(g) == cert, cid
        assert len(set(g.labels)) == 28
        assert all(l.startswith(cid.value + ":") for l in g.labels)


def test_build_dispatch_and_errors():
    assert cons.build("no_plus", 2).order == 6
    assert cons.build(ConstructionId.HOLE, 3).order == 28
    with pytest.raises(ValueError):
        cons.build(ConstructionId.CONICS, 4)
    with pytest.raises(ValueError):
        cons.build("klein_greek", 2)
    with pytest.raises(ValueError):
        cons.build("pentagon", 3)
    with pytest.raises(ValueError):
        cons.build("antiflag", 2)


def test_ambient_strings():
    assert cons.ambient(ConstructionId.NO_PLUS, 3) == "PG(5,2)"
    assert cons.ambient(ConstructionId.NO_PLUS, 4) == "PG(7,2)"
    assert cons.ambient(ConstructionId.ANTIFLAG, 3) == "PG(2,2)"
    assert cons.ambient(ConstructionId.SYMMAT, 3) == "S_3(GF(2))"
    assert set(cons.VERTEX_SETS) == set(ConstructionId)


def test_feasibility_identity(corpus):
    for name, g in corpus.items():
        p = srg_params(g)
        assert p.feasible(), name
