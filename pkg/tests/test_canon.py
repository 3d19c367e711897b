import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import count_automorphisms
from polarlab.canon import (
    BudgetExceeded,
    automorphism_order,
    canonical_form,
    certificate,
    equitable_partition,
    isomorphism,
    node_budget,
    refine,
    verify_isomorphism,
)
from polarlab.graphcore import LabeledGraph, complement, encode_graph6


def from_nx(h):
    h = nx.convert_node_labels_to_integers(h)
    return LabeledGraph.from_edges(h.number_of_nodes(), h.edges())


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.order))
    h.add_edges_from(g.edges())
    return h


def shrikhande():
    conn = {(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)}
    pts = [(a, b) for a in range(4) for b in range(4)]
    return LabeledGraph.from_predicate(pts, lambda x, y: ((x[0] - y[0]) % 4, (x[1] - y[1]) % 4) in conn)


def rook4():
    return from_nx(nx.cartesian_product(nx.complete_graph(4), nx.complete_graph(4)))


def shuffled(g, seed):
    perm = list(range(g.order))
    random.Random(seed).shuffle(perm)
    return g.relabel(perm), perm


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(0, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return LabeledGraph.from_edges(n, [p for p, m in zip(pairs, mask) if m])


def test_refine_path():
    g = from_nx(nx.path_graph(3))
    assert equitable_partition(g) == [[0, 2], [1]]


def test_refine_after_individualizing(no_plus3):
    rest = list(range(1, 28))
    cells, trace = refine(no_plus3.rows, [[0], rest])
    assert [len(c) for c in cells] == [1, 12, 15]
    assert trace


def test_refine_regular_graph_is_stable():
    g = from_nx(nx.petersen_graph())
    cells, trace = refine(g.rows, [list(range(10))])
    assert cells == [list(range(10))] and trace == ()


def test_refine_trace_is_invariant():
    g = from_nx(nx.frucht_graph())
    h, perm = shuffled(g, 1)
    c1, t1 = refine(g.rows, [[0], list(range(1, 12))])
    inv = {p: i for i, p in enumerate(perm)}
    rest = [v for v in range(12) if v != perm[0]]
    c2, t2 = refine(h.rows, [[perm[0]], rest])
    assert t1 == t2
    assert [len(c) for c in c1] == [len(c) for c in c2]


@pytest.mark.parametrize(
    "h, order",
    [
        (nx.complete_graph(3), 6),
        (nx.cycle_graph(5), 10),
        (nx.petersen_graph(), 120),
        (nx.empty_graph(4), 24),
        (nx.frucht_graph(), 1),
        (nx.cubical_graph(), 48),
        (nx.path_graph(1), 1),
        (nx.empty_graph(0), 1),
    ],
)
def test_automorphism_order_examples(h, order):
    assert automorphism_order(from_nx(h)) == order


def test_srg16_pair():
    s, r = shrikhande(), rook4()
    assert automorphism_order(s) == 192
    assert automorphism_order(r) == 1152
    assert certificate(s) != certificate(r)
    assert isomorphism(s, r) is None
    assert nx.is_isomorphic(to_nx(s), to_nx(r)) is False


def test_no_plus_group_matches_brute_force(no_plus3):
    res = canonical_form(no_plus3)
    assert res.group_order == count_automorphisms(no_plus3.rows) == 40320
    for gen in res.generators:
        assert verify_isomorphism(no_plus3, no_plus3, gen)


def test_certificate_invariant_under_relabeling(no_plus3):
    cert = certificate(no_plus3)
    for seed in range(100):
        h, _ = shuffled(no_plus3, seed)
        assert certificate(h) == cert


def test_isomorphism_witness(no_plus3):
    h, perm = shuffled(no_plus3, 7)
    phi = isomorphism(no_plus3, h)
    assert phi is not None and verify_isomorphism(no_plus3, h, phi)
    assert isomorphism(no_plus3, complement(no_plus3)) is None


def test_isomorphism_cheap_rejects():
    assert isomorphism(from_nx(nx.path_graph(3)), from_nx(nx.path_graph(4))) is None
    assert isomorphism(from_nx(nx.path_graph(4)), from_nx(nx.star_graph(3))) is None


def test_verify_isomorphism_rejects_bad_maps():
    g = from_nx(nx.path_graph(3))
    assert verify_isomorphism(g, g, (0, 1, 2))
    assert verify_isomorphism(g, g, (2, 1, 0))
    assert not verify_isomorphism(g, g, (1, 0, 2))
    assert not verify_isomorphism(g, g, (0, 0, 2))


def test_canon_result_fields(no_plus3):
    res = canonical_form(no_plus3)
    assert sorted(res.labeling) == list(range(28))
    prod = 1
    for s in res.orbit_sizes:
        prod *= s
    assert prod == res.group_order
    assert len(res.base) == len(res.orbit_sizes)
    assert res.nodes >= 1


def test_certificate_is_the_relabeled_graph():
    g = from_nx(nx.frucht_graph())
    res = canonical_form(g)
    pos = {v: i for i, v in enumerate(res.labeling)}
    relabeled = g.relabel([pos[v] for v in range(g.order)])
    assert encode_graph6(relabeled) == res.certificate


@settings(max_examples=120, deadline=None)
@given(graphs(), st.randoms(use_true_random=False))
def test_certificate_random_relabel(g, rnd):
    perm = list(range(g.order))
    rnd.shuffle(perm)
    h = g.relabel(perm)
    assert certificate(g) == certificate(h)
    phi = isomorphism(g, h)
    assert phi is not None and verify_isomorphism(g, h, phi)


@settings(max_examples=120, deadline=None)
@given(graphs(8))
def test_group_order_against_brute_force(g):
    assert automorphism_order(g) == count_automorphisms(g.rows)


@settings(max_examples=150, deadline=None)
@given(graphs(9), graphs(9))
def test_isomorphism_agrees_with_vf2(g, h):
    ours = isomorphism(g, h) is not None
    assert ours == nx.is_isomorphic(to_nx(g), to_nx(h))
    assert ours == (certificate(g) == certificate(h))


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded):
        canonical_form(from_nx(nx.petersen_graph()), budget=1)


def test_node_budget_env(monkeypatch):
    monkeypatch.delenv("POLARLAB_NODE_BUDGET", raising=False)
    assert node_budget() == 10**8
    monkeypatch.setenv("POLARLAB_NODE_BUDGET", "2")
    assert node_budget() == 2
    with pytest.raises(BudgetExceeded):
        automorphism_order(from_nx(nx.petersen_graph()))
    monkeypatch.setenv("POLARLAB_NODE_BUDGET", "zero")
    with pytest.raises(ValueError):
        node_budget()
    monkeypatch.setenv("POLARLAB_NODE_BUDGET", "0")
    with pytest.raises(ValueError):
        node_budget()
