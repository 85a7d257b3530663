import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sl2weight import graphs as gr
from sl2weight.graphs import Graph


def random_graph(n, rng, p=0.5):
    return Graph.from_edges(n, [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p])


def _brute_isomorphic(g, h):
    if g.n != h.n or g.edge_count != h.edge_count:
        return False
    eh = set(h.edges())
    for perm in itertools.permutations(range(g.n)):
        if all(tuple(sorted((perm[u], perm[v]))) in eh for u, v in g.edges()):
            return True
    return False


def _brute_circumference(g):
    best = 0
    for k in range(3, g.n + 1):
        for cyc in itertools.permutations(range(g.n), k):
            if cyc[0] != min(cyc):
                continue
            if all(g.has_edge(cyc[i], cyc[(i + 1) % k]) for i in range(k)):
                best = k
                break
    return best


def test_construction_and_text():
    g = Graph.parse("4; 0-1, 1-2,2-3")
    assert g.edges() == [(0, 1), (1, 2), (2, 3)]
    assert Graph.parse(g.to_text()) == g
    assert Graph.parse("3;").edge_count == 0
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 0)])
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 2)])
    with pytest.raises(ValueError):
        Graph(2, (0b10, 0))


def test_complete_bipartite():
    g = gr.complete_bipartite(2, 3)
    assert g.n == 5 and g.edge_count == 6
    assert gr.bipartite_parts(g) == (2, 3)
    assert gr.bipartite_parts(gr.complete_bipartite(0, 4)) == (0, 4)
    assert gr.bipartite_parts(Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])) is None
    # a path on 4 vertices is bipartite but not complete bipartite
    assert gr.bipartite_parts(Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])) is None


def test_certificate_distinguishes_small_pairs():
    star = gr.complete_bipartite(1, 3)
    path = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert not gr.is_isomorphic(star, path)
    assert gr.is_isomorphic(gr.complete_bipartite(2, 3), gr.complete_bipartite(3, 2))
    c6 = Graph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
    triangle = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    two_triangles = gr.disjoint_union(triangle, triangle)
    assert not gr.is_isomorphic(c6, two_triangles)


@given(st.integers(0, 9), st.integers(0, 10_000))
@settings(max_examples=80, deadline=None)
def test_certificate_invariant_under_relabelling(n, seed):
    rng = random.Random(seed)
    g = random_graph(n, rng)
    order = list(range(n))
    rng.shuffle(order)
    h = g.relabel(order)
    assert gr.certificate(g) == gr.certificate(h)
    assert gr.canonical_form(g) == gr.canonical_form(h)


def test_certificate_agrees_with_brute_force():
    rng = random.Random(11)
    for _ in range(150):
        n = rng.randint(1, 6)
        g, h = random_graph(n, rng), random_graph(n, rng)
        assert gr.is_isomorphic(g, h) == _brute_isomorphic(g, h)


def test_certificate_on_regular_graphs():
    # Petersen graph versus the 5-prism: both 3-regular on 10 vertices
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    petersen = Graph.from_edges(10, outer + spokes + [(5 + i, 5 + (i + 2) % 5) for i in range(5)])
    prism = Graph.from_edges(10, outer + spokes + [(5 + i, 5 + (i + 1) % 5) for i in range(5)])
    assert not gr.is_isomorphic(petersen, prism)
    perm = list(range(10))
    random.Random(5).shuffle(perm)
    assert gr.is_isomorphic(petersen, petersen.relabel(perm))


def test_certificate_size_bound():
    with pytest.raises(gr.GraphSizeError):
        gr.certificate(Graph.empty(gr.CERTIFICATE_MAX_VERTICES + 1))


@pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34)])
def test_all_graphs_counts(n, count):
    assert len(gr.all_graphs(n)) == count


def test_induced_and_components():
    g = gr.disjoint_union(gr.complete_bipartite(1, 2), gr.complete_bipartite(0, 1))
    assert not gr.is_connected(g)
    assert sorted(h.n for h in gr.components(g)) == [1, 3]
    sub = gr.induced(gr.complete_bipartite(2, 3), [0, 2, 3])
    assert gr.is_isomorphic(sub, gr.complete_bipartite(1, 2))


@given(st.integers(2, 5), st.integers(2, 5), st.integers(0, 10_000))
@settings(max_examples=40, deadline=None)
def test_induced_subgraphs_of_bipartite_are_bipartite_unions(l, n, seed):
    rng = random.Random(seed)
    g = gr.complete_bipartite(l, n)
    mask = rng.getrandbits(l + n)
    h = gr.induced_mask(g, mask)
    a = bin(mask & ((1 << l) - 1)).count("1")
    b = bin(mask >> l).count("1")
    assert gr.is_isomorphic(h, gr.complete_bipartite(a, b))


def test_four_term_graphs():
    # on a single edge b has no neighbour besides a, so G~ = G and G~' = G'
    g = Graph.from_edges(2, [(0, 1)])
    d1, d2, d3, d4 = gr.four_term_graphs(g, 0, 1)
    assert d1 == g and d2.edge_count == 0
    assert d3 == g and d4.edge_count == 0
    # path 0-1-2 with a=0, b=1: G~ toggles 0 against the other neighbour 2 of 1
    p = Graph.from_edges(3, [(0, 1), (1, 2)])
    _, gp, t, tp = gr.four_term_graphs(p, 0, 1)
    assert gp.edges() == [(1, 2)]
    assert t.edges() == [(0, 1), (0, 2), (1, 2)]
    assert tp.edges() == [(0, 2), (1, 2)]
    with pytest.raises(ValueError):
        gr.four_term_graphs(p, 1, 1)


def test_circumference_against_brute_force():
    rng = random.Random(2)
    for _ in range(60):
        g = random_graph(rng.randint(1, 7), rng)
        assert gr.circumference(g) == _brute_circumference(g)
    for l in range(2, 5):
        for n in range(2, 5):
            assert gr.circumference(gr.complete_bipartite(l, n)) == 2 * min(l, n)
    assert gr.circumference(gr.complete_bipartite(1, 5)) == 0
