import json
import random
from fractions import Fraction

import pytest

from sl2weight import graphs as gr
from sl2weight import hopf
from sl2weight import sl2
from sl2weight.algebra import C, CasimirPoly
from sl2weight.graphs import Graph
from sl2weight.hopf import GraphCombo

K = gr.complete_bipartite
w = sl2.graph_value


def test_comultiply_mass_and_example():
    for g in (K(1, 1), K(2, 2), Graph.from_edges(3, [(0, 1), (1, 2)])):
        assert hopf.comultiply(g).mass() == 2**g.n
    delta = hopf.comultiply(K(1, 1))
    unit, pt = Graph.empty(0), K(0, 1)
    assert delta.coefficient(unit, K(1, 1)) == 1
    assert delta.coefficient(K(1, 1), unit) == 1
    assert delta.coefficient(pt, pt) == 2
    assert len(delta) == 3


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_coassociative(n):
    for g in gr.all_graphs(n):
        assert hopf.coassociator(g).is_zero()


def test_is_primitive():
    assert hopf.is_primitive(GraphCombo.of(K(0, 1)))
    assert not hopf.is_primitive(GraphCombo.of(K(1, 1)))
    combo = GraphCombo.of(K(1, 1)) - GraphCombo.of(K(0, 2))
    assert hopf.is_primitive(combo)
    with pytest.raises(ValueError):
        hopf.is_primitive(GraphCombo.of(K(0, 1)) + GraphCombo.of(K(1, 1)))


def test_project_primitive_examples():
    assert hopf.project_primitive(K(0, 1)) == GraphCombo.of(K(0, 1))
    assert hopf.project_primitive(K(0, 2)).is_zero()
    assert hopf.project_primitive(K(1, 1)) == GraphCombo.of(K(1, 1)) - GraphCombo.of(K(0, 2))
    # path on three vertices: P3 - 2 K2.pt - pt^3 + 2 pt^3
    p3 = hopf.project_primitive(K(1, 2))
    assert p3.coefficient(K(1, 2)) == 1
    assert p3.coefficient(gr.disjoint_union(K(1, 1), K(0, 1))) == -2
    assert p3.coefficient(K(0, 3)) == 1


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_projection_is_primitive(n):
    for g in gr.all_graphs(n):
        assert hopf.is_primitive(hopf.project_primitive(g))


def test_projection_kills_products():
    rng = random.Random(4)
    for _ in range(20):
        a = rng.choice(gr.all_graphs(rng.randint(1, 3)))
        b = rng.choice(gr.all_graphs(rng.randint(1, 3)))
        assert hopf.project_primitive(gr.disjoint_union(a, b)).is_zero()


def test_projection_is_idempotent():
    for g in gr.all_graphs(4):
        p = hopf.project_primitive(g)
        again = GraphCombo()
        for h, coeff in p:
            again = again + hopf.project_primitive(h).scale(coeff)
        assert again == p


def test_set_partitions_count_bell():
    for n in range(7):
        parts = list(hopf.set_partitions((1 << n) - 1))
        assert len(parts) == hopf.bell(n)
        assert all(sum(parts_) == (1 << n) - 1 for parts_ in parts)
    assert [hopf.bell(n) for n in range(7)] == [1, 1, 2, 5, 15, 52, 203]


def test_project_eval_values():
    assert hopf.project_eval(K(1, 1), w) == -C
    assert hopf.project_eval(K(1, 2), w) == C
    assert hopf.project_eval(K(2, 2), w) == 2 * C**2 - 4 * C
    assert hopf.project_eval(K(0, 1), w) == C
    assert hopf.project_eval(K(0, 3), w) == CasimirPoly()


def test_project_eval_matches_combination():
    for g in gr.all_graphs(4):
        if all(gr.bipartite_parts(h) is not None for h in gr.components(g)):
            via_combo = hopf.project_primitive(g).evaluate(w)
            assert via_combo == hopf.project_eval(g, w)


@pytest.mark.parametrize("l", [1, 2, 3])
def test_collapsed_matches_partition_sum(l):
    for n in range(0, 7 - l):
        assert hopf.project_bipartite_eval(l, n, w) == hopf.project_eval(K(l, n), w)


def test_collapsed_on_generic_invariant():
    # the collapsed formulas only use multiplicativity, so any such invariant works
    def edges_and_vertices(g):
        return CasimirPoly([g.edge_count, g.n])

    def mult(g):
        out = CasimirPoly([1])
        for h in gr.components(g):
            out = out * edges_and_vertices(h)
        return out

    for l in (1, 2, 3):
        for n in range(0, 5):
            assert hopf.project_bipartite_eval(l, n, mult) == hopf.project_eval(K(l, n), mult)


def test_projection_egf_consistent():
    for l in (1, 2, 3):
        coeffs = hopf.egf_coefficients(hopf.projection_egf(l, w, 8), l)
        assert coeffs == [hopf.project_bipartite_eval(l, n, w) for n in range(9 - l)]
    p0 = hopf.egf_coefficients(hopf.projection_egf(0, w, 4), 0)
    assert p0 == [CasimirPoly(), C, CasimirPoly(), CasimirPoly(), CasimirPoly()]


def test_json_roundtrip():
    combo = hopf.project_primitive(K(2, 2))
    text = json.dumps(combo.to_json())
    assert GraphCombo.from_json(json.loads(text)) == combo
    assert combo.scale(Fraction(1, 3)).scale(3) == combo


def test_size_guards():
    with pytest.raises(hopf.HopfSizeError):
        hopf.comultiply(Graph.empty(hopf.COMULTIPLY_MAX_VERTICES + 1))
    with pytest.raises(ValueError):
        hopf.project_bipartite_eval(4, 1, w)
