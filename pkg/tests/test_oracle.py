import random
from fractions import Fraction

import pytest

from sl2weight import chords as ch
from sl2weight import oracle, sl2
from sl2weight.algebra import C, ONE


def _mm(a, b):
    return [[sum(a[i][t] * b[t][j] for t in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def _sub(a, b):
    return [[x - y for x, y in zip(r, s)] for r, s in zip(a, b)]


def _scale(k, a):
    return [[k * x for x in r] for r in a]


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_irrep_brackets(d):
    rep = oracle.irrep(d)
    E, F, H = rep.E, rep.F, rep.H
    assert _sub(_mm(H, E), _mm(E, H)) == _scale(2, E)
    assert _sub(_mm(H, F), _mm(F, H)) == _scale(-2, F)
    assert _sub(_mm(E, F), _mm(F, E)) == [list(r) for r in H]


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_casimir_is_scalar(d):
    rep = oracle.irrep(d)
    lam = rep.casimir_eigenvalue()
    cas = rep.casimir_matrix()
    assert cas == [[lam if i == j else 0 for j in range(d)] for i in range(d)]
    if d == 2:
        assert lam == Fraction(3, 2)


def test_raw_eval_small():
    for dim in range(1, 5):
        assert oracle.raw_eval(ch.EMPTY, dim) == 1
        assert oracle.raw_eval(ch.parse_dow("1 1"), dim) == Fraction(dim * dim - 1, 2)


def test_calibration():
    assert oracle.chord_factor() == Fraction(1, 2)
    assert oracle.eval_oracle(ch.parse_dow("1 1")) == C
    assert oracle.eval_oracle(ch.parse_dow("1 2 1 2")) == C**2 - C
    assert oracle.eval_oracle(ch.EMPTY) == ONE


def test_oracle_examples():
    assert oracle.eval_oracle(ch.parse_dow("1 2 3 1 2 3")) == C * (C - 1) * (C - 2)
    assert oracle.eval_oracle(ch.bipartite_diagram(3, 3)) == (
        C**6 - 9 * C**5 + 54 * C**4 - 174 * C**3 + 241 * C**2 - 103 * C
    )


def test_oracle_rotation_invariant():
    rng = random.Random(6)
    for _ in range(8):
        d = ch.random_diagram(rng.randint(1, 4), rng)
        r = rng.randrange(2 * d.order)
        rot = ch.ChordDiagram.from_word(d.word[r:] + d.word[:r])
        assert oracle.eval_oracle(rot) == oracle.eval_oracle(d)


def test_oracle_multiplicative():
    a, b = ch.parse_dow("1 2 1 2"), ch.parse_dow("1 2 3 1 3 2")
    assert oracle.eval_oracle(ch.product(a, b)) == oracle.eval_oracle(a) * oracle.eval_oracle(b)


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_oracle_agrees_with_eval(n):
    for d in ch.enumerate_diagrams(n):
        assert oracle.eval_oracle(d) == sl2.eval(d)


def test_order_bound():
    with pytest.raises(oracle.OracleError):
        oracle.raw_eval(ch.bipartite_diagram(3, 4), 2)
