"""The Hopf algebra of graphs: products are disjoint unions, the coproduct splits the
vertex set in all ways, and primitive parts are extracted by the signed sum over
set partitions.

Linear combinations are keyed by isomorphism certificate.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Callable, Iterator

from .algebra import ONE, ZERO, CasimirPoly, SeriesX, binomial, multinomial, series_exp
from .graphs import (
    Graph,
    canonical_form,
    certificate,
    complete_bipartite,
    disjoint_union,
    induced_mask,
    _bits,
)

COMULTIPLY_MAX_VERTICES = 10
PRIMITIVE_CHECK_MAX_GRADE = 8
PROJECTION_MAX_VERTICES = 10

GraphInvariant = Callable[[Graph], CasimirPoly]


class HopfSizeError(ValueError):
    pass


class GraphCombo:
    """Finite rational combination of graphs up to isomorphism."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict[bytes, tuple[Graph, Fraction]] = {}
        if terms:
            for g, coeff in terms:
                self._add(g, Fraction(coeff))

    @classmethod
    def of(cls, g: Graph, coeff=1) -> "GraphCombo":
        return cls([(g, coeff)])

    def _add(self, g: Graph, coeff: Fraction, cert: bytes | None = None):
        if not coeff:
            return
        key = cert if cert is not None else certificate(g)
        if key in self.terms:
            rep, old = self.terms[key]
            new = old + coeff
            if new:
                self.terms[key] = (rep, new)
            else:
                del self.terms[key]
        else:
            self.terms[key] = (canonical_form(g) if cert is None else g, coeff)

    def copy(self) -> "GraphCombo":
        out = GraphCombo()
        out.terms = dict(self.terms)
        return out

    def __iter__(self) -> Iterator[tuple[Graph, Fraction]]:
        return iter(self.terms.values())

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, g: Graph) -> Fraction:
        hit = self.terms.get(certificate(g))
        return hit[1] if hit else Fraction(0)

    def grades(self) -> set[int]:
        return {g.n for g, _ in self}

    def __eq__(self, other) -> bool:
        if not isinstance(other, GraphCombo):
            return NotImplemented
        return {k: v[1] for k, v in self.terms.items()} == {
            k: v[1] for k, v in other.terms.items()
        }

    def __add__(self, other: "GraphCombo") -> "GraphCombo":
        out = self.copy()
        for key, (g, coeff) in other.terms.items():
            out._add(g, coeff, key)
        return out

    def __neg__(self) -> "GraphCombo":
        out = GraphCombo()
        out.terms = {k: (g, -c) for k, (g, c) in self.terms.items()}
        return out

    def __sub__(self, other: "GraphCombo") -> "GraphCombo":
        return self + (-other)

    def scale(self, k) -> "GraphCombo":
        k = Fraction(k)
        if not k:
            return GraphCombo()
        out = GraphCombo()
        out.terms = {key: (g, c * k) for key, (g, c) in self.terms.items()}
        return out

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, GraphCombo):
            return NotImplemented
        out = GraphCombo()
        for g, a in self:
            for h, b in other:
                out._add(disjoint_union(g, h), a * b)
        return out

    __rmul__ = __mul__

    def evaluate(self, w: GraphInvariant) -> CasimirPoly:
        value = ZERO
        for g, coeff in self:
            value = value + w(g) * coeff
        return value

    def __repr__(self) -> str:
        body = " + ".join(f"({c})[{g}]" for g, c in self) or "0"
        return f"GraphCombo({body})"

    def to_json(self) -> list[dict]:
        items = sorted(self.terms.items())
        return [{"graph": g.to_text(), "coeff": str(c)} for _, (g, c) in items]

    @classmethod
    def from_json(cls, obj) -> "GraphCombo":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls((Graph.parse(t["graph"]), Fraction(t["coeff"])) for t in obj)


class TensorCombo:
    """Finite combination of ordered tuples of graphs (tensor factors)."""

    __slots__ = ("terms",)

    def __init__(self):
        self.terms: dict[tuple[bytes, ...], tuple[tuple[Graph, ...], Fraction]] = {}

    def add(self, factors: tuple[Graph, ...], coeff, certs=None):
        coeff = Fraction(coeff)
        if not coeff:
            return
        key = certs if certs is not None else tuple(certificate(g) for g in factors)
        if key in self.terms:
            fs, old = self.terms[key]
            new = old + coeff
            if new:
                self.terms[key] = (fs, new)
            else:
                del self.terms[key]
        else:
            self.terms[key] = (tuple(canonical_form(g) for g in factors), coeff)

    def __iter__(self):
        return iter(self.terms.values())

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorCombo):
            return NotImplemented
        return {k: v[1] for k, v in self.terms.items()} == {
            k: v[1] for k, v in other.terms.items()
        }

    def __sub__(self, other: "TensorCombo") -> "TensorCombo":
        out = TensorCombo()
        out.terms = dict(self.terms)
        for key, (fs, c) in other.terms.items():
            out.add(fs, -c, key)
        return out

    def coefficient(self, *factors: Graph) -> Fraction:
        hit = self.terms.get(tuple(certificate(g) for g in factors))
        return hit[1] if hit else Fraction(0)

    def mass(self) -> Fraction:
        return sum((c for _, c in self), Fraction(0))


def _check_size(g: Graph, bound: int, what: str):
    if g.n > bound:
        raise HopfSizeError(f"{what} supports at most {bound} vertices, got {g.n}")


def comultiply(g: Graph) -> TensorCombo:
    """``sum_U G|_U (x) G|_(V minus U)`` over all vertex subsets ``U``."""
    _check_size(g, COMULTIPLY_MAX_VERTICES, "comultiply")
    out = TensorCombo()
    full = (1 << g.n) - 1
    for mask in range(1 << g.n):
        out.add((induced_mask(g, mask), induced_mask(g, full ^ mask)), 1)
    return out


def comultiply_combo(x: GraphCombo) -> TensorCombo:
    out = TensorCombo()
    for g, coeff in x:
        for (a, b), c in comultiply(g):
            out.add((a, b), c * coeff)
    return out


def _iterated(g: Graph, left: bool) -> TensorCombo:
    """``(delta (x) id) delta`` if ``left`` else ``(id (x) delta) delta``."""
    out = TensorCombo()
    for (a, b), c in comultiply(g):
        if left:
            for (a1, a2), c2 in comultiply(a):
                out.add((a1, a2, b), c * c2)
        else:
            for (b1, b2), c2 in comultiply(b):
                out.add((a, b1, b2), c * c2)
    return out


def coassociator(g: Graph) -> TensorCombo:
    """``(delta (x) id) delta G - (id (x) delta) delta G``; zero when coassociative."""
    return _iterated(g, True) - _iterated(g, False)


def is_primitive(x: GraphCombo) -> bool:
    grades = x.grades()
    if len(grades) > 1:
        raise ValueError(f"is_primitive needs a homogeneous combination, got grades {grades}")
    if grades and max(grades) > PRIMITIVE_CHECK_MAX_GRADE:
        raise HopfSizeError(
            f"is_primitive supports grade at most {PRIMITIVE_CHECK_MAX_GRADE}"
        )
    delta = comultiply_combo(x)
    unit = Graph.empty(0)
    expected = TensorCombo()
    for g, coeff in x:
        expected.add((unit, g), coeff)
        expected.add((g, unit), coeff)
    return (delta - expected).is_zero()


def set_partitions(mask: int) -> Iterator[list[int]]:
    """Unordered partitions of the vertex set ``mask`` into nonempty blocks."""
    if not mask:
        yield []
        return
    low = mask & -mask
    rest = mask ^ low
    # blocks containing the lowest vertex, one per subset of the rest
    sub = rest
    while True:
        block = low | sub
        for tail in set_partitions(rest ^ sub):
            yield [block] + tail
        if not sub:
            break
        sub = (sub - 1) & rest


def bell(n: int) -> int:
    from .algebra import stirling2

    return sum(stirling2(n, k) for k in range(n + 1))


def _partition_weight(m: int) -> int:
    return (-1) ** (m - 1) * math.factorial(m - 1)


def project_primitive(g: Graph) -> GraphCombo:
    """Projection onto primitives along decomposables:
    ``sum over partitions of (-1)^(m-1) (m-1)! prod G|_(V_i)``."""
    _check_size(g, PROJECTION_MAX_VERTICES, "project_primitive")
    if g.n == 0:
        return GraphCombo()
    block_cert: dict[int, bytes] = {}
    block_graph: dict[int, Graph] = {}
    product_key: dict[tuple, tuple[bytes, Graph]] = {}
    out = GraphCombo()
    for blocks in set_partitions((1 << g.n) - 1):
        certs = []
        for b in blocks:
            if b not in block_cert:
                h = induced_mask(g, b)
                block_cert[b] = certificate(h)
                block_graph[b] = canonical_form(h)
            certs.append(block_cert[b])
        key = tuple(sorted(certs))
        if key not in product_key:
            prod = Graph.empty(0)
            for b in sorted(blocks, key=lambda b: block_cert[b]):
                prod = disjoint_union(prod, block_graph[b])
            product_key[key] = (certificate(prod), canonical_form(prod))
        cert, rep = product_key[key]
        out._add(rep, Fraction(_partition_weight(len(blocks))), cert)
    return out


def project_eval(g: Graph, w: GraphInvariant) -> CasimirPoly:
    """``w(pi(G))`` for a multiplicative invariant ``w``, as the partition sum of
    products of ``w`` on the induced blocks."""
    _check_size(g, PROJECTION_MAX_VERTICES, "project_eval")
    if g.n == 0:
        return ZERO
    block_value: dict[int, CasimirPoly] = {}

    def wb(b: int) -> CasimirPoly:
        v = block_value.get(b)
        if v is None:
            v = block_value[b] = w(induced_mask(g, b))
        return v

    by_weight: dict[int, CasimirPoly] = {}
    for blocks in set_partitions((1 << g.n) - 1):
        prod = ONE
        for b in blocks:
            prod = prod * wb(b)
        m = len(blocks)
        by_weight[m] = by_weight.get(m, ZERO) + prod
    total = ZERO
    for m, s in by_weight.items():
        total = total + s * _partition_weight(m)
    return total


class _BipartiteValues:
    def __init__(self, w: GraphInvariant):
        self.w = w
        self.cache: dict[tuple[int, int], CasimirPoly] = {}

    def __call__(self, l: int, n: int) -> CasimirPoly:
        key = (l, n)
        if key not in self.cache:
            self.cache[key] = self.w(complete_bipartite(l, n))
        return self.cache[key]


def project_bipartite_eval(l: int, n: int, w: GraphInvariant) -> CasimirPoly:
    """``w(pi(K_{l,n}))`` for ``l <= 3`` from the collapsed sums over part sizes.

    Partitions are grouped by how the ``l`` selected vertices are split among
    blocks; the unselected vertices outside those blocks contribute
    ``(-a)^(n-k) w(K_{0,1})^(n-k)`` where ``a`` counts the blocks holding selected
    vertices, with overall sign ``(-1)^(a-1) (a-1)!``.
    """
    if l not in (1, 2, 3):
        raise ValueError(f"collapsed projection formulas cover l in 1..3, got {l}")
    if n < 0:
        raise ValueError("n must be non-negative")
    k = _BipartiteValues(w)
    w01 = k(0, 1)
    pw = [ONE]
    for _ in range(n):
        pw.append(pw[-1] * w01)

    # all selected vertices in one block
    total = ZERO
    for j in range(n + 1):
        total = total + k(l, j) * pw[n - j] * (binomial(n, j) * (-1) ** (n - j))
    if l == 1:
        return total

    # selected vertices split 2 + 1 (l = 3, three ways) or 1 + 1 (l = 2)
    big = 2 if l == 3 else 1
    ways = 3 if l == 3 else 1
    split2 = ZERO
    for kk in range(n + 1):
        for i in range(kk + 1):
            term = k(big, i) * k(1, kk - i) * pw[n - kk]
            split2 = split2 + term * (multinomial(i, kk - i, n - kk) * (-2) ** (n - kk))
    total = total - split2 * ways
    if l == 2:
        return total

    split3 = ZERO
    for kk in range(n + 1):
        for i in range(kk + 1):
            for j in range(kk - i + 1):
                r = kk - i - j
                term = k(1, i) * k(1, j) * k(1, r) * pw[n - kk]
                split3 = split3 + term * (multinomial(i, j, r, n - kk) * (-3) ** (n - kk))
    return total + split3 * 2


def bipartite_egf(l: int, w: GraphInvariant, order: int) -> SeriesX:
    """``sum_n w(K_{l,n}) x^(n+l) / n!`` truncated at ``x^order``."""
    k = _BipartiteValues(w)
    coeffs = [ZERO] * (order + 1)
    for n in range(order - l + 1):
        coeffs[n + l] = k(l, n).scale(Fraction(1, math.factorial(n)))
    return SeriesX(coeffs, order)


def projection_egf(l: int, w: GraphInvariant, order: int) -> SeriesX:
    """Generating function ``sum_n w(pi(K_{l,n})) x^(n+l) / n!`` built from the
    bipartite value series:

    * ``P1 = K1 exp(-w(K01) x)``
    * ``P2 = K2 exp(-w(K01) x) - P1^2``
    * ``P3 = K3 exp(-w(K01) x) - 3 P2 P1 - P1^3``
    """
    if l not in (0, 1, 2, 3):
        raise ValueError(f"l must be in 0..3, got {l}")
    if order < l:
        raise ValueError(f"truncation order {order} too small for l = {l}")
    w01 = w(complete_bipartite(0, 1))
    if l == 0:
        return SeriesX([ZERO, w01], order)
    damp = series_exp(SeriesX([ZERO, -w01], order))
    p1 = bipartite_egf(1, w, order) * damp
    if l == 1:
        return p1
    p2 = bipartite_egf(2, w, order) * damp - p1 * p1
    if l == 2:
        return p2
    return bipartite_egf(3, w, order) * damp - p2 * p1 * 3 - p1 * p1 * p1


def egf_coefficients(series: SeriesX, l: int) -> list[CasimirPoly]:
    """``n! [x^(n+l)]`` for ``n = 0..order-l``."""
    return [
        series[n + l].scale(math.factorial(n)) for n in range(series.order - l + 1)
    ]
