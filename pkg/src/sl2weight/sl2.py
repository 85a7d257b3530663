"""The sl2 weight system.

:func:`eval` reduces a chord diagram with the Chmutov--Varchenko rules: split along
connected components of the intersection graph, strip leaves with the factor
``c - 1``, and otherwise apply one of the two six-term relations, each of whose
right-hand terms has either fewer chords or fewer crossings. Values are memoised
on the canonical word.

The rest of the module holds the closed forms, recurrences and generating
functions for the complete bipartite families.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from . import chords as ch
from .algebra import C, ONE, ZERO, CasimirPoly, SeriesX
from .chords import ChordDiagram
from .graphs import Graph, bipartite_parts, certificate, component_masks, _bits


class ReductionError(RuntimeError):
    pass


# Six-term relations. A left-hand instance consists of chords X, Y, Z whose six
# endpoints sit in four groups in circular order B, A, D, C with A and D pairs of
# adjacent positions; other chords only have endpoints in the gaps between groups.
# Each right-hand term assigns local chords to the slots (B, A..., D..., C).
_LHS = {
    # path X - Z - Y
    1: ("X", ("Z", "X"), ("Y", "Z"), "Y"),
    # triangle
    2: ("Y", ("Z", "X"), ("Y", "Z"), "X"),
}
_RHS = {
    1: (
        (+1, ("a", ("b",), ("b",), "a")),
        (-1, ("p", ("q",), ("p",), "q")),
        (+1, ("r", ("r", "s"), ("t", "s"), "t")),
        (+1, ("b", ("a", "b"), ("a", "c"), "c")),
        (-1, ("a", ("a", "b"), ("b", "c"), "c")),
    ),
    2: (
        (+1, ("a", ("b",), ("b",), "a")),
        (-1, ("p", ("p",), ("q",), "q")),
        (+1, ("Y", ("Z", "X"), ("Y", "X"), "Z")),
        (+1, ("r", ("a", "b"), ("a", "r"), "b")),
        (-1, ("r", ("a", "b"), ("b", "r"), "a")),
    ),
}


@dataclass
class SixTermInstance:
    relation: int
    diagram: ChordDiagram
    terms: list[tuple[int, ChordDiagram]]


def _measure(d: ChordDiagram) -> tuple[int, int]:
    return (d.order, d.crossing_count())


def six_term_instances(d: ChordDiagram):
    """Yield every six-term instance in ``d`` and in its mirror image."""
    for base in (d.word, d.word[::-1]):
        n2 = len(base)
        for p in range(n2):
            w = base[p:] + base[:p]
            z, x = w[0], w[1]
            if z == x:
                continue
            pos: dict[int, list[int]] = {}
            for i, lab in enumerate(w):
                pos.setdefault(lab, []).append(i)
            z_other = pos[z][1] if pos[z][0] == 0 else pos[z][0]
            q = z_other - 1
            if q < 2:
                continue
            y = w[q]
            if y in (x, z):
                continue
            x_other = pos[x][0] if pos[x][1] == 1 else pos[x][1]
            y_other = pos[y][0] if pos[y][1] == q else pos[y][1]
            if x_other <= q + 1 or y_other <= q + 1:
                continue
            names = {"X": x, "Y": y, "Z": z}
            for rel, (b_lab, _, _, c_lab) in _LHS.items():
                b_at = x_other if b_lab == "X" else y_other
                c_at = x_other if c_lab == "X" else y_other
                if not (q + 1 < c_at < b_at):
                    continue
                gaps = {
                    "g2": w[2:q],
                    "g3": w[q + 2 : c_at],
                    "g4": w[c_at + 1 : b_at],
                    "g1": w[b_at + 1 :],
                }
                # local chords get tuple labels so they never collide with gap labels
                loc = lambda s: ("local", names.get(s, s))
                terms = []
                for sign, (tb, ta, td, tc) in _RHS[rel]:
                    word = (
                        [loc(tb)]
                        + list(gaps["g1"])
                        + [loc(s) for s in ta]
                        + list(gaps["g2"])
                        + [loc(s) for s in td]
                        + list(gaps["g3"])
                        + [loc(tc)]
                        + list(gaps["g4"])
                    )
                    terms.append((sign, ChordDiagram.from_word(word)))
                yield SixTermInstance(rel, d, terms)


@dataclass
class EvalCache:
    values: dict = field(default_factory=dict)
    hits: int = 0
    misses: int = 0
    fallbacks: int = 0
    lock: threading.RLock = field(default_factory=threading.RLock, repr=False)

    def get(self, key):
        with self.lock:
            v = self.values.get(key)
            if v is None:
                self.misses += 1
            else:
                self.hits += 1
            return v

    def put(self, key, value):
        with self.lock:
            self.values.setdefault(key, value)

    def clear(self):
        with self.lock:
            self.values.clear()
            self.hits = self.misses = self.fallbacks = 0


class Evaluator:
    """sl2 weight system evaluator with its own memo table.

    ``fallback`` is consulted only when no six-term instance reduces a diagram;
    each such use is counted in ``cache.fallbacks``. Without a fallback that
    situation raises :class:`ReductionError`.
    """

    def __init__(self, fallback: Optional[Callable[[ChordDiagram], CasimirPoly]] = None):
        self.cache = EvalCache()
        self.fallback = fallback

    def __call__(self, d: ChordDiagram) -> CasimirPoly:
        return self.eval(d)

    def eval(self, d: ChordDiagram) -> CasimirPoly:
        d = ch.canonicalize(d)
        cached = self.cache.get(d.word)
        if cached is not None:
            return cached
        value = self._compute(d)
        self.cache.put(d.word, value)
        return value

    def _compute(self, d: ChordDiagram) -> CasimirPoly:
        n = d.order
        if n == 0:
            return ONE
        if n == 1:
            return C
        g = ch.intersection_graph(d)
        comps = component_masks(g)
        if len(comps) > 1:
            value = ONE
            for mask in comps:
                value = value * self.eval(ch.restrict(d, [v + 1 for v in _bits(mask)]))
            return value
        for v in range(n):
            if g.degree(v) == 1:
                return (C - 1) * self.eval(ch.delete_chord(d, v + 1))
        here = _measure(d)
        for inst in six_term_instances(d):
            if all(_measure(t) < here for _, t in inst.terms):
                value = ZERO
                for sign, t in inst.terms:
                    value = value + self.eval(t) * sign
                return value
        if self.fallback is None:
            raise ReductionError(f"no decreasing rewrite found for {d}")
        with self.cache.lock:
            self.cache.fallbacks += 1
        return self.fallback(d)


_default = Evaluator()


def default_evaluator() -> Evaluator:
    return _default


def eval(d: ChordDiagram) -> CasimirPoly:  # noqa: A001 - mirrors the module API
    return _default.eval(d)


# -- complete bipartite families -------------------------------------------


def k_closed(l: int, n: int) -> CasimirPoly:
    """w(K_{l,n}) for l <= 3 in closed form."""
    if n < 0:
        raise ValueError("n must be non-negative")
    cm1, cm3, cm6 = C - 1, C - 3, C - 6
    if l == 0:
        return C**n
    if l == 1:
        return C * cm1**n
    if l == 2:
        inner = (4 * C - 3) * cm3**n + 3 * cm1**n + 2 * C ** (n + 1)
        return (C * inner).scale(Fraction(1, 6))
    if l == 3:
        inner = (
            3 * (4 * C**2 - 11 * C + 6) * cm6**n
            + 10 * (4 * C - 3) * cm3**n
            + 6 * (3 * C**2 - 2 * C + 2) * cm1**n
            + 5 * C ** (n + 1)
        )
        return (C * inner).scale(Fraction(1, 30))
    raise ValueError(f"closed forms exist for l in 0..3, got {l}")


def _k2_rec_table(n_max: int) -> list[CasimirPoly]:
    k = [C**2, C * (C - 1) ** 2]
    for n in range(2, n_max + 1):
        k.append((C - 3) * k[n - 1] + C * (C**n + (C - 1) ** (n - 1)))
    return k[: n_max + 1]


def k_rec(l: int, n: int) -> CasimirPoly:
    """w(K_{l,n}) for l in {2, 3} from the recurrences in ``n``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if l == 2:
        return _k2_rec_table(n)[n]
    if l != 3:
        raise ValueError(f"recurrences exist for l in {{2, 3}}, got {l}")
    k2 = _k2_rec_table(max(n + 2, 3))
    k3 = [C**3, C * (C - 1) ** 3, k2[3]]
    for m in range(3, n + 1):
        value = (
            -2 * (C + 3) * k3[m - 1]
            + 3 * C * (C - 6) * k3[m - 2]
            + 2 * k2[m + 2]
            + 11 * k2[m + 1]
            - (12 * C**2 - 11 * C - 16) * k2[m]
            + (16 * C**3 - 55 * C**2 + 32 * C + 9) * k2[m - 1]
            - 3 * C * (2 * C**3 - 11 * C**2 + 16 * C - 9) * k2[m - 2]
            + C * (C - 1) ** (m - 2) * (4 * C - 1) * (3 * C**2 - 2 * C + 1)
            - 8 * C ** (m + 1)
        )
        k3.append(value)
    return k3[n]


def k_triangle(n: int) -> CasimirPoly:
    """w(K_{1,1,n}) = k_{2,n} - c(c-1)^n."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return k_closed(2, n) - C * (C - 1) ** n


def egf_K(l: int, order: int) -> SeriesX:
    """``sum_n k_{l,n} x^(n+l) / n!`` truncated at ``x^order``."""
    if not 0 <= l <= 3:
        raise ValueError(f"l must be in 0..3, got {l}")
    if order < l:
        raise ValueError(f"truncation order {order} is below the leading power x^{l}")
    coeffs = [ZERO] * (order + 1)
    fact = 1
    for n in range(order - l + 1):
        if n:
            fact *= n
        coeffs[n + l] = k_closed(l, n).scale(Fraction(1, fact))
    return SeriesX(coeffs, order)


def egf_K_exponential(l: int, order: int) -> SeriesX:
    """The same series assembled from its exponential closed form, for cross-checks."""
    from .algebra import series_exp

    def ex(a: CasimirPoly) -> SeriesX:
        return series_exp(SeriesX([ZERO, a], order))

    xl = SeriesX([ZERO] * l + [ONE], order)
    if l == 0:
        return ex(C)
    if l == 1:
        return xl * ex(C - 1) * C
    if l == 2:
        body = ex(C - 3) * (4 * C - 3) + ex(C - 1) * 3 + ex(C) * (2 * C)
        return xl * body * C.scale(Fraction(1, 6))
    if l == 3:
        body = (
            ex(C - 6) * (3 * (4 * C**2 - 11 * C + 6))
            + ex(C - 3) * (10 * (4 * C - 3))
            + ex(C - 1) * (6 * (3 * C**2 - 2 * C + 2))
            + ex(C) * (5 * C)
        )
        return xl * body * C.scale(Fraction(1, 30))
    raise ValueError(f"l must be in 0..3, got {l}")


# Reference rational functions for the ordinary generating functions of the
# projection values, as (numerator, denominator) polynomials in s with
# CasimirPoly coefficients.
def _spoly(*coeffs) -> list[CasimirPoly]:
    return [CasimirPoly._lift(a) for a in coeffs]


def _smul(a: list, b: list) -> list:
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def _sadd(a: list, b: list) -> list:
    n = max(len(a), len(b))
    a = a + [ZERO] * (n - len(a))
    b = b + [ZERO] * (n - len(b))
    return [x + y for x, y in zip(a, b)]


def _sscale(a: list, k) -> list:
    return [x * k for x in a]


def ogf_rational(l: int) -> tuple[list[CasimirPoly], list[CasimirPoly]]:
    s = _spoly(0, 1)
    one = _spoly(1)

    def lin(k):  # 1 + k s
        return _spoly(1, k)

    cs = _sscale(s, C)
    if l == 1:
        return cs, lin(1)
    if l == 2:
        num = _smul(cs, _sadd(lin(2), _smul(_sscale(s, 2 * C), lin(1))))
        den = _smul(_smul(lin(1), lin(2)), lin(3))
        return num, den
    if l == 3:
        t1 = _smul(_smul(_spoly(-1, 3), lin(2)), lin(4))
        t2 = _sscale(_smul(s, _spoly(5, 21, 10, -12)), -2 * C)
        t3 = _sscale(_smul(_smul(s, s), lin(2)), -12 * C**2)
        num = _smul(cs, _sadd(_sadd(t1, t2), t3))
        den = _smul(_smul(_smul(_smul(lin(1), lin(2)), lin(3)), lin(4)), lin(6))
        return num, den
    raise ValueError(f"l must be in 1..3, got {l}")


def ogf_P(l: int, order: int) -> list[CasimirPoly]:
    """First ``order + 1`` power-series coefficients of the reference rational OGF.

    The denominator has constant term 1, so ``den * f = num`` gives the linear
    recurrence ``f_k = num_k - sum_{j>=1} den_j f_{k-j}``.
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    num, den = ogf_rational(l)
    assert den[0] == ONE
    f: list[CasimirPoly] = []
    for k in range(order + 1):
        acc = num[k] if k < len(num) else ZERO
        for j in range(1, min(k, len(den) - 1) + 1):
            acc = acc - den[j] * f[k - j]
        f.append(acc)
    return f


# -- graph-level evaluation ------------------------------------------------


def graph_value(g: Graph, evaluator: Optional[Evaluator] = None) -> CasimirPoly:
    """w on a graph whose components are complete bipartite (realised by
    :func:`chords.bipartite_diagram`). Other graphs have no realising diagram here."""
    ev = evaluator or _default
    value = ONE
    from .graphs import induced_mask

    for mask in component_masks(g):
        parts = bipartite_parts(induced_mask(g, mask))
        if parts is None:
            raise KeyError(
                f"no chord diagram known for component {induced_mask(g, mask)}"
            )
        value = value * ev.eval(ch.bipartite_diagram(*parts))
    return value


class DiagramBackedInvariant:
    """Graph invariant ``w`` keyed by isomorphism certificate, populated from chord
    diagrams whose intersection graphs realise the needed graphs."""

    def __init__(self, evaluator: Optional[Evaluator] = None):
        self.evaluator = evaluator or _default
        self._table: dict[bytes, CasimirPoly] = {}
        self._lock = threading.Lock()

    def register(self, d: ChordDiagram) -> None:
        key = certificate(ch.intersection_graph(d))
        value = self.evaluator.eval(d)
        with self._lock:
            self._table.setdefault(key, value)

    def __call__(self, g: Graph) -> CasimirPoly:
        with self._lock:
            hit = self._table.get(certificate(g)) if g.n <= 13 else None
        if hit is not None:
            return hit
        return graph_value(g, self.evaluator)


def sl2_bipartite_table(l_max: int, n_max: int) -> dict[tuple[int, int], CasimirPoly]:
    return {(l, n): k_closed(l, n) for l in range(l_max + 1) for n in range(n_max + 1)}


def is_monic_of_degree(p: CasimirPoly, n: int) -> bool:
    return p.degree == n and p.leading() == 1
