"""Verification suites shared by the ``verify`` command and the acceptance tests.

Each check returns a :class:`CheckResult`; suites are plain functions of a
:class:`RunConfig` and stop with :class:`BudgetExceeded` once the time budget runs
out.
"""

from __future__ import annotations

import math
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import chords as ch
from . import graphs as gr
from . import hopf
from . import oracle
from . import sl2
from .algebra import C, CasimirPoly, ZERO, falling_factorial, stirling2


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class RunConfig:
    max_order: int = 6
    time_budget_seconds: int = 300
    output_format: str = "human"
    seed: int = 0
    progress: bool = False
    started: float = field(default_factory=time.monotonic)

    def tick(self, what: str = ""):
        if time.monotonic() - self.started > self.time_budget_seconds:
            raise BudgetExceeded(f"time budget of {self.time_budget_seconds}s exhausted {what}")

    def note(self, msg: str):
        if self.progress:
            print(msg, file=sys.stderr, flush=True)


@dataclass
class CheckResult:
    name: str
    passed: bool
    checked: int
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        return f"[{status}] {self.name}: {self.checked} checked{extra}"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "detail": self.detail,
        }


def _evaluator_with_fallback() -> sl2.Evaluator:
    return sl2.Evaluator(fallback=oracle.eval_oracle)


# -- individual checks -----------------------------------------------------


def check_closed_forms(cfg: RunConfig, max_total: int = 9) -> CheckResult:
    ev = sl2.default_evaluator()
    count, failures = 0, []
    for l in (1, 2, 3):
        for n in range(0, max_total - l + 1):
            if n > 8:
                continue
            cfg.tick("in closed forms")
            count += 1
            if ev.eval(ch.bipartite_diagram(l, n)) != sl2.k_closed(l, n):
                failures.append((l, n))
    return CheckResult("closed forms k_{l,n} = eval(K_{l,n})", not failures, count,
                       f"failures {failures}" if failures else "")


def oracle_corpus(cfg: RunConfig, random_count: int = 50) -> list[ch.ChordDiagram]:
    corpus = []
    for n in range(0, min(cfg.max_order, 5) + 1):
        corpus.extend(ch.enumerate_diagrams(n))
    if cfg.max_order >= 6:
        rng = random.Random(cfg.seed)
        corpus.extend(ch.random_diagram(6, rng) for _ in range(random_count))
    return corpus


def check_oracle(cfg: RunConfig) -> list[CheckResult]:
    ev = _evaluator_with_fallback()
    counts = [len(ch.enumerate_diagrams(n)) for n in range(0, min(cfg.max_order, 5) + 1)]
    corpus = oracle_corpus(cfg)
    mismatches = []
    for i, d in enumerate(corpus):
        cfg.tick("in oracle comparison")
        if i % 25 == 0:
            cfg.note(f"oracle: {i}/{len(corpus)}")
        if ev.eval(d) != oracle.eval_oracle(d):
            mismatches.append(str(d))
    return [
        CheckResult("eval == oracle", not mismatches, len(corpus),
                    f"class counts by order {counts}" + (f"; mismatches {mismatches[:5]}" if mismatches else "")),
        CheckResult("rewrite fallback count is zero", ev.cache.fallbacks == 0, len(corpus),
                    f"fallbacks={ev.cache.fallbacks}"),
    ]


def check_no_fallback(cfg: RunConfig) -> CheckResult:
    ev = _evaluator_with_fallback()
    count = 0
    for n in range(0, min(cfg.max_order, 6) + 1):
        for d in ch.enumerate_diagrams(n):
            cfg.tick("in reduction coverage")
            ev.eval(d)
            count += 1
    return CheckResult("six-term reduction covers all diagrams", ev.cache.fallbacks == 0,
                       count, f"fallbacks={ev.cache.fallbacks}")


def check_four_term(cfg: RunConfig) -> list[CheckResult]:
    ev = sl2.default_evaluator()
    top = min(cfg.max_order, 5)
    vanish_fail, graph_fail, count = [], [], 0
    for n in range(2, top + 1):
        for d in ch.enumerate_diagrams(n):
            cfg.tick("in four-term check")
            labels = list(range(1, n + 1))
            for a, b, p, words in ch.four_term_words(d):
                count += 1
                base = ch.labelled_intersection_graph(words[0], labels)
                expected = gr.four_term_graphs(base, a - 1, b - 1)
                got = [ch.labelled_intersection_graph(w, labels) for w in words]
                if list(expected) != got:
                    graph_fail.append((str(d), a, b, p))
            for q in ch.four_term_quadruples(d):
                total = ZERO
                for sign, t in zip(q.signs, q.terms):
                    total = total + ev.eval(t) * sign
                if not total.is_zero():
                    vanish_fail.append((str(d), q.moving, q.fixed, q.site))
    return [
        CheckResult("four-term quadruples match graph four-term moves", not graph_fail, count,
                    f"failures {graph_fail[:3]}" if graph_fail else ""),
        CheckResult("four-term alternating sum vanishes", not vanish_fail, count,
                    f"failures {vanish_fail[:3]}" if vanish_fail else ""),
    ]


def check_isograph(cfg: RunConfig) -> CheckResult:
    ev = sl2.default_evaluator()
    values: dict[bytes, CasimirPoly] = {}
    bad, count = [], 0
    for n in range(0, min(cfg.max_order, 6) + 1):
        for d in ch.enumerate_diagrams(n):
            cfg.tick("in intersection-graph invariance")
            count += 1
            key = gr.certificate(ch.intersection_graph(d))
            v = ev.eval(d)
            if values.setdefault(key, v) != v:
                bad.append(str(d))
    return CheckResult("eval depends only on the intersection graph", not bad, count,
                       f"{len(values)} graph classes" + (f"; conflicts {bad[:3]}" if bad else ""))


def check_recurrences(cfg: RunConfig) -> list[CheckResult]:
    out = []
    for l in (2, 3):
        bad = [n for n in range(13) if sl2.k_rec(l, n) != sl2.k_closed(l, n)]
        out.append(CheckResult(f"k_rec({l}, n) == k_closed for n <= 12", not bad, 13,
                               f"failures {bad}" if bad else ""))
    bad_x = [
        n for n in range(1, 11)
        if sl2.k_closed(2, n)
        != C ** (n + 1) - sl2.k_triangle(n - 1) + (C - 2) * sl2.k_closed(2, n - 1)
    ]
    out.append(CheckResult("k_{2,n} = c^(n+1) - k_{1,1,n-1} + (c-2) k_{2,n-1}, 1 <= n <= 10",
                           not bad_x, 10, f"failures {bad_x}" if bad_x else ""))
    ev = sl2.default_evaluator()
    bad_t = [
        n for n in range(11)
        if sl2.k_triangle(n) != sl2.k_closed(2, n) - C * (C - 1) ** n
        or (n <= 7 and ev.eval(ch.tripartite_diagram(n)) != sl2.k_triangle(n))
    ]
    out.append(CheckResult("k_{1,1,n} = k_{2,n} - c(c-1)^n, n <= 10 (diagram checked to n = 7)",
                           not bad_t, 11, f"failures {bad_t}" if bad_t else ""))
    return out


def _graphs_up_to(n: int) -> list[gr.Graph]:
    out = []
    for k in range(1, n + 1):
        out.extend(gr.all_graphs(k))
    return out


def check_hopf(cfg: RunConfig, max_vertices: int = 6, max_total: int = 9) -> list[CheckResult]:
    graphs = _graphs_up_to(max_vertices)
    coassoc_bad, prim_bad = [], []
    for i, g in enumerate(graphs):
        cfg.tick("in Hopf suite")
        if i % 40 == 0:
            cfg.note(f"hopf: {i}/{len(graphs)} graphs")
        if not hopf.coassociator(g).is_zero():
            coassoc_bad.append(str(g))
        if not hopf.is_primitive(hopf.project_primitive(g)):
            prim_bad.append(str(g))
    kill_bad, kill_count = [], 0
    for a in range(1, max_vertices):
        for b in range(1, max_vertices - a + 1):
            if b < a:
                continue
            for g in gr.all_graphs(a):
                for h in gr.all_graphs(b):
                    cfg.tick("in Hopf suite")
                    kill_count += 1
                    if not hopf.project_primitive(gr.disjoint_union(g, h)).is_zero():
                        kill_bad.append((str(g), str(h)))
    w = sl2.graph_value
    coll_bad, coll_count = [], 0
    for l in (1, 2, 3):
        for n in range(0, max_total - l + 1):
            cfg.tick("in Hopf suite")
            coll_count += 1
            if hopf.project_bipartite_eval(l, n, w) != hopf.project_eval(gr.complete_bipartite(l, n), w):
                coll_bad.append((l, n))
    return [
        CheckResult(f"coassociativity on graphs with <= {max_vertices} vertices", not coassoc_bad,
                    len(graphs), f"failures {coassoc_bad[:3]}" if coassoc_bad else ""),
        CheckResult(f"project_primitive(G) is primitive, <= {max_vertices} vertices", not prim_bad,
                    len(graphs), f"failures {prim_bad[:3]}" if prim_bad else ""),
        CheckResult("projection kills disjoint unions", not kill_bad, kill_count,
                    f"failures {kill_bad[:3]}" if kill_bad else ""),
        CheckResult(f"collapsed bipartite projection == partition sum, l+n <= {max_total}",
                    not coll_bad, coll_count, f"failures {coll_bad}" if coll_bad else ""),
    ]


def check_projection_values(cfg: RunConfig) -> list[CheckResult]:
    w = sl2.graph_value
    p = hopf.project_bipartite_eval
    bad1 = [n for n in range(11) if p(1, n, w) != C * (-1) ** n]
    bad2 = [n for n in range(2, 9) if p(2, n, w).degree != 2]
    bad3 = [n for n in range(3, 9) if p(3, n, w).degree != 3]
    # both parts nonempty; K_{1,0} is a single vertex with value c
    badm = [(l, n) for l in (1, 2, 3) for n in range(1, 9) if not lando_degree_check(l, n)]
    return [
        CheckResult("w(pi(K_{1,n})) = (-1)^n c, n <= 10", not bad1, 11, f"failures {bad1}" if bad1 else ""),
        CheckResult("deg w(pi(K_{2,n})) = 2, 2 <= n <= 8", not bad2, 7, f"failures {bad2}" if bad2 else ""),
        CheckResult("deg w(pi(K_{3,n})) = 3, 3 <= n <= 8", not bad3, 6, f"failures {bad3}" if bad3 else ""),
        CheckResult("deg w(pi(K_{l,n})) <= min(l, n), l <= 3, 1 <= n <= 8", not badm, 24,
                    f"failures {badm}" if badm else ""),
    ]


def lando_degree_check(l: int, n: int) -> bool:
    """``deg w(pi(K_{l,n})) <= min(l, n)``, with equality once ``n >= l``."""
    deg = hopf.project_bipartite_eval(l, n, sl2.graph_value).degree
    if deg > min(l, n):
        return False
    if n >= l and deg != l:
        return False
    return True


def check_circumference(cfg: RunConfig) -> list[CheckResult]:
    bad_c, bad_d, count = [], [], 0
    for l in range(2, 5):
        for n in range(2, 5):
            count += 1
            g = gr.complete_bipartite(l, n)
            circ = gr.circumference(g)
            if circ != 2 * min(l, n):
                bad_c.append((l, n, circ))
            a, b = min(l, n), max(l, n)
            # w(pi) only depends on the isomorphism class, so K_{4,n} uses K_{n,4}
            if a <= 3:
                deg = hopf.project_bipartite_eval(a, b, sl2.graph_value).degree
            else:
                deg = hopf.project_eval(g, sl2.graph_value).degree
            if 2 * deg > circ:
                bad_d.append((l, n, deg, circ))
    return [
        CheckResult("circumference(K_{l,n}) = 2 min(l,n), 2 <= l,n <= 4", not bad_c, count,
                    f"failures {bad_c}" if bad_c else ""),
        CheckResult("deg w(pi(K_{l,n})) <= circumference / 2, 2 <= l,n <= 4", not bad_d, count,
                    f"failures {bad_d}" if bad_d else ""),
    ]


def wproj_closed(l: int, order: int):
    """Reference exponential forms of the projection generating functions."""
    from .algebra import SeriesX, series_exp, ONE

    def ex(k: int):
        return series_exp(SeriesX([ZERO, CasimirPoly([k])], order))

    def xpow(k):
        return SeriesX([ZERO] * k + [ONE], order)

    one = SeriesX.one(order)
    if l == 1:
        return xpow(1) * ex(-1) * C
    if l == 2:
        body = ex(-3) * (4 * C - 3) - ex(-2) * (6 * C) + ex(-1) * 3 + one * (2 * C)
        return xpow(2) * body * C.scale(Fraction(1, 6))
    if l == 3:
        body = (
            ex(-6) * (12 * C**2 - 33 * C + 18)
            - ex(-4) * (C * (60 * C - 45))
            + ex(-3) * (60 * C**2 + 40 * C - 30)
            - ex(-2) * (45 * C)
            - ex(-1) * (12 * C**2 + 12 * C - 12)
            + one * (5 * C)
        )
        return xpow(3) * body * C.scale(Fraction(1, 30))
    raise ValueError(l)


def ogf_convention(l: int, terms: int = 9) -> dict[str, bool]:
    """Which exponent convention the reference OGF for ``l`` follows.

    ``"n"`` means coefficient of ``s^n`` is ``w(pi(K_{l,n}))``; ``"(n+l)"`` means
    it sits at ``s^(n+l)``.
    """
    series = sl2.ogf_P(l, terms + l)
    values = [hopf.project_bipartite_eval(l, n, sl2.graph_value) for n in range(terms + 1)]
    unshifted = all(series[n] == values[n] for n in range(terms + 1))
    shifted = all(series[k] == ZERO for k in range(l)) and all(
        series[n + l] == values[n] for n in range(terms + 1)
    )
    return {"n": unshifted, "(n+l)": shifted}


# conventions observed for the reference rational functions, pinned by tests
OGF_EXPECTED_CONVENTION = {1: "(n+l)", 2: "n", 3: "n"}


def check_generating_functions(cfg: RunConfig, order: int = 11) -> list[CheckResult]:
    w = sl2.graph_value
    out = []
    for l in (1, 2, 3):
        got = hopf.projection_egf(l, w, order)
        ok = got == wproj_closed(l, order)
        coeffs = hopf.egf_coefficients(got, l)
        ok_b = all(coeffs[n] == hopf.project_bipartite_eval(l, n, w) for n in range(len(coeffs)))
        out.append(CheckResult(f"projection EGF l={l} matches reference closed form to x^{order}",
                               ok and ok_b, order + 1))
    for l in (0, 1, 2, 3):
        ok = sl2.egf_K(l, order) == sl2.egf_K_exponential(l, order)
        out.append(CheckResult(f"bipartite EGF l={l} matches exponential form to x^{order}", ok, order + 1))
    for l in (1, 2, 3):
        conv = ogf_convention(l)
        matched = [k for k, v in conv.items() if v]
        ok = matched == [OGF_EXPECTED_CONVENTION[l]]
        out.append(CheckResult(f"reference OGF l={l} matches projection values", ok, 10,
                               f"convention s^{matched[0] if matched else '?'}" if matched
                               else "no convention matches"))
    return out


def check_combinatorics(cfg: RunConfig) -> list[CheckResult]:
    bad = []
    for a in range(1, 5):
        for N in range(1, 9):
            lhs = sum((-1) ** (m - 1) * math.factorial(m - 1) * stirling2(N, m - a)
                      for m in range(a, N + a + 1))
            rhs = (-1) ** (a - 1) * math.factorial(a - 1) * (-a) ** N
            if lhs != rhs:
                bad.append((a, N))
    rng = random.Random(cfg.seed)
    bad_ff = []
    for _ in range(10):
        x = Fraction(rng.randint(-50, 50), rng.randint(1, 20))
        for N in range(1, 9):
            if sum(stirling2(N, k) * falling_factorial(x, k) for k in range(1, N + 1)) != x**N:
                bad_ff.append((x, N))
    stir_ok = stirling2(4, 2) == 7 and all(stirling2(n, n) == 1 for n in range(9)) and stirling2(6, 2) == 31
    return [
        CheckResult("alternating Stirling identity, a <= 4, N <= 8", not bad, 32,
                    f"failures {bad}" if bad else ""),
        CheckResult("sum_k S(N,k) (x)_k = x^N, N <= 8", not bad_ff, 80),
        CheckResult("Stirling values S(4,2)=7, S(n,n)=1, S(6,2)=31", stir_ok, 11),
    ]


SUITES: dict[str, Callable[[RunConfig], list[CheckResult]]] = {
    "fourterm": check_four_term,
    "isograph": lambda cfg: [check_isograph(cfg)],
    "oracle": lambda cfg: check_oracle(cfg) + [check_no_fallback(cfg)],
    "recurrences": lambda cfg: [check_closed_forms(cfg)] + check_recurrences(cfg),
    "hopf": lambda cfg: check_hopf(cfg, min(6, cfg.max_order), min(9, cfg.max_order + 3)),
    "lando": lambda cfg: check_projection_values(cfg) + check_circumference(cfg),
    "series": check_generating_functions,
    "combinatorics": check_combinatorics,
}


def run_suite(name: str, cfg: RunConfig) -> list[CheckResult]:
    if name == "all":
        out = []
        for key, fn in SUITES.items():
            cfg.note(f"suite {key}")
            out.extend(fn(cfg))
        return out
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](cfg)
