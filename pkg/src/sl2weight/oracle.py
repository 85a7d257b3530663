"""Brute-force sl2 weight system: sum over chord labellings in irreducible
representations, then interpolate in the Casimir eigenvalue.

The sum uses the dual pairs ``(E, F), (F, E), (H, H/2)`` of the trace form, which
have exact integer/half-integer matrices. The trace-form result is related to the
orthonormal-form value by a global rescaling of the Casimir and a per-chord
factor; both constants are fixed once from the one-chord and two-crossing-chord
diagrams.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import CasimirPoly, interpolate
from .chords import ChordDiagram, parse_dow

ORACLE_MAX_ORDER = 6

Matrix = tuple[tuple[int, ...], ...]


class OracleError(RuntimeError):
    pass


@dataclass(frozen=True)
class Irrep:
    """``d``-dimensional irreducible sl2 module in the weight basis ``v_0..v_{d-1}``
    with ``F v_k = v_{k+1}``, ``E v_k = k(d-k) v_{k-1}``, ``H v_k = (d-1-2k) v_k``."""

    dim: int
    E: Matrix
    F: Matrix
    H: Matrix

    def casimir_matrix(self) -> list[list[Fraction]]:
        """``EF + FE + H^2/2``."""
        ef = _matmul(self.E, self.F)
        fe = _matmul(self.F, self.E)
        hh = _matmul(self.H, self.H)
        d = self.dim
        return [
            [Fraction(ef[i][j] + fe[i][j]) + Fraction(hh[i][j], 2) for j in range(d)]
            for i in range(d)
        ]

    def casimir_eigenvalue(self) -> Fraction:
        return Fraction(self.dim * self.dim - 1, 2)


def _matmul(a, b):
    n, m, k = len(a), len(b), len(b[0]) if b else 0
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(m) if a[i][t]) for j in range(k))
        for i in range(n)
    )


@lru_cache(maxsize=None)
def irrep(d: int) -> Irrep:
    if d < 1:
        raise ValueError("dimension must be positive")
    E = [[0] * d for _ in range(d)]
    F = [[0] * d for _ in range(d)]
    H = [[0] * d for _ in range(d)]
    for k in range(d):
        H[k][k] = d - 1 - 2 * k
        if k + 1 < d:
            F[k + 1][k] = 1
        if k > 0:
            E[k - 1][k] = k * (d - k)
    freeze = lambda m: tuple(tuple(r) for r in m)
    return Irrep(d, freeze(E), freeze(F), freeze(H))


def _apply_right(rows: list[list[int]], op: str, d: int) -> list[list[int]]:
    """``M @ X`` for X in {E, F, H}, exploiting the band structure."""
    out = [[0] * d for _ in range(d)]
    for i, row in enumerate(rows):
        o = out[i]
        if op == "E":
            # (M E)[i][k] = M[i][k-1] * k(d-k)
            for k in range(1, d):
                if row[k - 1]:
                    o[k] = row[k - 1] * k * (d - k)
        elif op == "F":
            for k in range(d - 1):
                o[k] = row[k + 1]
        else:
            for k in range(d):
                if row[k]:
                    o[k] = row[k] * (d - 1 - 2 * k)
    return out


# first and second member of each dual pair; H/H carries weight 1/2
_PAIRS = (("E", "F"), ("F", "E"), ("H", "H"))


def raw_eval(d_: ChordDiagram, dim: int, max_order: int = ORACLE_MAX_ORDER) -> Fraction:
    """Scalar by which the trace-form Casimir tensor sum acts on ``irrep(dim)``."""
    if d_.order > max_order:
        raise OracleError(f"oracle limited to order {max_order}, got {d_.order}")
    word = d_.word
    n = d_.order
    if n == 0:
        return Fraction(1)
    first_seen = set()
    roles = []
    for x in word:
        roles.append(0 if x not in first_seen else 1)
        first_seen.add(x)

    ident = [[int(i == j) for j in range(dim)] for i in range(dim)]
    total = [[0] * dim for _ in range(dim)]
    choice: dict[int, int] = {}

    # sum_nu 2^(#non-H chords) * product, divided by 2^n at the end
    def walk(pos: int, mat, weight: int):
        if pos == len(word):
            for i in range(dim):
                ti, mi = total[i], mat[i]
                for j in range(dim):
                    if mi[j]:
                        ti[j] += weight * mi[j]
            return
        x = word[pos]
        if roles[pos] == 0:
            for p, pair in enumerate(_PAIRS):
                choice[x] = p
                w = weight if p == 2 else weight * 2
                walk(pos + 1, _apply_right(mat, pair[0], dim), w)
            del choice[x]
        else:
            walk(pos + 1, _apply_right(mat, _PAIRS[choice[x]][1], dim), weight)

    walk(0, ident, 1)
    lam = total[0][0]
    for i in range(dim):
        for j in range(dim):
            if total[i][j] != (lam if i == j else 0):
                raise OracleError(f"non-scalar tensor sum for {d_} in dimension {dim}")
    return Fraction(lam, 2**n)


class _Calibration:
    def __init__(self):
        self._lock = threading.Lock()
        self._factor: Fraction | None = None

    def chord_factor(self) -> Fraction:
        """Per-chord factor ``t`` with value(D) = t^n p(c / t)."""
        with self._lock:
            if self._factor is None:
                self._factor = self._determine()
            return self._factor

    @staticmethod
    def _determine() -> Fraction:
        one = trace_form_poly(parse_dow("1 1"))
        if one != CasimirPoly.c():
            raise OracleError(f"one-chord trace-form value {one} is not the Casimir")
        two = trace_form_poly(parse_dow("1 2 1 2"))
        # two = c'^2 + kappa c'; orthonormal value c^2 + t kappa c must be c^2 - c
        if two.degree != 2 or two[2] != 1 or two[0] != 0 or two[1] == 0:
            raise OracleError(f"unexpected two-chord trace-form value {two}")
        return Fraction(-1) / two[1]


_calibration = _Calibration()


def trace_form_poly(d_: ChordDiagram) -> CasimirPoly:
    """Interpolated value as a polynomial in the trace-form Casimir eigenvalue."""
    n = d_.order
    dims = range(1, n + 2)
    xs = [irrep(d).casimir_eigenvalue() for d in dims]
    if len(set(xs)) != len(xs):
        raise OracleError("interpolation abscissas collide")
    return interpolate([(x, raw_eval(d_, d)) for x, d in zip(xs, dims)])


def chord_factor() -> Fraction:
    return _calibration.chord_factor()


def eval_oracle(d_: ChordDiagram) -> CasimirPoly:
    """sl2 weight system value, normalised so one chord gives ``c``."""
    p = trace_form_poly(d_)
    t = chord_factor()
    # substitute c' = c/t, then multiply by t^n
    n = d_.order
    coeffs = [p[k] * t ** (n - k) for k in range(p.degree + 1)]
    return CasimirPoly(coeffs)
