"""Exact scalars, polynomials in the Casimir symbol ``c``, truncated series in ``x``,
and the Stirling / falling-factorial combinatorics used by the projection formulas.

Scalars are :class:`fractions.Fraction`; nothing in the package touches floats.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]

__all__ = [
    "CasimirPoly",
    "SeriesX",
    "stirling2",
    "falling_factorial",
    "interpolate",
    "binomial",
    "multinomial",
]


def _frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


class CasimirPoly:
    """Dense univariate polynomial in ``c`` with rational coefficients.

    ``coeffs[i]`` is the coefficient of ``c**i``. Trailing zeros are stripped, so the
    zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(a) for a in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self._hash = None

    @classmethod
    def constant(cls, value: Scalar) -> "CasimirPoly":
        return cls([value])

    @classmethod
    def c(cls) -> "CasimirPoly":
        return cls([0, 1])

    @classmethod
    def monomial(cls, power: int, coeff: Scalar = 1) -> "CasimirPoly":
        return cls([0] * power + [coeff])

    @classmethod
    def linear(cls, a: Scalar, b: Scalar = 0) -> "CasimirPoly":
        """``a*c + b``."""
        return cls([b, a])

    # -- structure -------------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, CasimirPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == CasimirPoly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # -- ring operations -------------------------------------------------
    @staticmethod
    def _lift(value) -> "CasimirPoly":
        if isinstance(value, CasimirPoly):
            return value
        return CasimirPoly([value])

    def __add__(self, other) -> "CasimirPoly":
        if not isinstance(other, (CasimirPoly, int, Fraction)):
            return NotImplemented
        other = self._lift(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return CasimirPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "CasimirPoly":
        return CasimirPoly([-a for a in self.coeffs])

    def __sub__(self, other) -> "CasimirPoly":
        if not isinstance(other, (CasimirPoly, int, Fraction)):
            return NotImplemented
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "CasimirPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "CasimirPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, CasimirPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return CasimirPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return CasimirPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "CasimirPoly":
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = CasimirPoly([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, factor: Scalar) -> "CasimirPoly":
        factor = _frac(factor)
        return CasimirPoly([a * factor for a in self.coeffs])

    def __call__(self, value):
        return self.evaluate(value)

    def evaluate(self, value):
        """Horner evaluation. ``value`` may be a rational or another polynomial."""
        if isinstance(value, CasimirPoly):
            acc = CasimirPoly()
            for a in reversed(self.coeffs):
                acc = acc * value + a
            return acc
        v = _frac(value)
        acc = Fraction(0)
        for a in reversed(self.coeffs):
            acc = acc * v + a
        return acc

    # -- text / JSON -----------------------------------------------------
    def __repr__(self) -> str:
        return f"CasimirPoly({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[i]
            if a == 0:
                continue
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            if i == 0:
                body = str(mag)
            else:
                mono = "c" if i == 1 else f"c^{i}"
                if mag == 1:
                    body = mono
                elif mag.denominator == 1:
                    body = f"{mag}{mono}"
                else:
                    body = f"({mag}){mono}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def to_json(self) -> dict:
        return {
            "variable": "c",
            "coeffs": [[str(a.numerator), str(a.denominator)] for a in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj) -> "CasimirPoly":
        if isinstance(obj, str):
            obj = json.loads(obj)
        if obj.get("variable") != "c":
            raise ValueError("expected a polynomial in the variable 'c'")
        return cls(Fraction(int(n), int(d)) for n, d in obj["coeffs"])


ZERO = CasimirPoly()
ONE = CasimirPoly([1])
C = CasimirPoly.c()


class SeriesX:
    """Truncated power series in ``x`` with :class:`CasimirPoly` coefficients.

    Coefficients are known exactly for ``x**k`` with ``k <= order``.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Sequence, order: int):
        if order < 0:
            raise ValueError("truncation order must be non-negative")
        cs = [CasimirPoly._lift(a) for a in list(coeffs)[: order + 1]]
        cs += [ZERO] * (order + 1 - len(cs))
        self.coeffs: tuple[CasimirPoly, ...] = tuple(cs)
        self.order = order

    @classmethod
    def zero(cls, order: int) -> "SeriesX":
        return cls([], order)

    @classmethod
    def one(cls, order: int) -> "SeriesX":
        return cls([ONE], order)

    def __getitem__(self, k: int) -> CasimirPoly:
        if k > self.order:
            raise IndexError(f"coefficient x^{k} is beyond truncation order {self.order}")
        if k < 0:
            return ZERO
        return self.coeffs[k]

    def __eq__(self, other) -> bool:
        if not isinstance(other, SeriesX):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        terms = [f"({p})x^{k}" for k, p in enumerate(self.coeffs) if p]
        return f"SeriesX({' + '.join(terms) or '0'}; O(x^{self.order + 1}))"

    def _common(self, other: "SeriesX") -> int:
        return min(self.order, other.order)

    def __add__(self, other: "SeriesX") -> "SeriesX":
        n = self._common(other)
        return SeriesX([self.coeffs[k] + other.coeffs[k] for k in range(n + 1)], n)

    def __neg__(self) -> "SeriesX":
        return SeriesX([-a for a in self.coeffs], self.order)

    def __sub__(self, other: "SeriesX") -> "SeriesX":
        return self + (-other)

    def __mul__(self, other) -> "SeriesX":
        if isinstance(other, (int, Fraction, CasimirPoly)):
            return SeriesX([a * other for a in self.coeffs], self.order)
        if not isinstance(other, SeriesX):
            return NotImplemented
        return series_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "SeriesX":
        result = SeriesX.one(self.order)
        for _ in range(k):
            result = result * self
        return result


def series_mul(a: SeriesX, b: SeriesX) -> SeriesX:
    """Truncated Cauchy product at the smaller of the two orders."""
    n = min(a.order, b.order)
    out = []
    for k in range(n + 1):
        acc = ZERO
        for i in range(k + 1):
            if a.coeffs[i] and b.coeffs[k - i]:
                acc = acc + a.coeffs[i] * b.coeffs[k - i]
        out.append(acc)
    return SeriesX(out, n)


def series_exp(a: SeriesX) -> SeriesX:
    """``sum a**k / k!`` truncated at ``a.order``; ``a`` must have zero constant term."""
    if a.coeffs[0]:
        raise ValueError("series_exp needs a series with zero constant term")
    result = SeriesX.one(a.order)
    term = SeriesX.one(a.order)
    # a**k vanishes below x^k, so k <= order suffices
    for k in range(1, a.order + 1):
        term = series_mul(term, a) * Fraction(1, k)
        result = result + term
    return result


SeriesX.exp = series_exp  # type: ignore[attr-defined]


@lru_cache(maxsize=None)
def stirling2(n: int, m: int) -> int:
    """Stirling number of the second kind via S(n,m) = S(n-1,m-1) + m S(n-1,m)."""
    if n < 0 or m < 0:
        raise ValueError("stirling2 takes non-negative arguments")
    if n == 0 and m == 0:
        return 1
    if n == 0 or m == 0 or m > n:
        return 0
    return stirling2(n - 1, m - 1) + m * stirling2(n - 1, m)


def falling_factorial(x: Scalar, k: int) -> Fraction:
    if k < 0:
        raise ValueError("k must be non-negative")
    x = _frac(x)
    out = Fraction(1)
    for i in range(k):
        out *= x - i
    return out


def binomial(n: int, k: int) -> int:
    return math.comb(n, k) if 0 <= k <= n else 0


def multinomial(*parts: int) -> int:
    out, total = 1, 0
    for p in parts:
        if p < 0:
            return 0
        total += p
        out *= math.comb(total, p)
    return out


def interpolate(points: Sequence[tuple]) -> CasimirPoly:
    """Newton interpolation through ``points``; abscissas must be distinct."""
    xs = [_frac(x) for x, _ in points]
    ys = [_frac(y) for _, y in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation abscissas must be pairwise distinct")
    n = len(xs)
    # divided differences, in place
    dd = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j])
    poly = CasimirPoly()
    for i in range(n - 1, -1, -1):
        poly = poly * CasimirPoly([-xs[i], 1]) + dd[i]
    return poly
