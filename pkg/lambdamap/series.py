"""Coefficient tables from the functional-differential equations for L(z, x).

Each family is computed as a list of polynomials P_n(x) with
L(z, x) = sum_n P_n(x) z^n, starting from P_0 = x:

    linear                 P_{n+1} = sum_{i+j=n} P_i P_j + dP_n/dx
    indecomposable         as linear, squaring P_i - P_i(0)
    planar                 as linear, with (P_n - P_n(0)) / x for the derivative
    planar-indecomposable  both modifications

The linear families are exponential in x (t[n][k] = k! [x^k] P_n), the
planar ones ordinary (t[n][k] = [x^k] P_n).
"""
from dataclasses import dataclass
from math import factorial
from typing import List, Tuple

from sympy import Poly, symbols

from .errors import LambdaMapError

X = symbols("x")

FAMILIES = ("linear", "indecomposable", "planar", "planar-indecomposable")
FAMILY_ALIASES = {
    "linear": "linear",
    "indec": "indecomposable",
    "indecomposable": "indecomposable",
    "planar": "planar",
    "planar-indec": "planar-indecomposable",
    "planar-indecomposable": "planar-indecomposable",
}


@dataclass(frozen=True)
class CoefficientTable:
    family: str
    exponential: bool
    rows: Tuple[Tuple[int, ...], ...]

    def entry(self, n: int, k: int) -> int:
        if n < 0 or k < 0 or n >= len(self.rows) or k >= len(self.rows[n]):
            return 0
        return self.rows[n][k]

    def closed(self) -> List[int]:
        return [self.entry(n, 0) for n in range(len(self.rows))]

    @property
    def width(self) -> int:
        return max(len(row) for row in self.rows)


def _polynomials(max_size: int, indecomposable: bool, planar: bool) -> List[Poly]:
    x = Poly(X, X, domain="ZZ")
    polys = [x]
    for n in range(max_size):
        squared = [p - p.nth(0) if indecomposable else p for p in polys]
        total = Poly(0, X, domain="ZZ")
        for i in range(n + 1):
            total += squared[i] * squared[n - i]
        current = polys[n]
        if planar:
            total += (current - current.nth(0)).exquo(x)
        else:
            total += current.diff(X)
        polys.append(total)
    return polys


def _table(family: str, max_size: int) -> CoefficientTable:
    if max_size < 0:
        raise LambdaMapError("series size must be non-negative")
    indecomposable = family in ("indecomposable", "planar-indecomposable")
    planar = family.startswith("planar")
    exponential = not planar
    rows = []
    for p in _polynomials(max_size, indecomposable, planar):
        coefficients = [int(p.nth(k)) for k in range(p.degree() + 1)]
        if exponential:
            coefficients = [c * factorial(k) for k, c in enumerate(coefficients)]
        while coefficients and coefficients[-1] == 0:
            coefficients.pop()
        rows.append(tuple(coefficients))
    return CoefficientTable(family, exponential, tuple(rows))


def series_linear(max_size: int) -> CoefficientTable:
    return _table("linear", max_size)


def series_indecomposable(max_size: int) -> CoefficientTable:
    return _table("indecomposable", max_size)


def series_planar(max_size: int) -> CoefficientTable:
    return _table("planar", max_size)


def series_planar_indecomposable(max_size: int) -> CoefficientTable:
    return _table("planar-indecomposable", max_size)


def series(family: str, max_size: int) -> CoefficientTable:
    try:
        canonical = FAMILY_ALIASES[family]
    except KeyError:
        raise LambdaMapError(f"unknown family {family!r}; expected one of {', '.join(FAMILY_ALIASES)}") from None
    return _table(canonical, max_size)
