"""Float-coefficient series backend for square-root-heavy demos.

The exact backend refuses square roots whose leading coefficient is not a
rational square (there is no sqrt(2) among exact rationals).  This backend
trades exactness for a total sqrt: coefficients are machine floats and the
sign test uses the tolerance ``EPS``.  It is demo-only and must never feed
the theorem-check suites, whose whole point is exact sign decisions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotPositive
from .series import Series, Sign

EPS = 1e-12


@dataclass(frozen=True)
class FloatSeries:
    """Finite float-coefficient power series in h with rational exponents."""

    terms: tuple[tuple[Fraction, float], ...] = ()

    @classmethod
    def from_exact(cls, value: Series) -> "FloatSeries":
        return cls(tuple((e, float(c)) for e, c in value.terms))

    @classmethod
    def from_pairs(cls, pairs) -> "FloatSeries":
        acc: dict[Fraction, float] = {}
        for e, c in pairs:
            e = Fraction(e)
            acc[e] = acc.get(e, 0.0) + float(c)
        return cls(tuple(sorted((e, c) for e, c in acc.items() if abs(c) > EPS)))

    def sign(self) -> Sign:
        if not self.terms:
            return Sign.ZERO
        lead = self.terms[0][1]
        if abs(lead) <= EPS:
            return Sign.ZERO
        return Sign.POSITIVE if lead > 0 else Sign.NEGATIVE

    def valuation(self) -> Fraction | float:
        return self.terms[0][0] if self.terms else math.inf

    def __add__(self, other: "FloatSeries") -> "FloatSeries":
        return FloatSeries.from_pairs(self.terms + other.terms)

    def __neg__(self) -> "FloatSeries":
        return FloatSeries(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "FloatSeries") -> "FloatSeries":
        return self + (-other)

    def __mul__(self, other: "FloatSeries") -> "FloatSeries":
        return FloatSeries.from_pairs(
            (e1 + e2, c1 * c2) for e1, c1 in self.terms for e2, c2 in other.terms
        )

    def sqrt(self, order: int = 8) -> "FloatSeries":
        """Total square root of positive elements, tail expanded to ``order``."""
        if self.sign() is not Sign.POSITIVE:
            raise NotPositive("float sqrt needs a positive leading coefficient")
        g0, c0 = self.terms[0]
        lead = FloatSeries(((g0 / 2, math.sqrt(c0)),))
        rest = FloatSeries(tuple((e - g0, c / c0) for e, c in self.terms[1:]))
        acc = FloatSeries(((Fraction(0), 1.0),))
        power = acc
        coeff = 1.0
        for k in range(1, order + 1):
            coeff *= (0.5 - (k - 1)) / k
            power = power * rest
            if not power.terms:
                break
            acc = acc + FloatSeries(tuple((e, coeff * c) for e, c in power.terms))
        return lead * acc

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            if e == 0:
                parts.append(f"{c:.12g}")
            elif e == 1:
                parts.append(f"{c:.12g}*h")
            else:
                parts.append(f"{c:.12g}*h^({e})")
        return " + ".join(parts)
