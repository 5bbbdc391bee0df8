"""Gaussian phase-space states as positive linear functionals.

A state is a normalized linear functional on polynomial observables given
by a mean vector and a symmetric covariance matrix with series entries.
Expectations are evaluated symbolically: shift to central moments, then
pair them up Isserlis/Wick style, so every expectation of a polynomial is
an exact series.  Positivity of ``rho(conj(f) * f)`` holds for covariances
at or above the quantum threshold and is exercised empirically by the
property suites rather than assumed.
"""

from __future__ import annotations

import json
import warnings
from fractions import Fraction
from itertools import product

from .errors import (
    AdmissibilityWarning,
    DimensionMismatch,
    InternalConsistencyError,
    MomentDegreeExceeded,
)
from .linalg import InequalityReport, relation_of
from .observables import Observable, constant, require_real, star
from .series import (
    ComplexSeries,
    ONE,
    Series,
    Sign,
    ZERO,
    rational,
    series,
)

#: Wick pairing enumeration grows double-factorially; default central-moment cap
DEFAULT_MOMENT_CAP = 12


class GaussianState:
    """Mean vector (q1..qd, p1..pd) plus symmetric covariance matrix."""

    __slots__ = ("d", "mean", "cov", "moment_cap", "_central_cache")

    def __init__(self, mean, cov, moment_cap: int = DEFAULT_MOMENT_CAP):
        mean = tuple(_as_series(x) for x in mean)
        cov = tuple(tuple(_as_series(x) for x in row) for row in cov)
        if len(mean) % 2 or not mean:
            raise DimensionMismatch("mean must list q1..qd, p1..pd")
        d = len(mean) // 2
        n = 2 * d
        if len(cov) != n or any(len(row) != n for row in cov):
            raise DimensionMismatch(f"covariance must be {n}x{n}")
        for i in range(n):
            for j in range(i):
                if cov[i][j] != cov[j][i]:
                    raise ValueError("covariance matrix must be symmetric")
        self.d = d
        self.mean = mean
        self.cov = cov
        self.moment_cap = moment_cap
        self._central_cache: dict[tuple[int, ...], Series] = {}
        self._check_admissibility()

    def _check_admissibility(self):
        # classical requirement: the covariance is non-negative definite
        from .linalg import congruence_diagonalize

        _, diag = congruence_diagonalize(self.cov)
        for entry in diag:
            if entry.sign() is Sign.NEGATIVE:
                raise ValueError("covariance matrix is not non-negative definite")
        if self.d == 1:
            # quantum threshold det(cov) >= (h/2)^2; below it positivity of
            # the functional can fail, which the relation checks then report
            det = self.cov[0][0] * self.cov[1][1] - self.cov[0][1] * self.cov[1][0]
            gap = det - series([(2, Fraction(1, 4))])
            if gap.sign() is Sign.NEGATIVE:
                warnings.warn(
                    "det(cov) < h^2/4: functional may fail positivity",
                    AdmissibilityWarning,
                    stacklevel=3,
                )

    # -- expectations --------------------------------------------------------

    def expectation(self, f: Observable) -> ComplexSeries:
        """Exact expectation of a polynomial observable."""
        if f.d != self.d:
            raise DimensionMismatch(f"observable d={f.d}, state d={self.d}")
        total = ComplexSeries()
        for mono, coeff in f.terms.items():
            total = total + coeff * self._raw_moment(mono)
        return total

    def expect_real(self, f: Observable, what: str = "expectation") -> Series:
        """Expectation that must be real; returns the real series."""
        value = self.expectation(f)
        if value.im.terms:
            raise InternalConsistencyError(f"{what} has imaginary part {value.im}")
        return value.re

    def variance(self, x: Observable) -> Series:
        """Second central moment rho(x*x) - rho(x)^2 of a real observable."""
        require_real(x)
        m = self.expect_real(x)
        return self.expect_real(star(x, x)) - m * m

    def _raw_moment(self, mono: tuple[int, ...]) -> Series:
        slots = [i for i, e in enumerate(mono) if e]
        total = ZERO
        choices = []
        for i in slots:
            # only the full central power survives when the mean vanishes
            if self.mean[i].is_zero:
                choices.append((mono[i],))
            else:
                choices.append(tuple(range(mono[i] + 1)))
        for combo in product(*choices):
            idxs = []
            for i, k in zip(slots, combo):
                idxs.extend([i] * k)
            w = self._central_moment(tuple(idxs))
            if w.is_zero:
                continue
            factor = ONE
            for i, k in zip(slots, combo):
                factor = factor * _binom(mono[i], k)
                factor = factor * self.mean[i] ** (mono[i] - k)
            total = total + factor * w
        return total

    def _central_moment(self, idxs: tuple[int, ...]) -> Series:
        """Wick pairing sum over the multiset of coordinate indices."""
        if len(idxs) % 2:
            return ZERO
        if not idxs:
            return ONE
        if len(idxs) > self.moment_cap:
            raise MomentDegreeExceeded(
                f"central moment of degree {len(idxs)} exceeds cap {self.moment_cap}"
            )
        cached = self._central_cache.get(idxs)
        if cached is not None:
            return cached
        first, rest = idxs[0], idxs[1:]
        total = ZERO
        for pos in range(len(rest)):
            if pos and rest[pos] == rest[pos - 1]:
                continue  # identical partners grouped below via multiplicity
            mult = rest.count(rest[pos])
            sub = rest[:pos] + rest[pos + mult :]
            partners = (rest[pos],) * (mult - 1)
            total = total + mult * self.cov[first][rest[pos]] * self._central_moment(
                tuple(sorted(sub + partners))
            )
        self._central_cache[idxs] = total
        return total

    def __repr__(self) -> str:
        return f"GaussianState(d={self.d})"


def _binom(n: int, k: int) -> Fraction:
    out = Fraction(1)
    for i in range(k):
        out *= Fraction(n - i, i + 1)
    return out


def _as_series(x) -> Series:
    if isinstance(x, Series):
        return x
    if isinstance(x, (int, Fraction)):
        return rational(x)
    raise TypeError(f"expected a series entry, got {type(x).__name__}")


# ---------------------------------------------------------------------------
# functional-analytic operations


def deviation(state: GaussianState, x: Observable) -> Observable:
    """Zero-mean shift x - rho(x) of a real observable."""
    require_real(x)
    return x - constant(x.d, ComplexSeries(state.expect_real(x, "mean of real observable")))


def gelfand_norm(state: GaussianState, f: Observable) -> Series:
    """The value rho(conj(f) * f); zero exactly when f annihilates the state."""
    return state.expect_real(star(f.conj(), f), "gelfand norm")


def in_gelfand_ideal(state: GaussianState, f: Observable) -> bool:
    """Exact membership test; indeterminate signs raise."""
    sign = gelfand_norm(state, f).sign()
    if sign is Sign.INDETERMINATE:
        from .errors import IndeterminateAtTruncation

        raise IndeterminateAtTruncation("ideal membership undecidable at truncation")
    return sign is Sign.ZERO


def cauchy_schwarz_check(
    state: GaussianState, f: Observable, g: Observable
) -> InequalityReport:
    """|rho(conj(f)*g)|^2 bounded by rho(conj(f)*f) rho(conj(g)*g).

    The report's lhs is the dominant product side, rhs the squared modulus,
    so Violated keeps its usual meaning (dominant side smaller).
    """
    cross = state.expectation(star(f.conj(), g))
    rhs = cross.abs2()
    lhs = gelfand_norm(state, f) * gelfand_norm(state, g)
    return InequalityReport(lhs=lhs, rhs=rhs, relation=relation_of(lhs, rhs))


# ---------------------------------------------------------------------------
# named states and file IO


def _hbar_over(k: int) -> Series:
    return series([(1, Fraction(1, k))])


def ground(d: int = 1) -> GaussianState:
    """Mean zero, covariance (h/2) * identity."""
    n = 2 * d
    cov = [[_hbar_over(2) if i == j else ZERO for j in range(n)] for i in range(n)]
    return GaussianState([ZERO] * n, cov)


def squeezed(s, d: int = 1) -> GaussianState:
    """One-mode squeezing: cov = diag(s h/2, h/(2s)) per mode, rational s > 0."""
    s = Fraction(s)
    if s <= 0:
        raise ValueError("squeeze parameter must be positive")
    n = 2 * d
    cov = [[ZERO] * n for _ in range(n)]
    for j in range(d):
        cov[j][j] = series([(1, s / 2)])
        cov[d + j][d + j] = series([(1, Fraction(1, 2) / s)])
    return GaussianState([ZERO] * n, cov)


def correlated(c) -> GaussianState:
    """d=1 state with cov [[h/2, c], [c, h/2]]; c != 0 trips the threshold warning."""
    c = _as_series(c)
    half = _hbar_over(2)
    return GaussianState([ZERO, ZERO], [[half, c], [c, half]])


def state_from_dict(obj: dict) -> GaussianState:
    from .parsing import parse_series

    d = int(obj["d"])
    mean = [parse_series(s) for s in obj["mean"]]
    cov = [[parse_series(s) for s in row] for row in obj["cov"]]
    if len(mean) != 2 * d:
        raise DimensionMismatch(f"mean length {len(mean)} does not match d={d}")
    return GaussianState(mean, cov)


def state_to_dict(state: GaussianState) -> dict:
    return {
        "d": state.d,
        "mean": [x.literal() for x in state.mean],
        "cov": [[x.literal() for x in row] for row in state.cov],
    }


def load_state(path: str) -> GaussianState:
    with open(path, "r", encoding="utf-8") as fh:
        return state_from_dict(json.load(fh))
