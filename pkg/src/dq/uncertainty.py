"""Uncertainty relations and intelligent-state detection.

For real observables X_1..X_n and a state rho, the matrix
``phi_jk = rho(dX_j * dX_k)`` of star-moments of the deviations splits into
a symmetric covariance part ``a`` and a skew part ``b`` with
``b_jk = (h/2) rho({X_j, X_k}_star)``.  The determinant inequalities of
:mod:`dq.linalg` then read:

* ``det(a) >= det(b)``            (Robertson-Schroedinger relation)
* ``prod of variances >= det(b)`` (Heisenberg-Robertson relation)
* ``sum of variances >= h/(n-1) * sum |rho({X_j,X_k}_star)|``  (trace relation)

A state saturating the second equality is HR-intelligent, one saturating
the first RS-intelligent; saturation is decided by exact series comparison
at the stored truncation.  Saturation witnesses are produced through
membership of deviation combinations in the state's annihilating
(Gel'fand) ideal.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import (
    DimensionTooSmall,
    IndeterminateAtTruncation,
    InternalConsistencyError,
    SingularTransform,
)
from .linalg import (
    Definiteness,
    HermitianForm,
    Zeroness,
    determinant,
    hermitian_form,
    is_nonneg_definite,
    kernel,
    zeroness,
)
from .observables import Observable, moyal_bracket, require_real, star
from .series import ComplexSeries, I_UNIT, ONE, Series, Sign, series
from .states import GaussianState, deviation, in_gelfand_ideal


class Status(Enum):
    SATURATED = "saturated"
    STRICTLY_ABOVE = "strictly_above"
    VIOLATED = "violated"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class UncertaintyVerdict:
    relation_name: str
    lhs: Series
    rhs: Series
    status: Status
    hr_intelligent: bool | None = None
    rs_intelligent: bool | None = None
    witness: tuple | None = None


@dataclass(frozen=True)
class MomentMatrices:
    """Star-moment matrix of the deviations and its real split."""

    phi: HermitianForm
    a: tuple[tuple[Series, ...], ...]
    b: tuple[tuple[Series, ...], ...]
    variances: tuple[Series, ...]


def _status_of(lhs: Series, rhs: Series) -> Status:
    s = (lhs - rhs).sign()
    if s is Sign.ZERO:
        return Status.SATURATED
    if s is Sign.POSITIVE:
        return Status.STRICTLY_ABOVE
    if s is Sign.NEGATIVE:
        return Status.VIOLATED
    return Status.INDETERMINATE


def moment_matrices(state: GaussianState, xs) -> MomentMatrices:
    """phi, a, b and the variances for the given real observables.

    a and b are computed by their own formulas (symmetrized star moment;
    h/2-scaled bracket moment) and cross-checked against the real and
    imaginary parts of phi, which is this module's core internal oracle.
    """
    xs = list(xs)
    if not xs:
        raise DimensionTooSmall("need at least one observable")
    for x in xs:
        require_real(x)
    n = len(xs)
    devs = [deviation(state, x) for x in xs]
    half_h = series([(1, Fraction(1, 2))])
    phi = [[state.expectation(star(devs[j], devs[k])) for k in range(n)] for j in range(n)]
    a = [[None] * n for _ in range(n)]
    b = [[None] * n for _ in range(n)]
    for j in range(n):
        for k in range(j, n):
            sym = state.expect_real(
                (star(devs[j], devs[k]) + star(devs[k], devs[j])) * Fraction(1, 2),
                "symmetrized moment",
            )
            a[j][k] = sym
            a[k][j] = sym
            if j == k:
                b[j][k] = Series()
            else:
                br = half_h * state.expect_real(
                    moyal_bracket(xs[j], xs[k]), "bracket moment"
                )
                b[j][k] = br
                b[k][j] = -br
            expected = ComplexSeries(a[j][k], b[j][k])
            if phi[j][k] != expected:
                raise InternalConsistencyError(
                    f"phi[{j}][{k}] != a + i b: {phi[j][k]!r} vs {expected!r}"
                )
    return MomentMatrices(
        phi=hermitian_form(phi),
        a=tuple(tuple(row) for row in a),
        b=tuple(tuple(row) for row in b),
        variances=tuple(a[j][j] for j in range(n)),
    )


def check_rs(state: GaussianState, xs, mm: MomentMatrices | None = None) -> UncertaintyVerdict:
    """det(covariance part) against det(skew part)."""
    mm = mm if mm is not None else moment_matrices(state, xs)
    lhs = determinant(mm.a)
    rhs = determinant(mm.b)
    status = _status_of(lhs, rhs)
    return UncertaintyVerdict(
        "RS", lhs, rhs, status, rs_intelligent=status is Status.SATURATED
    )


def check_hr(state: GaussianState, xs, mm: MomentMatrices | None = None) -> UncertaintyVerdict:
    """Product of variances against det(skew part); saturation also forces
    saturation of the RS relation."""
    mm = mm if mm is not None else moment_matrices(state, xs)
    lhs = ONE
    for v in mm.variances:
        lhs = lhs * v
    rhs = determinant(mm.b)
    status = _status_of(lhs, rhs)
    hr = status is Status.SATURATED
    rs = _status_of(determinant(mm.a), rhs) is Status.SATURATED
    if hr and not rs:
        _expect_nonneg_failure(mm.phi, "HR saturation must imply RS saturation")
    return UncertaintyVerdict("HR", lhs, rhs, status, hr_intelligent=hr, rs_intelligent=rs)


def check_trace(
    state: GaussianState, xs, mm: MomentMatrices | None = None
) -> tuple[UncertaintyVerdict, UncertaintyVerdict | None]:
    """Sum of variances against the scaled sum of |bracket moments|; for an
    even count of observables also the sharper index-paired bound."""
    mm = mm if mm is not None else moment_matrices(state, xs)
    n = len(mm.variances)
    if n < 2:
        raise DimensionTooSmall("trace relation needs at least two observables")
    lhs = Series()
    for v in mm.variances:
        lhs = lhs + v
    total = Series()
    for j in range(n):
        for k in range(j + 1, n):
            total = total + abs(mm.b[j][k])
    rhs = Fraction(2, n - 1) * total
    general = UncertaintyVerdict("Trace", lhs, rhs, _status_of(lhs, rhs))
    pairing = None
    if n % 2 == 0:
        m = n // 2
        paired = Series()
        for j in range(m):
            paired = paired + abs(mm.b[j][m + j])
        rhs2 = 2 * paired
        pairing = UncertaintyVerdict("TracePairing", lhs, rhs2, _status_of(lhs, rhs2))
    return general, pairing


def check_two_obs(
    state: GaussianState, x1: Observable, x2: Observable
) -> UncertaintyVerdict:
    """Squared two-observable bound: product of the two variances against
    the squared covariance plus the squared bracket moment.

    Compared in squared form so no square roots are needed; the gap equals
    det(phi) exactly, so saturation coincides with a singular phi.
    """
    mm = moment_matrices(state, [x1, x2])
    lhs = mm.variances[0] * mm.variances[1]
    rhs = mm.a[0][1] * mm.a[0][1] + mm.b[0][1] * mm.b[0][1]
    det_phi = determinant(mm.phi.entries)
    if det_phi.im.terms or det_phi.re != lhs - rhs:
        raise InternalConsistencyError("two-observable gap must equal det(phi)")
    status = _status_of(lhs, rhs)
    return UncertaintyVerdict(
        "TwoObs", lhs, rhs, status, rs_intelligent=status is Status.SATURATED
    )


def find_ideal_direction(
    state: GaussianState, xs, mm: MomentMatrices | None = None
):
    """Real combination of the deviations that the state annihilates.

    Exists exactly when the covariance part is singular; the returned
    coefficients are re-verified through the ideal-membership test.
    """
    mm = mm if mm is not None else moment_matrices(state, xs)
    basis = kernel(mm.a)
    if not basis:
        return None
    x = basis[0]
    devs = [deviation(state, obs) for obs in xs]
    w = None
    for coeff, dev in zip(x, devs):
        part = dev * coeff
        w = part if w is None else w + part
    if not in_gelfand_ideal(state, w):
        raise InternalConsistencyError(
            "kernel direction of the covariance part must lie in the ideal"
        )
    return x


@dataclass(frozen=True)
class AnnihilatorResult:
    """Outcome of the sufficient saturation condition for 2m observables."""

    norms: tuple[Series, ...]
    all_in_ideal: bool
    rs: UncertaintyVerdict


def check_annihilating_transform(
    state: GaussianState, xs, u, v, mm: MomentMatrices | None = None
) -> AnnihilatorResult:
    """Build ladder combinations dA_a = (dX_a + i dX_{a+m})/2, transform them
    by an invertible (u, v) block pair, and test whether every transformed
    combination is annihilated; if so the RS relation must be saturated."""
    xs = list(xs)
    n = len(xs)
    if n == 0 or n % 2:
        raise DimensionTooSmall("need an even number of observables")
    m = n // 2
    u = [[_centry(x) for x in row] for row in u]
    v = [[_centry(x) for x in row] for row in v]
    if len(u) != m or len(v) != m or any(len(r) != m for r in u + v):
        raise ValueError(f"u and v must be {m}x{m}")
    block = [u[i] + v[i] for i in range(m)] + [
        [x.conj() for x in v[i]] + [x.conj() for x in u[i]] for i in range(m)
    ]
    z = zeroness(determinant(block))
    if z is Zeroness.ZERO:
        raise SingularTransform("the (u, v) block matrix is singular")
    if z is Zeroness.UNDECIDED:
        raise IndeterminateAtTruncation("block determinant zero modulo truncation")
    mm = mm if mm is not None else moment_matrices(state, xs)
    devs = [deviation(state, x) for x in xs]
    ladders = [
        (devs[alpha] + devs[alpha + m] * I_UNIT) * Fraction(1, 2) for alpha in range(m)
    ]
    norms = []
    all_zero = True
    for alpha in range(m):
        prime = None
        for beta in range(m):
            part = ladders[beta] * u[alpha][beta] + ladders[beta].conj() * v[alpha][beta]
            prime = part if prime is None else prime + part
        from .states import gelfand_norm

        norm = gelfand_norm(state, prime)
        norms.append(norm)
        s = norm.sign()
        if s is Sign.INDETERMINATE:
            raise IndeterminateAtTruncation("annihilation test undecidable")
        if s is not Sign.ZERO:
            all_zero = False
    rs = check_rs(state, xs, mm)
    if all_zero and rs.status is not Status.SATURATED:
        _expect_nonneg_failure(
            mm.phi, "annihilated transform must saturate the RS relation"
        )
    return AnnihilatorResult(tuple(norms), all_zero, rs)


def two_observable_ideal_witness(
    state: GaussianState, x1: Observable, x2: Observable
):
    """(saturated?, complex coefficients (u1, u2)) for two observables.

    The RS relation for two observables is saturated exactly when some
    complex combination u1 dX1 + u2 dX2 is annihilated by the state; the
    coefficients come from the kernel of phi and are re-verified.
    """
    mm = moment_matrices(state, [x1, x2])
    det_phi = determinant(mm.phi.entries)
    if det_phi.im.terms:
        raise InternalConsistencyError("det(phi) must be real")
    s = det_phi.re.sign()
    if s is Sign.INDETERMINATE:
        raise IndeterminateAtTruncation("saturation undecidable at truncation")
    if s is not Sign.ZERO:
        return False, None
    basis = kernel(mm.phi.entries)
    if not basis:
        raise InternalConsistencyError("singular phi must have a kernel vector")
    witness = basis[0]
    devs = [deviation(state, x1), deviation(state, x2)]
    w = devs[0] * witness[0] + devs[1] * witness[1]
    if not in_gelfand_ideal(state, w):
        raise InternalConsistencyError("kernel witness must lie in the ideal")
    return True, tuple(witness)


def _centry(x) -> ComplexSeries:
    if isinstance(x, ComplexSeries):
        return x
    if isinstance(x, Series):
        return ComplexSeries(x)
    if isinstance(x, (int, Fraction)):
        return ComplexSeries(series([(0, x)]))
    raise TypeError(f"bad transform entry {type(x).__name__}")


def _expect_nonneg_failure(phi: HermitianForm, message: str):
    """Theorem-implication failures are only legitimate when the moment
    form is indefinite (an inadmissible state); otherwise it's a bug."""
    cls, _ = is_nonneg_definite(phi)
    if cls is not Definiteness.INDEFINITE:
        raise InternalConsistencyError(message)
