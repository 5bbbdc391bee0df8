"""Determinants, congruence reduction, definiteness, and the determinant
inequalities for non-negative hermitian forms."""

import random
from fractions import Fraction as F
from itertools import product

import pytest

from dq.errors import (
    DimensionTooSmall,
    HermitianViolation,
    IndeterminateAtTruncation,
    PreconditionViolated,
)
from dq.linalg import (
    Definiteness,
    Relation,
    check_form_determinant_bound,
    check_hadamard_chain,
    check_robertson,
    check_trace_bounds,
    congruence_diagonalize,
    determinant,
    form_from_dict,
    form_to_dict,
    gram_form,
    hermitian_form,
    hermitian_quadratic,
    is_nonneg_definite,
    kernel,
    real_embedding,
    split,
)
from dq.proptests import classify_gram, rand_gram
from dq.series import (
    HBAR,
    I_UNIT,
    ComplexSeries,
    ONE,
    Sign,
    ZERO,
    h,
    rational,
    series,
)

I1 = I_UNIT


def cofactor_det(m):
    """Brute-force determinant oracle by first-row expansion."""
    n = len(m)
    if n == 1:
        return m[0][0]
    total = None
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        term = m[0][j] * cofactor_det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return [
        [sum_entries(a[i][r] * b[r][j] for r in range(k)) for j in range(m)]
        for i in range(n)
    ]


def sum_entries(items):
    total = None
    for x in items:
        total = x if total is None else total + x
    return total


def transpose(a):
    return [list(col) for col in zip(*a)]


class TestDeterminant:
    def test_identity(self):
        m = [[rational(1) if i == j else ZERO for j in range(4)] for i in range(4)]
        assert determinant(m) == ONE

    def test_skew_2x2(self):
        assert determinant([[F(0), F(1)], [F(-1), F(0)]]) == 1

    def test_matches_cofactor_oracle(self):
        rng = random.Random(11)
        for _ in range(25):
            m = [[F(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(4)] for _ in range(4)]
            assert determinant(m) == cofactor_det(m)

    def test_series_matches_cofactor_oracle(self):
        rng = random.Random(12)
        for _ in range(10):
            m = [
                [
                    series([(0, rng.randint(-3, 3)), (1, rng.randint(-2, 2))])
                    for _ in range(3)
                ]
                for _ in range(3)
            ]
            assert determinant(m) == cofactor_det(m)

    def test_multiplicative(self):
        rng = random.Random(13)
        for _ in range(10):
            a = [[F(rng.randint(-5, 5)) for _ in range(3)] for _ in range(3)]
            b = [[F(rng.randint(-5, 5)) for _ in range(3)] for _ in range(3)]
            assert determinant(mat_mul(a, b)) == determinant(a) * determinant(b)

    def test_exact_singular_gives_exact_zero(self):
        m = [[ONE, HBAR], [ONE + ONE, HBAR + HBAR]]
        det = determinant(m)
        assert det.is_zero

    def test_indeterminate_pivot_raises(self):
        blur = series({}, trunc=4)
        with pytest.raises(IndeterminateAtTruncation):
            determinant([[blur, ONE], [blur, ONE + HBAR]])


class TestCongruence:
    def test_textbook_example(self):
        d, diag = congruence_diagonalize([[F(2), F(1)], [F(1), F(2)]])
        assert diag == (F(2), F(3, 2))
        assert d == ((F(1), F(-1, 2)), (F(0), F(1)))

    def test_diagonal_input_untouched(self):
        d, diag = congruence_diagonalize([[F(3), F(0)], [F(0), F(-2)]])
        assert diag == (F(3), F(-2))
        assert d == ((F(1), F(0)), (F(0), F(1)))

    def test_hyperbolic_split(self):
        s = [[F(0), F(1)], [F(1), F(0)]]
        d, diag = congruence_diagonalize(s)
        assert diag == (F(2), F(-1, 2))
        dt_s_d = mat_mul(transpose(d), mat_mul(s, [list(r) for r in d]))
        assert dt_s_d == [[F(2), F(0)], [F(0), F(-1, 2)]]

    @pytest.mark.parametrize("seed", [1, 2, 3])
    def test_postcondition_random(self, seed):
        # oracle: explicit multiplication D^T S D reproduces the diagonal
        rng = random.Random(seed)
        n = rng.randint(2, 5)
        half = [[F(rng.randint(-6, 6)) for _ in range(n)] for _ in range(n)]
        s = [[half[i][j] + half[j][i] for j in range(n)] for i in range(n)]
        d, diag = congruence_diagonalize(s)
        got = mat_mul(transpose(d), mat_mul(s, [list(r) for r in d]))
        for i in range(n):
            for j in range(n):
                assert got[i][j] == (diag[i] if i == j else F(0))
        # det(S) det(D)^2 equals the product of diagonal entries
        prod = F(1)
        for x in diag:
            prod *= x
        assert determinant(s) * determinant(d) ** 2 == prod

    def test_series_entries(self):
        s = [[h(1), h(1, F(1, 2))], [h(1, F(1, 2)), h(1)]]
        d, diag = congruence_diagonalize(s)
        got = mat_mul(transpose(d), mat_mul(s, [list(r) for r in d]))
        for i in range(2):
            for j in range(2):
                if i == j:
                    assert got[i][j] == diag[i]
                else:
                    assert not got[i][j].terms


class TestDefiniteness:
    def grid_classify(self, form):
        """Oracle: evaluate the form on all small complex integer vectors."""
        n = form.n
        values = []
        coords = [-1, 0, 1]
        for parts in product(coords, repeat=2 * n):
            v = [
                ComplexSeries(rational(parts[2 * j]), rational(parts[2 * j + 1]))
                for j in range(n)
            ]
            if all(entry.is_zero for entry in v):
                continue
            values.append(hermitian_quadratic(form, v).re.sign())
        if Sign.NEGATIVE in values:
            return Definiteness.INDEFINITE
        if Sign.ZERO in values:
            return Definiteness.NONNEG_DEFINITE
        return Definiteness.POSITIVE_DEFINITE

    def test_nonneg_with_null_vector(self):
        form = hermitian_form([[1, I1], [-I1, 1]])
        cls, witness = is_nonneg_definite(form)
        assert cls is Definiteness.NONNEG_DEFINITE and witness is None
        assert self.grid_classify(form) is Definiteness.NONNEG_DEFINITE

    def test_positive_definite(self):
        form = hermitian_form([[1, I1], [-I1, 2]])
        assert is_nonneg_definite(form)[0] is Definiteness.POSITIVE_DEFINITE
        assert self.grid_classify(form) is Definiteness.POSITIVE_DEFINITE

    def test_indefinite_with_witness(self):
        form = hermitian_form([[1, 2 * I1], [-2 * I1, 1]])
        cls, witness = is_nonneg_definite(form)
        assert cls is Definiteness.INDEFINITE
        value = hermitian_quadratic(form, witness)
        assert value.re.sign() is Sign.NEGATIVE and not value.im.terms
        assert self.grid_classify(form) is Definiteness.INDEFINITE

    def test_embedding_matches_quadratic(self):
        form = hermitian_form([[2, 1 + I1], [1 - I1, 3]])
        emb = real_embedding(form)
        # v = x + i y against the doubled real form
        x = [F(1), F(-2)]
        y = [F(2), F(1)]
        z = [rational(c) for c in x + y]
        got = sum_entries(
            z[i] * emb[i][j] * z[j] for i in range(4) for j in range(4)
        )
        v = [ComplexSeries(rational(x[j]), rational(y[j])) for j in range(2)]
        assert hermitian_quadratic(form, v).re == got

    def test_gram_forms_never_indefinite(self):
        rng = random.Random(5)
        for t in range(40):
            n = 2 + t % 2
            scalar = ("rational", "series")[t % 2]
            form = rand_gram(rng, n, scalar, singular=t % 5 == 4)
            cls, _ = is_nonneg_definite(form)
            assert cls is not Definiteness.INDEFINITE
            assert cls is classify_gram(form)

    def test_hermitian_violation(self):
        with pytest.raises(HermitianViolation):
            hermitian_form([[1, I1], [I1, 1]])
        with pytest.raises(HermitianViolation):
            hermitian_form([[I1, ZERO], [ZERO, 1]])


class TestRobertson:
    def test_strict_example(self):
        rep = check_robertson(hermitian_form([[1, I1], [-I1, 2]]))
        assert rep.relation is Relation.STRICTLY_GREATER
        assert rep.lhs == rational(2) and rep.rhs == ONE

    def test_equality_example(self):
        rep = check_robertson(hermitian_form([[1, I1], [-I1, 1]]))
        assert rep.relation is Relation.EQUAL

    def test_series_example(self):
        half = h(1, F(1, 2))
        form = hermitian_form(
            [[HBAR, ComplexSeries(ZERO, half)], [ComplexSeries(ZERO, -half), HBAR]]
        )
        rep = check_robertson(form)
        assert rep.relation is Relation.STRICTLY_GREATER
        assert rep.lhs == h(2) and rep.rhs == h(2, F(1, 4))

    def test_rejects_indefinite(self):
        with pytest.raises(PreconditionViolated):
            check_robertson(hermitian_form([[1, 2 * I1], [-2 * I1, 1]]))


class TestFormDeterminantBound:
    def test_example(self):
        rep = check_form_determinant_bound(hermitian_form([[1, I1], [-I1, 2]]))
        assert rep.relation is Relation.STRICTLY_GREATER
        assert rep.lhs == rational(2) and rep.rhs == ONE

    def test_real_symmetric_equal(self):
        rep = check_form_determinant_bound(hermitian_form([[2, 1], [1, 2]]))
        assert rep.relation is Relation.EQUAL

    def test_gram_generated(self):
        rng = random.Random(7)
        for _ in range(15):
            form = rand_gram(rng, 3, "rational")
            rep = check_form_determinant_bound(form, classify_gram(form))
            assert rep.relation in (Relation.STRICTLY_GREATER, Relation.EQUAL)


class TestHadamardChain:
    def test_diagonal_form_collapses(self):
        rep = check_hadamard_chain(hermitian_form([[1, ZERO], [ZERO, 2]]))
        assert rep.product_vs_cov.relation is Relation.EQUAL
        assert rep.cov_vs_form.relation is Relation.EQUAL
        assert rep.diagonal_equality_ok

    def test_null_direction_example(self):
        rep = check_hadamard_chain(hermitian_form([[1, I1], [-I1, 1]]))
        assert rep.product_vs_cov.relation is Relation.EQUAL
        assert rep.cov_vs_skew.relation is Relation.EQUAL
        assert rep.skew_equality_ok

    def test_random_series_forms(self):
        rng = random.Random(8)
        for _ in range(10):
            form = rand_gram(rng, 4, "series")
            rep = check_hadamard_chain(form, classify_gram(form))
            for link in (rep.product_vs_cov, rep.cov_vs_form, rep.cov_vs_skew):
                assert link.relation in (Relation.STRICTLY_GREATER, Relation.EQUAL)
            assert rep.diagonal_equality_ok and rep.skew_equality_ok


class TestTraceBounds:
    def test_saturated_example(self):
        general, pairing = check_trace_bounds(hermitian_form([[1, I1], [-I1, 1]]))
        assert general.relation is Relation.EQUAL
        assert general.lhs == rational(2) and general.rhs == rational(2)
        assert pairing.relation is Relation.EQUAL

    def test_series_example(self):
        half = h(1, F(1, 2))
        form = hermitian_form(
            [[HBAR, ComplexSeries(ZERO, half)], [ComplexSeries(ZERO, -half), HBAR]]
        )
        general, _ = check_trace_bounds(form)
        assert general.relation is Relation.STRICTLY_GREATER
        assert general.lhs == h(2, 1) * rational(2) / HBAR  # 2h
        assert general.rhs == HBAR

    def test_dimension_guard(self):
        with pytest.raises(DimensionTooSmall):
            check_trace_bounds(hermitian_form([[1]]))

    def test_random_nonneg(self):
        rng = random.Random(9)
        for n in (2, 3, 4):
            form = rand_gram(rng, n, "rational")
            general, pairing = check_trace_bounds(form, classify_gram(form))
            assert general.relation in (Relation.STRICTLY_GREATER, Relation.EQUAL)
            if pairing is not None:
                assert pairing.relation in (Relation.STRICTLY_GREATER, Relation.EQUAL)


class TestKernel:
    def test_rank_one(self):
        assert kernel([[F(1), F(1)], [F(1), F(1)]]) == [(F(1), F(-1))]

    def test_full_rank_empty(self):
        assert kernel([[rational(1), ZERO], [ZERO, rational(1)]]) == []

    def test_series_fixture(self):
        half = h(1, F(1, 2))
        m = [[half, ZERO, half], [ZERO, half, half], [half, half, HBAR]]
        assert kernel(m) == [(ONE, ONE, -ONE)]

    def test_kernel_vectors_annihilate(self):
        rng = random.Random(10)
        g = [[F(rng.randint(-3, 3)) for _ in range(4)] for _ in range(2)]
        m = mat_mul(transpose(g), g)  # rank <= 2, symmetric
        for vec in kernel(m):
            image = [sum_entries(m[i][j] * vec[j] for j in range(4)) for i in range(4)]
            assert all(x == 0 for x in image)


class TestMatrixJson:
    def test_roundtrip(self):
        form = hermitian_form(
            [[HBAR, ComplexSeries(ZERO, h(1, F(1, 2)))],
             [ComplexSeries(ZERO, h(1, F(-1, 2))), HBAR]]
        )
        data = form_to_dict(form)
        assert data["n"] == 2
        assert data["entries"][0][1] == {"re": "0", "im": "1/2*h"}
        assert form_from_dict(data) == form

    def test_split_reconstructs(self):
        form = hermitian_form([[2, 1 + I1], [1 - I1, 3]])
        rs = split(form)
        for j in range(2):
            for k in range(2):
                assert ComplexSeries(rs.a[j][k], rs.b[j][k]) == form.entries[j][k]
