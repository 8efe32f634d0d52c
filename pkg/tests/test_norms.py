"""Seminorms, the Minkowski functional, polar norms, the self-polar iteration and the Gram operator."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cases import abs_oracle, random_quaternion
from qkrein import (
    ContractViolation,
    InnerProductSpace,
    NormQ,
    NumericFailure,
    QMatrix,
    SemiNormFamily,
    SingularMatrixError,
    gram_operator,
    inner,
    mackey_seminorm,
    minkowski,
    minkowski_bisection,
    polar,
    self_polar,
    seminorm_eval,
    weak_seminorm,
)
from qkrein.quaternion import I, J
from qkrein.sampling import (
    random_invertible_hermitian,
    random_matrix,
    random_positive_definite,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)
e1, e2 = QMatrix.column([1, 0]), QMatrix.column([0, 1])
D1m1 = InnerProductSpace.diag([1.0, -1.0])


def quad(H, v):
    return (v.H @ H @ v)[0, 0].real


class TestSeminorms:
    def test_examples(self):
        F = SemiNormFamily([QMatrix.identity(2), QMatrix.diag([4.0, 0.0])])
        assert seminorm_eval(F, 0, e1) == 1
        assert seminorm_eval(F, 1, QMatrix.zeros(2, 1)) == 0
        assert seminorm_eval(F, 1, QMatrix.column([1, 5])) == 2

    def test_rejects_indefinite(self):
        with pytest.raises(ContractViolation):
            SemiNormFamily([QMatrix.diag([1.0, -1.0])])

    @settings(max_examples=50, deadline=None)
    @given(seeds)
    def test_seminorm_axioms(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(1, 5))
        X = random_matrix(rng, int(rng.integers(1, n + 1)), n)
        F = SemiNormFamily([(X.H @ X).hermitian_part()])
        v, w = random_matrix(rng, n, 1), random_matrix(rng, n, 1)
        c = random_quaternion(rng)
        p = lambda u: seminorm_eval(F, 0, u)  # noqa: E731
        assert p(v + w) <= (p(v) + p(w)) * (1 + 1e-12) + 1e-12
        assert math.isclose(p(v * c), abs(c) * p(v), rel_tol=1e-10, abs_tol=1e-12)


class TestMinkowski:
    def test_examples(self):
        assert minkowski(SemiNormFamily([QMatrix.identity(2)]), e1) == 1
        F = SemiNormFamily([QMatrix.diag([1.0, 0.0]), QMatrix.diag([0.0, 4.0])])
        assert minkowski(F, QMatrix.column([1, 1])) == 2
        assert abs(minkowski_bisection(F, QMatrix.column([1, 1])) - 2) <= 1e-10
        assert minkowski(F, QMatrix.zeros(2, 1)) == 0

    def test_null_space_vector(self):
        F = SemiNormFamily([QMatrix.diag([1.0, 0.0])])
        assert minkowski(F, e2) == 0

    @settings(max_examples=50, deadline=None)
    @given(seeds)
    def test_minkowski_is_a_seminorm(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(1, 4))
        F = SemiNormFamily([random_positive_definite(rng, n) for _ in range(int(rng.integers(1, 4)))])
        v, w = random_matrix(rng, n, 1), random_matrix(rng, n, 1)
        c = random_quaternion(rng)
        assert minkowski(F, v + w) <= (minkowski(F, v) + minkowski(F, w)) * (1 + 1e-10)
        assert math.isclose(minkowski(F, v * c), abs(c) * minkowski(F, v), rel_tol=1e-9)


class TestWeakSeminorm:
    def test_examples(self):
        assert weak_seminorm(D1m1, e2, e2) == 1
        assert weak_seminorm(D1m1, e2, e1) == 0
        assert abs(weak_seminorm(D1m1, e2, e2 * (I + J)) - math.sqrt(2)) < 1e-15

    @given(seeds)
    def test_homogeneity(self, seed):
        rng = np.random.default_rng(seed)
        S = InnerProductSpace(random_invertible_hermitian(rng, 3))
        v, w, c = random_matrix(rng, 3, 1), random_matrix(rng, 3, 1), random_quaternion(rng)
        assert math.isclose(weak_seminorm(S, w, v * c), abs(c) * weak_seminorm(S, w, v), rel_tol=1e-10, abs_tol=1e-12)


class TestPolar:
    def test_examples(self):
        assert polar(D1m1, NormQ.euclidean(2)).H.allclose(QMatrix.identity(2), atol=0)
        S = InnerProductSpace.diag([2.0, -0.5])
        assert polar(S, NormQ.euclidean(2, 2.0)).H.allclose(QMatrix.diag([2.0, 0.125]), atol=1e-15)
        S = InnerProductSpace(QMatrix.identity(2))
        assert polar(S, NormQ.euclidean(2)).H == QMatrix.identity(2)

    def test_sampled_sup(self):
        # sup of |[v, w]| over 1e5 random unit-H vectors w, one-sided within 1e-3
        rng = np.random.default_rng(0)
        S = InnerProductSpace.diag([2.0, -0.5])
        N = NormQ.euclidean(2, 2.0)
        v = random_matrix(rng, 2, 1)
        W = rng.standard_normal((2, 100_000, 4))
        W /= np.sqrt(2.0 * (W**2).sum(axis=(0, 2)))[None, :, None]
        vals = (QMatrix(W).H @ S.M @ v).data[:, 0, :]
        sup = np.sqrt((vals**2).sum(axis=1)).max()
        closed = polar(S, N)(v)
        assert sup <= closed * (1 + 1e-12)
        assert sup >= closed * (1 - 1e-3)

    def test_degenerate_is_semi(self):
        S = InnerProductSpace.diag([1.0, 0.0])
        P = polar(S, NormQ.euclidean(2))
        assert not P.definite and P(e2) == 0

    def test_singular_norm(self):
        with pytest.raises(ContractViolation):
            NormQ(QMatrix.diag([1.0, 0.0]))

    @settings(max_examples=40, deadline=None)
    @given(seeds)
    def test_polar_inequality(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(1, 5))
        S = InnerProductSpace(random_invertible_hermitian(rng, n))
        N = NormQ(random_positive_definite(rng, n))
        Np = polar(S, N)
        v, w = random_matrix(rng, n, 1), random_matrix(rng, n, 1)
        assert abs(inner(S, v, w)) <= Np(v) * N(w) * (1 + 1e-10)


class TestSelfPolar:
    def test_babylonian(self):
        r = self_polar(InnerProductSpace.diag([2.0, -0.5]))
        assert r.Hinf.H.allclose(QMatrix.diag([2.0, 0.5]), atol=1e-14)
        # per coordinate h <- (h + m^2/h)/2 from h = 2
        h = 2.0
        for _ in range(r.iterations):
            h = 0.5 * (h + 0.25 / h)
        assert abs(r.Hinf.H[1, 1].w - h) < 1e-15

    def test_one_step(self):
        r = self_polar(D1m1)
        assert r.iterations == 1 and r.Hinf.H == QMatrix.identity(2)

    def test_random_4x4_is_abs(self):
        rng = np.random.default_rng(2024)
        M = random_invertible_hermitian(rng, 4)
        r = self_polar(InnerProductSpace(M))
        assert (r.Hinf.H - abs_oracle(M)).norm() <= 1e-8 * M.norm()

    def test_degenerate_refused(self):
        with pytest.raises(SingularMatrixError):
            self_polar(InnerProductSpace.diag([1.0, 0.0]))

    def test_iteration_limit(self):
        with pytest.raises(NumericFailure) as info:
            self_polar(InnerProductSpace.diag([100.0, -0.01]), max_iter=2)
        assert len(info.value.history) == 2
        assert info.value.partial is not None

    @settings(max_examples=25, deadline=None)
    @given(seeds)
    def test_iteration_properties(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(1, 6))
        S = InnerProductSpace(random_invertible_hermitian(rng, n))
        r = self_polar(S)
        Hinf = r.Hinf.H
        assert (polar(S, r.Hinf).H - Hinf).norm() <= 10 * 1e-12 * Hinf.norm()
        H1p = polar(S, NormQ(r.iterates[0]))
        for _ in range(5):
            v = random_matrix(rng, n, 1)
            vals = [quad(H, v) for H in r.iterates]
            assert all(b <= a * (1 + 1e-12) for a, b in zip(vals, vals[1:]))
            assert math.sqrt(vals[-1]) >= H1p(v) / math.sqrt(2) * (1 - 1e-10)
            u = random_matrix(rng, n, 1)
            for H in (r.iterates[0], r.iterates[1], Hinf):
                assert abs(inner(S, u, v)) <= math.sqrt(quad(H, u) * quad(H, v)) * (1 + 1e-10)


class TestGramOperator:
    def test_examples(self):
        S = InnerProductSpace.diag([1.0, -1.0])
        assert gram_operator(S, NormQ.euclidean(2)) == S.M
        assert gram_operator(S, NormQ.euclidean(2, 2.0)).allclose(QMatrix.diag([0.5, -0.5]), atol=0)
        S = InnerProductSpace(QMatrix.identity(2))
        assert gram_operator(S, NormQ.euclidean(2)) == QMatrix.identity(2)

    def test_mackey_examples(self):
        assert mackey_seminorm(D1m1, NormQ.euclidean(2), e2) == 1
        S = InnerProductSpace.diag([1.0, 0.0])
        assert mackey_seminorm(S, NormQ.euclidean(2), e2) == 0
        S = InnerProductSpace.diag([3.0, -1.0])
        assert abs(mackey_seminorm(S, NormQ.euclidean(2), QMatrix.column([1, 1])) - math.sqrt(10)) < 1e-15

    @settings(max_examples=40, deadline=None)
    @given(seeds)
    def test_self_adjoint(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(1, 5))
        S = InnerProductSpace(random_invertible_hermitian(rng, n))
        H = random_positive_definite(rng, n)
        G = gram_operator(S, NormQ(H))
        assert (G.H @ H).allclose(H @ G, atol=1e-10 * H.norm() * G.norm())
        v, w = random_matrix(rng, n, 1), random_matrix(rng, n, 1)
        lhs, rhs = inner(S, v, w), ((G @ w).H @ H @ v)[0, 0]
        assert abs(lhs - rhs) <= 1e-10 * H.norm() * G.norm() * v.norm() * w.norm()
