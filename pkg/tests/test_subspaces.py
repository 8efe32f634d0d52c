"""Subspaces: companions, ortho-complementation, the quotient criterion, classification, projections."""

import math

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from cases import structured_subspace
from qkrein import (
    InnerProductSpace,
    QMatrix,
    Subspace,
    SubspaceTag,
    classify_subspace,
    fundamental_decomposition,
    inner,
    is_ortho_complemented,
    isotropic_part,
    j_norm,
    kansas_check,
    orthogonal_companion,
    project,
    restricted_gram,
)
from qkrein.sampling import random_matrix
from qkrein.subspaces import contained_in, same_span

seeds = st.integers(min_value=0, max_value=2**32 - 1)
D1m1 = InnerProductSpace.diag([1.0, -1.0])
D10 = InnerProductSpace.diag([1.0, 0.0])


def span(S, *cols):
    return Subspace(S, QMatrix.hstack([QMatrix.column(c) for c in cols]))


def unit(S, i):
    v = [0.0] * S.n
    v[i] = 1.0
    return v


class TestExamples:
    def test_restricted_gram(self):
        assert restricted_gram(span(D1m1, [1, 0])).allclose(QMatrix.diag([1.0]), atol=0)
        assert restricted_gram(span(D1m1, [1, 1])).allclose(QMatrix.zeros(1, 1), atol=1e-15)
        assert restricted_gram(Subspace.full(D1m1)) == D1m1.M

    def test_companions(self):
        S3 = InnerProductSpace.diag([1.0, -1.0, 1.0])
        K = orthogonal_companion(span(S3, [1, 0, 0]))
        assert same_span(K, span(S3, [0, 1, 0], [0, 0, 1]))
        line = span(D1m1, [1, 1])
        assert same_span(orthogonal_companion(line), line)
        assert orthogonal_companion(Subspace.zero(D1m1)).dim == 2

    def test_ortho_complemented(self):
        assert is_ortho_complemented(span(D1m1, [1, 0]))
        cert = is_ortho_complemented(span(D1m1, [1, 1]))
        assert not cert and cert.span_rank == 1 and cert.gram_nonsingular is False
        cert = is_ortho_complemented(span(D10, [0, 1]))
        assert cert and cert.companion_dim == 2 and cert.gram_nonsingular is None

    def test_kansas(self):
        k = kansas_check(span(D10, [0, 1]))
        assert (k.condition_a, k.condition_b) == (True, True)
        k = kansas_check(span(D1m1, [1, 1]))
        assert k.condition_a is False and not k.holds
        k = kansas_check(span(D1m1, [1, 0]))
        assert (k.condition_a, k.condition_b) == (True, True)

    def test_classify(self):
        r = classify_subspace(span(D1m1, [1, 0]))
        assert r.tag is SubspaceTag.STRICTLY_POSITIVE and abs(r.uniform_constant - 1) < 1e-14
        S = InnerProductSpace.diag([2.0, -0.5])
        r = classify_subspace(span(S, [0, 1]))
        assert r.tag is SubspaceTag.STRICTLY_NEGATIVE and abs(r.uniform_constant - 1) < 1e-14
        r = classify_subspace(Subspace.full(D1m1))
        assert r.tag is SubspaceTag.INDEFINITE and r.uniform_constant is None
        r = classify_subspace(span(D1m1, [1, 1]))
        assert r.tag is SubspaceTag.NEUTRAL and r.degenerate

    def test_project(self):
        w = project(span(D1m1, [1, 0]), QMatrix.column([1, 1]))
        assert w.allclose(QMatrix.column([1, 0]), atol=1e-15)
        L = span(D1m1, [1, 0])
        v = QMatrix.column([3, 0])
        assert project(L, v).allclose(v, atol=1e-14)
        assert project(span(D1m1, [1, 1]), QMatrix.column([1, 0])) is None

    def test_orthonormal_basis(self):
        rng = np.random.default_rng(1)
        S = InnerProductSpace.diag([1.0, -1.0, 2.0, 0.0])
        B = random_matrix(rng, 4, 2)
        L = Subspace(S, QMatrix.hstack([B, B @ random_matrix(rng, 2, 1)]))
        assert L.dim == 2
        assert (L.B.H @ L.B - QMatrix.identity(2)).norm() <= 1e-10


def _structured(seed, degenerate=None):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 7))
    deg = bool(rng.random() < 0.5) if degenerate is None else degenerate
    S, B, kind = structured_subspace(rng, n, deg)
    return rng, S, Subspace(S, B), kind


class TestProperties:
    @settings(max_examples=60, deadline=None)
    @given(seeds)
    def test_double_companion(self, seed):
        _, S, L, _ = _structured(seed, degenerate=False)
        LL = orthogonal_companion(orthogonal_companion(L))
        assert contained_in(L, LL)
        if is_ortho_complemented(L):
            assert same_span(L, LL)

    @settings(max_examples=60, deadline=None)
    @given(seeds)
    def test_companion_of_ortho_complemented(self, seed):
        _, S, L, _ = _structured(seed)
        if is_ortho_complemented(L):
            assert is_ortho_complemented(orthogonal_companion(L))

    @settings(max_examples=60, deadline=None)
    @given(seeds)
    def test_companion_contains_isotropic_part(self, seed):
        _, S, L, _ = _structured(seed, degenerate=True)
        iso = Subspace(S, isotropic_part(S))
        assert contained_in(iso, orthogonal_companion(L))

    @settings(max_examples=100, deadline=None)
    @given(seeds)
    def test_kansas_agrees(self, seed):
        _, S, L, _ = _structured(seed)
        assert kansas_check(L).holds == bool(is_ortho_complemented(L))

    def test_neutral_subspaces(self):
        rng = np.random.default_rng(4)
        seen = set()
        for _ in range(300):
            n = int(rng.integers(3, 7))
            S, B, kind = structured_subspace(rng, n, bool(rng.random() < 0.7))
            L = Subspace(S, B)
            if classify_subspace(L).tag is not SubspaceTag.NEUTRAL:
                continue
            inside = contained_in(L, Subspace(S, isotropic_part(S)))
            seen.add(inside)
            assert bool(is_ortho_complemented(L)) == inside
        assert seen == {True, False}

    @settings(max_examples=60, deadline=None)
    @given(seeds)
    def test_projection_residual(self, seed):
        rng, S, L, _ = _structured(seed)
        v = random_matrix(rng, S.n, 1)
        w = project(L, v)
        if w is None:
            return
        worst = max(abs(inner(S, v - w, u)) for u in L.B.columns())
        assert worst <= 1e-9 * v.norm() * S.gram_norm
        assert L.contains(w)

    def test_projection_exists_when_ortho_complemented(self):
        rng = np.random.default_rng(8)
        for _ in range(100):
            S, B, _ = structured_subspace(rng, int(rng.integers(2, 7)), False)
            L = Subspace(S, B)
            if is_ortho_complemented(L):
                assert project(L, random_matrix(rng, S.n, 1)) is not None

    def test_uniform_bound(self):
        rng = np.random.default_rng(12)
        checked = 0
        while checked < 5:
            S, B, kind = structured_subspace(rng, int(rng.integers(2, 7)), False)
            L = Subspace(S, B)
            rep = classify_subspace(L)
            if rep.uniform_constant is None:
                continue
            checked += 1
            D = fundamental_decomposition(S)
            sign = 1.0 if rep.tag is SubspaceTag.STRICTLY_POSITIVE else -1.0
            for _ in range(1000):
                v = L.B @ random_matrix(rng, L.dim, 1)
                v = v / j_norm(S, D, v)
                assert sign * inner(S, v, v).real >= rep.uniform_constant * (1 - 1e-8)

    def test_uniform_constant_is_sharp(self):
        # c is attained: the generalized eigenvector reaches the bound
        S = InnerProductSpace.diag([3.0, 1.0, -2.0])
        L = span(S, [1, 0, 1], [0, 1, 0])
        rep = classify_subspace(L)
        assert rep.tag is SubspaceTag.STRICTLY_POSITIVE
        assert abs(rep.uniform_constant - 0.2) < 1e-12  # (3 - 2) / (3 + 2)
        assert 0 < rep.uniform_constant <= 1
        assert math.isfinite(rep.uniform_constant)
