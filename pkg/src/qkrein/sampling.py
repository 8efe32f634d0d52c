"""Seeded random generators for quaternionic test data."""

from __future__ import annotations

import numpy as np

from .krein import SteinProblem, spectral_radius, stein_solve_series
from .linalg import hermitian_eig, orthonormalize
from .qmatrix import QMatrix


def random_matrix(rng: np.random.Generator, rows: int, cols: int, scale: float = 1.0) -> QMatrix:
    """Entries with independent standard normal components."""
    return QMatrix(scale * rng.standard_normal((rows, cols, 4)))


def random_vector(rng: np.random.Generator, n: int) -> QMatrix:
    return random_matrix(rng, n, 1)


def random_hermitian(rng: np.random.Generator, n: int) -> QMatrix:
    X = random_matrix(rng, n, n)
    return (0.5 * (X + X.H)).hermitian_part()


def random_unitary(rng: np.random.Generator, n: int) -> QMatrix:
    return orthonormalize(random_matrix(rng, n, n))


def random_gram(rng: np.random.Generator, eigenvalues) -> QMatrix:
    """``U diag(eigenvalues) U^*`` for a random quaternionic unitary ``U``."""
    eigenvalues = list(eigenvalues)
    U = random_unitary(rng, len(eigenvalues))
    return (U.scale_columns(eigenvalues) @ U.H).hermitian_part()


def random_signature_gram(
    rng: np.random.Generator,
    n_pos: int,
    n_neg: int,
    n_zero: int = 0,
    low: float = 0.2,
    high: float = 5.0,
) -> QMatrix:
    """Gram matrix of a prescribed inertia with eigenvalue magnitudes in ``[low, high]``."""
    mags = rng.uniform(low, high, size=n_pos + n_neg)
    eig = list(mags[:n_pos]) + list(-mags[n_pos:]) + [0.0] * n_zero
    rng.shuffle(eig)
    return random_gram(rng, eig)


def random_invertible_hermitian(rng: np.random.Generator, n: int, min_ratio: float = 1e-2) -> QMatrix:
    """Random Hermitian matrix whose eigenvalues all exceed ``min_ratio`` times the largest in magnitude."""
    while True:
        M = random_hermitian(rng, n)
        lam = np.abs(hermitian_eig(M).lambdas)
        if lam.min() > min_ratio * lam.max():
            return M


def random_positive_definite(rng: np.random.Generator, n: int, shift: float = 0.1) -> QMatrix:
    X = random_matrix(rng, n, n)
    return (X.H @ X + QMatrix.identity(n) * shift).hermitian_part()


def random_contraction(rng: np.random.Generator, n: int, radius: float) -> QMatrix:
    """Random square matrix rescaled to the given spectral radius."""
    A = random_matrix(rng, n, n)
    return A * (radius / spectral_radius(A))


def random_stein_problem(
    rng: np.random.Generator,
    x: int,
    y: int,
    u: int,
    radius: tuple[float, float] = (0.2, 0.9),
    n_scale: float = 0.3,
    max_tries: int = 1000,
):
    """A stable Stein problem whose solution is positive definite.

    ``A`` has spectral radius drawn from ``radius``; ``N`` is scaled down by
    ``n_scale`` and the draw is repeated until the Stein solution is
    positive definite with margin.
    """
    for _ in range(max_tries):
        A = random_contraction(rng, x, rng.uniform(*radius))
        C = random_matrix(rng, y, x)
        N = random_matrix(rng, u, x, scale=n_scale)
        problem = SteinProblem(A, C, N)
        P = stein_solve_series(problem)
        lam = hermitian_eig(P).lambdas
        if lam.min() > 1e-3 * lam.max():
            return problem, P
    raise RuntimeError("could not draw a Stein problem with positive definite solution")
