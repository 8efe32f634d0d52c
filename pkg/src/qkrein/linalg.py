"""Linear algebra over the quaternions.

The Hermitian eigensolver runs a cyclic complex Jacobi iteration on the
complex adjoint ``embed(A)``, whose spectrum is that of ``A`` with every value
doubled, and reassembles quaternionic eigenvectors from the complex ones.
Linear systems are solved by quaternionic Gaussian elimination. Rank and
kernel go through the singular values of the embedding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation, NumericFailure, SingularMatrixError
from .qmatrix import QMatrix, _qmul_arrays, complex_to_vector, embed
from .quaternion import Quaternion

JACOBI_RTOL = 1e-13
JACOBI_MAX_SWEEPS = 100
HERMITIAN_RTOL = 1e-12
RANK_RTOL = 1e-9


# complex Jacobi --------------------------------------------------------------


def jacobi_eigh(C, rtol=JACOBI_RTOL, max_sweeps=JACOBI_MAX_SWEEPS):
    """Eigen-decompose a complex Hermitian matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    C : array_like
        Complex Hermitian ``n x n`` matrix. Only its Hermitian part is used.
    rtol : float
        Sweeps stop once the off-diagonal Frobenius norm is at most
        ``rtol * ||C||_F``.
    max_sweeps : int
        Number of full cyclic sweeps before giving up.

    Returns
    -------
    w : ndarray
        Eigenvalues, unsorted.
    V : ndarray
        Unitary matrix of eigenvectors, ``C V = V diag(w)``.
    sweeps : int
        Number of sweeps used.
    """
    A = np.array(C, dtype=complex)
    A = 0.5 * (A + A.conj().T)
    n = A.shape[0]
    V = np.eye(n, dtype=complex)
    scale = np.linalg.norm(A)
    threshold = rtol * scale
    history = []
    for sweep in range(max_sweeps + 1):
        off = float(np.linalg.norm(A[~np.eye(n, dtype=bool)]))
        history.append(off)
        if off <= threshold or n < 2:
            return np.real(np.diag(A)).copy(), V, sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                phase = apq / mag
                app, aqq = A[p, p].real, A[q, q].real
                theta = 0.5 * math.atan2(2.0 * mag, aqq - app)
                c, s = math.cos(theta), math.sin(theta)
                # U = diag(1, conj(phase)) @ [[c, s], [-s, c]] on columns p, q
                u = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                idx = [p, q]
                A[:, idx] = A[:, idx] @ u
                A[idx, :] = u.conj().T @ A[idx, :]
                A[p, q] = A[q, p] = 0.0
                A[p, p] = A[p, p].real
                A[q, q] = A[q, q].real
                V[:, idx] = V[:, idx] @ u
    raise NumericFailure(
        f"Jacobi eigensolver did not converge in {max_sweeps} sweeps", history=history
    )


# quaternionic Gram-Schmidt -----------------------------------------------------


def _qdot(u, v):
    """``u^* v`` for two component vectors of shape ``(n, 4)``."""
    return _qmul_arrays((u * _CONJ)[None, :, :], v[:, None, :])[0, 0]


_CONJ = np.array([1.0, -1.0, -1.0, -1.0])


def _right_scale(v, q):
    """``v q`` for a component vector ``(n, 4)`` and scalar components ``q``."""
    return _qmul_arrays(v[:, None, :], np.asarray(q)[None, None, :])[:, 0, :]


def _pivoted_gram_schmidt(vectors, count=None, drop_tol=None):
    """Select and orthonormalize columns by largest remaining residual.

    ``vectors`` has shape ``(n, k, 4)``. At most ``count`` columns are kept;
    a column whose residual norm is at most ``drop_tol`` (relative to the
    largest input column norm) is treated as dependent and the selection
    stops. Returns an array of shape ``(n, r, 4)`` with orthonormal columns.
    """
    work = np.array(vectors, dtype=float)
    n, k = work.shape[0], work.shape[1]
    if count is None:
        count = min(n, k)
    col_norms = np.sqrt(np.sum(work**2, axis=(0, 2)))
    ref = col_norms.max() if k else 0.0
    basis = []
    alive = np.ones(k, dtype=bool)
    while len(basis) < count and alive.any():
        norms = np.sqrt(np.sum(work**2, axis=(0, 2)))
        norms[~alive] = -1.0
        j = int(np.argmax(norms))
        if ref == 0.0 or (drop_tol is not None and norms[j] <= drop_tol * ref):
            break
        v = work[:, j].copy()
        # second pass restores orthogonality lost to cancellation
        for _ in range(2):
            for b in basis:
                v -= _right_scale(b, _qdot(b, v))
        nv = math.sqrt(np.sum(v**2))
        alive[j] = False
        if nv == 0.0:
            continue
        v /= nv
        basis.append(v)
        for i in np.flatnonzero(alive):
            work[:, i] -= _right_scale(v, _qdot(v, work[:, i]))
    if not basis:
        return np.zeros((n, 0, 4))
    return np.stack(basis, axis=1)


def orthonormalize(B: QMatrix, tol: float = RANK_RTOL) -> QMatrix:
    """Orthonormal basis (Euclidean metric) for the right span of the columns of ``B``.

    Modified Gram-Schmidt with re-orthogonalization and column pivoting;
    columns whose residual falls below ``tol * max(rows, cols)`` times the
    largest column norm are dropped.
    """
    if B.cols == 0:
        return QMatrix.empty(B.rows)
    drop = tol * max(B.rows, B.cols)
    Q = _pivoted_gram_schmidt(B.data, count=min(B.rows, B.cols), drop_tol=drop)
    return QMatrix._wrap(Q)


# Hermitian eigenproblem --------------------------------------------------------


@dataclass(frozen=True)
class HermEig:
    """Spectral decomposition ``A = V diag(lambdas) V^*`` with real eigenvalues."""

    lambdas: np.ndarray
    V: QMatrix

    def reconstruct(self) -> QMatrix:
        return self.V.scale_columns(self.lambdas) @ self.V.H

    def function(self, f) -> QMatrix:
        """``V diag(f(lambdas)) V^*`` for a real function ``f``."""
        vals = np.asarray([f(lam) for lam in self.lambdas], dtype=float)
        return self.V.scale_columns(vals) @ self.V.H


def _pair_clusters(w, gap_tol):
    """Group the descending complex spectrum into clusters of whole pairs."""
    npairs = len(w) // 2
    clusters = []
    start = 0
    for p in range(1, npairs + 1):
        if p == npairs or w[2 * p - 1] - w[2 * p] > gap_tol:
            clusters.append((2 * start, 2 * p))
            start = p
    return clusters


def _phase_normalize(v, tol):
    """Right-multiply ``v`` by a unit quaternion so that its first sizable entry is real positive."""
    mags = np.sqrt(np.sum(v**2, axis=1))
    big = np.flatnonzero(mags > tol)
    if big.size == 0:
        return v
    k = big[0]
    q = v[k] / mags[k]
    return _right_scale(v, q * _CONJ)


def hermitian_eig(
    A: QMatrix,
    rtol: float = JACOBI_RTOL,
    max_sweeps: int = JACOBI_MAX_SWEEPS,
) -> HermEig:
    """Eigenvalues and orthonormal eigenvectors of a Hermitian quaternionic matrix.

    Eigenvalues are real and returned in descending order; each appears once
    per quaternionic dimension of its eigenspace (the embedded spectrum holds
    it twice). Ties are ordered by the first eigenvector component whose
    magnitude differs, larger first.

    Raises
    ------
    ContractViolation
        If ``A`` is not square or not Hermitian to within ``1e-12`` of its
        largest entry.
    NumericFailure
        If the Jacobi sweeps do not converge.
    """
    if not A.is_square():
        raise ContractViolation(f"hermitian_eig needs a square matrix, got {A.shape}")
    if not A.is_hermitian(HERMITIAN_RTOL):
        raise ContractViolation("hermitian_eig needs a Hermitian matrix")
    n = A.rows
    A = A.hermitian_part()
    C = embed(A)
    w, U, _ = jacobi_eigh(C, rtol=rtol, max_sweeps=max_sweeps)
    order = np.argsort(-w, kind="stable")
    w, U = w[order], U[:, order]
    scale = max(np.abs(w).max(), np.finfo(float).tiny)
    gap_tol = 1e-10 * scale

    cols = []
    for lo, hi in _pair_clusters(w, gap_tol):
        d = (hi - lo) // 2
        cand = complex_to_vector(U[:, lo:hi]).data
        cols.append(_pivoted_gram_schmidt(cand, count=d))
    Vd = np.concatenate(cols, axis=1)
    if Vd.shape[1] != n:
        raise NumericFailure("could not assemble a full quaternionic eigenbasis")

    Vd = np.stack([_phase_normalize(Vd[:, k], 1e-8) for k in range(n)], axis=1)
    AV = _qmul_arrays(A.data, Vd)
    # Re(v^* A v) is the componentwise dot product of v and A v
    lambdas = np.einsum("ikr,ikr->k", Vd, AV)
    mags = np.sqrt(np.sum(Vd**2, axis=2))
    order = _tie_aware_order(lambdas, mags, 1e-10 * scale)
    return HermEig(lambdas=lambdas[order].copy(), V=QMatrix._wrap(Vd[:, order]))


def _tie_aware_order(lambdas, mags, tie_tol):
    n = len(lambdas)
    base = sorted(range(n), key=lambda k: -lambdas[k])
    out = []
    i = 0
    while i < n:
        j = i + 1
        while j < n and lambdas[base[i]] - lambdas[base[j]] <= tie_tol:
            j += 1
        group = base[i:j]
        group.sort(key=lambda k: _magnitude_key(mags[:, k]), reverse=True)
        out.extend(group)
        i = j
    return np.array(out, dtype=int)


def _magnitude_key(m):
    # compare magnitudes coarsely so round-off does not flip ties
    return tuple(np.round(m, 10))


# linear systems ----------------------------------------------------------------


def solve(A: QMatrix, B: QMatrix, pivot_rtol: float = 1e-14) -> QMatrix:
    """Solve ``A X = B`` by Gaussian elimination with partial pivoting on ``|a_ij|``.

    Raises
    ------
    SingularMatrixError
        If a pivot has magnitude at most ``pivot_rtol`` times the largest
        entry of ``A``.
    """
    if not A.is_square():
        raise ContractViolation(f"solve needs a square matrix, got {A.shape}")
    if A.rows != B.rows:
        raise ContractViolation(f"row mismatch: {A.shape} vs {B.shape}")
    n = A.rows
    M = np.array(A.data)
    R = np.array(B.data)
    scale = A.max_abs()
    if scale == 0.0:
        raise SingularMatrixError("matrix is zero")
    for k in range(n):
        mags = np.sum(M[k:, k] ** 2, axis=1)
        p = k + int(np.argmax(mags))
        if math.sqrt(mags[p - k]) <= pivot_rtol * scale:
            raise SingularMatrixError(f"pivot {k} below tolerance; matrix is singular")
        if p != k:
            M[[k, p]] = M[[p, k]]
            R[[k, p]] = R[[p, k]]
        piv_inv = Quaternion(*M[k, k]).inv().to_list()
        # normalize row k from the left: row <- piv^{-1} row
        M[k] = _left_scale_row(M[k], piv_inv)
        R[k] = _left_scale_row(R[k], piv_inv)
        for i in range(n):
            if i == k:
                continue
            f = M[i, k].copy()
            if not f.any():
                continue
            M[i] -= _left_scale_row(M[k], f)
            R[i] -= _left_scale_row(R[k], f)
    return QMatrix._wrap(R)


def _left_scale_row(row, q):
    """``q row`` for a component row of shape ``(m, 4)``."""
    return _qmul_arrays(np.asarray(q, dtype=float)[None, None, :], row[None, :, :])[0]


def inverse(A: QMatrix) -> QMatrix:
    return solve(A, QMatrix.identity(A.rows))


# rank and kernel ---------------------------------------------------------------


def singular_values(A: QMatrix) -> np.ndarray:
    """Quaternionic singular values (each embedded pair reported once), descending."""
    if A.rows == 0 or A.cols == 0:
        return np.zeros(0)
    s = np.linalg.svd(embed(A), compute_uv=False)
    return 0.5 * (s[0::2] + s[1::2])


def spectral_norm(A: QMatrix) -> float:
    s = singular_values(A)
    return float(s[0]) if s.size else 0.0


def _threshold(A, s, tol, scale):
    if tol is None:
        tol = RANK_RTOL * max(A.rows, A.cols)
    if tol <= 0:
        raise ContractViolation("tol must be positive")
    if scale is None:
        scale = float(s[0]) if s.size else 0.0
    return tol * scale


def rank(A: QMatrix, tol: float | None = None, scale: float | None = None) -> int:
    """Quaternionic rank: the number of singular values above ``tol * scale``.

    ``tol`` defaults to ``1e-9 * max(rows, cols)`` and ``scale`` to the largest
    singular value. Passing an explicit ``scale`` lets callers measure a
    product against an external reference magnitude.
    """
    s = singular_values(A)
    thr = _threshold(A, s, tol, scale)
    return int(np.sum(s > thr))


def kernel(A: QMatrix, tol: float | None = None, scale: float | None = None) -> QMatrix:
    """Orthonormal basis of the right null space ``{v : A v = 0}``.

    Returns an ``n x d`` matrix with ``d`` the quaternionic nullity; the
    embedded matrix has complex nullity ``2 d``. Thresholds as in :func:`rank`.
    """
    n = A.cols
    if A.rows == 0:
        return QMatrix.identity(n)
    C = embed(A)
    _, s_c, Vh = np.linalg.svd(C, full_matrices=True)
    s = singular_values(A)
    thr = _threshold(A, s, tol, scale)
    r = int(np.sum(s > thr))
    d = n - r
    if d == 0:
        return QMatrix.empty(n)
    null_c = Vh[2 * r :].conj().T
    cand = complex_to_vector(null_c).data
    return _normalized_columns(_pivoted_gram_schmidt(cand, count=d))


def column_space(A: QMatrix, tol: float | None = None, scale: float | None = None) -> QMatrix:
    """Orthonormal basis of the right column span of ``A`` (rank-revealing)."""
    if A.cols == 0:
        return QMatrix.empty(A.rows)
    C = embed(A)
    U, _, _ = np.linalg.svd(C, full_matrices=False)
    s = singular_values(A)
    thr = _threshold(A, s, tol, scale)
    r = int(np.sum(s > thr))
    if r == 0:
        return QMatrix.empty(A.rows)
    cand = complex_to_vector(U[:, : 2 * r]).data
    return _normalized_columns(_pivoted_gram_schmidt(cand, count=r))


def _normalized_columns(Vd):
    if Vd.shape[1] == 0:
        return QMatrix._wrap(Vd)
    return QMatrix._wrap(np.stack([_phase_normalize(Vd[:, k], 1e-8) for k in range(Vd.shape[1])], axis=1))


def generalized_eigvals(A: QMatrix, B: QMatrix) -> np.ndarray:
    """Eigenvalues of the pencil ``A x = mu B x`` for Hermitian ``A`` and positive definite ``B``.

    Computed as the spectrum of ``B^{-1/2} A B^{-1/2}``, descending.
    """
    eb = hermitian_eig(B)
    if eb.lambdas.size and eb.lambdas.min() <= 0.0:
        raise SingularMatrixError("generalized_eigvals needs a positive definite B")
    W = eb.function(lambda lam: 1.0 / math.sqrt(lam))
    # plain numeric sort: the tie-aware eigenvector order is irrelevant here
    return np.sort(hermitian_eig((W @ A @ W).hermitian_part()).lambdas)[::-1]
