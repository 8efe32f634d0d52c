"""Indefinite inner-product spaces over H^n.

A space is given by a Hermitian Gram matrix ``M`` with

    [v, w] = w^* M v,

which is right linear in ``v`` and conjugate right linear in ``w``. The
spectral decomposition of ``M`` yields the fundamental decomposition
``V = V+ [+] V- [+] N`` and the fundamental symmetry ``J``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property

import numpy as np

from .errors import ContractViolation
from .linalg import HermEig, hermitian_eig, kernel, singular_values, solve
from .qmatrix import QMatrix
from .quaternion import Quaternion

NEUTRAL_RTOL = 1e-9


class InnerProductSpace:
    """Right quaternionic space H^n with the form ``[v, w] = w^* M v``."""

    def __init__(self, M: QMatrix):
        if not M.is_square():
            raise ContractViolation(f"Gram matrix must be square, got {M.shape}")
        if not M.is_hermitian():
            raise ContractViolation("Gram matrix must be Hermitian")
        self.M = M.hermitian_part()

    @classmethod
    def diag(cls, values) -> "InnerProductSpace":
        return cls(QMatrix.diag(values))

    @property
    def n(self) -> int:
        return self.M.rows

    @cached_property
    def eig(self) -> HermEig:
        return hermitian_eig(self.M)

    @cached_property
    def _abs_spectrum(self) -> np.ndarray:
        # singular values of a Hermitian matrix are its eigenvalue magnitudes
        return singular_values(self.M)

    @cached_property
    def gram_norm(self) -> float:
        """``||M||_2``, the largest eigenvalue magnitude."""
        s = self._abs_spectrum
        return float(s[0]) if s.size else 0.0

    @property
    def tol(self) -> float:
        """Absolute threshold under which an eigenvalue of ``M`` counts as zero."""
        return NEUTRAL_RTOL * self.gram_norm

    @cached_property
    def abs_gram(self) -> QMatrix:
        """The spectral absolute value ``|M| = V |Lambda| V^*``."""
        return self.eig.function(abs)

    def is_degenerate(self) -> bool:
        return bool(np.any(self._abs_spectrum <= self.tol))

    def check_vector(self, v: QMatrix) -> QMatrix:
        if v.rows != self.n:
            raise ContractViolation(f"vector has {v.rows} rows, space dimension is {self.n}")
        return v

    def __repr__(self):
        return f"InnerProductSpace(n={self.n})"


def inner(S: InnerProductSpace, v: QMatrix, w: QMatrix) -> Quaternion:
    """``[v, w] = w^* M v`` for column vectors ``v`` and ``w``."""
    S.check_vector(v)
    S.check_vector(w)
    if v.cols != 1 or w.cols != 1:
        raise ContractViolation("inner expects column vectors")
    return (w.H @ S.M @ v)[0, 0]


def gram(S: InnerProductSpace, B: QMatrix, C: QMatrix | None = None) -> QMatrix:
    """Matrix of inner products ``[B_j, C_i]`` at position ``(i, j)``."""
    C = B if C is None else C
    return C.H @ S.M @ B


class VectorTag(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    NEUTRAL = "neutral"


@dataclass(frozen=True)
class VectorClass:
    tag: VectorTag
    value: float


def classify_vector(S: InnerProductSpace, v: QMatrix) -> VectorClass:
    """Sign of ``[v, v]``; values within ``1e-9 ||M|| ||v||^2`` of zero are neutral."""
    value = inner(S, v, v).real
    if abs(value) <= NEUTRAL_RTOL * S.gram_norm * v.norm() ** 2:
        return VectorClass(VectorTag.NEUTRAL, value)
    return VectorClass(VectorTag.POSITIVE if value > 0 else VectorTag.NEGATIVE, value)


def isotropic_part(S: InnerProductSpace) -> QMatrix:
    """Orthonormal basis of the kernel of ``M``, the vectors orthogonal to everything."""
    if S.gram_norm == 0.0:
        return QMatrix.identity(S.n)
    return kernel(S.M, tol=NEUTRAL_RTOL, scale=S.gram_norm)


@dataclass(frozen=True)
class FundamentalDecomposition:
    """``V = V+ [+] V- [+] N`` together with the fundamental symmetry ``J``.

    ``Vplus``, ``Vminus`` and ``N`` hold bases as columns. ``J`` acts as the
    identity on ``N``; it is only a fundamental symmetry in the strict sense
    when ``N`` is trivial.
    """

    Vplus: QMatrix
    Vminus: QMatrix
    N: QMatrix
    J: QMatrix
    lambdas: np.ndarray

    @property
    def signature(self) -> tuple[int, int, int]:
        return self.Vplus.cols, self.Vminus.cols, self.N.cols

    @property
    def degenerate(self) -> bool:
        return self.N.cols > 0

    def j_gram(self, S: InnerProductSpace) -> QMatrix:
        """Gram matrix of ``<v, w>_J = [J v, w]``, namely ``M J``."""
        return (S.M @ self.J).hermitian_part()


def fundamental_decomposition(S: InnerProductSpace) -> FundamentalDecomposition:
    """Spectral fundamental decomposition of ``S``.

    Eigenvectors of ``M`` with eigenvalue above ``tol`` span ``V+``, below
    ``-tol`` span ``V-``, the rest span ``N`` (the isotropic part), with
    ``tol = 1e-9 ||M||``.
    """
    e = S.eig
    tol = S.tol
    lam = e.lambdas
    pos = np.flatnonzero(lam > tol)
    neg = np.flatnonzero(lam < -tol)
    zer = np.flatnonzero(np.abs(lam) <= tol)
    signs = np.where(lam < -tol, -1.0, 1.0)
    J = e.V.scale_columns(signs) @ e.V.H
    V = e.V
    return FundamentalDecomposition(
        Vplus=QMatrix._wrap(V.data[:, pos]),
        Vminus=QMatrix._wrap(V.data[:, neg]),
        N=QMatrix._wrap(V.data[:, zer]),
        J=J,
        lambdas=lam.copy(),
    )


def _require_nondegenerate(S, D):
    if D.degenerate:
        raise ContractViolation(
            "J-inner product needs a nondegenerate space "
            f"(isotropic part has dimension {D.N.cols})"
        )


def j_inner(S: InnerProductSpace, D: FundamentalDecomposition, v: QMatrix, w: QMatrix) -> Quaternion:
    """``<v, w>_J = [J v, w]``, a positive definite inner product."""
    _require_nondegenerate(S, D)
    return inner(S, D.J @ v, w)


def j_norm(S: InnerProductSpace, D: FundamentalDecomposition, v: QMatrix) -> float:
    """``sqrt(<v, v>_J)``."""
    value = j_inner(S, D, v, v).real
    return math.sqrt(max(value, 0.0))


def decomposition_from_bases(
    S: InnerProductSpace,
    Vplus: QMatrix,
    Vminus: QMatrix,
    N: QMatrix | None = None,
    check_tol: float = 1e-9,
) -> FundamentalDecomposition:
    """Fundamental decomposition spanned by given bases.

    The three blocks must be mutually M-orthogonal and together form a basis
    of H^n; ``J`` is the involution equal to ``+1`` on ``Vplus`` and ``N`` and
    ``-1`` on ``Vminus``.
    """
    N = QMatrix.empty(S.n) if N is None else N
    W = QMatrix.hstack([Vplus, Vminus, N]) if (Vplus.cols + Vminus.cols + N.cols) else None
    if W is None or W.cols != S.n:
        raise ContractViolation("bases must together contain n columns")
    scale = max(S.gram_norm, 1.0) * W.norm() ** 2
    blocks = [Vplus, Vminus, N]
    for a in range(3):
        for b in range(a + 1, 3):
            if blocks[a].cols and blocks[b].cols:
                if gram(S, blocks[a], blocks[b]).max_abs() > check_tol * scale:
                    raise ContractViolation("decomposition blocks are not M-orthogonal")
    signs = [1.0] * Vplus.cols + [-1.0] * Vminus.cols + [1.0] * N.cols
    # J = W diag(signs) W^{-1}
    J = solve(W.H, W.scale_columns(signs).H).H
    lam = np.concatenate([
        np.real(np.diagonal(gram(S, B).data[..., 0])) if B.cols else np.zeros(0)
        for B in blocks
    ])
    return FundamentalDecomposition(Vplus=Vplus, Vminus=Vminus, N=N, J=J, lambdas=lam)
