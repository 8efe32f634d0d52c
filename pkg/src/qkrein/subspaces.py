"""Right linear subspaces of an inner-product space.

A :class:`Subspace` keeps a Euclidean-orthonormal basis ``B`` of its span, so
the form restricted to it is represented by ``G_L = B^* M B``. Rank decisions
about Gram products are measured against ``||M||``; rank decisions about
stacked orthonormal bases are measured against 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ContractViolation
from .inner import InnerProductSpace, isotropic_part
from .linalg import (
    RANK_RTOL,
    column_space,
    generalized_eigvals,
    hermitian_eig,
    kernel,
    orthonormalize,
    rank,
)
from .qmatrix import QMatrix


class Subspace:
    """The right span of the columns of ``vectors`` inside ``ambient``.

    Dependent columns are dropped; the stored basis ``B`` has orthonormal
    columns.
    """

    def __init__(self, ambient: InnerProductSpace, vectors: QMatrix, orthonormal: bool = False):
        if vectors.rows != ambient.n:
            raise ContractViolation(
                f"basis has {vectors.rows} rows, ambient dimension is {ambient.n}"
            )
        self.ambient = ambient
        self.B = vectors if orthonormal else orthonormalize(vectors)

    @classmethod
    def zero(cls, ambient: InnerProductSpace) -> "Subspace":
        return cls(ambient, QMatrix.empty(ambient.n), orthonormal=True)

    @classmethod
    def full(cls, ambient: InnerProductSpace) -> "Subspace":
        return cls(ambient, QMatrix.identity(ambient.n), orthonormal=True)

    @property
    def dim(self) -> int:
        return self.B.cols

    def contains(self, v: QMatrix) -> bool:
        """Whether every column of ``v`` lies in the span, to rank tolerance."""
        if self.dim == 0:
            return v.max_abs() <= RANK_RTOL * max(v.rows, 1)
        resid = v - self.B @ (self.B.H @ v)
        return resid.norm() <= RANK_RTOL * self.ambient.n * max(v.norm(), 1e-300)

    def __contains__(self, v):
        return self.contains(v)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient_dim={self.ambient.n})"


def _gram_rank(G: QMatrix, S: InnerProductSpace) -> int:
    if G.rows == 0 or G.cols == 0 or S.gram_norm == 0.0:
        return 0
    return rank(G, scale=S.gram_norm)


def _gram_threshold(k: int, S: InnerProductSpace) -> float:
    return RANK_RTOL * max(k, 1) * S.gram_norm


def _span_rank(B: QMatrix) -> int:
    if B.cols == 0:
        return 0
    return rank(B, scale=1.0)


def contained_in(L: Subspace, K: Subspace) -> bool:
    """``span(L) <= span(K)`` by a rank test."""
    if L.dim == 0:
        return True
    return _span_rank(QMatrix.hstack([K.B, L.B])) == K.dim


def same_span(L: Subspace, K: Subspace) -> bool:
    return L.dim == K.dim and contained_in(L, K) and contained_in(K, L)


def restricted_gram(L: Subspace) -> QMatrix:
    """``G_L = B^* M B``: the form on ``L`` in the coordinates of its basis."""
    if L.dim == 0:
        return QMatrix._wrap(np.zeros((0, 0, 4)))
    return (L.B.H @ L.ambient.M @ L.B).hermitian_part()


def orthogonal_companion(L: Subspace) -> Subspace:
    """``L^[perp] = {v : [v, w] = 0 for all w in L}``, the kernel of ``B^* M``."""
    S = L.ambient
    if L.dim == 0 or S.gram_norm == 0.0:
        return Subspace.full(S)
    K = kernel(L.B.H @ S.M, scale=S.gram_norm)
    return Subspace(S, K, orthonormal=True)


@dataclass(frozen=True)
class OrthoCertificate:
    """Outcome of the ortho-complementation test.

    ``span_rank`` is the rank of ``[B | K]`` for ``K`` a basis of the
    companion; ``gram_nonsingular`` is reported for nondegenerate ambients,
    where it is an equivalent test.
    """

    ortho_complemented: bool
    span_rank: int
    n: int
    companion_dim: int
    gram_nonsingular: bool | None

    def __bool__(self):
        return self.ortho_complemented


def is_ortho_complemented(L: Subspace) -> OrthoCertificate:
    """Whether ``L`` and ``L^[perp]`` together span the ambient space."""
    S = L.ambient
    K = orthogonal_companion(L)
    stacked = QMatrix.hstack([L.B, K.B]) if L.dim + K.dim else QMatrix.empty(S.n)
    r = _span_rank(stacked)
    gram_ok = None
    if not S.is_degenerate():
        gram_ok = _gram_rank(restricted_gram(L), S) == L.dim
    return OrthoCertificate(
        ortho_complemented=r == S.n,
        span_rank=r,
        n=S.n,
        companion_dim=K.dim,
        gram_nonsingular=gram_ok,
    )


def isotropic_part_of(L: Subspace) -> Subspace:
    """``L^0 = L cap L^[perp]``: members of ``L`` orthogonal to all of ``L``."""
    S = L.ambient
    if L.dim == 0:
        return Subspace.zero(S)
    G = restricted_gram(L)
    if S.gram_norm == 0.0:
        return L
    Z = kernel(G, scale=S.gram_norm)
    if Z.cols == 0:
        return Subspace.zero(S)
    return Subspace(S, L.B @ Z, orthonormal=True)


def quotient_space(S: InnerProductSpace) -> tuple[InnerProductSpace | None, QMatrix]:
    """Realize ``V / V^0`` as the Euclidean complement ``Q`` of ``ker M``.

    Returns the nondegenerate space with Gram ``Q^* M Q`` (``None`` when the
    quotient is trivial) and ``Q``, whose adjoint maps a vector to its class.
    """
    V0 = isotropic_part(S)
    if V0.cols == 0:
        return S, QMatrix.identity(S.n)
    if V0.cols == S.n:
        return None, QMatrix.empty(S.n)
    Q = kernel(V0.H, scale=1.0)
    return InnerProductSpace((Q.H @ S.M @ Q).hermitian_part()), Q


@dataclass(frozen=True)
class KansasResult:
    """The two conditions characterizing ortho-complemented subspaces.

    ``condition_a``: the isotropic part of ``L`` lies in the isotropic part of
    the ambient space. ``condition_b``: the image of ``L`` in ``V / V^0`` is
    ortho-complemented there.
    """

    condition_a: bool
    condition_b: bool

    @property
    def holds(self) -> bool:
        return self.condition_a and self.condition_b

    def __iter__(self):
        return iter((self.condition_a, self.condition_b))


def kansas_check(L: Subspace) -> KansasResult:
    S = L.ambient
    L0 = isotropic_part_of(L)
    V0 = isotropic_part(S)
    if L0.dim == 0:
        cond_a = True
    elif V0.cols == 0:
        cond_a = False
    else:
        cond_a = _span_rank(QMatrix.hstack([V0, L0.B])) == V0.cols

    S1, Q = quotient_space(S)
    if S1 is None:
        cond_b = True
    else:
        image = column_space(Q.H @ L.B, scale=1.0) if L.dim else QMatrix.empty(S1.n)
        cond_b = is_ortho_complemented(Subspace(S1, image, orthonormal=True)).ortho_complemented
    return KansasResult(cond_a, cond_b)


class SubspaceTag(str, Enum):
    STRICTLY_POSITIVE = "strictly-positive"
    POSITIVE = "positive"
    NEUTRAL = "neutral"
    NEGATIVE = "negative"
    STRICTLY_NEGATIVE = "strictly-negative"
    INDEFINITE = "indefinite"

    @property
    def strict(self) -> bool:
        return self in (SubspaceTag.STRICTLY_POSITIVE, SubspaceTag.STRICTLY_NEGATIVE)


@dataclass(frozen=True)
class SubspaceReport:
    tag: SubspaceTag
    degenerate: bool
    uniform_constant: float | None
    gram_eigenvalues: np.ndarray


def classify_subspace(L: Subspace) -> SubspaceReport:
    """Definiteness class of ``L`` and, when uniformly definite, the best constant ``c``.

    ``c`` is the smallest generalized eigenvalue of ``(+-G_L, B^* |M| B)`` so
    that ``+-[v, v] >= c ||v||_J^2`` on ``L``. It is only computed for
    strictly definite ``L`` in a nondegenerate ambient space.
    """
    S = L.ambient
    k = L.dim
    if k == 0:
        return SubspaceReport(SubspaceTag.NEUTRAL, False, None, np.zeros(0))
    G = restricted_gram(L)
    lam = hermitian_eig(G).lambdas
    thr = _gram_threshold(k, S)
    pos = int(np.sum(lam > thr))
    neg = int(np.sum(lam < -thr))
    zero = k - pos - neg
    if pos and neg:
        tag = SubspaceTag.INDEFINITE
    elif pos:
        tag = SubspaceTag.POSITIVE if zero else SubspaceTag.STRICTLY_POSITIVE
    elif neg:
        tag = SubspaceTag.NEGATIVE if zero else SubspaceTag.STRICTLY_NEGATIVE
    else:
        tag = SubspaceTag.NEUTRAL

    c = None
    if tag.strict and not S.is_degenerate():
        sign = 1.0 if tag is SubspaceTag.STRICTLY_POSITIVE else -1.0
        GJ = (L.B.H @ S.abs_gram @ L.B).hermitian_part()
        mu = generalized_eigvals(G * sign, GJ)
        if mu[-1] > 0.0:
            c = float(mu[-1])
    return SubspaceReport(tag, zero > 0, c, lam)


def project(L: Subspace, v: QMatrix, rtol: float = 1e-9) -> QMatrix | None:
    """M-orthogonal projection of ``v`` onto ``L``, or ``None`` if none exists.

    Solves ``G_L x = B^* M v`` in the least-squares sense and accepts the
    solution when the residual is at most ``rtol (||G_L|| ||x|| + ||rhs||)``.
    The returned ``w = B x`` satisfies ``[v - w, u] = 0`` for ``u`` in ``L``.
    """
    S = L.ambient
    S.check_vector(v)
    if L.dim == 0:
        return QMatrix.zeros(S.n, v.cols)
    G = restricted_gram(L)
    rhs = L.B.H @ S.M @ v
    e = hermitian_eig(G)
    thr = _gram_threshold(L.dim, S)
    inv_vals = [1.0 / lam if abs(lam) > thr else 0.0 for lam in e.lambdas]
    x = e.V.scale_columns(inv_vals) @ (e.V.H @ rhs)
    resid = (G @ x - rhs).norm()
    g_norm = float(np.abs(e.lambdas).max())
    if resid > rtol * (g_norm * x.norm() + rhs.norm()):
        return None
    return L.B @ x
