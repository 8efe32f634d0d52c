"""Quadratic seminorms and norms on H^n, polar norms and the self-polar iteration.

Every (semi)norm here is represented by a Hermitian positive (semi)definite
matrix ``H`` through ``p(v) = sqrt(v^* H v)``. The polar of the norm of ``H``
with respect to the form ``[v, w] = w^* M v`` is

    ||v||' = sup_{||w|| <= 1} |[v, w]| = sqrt(v^* M H^{-1} M v),

so polars, the averaging iteration towards a self-polar norm, and the Gram
operator all stay inside this class.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ContractViolation, NumericFailure, SingularMatrixError
from .inner import InnerProductSpace, inner
from .linalg import hermitian_eig, solve
from .qmatrix import QMatrix

PSD_RTOL = 1e-12


def _quad(H: QMatrix, v: QMatrix) -> float:
    return (v.H @ H @ v)[0, 0].real


def _check_psd(H: QMatrix, name: str = "matrix") -> np.ndarray:
    if not H.is_square() or not H.is_hermitian():
        raise ContractViolation(f"{name} must be square and Hermitian")
    lam = hermitian_eig(H).lambdas
    scale = float(np.abs(lam).max()) if lam.size else 0.0
    if lam.size and lam.min() < -PSD_RTOL * scale:
        raise ContractViolation(f"{name} is not positive semidefinite (min eigenvalue {lam.min():.3g})")
    return lam


class SemiNormFamily:
    """Family of seminorms ``p_g(v) = sqrt(v^* H_g v)`` for PSD matrices ``H_g``."""

    def __init__(self, mats):
        mats = list(mats)
        if not mats:
            raise ContractViolation("a seminorm family needs at least one member")
        n = mats[0].rows
        for idx, H in enumerate(mats):
            if H.shape != (n, n):
                raise ContractViolation("all family members must share one dimension")
            _check_psd(H, f"family member {idx}")
        self.mats = [H.hermitian_part() for H in mats]

    @property
    def n(self) -> int:
        return self.mats[0].rows

    def __len__(self):
        return len(self.mats)


def seminorm_eval(F: SemiNormFamily, idx: int, v: QMatrix) -> float:
    if not 0 <= idx < len(F):
        raise ContractViolation(f"seminorm index {idx} out of range")
    return math.sqrt(max(_quad(F.mats[idx], v), 0.0))


def _max_seminorm(F, v):
    return max(seminorm_eval(F, g, v) for g in range(len(F)))


def minkowski_bisection(F: SemiNormFamily, v: QMatrix, max_iter: int = 200) -> float:
    """``inf {a > 0 : p_g(v / a) < 1 for every g}`` found by bisection.

    Only the membership predicate of the open set ``U = {u : max_g p_g(u) < 1}``
    is evaluated, always at the scaled vector ``v / a``.
    """

    def inside(a):
        return _max_seminorm(F, v / a) < 1.0

    hi = 1.0
    while not inside(hi):
        hi *= 2.0
        if not math.isfinite(hi):
            raise NumericFailure("Minkowski functional is not finite: U is not absorbing")
    while inside(hi / 2.0):
        hi /= 2.0
        if hi < 1e-300:
            return 0.0
    lo = hi / 2.0
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if inside(mid):
            hi = mid
        else:
            lo = mid
    return hi


def minkowski(F: SemiNormFamily, v: QMatrix, rtol: float = 1e-10) -> float:
    """Minkowski functional of ``U = {u : max_g p_g(u) < 1}`` at ``v``.

    The closed form ``max_g p_g(v)`` is cross-checked against
    :func:`minkowski_bisection`; a disagreement above ``rtol`` raises
    :class:`NumericFailure`.
    """
    closed = _max_seminorm(F, v)
    bisected = minkowski_bisection(F, v)
    if abs(closed - bisected) > rtol * max(1.0, closed):
        raise NumericFailure(
            f"Minkowski closed form {closed!r} disagrees with bisection {bisected!r}"
        )
    return closed


@dataclass(frozen=True)
class NormQ:
    """The quadratic norm ``||v|| = sqrt(v^* H v)``.

    ``definite`` is False for the degenerate polar of a singular form, which is
    only a seminorm.
    """

    H: QMatrix
    definite: bool = True

    def __post_init__(self):
        lam = _check_psd(self.H, "norm matrix")
        if self.definite and lam.min() <= 0.0:
            raise ContractViolation("norm matrix must be positive definite")

    @classmethod
    def euclidean(cls, n: int, scale: float = 1.0) -> "NormQ":
        return cls(QMatrix.identity(n) * scale)

    def __call__(self, v: QMatrix) -> float:
        return math.sqrt(max(_quad(self.H, v), 0.0))

    value = __call__


def weak_seminorm(S: InnerProductSpace, w: QMatrix, v: QMatrix) -> float:
    """``p_w(v) = |[v, w]|``."""
    return abs(inner(S, v, w))


def polar(S: InnerProductSpace, N: NormQ) -> NormQ:
    """Polar norm ``||v||' = sup_{||w|| <= 1} |[v, w]|``, with matrix ``M H^{-1} M``.

    Raises :class:`SingularMatrixError` if ``H`` is singular. For a degenerate
    form the result is returned with ``definite=False``.
    """
    Hp = (S.M @ solve(N.H, S.M)).hermitian_part()
    return NormQ(Hp, definite=not S.is_degenerate())


@dataclass(frozen=True)
class SelfPolarResult:
    Hinf: NormQ
    iterations: int
    history: list = field(default_factory=list)
    iterates: list = field(default_factory=list, repr=False)


SELF_POLAR_TOL = 1e-12
SELF_POLAR_MAX_ITER = 200


def self_polar(
    S: InnerProductSpace,
    tol: float = SELF_POLAR_TOL,
    max_iter: int = SELF_POLAR_MAX_ITER,
) -> SelfPolarResult:
    """Average a norm with its polar until it is self-polar.

    Starts from ``H_0 = ||M||_2 I``, the smallest multiple of the identity
    with ``|[u, v]| <= ||u|| ||v||``, and iterates

        H_{k+1} = (H_k + M H_k^{-1} M) / 2

    until ``||H_{k+1} - H_k||_F <= tol ||H_k||_F``. ``history`` holds the
    decrements and ``iterates`` every ``H_k`` including the first and last.

    Raises
    ------
    SingularMatrixError
        If the form is degenerate.
    NumericFailure
        If ``max_iter`` updates do not reach the tolerance; the history and
        the last iterate are attached.
    """
    if S.is_degenerate():
        raise SingularMatrixError("self-polar iteration needs a nondegenerate Gram matrix")
    M = S.M
    H = QMatrix.identity(S.n) * S.gram_norm
    iterates = [H]
    history = []
    for k in range(1, max_iter + 1):
        H_next = (0.5 * (H + M @ solve(H, M))).hermitian_part()
        dec = (H_next - H).norm()
        history.append(dec)
        iterates.append(H_next)
        if dec <= tol * H.norm():
            return SelfPolarResult(NormQ(H_next), k, history, iterates)
        H = H_next
    raise NumericFailure(
        f"self-polar iteration did not converge in {max_iter} steps",
        history=history,
        partial=H,
    )


def gram_operator(S: InnerProductSpace, N: NormQ) -> QMatrix:
    """``G = H^{-1} M``, so that ``[v, w] = <v, G w>_H``."""
    return solve(N.H, S.M)


def mackey_seminorm(S: InnerProductSpace, N: NormQ, v: QMatrix) -> float:
    """``||G v||`` measured in the norm ``N``."""
    return N(gram_operator(S, N) @ v)
