"""Krein-space checks, the quaternionic Stein equation and the interpolation scaffold.

For ``A`` (x by x), ``C`` (y by x) and ``N`` (u by x) the Stein equation

    P - A^* P A = C^* C - N^* N

has, when the spectral radius of ``A`` is below one, the solution
``P = sum_k A^{*k} (C^* C - N^* N) A^k``. If ``P`` is positive definite, the
space ``K = H^x + H^y + H^u`` with Gram ``diag(P, I_y, -I_u)`` is a Krein
space in which the range of the stacked operator ``[A; C; N]`` is uniformly
positive and therefore ortho-complemented.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    ContractViolation,
    DivergenceError,
    NumericFailure,
    ScaffoldRefused,
    SingularMatrixError,
)
from .inner import (
    FundamentalDecomposition,
    InnerProductSpace,
    decomposition_from_bases,
    fundamental_decomposition,
    gram,
)
from .linalg import generalized_eigvals, hermitian_eig
from .norms import NormQ
from .qmatrix import QMatrix, _qmul_arrays, embed
from .subspaces import (
    OrthoCertificate,
    Subspace,
    SubspaceReport,
    SubspaceTag,
    classify_subspace,
    is_ortho_complemented,
    orthogonal_companion,
    restricted_gram,
)

KREIN_RTOL = 1e-9


# Krein spaces -----------------------------------------------------------------


@dataclass(frozen=True)
class KreinReport:
    is_krein: bool
    signature: tuple[int, int, int]
    pontryagin_index: int
    gram_min_eigen_magnitude: float
    natural_norm: NormQ


def verify_krein(S: InnerProductSpace) -> KreinReport:
    """Check that the Gram matrix is boundedly invertible.

    The space is Krein when no eigenvalue of ``M`` lies within
    ``1e-9 ||M||`` of zero; the smallest eigenvalue magnitude is reported as
    the margin and ``|M|`` as the natural norm.
    """
    D = fundamental_decomposition(S)
    lam = np.abs(D.lambdas)
    margin = float(lam.min()) if lam.size else 0.0
    is_krein = S.gram_norm > 0.0 and margin > KREIN_RTOL * S.gram_norm
    return KreinReport(
        is_krein=bool(is_krein),
        signature=D.signature,
        pontryagin_index=D.signature[1],
        gram_min_eigen_magnitude=margin,
        natural_norm=NormQ(S.abs_gram, definite=bool(is_krein)),
    )


def hyperbolic_rotation(
    S: InnerProductSpace, t: float, plus_index: int = 0, minus_index: int = 0
) -> FundamentalDecomposition:
    """A non-spectral fundamental decomposition obtained by a hyperbolic rotation.

    With ``f+`` and ``f-`` the chosen spectral eigenvectors scaled to
    ``[f+, f+] = 1`` and ``[f-, f-] = -1``, they are replaced by
    ``f+ cosh t + f- sinh t`` and ``f+ sinh t + f- cosh t``.
    """
    D = fundamental_decomposition(S)
    if D.degenerate:
        raise ContractViolation("hyperbolic_rotation needs a nondegenerate space")
    if D.Vplus.cols == 0 or D.Vminus.cols == 0:
        raise ContractViolation("hyperbolic_rotation needs both a positive and a negative direction")
    lp = D.lambdas[D.lambdas > 0][plus_index]
    lm = D.lambdas[D.lambdas < 0][minus_index]
    fp = D.Vplus.col(plus_index) / math.sqrt(lp)
    fm = D.Vminus.col(minus_index) / math.sqrt(-lm)
    ch, sh = math.cosh(t), math.sinh(t)
    new_p = fp * ch + fm * sh
    new_m = fp * sh + fm * ch
    Vp = D.Vplus.data.copy()
    Vm = D.Vminus.data.copy()
    Vp[:, plus_index] = new_p.data[:, 0]
    Vm[:, minus_index] = new_m.data[:, 0]
    return decomposition_from_bases(S, QMatrix._wrap(Vp), QMatrix._wrap(Vm))


def natural_norm_equivalence(
    S: InnerProductSpace, D1: FundamentalDecomposition, D2: FundamentalDecomposition
) -> tuple[float, float]:
    """Constants with ``c_low ||v||_{J1} <= ||v||_{J2} <= c_high ||v||_{J1}``.

    Square roots of the extreme eigenvalues of the pencil formed by the two
    J-Gram matrices ``M J2`` and ``M J1``.
    """
    if not verify_krein(S).is_krein:
        raise ContractViolation("natural_norm_equivalence needs a Krein space")
    mu = generalized_eigvals(D2.j_gram(S), D1.j_gram(S))
    return math.sqrt(max(mu[-1], 0.0)), math.sqrt(max(mu[0], 0.0))


# Stein equation -----------------------------------------------------------------


@dataclass(frozen=True)
class SteinProblem:
    """Data ``(A, C, N)`` of the Stein equation ``P - A^* P A = C^* C - N^* N``."""

    A: QMatrix
    C: QMatrix
    N: QMatrix

    def __post_init__(self):
        x = self.A.rows
        if not self.A.is_square():
            raise ContractViolation(f"A must be square, got {self.A.shape}")
        if self.C.cols != x or self.N.cols != x:
            raise ContractViolation(
                f"C and N must have {x} columns, got {self.C.shape} and {self.N.shape}"
            )

    @property
    def x(self) -> int:
        return self.A.rows

    @property
    def y(self) -> int:
        return self.C.rows

    @property
    def u(self) -> int:
        return self.N.rows

    @property
    def J_signature(self) -> QMatrix:
        """``diag(I_y, -I_u)``."""
        return QMatrix.diag([1.0] * self.y + [-1.0] * self.u)

    @property
    def Q(self) -> QMatrix:
        """Right-hand side ``C^* C - N^* N``."""
        return (self.C.H @ self.C - self.N.H @ self.N).hermitian_part()

    def stacked(self) -> QMatrix:
        """The operator ``[A; C; N]``."""
        return QMatrix.vstack([self.A, self.C, self.N])

    def residual(self, P: QMatrix) -> float:
        return (P - self.A.H @ P @ self.A - self.Q).norm()


def spectral_radius(A: QMatrix) -> float:
    """Largest modulus in the spectrum of the complex adjoint of ``A``."""
    return float(np.abs(np.linalg.eigvals(embed(A))).max())


STABILITY_MARGIN = 1e-10
STEIN_TOL = 1e-12
STEIN_MAX_TERMS = 10**6


def stein_solve_series(
    problem: SteinProblem, tol: float = STEIN_TOL, max_terms: int = STEIN_MAX_TERMS
) -> QMatrix:
    """Sum ``sum_k A^{*k} Q A^k`` until a term is at most ``tol (1 + ||partial sum||)``.

    Raises
    ------
    DivergenceError
        If the spectral radius of ``A`` is not below ``1 - 1e-10``.
    NumericFailure
        If ``max_terms`` terms do not reach the tolerance.
    """
    if tol <= 0:
        raise ContractViolation("tol must be positive")
    rho = spectral_radius(problem.A)
    if rho >= 1.0 - STABILITY_MARGIN:
        raise DivergenceError(f"spectral radius {rho:.6g} is not below 1; the series diverges")
    A, AH = problem.A, problem.A.H
    term = problem.Q
    total = term
    history = []
    for _ in range(max_terms):
        term = AH @ term @ A
        total = total + term
        size = term.norm()
        history.append(size)
        if size <= tol * (1.0 + total.norm()):
            return total.hermitian_part()
    raise NumericFailure(
        f"Stein series did not reach tolerance in {max_terms} terms",
        history=history,
        partial=total,
    )


def _stein_operator_matrix(A: QMatrix) -> np.ndarray:
    """Real matrix of ``X -> X - A^* X A`` on the ``4 x^2`` real coordinates of ``X``."""
    x = A.rows
    dim = 4 * x * x
    basis = np.eye(dim).reshape(dim, x, x, 4)
    AH = A.H.data
    cols = np.empty((dim, dim))
    for b in range(dim):
        X = basis[b]
        cols[:, b] = (X - _qmul_arrays(_qmul_arrays(AH, X), A.data)).ravel()
    return cols


def stein_solve_direct(problem: SteinProblem, cond_limit: float = 1e12) -> QMatrix:
    """Solve the Stein equation as one real linear system in the coordinates of ``P``.

    Raises :class:`SingularMatrixError` when the induced operator is singular
    (condition number above ``cond_limit``), i.e. when the spectrum of ``A``
    contains a pair ``a, b`` with ``conj(a) b = 1``.
    """
    L = _stein_operator_matrix(problem.A)
    s = np.linalg.svd(L, compute_uv=False)
    if s[-1] <= s[0] / cond_limit:
        raise SingularMatrixError("the Stein operator X -> X - A^* X A is singular")
    x = problem.x
    sol = np.linalg.solve(L, problem.Q.data.ravel())
    return QMatrix._wrap(sol.reshape(x, x, 4)).hermitian_part()


# scaffold ---------------------------------------------------------------------


@dataclass(frozen=True)
class Scaffold:
    """The Krein space ``K = H^x + H^y + H^u`` with Gram ``diag(P, I_y, -I_u)`` and ``K0``."""

    problem: SteinProblem
    P: QMatrix
    Jtilde: QMatrix
    space: InnerProductSpace
    K0: Subspace

    @property
    def K_dim(self) -> int:
        return self.space.n


def build_scaffold(problem: SteinProblem, P: QMatrix | None = None, rtol: float = KREIN_RTOL) -> Scaffold:
    """Assemble the scaffold from a positive definite Stein solution.

    ``P`` defaults to :func:`stein_solve_series`. A solution whose smallest
    eigenvalue is not above ``rtol`` times its largest magnitude is refused
    with :class:`ScaffoldRefused`, carrying the eigenvalues.
    """
    if P is None:
        P = stein_solve_series(problem)
    lam = hermitian_eig(P).lambdas
    scale = float(np.abs(lam).max())
    if lam.min() <= rtol * scale:
        raise ScaffoldRefused(
            "Stein solution is not positive definite; no scaffold", eigenvalues=lam
        )
    x, y, u = problem.x, problem.y, problem.u
    n = x + y + u
    data = np.zeros((n, n, 4))
    data[:x, :x] = P.data
    data[x + np.arange(y), x + np.arange(y), 0] = 1.0
    data[x + y + np.arange(u), x + y + np.arange(u), 0] = -1.0
    Jt = QMatrix._wrap(data)
    space = InnerProductSpace(Jt)
    return Scaffold(problem, P, Jt, space, Subspace(space, problem.stacked()))


@dataclass(frozen=True)
class SofsofReport:
    """Certificates for the four claims about ``K0`` in the scaffold.

    1. the Gram of ``[A; C; N]`` under ``diag(P, J)`` equals ``P``;
    2. ``K0`` is uniformly positive;
    3. ``K0`` is ortho-complemented;
    4. the companion of ``K0`` is a Krein space.
    """

    stein_identity_residual: float
    stein_identity_ok: bool
    classification: SubspaceReport
    uniformly_positive: bool
    ortho: OrthoCertificate
    companion_dim: int
    companion_gram: QMatrix
    companion_krein: KreinReport
    tol: float

    @property
    def passed(self) -> bool:
        return (
            self.stein_identity_ok
            and self.uniformly_positive
            and self.ortho.ortho_complemented
            and self.companion_krein.is_krein
        )


def verify_sofsof(scaffold: Scaffold, tol: float = 1e-8) -> SofsofReport:
    problem = scaffold.problem
    S = problem.stacked()
    P = scaffold.P
    identity_res = (gram(scaffold.space, S) - P).norm() / P.norm()
    report = classify_subspace(scaffold.K0)
    uniformly = (
        report.tag is SubspaceTag.STRICTLY_POSITIVE
        and report.uniform_constant is not None
        and report.uniform_constant > 0.0
    )
    ortho = is_ortho_complemented(scaffold.K0)
    comp = orthogonal_companion(scaffold.K0)
    if comp.dim:
        G = restricted_gram(comp)
        krein = verify_krein(InnerProductSpace(G))
    else:
        G = QMatrix._wrap(np.zeros((0, 0, 4)))
        krein = KreinReport(True, (0, 0, 0), 0, math.inf, None)
    return SofsofReport(
        stein_identity_residual=float(identity_res),
        stein_identity_ok=bool(identity_res <= tol),
        classification=report,
        uniformly_positive=bool(uniformly),
        ortho=ortho,
        companion_dim=comp.dim,
        companion_gram=G,
        companion_krein=krein,
        tol=tol,
    )
