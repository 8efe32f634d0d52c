# %% [markdown]
# # Krein spaces and the Stein-equation scaffold
#
# For a stable A, the Stein equation P - A* P A = C* C - N* N has the series
# solution sum_k A*^k (C*C - N*N) A^k. When P is positive definite, the space
# K = H^x + H^y + H^u with Gram diag(P, I, -I) is a Krein space and the range
# K0 of [A; C; N] is uniformly positive, hence ortho-complemented, and its
# companion is again a Krein space.

# %%
import math

import numpy as np

from qkrein import (
    InnerProductSpace,
    QMatrix,
    ScaffoldRefused,
    SteinProblem,
    build_scaffold,
    fundamental_decomposition,
    hyperbolic_rotation,
    natural_norm_equivalence,
    stein_solve_direct,
    stein_solve_series,
    verify_krein,
    verify_sofsof,
)
from qkrein.quaternion import I, J
from qkrein.sampling import random_stein_problem


def q(x):
    return QMatrix.from_entries([[x]])


print("verify_krein(diag(1,-1)):", verify_krein(InnerProductSpace.diag([1.0, -1.0])).is_krein)
print("verify_krein(diag(1,1e-18)):", verify_krein(InnerProductSpace.diag([1.0, 1e-18])).is_krein)

# %% [markdown]
# Different fundamental decompositions give equivalent natural norms; a
# hyperbolic rotation by t gives the constants exp(-t) and exp(t).

# %%
S = InnerProductSpace.diag([1.0, -1.0])
lo, hi = natural_norm_equivalence(S, fundamental_decomposition(S), hyperbolic_rotation(S, 0.5))
print(f"equivalence constants: ({lo:.6f}, {hi:.6f}) vs ({math.exp(-0.5):.6f}, {math.exp(0.5):.6f})")

# %%
print("a = 0.5:", stein_solve_series(SteinProblem(q(0.5), q(1), q(0)))[0, 0])
print("a = (i+j)/2:", stein_solve_series(SteinProblem(q((I + J) * 0.5), q(1), q(0)))[0, 0])

sc = build_scaffold(SteinProblem(q(0.5), q(1), q(0)))
print("J~ diagonal:", [sc.Jtilde[i, i].w for i in range(3)])
print("sofsof report passed:", verify_sofsof(sc).passed)

# %%
rng = np.random.default_rng(5)
prob, P = random_stein_problem(rng, 3, 2, 1)
rep = verify_sofsof(build_scaffold(prob, P))
print(f"random 3x3 problem: identity residual {rep.stein_identity_residual:.1e}, "
      f"c = {rep.classification.uniform_constant:.4f}, ortho-complemented {rep.ortho.ortho_complemented}, "
      f"companion signature {rep.companion_krein.signature}")
print(f"series vs direct: {(P - stein_solve_direct(prob)).norm():.1e}")

# %% [markdown]
# With a dominant N the solution is indefinite and no scaffold is built.

# %%
try:
    build_scaffold(SteinProblem(q(0.5), q(1), q(2)))
except ScaffoldRefused as exc:
    print("refused:", exc, "eigenvalues", exc.eigenvalues)
