# %% [markdown]
# # Seminorms, polar norms and the self-polar iteration
#
# Norms are quadratic forms ||v||^2 = v* H v. The polar norm of H with
# respect to the form M has matrix M H^{-1} M. Averaging a norm with its
# polar converges to the self-polar norm, which is |M|.

# %%
import numpy as np

from qkrein import (
    InnerProductSpace,
    NormQ,
    QMatrix,
    SemiNormFamily,
    mackey_seminorm,
    minkowski,
    polar,
    self_polar,
    weak_seminorm,
)
from qkrein.quaternion import I, J
from qkrein.sampling import random_invertible_hermitian

F = SemiNormFamily([QMatrix.diag([1.0, 0.0]), QMatrix.diag([0.0, 4.0])])
print("Minkowski functional of {|v1|, 2|v2|} at (1,1):", minkowski(F, QMatrix.column([1, 1])))

S = InnerProductSpace.diag([1.0, -1.0])
e2 = QMatrix.column([0, 1])
print("weak seminorm p_e2(e2 (i+j)) =", weak_seminorm(S, e2, e2 * (I + J)))

# %%
S = InnerProductSpace.diag([2.0, -0.5])
print("polar of 2 I w.r.t. diag(2, -0.5):", np.diag(polar(S, NormQ.euclidean(2, 2.0)).H.data[..., 0]))
r = self_polar(S)
print(f"self-polar limit after {r.iterations} steps:", np.diag(r.Hinf.H.data[..., 0]))
print("decrements:", ["%.1e" % d for d in r.history])

# %%
rng = np.random.default_rng(7)
M = random_invertible_hermitian(rng, 4)
S = InnerProductSpace(M)
r = self_polar(S)
print(f"random 4x4: {r.iterations} iterations, ||H_inf - |M||| = {(r.Hinf.H - S.abs_gram).norm():.2e}")
print(f"            ||H_inf - polar(H_inf)|| = {(r.Hinf.H - polar(S, r.Hinf).H).norm():.2e}")

# %%
S = InnerProductSpace.diag([3.0, -1.0])
print("Mackey seminorm of (1,1) for diag(3,-1):", mackey_seminorm(S, NormQ.euclidean(2), QMatrix.column([1, 1])))
