# %% [markdown]
# # The spectral theorem for Hermitian quaternionic matrices
#
# Eigenvalues come from a cyclic Jacobi method on the complex image, where
# each quaternionic eigenvalue appears twice. Eigenvectors are reassembled
# as quaternionic vectors with real eigenvalues: A V = V diag(lambda).

# %%
import numpy as np

from qkrein import QMatrix, embed, hermitian_eig
from qkrein.quaternion import I
from qkrein.sampling import random_hermitian

A = QMatrix.from_entries([[0, I], [-I, 0]])
e = hermitian_eig(A)
print("eigenvalues of [[0, i], [-i, 0]]:", e.lambdas)
print("complex image spectrum:", np.round(np.linalg.eigvalsh(embed(A)), 12))

# %%
rng = np.random.default_rng(42)
A = random_hermitian(rng, 6)
e = hermitian_eig(A)
print("lambdas:", np.round(e.lambdas, 6))
print(f"||A - V diag(l) V*|| / ||A|| = {(A - e.reconstruct()).norm() / A.norm():.2e}")
print(f"||V* V - I|| = {(e.V.H @ e.V - QMatrix.identity(6)).norm():.2e}")
pairs = np.sort(np.linalg.eigvalsh(embed(A)))
print("paired complex spectrum matches:", np.allclose(pairs, np.sort(np.repeat(e.lambdas, 2))))

# %% [markdown]
# Functions of a Hermitian matrix act on its eigenvalues; |A| is the one
# that matters for indefinite geometry.

# %%
absA = e.function(abs)
print("eigenvalues of |A|:", np.round(hermitian_eig(absA).lambdas, 6))
