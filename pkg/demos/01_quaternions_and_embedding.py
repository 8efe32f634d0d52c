# %% [markdown]
# # Quaternions, quaternionic matrices and the complex adjoint
#
# Scalars act on the right of vectors, matrices on the left. Every
# quaternionic matrix A = A1 + A2 j has a complex image of twice the size;
# the map is a *-homomorphism, so complex linear algebra can answer
# quaternionic questions.

# %%
import numpy as np

from qkrein import QMatrix, Quaternion, complex_pair, embed, kernel, rank, solve
from qkrein.quaternion import I, J, K

print("i j =", I * J, "   j i =", J * I)
print("(1+i)(1+j) =", (1 + I) * (1 + J))
print("inverse of 1+i+j+k:", Quaternion(1, 1, 1, 1).inv())
print("complex pair of 2+3i+4j+5k:", complex_pair(Quaternion(2, 3, 4, 5)))

# %% [markdown]
# The embedding respects products: chi(AB) = chi(A) chi(B).

# %%
rng = np.random.default_rng(0)
A = QMatrix(rng.standard_normal((3, 4, 4)))
B = QMatrix(rng.standard_normal((4, 2, 4)))
err = np.linalg.norm(embed(A @ B) - embed(A) @ embed(B))
print(f"||chi(AB) - chi(A)chi(B)|| = {err:.2e}")
print("embed([j]) =\n", embed(QMatrix.from_entries([[J]])).real)

# %% [markdown]
# Solving j x = k has the unique solution x = -i (not +i: order matters).

# %%
x = solve(QMatrix.from_entries([[J]]), QMatrix.from_entries([[K]]))
print("solution of j x = k:", x[0, 0])

# %% [markdown]
# Rank and kernel are quaternionic: the row [1, j] has a one-dimensional
# right kernel spanned by (-j, 1)/sqrt(2), and the complex image has twice
# the nullity.

# %%
row = QMatrix.from_entries([[1, J]])
Kr = kernel(row)
print("kernel basis:", [Kr[i, 0] for i in range(2)])
print("rank [[1],[j]] =", rank(QMatrix.column([1, J])))
