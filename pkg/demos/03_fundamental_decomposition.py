# %% [markdown]
# # Indefinite inner products and the fundamental decomposition
#
# A Hermitian Gram matrix M defines [v, w] = w* M v. Its spectrum splits the
# space into a positive part, a negative part and the isotropic part (the
# kernel of M). The fundamental symmetry J is +1 on the positive part and -1
# on the negative part; [J v, v] is a positive definite inner product.

# %%
import math

import numpy as np

from qkrein import (
    InnerProductSpace,
    QMatrix,
    classify_vector,
    fundamental_decomposition,
    inner,
    isotropic_part,
    j_norm,
)
from qkrein.quaternion import J
from qkrein.sampling import random_matrix, random_signature_gram

S = InnerProductSpace.diag([1.0, -1.0])
for v in ([1, 0], [1, 1], [1, 2]):
    c = classify_vector(S, QMatrix.column(v))
    print(f"v = {v}: [v,v] = {c.value:+.0f} -> {c.tag.value}")

# %%
M = QMatrix.from_entries([[0, J], [-J, 0]])
D = fundamental_decomposition(InnerProductSpace(M))
print("signature of [[0, j], [-j, 0]]:", D.signature, "  J == M:", D.J.allclose(M, atol=1e-14))
print("isotropic part of diag(1, 0):", isotropic_part(InnerProductSpace.diag([1.0, 0.0])).to_nested())

# %% [markdown]
# Cauchy-Schwarz with respect to the J-norm: |[v, w]|^2 <= ||v||_J^2 ||w||_J^2.

# %%
rng = np.random.default_rng(3)
S = InnerProductSpace(random_signature_gram(rng, 2, 3))
D = fundamental_decomposition(S)
ratios = []
for _ in range(2000):
    v, w = random_matrix(rng, 5, 1), random_matrix(rng, 5, 1)
    ratios.append(abs(inner(S, v, w)) / (j_norm(S, D, v) * j_norm(S, D, w)))
print(f"largest |[v,w]| / (||v||_J ||w||_J) over 2000 pairs: {max(ratios):.4f} (never above 1)")
print("J-norm of (1,1) for diag(4,-9):",
      j_norm(InnerProductSpace.diag([4.0, -9.0]),
             fundamental_decomposition(InnerProductSpace.diag([4.0, -9.0])),
             QMatrix.column([1, 1])), "=", math.sqrt(13))
