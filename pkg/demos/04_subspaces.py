# %% [markdown]
# # Subspaces: orthogonal companions and ortho-complementation
#
# A subspace L is ortho-complemented when L and its orthogonal companion
# L^[perp] together span the whole space. Three independent tests agree:
# a span-rank count, a two-condition criterion through the quotient by the
# isotropic part, and (for nondegenerate spaces) invertibility of the
# restricted Gram matrix.

# %%
from qkrein import (
    InnerProductSpace,
    QMatrix,
    Subspace,
    classify_subspace,
    is_ortho_complemented,
    kansas_check,
    orthogonal_companion,
    project,
)

S = InnerProductSpace.diag([1.0, -1.0])
neutral = Subspace(S, QMatrix.column([1, 1]))
print("companion of the neutral line:", orthogonal_companion(neutral).B.to_nested())
print("neutral line ortho-complemented?", bool(is_ortho_complemented(neutral)))
print("quotient criterion:", kansas_check(neutral))

# %% [markdown]
# A neutral subspace can still be ortho-complemented, if it sits inside the
# isotropic part of the space.

# %%
S0 = InnerProductSpace.diag([1.0, 0.0])
L = Subspace(S0, QMatrix.column([0, 1]))
print("span(e2) in diag(1, 0):", is_ortho_complemented(L), kansas_check(L))

# %% [markdown]
# Uniformly definite subspaces carry a constant c with [v,v] >= c ||v||_J^2.

# %%
for values, vec in (([1.0, -1.0], [1, 0]), ([2.0, -0.5], [0, 1]), ([3.0, 1.0, -2.0], [1, 0, 1])):
    rep = classify_subspace(Subspace(InnerProductSpace.diag(values), QMatrix.column(vec)))
    print(f"diag{tuple(values)}, span{tuple(vec)}: {rep.tag.value}, c = {rep.uniform_constant}")

# %% [markdown]
# Projections exist exactly when the defining linear system is consistent.

# %%
print("project (1,1) on span(e1):", project(Subspace(S, QMatrix.column([1, 0])), QMatrix.column([1, 1])).to_nested())
print("project e1 on the neutral line:", project(neutral, QMatrix.column([1, 0])))
