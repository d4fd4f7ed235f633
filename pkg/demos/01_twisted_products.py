# %% [markdown]
# # Twisted matrix products
#
# A factor system attaches a scalar to every index triple. Here we build a
# couple of them over Z/8 and watch how the product of unit matrices changes.

# %%
import numpy as np

from fmrings import BaseRing, FormalMatrixRing, binary_system, validate
from fmrings.factors import principal_matrix
from fmrings.matrices import associativity_probe, mat_mul

R = BaseRing.mod(8)

# %%
trivial = validate(R, np.ones((3, 3, 3), dtype=int))
twisted = binary_system(R, (1, 1, 2), 2)
print(principal_matrix(twisted))

# %% [markdown]
# Indices 1 and 2 share a class, index 3 sits alone. Passing through a
# different class costs a factor of 2.

# %%
K0, K = FormalMatrixRing.of(trivial), FormalMatrixRing.of(twisted)
print(mat_mul(K0, K0.unit(1, 3), K0.unit(3, 1)))
print(mat_mul(K, K.unit(1, 3), K.unit(3, 1)))
print(mat_mul(K, K.unit(1, 2), K.unit(2, 1)))

# %%
# Associativity on random triples, reproducible by seed
print(associativity_probe(K, 1000, seed=0))

# %% [markdown]
# Break one entry and the probe points straight at the offending unit triple.

# %%
bad = twisted.table.copy()
bad[0, 2, 1] = 1
print(associativity_probe(FormalMatrixRing.from_raw_table(R, bad), 1000, seed=0))
