# %% [markdown]
# # Radical, quotient, splitting
#
# Modulo its radical a binary ring falls apart into full matrix rings over
# the residue field, one per block of the canonical form.

# %%
from fmrings import BaseRing, FormalMatrixRing, binary_system, materialize
from fmrings.canonical import canonicalize
from fmrings.finite import (
    central_idempotent_decomposition,
    ideal_nilpotency_index,
    matrix_orders,
    prime_radical,
    quotient,
)

R = BaseRing.mod(8)

# %%
for labels in [(1, 1), (1, 2)]:
    sys = binary_system(R, labels, 2)
    T = materialize(FormalMatrixRing.of(sys))
    P = prime_radical(T)
    Q = quotient(T, P)
    parts = central_idempotent_decomposition(Q)
    print(labels, T.size, P.size, ideal_nilpotency_index(P), Q.size,
          matrix_orders(parts, 2), canonicalize(sys, 2).descriptor.block_sizes)
