# %% [markdown]
# # Isomorphism verdicts, checked by brute force
#
# The decision procedure answers from descriptors plus a permutation
# witness. For rings small enough to list, the exhaustive oracle confirms it.

# %%
from fmrings import BaseRing, FormalMatrixRing, binary_system, materialize
from fmrings.canonical import decide_isomorphism
from fmrings.finite import oracle_isomorphic, verify_isomorphism

R = BaseRing.mod(4)


def table(labels, s=2, ring=R):
    return materialize(FormalMatrixRing.of(binary_system(ring, labels, s)))


# %%
v = decide_isomorphism(R, 2, binary_system(R, (1, 2), 2), binary_system(R, (2, 1), 2))
print(v.outcome, v.witness)
res = oracle_isomorphic(table((1, 2)), table((2, 1)))
print(res.isomorphic, res.nodes, verify_isomorphism(table((1, 2)), table((2, 1)), res.witness))

# %%
v = decide_isomorphism(R, 2, binary_system(R, (1, 1), 2), binary_system(R, (1, 2), 2))
print(v.outcome, [d.block_sizes for d in v.descriptors])
print(oracle_isomorphic(table((1, 1)), table((1, 2)), use_invariants=False))

# %% [markdown]
# Over Z/2 with s = 0 the factor is idempotent and the procedure declines to
# answer. The oracle still can.

# %%
Z2 = BaseRing.mod(2)
v = decide_isomorphism(Z2, 0, binary_system(Z2, (1, 2, 2), 0), binary_system(Z2, (2, 2, 1), 0))
print(v.outcome)
for h in v.hypotheses:
    print(" ", h.name, h.passed)
print(oracle_isomorphic(table((1, 2, 2), 0, Z2), table((2, 2, 1), 0, Z2)).isomorphic)
