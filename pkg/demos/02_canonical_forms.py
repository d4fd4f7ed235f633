# %% [markdown]
# # Canonical forms of binary systems
#
# Similar indices (factor 1 between them) form blocks. Sorting the blocks by
# size gives a descriptor that ignores how the indices were labelled.

# %%
from fmrings import BaseRing, binary_system
from fmrings.canonical import canonicalize, similarity_partition
from fmrings.factors import Permutation, classes_to_labels, permute

R = BaseRing.mod(9)
sys = binary_system(R, classes_to_labels(5, [[1, 4], [2, 3, 5]]), 3)
print(similarity_partition(sys).classes)

# %%
form = canonicalize(sys)
print(form.tau, form.descriptor)
print(form.canonical_S)

# %%
# relabelling the indices leaves the descriptor alone
for tau in [Permutation((5, 4, 3, 2, 1)), Permutation((2, 3, 1, 5, 4))]:
    print(tau, canonicalize(permute(sys, tau)).descriptor)
