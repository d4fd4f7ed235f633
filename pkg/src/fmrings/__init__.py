"""Formal matrix rings M(n, R, Sigma) over Z and Z/m: factor systems, twisted
multiplication, block canonical forms, (s1)-ring isomorphism decisions and a
brute-force finite-ring oracle."""

from .canonical import (
    CanonicalDescriptor,
    EquivalencePartition,
    IsoVerdict,
    Outcome,
    canonicalize,
    decide_isomorphism,
    quotient_descriptor,
    same_canonical_form,
    similarity_partition,
    trichotomy_check,
)
from .factors import (
    FactorSystem,
    Permutation,
    binary_system,
    binary_uniqueness_check,
    coboundary_system,
    derived_relations_report,
    factor_matrix_k,
    ordered_partitions,
    permute,
    principal_matrix,
    validate,
)
from .finite import (
    FiniteRingTable,
    IdealSet,
    central_idempotent_decomposition,
    materialize,
    oracle_isomorphic,
    prime_radical,
    quotient,
)
from .matrices import (
    FormalMatrixRing,
    associativity_probe,
    mat_add,
    mat_mul,
    mat_neg,
    scalar_embed,
    transport,
)
from .ring import BaseRing, RingElement, indecomposable_mod_radical, is_nilpotent, is_unit, nilradical

__version__ = "0.1.0"
