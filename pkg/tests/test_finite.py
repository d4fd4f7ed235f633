import numpy as np
import pytest

from fmrings.errors import NotAnIdeal, TooLarge
from fmrings.factors import Permutation, binary_system, permute, validate
from fmrings.finite import (
    IdealSet,
    additive_span,
    central_idempotent_decomposition,
    direct_product,
    fingerprint,
    from_base_ring,
    ideal_nilpotency_index,
    materialize,
    matrix_orders,
    oracle_isomorphic,
    prime_radical,
    quotient,
    transport_map,
    verify_isomorphism,
)
from fmrings.matrices import FormalMatrixRing, mat_mul
from fmrings.ring import BaseRing

from .conftest import binary_table


def trivial_table(m, n=2):
    R = BaseRing.mod(m)
    return materialize(FormalMatrixRing.of(validate(R, np.ones((n, n, n), dtype=int))))


def nil_mask(T):
    """Nilpotent elements, by repeated squaring of every element at once."""
    z = np.arange(T.size)
    for _ in range(int(np.ceil(np.log2(T.size))) + 1):
        z = T.mul[z, z]
    return z == T.zero


def radical_oracle(T):
    # x lies in the radical exactly when the left ideal Tx is nil
    nil = nil_mask(T)
    return np.flatnonzero(nil[T.mul].all(axis=0))


def test_materialize_sizes():
    assert trivial_table(2).size == 16
    assert trivial_table(4).size == 256
    assert binary_table(4, (1, 2), 2).size == 256
    with pytest.raises(TooLarge):
        trivial_table(4, 3)


def test_materialized_product_matches_twisted_product():
    T = binary_table(4, (1, 2), 2)
    K = FormalMatrixRing.of(binary_system(BaseRing.mod(4), (1, 2), 2))
    rng = np.random.default_rng(0)
    for a, b in rng.integers(0, T.size, size=(200, 2)):
        want = mat_mul(K, T.element(a), T.element(b))
        assert np.array_equal(T.element(T.mul[a, b]), want)
    assert T.spot_check_axioms()


def test_radical_examples():
    T = trivial_table(4)
    P = prime_radical(T)
    assert P.size == 16 and P.is_ideal()
    assert all((T.element(x) % 2 == 0).all() for x in P.members)
    assert ideal_nilpotency_index(P) == 2
    assert prime_radical(binary_table(4, (1, 2), 2)).size == 64
    assert prime_radical(trivial_table(2)).size == 1


@pytest.mark.parametrize("table", [
    lambda: trivial_table(2), lambda: trivial_table(4), lambda: trivial_table(3),
    lambda: binary_table(4, (1, 2), 2), lambda: binary_table(4, (1, 1), 2),
    lambda: binary_table(2, (1, 2), 0), lambda: from_base_ring(BaseRing.mod(12)),
])
def test_radical_matches_nil_left_ideal_oracle(table):
    T = table()
    assert np.array_equal(prime_radical(T).members, radical_oracle(T))


def test_radical_of_trivial_system_is_matrices_over_nilradical():
    for m in (2, 3, 4):
        T = trivial_table(m)
        P = prime_radical(T)
        rad = {x for x in range(m) if pow(x, 8, m) == 0}
        want = [i for i in range(T.size) if set(T.element(i).ravel().tolist()) <= rad]
        assert P.members.tolist() == want


def test_quotients():
    Z2 = from_base_ring(BaseRing.mod(2))
    T = trivial_table(4)
    Q = quotient(T, prime_radical(T))
    assert oracle_isomorphic(Q, trivial_table(2))

    B = binary_table(4, (1, 2), 2)
    QB = quotient(B, prime_radical(B))
    assert QB.size == 4
    assert oracle_isomorphic(QB, direct_product(Z2, Z2))
    assert not oracle_isomorphic(QB, trivial_table(2))
    # semiprime: the radical of the quotient is zero
    assert prime_radical(QB).size == 1 and prime_radical(Q).size == 1


def test_quotient_rejects_non_ideal():
    T = trivial_table(2)
    e11 = T.generators[0]
    members = np.flatnonzero(additive_span(T, [e11]))
    with pytest.raises(NotAnIdeal):
        quotient(T, IdealSet(T, members))


def test_decomposition_examples():
    parts = central_idempotent_decomposition(from_base_ring(BaseRing.mod(6)))
    assert sorted(p.size for p in parts) == [2, 3]

    assert [p.size for p in central_idempotent_decomposition(trivial_table(2))] == [16]
    assert matrix_orders(central_idempotent_decomposition(trivial_table(2)), 2) == [2]

    B = binary_table(4, (1, 2), 2)
    parts = central_idempotent_decomposition(quotient(B, prime_radical(B)))
    assert matrix_orders(parts, 2) == [1, 1]
    with pytest.raises(ValueError):
        matrix_orders([from_base_ring(BaseRing.mod(8))], 2)


def test_decomposition_factors_are_rings_with_identity():
    Z2 = from_base_ring(BaseRing.mod(2))
    Z3 = from_base_ring(BaseRing.mod(3))
    P = direct_product(Z2, Z3)
    parts = central_idempotent_decomposition(P)
    assert sorted(p.size for p in parts) == [2, 3]
    for part in parts:
        assert part.spot_check_axioms()
        assert (part.mul[part.one] == np.arange(part.size)).all()


def test_oracle_reflexive_symmetric():
    T1, T2 = binary_table(4, (1, 2), 2), binary_table(4, (2, 1), 2)
    r = oracle_isomorphic(T1, T1)
    assert r and verify_isomorphism(T1, T1, r.witness)
    a, b = oracle_isomorphic(T1, T2), oracle_isomorphic(T2, T1)
    assert a and b
    assert verify_isomorphism(T1, T2, a.witness) and verify_isomorphism(T2, T1, b.witness)


def test_oracle_distinguishes_trivial_and_binary():
    triv, bin0 = trivial_table(2), binary_table(2, (1, 2), 0)
    assert fingerprint(triv) != fingerprint(bin0)
    assert not oracle_isomorphic(triv, bin0)
    res = oracle_isomorphic(triv, bin0, use_invariants=False)
    assert not res and res.method == "search" and res.nodes > 0


def test_oracle_size_mismatch():
    res = oracle_isomorphic(trivial_table(2), from_base_ring(BaseRing.mod(4)))
    assert not res and res.method == "size"


def test_verify_rejects_bad_maps():
    T = trivial_table(2)
    assert verify_isomorphism(T, T, np.arange(T.size))
    assert not verify_isomorphism(T, T, np.zeros(T.size, dtype=int))
    phi = np.arange(T.size)
    phi[[1, 2]] = phi[[2, 1]]
    assert not verify_isomorphism(T, T, phi)


def test_transport_map_is_isomorphism():
    tau = Permutation((3, 1, 2))
    Z2 = BaseRing.mod(2)
    s2 = binary_system(Z2, (1, 1, 2), 0)
    T1 = materialize(FormalMatrixRing.of(s2), limit=1 << 9)
    T2 = materialize(FormalMatrixRing.of(permute(s2, tau)), limit=1 << 9)
    assert verify_isomorphism(T1, T2, transport_map(T1, T2, tau))
