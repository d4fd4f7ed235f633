import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fmrings.errors import ShapeMismatch
from fmrings.factors import Permutation, binary_system, ordered_partitions, permute, validate
from fmrings.matrices import (
    FormalMatrixRing,
    associativity_probe,
    mat_add,
    mat_mul,
    mat_neg,
    scalar_embed,
    transport,
)
from fmrings.ring import BaseRing


def textbook_twisted(table, a, b, m):
    n = len(a)
    c = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            c[i][j] = sum(int(table[i, k, j]) * int(a[i][k]) * int(b[k][j]) for k in range(n)) % m
    return c


def ring_of(m, labels, s):
    return FormalMatrixRing.of(binary_system(BaseRing.mod(m), labels, s))


def test_addition_examples(Z4):
    K = FormalMatrixRing.of(validate(Z4, np.ones((2, 2, 2), dtype=int)))
    a = K.matrix([[1, 2], [3, 0]])
    assert mat_add(K, a, K.matrix([[3, 2], [1, 1]])).tolist() == [[0, 0], [0, 1]]
    assert np.array_equal(mat_add(K, a, K.zero()), a)
    assert not mat_add(K, a, mat_neg(K, a)).any()


def test_shape_mismatch(Z4):
    K = ring_of(4, (1, 2), 2)
    with pytest.raises(ShapeMismatch):
        mat_mul(K, np.zeros((2, 2), dtype=int), np.zeros((3, 3), dtype=int))


def test_trivial_system_is_ordinary_product():
    rng = np.random.default_rng(1)
    K = FormalMatrixRing.of(validate(BaseRing.mod(9), np.ones((3, 3, 3), dtype=int)))
    for _ in range(100):
        a, b = K.random(rng), K.random(rng)
        assert np.array_equal(mat_mul(K, a, b), (a @ b) % 9)


def test_trivial_exhaustive_over_z2():
    K = FormalMatrixRing.of(validate(BaseRing.mod(2), np.ones((2, 2, 2), dtype=int)))
    mats = [np.array(v).reshape(2, 2) for v in itertools.product((0, 1), repeat=4)]
    for a, b in itertools.product(mats, repeat=2):
        assert mat_mul(K, a, b).tolist() == textbook_twisted(K.table, a, b, 2)


def test_unit_matrix_products():
    K = ring_of(4, (1, 2), 2)
    assert np.array_equal(mat_mul(K, K.unit(1, 2), K.unit(2, 1)), 2 * K.unit(1, 1))
    assert np.array_equal(mat_mul(K, K.unit(2, 1), K.unit(1, 2)), 2 * K.unit(2, 2))


def test_twisted_product_matches_textbook_loop():
    rng = np.random.default_rng(7)
    for labels in ordered_partitions(3):
        K = ring_of(8, labels, 2)
        for _ in range(20):
            a, b = K.random(rng), K.random(rng)
            assert mat_mul(K, a, b).tolist() == textbook_twisted(K.table, a, b, 8)


def test_integer_ring_product():
    Z = BaseRing.integers()
    K = FormalMatrixRing.of(binary_system(Z, (1, 2, 2), 3))
    rng = np.random.default_rng(3)
    a, b = K.random(rng), K.random(rng)
    c = mat_mul(K, a, b)
    assert c.tolist() == [[sum(int(K.table[i, k, j]) * a[i, k] * b[k, j] for k in range(3))
                           for j in range(3)] for i in range(3)]
    assert associativity_probe(K, 200, seed=3)


def test_scalar_embedding(Z8):
    K = ring_of(8, (1, 2, 2), 2)
    assert np.array_equal(scalar_embed(K, 1), K.identity())
    assert not scalar_embed(K, 0).any()
    assert np.array_equal(mat_mul(K, scalar_embed(K, 2), scalar_embed(K, 3)), scalar_embed(K, 6))
    assert np.array_equal(mat_mul(K, scalar_embed(K, 5), scalar_embed(K, 7)), scalar_embed(K, 3))


@pytest.mark.parametrize("m", [2, 4, 8, 9])
def test_identity_and_distributivity(m):
    rng = np.random.default_rng(m)
    s = {2: 0, 4: 2, 8: 2, 9: 3}[m]
    for labels in ordered_partitions(4):
        K = ring_of(m, labels, s)
        E = K.identity()
        a, b, c = (K.random(rng, 100) for _ in range(3))
        assert np.array_equal(mat_mul(K, E, a), a) and np.array_equal(mat_mul(K, a, E), a)
        assert np.array_equal(mat_mul(K, a, mat_add(K, b, c)), mat_add(K, mat_mul(K, a, b), mat_mul(K, a, c)))
        assert np.array_equal(mat_mul(K, mat_add(K, a, b), c), mat_add(K, mat_mul(K, a, c), mat_mul(K, b, c)))


def test_transport_examples():
    a = np.array([[1, 2], [3, 4]])
    assert np.array_equal(transport(Permutation.identity(2), a), a)
    assert transport(Permutation((2, 1)), a).tolist() == [[4, 3], [2, 1]]


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 4).flatmap(lambda n: st.tuples(
    st.sampled_from(list(ordered_partitions(n))), st.permutations(range(1, n + 1)), st.integers(0, 2**32 - 1))))
def test_transport_is_isomorphism(data):
    labels, perm, seed = data
    tau = Permutation(tuple(perm))
    sys = binary_system(BaseRing.mod(9), labels, 3)
    K, Kt = FormalMatrixRing.of(sys), FormalMatrixRing.of(permute(sys, tau))
    rng = np.random.default_rng(seed)
    a, b = K.random(rng, 50), K.random(rng, 50)
    assert np.array_equal(transport(tau, mat_mul(K, a, b)), mat_mul(Kt, transport(tau, a), transport(tau, b)))
    assert np.array_equal(transport(tau, mat_add(K, a, b)), mat_add(Kt, transport(tau, a), transport(tau, b)))
    assert np.array_equal(transport(tau.inverse(), transport(tau, a)), a)


def test_probe_passes_on_certified():
    K3 = FormalMatrixRing.of(validate(BaseRing.mod(5), np.ones((3, 3, 3), dtype=int)))
    assert associativity_probe(K3, 1000, seed=1)
    rep = associativity_probe(ring_of(8, (1, 1, 2), 2), 1000, seed=1)
    assert rep.passed and rep.seed == 1 and rep.samples == 1000


def test_probe_finds_broken_table(Z4):
    t = binary_system(Z4, (1, 2), 2).table.copy()
    t[0, 1, 0] = 1  # breaks the cocycle identity at (1, 2, 1, 2)
    rep = associativity_probe(FormalMatrixRing.from_raw_table(Z4, t), 1000, seed=0)
    assert not rep.passed
    assert rep.witness == ("E12", "E21", "E12")
