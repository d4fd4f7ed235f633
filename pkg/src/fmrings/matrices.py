"""Arithmetic in M(n, R, Sigma) and the transport isomorphism A -> tau A.

Matrices are plain numpy arrays and never carry their ring: the same array
can be multiplied in M(n,R,Sigma) and in M(n,R,tau Sigma).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import ShapeMismatch
from .factors import FactorSystem, Permutation, as_array, permute_matrix
from .ring import BaseRing, RingElement


@dataclass(frozen=True, eq=False)
class FormalMatrixRing:
    """K = M(n, R, Sigma).

    ``table`` is normally the certified table of ``sys``.  Use
    :meth:`from_raw_table` to wrap an arbitrary table (e.g. to exhibit
    non-associativity of a broken one); ``sys`` is ``None`` then.
    """

    ring: BaseRing
    table: np.ndarray = field(repr=False)
    sys: FactorSystem | None = field(default=None, repr=False)

    @classmethod
    def of(cls, sys: FactorSystem) -> FormalMatrixRing:
        return cls(sys.ring, sys.table, sys)

    @classmethod
    def from_raw_table(cls, ring: BaseRing, table) -> FormalMatrixRing:
        return cls(ring, as_array(ring, table, 3), None)

    @property
    def n(self) -> int:
        return self.table.shape[0]

    @property
    def certified(self) -> bool:
        return self.sys is not None

    @property
    def dtype(self):
        return np.int64 if self.ring.is_finite else object

    def matrix(self, data) -> np.ndarray:
        a = as_array(self.ring, data, 2)
        self._check(a)
        return a

    def zero(self) -> np.ndarray:
        return np.zeros((self.n, self.n), dtype=self.dtype) if self.ring.is_finite else \
            np.full((self.n, self.n), 0, dtype=object)

    def identity(self) -> np.ndarray:
        return scalar_embed(self, 1)

    def unit(self, i: int, j: int) -> np.ndarray:
        """The unit matrix E_ij (1-based)."""
        e = self.zero()
        e[i - 1, j - 1] = 1
        return e

    def random(self, rng: np.random.Generator, count: int | None = None, bound: int = 5):
        """Uniform matrices over Z/m; entries in [-bound, bound] over Z."""
        shape = (self.n, self.n) if count is None else (count, self.n, self.n)
        if self.ring.is_finite:
            return rng.integers(0, self.ring.modulus, size=shape, dtype=np.int64)
        return rng.integers(-bound, bound + 1, size=shape).astype(object)

    def _check(self, *mats):
        for a in mats:
            if np.shape(a)[-2:] != (self.n, self.n):
                raise ShapeMismatch(f"expected {self.n}x{self.n} matrices, got {np.shape(a)}")

    def _reduce(self, a):
        return a % self.ring.modulus if self.ring.is_finite else a


def mat_add(K: FormalMatrixRing, a, b) -> np.ndarray:
    K._check(a, b)
    return K._reduce(np.asarray(a) + np.asarray(b))


def mat_neg(K: FormalMatrixRing, a) -> np.ndarray:
    K._check(a)
    return K._reduce(-np.asarray(a))


def mat_mul(K: FormalMatrixRing, a, b) -> np.ndarray:
    """c_ij = sum_k s_ikj a_ik b_kj.  Works on single matrices or stacks."""
    K._check(a, b)
    a, b = np.asarray(a), np.asarray(b)
    t = K.table
    if K.ring.is_finite:
        c = np.einsum("ikj,...ik,...kj->...ij", t, a, b)
    else:
        # einsum has no object-dtype support; row i of C is a_i. @ (S_i * B)
        c = (a[..., :, None, :] @ (t * b[..., None, :, :]))[..., 0, :]
    return K._reduce(c)


def scalar_embed(K: FormalMatrixRing, r) -> np.ndarray:
    """r * E, the diagonal embedding of R into K."""
    if isinstance(r, RingElement):
        r = r.value
    e = K.zero()
    for i in range(K.n):
        e[i, i] = K.ring.reduce(r)
    return e


def transport(tau: Permutation, a) -> np.ndarray:
    """(tau A)_ij = a_{tau(i) tau(j)}; an isomorphism M(n,R,Sigma) -> M(n,R,tau Sigma)."""
    a = np.asarray(a)
    if a.shape[-2:] != (tau.degree, tau.degree):
        raise ShapeMismatch(f"permutation of degree {tau.degree} on matrix of shape {a.shape}")
    if a.ndim == 2:
        return permute_matrix(tau, a)
    p = tau.index_array()
    return a[..., p[:, None], p[None, :]]


@dataclass
class ProbeReport:
    passed: bool
    samples: int
    seed: int
    unit_triples: int
    witness: tuple | None = None  # (A, B, C) or unit-matrix labels

    def __bool__(self):
        return self.passed


def associativity_probe(K: FormalMatrixRing, sample_count: int = 1000, seed: int = 0) -> ProbeReport:
    """Check (AB)C = A(BC) on all unit-matrix triples, then on seeded random triples."""
    n = K.n
    units = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    tested = 0
    for (i, j), (k, l), (p, q) in itertools.product(units, repeat=3):
        if j != k or l != p:
            continue  # product vanishes on both sides
        tested += 1
        a, b, c = K.unit(i, j), K.unit(k, l), K.unit(p, q)
        if not np.array_equal(mat_mul(K, mat_mul(K, a, b), c), mat_mul(K, a, mat_mul(K, b, c))):
            return ProbeReport(False, 0, seed, tested, (f"E{i}{j}", f"E{k}{l}", f"E{p}{q}"))
    rng = np.random.default_rng(seed)
    a, b, c = (K.random(rng, sample_count) for _ in range(3))
    lhs = mat_mul(K, mat_mul(K, a, b), c)
    rhs = mat_mul(K, a, mat_mul(K, b, c))
    bad = [idx for idx in range(sample_count) if not np.array_equal(lhs[idx], rhs[idx])]
    if bad:
        w = bad[0]
        return ProbeReport(False, sample_count, seed, tested, (a[w], b[w], c[w]))
    return ProbeReport(True, sample_count, seed, tested)
