"""Factor systems {s_ijk}: validation, construction, permutation and factor matrices.

Indices are 1-based in every public signature.  Tables are stored 0-based as
``n x n x n`` numpy arrays holding canonical ring values (``int64`` for Z/m,
``object`` for Z so that products never overflow).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import (
    BadClassMap,
    BadExponentMatrix,
    DimensionMismatch,
    HypothesisViolated,
    IndexOutOfRange,
    MixedRings,
    NotBinary,
    Violation,
)
from .ring import BaseRing, RingElement, is_unit


def _dtype(ring: BaseRing):
    return np.int64 if ring.is_finite else object


def as_array(ring: BaseRing, data, ndim: int) -> np.ndarray:
    """Integer array over ``ring`` with canonical residues."""
    arr = np.array(data, dtype=object)
    if arr.ndim != ndim:
        raise DimensionMismatch(f"expected a {ndim}-dimensional array, got shape {arr.shape}")
    if ring.is_finite:
        arr = np.vectorize(lambda v: int(v) % ring.modulus, otypes=[np.int64])(arr)
    else:
        arr = np.vectorize(int, otypes=[object])(arr) if arr.size else arr
    return arr


def _scalar(ring: BaseRing, s) -> int:
    if isinstance(s, RingElement):
        if s.ring != ring:
            raise MixedRings(f"{s!r} does not live in {ring}")
        return s.value
    return ring.reduce(s)


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..n}; ``images[i-1]`` is the image of ``i``."""

    images: tuple

    def __post_init__(self):
        imgs = tuple(int(i) for i in self.images)
        if sorted(imgs) != list(range(1, len(imgs) + 1)):
            raise ValueError(f"{imgs} is not a permutation of 1..{len(imgs)}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def all(cls, n: int):
        for p in itertools.permutations(range(1, n + 1)):
            yield cls(p)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, t in enumerate(self.images, start=1):
            inv[t - 1] = i
        return Permutation(tuple(inv))

    def then(self, other: Permutation) -> Permutation:
        """The map ``i -> other(self(i))``."""
        return Permutation(tuple(other(t) for t in self.images))

    def index_array(self) -> np.ndarray:
        return np.array(self.images, dtype=np.intp) - 1

    def __str__(self):
        return " ".join(map(str, self.images))


class FactorSystem:
    """A certified factor system over a commutative ring.

    Instances are only produced by :func:`validate` and the constructors
    below, so the defining identities always hold.  ``s`` records the
    distinguished element for systems built as binary/coboundary families
    (``None`` for arbitrary tables).
    """

    __slots__ = ("ring", "n", "table", "s")

    def __init__(self, ring: BaseRing, table: np.ndarray, s: int | None = None):
        table = table.copy()
        table.setflags(write=False)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "n", table.shape[0])
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "table", table)

    def __setattr__(self, name, value):
        raise AttributeError("FactorSystem is immutable")

    def factor(self, i: int, j: int, k: int) -> RingElement:
        return self.ring(self.table[i - 1, j - 1, k - 1])

    def values(self) -> set:
        return {int(v) for v in self.table.flat}

    def __eq__(self, other):
        if not isinstance(other, FactorSystem):
            return NotImplemented
        return self.ring == other.ring and self.n == other.n and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.ring, self.n, tuple(int(v) for v in self.table.flat)))

    def __repr__(self):
        extra = f", s={self.s}" if self.s is not None else ""
        return f"FactorSystem(n={self.n}, ring={self.ring}{extra})"


def find_violation(ring: BaseRing, table) -> Violation | None:
    """First failing identity in lexicographic index order, or ``None``.

    Normalization (s_iik = 1 = s_ikk) is checked before the cocycle identity
    s_ijk s_ikl = s_ijl s_jkl.
    """
    t = table if isinstance(table, np.ndarray) and table.ndim == 3 else as_array(ring, table, 3)
    n = t.shape[0]
    if t.shape != (n, n, n):
        raise DimensionMismatch(f"factor table must be n x n x n, got {t.shape}")
    if n < 2:
        raise DimensionMismatch("matrix order must be at least 2")
    one = ring.reduce(1)
    for i in range(n):
        for k in range(n):
            if t[i, i, k] != one:
                return Violation("normalization", (i + 1, i + 1, k + 1), f"s = {t[i, i, k]}")
            if t[i, k, k] != one:
                return Violation("normalization", (i + 1, k + 1, k + 1), f"s = {t[i, k, k]}")
    lhs = t[:, :, :, None] * t[:, None, :, :]  # s_ijk * s_ikl
    rhs = t[:, :, None, :] * t[None, :, :, :]  # s_ijl * s_jkl
    if ring.is_finite:
        lhs, rhs = lhs % ring.modulus, rhs % ring.modulus
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        i, j, k, l = (int(x) for x in bad[0])
        return Violation(
            "cocycle",
            (i + 1, j + 1, k + 1, l + 1),
            f"{lhs[i, j, k, l]} != {rhs[i, j, k, l]}",
        )
    return None


def validate(ring: BaseRing, table, s=None) -> FactorSystem:
    """Certify a raw ``n x n x n`` table; raises :class:`Violation` on failure."""
    t = as_array(ring, table, 3)
    violation = find_violation(ring, t)
    if violation is not None:
        raise violation
    return FactorSystem(ring, t, None if s is None else _scalar(ring, s))


@dataclass
class DerivedReport:
    passed: bool
    checked: int
    failure: tuple | None = None

    def __bool__(self):
        return self.passed


def derived_relations_report(sys: FactorSystem) -> DerivedReport:
    """Re-check the consequences of the axioms on every index choice.

    For all i, j, k:  s_iji = s_jij = s_ijk s_jik = s_kij s_kji.  The three
    rows obtained by cycling (i, j, k) are instances of the same identity over
    all ordered triples, so one sweep covers them.  A failure here means a
    bug in this library, not bad input.
    """
    t, n, ring = sys.table, sys.n, sys.ring
    checked = 0
    for i, j, k in itertools.product(range(n), repeat=3):
        a = t[i, j, i]
        values = (
            ("s_jij", t[j, i, j]),
            ("s_ijk*s_jik", ring.reduce(t[i, j, k] * t[j, i, k])),
            ("s_kij*s_kji", ring.reduce(t[k, i, j] * t[k, j, i])),
        )
        for name, v in values:
            checked += 1
            if v != a:
                return DerivedReport(False, checked, (name, (i + 1, j + 1, k + 1)))
    # the cycled rows, spelled out exactly as written for distinct triples
    for i, j, k in itertools.permutations(range(n), 3):
        rows = (
            (t[i, j, i], t[j, i, j], t[i, j, k] * t[j, i, k], t[k, i, j] * t[k, j, i]),
            (t[j, k, j], t[k, j, k], t[j, k, i] * t[k, j, i], t[i, j, k] * t[i, k, j]),
            (t[i, k, i], t[k, i, k], t[i, k, j] * t[k, i, j], t[j, i, k] * t[j, k, i]),
        )
        for row_no, row in enumerate(rows, start=1):
            checked += 1
            if len({ring.reduce(v) for v in row}) != 1:
                return DerivedReport(False, checked, (f"row {row_no}", (i + 1, j + 1, k + 1)))
    return DerivedReport(True, checked)


def check_exponent_matrix(g: np.ndarray) -> None:
    n = g.shape[0]
    for i in range(n):
        if g[i, i] != 0:
            raise BadExponentMatrix("diagonal", (i + 1, i + 1))
    for i, j in itertools.product(range(n), repeat=2):
        if g[i, j] < 0:
            raise BadExponentMatrix("nonnegative", (i + 1, j + 1))
    for i, j, k in itertools.product(range(n), repeat=3):
        if g[i, k] > g[i, j] + g[j, k]:
            raise BadExponentMatrix("triangle", (i + 1, j + 1, k + 1))


def coboundary_system(ring: BaseRing, g, s) -> FactorSystem:
    """s_ijk = s ** (g(i,j) + g(j,k) - g(i,k)) for an exponent matrix g.

    g needs a zero diagonal and the triangle inequality so every exponent
    is a nonnegative integer; the cocycle identity then holds exponent-wise.
    """
    g = np.array(g, dtype=np.int64)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise DimensionMismatch(f"exponent matrix must be square, got {g.shape}")
    if g.shape[0] < 2:
        raise DimensionMismatch("matrix order must be at least 2")
    check_exponent_matrix(g)
    sv = _scalar(ring, s)
    exps = g[:, :, None] + g[None, :, :] - g[:, None, :]
    powers = {e: ring.reduce(pow(sv, int(e), ring.modulus) if ring.is_finite else sv ** int(e))
              for e in np.unique(exps)}
    table = np.empty(exps.shape, dtype=_dtype(ring))
    for idx, e in np.ndenumerate(exps):
        table[idx] = powers[e]
    return validate(ring, table, s=sv)


def class_exponents(class_of) -> np.ndarray:
    """g(i,j) = 1 when class(i) > class(j), else 0."""
    c = np.asarray(class_of)
    return (c[:, None] > c[None, :]).astype(np.int64)


def _check_class_map(class_of) -> tuple:
    labels = tuple(int(c) for c in class_of)
    k = max(labels, default=0)
    if len(labels) < 2 or set(labels) != set(range(1, k + 1)):
        raise BadClassMap(f"class labels must be 1..k with every label used, got {labels}")
    return labels


def binary_system(ring: BaseRing, class_of, s) -> FactorSystem:
    """Binary {1, s} system attached to an ordered partition.

    ``class_of[i-1]`` is the class label of index ``i``; labels are 1..k.
    Index pairs in the same class get principal factor 1, all others get s.
    """
    labels = _check_class_map(class_of)
    return coboundary_system(ring, class_exponents(labels), s)


def ordered_partitions(n: int):
    """All class maps of {1..n} onto labels 1..k (ordered set partitions)."""
    for k in range(1, n + 1):
        for labels in itertools.product(range(1, k + 1), repeat=n):
            if len(set(labels)) == k:
                yield labels


def classes_to_labels(n: int, classes) -> tuple:
    """Turn an ordered list of index blocks into a class map."""
    labels = [0] * n
    for label, block in enumerate(classes, start=1):
        for i in block:
            if labels[i - 1]:
                raise BadClassMap(f"index {i} appears in two classes")
            labels[i - 1] = label
    if not all(labels):
        raise BadClassMap("classes do not cover 1..n")
    return tuple(labels)


def principal_matrix(sys: FactorSystem) -> np.ndarray:
    """S = (s_iji)."""
    idx = np.arange(sys.n)
    return sys.table[idx[:, None], idx[None, :], idx[:, None]].copy()


def factor_matrix_k(sys: FactorSystem, k: int) -> np.ndarray:
    """S_k = (s_ikj)."""
    if not 1 <= k <= sys.n:
        raise IndexOutOfRange(f"k = {k} outside 1..{sys.n}")
    return sys.table[:, k - 1, :].copy()


def permute(sys: FactorSystem, tau: Permutation) -> FactorSystem:
    """The system t_ijk = s_{tau(i) tau(j) tau(k)}."""
    if tau.degree != sys.n:
        raise DimensionMismatch(f"permutation degree {tau.degree} != {sys.n}")
    p = tau.index_array()
    return validate(sys.ring, sys.table[np.ix_(p, p, p)], s=sys.s)


def permute_matrix(tau: Permutation, a) -> np.ndarray:
    """(tau A)_ij = a_{tau(i) tau(j)}."""
    p = tau.index_array()
    return np.asarray(a)[np.ix_(p, p)]


def binary_value(sys: FactorSystem):
    """The non-identity value of a binary system, or ``None`` if trivial.

    Raises :class:`NotBinary` when more than one non-identity value occurs.
    """
    others = sys.values() - {sys.ring.reduce(1)}
    if len(others) > 1:
        raise NotBinary(f"factor values {sorted(others)} are not of the form {{1, s}}")
    if others:
        return others.pop()
    return sys.s


def is_binary(sys: FactorSystem, s) -> bool:
    sv = _scalar(sys.ring, s)
    return sys.values() <= {sys.ring.reduce(1), sv}


def binary_uniqueness_check(a: FactorSystem, b: FactorSystem, s) -> bool | None:
    """Do equal principal matrices force equal factor tables?

    Returns ``None`` when the principal matrices differ (nothing to
    compare), otherwise whether the full tables agree.  Requires both
    systems to be binary in {1, s} with s*s != 1 and s*s != s.
    """
    if a.ring != b.ring or a.n != b.n:
        raise HypothesisViolated("same ring and order", f"{a!r} vs {b!r}")
    ring = a.ring
    sv = _scalar(ring, s)
    sq = ring.reduce(sv * sv)
    if sq == ring.reduce(1):
        raise HypothesisViolated("s^2 != 1")
    if sq == sv:
        raise HypothesisViolated("s^2 != s")
    for name, sys in (("first", a), ("second", b)):
        if not is_binary(sys, sv):
            raise HypothesisViolated("binary", f"{name} system has values {sorted(sys.values())}")
    if not np.array_equal(principal_matrix(a), principal_matrix(b)):
        return None
    return a == b


def invertible_factors(sys: FactorSystem) -> list:
    """1-based triples whose factor is a unit other than 1."""
    one = sys.ring.reduce(1)
    out = []
    for idx, v in np.ndenumerate(sys.table):
        if v != one and is_unit(int(v), sys.ring):
            out.append(tuple(i + 1 for i in idx))
    return out
