"""Brute-force ground truth for small finite rings.

Every ring is an explicit :class:`FiniteRingTable`: elements are indices
``0..N-1`` and addition/multiplication are ``N x N`` lookup tables.  On top
of that sit the Jacobson (= prime, for finite rings) radical, quotients,
central-idempotent splitting and an exhaustive unital-ring isomorphism
search.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .errors import NotAnIdeal, TooLarge
from .factors import Permutation
from .matrices import FormalMatrixRing, transport
from .ring import BaseRing

DEFAULT_LIMIT = 4096


def _index_dtype(size: int):
    return np.uint16 if size <= np.iinfo(np.uint16).max + 1 else np.int32


@dataclass(eq=False)
class FiniteRingTable:
    name: str
    add: np.ndarray = field(repr=False)
    mul: np.ndarray = field(repr=False)
    zero: int
    one: int
    generators: tuple = field(repr=False)
    labels: np.ndarray = field(repr=False)  # row i describes element i
    modulus: int | None = field(default=None, repr=False)
    matrix_order: int | None = field(default=None, repr=False)

    def __post_init__(self):
        for t in (self.add, self.mul):
            t.setflags(write=False)
        self.labels.setflags(write=False)
        self._cache = {}

    @property
    def size(self) -> int:
        return self.add.shape[0]

    def __len__(self):
        return self.size

    def _cached(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @property
    def neg(self) -> np.ndarray:
        def compute():
            rows, cols = np.nonzero(self.add == self.zero)
            out = np.empty(self.size, dtype=np.int64)
            out[rows] = cols
            return out

        return self._cached("neg", compute)

    @property
    def additive_orders(self) -> np.ndarray:
        def compute():
            idx = np.arange(self.size)
            cur = idx.copy()
            order = np.zeros(self.size, dtype=np.int64)
            k = 1
            while (order == 0).any():
                order[(cur == self.zero) & (order == 0)] = k
                cur = self.add[cur, idx]
                k += 1
            return order

        return self._cached("orders", compute)

    @property
    def units(self) -> np.ndarray:
        return self._cached("units", lambda: (self.mul == self.one).any(axis=1))

    @property
    def central(self) -> np.ndarray:
        return self._cached("central", lambda: (self.mul == self.mul.T).all(axis=1))

    @property
    def idempotents(self) -> np.ndarray:
        idx = np.arange(self.size)
        return self.mul[idx, idx] == idx

    @property
    def square_zero(self) -> np.ndarray:
        idx = np.arange(self.size)
        return self.mul[idx, idx] == self.zero

    def index_of(self, matrix) -> int:
        """Index of a formal matrix (materialized rings only)."""
        digits = np.asarray(matrix, dtype=np.int64).reshape(-1) % self.modulus
        weights = self.modulus ** np.arange(len(digits) - 1, -1, -1)
        return int(digits @ weights)

    def element(self, index: int) -> np.ndarray:
        lab = self.labels[index]
        if self.matrix_order:
            return lab.reshape(self.matrix_order, self.matrix_order)
        return lab

    def spot_check_axioms(self, samples: int = 2000, seed: int = 0) -> bool:
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, self.size, size=(3, samples))
        A, M = self.add, self.mul
        return bool(
            (A[a, b] == A[b, a]).all()
            and (A[A[a, b], c] == A[a, A[b, c]]).all()
            and (M[M[a, b], c] == M[a, M[b, c]]).all()
            and (M[a, A[b, c]] == A[M[a, b], M[a, c]]).all()
            and (M[A[a, b], c] == A[M[a, c], M[b, c]]).all()
            and (M[self.one, a] == a).all()
            and (M[a, self.one] == a).all()
            and (A[self.zero, a] == a).all()
        )


@dataclass(frozen=True, eq=False)
class IdealSet:
    table: FiniteRingTable = field(repr=False)
    members: np.ndarray = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.members)

    def __len__(self):
        return self.size

    @property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.table.size, dtype=bool)
        m[self.members] = True
        return m

    def is_ideal(self) -> bool:
        T, mask, I = self.table, self.mask, self.members
        if not mask[T.zero]:
            return False
        if not mask[T.add[np.ix_(I, I)]].all() or not mask[T.neg[I]].all():
            return False
        return bool(mask[T.mul[:, I]].all() and mask[T.mul[I, :]].all())


# --- construction -----------------------------------------------------------


def materialize(K: FormalMatrixRing, limit: int = DEFAULT_LIMIT) -> FiniteRingTable:
    """All |R|^(n^2) elements of K, ordered lexicographically by entries."""
    if not K.ring.is_finite:
        raise ValueError("only rings over Z/m can be materialized")
    m, n = K.ring.modulus, K.n
    L = n * n
    size = m**L
    if size > limit:
        raise TooLarge(size, limit)
    dt = _index_dtype(size)
    digits = np.array(list(itertools.product(range(m), repeat=L)), dtype=np.int32).reshape(size, L)
    weights = m ** np.arange(L - 1, -1, -1, dtype=np.int32)

    add = np.zeros((size, size), dtype=np.int32)
    for p in range(L):
        col = digits[:, p]
        add += ((col[:, None] + col[None, :]) % m) * weights[p]

    mats = digits.reshape(size, n, n)
    mul = np.empty((size, size), dtype=dt)
    chunk = max(1, (1 << 22) // size)
    for start in range(0, size, chunk):
        a = mats[start:start + chunk]
        code = np.zeros((len(a), size), dtype=np.int32)
        for i, j in itertools.product(range(n), repeat=2):
            c = np.zeros_like(code)
            for k in range(n):
                c += int(K.table[i, k, j]) * np.multiply.outer(a[:, i, k], mats[:, k, j])
            code += (c % m) * weights[i * n + j]
        mul[start:start + chunk] = code

    def code(i, j):
        return int(weights[i * n + j])

    one = sum(code(i, i) for i in range(n))
    gens = tuple([code(i, i) for i in range(n)]
                 + [code(i, j) for i in range(n) for j in range(n) if i != j])
    name = f"M({n}, Z/{m}, Sigma)"
    return FiniteRingTable(name, add.astype(dt), mul, 0, one, gens, digits.astype(np.int64), m, n)


def from_base_ring(ring: BaseRing) -> FiniteRingTable:
    """Z/m as a table."""
    m = ring.modulus
    idx = np.arange(m)
    dt = _index_dtype(m)
    add = ((idx[:, None] + idx[None, :]) % m).astype(dt)
    mul = ((idx[:, None] * idx[None, :]) % m).astype(dt)
    return FiniteRingTable(f"Z/{m}", add, mul, 0, 1 % m, (1,), idx[:, None].copy(), m)


def direct_product(t1: FiniteRingTable, t2: FiniteRingTable) -> FiniteRingTable:
    """T1 x T2 with element (a, b) at index a * |T2| + b."""
    n2 = t2.size
    size = t1.size * n2
    dt = _index_dtype(size)
    a = np.repeat(np.arange(t1.size), n2)
    b = np.tile(np.arange(n2), t1.size)
    add = (t1.add[np.ix_(a, a)].astype(np.int64) * n2 + t2.add[np.ix_(b, b)]).astype(dt)
    mul = (t1.mul[np.ix_(a, a)].astype(np.int64) * n2 + t2.mul[np.ix_(b, b)]).astype(dt)
    gens = tuple(g * n2 + t2.zero for g in t1.generators) + tuple(t1.zero * n2 + g for g in t2.generators)
    labels = np.hstack([t1.labels[a], t2.labels[b]])
    return FiniteRingTable(f"{t1.name} x {t2.name}", add, mul, t1.zero * n2 + t2.zero,
                           t1.one * n2 + t2.one, gens, labels)


def subring_table(T: FiniteRingTable, members, one: int, name: str, generators=()) -> FiniteRingTable:
    """Restrict T to ``members`` (closed under + and *), with its own identity."""
    members = np.asarray(sorted(set(int(x) for x in members)))
    local = np.full(T.size, -1, dtype=np.int64)
    local[members] = np.arange(len(members))
    dt = _index_dtype(len(members))
    add = local[T.add[np.ix_(members, members)]]
    mul = local[T.mul[np.ix_(members, members)]]
    if (add < 0).any() or (mul < 0).any():
        raise ValueError("member set is not closed under the ring operations")
    gens = tuple(dict.fromkeys(int(local[g]) for g in generators if local[g] >= 0))
    return FiniteRingTable(name, add.astype(dt), mul.astype(dt), int(local[T.zero]), int(local[one]),
                           gens, T.labels[members], T.modulus, None)


# --- radical, quotient, decomposition --------------------------------------


def prime_radical(T: FiniteRingTable) -> IdealSet:
    """{x : 1 - a x is a unit for every a}; for a finite ring this is P(T)."""
    one_minus = T.add[T.one][T.neg]  # y -> 1 - y
    ok = np.ones(T.size, dtype=bool)
    step = max(1, (1 << 24) // max(T.size, 1))
    for start in range(0, T.size, step):
        ok &= T.units[one_minus[T.mul[start:start + step]]].all(axis=0)
    return IdealSet(T, np.flatnonzero(ok))


def additive_span(T: FiniteRingTable, elements) -> np.ndarray:
    """Mask of the additive subgroup generated by ``elements``."""
    span = np.zeros(T.size, dtype=bool)
    span[T.zero] = True
    for g in dict.fromkeys(int(x) for x in elements):
        if span[g]:
            continue
        current = np.flatnonzero(span)
        mult = g
        while not span[mult]:
            span[T.add[current, mult]] = True
            mult = T.add[mult, g]
    return span


def ideal_nilpotency_index(I: IdealSet, max_power: int = 64) -> int | None:
    """Smallest k with I^k = 0, or ``None`` if not reached by ``max_power``."""
    T = I.table
    power = I.members
    for k in range(1, max_power + 1):
        if len(power) == 1 and power[0] == T.zero:
            return k
        products = np.unique(T.mul[np.ix_(power, I.members)])
        power = np.flatnonzero(additive_span(T, products))
    return None


def quotient(T: FiniteRingTable, I: IdealSet) -> FiniteRingTable:
    """T / I, cosets ordered by their smallest element."""
    if not I.is_ideal():
        raise NotAnIdeal(f"{I.size}-element subset of {T.name} is not a two-sided ideal")
    coset_min = T.add[:, I.members].min(axis=1).astype(np.int64)
    reps = np.unique(coset_min)
    label = np.full(T.size, -1, dtype=np.int64)
    label[reps] = np.arange(len(reps))
    cls = label[coset_min]
    dt = _index_dtype(len(reps))
    add = cls[T.add[np.ix_(reps, reps)]].astype(dt)
    mul = cls[T.mul[np.ix_(reps, reps)]].astype(dt)
    gens = tuple(dict.fromkeys(int(cls[g]) for g in T.generators if cls[g] != cls[T.zero]))
    return FiniteRingTable(f"{T.name} / I", add, mul, int(cls[T.zero]), int(cls[T.one]), gens,
                           T.labels[reps], T.modulus, None)


def central_idempotents(T: FiniteRingTable) -> np.ndarray:
    return np.flatnonzero(T.idempotents & T.central)


def primitive_central_idempotents(T: FiniteRingTable) -> list:
    """Minimal nonzero central idempotents; they are orthogonal and sum to 1."""
    ces = [int(e) for e in central_idempotents(T) if e != T.zero]
    prim = [e for e in ces if not any(f != e and T.mul[e, f] == f for f in ces)]
    return prim


def central_idempotent_decomposition(T: FiniteRingTable) -> list:
    """The rings eT for the primitive central idempotents e of T."""
    out = []
    for e in primitive_central_idempotents(T):
        members = np.unique(T.mul[e])
        gens = [T.mul[e, g] for g in T.generators]
        out.append(subring_table(T, members, e, f"e{e}*{T.name}", gens))
    return out


def matrix_orders(factors, residue_size: int) -> list:
    """Orders d with |F| = q^(d^2), q = |R/P(R)|; sorted descending."""
    orders = []
    for f in factors:
        d = math.isqrt(round(math.log(f.size, residue_size)))
        if residue_size ** (d * d) != f.size:
            raise ValueError(f"{f.size} is not {residue_size}^(d^2)")
        orders.append(d)
    return sorted(orders, reverse=True)


# --- isomorphism oracle ------------------------------------------------------


def fingerprint(T: FiniteRingTable) -> tuple:
    """Isomorphism invariants; unequal fingerprints prove non-isomorphism."""
    sig = Counter(zip(T.additive_orders.tolist(), T.idempotents.tolist(), T.square_zero.tolist(),
                      T.units.tolist(), T.central.tolist()))
    return (T.size, tuple(sorted(sig.items())))


def _element_signature(T: FiniteRingTable, strong: bool) -> np.ndarray:
    cols = [T.additive_orders, T.idempotents, T.square_zero]
    if strong:
        cols += [T.units, T.central]
    return np.stack([np.asarray(c, dtype=np.int64) for c in cols], axis=1)


@dataclass
class OracleResult:
    isomorphic: bool
    witness: np.ndarray | None = None  # witness[i] = image of element i
    nodes: int = 0
    method: str = "search"

    def __bool__(self):
        return self.isomorphic


class _Plan:
    """Generator schedule for T1: domain growth and deferred product checks."""

    def __init__(self, T: FiniteRingTable):
        gens, span = [], np.zeros(T.size, dtype=bool)
        span[T.zero] = True
        self.level = np.full(T.size, -1, dtype=np.int64)
        self.base = np.zeros(T.size, dtype=np.int64)
        self.coef = np.zeros(T.size, dtype=np.int64)
        self.level[T.zero] = -1
        self.relation = []  # (c0, element c0*g in previous span)
        self.new_blocks = []  # per level: list of arrays, block c holds x + c*g
        self.old = []
        current = np.array([T.zero])
        for g in T.generators:
            g = int(g)
            if span[g]:
                continue
            t = len(gens)
            gens.append(g)
            blocks, mult, c = [], g, 1
            while not span[mult]:
                block = T.add[current, mult].astype(np.int64)
                blocks.append(block)
                self.level[block] = t
                self.base[block] = current
                self.coef[block] = c
                mult = T.add[mult, g]
                c += 1
            self.relation.append((c, int(mult)))
            self.old.append(current)
            self.new_blocks.append(blocks)
            for b in blocks:
                span[b] = True
            current = np.concatenate([current] + blocks)
        if not span.all():
            raise ValueError(f"generators of {T.name} do not span it additively")
        self.gens = gens
        self.schedule = [[] for _ in gens]
        for a, b in itertools.product(range(len(gens)), repeat=2):
            p = int(T.mul[gens[a], gens[b]])
            self.schedule[max(a, b, int(self.level[p]))].append((a, b, p))
        self.one_level = max(int(self.level[T.one]), 0)


def oracle_isomorphic(t1: FiniteRingTable, t2: FiniteRingTable, use_invariants: bool = True,
                      limit: int = DEFAULT_LIMIT, deterministic: bool = True) -> OracleResult:
    """Decide T1 ~ T2 as unital rings by exhaustive backtracking.

    Images of T1's additive generators are assigned one at a time.  A
    candidate must match the generator's additive order, idempotency and
    square-zero status; the induced additive map must respect the order
    relation, stay injective, send 1 to 1 and be multiplicative on every
    pair of generators whose product already lies in the assigned span.
    Candidates are tried in index order, so the witness found is the
    lexicographically first one.  ``use_invariants`` enables the fingerprint
    shortcut and stronger per-element filters; without it the search runs
    to exhaustion.  The search is single-threaded, hence ``deterministic``
    is always honoured.
    """
    del deterministic
    if max(t1.size, t2.size) > limit:
        raise TooLarge(max(t1.size, t2.size), limit)
    if t1.size != t2.size:
        return OracleResult(False, method="size")
    if use_invariants and fingerprint(t1) != fingerprint(t2):
        return OracleResult(False, method="fingerprint")

    plan = _Plan(t1)
    sig1 = _element_signature(t1, use_invariants)
    sig2 = _element_signature(t2, use_invariants)
    candidates = []
    for g in plan.gens:
        candidates.append(np.flatnonzero((sig2 == sig1[g]).all(axis=1)))

    phi = np.full(t1.size, -1, dtype=np.int64)
    phi[t1.zero] = t2.zero
    used = np.zeros(t2.size, dtype=bool)
    used[t2.zero] = True
    images = [0] * len(plan.gens)
    add2, mul2 = t2.add, t2.mul
    nodes = 0

    def value(x, mults):
        # phi(x) for x possibly entering at the current level
        return phi[x] if phi[x] >= 0 else int(add2[phi[plan.base[x]], mults[plan.coef[x]]])

    def search(t):
        nonlocal nodes
        if t == len(plan.gens):
            return True
        c0, rel = plan.relation[t]
        old = plan.old[t]
        for h in candidates[t]:
            h = int(h)
            if used[h]:
                continue
            nodes += 1
            mults = [t2.zero, h]
            for _ in range(c0 - 1):
                mults.append(int(add2[mults[-1], h]))
            if mults[c0] != phi[rel] or any(used[mults[c]] for c in range(1, c0)):
                continue
            images[t] = h
            if any(value(p, mults) != mul2[images[a], images[b]] for a, b, p in plan.schedule[t]):
                continue
            if plan.one_level == t and value(t1.one, mults) != t2.one:
                continue
            new_dom = plan.new_blocks[t]
            new_img = [add2[phi[old], mults[c]].astype(np.int64) for c in range(1, c0)]
            img = np.concatenate(new_img)
            if used[img].any() or len(np.unique(img)) != len(img):
                continue
            for block, im in zip(new_dom, new_img):
                phi[block] = im
            used[img] = True
            if search(t + 1):
                return True
            for block in new_dom:
                phi[block] = -1
            used[img] = False
        return False

    found = search(0)
    if not found:
        return OracleResult(False, None, nodes)
    witness = phi.copy()
    if not verify_isomorphism(t1, t2, witness):
        raise AssertionError("search produced a map that is not a ring isomorphism")
    return OracleResult(True, witness, nodes)


def verify_isomorphism(t1: FiniteRingTable, t2: FiniteRingTable, phi) -> bool:
    """Exhaustive post-hoc check: bijective, additive, multiplicative, unital."""
    phi = np.asarray(phi, dtype=np.int64)
    if t1.size != t2.size or phi.shape != (t1.size,):
        return False
    if (phi < 0).any() or len(np.unique(phi)) != t1.size:
        return False
    if phi[t1.one] != t2.one:
        return False
    step = max(1, (1 << 22) // t1.size)
    for start in range(0, t1.size, step):
        rows = phi[start:start + step]
        if not (phi[t1.add[start:start + step]] == t2.add[np.ix_(rows, phi)]).all():
            return False
        if not (phi[t1.mul[start:start + step]] == t2.mul[np.ix_(rows, phi)]).all():
            return False
    return True


def transport_map(t1: FiniteRingTable, t2: FiniteRingTable, tau: Permutation) -> np.ndarray:
    """Element map of A -> tau A between two materialized formal matrix rings."""
    n = t1.matrix_order
    mats = t1.labels.reshape(t1.size, n, n)
    moved = transport(tau, mats).reshape(t1.size, n * n)
    weights = t2.modulus ** np.arange(n * n - 1, -1, -1, dtype=np.int64)
    return moved @ weights
