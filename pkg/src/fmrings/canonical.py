"""Block canonical forms of principal factor matrices and the (s1)-ring
isomorphism decision built on them."""

from __future__ import annotations

import enum
import itertools
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .errors import HypothesisViolated, MixedRings, NotBinary, NotTransitive
from .factors import (
    FactorSystem,
    Permutation,
    _scalar,
    binary_value,
    invertible_factors,
    is_binary,
    permute,
    permute_matrix,
    principal_matrix,
)
from .ring import BaseRing, indecomposable_mod_radical, is_nilpotent, is_unit


def _require_one_or_nonunit(sys: FactorSystem):
    bad = invertible_factors(sys)
    if bad:
        raise HypothesisViolated(
            "factors are 1 or non-invertible",
            f"s{''.join(map(str, bad[0]))} = {sys.table[tuple(i - 1 for i in bad[0])]} is a unit",
        )


@dataclass
class TrichotomyReport:
    census: dict
    unclassified: list

    @property
    def passed(self) -> bool:
        return not self.unclassified


def trichotomy_check(sys: FactorSystem) -> TrichotomyReport:
    """Sort every triple of distinct indices into one of three cases.

    For pairwise distinct i, j, k look at (s_iji, s_iki, s_jkj): case 1 all
    equal 1, case 2 exactly one equals 1, case 3 none equals 1.  A triple
    with exactly two 1s fits no case and is returned in ``unclassified``.
    """
    _require_one_or_nonunit(sys)
    S = principal_matrix(sys)
    one = sys.ring.reduce(1)
    census = Counter({1: 0, 2: 0, 3: 0})
    unclassified = []
    for i, j, k in itertools.combinations(range(sys.n), 3):
        ones = sum(v == one for v in (S[i, j], S[i, k], S[j, k]))
        case = {3: 1, 1: 2, 0: 3}.get(ones)
        if case is None:
            unclassified.append((i + 1, j + 1, k + 1))
        else:
            census[case] += 1
    return TrichotomyReport(dict(census), unclassified)


@dataclass(frozen=True)
class EquivalencePartition:
    classes: tuple  # tuples of 1-based indices, each sorted, ordered by smallest member

    @property
    def n(self) -> int:
        return sum(len(c) for c in self.classes)

    def class_of(self) -> tuple:
        labels = [0] * self.n
        for label, block in enumerate(self.classes, start=1):
            for i in block:
                labels[i - 1] = label
        return tuple(labels)

    def sizes(self) -> list:
        return [len(c) for c in self.classes]


def similarity_partition(sys: FactorSystem) -> EquivalencePartition:
    """Classes of the relation i ~ j  <=>  s_iji = 1."""
    _require_one_or_nonunit(sys)
    S = principal_matrix(sys)
    one = sys.ring.reduce(1)
    n = sys.n
    related = [frozenset(j for j in range(n) if S[i, j] == one) for i in range(n)]
    for i in range(n):
        for j in related[i]:
            if related[j] != related[i]:
                k = next(iter(related[i] ^ related[j]))
                raise NotTransitive(i + 1, j + 1, k + 1)
    classes = sorted({tuple(sorted(c + 1 for c in r)) for r in related})
    return EquivalencePartition(tuple(classes))


@dataclass(frozen=True)
class CanonicalDescriptor:
    s: int | None
    block_sizes: tuple  # descending

    def __str__(self):
        return f"blocks {list(self.block_sizes)}, s = {self.s}"


@dataclass(frozen=True)
class CanonicalForm:
    tau: Permutation
    descriptor: CanonicalDescriptor
    canonical_S: np.ndarray = field(repr=False)
    partition: EquivalencePartition = field(repr=False)


def _binary_scalar(sys: FactorSystem, s):
    if s is None:
        return binary_value(sys)
    sv = _scalar(sys.ring, s)
    if not is_binary(sys, sv):
        raise NotBinary(f"factor values {sorted(sys.values())} are not in {{1, {sv}}}")
    return sv


def canonicalize(sys: FactorSystem, s=None) -> CanonicalForm:
    """Permute indices so that tau S has all-1 diagonal blocks and s elsewhere.

    Blocks are laid out by decreasing size, ties broken by the smallest
    original index; indices inside a block stay ascending.  ``s`` defaults
    to the system's non-identity value (or its recorded ``s``).
    """
    sv = _binary_scalar(sys, s)
    if sv is not None and is_unit(sv, sys.ring):
        raise HypothesisViolated("s non-invertible", f"s = {sv} is a unit of {sys.ring}")
    part = similarity_partition(sys)
    blocks = sorted(part.classes, key=lambda c: (-len(c), c[0]))
    tau = Permutation(tuple(i for block in blocks for i in block))
    desc = CanonicalDescriptor(sv, tuple(len(b) for b in blocks))
    return CanonicalForm(tau, desc, permute_matrix(tau, principal_matrix(sys)), part)


def block_structure_ok(form: CanonicalForm, ring: BaseRing) -> bool:
    """Cell-by-cell: 1 inside diagonal blocks, s outside."""
    S = form.canonical_S
    owner = [b for b, size in enumerate(form.descriptor.block_sizes) for _ in range(size)]
    one = ring.reduce(1)
    for i, j in np.ndindex(S.shape):
        want = one if owner[i] == owner[j] else form.descriptor.s
        if S[i, j] != want:
            return False
    return True


def same_canonical_form(a: CanonicalDescriptor, b: CanonicalDescriptor) -> bool:
    return a.s == b.s and sorted(a.block_sizes) == sorted(b.block_sizes)


def transport_witness(a: FactorSystem, b: FactorSystem, hint: Permutation | None = None):
    """A permutation tau with permute(a, tau) == b, or ``None``.

    Backtracks over tau(1), tau(2), ... checking every table entry whose
    indices are already assigned.
    """
    if a.n != b.n or a.ring != b.ring:
        return None
    if hint is not None and permute(a, hint) == b:
        return hint
    n, ta, tb = a.n, a.table, b.table
    images: list[int] = []
    used = [False] * n

    def consistent(pos):
        for i, j, k in itertools.product(range(pos + 1), repeat=3):
            if pos in (i, j, k) and ta[images[i], images[j], images[k]] != tb[i, j, k]:
                return False
        return True

    def extend(pos):
        if pos == n:
            return True
        for cand in range(n):
            if used[cand]:
                continue
            images.append(cand)
            used[cand] = True
            if consistent(pos) and extend(pos + 1):
                return True
            images.pop()
            used[cand] = False
        return False

    if extend(0):
        tau = Permutation(tuple(i + 1 for i in images))
        return tau if permute(a, tau) == b else None
    return None


class Outcome(enum.Enum):
    ISOMORPHIC = "Isomorphic"
    NOT_ISOMORPHIC = "NotIsomorphic"
    INCONCLUSIVE = "Inconclusive"


@dataclass
class Hypothesis:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class IsoVerdict:
    outcome: Outcome
    hypotheses: list
    witness: Permutation | None = None
    reason: str = ""
    descriptors: tuple = ()

    def hypothesis(self, name: str) -> Hypothesis:
        return next(h for h in self.hypotheses if h.name == name)


PART1 = ("s in P(R)", "R/P(R) indecomposable", "(n,m)-condition")
PART2 = ("s^2 != 1", "s^2 != s")


def _hypotheses(ring: BaseRing, sv: int) -> list:
    sq = ring.reduce(sv * sv)
    return [
        Hypothesis(PART1[0], is_nilpotent(sv, ring), f"s = {sv}"),
        Hypothesis(PART1[1], indecomposable_mod_radical(ring), str(ring)),
        Hypothesis(PART1[2], True, "holds for every commutative ring"),
        Hypothesis(PART2[0], sq != ring.reduce(1), f"s^2 = {sq}"),
        Hypothesis(PART2[1], sq != sv, f"s^2 = {sq}"),
    ]


def _check_pair(ring, sv, a, b):
    for name, sys in (("first", a), ("second", b)):
        if sys.ring != ring:
            raise MixedRings(f"{name} system lives over {sys.ring}, not {ring}")
        if not is_binary(sys, sv):
            raise HypothesisViolated("binary", f"{name} system has values {sorted(sys.values())}")
    if a.n != b.n:
        raise HypothesisViolated("same order", f"{a.n} != {b.n}")


def decide_isomorphism(ring: BaseRing, s, sys_a: FactorSystem, sys_b: FactorSystem) -> IsoVerdict:
    """Decide M(n,R,Sigma_a) ~ M(n,R,Sigma_b) for binary {1, s} systems.

    Different canonical forms prove non-isomorphism once s is nilpotent and
    R/P(R) is indecomposable.  Equal forms give isomorphism when moreover
    s^2 is neither 1 nor s; the witness is an index permutation carrying one
    factor table onto the other.  Anything else is Inconclusive.
    """
    sv = _scalar(ring, s)
    _check_pair(ring, sv, sys_a, sys_b)
    n = sys_a.n

    if is_unit(sv, ring):
        hyps = [Hypothesis("s invertible", True, f"s = {sv}")]
        full = CanonicalDescriptor(sv, (n,))
        return IsoVerdict(Outcome.ISOMORPHIC, hyps, None,
                          "s is invertible: both rings are isomorphic to M(n,R)", (full, full))

    hyps = _hypotheses(ring, sv)
    part1 = all(h.passed for h in hyps if h.name in PART1)
    part2 = part1 and all(h.passed for h in hyps if h.name in PART2)
    fa, fb = canonicalize(sys_a, sv), canonicalize(sys_b, sv)
    descs = (fa.descriptor, fb.descriptor)
    failed = [h.name for h in hyps if not h.passed]

    if part1:
        hyps.append(Hypothesis("quotient-level equivalence available", True,
                               "K/P(K) isomorphic exactly when canonical forms agree"))

    if not same_canonical_form(*descs):
        if part1:
            return IsoVerdict(Outcome.NOT_ISOMORPHIC, hyps, None,
                              "canonical forms differ", descs)
        return IsoVerdict(Outcome.INCONCLUSIVE, hyps, None,
                          "canonical forms differ but hypotheses fail: " + ", ".join(failed), descs)

    if not part2:
        return IsoVerdict(Outcome.INCONCLUSIVE, hyps, None,
                          "canonical forms agree but hypotheses fail: " + ", ".join(failed), descs)

    hint = fb.tau.inverse().then(fa.tau)
    tau = transport_witness(sys_a, sys_b, hint)
    hyps.append(Hypothesis("factor tables agree after alignment", tau is not None,
                           "" if tau else "equal principal matrices, different factor tables"))
    if tau is None:
        return IsoVerdict(Outcome.INCONCLUSIVE, hyps, None,
                          "canonical forms agree but no index permutation matches the factor tables",
                          descs)
    return IsoVerdict(Outcome.ISOMORPHIC, hyps, tau, "canonical forms agree", descs)


def quotient_descriptor(ring: BaseRing, s, sys: FactorSystem) -> list:
    """Matrix orders n_i with K/P(K) ~ prod M(n_i, R/P(R)), read off the blocks."""
    sv = _scalar(ring, s)
    if not is_nilpotent(sv, ring):
        raise HypothesisViolated("s in P(R)", f"s = {sv} is not nilpotent in {ring}")
    return list(canonicalize(sys, sv).descriptor.block_sizes)
