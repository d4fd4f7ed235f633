"""Exact arithmetic in the commutative coefficient ring (Z or Z/mZ)."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import MixedRings

INTEGERS = "integers"
MODULAR = "modular"


def radical_of(m: int) -> int:
    """Product of the distinct primes dividing ``m``."""
    rad, p, rest = 1, 2, m
    while p * p <= rest:
        if rest % p == 0:
            rad *= p
            while rest % p == 0:
                rest //= p
        p += 1
    if rest > 1:
        rad *= rest
    return rad


@dataclass(frozen=True)
class BaseRing:
    kind: str = INTEGERS
    modulus: int | None = None

    def __post_init__(self):
        if self.kind == MODULAR:
            if self.modulus is None or self.modulus < 2:
                raise ValueError("modular ring needs modulus >= 2")
        elif self.kind == INTEGERS:
            if self.modulus is not None:
                raise ValueError("the integers take no modulus")
        else:
            raise ValueError(f"unknown ring kind {self.kind!r}")

    @classmethod
    def integers(cls) -> BaseRing:
        return cls(INTEGERS)

    @classmethod
    def mod(cls, m: int) -> BaseRing:
        return cls(MODULAR, int(m))

    @property
    def is_finite(self) -> bool:
        return self.kind == MODULAR

    @property
    def size(self) -> int | None:
        return self.modulus

    def reduce(self, value: int) -> int:
        value = int(value)
        return value % self.modulus if self.modulus else value

    def __call__(self, value: int) -> RingElement:
        return RingElement(self.reduce(value), self)

    def elements(self):
        if not self.is_finite:
            raise ValueError("the integers cannot be enumerated")
        return [RingElement(v, self) for v in range(self.modulus)]

    def __str__(self):
        return f"Z/{self.modulus}" if self.is_finite else "Z"

    def to_json(self) -> dict:
        if self.is_finite:
            return {"kind": MODULAR, "m": self.modulus}
        return {"kind": INTEGERS}

    @classmethod
    def from_json(cls, data: dict) -> BaseRing:
        kind = data.get("kind")
        if kind == MODULAR:
            return cls.mod(data["m"])
        if kind == INTEGERS:
            return cls.integers()
        raise ValueError(f"unknown ring kind {kind!r}")


@dataclass(frozen=True)
class RingElement:
    value: int
    ring: BaseRing

    def _coerce(self, other) -> int:
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise MixedRings(f"cannot combine elements of {self.ring} and {other.ring}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return self.ring(self.value + v)

    __radd__ = __add__

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return self.ring(self.value * v)

    __rmul__ = __mul__

    def __neg__(self):
        return self.ring(-self.value)

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return self.ring(self.value - v)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return self.ring(v - self.value)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        if self.ring.is_finite:
            return self.ring(pow(self.value, k, self.ring.modulus))
        return self.ring(self.value**k)

    def __eq__(self, other):
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise MixedRings(f"cannot compare elements of {self.ring} and {other.ring}")
            return self.value == other.value
        if isinstance(other, int):
            return self.value == self.ring.reduce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.ring))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} in {self.ring}"


def add(x: RingElement, y: RingElement) -> RingElement:
    return x + y


def mul(x: RingElement, y: RingElement) -> RingElement:
    return x * y


def neg(x: RingElement) -> RingElement:
    return -x


def _value_and_ring(x, ring):
    if isinstance(x, RingElement):
        return x.value, x.ring
    if ring is None:
        raise TypeError("a plain integer needs an explicit ring")
    return ring.reduce(x), ring


def is_unit(x, ring: BaseRing | None = None) -> bool:
    v, ring = _value_and_ring(x, ring)
    if ring.is_finite:
        return math.gcd(v, ring.modulus) == 1
    return v in (1, -1)


def is_nilpotent(x, ring: BaseRing | None = None) -> bool:
    v, ring = _value_and_ring(x, ring)
    if not ring.is_finite:
        return v == 0
    m = ring.modulus
    # x^k = 0 for some k forces x^ceil(log2 m) = 0
    p = v
    for _ in range(max(1, math.ceil(math.log2(m))) + 1):
        if p == 0:
            return True
        p = p * v % m
    return p == 0


def is_idempotent(x, ring: BaseRing | None = None) -> bool:
    v, ring = _value_and_ring(x, ring)
    return ring.reduce(v * v) == v


def nilradical(ring: BaseRing) -> frozenset:
    """Elements of the prime radical of ``ring`` (its nilpotents)."""
    if not ring.is_finite:
        return frozenset({ring(0)})
    step = radical_of(ring.modulus)
    return frozenset(ring(v) for v in range(0, ring.modulus, step))


def nilradical_generator(ring: BaseRing) -> RingElement:
    """The additive generator rad(m) of the nilradical of Z/m (0 for Z)."""
    if not ring.is_finite:
        return ring(0)
    return ring(radical_of(ring.modulus))


def residue_field_size(ring: BaseRing) -> int | None:
    """|R/P(R)| for finite R, i.e. rad(m)."""
    return radical_of(ring.modulus) if ring.is_finite else None


def indecomposable_mod_radical(ring: BaseRing) -> bool:
    """Whether R/P(R) has no central idempotents besides 0 and 1."""
    if not ring.is_finite:
        return True
    rad = radical_of(ring.modulus)
    # R/P(R) = Z/rad(m), a field exactly when rad(m) is prime
    return rad > 1 and all(rad % p for p in range(2, math.isqrt(rad) + 1))
