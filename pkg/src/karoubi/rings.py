"""Exact coefficient rings: the rationals, prime fields and the integers.

Only fields support splitting and solving; :class:`Integers` exists so that
those operations can refuse it with :class:`UnsupportedRingError`.
"""
from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

from .errors import PreconditionError, UnsupportedRingError


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def _is_prime(n: int) -> bool:
    """Miller-Rabin with fixed bases; deterministic below 3.3e24."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class ExactRing:
    """Element arithmetic for one ring. Instances are immutable and hashable."""

    tag: str = ""
    is_field: bool = True

    zero = 0
    one = 1

    def coerce(self, x):
        raise NotImplementedError

    def add(self, x, y):
        return self.coerce(x + y)

    def sub(self, x, y):
        return self.coerce(x - y)

    def mul(self, x, y):
        return self.coerce(x * y)

    def neg(self, x):
        return self.coerce(-x)

    def inv(self, x):
        raise NotImplementedError

    def random_element(self, rng: random.Random):
        raise NotImplementedError

    def entry_to_json(self, x):
        return x

    def entry_from_json(self, x):
        return self.coerce(x)

    def require_field(self, what: str = "this operation") -> None:
        if not self.is_field:
            raise UnsupportedRingError(f"{what} requires a field, got {self}")

    def __eq__(self, other):
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        return hash((type(self).__name__, self._key()))

    def _key(self):
        return ()


class PrimeField(ExactRing):
    """The field of integers modulo a prime ``p``; elements are ints in ``[0, p)``."""

    tag = "fp"

    def __init__(self, p: int):
        if not _is_prime(int(p)):
            raise PreconditionError(f"{p} is not prime")
        self.p = int(p)

    def _key(self):
        return (self.p,)

    def coerce(self, x):
        if isinstance(x, Fraction):
            if x.denominator == 1:
                return int(x.numerator) % self.p
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, str):
            return self.coerce(Fraction(x))
        return int(x) % self.p

    def add(self, x, y):
        return (x + y) % self.p

    def sub(self, x, y):
        return (x - y) % self.p

    def mul(self, x, y):
        return (x * y) % self.p

    def neg(self, x):
        return (-x) % self.p

    def inv(self, x):
        if x % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def random_element(self, rng):
        return rng.randrange(self.p)

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __str__(self):
        return f"F_{self.p}"


class Rationals(ExactRing):
    """The field of rationals, elements are :class:`fractions.Fraction`."""

    tag = "q"
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x):
        return Fraction(x)

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(x)

    def random_element(self, rng):
        return Fraction(rng.randint(-3, 3), rng.randint(1, 3))

    def entry_to_json(self, x):
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def __repr__(self):
        return "Rationals()"

    def __str__(self):
        return "Q"


class Integers(ExactRing):
    """The integers. Representable, but not a field."""

    tag = "z"
    is_field = False

    def coerce(self, x):
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise PreconditionError(f"{x} is not an integer")
            return int(x.numerator)
        return int(x)

    def inv(self, x):
        if x in (1, -1):
            return x
        raise UnsupportedRingError(f"{x} is not a unit in Z")

    def random_element(self, rng):
        return rng.randint(-3, 3)

    def __repr__(self):
        return "Integers()"

    def __str__(self):
        return "Z"


@lru_cache(maxsize=None)
def q() -> Rationals:
    return Rationals()


@lru_cache(maxsize=None)
def fp(p: int) -> PrimeField:
    return PrimeField(p)


def ring_from_tag(tag: str) -> ExactRing:
    """Parse ``"q"``, ``"z"`` or ``"fpP"`` (e.g. ``"fp5"``)."""
    tag = tag.strip().lower()
    if tag == "q":
        return q()
    if tag == "z":
        return Integers()
    if tag.startswith("fp") and tag[2:].isdigit():
        return fp(int(tag[2:]))
    raise PreconditionError(f"unknown ring {tag!r}; expected q, z or fpP")


def ring_tag(ring: ExactRing) -> str:
    if isinstance(ring, PrimeField):
        return f"fp{ring.p}"
    return ring.tag
