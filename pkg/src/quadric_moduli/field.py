"""Exact base fields: prime fields GF(p) and the rational numbers.

Field elements are stored as plain canonical values (ints in [0, p) for
GF(p), `fractions.Fraction` for the rationals) and all arithmetic goes
through the field object.  Keeping elements unboxed makes the exhaustive
sweeps cheap; a "field scalar" in the rest of the package always means a
canonical value together with the field object that owns it.
"""

from __future__ import annotations

from fractions import Fraction


def is_prime(n: int) -> bool:
    """Trial-division primality check, adequate for the small moduli used here."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """The field with p elements, p prime.  Elements are ints reduced to [0, p)."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"characteristic must be prime, got {p}")
        self.p = p

    @property
    def char(self) -> int:
        return self.p

    def canon(self, x) -> int:
        """Canonical representative of an integral value."""
        value = int(x)
        if value != x:
            raise TypeError(f"{x!r} is not integral, cannot reduce mod {self.p}")
        return value % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        # Fermat: a^(p-2) = a^(-1) for prime p.
        return pow(a, self.p - 2, self.p)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def elements(self) -> range:
        return range(self.p)

    def random(self, rng) -> int:
        return rng.randrange(self.p)

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    def __repr__(self) -> str:
        return f"GF({self.p})"


class RationalField:
    """The rationals with exact Fraction arithmetic; characteristic 0."""

    __slots__ = ()

    @property
    def char(self) -> int:
        return 0

    def canon(self, x) -> Fraction:
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return Fraction(1) / a

    def div(self, a, b):
        return self.mul(a, self.inv(self.canon(b)))

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def elements(self):
        raise TypeError("the rationals are not enumerable")

    def random(self, rng, bound: int = 5) -> Fraction:
        num = rng.randrange(-bound, bound + 1)
        den = rng.randrange(1, bound + 1)
        return Fraction(num, den)

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("RationalField")

    def __repr__(self) -> str:
        return "QQ"


QQ = RationalField()

_GF_CACHE: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    """Return the (cached) prime field with p elements."""
    field = _GF_CACHE.get(p)
    if field is None:
        field = _GF_CACHE[p] = PrimeField(p)
    return field


def field_by_char(char: int):
    """Field from its characteristic as used in serialized data (0 = rationals)."""
    return QQ if char == 0 else GF(char)
