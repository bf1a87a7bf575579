"""Exact scalar arithmetic: the rationals and prime fields F_p.

Elements of F_p are plain Python ints canonicalized to [0, p); rational
elements are `fractions.Fraction`.  A `Field` instance carries the
arithmetic and the string form used in all JSON interchange.
"""
from __future__ import annotations

from fractions import Fraction

RATIONALS = "rationals"
PRIME = "prime"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """A field of scalars: the rationals, or F_p for a prime p."""

    __slots__ = ("kind", "p", "zero", "one")

    def __init__(self, kind: str, p: int | None = None):
        if kind == RATIONALS:
            if p is not None:
                raise ValueError("rationals take no modulus")
            self.zero = Fraction(0)
            self.one = Fraction(1)
        elif kind == PRIME:
            if p is None or p < 2 or not is_prime(p):
                raise ValueError(f"modulus must be prime, got {p!r}")
            self.zero = 0
            self.one = 1
        else:
            raise ValueError(f"unknown field kind {kind!r}")
        self.kind = kind
        self.p = p

    @classmethod
    def rationals(cls) -> "Field":
        return cls(RATIONALS)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(PRIME, p)

    @property
    def is_prime_field(self) -> bool:
        return self.kind == PRIME

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.p else a * b

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(a, self.p - 2, self.p)
        return Fraction(1) / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def of_int(self, n: int):
        return n % self.p if self.p else Fraction(n)

    def parse(self, s: str):
        """Parse the interchange form: "n" or "n/d" (rationals), "n" (F_p)."""
        if self.p:
            v = int(s)
            if not 0 <= v < self.p:
                raise ValueError(f"element {s!r} out of range for F_{self.p}")
            return v
        return Fraction(s)

    def to_str(self, a) -> str:
        if self.p:
            return str(a)
        return f"{a.numerator}/{a.denominator}"

    def __eq__(self, other):
        return isinstance(other, Field) and self.kind == other.kind and self.p == other.p

    def __hash__(self):
        return hash((self.kind, self.p))

    def __repr__(self):
        return "Field(Q)" if not self.p else f"Field(F_{self.p})"
