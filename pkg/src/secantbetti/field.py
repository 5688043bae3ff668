"""Exact coefficient fields: prime fields F_p and the rationals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

DEFAULT_PRIME = 32003


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """A coefficient field.  ``characteristic == 0`` means the rationals.

    Elements of F_p are plain ints in ``range(p)``; elements of Q are
    :class:`fractions.Fraction`.
    """

    characteristic: int = DEFAULT_PRIME

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and not (2 < p < 2**31 and is_prime(p)):
            raise ValueError(f"characteristic must be 0 or an odd prime < 2^31, got {p}")

    @property
    def p(self) -> int:
        return self.characteristic

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    def __call__(self, c) -> int | Fraction:
        p = self.characteristic
        if p:
            if isinstance(c, Fraction):
                return c.numerator % p * pow(c.denominator % p, -1, p) % p
            return int(c) % p
        return Fraction(c)

    def zero(self):
        return 0 if self.characteristic else Fraction(0)

    def one(self):
        return 1 if self.characteristic else Fraction(1)

    def inv(self, c):
        p = self.characteristic
        if p:
            c %= p
            if c == 0:
                raise ZeroDivisionError("inverse of 0 in F_%d" % p)
            return pow(c, -1, p)
        if c == 0:
            raise ZeroDivisionError("inverse of 0 in Q")
        return 1 / Fraction(c)

    def add(self, a, b):
        return (a + b) % self.characteristic if self.characteristic else a + b

    def sub(self, a, b):
        return (a - b) % self.characteristic if self.characteristic else a - b

    def mul(self, a, b):
        return a * b % self.characteristic if self.characteristic else a * b

    def neg(self, a):
        return -a % self.characteristic if self.characteristic else -a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def signed(self, c) -> int | Fraction:
        """Symmetric representative, used when printing F_p elements."""
        p = self.characteristic
        if p:
            c %= p
            return c - p if c > p // 2 else c
        return c

    def __str__(self):
        return "QQ" if self.is_rational else f"GF({self.characteristic})"


QQ = Field(0)
GF32003 = Field(DEFAULT_PRIME)
