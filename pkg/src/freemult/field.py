"""Coefficient fields: the rationals and prime fields GF(p).

Elements are plain Python objects: ``Fraction`` over Q and ``int`` in
``range(p)`` over GF(p).  A :class:`Field` instance carries the arithmetic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Scalar = Union[int, Fraction]


class FieldError(ValueError):
    """Bad field description or an element that does not belong to the field."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


@dataclass(frozen=True)
class Field:
    """The rationals (``p == 0``) or the prime field of order ``p``."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and not is_prime(self.p):
            raise FieldError(f"{self.p} is not prime")

    @classmethod
    def parse(cls, text: str) -> "Field":
        """Parse ``"Q"`` or ``"Fp:7"``."""
        text = text.strip()
        if text in ("Q", "QQ"):
            return cls(0)
        match = re.fullmatch(r"(?:Fp|GF|F):?(\d+)", text)
        if not match:
            raise FieldError(f"unrecognised field {text!r}; use 'Q' or 'Fp:<prime>'")
        return cls(int(match.group(1)))

    def __str__(self) -> str:
        return "Q" if self.p == 0 else f"Fp:{self.p}"

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    @property
    def characteristic(self) -> int:
        return self.p

    # -- elements ---------------------------------------------------------
    @property
    def zero(self):
        return Fraction(0) if self.p == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.p == 0 else 1

    def __call__(self, value) -> Scalar:
        """Coerce an int, Fraction or string such as ``"-3/4"`` into the field."""
        if isinstance(value, str):
            try:
                value = Fraction(value.strip())
            except ValueError as exc:
                raise FieldError(f"not a field element: {value!r}") from exc
        if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
            raise FieldError(f"not a field element: {value!r}")
        if self.p == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            den = value.denominator % self.p
            if den == 0:
                raise FieldError(f"{value} has denominator divisible by {self.p}")
            return value.numerator * pow(den, -1, self.p) % self.p
        return value % self.p

    def add(self, a, b):
        return a + b if self.p == 0 else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p == 0 else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p == 0 else (a * b) % self.p

    def neg(self, a):
        return -a if self.p == 0 else (-a) % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a if self.p == 0 else pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k: int):
        if k < 0:
            return self.pow(self.inv(a), -k)
        return a**k if self.p == 0 else pow(a, k, self.p)

    def elements(self):
        """All elements of a prime field, in order ``0, 1, ..., p-1``."""
        if self.p == 0:
            raise FieldError("Q is infinite")
        return range(self.p)

    def order(self, a) -> int | None:
        """Multiplicative order of ``a``, or ``None`` if it is not a root of unity.

        Over Q the only roots of unity are 1 and -1.
        """
        if not a:
            raise FieldError("zero has no multiplicative order")
        if self.p == 0:
            if a == 1:
                return 1
            if a == -1:
                return 2
            return None
        k, power = 1, a
        while power != 1:
            power = power * a % self.p
            k += 1
        return k

    # -- display ----------------------------------------------------------
    def signed(self, a) -> Scalar:
        """Representative used for printing: symmetric residues over GF(p)."""
        if self.p == 0:
            return a
        return a - self.p if a > self.p // 2 else a

    def format(self, a) -> str:
        return str(self.signed(a))

    def to_json(self, a):
        a = self.signed(a)
        if isinstance(a, Fraction):
            return a.numerator if a.denominator == 1 else str(a)
        return a


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)
