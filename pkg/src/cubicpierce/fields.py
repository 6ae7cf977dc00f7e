"""Exact coefficient fields: the rationals and the integers modulo a prime.

Elements of QQ are plain :class:`fractions.Fraction` values.  Elements of a
prime field are :class:`Fp` instances, which support the usual arithmetic
operators so that determinant and group-law code is written once for both.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Iterator, Union

from .errors import UsageError

Scalar = Union[Fraction, "Fp"]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class Fp:
    """Residue class modulo a prime ``p``."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other) -> "Fp":
        if isinstance(other, Fp):
            if other.p != self.p:
                raise UsageError(f"mixed prime fields F_{self.p} and F_{other.p}")
            return other
        if isinstance(other, int):
            return Fp(other, self.p)
        if isinstance(other, Fraction):
            return Fp(other.numerator, self.p) / Fp(other.denominator, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.value + o.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.value - o.value, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o.value - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.value * o.value, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.value == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return Fp(self.value * pow(o.value, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __neg__(self):
        return Fp(-self.value, self.p)

    def __pow__(self, k: int):
        if k < 0:
            return Fp(1, self.p) / Fp(pow(self.value, -k, self.p), self.p)
        return Fp(pow(self.value, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.p})"

    def __str__(self):
        return str(self.value)


class RationalField:
    """The field QQ; elements are ``Fraction``."""

    characteristic = 0
    kind = "rational"

    def __call__(self, x) -> Fraction:
        if isinstance(x, Fp):
            raise UsageError("cannot coerce a prime-field element into QQ")
        return Fraction(x)

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    @property
    def name(self) -> str:
        return "rational"

    def contains(self, x) -> bool:
        return isinstance(x, (Fraction, int)) and not isinstance(x, bool)

    def sqrt(self, a) -> list[Fraction]:
        """Rational square roots of ``a`` (empty if ``a`` is not a rational square)."""
        a = Fraction(a)
        if a < 0:
            return []
        if a == 0:
            return [Fraction(0)]
        rn, rd = isqrt(a.numerator), isqrt(a.denominator)
        if rn * rn != a.numerator or rd * rd != a.denominator:
            return []
        r = Fraction(rn, rd)
        return [r, -r]

    def elements(self) -> Iterator[Fraction]:
        raise UsageError("QQ is infinite; cannot enumerate its elements")

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """The field F_p for a prime ``p``; elements are :class:`Fp`."""

    kind = "prime"

    def __init__(self, p: int):
        if not is_prime(p):
            raise UsageError(f"{p} is not prime")
        self.p = p

    @property
    def characteristic(self) -> int:
        return self.p

    def __call__(self, x) -> Fp:
        if isinstance(x, Fp):
            if x.p != self.p:
                raise UsageError(f"element of F_{x.p} used in F_{self.p}")
            return x
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            return Fp(x.numerator, self.p) / Fp(x.denominator, self.p)
        return Fp(int(x), self.p)

    @property
    def zero(self) -> Fp:
        return Fp(0, self.p)

    @property
    def one(self) -> Fp:
        return Fp(1, self.p)

    @property
    def name(self) -> str:
        return f"fp:{self.p}"

    def contains(self, x) -> bool:
        return isinstance(x, Fp) and x.p == self.p

    def elements(self) -> Iterator[Fp]:
        return (Fp(v, self.p) for v in range(self.p))

    def sqrt(self, a) -> list[Fp]:
        a = self(a)
        if a.value == 0:
            return [self.zero]
        if self.p == 2:
            return [a]
        if pow(a.value, (self.p - 1) // 2, self.p) != 1:
            return []
        # small fields only: a linear scan is plenty
        r = next(v for v in range(1, self.p) if v * v % self.p == a.value)
        return sorted({Fp(r, self.p), Fp(-r, self.p)}, key=int)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


def parse_field(name: str) -> RationalField | PrimeField:
    """Parse the document spelling ``"rational"`` or ``"fp:<p>"``."""
    if name == "rational":
        return QQ
    if name.startswith("fp:"):
        try:
            return PrimeField(int(name[3:]))
        except ValueError as exc:
            raise UsageError(f"bad field {name!r}: {exc}") from None
    raise UsageError(f"unknown field {name!r}")
