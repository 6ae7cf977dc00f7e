"""Chord-tangent group law on nonsingular cubics ``y^2 = x^3 + a x + b``.

Three points of the curve are collinear exactly when they sum to the
identity ``O`` (the point at infinity ``(0:1:0)``); a tangent line counts its
point of tangency twice.  The curve object doubles as the group, so curve
points can be fed straight into the set operations of :mod:`abelian`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .abelian import DEFAULT_CLOSURE_CAP, AbelianGroup, fraction_str
from .errors import InfiniteGroupError, UnsupportedError, UsageError
from .fields import QQ, Fp, PrimeField, RationalField
from .plane import ProjLine, ProjPoint

# Mazur: a rational torsion point has order at most 12.
MAX_RATIONAL_TORSION_ORDER = 12
ENUMERATION_BOUND = 10_000


@dataclass(frozen=True)
class ECPoint:
    """Affine point ``(x, y)``; both coordinates ``None`` encode the identity ``O``."""

    x: object = None
    y: object = None

    @property
    def is_identity(self) -> bool:
        return self.x is None

    def __repr__(self):
        if self.is_identity:
            return "O"
        return f"({self.x}, {self.y})"


O = ECPoint()


def _key(v):
    return int(v) if isinstance(v, Fp) else v


class WeierstrassCurve(AbelianGroup):
    def __init__(self, a, b, field: RationalField | PrimeField = QQ):
        if field.characteristic in (2, 3):
            raise UsageError("short Weierstrass form needs characteristic other than 2 and 3")
        self.field = field
        self.a = field(a)
        self.b = field(b)
        if 4 * self.a**3 + 27 * self.b**2 == 0:
            raise UsageError(f"y^2 = x^3 + {self.a}x + {self.b} is singular")

    # -- group protocol -----------------------------------------------------

    @property
    def finite(self) -> bool:
        return isinstance(self.field, PrimeField)

    @property
    def name(self) -> str:
        over = "Q" if self.field == QQ else f"F{self.field.p}"
        return f"E(y^2=x^3+{self.a}x+{self.b} over {over})"

    @property
    def zero(self):
        return O

    def rhs(self, x):
        return x**3 + self.a * x + self.b

    def is_on(self, p: ECPoint) -> bool:
        if p.is_identity:
            return True
        if not (self.field.contains(p.x) and self.field.contains(p.y)):
            return False
        return p.y * p.y == self.rhs(p.x)

    def point(self, x, y) -> ECPoint:
        p = ECPoint(self.field(x), self.field(y))
        if not self.is_on(p):
            raise UsageError(f"{p!r} is not on {self.name}")
        return p

    def element(self, raw):
        if isinstance(raw, ECPoint):
            if not self.is_on(raw):
                raise UsageError(f"{raw!r} is not on {self.name}")
            return raw
        if raw == "O" or raw is None:
            return O
        if isinstance(raw, dict):
            return self.point(raw["x"], raw["y"])
        x, y = raw
        return self.point(x, y)

    def _check(self, *pts):
        for p in pts:
            if not isinstance(p, ECPoint) or not self.is_on(p):
                raise UsageError(f"{p!r} is not a point of {self.name}")

    def neg(self, p: ECPoint) -> ECPoint:
        self._check(p)
        return p if p.is_identity else ECPoint(p.x, -p.y)

    def add(self, p: ECPoint, q: ECPoint) -> ECPoint:
        self._check(p, q)
        if p.is_identity:
            return q
        if q.is_identity:
            return p
        if p.x == q.x:
            if p.y != q.y or p.y == 0:
                return O  # vertical chord or vertical tangent
            slope = (3 * p.x * p.x + self.a) / (2 * p.y)
        else:
            slope = (q.y - p.y) / (q.x - p.x)
        x3 = slope * slope - p.x - q.x
        y3 = slope * (p.x - x3) - p.y
        return ECPoint(x3, y3)

    def sort_key(self, p):
        if p.is_identity:
            return (0, 0, 0)
        return (1, _key(p.x), _key(p.y))

    # -- chord/tangent third points ----------------------------------------

    def chord_third(self, p: ECPoint, q: ECPoint) -> ECPoint:
        """The third intersection ``r`` of line ``pq`` with the curve: ``p + q + r = O``."""
        return self.neg(self.add(p, q))

    def tangent_third(self, p: ECPoint) -> ECPoint:
        """Where the tangent at ``p`` meets the curve again (``p`` itself at a flex)."""
        return self.chord_third(p, p)

    # -- enumeration and subgroups -------------------------------------------

    def elements(self) -> list:
        return self.enumerate_points()

    def enumerate_points(self, bound: int = ENUMERATION_BOUND) -> list:
        """All points including ``O``, by a quadratic-residue sweep over ``x``."""
        if not self.finite:
            raise UnsupportedError("point enumeration is only available over prime fields")
        if self.field.p > bound:
            raise UnsupportedError(f"p = {self.field.p} exceeds the enumeration bound {bound}")
        pts = [O]
        for x in self.field.elements():
            for y in self.field.sqrt(self.rhs(x)):
                pts.append(ECPoint(x, y))
        return pts

    @property
    def order(self) -> int:
        return len(self.enumerate_points())

    def two_torsion(self) -> list:
        if self.finite:
            roots = [x for x in self.field.elements() if self.rhs(x) == 0]
        else:
            roots = _rational_roots([self.b, self.a, Fraction(0), Fraction(1)])
        return [O] + [ECPoint(x, self.field.zero) for x in roots]

    def doubling_constant(self) -> int:
        return len(self.two_torsion())

    def point_order(self, p: ECPoint, cap: int) -> int:
        acc, k = p, 1
        while not acc.is_identity:
            acc = self.add(acc, p)
            k += 1
            if k > cap:
                raise InfiniteGroupError(f"order of {p!r} exceeds {cap}")
        return k

    def generated_subgroup(self, gens, cap: int = DEFAULT_CLOSURE_CAP) -> frozenset:
        gens = list(gens)
        self._check(*gens)
        if not self.finite:
            for g in gens:
                self.point_order(g, MAX_RATIONAL_TORSION_ORDER)
        return super().generated_subgroup(gens, cap)

    def subgroup_generated(self, points, cap: int = DEFAULT_CLOSURE_CAP) -> frozenset:
        return self.generated_subgroup(points, cap)

    # -- geometry ------------------------------------------------------------

    def to_proj(self, p: ECPoint) -> ProjPoint:
        if p.is_identity:
            return ProjPoint(0, 1, 0, self.field)
        return ProjPoint(p.x, p.y, 1, self.field)

    def from_proj(self, a: ProjPoint) -> ECPoint:
        if a.field != self.field:
            raise UsageError("point and curve live over different fields")
        if a.at_infinity:
            if a == ProjPoint(0, 1, 0, self.field):
                return O
            raise UsageError(f"{a!r} is not on {self.name}")
        x, y = a.to_affine()
        return self.point(x, y)

    def tangent_line(self, p: ECPoint) -> ProjLine:
        self._check(p)
        if p.is_identity:
            return ProjLine(0, 0, 1, self.field)  # O is a flex with the line at infinity as tangent
        if p.y == 0:
            return ProjLine(1, 0, -p.x, self.field)
        m = (3 * p.x * p.x + self.a) / (2 * p.y)
        return ProjLine(m, -1, p.y - m * p.x, self.field)

    def contains_proj(self, a: ProjPoint) -> bool:
        try:
            self.from_proj(a)
        except UsageError:
            return False
        return True

    def tangent_count_through(self, a: ProjPoint | ECPoint) -> int:
        """Number of curve points whose tangent line passes through ``a``.

        For ``a`` on the curve this is the number of solutions of
        ``x + x = -a`` (the tangent at ``x`` meets the curve again at ``a``).
        Off the curve the tangents are tested geometrically, which needs a
        prime field.
        """
        if isinstance(a, ProjPoint) and self.contains_proj(a):
            a = self.from_proj(a)
        if isinstance(a, ECPoint):
            self._check(a)
            return len(self.halves(self.neg(a)))
        if not self.finite:
            raise UnsupportedError("off-curve tangent counts need a prime field")
        return sum(1 for x in self.enumerate_points() if self.tangent_line(x).contains(a))

    def halves(self, c: ECPoint) -> list:
        """All ``x`` with ``x + x = c``."""
        self._check(c)
        if self.finite:
            return [x for x in self.enumerate_points() if self.add(x, x) == c]
        if c.is_identity:
            return self.two_torsion()
        xc = c.x
        # x-coordinate of 2P equals xc: x^4 - 2a x^2 - 8b x + a^2 = 4 xc (x^3 + a x + b)
        a, b = self.a, self.b
        quartic = [a * a - 4 * b * xc, -8 * b - 4 * a * xc, -2 * a, -4 * xc, Fraction(1)]
        out = []
        for x in _rational_roots(quartic):
            for y in self.field.sqrt(self.rhs(x)):
                p = ECPoint(x, y)
                if self.add(p, p) == c:
                    out.append(p)
        return out

    def encode(self, p):
        if p.is_identity:
            return "O"
        enc = (lambda v: str(int(v))) if self.finite else fraction_str
        return {"x": enc(p.x), "y": enc(p.y)}

    def __eq__(self, other):
        return (
            isinstance(other, WeierstrassCurve)
            and other.field == self.field
            and (other.a, other.b) == (self.a, self.b)
        )

    def __hash__(self):
        return hash(("EC", self.field, self.a, self.b))

    def __repr__(self):
        return f"WeierstrassCurve({self.a}, {self.b}, {self.field!r})"


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _rational_roots(coeffs) -> list[Fraction]:
    """Distinct rational roots of ``sum coeffs[i] x^i`` (rational root theorem)."""
    coeffs = [Fraction(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    roots = set()
    while len(coeffs) > 1 and coeffs[0] == 0:
        roots.add(Fraction(0))
        coeffs = coeffs[1:]
    if len(coeffs) <= 1:
        return sorted(roots)
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]

    def value(x):
        return sum(c * x**i for i, c in enumerate(ints))

    for p in _divisors(ints[0]):
        for q in _divisors(ints[-1]):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if value(cand) == 0:
                    roots.add(cand)
    return sorted(roots)
