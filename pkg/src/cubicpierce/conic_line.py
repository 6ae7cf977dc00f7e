"""Group structure on a conic together with the line at infinity.

Canonical conics and parametrizations (the line is always ``Z = 0``):

* parabola ``y = x^2``: group (Q, +); ``phi_Q(t) = (t, t^2)``, chords through
  ``t1, t2`` have slope ``t1 + t2``, and ``phi_ell(z)`` is the direction of
  slope ``-z``.
* hyperbola ``xy = 1``: group (Q*, x); ``phi_Q(s) = (s, 1/s)``, chord slope
  ``-1/(s t)``, and ``phi_ell(z)`` is again the direction of slope ``-z``.
* ellipse, canonically the unit circle, in tan-half-angle coordinates:
  ``u = tan(pi t)`` for the point at angle ``2 pi t``.  The group law is
  tangent addition ``(u + v) / (1 - u v)`` with ``u = inf`` at ``(-1, 0)``;
  ``phi_ell(u)`` is the direction ``(u : 1 : 0)``.

With these choices ``x + y + z = 0`` holds exactly when ``phi_Q(x)``,
``phi_Q(y)`` and ``phi_ell(z)`` are collinear.

Points of a regular polygon are not rational, so circle configurations are
also handled through :class:`~cubicpierce.abelian.AngleElem`: the chord
through angles ``a`` and ``b`` (in turns) has direction class ``a + b`` mod 1,
which corresponds to the direction angle ``pi (a + b) + pi/2``.
"""

from __future__ import annotations

import enum
import math
import warnings
from fractions import Fraction

from .abelian import (
    DEFAULT_CLOSURE_CAP,
    AbelianGroup,
    AngleElem,
    RationalAdditiveGroup,
    RationalMultiplicativeGroup,
    fraction_str,
)
from .errors import DegenerateInputError, InfiniteGroupError, UsageError
from .plane import ProjPoint, collinear

#: Tan-half-angle coordinate of the point (-1, 0).
U_INF = None

DEFAULT_THETA = 1 / (2 * math.pi)


class ConicKind(enum.Enum):
    ELLIPSE = "ellipse"
    PARABOLA = "parabola"
    HYPERBOLA = "hyperbola"


class TanHalfGroup(AbelianGroup):
    """Rational points of the circle group in coordinates ``u = tan(pi t)``."""

    name = "circle(u)"

    @property
    def zero(self):
        return Fraction(0)

    def add(self, u, v):
        if u is U_INF and v is U_INF:
            return Fraction(0)
        if u is U_INF or v is U_INF:
            w = v if u is U_INF else u
            return U_INF if w == 0 else -1 / w
        d = 1 - u * v
        if d == 0:
            return U_INF
        return (u + v) / d

    def neg(self, u):
        return U_INF if u is U_INF else -u

    def element(self, raw):
        if raw is U_INF or raw == "inf":
            return U_INF
        if isinstance(raw, bool):
            raise UsageError("booleans are not rationals")
        return Fraction(raw)

    def doubling_constant(self) -> int:
        return 2

    def sort_key(self, u):
        return (1, 0) if u is U_INF else (0, u)

    def generated_subgroup(self, gens, cap: int = DEFAULT_CLOSURE_CAP) -> frozenset:
        # tan(pi r) is rational only for r in (1/4)Z, so the rational torsion is {0, inf, 1, -1}
        torsion = {Fraction(0), U_INF, Fraction(1), Fraction(-1)}
        if not set(gens) <= torsion:
            raise InfiniteGroupError("non-torsion point of the rational circle")
        return super().generated_subgroup(gens, cap)

    def encode(self, u):
        return "inf" if u is U_INF else fraction_str(u)

    def __eq__(self, other):
        return isinstance(other, TanHalfGroup)

    def __hash__(self):
        return hash("circle(u)")


_GROUPS = {
    ConicKind.PARABOLA: RationalAdditiveGroup(),
    ConicKind.HYPERBOLA: RationalMultiplicativeGroup(),
    ConicKind.ELLIPSE: TanHalfGroup(),
}


def group_for(kind: ConicKind) -> AbelianGroup:
    return _GROUPS[ConicKind(kind)]


def phi_Q(t, kind: ConicKind) -> ProjPoint:
    """Point of the canonical conic with group parameter ``t``."""
    kind = ConicKind(kind)
    t = group_for(kind).element(t)
    if kind is ConicKind.PARABOLA:
        return ProjPoint(t, t * t, 1)
    if kind is ConicKind.HYPERBOLA:
        return ProjPoint(t, 1 / t, 1)
    if t is U_INF:
        return ProjPoint(-1, 0, 1)
    return ProjPoint(1 - t * t, 2 * t, 1 + t * t)


def phi_ell(z, kind: ConicKind) -> ProjPoint:
    """Direction (point at infinity) attached to the group element ``z``."""
    kind = ConicKind(kind)
    z = group_for(kind).element(z)
    if kind is ConicKind.ELLIPSE:
        return ProjPoint(1, 0, 0) if z is U_INF else ProjPoint(z, 1, 0)
    return ProjPoint(1, -z, 0)


def on_conic(p: ProjPoint, kind: ConicKind) -> bool:
    X, Y, Z = p.coords
    kind = ConicKind(kind)
    if kind is ConicKind.PARABOLA:
        return Y * Z == X * X
    if kind is ConicKind.HYPERBOLA:
        return X * Y == Z * Z
    return X * X + Y * Y == Z * Z


def phi_Q_inverse(p: ProjPoint, kind: ConicKind):
    kind = ConicKind(kind)
    if p.at_infinity or not on_conic(p, kind):
        raise UsageError(f"{p!r} is not a finite point of the canonical {kind.value}")
    x, y = p.to_affine()
    if kind is ConicKind.ELLIPSE:
        return U_INF if x == -1 else y / (1 + x)
    return x


def phi_ell_inverse(p: ProjPoint, kind: ConicKind):
    kind = ConicKind(kind)
    if not p.at_infinity:
        raise UsageError(f"{p!r} is not on the line at infinity")
    X, Y, _ = p.coords
    if kind is ConicKind.ELLIPSE:
        return U_INF if Y == 0 else X / Y
    if X == 0:
        raise UsageError(f"the vertical direction is not a chord direction of the {kind.value}")
    z = -Y / X
    if kind is ConicKind.HYPERBOLA and z == 0:
        raise UsageError("the horizontal direction is not a chord direction of the hyperbola")
    return z


def gt_collinear_check(x, y, z, kind: ConicKind) -> tuple[bool, bool]:
    """``(x + y + z == 0 in the group, phi_Q(x), phi_Q(y), phi_ell(z) collinear)``.

    The two verdicts are computed independently; they always agree.
    """
    kind = ConicKind(kind)
    g = group_for(kind)
    x, y, z = g.element(x), g.element(y), g.element(z)
    if x == y:
        raise DegenerateInputError("x and y must be distinct conic points")
    if kind is ConicKind.PARABOLA:
        group_zero = x + y + z == 0
    elif kind is ConicKind.HYPERBOLA:
        group_zero = x * y * z == 1
    else:
        group_zero = g.add(g.add(x, y), z) == g.zero
    geometric = collinear(phi_Q(x, kind), phi_Q(y, kind), phi_ell(z, kind))
    return group_zero, geometric


def finite_subgroup_obstruction(kind: ConicKind) -> float:
    """Largest possible finite subgroup size: 2 off the ellipse, unbounded on it."""
    kind = ConicKind(kind)
    return math.inf if kind is ConicKind.ELLIPSE else 2


class TangentChordWarning(UserWarning):
    pass


def direction_class_of_chord(a: AngleElem, b: AngleElem) -> AngleElem:
    """Direction class ``a + b`` of the chord through circle points at angles ``a``, ``b``.

    Two chords are parallel iff their classes agree.  For ``a == b`` the
    tangent direction ``2a`` is returned with a :class:`TangentChordWarning`.
    """
    if a == b:
        warnings.warn(f"{a!r} repeated: returning the tangent direction", TangentChordWarning, stacklevel=2)
    return a + b


def angle_embedding(a: AngleElem, theta: float = DEFAULT_THETA) -> tuple[float, float]:
    """Approximate position on the unit circle (display and float cross-checks only)."""
    t = 2 * math.pi * a.numeric(theta)
    return (math.cos(t), math.sin(t))


def class_direction(cls: AngleElem, theta: float = DEFAULT_THETA) -> tuple[float, float]:
    """Unit vector of the direction represented by a chord class."""
    ang = math.pi * cls.numeric(theta) + math.pi / 2
    return (math.cos(ang), math.sin(ang))
