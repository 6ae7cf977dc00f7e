"""Exact incidence geometry in the projective plane over QQ or F_p.

Points and lines are homogeneous triples kept in canonical form (first
nonzero coordinate equal to 1), so set membership and deduplication work by
plain equality.  Every verdict below is decided by exact determinants.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Mapping, Sequence

from .errors import DegenerateInputError, UsageError
from .fields import QQ, PrimeField, RationalField

Field = RationalField | PrimeField


def _normalize(coords, fld):
    coords = tuple(fld(c) for c in coords)
    lead = next((c for c in coords if c != 0), None)
    if lead is None:
        raise DegenerateInputError("homogeneous triple is all zero")
    return tuple(c / lead for c in coords)


def _cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _det3(u, v, w):
    return (
        u[0] * (v[1] * w[2] - v[2] * w[1])
        - u[1] * (v[0] * w[2] - v[2] * w[0])
        + u[2] * (v[0] * w[1] - v[1] * w[0])
    )


def _fmt(c) -> str:
    return str(c)


@dataclass(frozen=True)
class ProjPoint:
    """Point ``(X:Y:Z)``; ``Z == 0`` means the point lies at infinity."""

    X: object
    Y: object
    Z: object
    field: Field = QQ

    def __init__(self, X, Y, Z, field: Field = QQ):
        x, y, z = _normalize((X, Y, Z), field)
        object.__setattr__(self, "X", x)
        object.__setattr__(self, "Y", y)
        object.__setattr__(self, "Z", z)
        object.__setattr__(self, "field", field)

    @classmethod
    def affine(cls, x, y, field: Field = QQ) -> "ProjPoint":
        return cls(x, y, 1, field)

    @property
    def coords(self) -> tuple:
        return (self.X, self.Y, self.Z)

    @property
    def at_infinity(self) -> bool:
        return self.Z == 0

    def to_affine(self):
        """``(x, y)`` for a finite point, ``None`` for a point at infinity."""
        if self.at_infinity:
            return None
        return (self.X / self.Z, self.Y / self.Z)

    def __repr__(self):
        xy = self.to_affine()
        if xy is None:
            return f"ProjPoint({_fmt(self.X)}:{_fmt(self.Y)}:0)"
        return f"ProjPoint({_fmt(xy[0])}, {_fmt(xy[1])})"


@dataclass(frozen=True)
class ProjLine:
    """Line ``aX + bY + cZ = 0``."""

    a: object
    b: object
    c: object
    field: Field = QQ

    def __init__(self, a, b, c, field: Field = QQ):
        a, b, c = _normalize((a, b, c), field)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "field", field)

    @property
    def coords(self) -> tuple:
        return (self.a, self.b, self.c)

    def contains(self, p: ProjPoint) -> bool:
        _same_field(self, p)
        return self.a * p.X + self.b * p.Y + self.c * p.Z == 0

    def __repr__(self):
        return f"ProjLine[{_fmt(self.a)}:{_fmt(self.b)}:{_fmt(self.c)}]"


def line_at_infinity(field: Field = QQ) -> ProjLine:
    return ProjLine(0, 0, 1, field)


def _same_field(*objs) -> Field:
    fields = {o.field for o in objs}
    if len(fields) != 1:
        raise UsageError(f"arguments live over different fields: {sorted(map(repr, fields))}")
    return fields.pop()


def collinear(p: ProjPoint, q: ProjPoint, r: ProjPoint) -> bool:
    """True iff the three points lie on one line (repeated points count as collinear)."""
    _same_field(p, q, r)
    return _det3(p.coords, q.coords, r.coords) == 0


def line_through(p: ProjPoint, q: ProjPoint) -> ProjLine:
    fld = _same_field(p, q)
    if p == q:
        raise DegenerateInputError(f"no unique line through the single point {p!r}")
    return ProjLine(*_cross(p.coords, q.coords), field=fld)


def meet(l: ProjLine, m: ProjLine) -> ProjPoint:
    """Intersection point of two distinct lines."""
    fld = _same_field(l, m)
    if l == m:
        raise DegenerateInputError("a line meets itself everywhere")
    return ProjPoint(*_cross(l.coords, m.coords), field=fld)


def direction_of(l: ProjLine) -> ProjPoint:
    """The point at infinity of ``l``."""
    if l == line_at_infinity(l.field):
        raise DegenerateInputError("the line at infinity has no single direction")
    return ProjPoint(l.b, -l.a, 0, field=l.field)


def _require_distinct(points: Sequence[ProjPoint], what: str = "points"):
    if len(set(points)) != len(points):
        raise UsageError(f"{what} must be pairwise distinct")


def collinear_triples(S: Sequence[ProjPoint]):
    """Yield every collinear triple of ``S`` (cubic-time sweep)."""
    for p, q, r in combinations(S, 3):
        if collinear(p, q, r):
            yield (p, q, r)


def is_general_position(S: Sequence[ProjPoint]) -> bool:
    S = list(S)
    _require_distinct(S)
    if S:
        _same_field(*S)
    return next(collinear_triples(S), None) is None


def determined_lines(S: Sequence[ProjPoint]) -> frozenset[ProjLine]:
    S = list(S)
    if len(S) < 2:
        raise UsageError("need at least two points to determine a line")
    _require_distinct(S)
    return frozenset(line_through(p, q) for p, q in combinations(S, 2))


@dataclass(frozen=True)
class PiercingVerdict:
    """Outcome of a piercing check; ``witness`` is an unpierced pair when it fails."""

    holds: bool
    witness: tuple | None = None
    lines_checked: int = 0

    def __bool__(self):
        return self.holds


def _pierces(line: ProjLine, R: Iterable[ProjPoint]) -> bool:
    return any(line.contains(r) for r in R)


def check_piercing(P: Sequence[ProjPoint], R: Sequence[ProjPoint]) -> PiercingVerdict:
    """Does every line through two points of ``P`` contain a point of ``R``?"""
    P, R = list(P), list(R)
    _require_distinct(P + R, "points of P and R")
    if P or R:
        _same_field(*P, *R)
    checked = 0
    for p, q in combinations(P, 2):
        checked += 1
        if not _pierces(line_through(p, q), R):
            return PiercingVerdict(False, (p, q), checked)
    return PiercingVerdict(True, None, checked)


def check_piercing_bipartite(
    B: Sequence[ProjPoint], G: Sequence[ProjPoint], R: Sequence[ProjPoint]
) -> PiercingVerdict:
    """Does every line through a point of ``B`` and a point of ``G`` contain a point of ``R``?"""
    B, G, R = list(B), list(G), list(R)
    _require_distinct(B + G + R, "points of B, G and R")
    if B or G or R:
        _same_field(*B, *G, *R)
    checked = 0
    for b, g in product(B, G):
        checked += 1
        if not _pierces(line_through(b, g), R):
            return PiercingVerdict(False, (b, g), checked)
    return PiercingVerdict(True, None, checked)


ROLES = ("P", "B", "G", "R")


@dataclass
class PointConfig:
    """Planar configuration with role-tagged point sets (``P`` or ``B``/``G``, and ``R``)."""

    field: Field
    roles: dict[str, list[ProjPoint]]

    def __post_init__(self):
        for tag, pts in self.roles.items():
            if tag not in ROLES:
                raise UsageError(f"unknown role {tag!r}")
            for p in pts:
                if p.field != self.field:
                    raise UsageError(f"point {p!r} of role {tag} is not over {self.field!r}")
        everything = [p for pts in self.roles.values() for p in pts]
        _require_distinct(everything, "points across all roles")

    @classmethod
    def from_affine(cls, roles: Mapping[str, Iterable], field: Field = QQ) -> "PointConfig":
        """Build from ``(x, y)`` pairs or ready-made :class:`ProjPoint` values."""
        built = {}
        for tag, pts in roles.items():
            built[tag] = [p if isinstance(p, ProjPoint) else ProjPoint.affine(*p, field=field) for p in pts]
        return cls(field, built)

    @property
    def bipartite(self) -> bool:
        return "B" in self.roles or "G" in self.roles

    def verify(self) -> PiercingVerdict:
        R = self.roles.get("R", [])
        if self.bipartite:
            return check_piercing_bipartite(self.roles.get("B", []), self.roles.get("G", []), R)
        return check_piercing(self.roles.get("P", []), R)

    def in_general_position(self) -> bool:
        if self.bipartite:
            return is_general_position(self.roles.get("B", []) + self.roles.get("G", []))
        return is_general_position(self.roles.get("P", []))
