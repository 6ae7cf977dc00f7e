"""Generators for the extremal and illustrative configurations.

Circle configurations live in the angle model: a point is an
:class:`AngleElem` (turns), the chord through ``a`` and ``b`` has direction
class ``a + b``, and the point reflection ``x -> -x`` of the plane is the
angle shift by ``1/2``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable

from .abelian import AngleElem, GroupSet, SubgroupDescriptor, describe_subgroup, restricted_sumset
from .cubic import WeierstrassCurve
from .errors import UsageError
from .fields import QQ
from .plane import PointConfig, ProjPoint

HALF = Fraction(1, 2)


def chord_classes(S: Iterable[AngleElem]) -> Counter:
    """Direction classes of all chords between two distinct points of ``S``."""
    return Counter(a + b for a, b in combinations(set(S), 2))


def cross_classes(A: Iterable[AngleElem], B: Iterable[AngleElem]) -> Counter:
    """Direction classes of chords joining a point of ``A`` to a point of ``B``."""
    return Counter(a + b for a, b in product(set(A), set(B)) if a != b)


def reflect(S: Iterable[AngleElem]) -> frozenset[AngleElem]:
    """Point reflection through the centre of the circle."""
    return frozenset(a.shift(HALF) for a in S)


def rotate(S: Iterable[AngleElem], q=0, c: int = 0) -> frozenset[AngleElem]:
    return frozenset(a + AngleElem(q, c) for a in S)


@dataclass
class AngleConfig:
    """Circle-hosted configuration; ``R`` holds chord direction classes (points at infinity)."""

    roles: dict[str, frozenset[AngleElem]]
    R: frozenset[AngleElem] = field(default_factory=frozenset)

    def __post_init__(self):
        self.roles = {k: frozenset(v) for k, v in self.roles.items()}
        self.R = frozenset(self.R)
        for k in self.roles:
            if k not in ("P", "B", "G"):
                raise UsageError(f"unknown role {k!r} for an angle configuration")
        for (k1, s1), (k2, s2) in combinations(self.roles.items(), 2):
            if s1 & s2:
                raise UsageError(f"roles {k1} and {k2} overlap")

    @property
    def bipartite(self) -> bool:
        return "B" in self.roles

    @property
    def n(self) -> int:
        return len(self.roles["B"] if self.bipartite else self.roles["P"])

    def census(self) -> Counter:
        if self.bipartite:
            return cross_classes(self.roles["B"], self.roles["G"])
        return chord_classes(self.roles["P"])

    def unpierced(self) -> list[AngleElem]:
        """Chord classes not covered by ``R``."""
        return sorted(set(self.census()) - self.R, key=lambda a: (a.c, a.q))

    def validate(self) -> "AngleConfig":
        missing = self.unpierced()
        if missing:
            raise UsageError(f"R misses {len(missing)} chord directions, e.g. {missing[0]!r}")
        return self


def regular_mgon(m: int) -> frozenset[AngleElem]:
    if m < 3:
        raise UsageError(f"a regular polygon needs m >= 3, got {m}")
    return frozenset(AngleElem(Fraction(j, m)) for j in range(m))


def regular_polygon_config(m: int) -> AngleConfig:
    """Vertices of a regular m-gon with its m chord directions as ``R``."""
    P = regular_mgon(m)
    return AngleConfig({"P": P}, frozenset(chord_classes(P))).validate()


def rotated_union(m: int) -> AngleConfig:
    """Regular m-gon plus a generic rotation of it: ``n = 2m`` points, ``3m`` directions."""
    P1 = regular_mgon(m)
    P2 = rotate(P1, c=1)
    R = frozenset(a + AngleElem(0, c) for a in P1 for c in (0, 1, 2))
    cfg = AngleConfig({"P": P1 | P2}, R).validate()
    if set(cfg.census()) != R:
        raise AssertionError("rotated union: census differs from the three class families")
    return cfg


def bipartite_construction(k: int) -> AngleConfig:
    """``B = Z u -Z'`` and ``G = -Z u Z'`` for a regular k-gon ``Z`` and generic rotation ``Z'``."""
    if k < 3 or k % 2 == 0:
        raise UsageError(f"k must be odd and at least 3, got {k}")
    Z = regular_mgon(k)
    Zp = rotate(Z, c=1)
    B = Z | reflect(Zp)
    G = reflect(Z) | Zp
    R = frozenset(
        {a.shift(HALF) for a in Z}
        | {a + AngleElem(0, 1) for a in Z}
        | {a + AngleElem(HALF, 2) for a in Z}
    )
    cfg = AngleConfig({"B": B, "G": G}, R).validate()
    if set(cfg.census()) != R:
        raise AssertionError("bipartite construction: census differs from the three class families")
    return cfg


def complete_quadrilateral() -> PointConfig:
    """Unit square with its three diagonal points; ``|R| = n - 1 = 3``."""
    return PointConfig(
        QQ,
        {
            "P": [ProjPoint.affine(x, y) for x, y in ((0, 0), (1, 0), (0, 1), (1, 1))],
            "R": [ProjPoint(1, 0, 0), ProjPoint(0, 1, 0), ProjPoint(1, 1, 2)],
        },
    )


def two_point() -> PointConfig:
    """Two points and one piercing point on their line; ``|R| = n - 1 = 1``."""
    return PointConfig.from_affine({"P": [(0, 0), (1, 0)], "R": [(2, 0)]})


def collinear_triple() -> PointConfig:
    """The ``n = 1`` bipartite instance: one point of each colour on a line."""
    return PointConfig(
        QQ,
        {"B": [ProjPoint.affine(0, 0)], "G": [ProjPoint.affine(1, 0)], "R": [ProjPoint(1, 0, 0)]},
    )


def three_line_bipartite() -> PointConfig:
    """Nine points on ``y = 0, 1, 2`` pierced bipartitely.

    On three parallel lines ``(x0, 0), (x1, 1), (x2, 2)`` are collinear iff
    ``x0 + x2 = 2 x1``; the coordinates solve that relation for every
    blue/green pair on different lines, and each line ``y = c`` carries one
    red point for the blue/green pair lying on it.
    """
    h = Fraction(-1, 2)
    return PointConfig.from_affine(
        {
            "B": [(0, 0), (h, 1), (3, 2)],
            "G": [(7, 0), (-4, 1), (10, 2)],
            "R": [(-11, 0), (5, 1), (-8, 2)],
        }
    )


def lattice_hexagon() -> PointConfig:
    """Affine image of the regular hexagon with rational vertices, pierced by its 6 directions."""
    P = [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)]
    R = [ProjPoint(1, 0, 0), ProjPoint(0, 1, 0), ProjPoint(1, 1, 0),
         ProjPoint(1, -1, 0), ProjPoint(1, 2, 0), ProjPoint(2, 1, 0)]
    return PointConfig(QQ, {"P": [ProjPoint.affine(*p) for p in P], "R": R})


# --------------------------------------------------------------------------
# cosets on elliptic curves over prime fields


@dataclass(frozen=True)
class CosetInstance:
    """``P = g + H`` on a curve and ``R = -(P +' P)``."""

    curve: WeierstrassCurve
    H: SubgroupDescriptor
    offset: object
    P: GroupSet
    R: GroupSet

    def point_config(self) -> PointConfig:
        E = self.curve
        return PointConfig(
            E.field,
            {"P": [E.to_proj(p) for p in self.P], "R": [E.to_proj(r) for r in self.R]},
        )


def _subgroup_elements(H) -> frozenset:
    return H.elements if isinstance(H, SubgroupDescriptor) else frozenset(H)


def _admissible(curve: WeierstrassCurve, elems: frozenset, g) -> bool:
    return len(elems) < 2 or curve.multiple(g, 3) not in elems


def admissible_offsets(curve: WeierstrassCurve, H) -> list:
    """Offsets ``g`` with ``3g`` outside ``H`` (any ``g`` when ``H`` is trivial)."""
    elems = _subgroup_elements(H)
    return [g for g in curve.enumerate_points() if _admissible(curve, elems, g)]


def fp_coset_instance(curve: WeierstrassCurve, H, g) -> CosetInstance:
    """Build ``P = g + H`` and its forced piercing set ``R = -(P +' P)``.

    Three distinct points ``g + h_i`` are collinear iff ``3g + h1 + h2 + h3 = O``,
    and ``-(2g + h1 + h2)`` lies in ``g + H`` iff ``3g`` is in ``H``.  So for
    ``|H| >= 2``, ``3g`` outside ``H`` keeps the coset in general position and
    ``R`` disjoint from ``P``.
    """
    elems = _subgroup_elements(H)
    if not _admissible(curve, elems, g):
        raise UsageError(f"offset {g!r} is not admissible: 3g lies in H, so g + H has collinear triples")
    if not isinstance(H, SubgroupDescriptor):
        H = describe_subgroup(curve, elems)
    P = GroupSet(curve, (curve.add(g, h) for h in elems))
    R = restricted_sumset(P).neg() if len(P) >= 2 else GroupSet(curve, ())
    return CosetInstance(curve, H, g, P, R)
