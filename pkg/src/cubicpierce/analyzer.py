"""Structure analysis of pierced configurations.

``analyze_unipartite`` and ``analyze_bipartite`` run the sumset pipeline on
group-level data: piercing gives ``P +' P`` inside ``-R`` (resp. ``B + G``
inside ``-R``), the restricted-sumset bound and the small-doubling lemma are
checked as gates, and the subgroup ``H`` and coset offset are recovered.  No
gate is assumed: each one is evaluated and, if it fails, named in
``failed_gates``.  Whenever a gate passes its conclusion is re-verified, and
a violated conclusion raises ``AssertionError`` (that would be a
genuine mathematical counterexample, not a user error).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from math import ceil, comb
from typing import Iterable, NamedTuple, Sequence

from .abelian import (
    CIRCLE,
    COUNTEREXAMPLE,
    HOLDS,
    INFINITE,
    AbelianGroup,
    AngleElem,
    AngleGroup,
    GroupSet,
    LemmaVerdict,
    RationalAdditiveGroup,
    RationalMultiplicativeGroup,
    SubgroupDescriptor,
    _same_group,
    check_lemma_AB,
    describe_subgroup,
    in_one_coset,
    is_coset,
    lev_inequality,
    minimal_containing_coset,
    restricted_sumset,
    sumset,
)
from .conic_line import (
    ConicKind,
    TanHalfGroup,
    finite_subgroup_obstruction,
    group_for,
    on_conic,
    phi_ell_inverse,
    phi_Q_inverse,
)
from .constructions import AngleConfig
from .cubic import WeierstrassCurve
from .errors import DegenerateInputError, UsageError
from .plane import (
    PointConfig,
    ProjLine,
    ProjPoint,
    check_piercing,
    determined_lines,
    is_general_position,
    meet,
)

MAX_MINPIERCE_POINTS = 8


def doubling_bound(group: AbelianGroup) -> int | None:
    """Geometric a-priori bound on the doubling constant, if the group comes from a cubic."""
    if isinstance(group, WeierstrassCurve):
        return 6  # tangents from a point to an irreducible cubic
    if isinstance(group, (AngleGroup, TanHalfGroup, RationalAdditiveGroup, RationalMultiplicativeGroup)):
        return 2  # tangents from a point to a conic
    return None


@dataclass
class StructureReport:
    mode: str
    group: AbelianGroup
    n: int
    r_size: int
    pierced: bool
    ratio_gate: bool
    sum_size: int
    full_sumset_size: int
    doubling_constant: int
    lev_applicable: bool | None
    restricted_equals_full: bool | str
    lemma_ab: LemmaVerdict
    H: SubgroupDescriptor | str
    coset_offset: dict
    h_size_le_R: bool | None
    p_is_coset: bool
    r_is_coset: bool
    failed_gates: list[str] = field(default_factory=list)
    short_argument: str | None = None

    @property
    def stabilizer(self) -> SubgroupDescriptor | None:
        return self.lemma_ab.stabilizer if self.lemma_ab.status == HOLDS else None

    @property
    def H_order(self) -> int | None:
        return None if isinstance(self.H, str) else self.H.order

    def to_dict(self) -> dict:
        g = self.group
        enc = g.encode
        stab = self.stabilizer
        return {
            "mode": self.mode,
            "group": g.name,
            "n": self.n,
            "R_size": self.r_size,
            "pierced": self.pierced,
            "ratio_gate": self.ratio_gate,
            "restricted_size" if self.mode == "unipartite" else "sumset_size": self.sum_size,
            "full_sumset_size": self.full_sumset_size,
            "doubling_constant": self.doubling_constant,
            "lev_applicable": self.lev_applicable,
            "restricted_equals_full": self.restricted_equals_full,
            "lemma_ab": {"status": self.lemma_ab.status, "detail": self.lemma_ab.detail},
            "stabilizer": None if stab is None else stab.to_dict(),
            "H": self.H if isinstance(self.H, str) else self.H.to_dict(),
            "coset_offset": {k: enc(v) for k, v in self.coset_offset.items()},
            "h_size_le_R": self.h_size_le_R,
            "p_is_coset": self.p_is_coset,
            "r_is_coset": self.r_is_coset,
            "short_argument": self.short_argument,
            "failed_gates": list(self.failed_gates),
        }


def _check_doubling(group: AbelianGroup) -> int:
    L = group.doubling_constant()
    bound = doubling_bound(group)
    if bound is not None and L > bound:
        raise AssertionError(f"doubling constant {L} of {group.name} exceeds the tangent bound {bound}")
    return L


def _recover(sets: dict[str, GroupSet], r: GroupSet):
    """Minimal common coset subgroup of the role sets, re-verified by direct arithmetic."""
    g = r.group
    H = minimal_containing_coset(*sets.values())
    offsets = {k: min(s.elements, key=g.sort_key) for k, s in sets.items()}
    if H == INFINITE:
        return H, offsets, None, False
    for k, s in sets.items():
        coset = {g.add(offsets[k], h) for h in H.elements}
        if not s.elements <= coset:
            raise AssertionError(f"role {k} escapes its recovered coset")
    H = SubgroupDescriptor(g, H.elements, H.generators, offsets[next(iter(sets))])
    r_is_coset = bool(r.elements) and is_coset(r.elements, H)
    return H, offsets, H.order <= len(r), r_is_coset


def analyze_unipartite(P: GroupSet, R: GroupSet) -> StructureReport:
    """Pipeline for ``P`` whose connecting lines are pierced by ``R``.

    ``R`` holds group elements ``z`` with ``x + y + z = 0`` for collinear
    ``x, y, z``; on a curve these are simply the points of ``R``.
    """
    g = _same_group(P, R)
    n, r = len(P), len(R)
    if n < 2:
        raise DegenerateInputError("analysis needs at least two points in P")
    failed = []
    rs = restricted_sumset(P)
    pierced = rs <= R.neg()
    if not pierced:
        failed.append("piercing: some sum of two distinct points of P is not in -R")
    ratio = 2 * r < 3 * n
    if not ratio:
        failed.append(f"ratio: |R| = {r} is not below 3n/2 = {3 * n / 2:g}")
    L = _check_doubling(g)
    lev = lev_inequality(n, len(rs), L)
    if not lev:
        failed.append(f"lev: |P+'P| = {len(rs)} is above phi*n - (L+2) for n = {n}, L = {L}")
    full = sumset(P, P)
    equal = rs == full
    if lev and not equal:
        raise AssertionError(f"restricted-sumset counterexample: {P!r}")
    lemma = check_lemma_AB(P, P)
    if lemma.status == COUNTEREXAMPLE:
        raise AssertionError(f"small-doubling counterexample: {P!r}: {lemma.detail}")
    if lemma.status != HOLDS:
        failed.append(f"lemma: {lemma.detail}")
    if pierced and ratio and lev and lemma.holds:
        stab = lemma.stabilizer
        if not (in_one_coset(P.elements, stab) and stab.order <= r):
            raise AssertionError("pipeline conclusion violated: P not in a coset of H with |H| <= |R|")
    H, offsets, h_le_r, r_is_coset = _recover({"P": P}, R)
    return StructureReport(
        mode="unipartite",
        group=g,
        n=n,
        r_size=r,
        pierced=pierced,
        ratio_gate=ratio,
        sum_size=len(rs),
        full_sumset_size=len(full),
        doubling_constant=L,
        lev_applicable=lev,
        restricted_equals_full=equal,
        lemma_ab=lemma,
        H=H,
        coset_offset=offsets,
        h_size_le_R=h_le_r,
        p_is_coset=H != INFINITE and H.order == n,
        r_is_coset=r_is_coset,
        failed_gates=failed,
    )


def _short_argument(B: GroupSet, G: GroupSet, R: GroupSet) -> str:
    """The |R| = n shortcut: ``B' = b - B`` and ``G' = g - G`` coincide with a subgroup."""
    grp = B.group
    b = min(B.elements, key=grp.sort_key)
    gg = min(G.elements, key=grp.sort_key)
    Bp = B.neg().translate(b)
    Gp = G.neg().translate(gg)
    S = sumset(Bp, Gp)
    if not (Bp == Gp == S):
        return f"fails: B' ({len(Bp)}), G' ({len(Gp)}), B'+G' ({len(S)}) differ"
    H = describe_subgroup(grp, Bp.elements)
    if not H.is_closed():
        return "fails: B' is not a subgroup"
    ok = is_coset(B.elements, H) and is_coset(G.elements, H) and is_coset(R.elements, H)
    return "holds" if ok else "fails: B, G or R is not a coset of H"


def analyze_bipartite(B: GroupSet, G: GroupSet, R: GroupSet) -> StructureReport:
    """Pipeline for blue/green sets whose connecting lines are pierced by ``R``."""
    grp = _same_group(B, G, R)
    if len(B) != len(G):
        raise UsageError(f"|B| = {len(B)} and |G| = {len(G)} must agree")
    n, r = len(B), len(R)
    if n < 1:
        raise DegenerateInputError("analysis needs nonempty B and G")
    failed = []
    S = sumset(B, G)
    pierced = S <= R.neg()
    if not pierced:
        failed.append("piercing: some b + g is not in -R")
    ratio = 2 * r < 3 * n
    if not ratio:
        failed.append(f"ratio: |R| = {r} is not below 3n/2 = {3 * n / 2:g}")
    L = _check_doubling(grp)
    lemma = check_lemma_AB(B, G)
    if lemma.status == COUNTEREXAMPLE:
        raise AssertionError(f"small-doubling counterexample: {B!r}, {G!r}: {lemma.detail}")
    if lemma.status != HOLDS:
        failed.append(f"lemma: {lemma.detail}")
    if pierced and ratio and lemma.holds and lemma.stabilizer.order > r:
        raise AssertionError("pipeline conclusion violated: |H| > |R|")
    short = None
    if pierced and r == n:
        short = _short_argument(B, G, R)
        if short != "holds":
            raise AssertionError(f"|R| = n shortcut failed: {short}")
    H, offsets, h_le_r, r_is_coset = _recover({"B": B, "G": G}, R)
    return StructureReport(
        mode="bipartite",
        group=grp,
        n=n,
        r_size=r,
        pierced=pierced,
        ratio_gate=ratio,
        sum_size=len(S),
        full_sumset_size=len(S),
        doubling_constant=L,
        lev_applicable=None,
        restricted_equals_full="not checked",
        lemma_ab=lemma,
        H=H,
        coset_offset=offsets,
        h_size_le_R=h_le_r,
        p_is_coset=H != INFINITE and H.order == n,
        r_is_coset=r_is_coset,
        failed_gates=failed,
        short_argument=short,
    )


class Census(NamedTuple):
    classes: Counter
    count: int


def direction_census(S: Iterable[AngleElem]) -> Census:
    """Chord direction classes of a circle set, with multiplicities."""
    S = list(set(S))
    if len(S) < 2:
        raise DegenerateInputError("a census needs at least two points")
    classes = Counter(a + b for a, b in combinations(S, 2))
    return Census(classes, len(classes))


# --------------------------------------------------------------------------
# exact minimum piercing sets


def counting_lower_bound(n: int) -> int:
    """Each piercing point meets at most floor(n/2) of the C(n, 2) lines."""
    if n < 2:
        return 0
    return ceil(comb(n, 2) / (n // 2))


def _free_point(line: ProjLine, avoid_pts: set, other_lines: Sequence[ProjLine]) -> ProjPoint:
    """A point of ``line`` off every other line and outside ``avoid_pts``."""
    fld = line.field
    a, b, c = line.coords
    # two independent points spanning the line
    basis = [v for v in ((b, -a, 0), (c, 0, -a), (0, c, -b)) if any(x != 0 for x in v)]
    u = basis[0]
    v = next(w for w in basis[1:] if ProjPoint(*w, field=fld) != ProjPoint(*u, field=fld))
    t = 1
    while True:
        cand = ProjPoint(*(x + t * y for x, y in zip(u, v)), field=fld)
        if cand not in avoid_pts and not any(m.contains(cand) for m in other_lines):
            return cand
        t += 1


def minimum_piercing_set(P: Sequence[ProjPoint], limit: int | None = None,
                         max_points: int = MAX_MINPIERCE_POINTS) -> list[ProjPoint] | None:
    """A smallest point set, disjoint from ``P``, meeting every line through two points of ``P``.

    Any point meeting two or more of the lines is an intersection of two of
    them, so the candidates are those intersections plus, for a line meeting
    no candidate, one point lying on that line alone.  Returns ``None`` when
    every piercing set is larger than ``limit``.
    """
    P = list(P)
    n = len(P)
    if n > max_points:
        raise UsageError(f"exact search is limited to {max_points} points, got {n}")
    if not is_general_position(P):
        raise UsageError("P must be in general position")
    if n < 2:
        return []
    lines = sorted(determined_lines(P), key=repr)
    pset = set(P)
    masks: dict[ProjPoint, int] = {}
    for l1, l2 in combinations(lines, 2):
        x = meet(l1, l2)
        if x in pset or x in masks:
            continue
        masks[x] = sum(1 << i for i, l in enumerate(lines) if l.contains(x))
    # drop dominated candidates
    by_mask: dict[int, ProjPoint] = {}
    for x, m in masks.items():
        by_mask.setdefault(m, x)
    cands = [(m, x) for m, x in by_mask.items() if not any(m != o and m & o == m for o in by_mask)]
    cands.sort(key=lambda mx: -bin(mx[0]).count("1"))
    full = (1 << len(lines)) - 1
    covered_by_cands = 0
    for m, _ in cands:
        covered_by_cands |= m
    forced = []
    for i, l in enumerate(lines):
        if not covered_by_cands >> i & 1:
            others = [o for o in lines if o != l]
            forced.append((1 << i, _free_point(l, pset | set(masks), others)))
    options = cands + forced
    per_line = [[mx for mx in options if mx[0] >> i & 1] for i in range(len(lines))]
    cap = max(bin(m).count("1") for m, _ in options)

    best: list = [None]
    bound = [len(options) + 1 if limit is None else limit + 1]

    def search(uncovered: int, chosen: list):
        if uncovered == 0:
            if len(chosen) < bound[0]:
                bound[0] = len(chosen)
                best[0] = list(chosen)
            return
        if len(chosen) + ceil(bin(uncovered).count("1") / cap) >= bound[0]:
            return
        # branch on the uncovered line with the fewest options
        i = min(
            (j for j in range(len(lines)) if uncovered >> j & 1),
            key=lambda j: len(per_line[j]),
        )
        opts = sorted(per_line[i], key=lambda mx: -bin(mx[0] & uncovered).count("1"))
        for m, x in opts:
            chosen.append(x)
            search(uncovered & ~m, chosen)
            chosen.pop()

    search(full, [])
    if best[0] is None:
        return None
    if len(best[0]) < counting_lower_bound(n):
        raise AssertionError("piercing set beats the counting bound")
    if not check_piercing(P, best[0]):
        raise AssertionError("search returned a set that does not pierce")
    return best[0]


def min_piercing_number(P: Sequence[ProjPoint], limit: int | None = None) -> int | None:
    """Exact minimum piercing size, or ``None`` when it exceeds ``limit``."""
    found = minimum_piercing_set(P, limit)
    return None if found is None else len(found)


# --------------------------------------------------------------------------
# conic + line cubics


@dataclass
class GateDiagnosis:
    accepted: bool
    reasons: list[str]
    counts: dict
    report: StructureReport | None = None

    def to_dict(self) -> dict:
        return {
            "accepted": self.accepted,
            "reasons": list(self.reasons),
            "counts": dict(self.counts),
            "report": None if self.report is None else self.report.to_dict(),
        }


def _forced_threshold(n: int, bipartite: bool) -> tuple[int, str]:
    if bipartite:
        return 2 * n - 3, f"(n-1)+(n-2) = {2 * n - 3}"
    return 2 * n - 5, f"(n-2)+(n-3) = {2 * n - 5}"


def reducible_case_gate(config: PointConfig | AngleConfig, kind: ConicKind | None = None) -> GateDiagnosis:
    """Check a configuration hosted by a conic ``Q`` plus the line at infinity.

    Verifies that every point lies on ``Q`` or the line, that no point of
    ``P`` (or ``B u G``) lies on the line, maps the configuration into the
    conic's group and runs the matching pipeline.  Parabolas and hyperbolas
    are rejected when the conclusion would need a finite subgroup larger
    than 2.
    """
    if isinstance(config, AngleConfig):
        return _angle_gate(config)
    if kind is None:
        raise UsageError("a planar configuration needs its conic kind")
    kind = ConicKind(kind)
    if config.field.characteristic != 0:
        raise UsageError("conic groups are implemented over QQ")
    bip = config.bipartite
    blue_roles = ("B", "G") if bip else ("P",)
    blue = [p for k in blue_roles for p in config.roles.get(k, [])]
    R = config.roles.get("R", [])
    n = len(config.roles.get(blue_roles[0], []))
    r = len(R)
    reasons = []
    counts = {"n": n, "R": r}

    def hosted(p):
        return p.at_infinity or on_conic(p, kind)

    stray = [p for p in blue + R if not hosted(p)]
    if stray:
        reasons.append(f"{len(stray)} points lie on neither Q nor the line, e.g. {stray[0]!r}")
        return GateDiagnosis(False, reasons, counts)
    ratio = 2 * r < 3 * n
    counts["ratio_gate"] = ratio
    on_line = [p for p in blue if p.at_infinity]
    counts["blue_on_line"] = len(on_line)
    if on_line:
        threshold, formula = _forced_threshold(n, bip)
        counts["forced_R"] = threshold
        if r < threshold:
            reasons.append(
                f"a point of {'B u G' if bip else 'P'} on the line forces at least {formula} points of R, "
                f"but |R| = {r}"
            )
        else:
            reasons.append("points on the line have no conic parameter; group dispatch impossible")
        return GateDiagnosis(False, reasons, counts)
    R_line = [p for p in R if p.at_infinity]
    counts["R_on_Q"] = r - len(R_line)
    if counts["R_on_Q"]:
        reasons.append(f"{counts['R_on_Q']} points of R on Q cannot pierce chords of Q; ignored")
    grp = group_for(kind)
    Rt = []
    for p in R_line:
        try:
            Rt.append(phi_ell_inverse(p, kind))
        except UsageError:
            reasons.append(f"{p!r} is not a chord direction of the {kind.value}; ignored")
    Rt = GroupSet(grp, Rt)
    if bip:
        Bt = GroupSet(grp, (phi_Q_inverse(p, kind) for p in config.roles["B"]))
        Gt = GroupSet(grp, (phi_Q_inverse(p, kind) for p in config.roles["G"]))
        report = analyze_bipartite(Bt, Gt, Rt)
    else:
        Pt = GroupSet(grp, (phi_Q_inverse(p, kind) for p in config.roles["P"]))
        report = analyze_unipartite(Pt, Rt)
    bound = finite_subgroup_obstruction(kind)
    if n > bound:
        reasons.append(
            f"Q must be an ellipse: the {kind.value} group has no finite subgroup of size > {bound}, "
            f"but a coset holding {n} points is needed"
        )
        return GateDiagnosis(False, reasons, counts, report)
    return GateDiagnosis(True, reasons, counts, report)


def _angle_gate(config: AngleConfig) -> GateDiagnosis:
    counts = {"n": config.n, "R": len(config.R), "ratio_gate": 2 * len(config.R) < 3 * config.n}
    Rt = GroupSet(CIRCLE, (-c for c in config.R))
    if config.bipartite:
        report = analyze_bipartite(
            GroupSet(CIRCLE, config.roles["B"]), GroupSet(CIRCLE, config.roles["G"]), Rt
        )
    else:
        report = analyze_unipartite(GroupSet(CIRCLE, config.roles["P"]), Rt)
    reasons = ["all points on the circle, all of R on the line at infinity"]
    return GateDiagnosis(True, reasons, counts, report)


def angle_groupsets(config: AngleConfig) -> dict[str, GroupSet]:
    """Group-level view of an angle configuration (``R`` negated into ``x + y + z = 0`` form)."""
    out = {k: GroupSet(CIRCLE, v) for k, v in config.roles.items()}
    out["R"] = GroupSet(CIRCLE, (-c for c in config.R))
    return out


__all__ = [
    "Census",
    "GateDiagnosis",
    "StructureReport",
    "analyze_bipartite",
    "analyze_unipartite",
    "angle_groupsets",
    "counting_lower_bound",
    "direction_census",
    "min_piercing_number",
    "minimum_piercing_set",
    "reducible_case_gate",
]
