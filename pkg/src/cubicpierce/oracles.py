"""Brute-force oracles behind ``selftest`` and the acceptance suite.

Subsets of ``Z_k`` are handled as ``k``-bit masks: translating a set is a
cyclic rotation of its mask and a sumset is the OR of rotations.  The mask
code is only a fast filter.  Every reported counterexample is re-derived
with the generic group functions of :mod:`abelian`, and
:func:`cross_validate_cyclic` checks that the filter and the generic code
agree on every subset for small ``k``.

Each oracle returns an :class:`OracleResult`; ``failures`` holds short
reproducer strings and is empty when no counterexample was found.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Callable

from .abelian import (
    COUNTEREXAMPLE,
    HOLDS,
    INAPPLICABLE,
    FinAbGroup,
    GroupSet,
    check_lemma_AB,
    lemma_ab_hypotheses,
    lev_inequality,
    restricted_sumset,
    sumset,
)
from .conic_line import U_INF, ConicKind, group_for, gt_collinear_check, phi_ell, phi_Q
from .cubic import WeierstrassCurve
from .fields import PrimeField
from .plane import ProjPoint, collinear

Collinear = Callable[[ProjPoint, ProjPoint, ProjPoint], bool]

DEFAULT_LEV_BOUND = 18
DEFAULT_LEMMA_BOUND = 12
DEFAULT_GT_SAMPLES = 1000
MAX_REPRODUCERS = 5


@dataclass
class OracleResult:
    name: str
    checked: int = 0
    applicable: int = 0
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, msg: str):
        if len(self.failures) < MAX_REPRODUCERS:
            self.failures.append(msg)
        else:
            self.failures[-1] = f"... and more (last: {msg})"

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status} {self.name}: {self.checked} checked, {self.applicable} meeting hypotheses, "
            f"{len(self.failures)} failures ({self.seconds:.2f}s)"
        )


# --------------------------------------------------------------------------
# bitmask helpers for Z_k


def _rot(mask: int, t: int, k: int, full: int) -> int:
    t %= k
    return ((mask << t) | (mask >> (k - t))) & full if t else mask


def _bits(mask: int) -> list[int]:
    out, i = [], 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _popcount(x: int) -> int:
    return bin(x).count("1")


def mask_sumsets(mask: int, k: int) -> tuple[int, int]:
    """``(A +' A, A + A)`` as masks for ``A`` given by ``mask`` in ``Z_k``."""
    full = (1 << k) - 1
    rs = fs = 0
    for i in _bits(mask):
        fs |= _rot(mask, i, k, full)
        rs |= _rot(mask & ~(1 << i), i, k, full)
    return rs, fs


def _set_of(mask: int, k: int) -> GroupSet:
    return GroupSet(FinAbGroup.cyclic(k), _bits(mask))


def _fmt_set(mask: int) -> str:
    return "{" + ", ".join(map(str, _bits(mask))) + "}"


# --------------------------------------------------------------------------
# restricted-sumset bound


def lev_check_set(A: GroupSet) -> str | None:
    """Reproducer if ``A`` meets the golden-ratio hypothesis but ``A +' A != A + A``."""
    if len(A) < 2:
        return None
    rs = restricted_sumset(A)
    if not lev_inequality(len(A), len(rs), A.group.doubling_constant()):
        return None
    full = sumset(A, A)
    if rs != full:
        return f"{A.group.name}: A = {A.sorted()} has |A+'A| = {len(rs)} < |A+A| = {len(full)}"
    return None


def lev_exhaustive(max_k: int = DEFAULT_LEV_BOUND, min_k: int = 1) -> OracleResult:
    """Every subset of ``Z_k`` containing 0 (translation covers the rest), ``k <= max_k``."""
    res = OracleResult(f"restricted-sumset bound, all subsets of Z_k, k <= {max_k}")
    t0 = time.perf_counter()
    for k in range(min_k, max_k + 1):
        L = 2 if k % 2 == 0 else 1
        for rest in range(1 << (k - 1)):
            mask = (rest << 1) | 1
            n = _popcount(mask)
            res.checked += 1
            if n < 2:
                continue
            rs, fs = mask_sumsets(mask, k)
            if not lev_inequality(n, _popcount(rs), L):
                continue
            res.applicable += 1
            if rs != fs:
                msg = lev_check_set(_set_of(mask, k))
                if msg:
                    res.fail(msg)
    res.seconds = time.perf_counter() - t0
    return res


def _structured_subset(rng: random.Random, k: int) -> int:
    """Random set concentrated on one coset of a subgroup, with a little noise."""
    divisors = [d for d in range(1, k + 1) if k % d == 0]
    d = rng.choice(divisors)  # subgroup dZ_k of order k/d
    h = k // d
    off = rng.randrange(d)
    coset = [off + d * j for j in range(h)]
    lo = max(1, int(h * 0.6))
    size = rng.randint(min(lo, h), h)
    chosen = set(rng.sample(coset, size))
    for _ in range(rng.choice((0, 0, 0, 1, 2))):
        chosen.add(rng.randrange(k))
    for _ in range(rng.choice((0, 0, 1))):
        if len(chosen) > 2:
            chosen.discard(rng.choice(sorted(chosen)))
    return sum(1 << x for x in chosen)


def lev_sampled(max_k: int = 40, min_k: int = 19, per_k: int = 400, seed: int = 0) -> OracleResult:
    """Seeded samples in ``Z_k`` for ``min_k <= k <= max_k``: half structured, half uniform."""
    res = OracleResult(f"restricted-sumset bound, {per_k} samples per k in {min_k}..{max_k}")
    rng = random.Random(seed)
    t0 = time.perf_counter()
    for k in range(min_k, max_k + 1):
        L = 2 if k % 2 == 0 else 1
        for i in range(per_k):
            mask = _structured_subset(rng, k) if i % 2 == 0 else rng.getrandbits(k)
            n = _popcount(mask)
            res.checked += 1
            if n < 2:
                continue
            rs, fs = mask_sumsets(mask, k)
            if not lev_inequality(n, _popcount(rs), L):
                continue
            res.applicable += 1
            if rs != fs:
                msg = lev_check_set(_set_of(mask, k))
                if msg:
                    res.fail(msg)
    res.seconds = time.perf_counter() - t0
    return res


# --------------------------------------------------------------------------
# small-doubling coset lemma


def _subgroup_masks(k: int) -> dict[int, int]:
    """``d -> mask of dZ_k`` for every divisor ``d`` of ``k``, smallest ``d`` first."""
    return {d: sum(1 << j for j in range(0, k, d)) for d in range(1, k + 1) if k % d == 0}


def _mask_coset_ok(a1: int, a2: int, s: int, k: int, sub_mask: dict[int, int]) -> bool:
    """``s = A1 + A2`` is one coset of its stabilizer and both sets (each holding 0) lie in it."""
    full = (1 << k) - 1
    # the stabilizer of s is dZ_k for its least period d
    d = next(d for d in sub_mask if _rot(s, d, k, full) == s)
    h = sub_mask[d]
    return _popcount(s) == k // d and not (a1 & ~h) and not (a2 & ~h)


def lemma_exhaustive(max_k: int = DEFAULT_LEMMA_BOUND, min_k: int = 1) -> OracleResult:
    """All pairs ``A1, A2`` of subsets of ``Z_k`` containing 0 that meet the size hypotheses.

    Translating either set moves the sumset without changing cosets or the
    stabilizer, so fixing ``0`` in both loses nothing.
    """
    res = OracleResult(f"small-doubling coset lemma, all pairs in Z_k, k <= {max_k}")
    t0 = time.perf_counter()
    for k in range(min_k, max_k + 1):
        full = (1 << k) - 1
        sub_mask = _subgroup_masks(k)
        by_size: dict[int, list[int]] = {}
        for rest in range(1 << (k - 1)):
            m = (rest << 1) | 1
            by_size.setdefault(_popcount(m), []).append(m)
        for n1, masks1 in by_size.items():
            sizes2 = [n2 for n2 in by_size if n2 <= n1 and 4 * n2 >= 3 * n1]
            for a1 in masks1:
                rots = [_rot(a1, t, k, full) for t in range(k)]
                for n2 in sizes2:
                    for a2 in by_size[n2]:
                        res.checked += 1
                        s = 0
                        x, t = a2, 0
                        while x:
                            if x & 1:
                                s |= rots[t]
                            x >>= 1
                            t += 1
                        ns = _popcount(s)
                        if 2 * ns >= 3 * n1:
                            continue
                        res.applicable += 1
                        if not _mask_coset_ok(a1, a2, s, k, sub_mask):
                            g = FinAbGroup.cyclic(k)
                            v = check_lemma_AB(GroupSet(g, _bits(a1)), GroupSet(g, _bits(a2)))
                            if v.status == COUNTEREXAMPLE:
                                res.fail(f"Z{k}: A1 = {_fmt_set(a1)}, A2 = {_fmt_set(a2)}: {v.detail}")
                            else:
                                res.fail(f"Z{k}: filter and generic check disagree on {_fmt_set(a1)}, {_fmt_set(a2)}")
    res.seconds = time.perf_counter() - t0
    return res


def lemma_noncyclic(orders_list=((2, 2), (2, 4), (3, 3), (2, 2, 2))) -> OracleResult:
    """Same lemma over small non-cyclic groups, with the generic code (0 fixed in both sets)."""
    res = OracleResult("small-doubling coset lemma, non-cyclic groups " + ", ".join(
        "x".join(map(str, o)) for o in orders_list))
    t0 = time.perf_counter()
    for orders in orders_list:
        g = FinAbGroup(orders)
        others = [x for x in g.elements() if x != g.zero]
        subsets = [
            frozenset((g.zero,) + c) for r in range(len(others) + 1) for c in combinations(others, r)
        ]
        for A1 in subsets:
            for A2 in subsets:
                n1, n2 = len(A1), len(A2)
                if n2 > n1 or 4 * n2 < 3 * n1:
                    continue
                res.checked += 1
                S1, S2 = GroupSet(g, A1), GroupSet(g, A2)
                if lemma_ab_hypotheses(n1, n2, len(sumset(S1, S2))):
                    continue
                res.applicable += 1
                v = check_lemma_AB(S1, S2)
                if v.status != HOLDS:
                    res.fail(f"{g.name}: A1 = {S1.sorted()}, A2 = {S2.sorted()}: {v.detail}")
    res.seconds = time.perf_counter() - t0
    return res


def cross_validate_cyclic(max_k: int = 8) -> OracleResult:
    """The mask filters agree with the generic functions on every subset (pair) of Z_k."""
    res = OracleResult(f"mask filters vs generic code, k <= {max_k}")
    t0 = time.perf_counter()
    for k in range(1, max_k + 1):
        for mask in range(1, 1 << k):
            A = _set_of(mask, k)
            res.checked += 1
            rs, fs = mask_sumsets(mask, k)
            full_set = sumset(A, A)
            if fs != sum(1 << x[0] for x in full_set.elements):
                res.fail(f"Z{k}: sumset mismatch for {_fmt_set(mask)}")
            if len(A) >= 2:
                r_generic = restricted_sumset(A)
                if rs != sum(1 << x[0] for x in r_generic.elements):
                    res.fail(f"Z{k}: restricted sumset mismatch for {_fmt_set(mask)}")
        if k <= 6:
            # lemma verdicts: both sets hold 0, as in the exhaustive oracle
            sub_mask = _subgroup_masks(k)
            full = (1 << k) - 1
            zero_masks = [m for m in range(1, 1 << k) if m & 1]
            for a1, a2 in product(zero_masks, repeat=2):
                A1, A2 = _set_of(a1, k), _set_of(a2, k)
                v = check_lemma_AB(A1, A2)
                res.checked += 1
                s = 0
                for t in _bits(a2):
                    s |= _rot(a1, t, k, full)
                n1, n2, ns = _popcount(a1), _popcount(a2), _popcount(s)
                mask_applicable = n2 <= n1 and 4 * n2 >= 3 * n1 and 2 * ns < 3 * n1
                if mask_applicable != (v.status != INAPPLICABLE):
                    res.fail(f"Z{k}: hypothesis filter disagrees on {_fmt_set(a1)}, {_fmt_set(a2)}")
                    continue
                if not mask_applicable:
                    continue
                res.applicable += 1
                if _mask_coset_ok(a1, a2, s, k, sub_mask) != (v.status == HOLDS):
                    res.fail(f"Z{k}: coset filter disagrees on {_fmt_set(a1)}, {_fmt_set(a2)}")
    res.seconds = time.perf_counter() - t0
    return res


# --------------------------------------------------------------------------
# conic + line collinearity bridge


def _rand_rational(rng: random.Random, span: int = 30) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, span))


def _rand_element(rng: random.Random, kind: ConicKind):
    if kind is ConicKind.ELLIPSE and rng.random() < 0.05:
        return U_INF
    while True:
        x = _rand_rational(rng)
        if kind is not ConicKind.HYPERBOLA or x != 0:
            return x


def gt_bridge(
    kind: ConicKind,
    samples: int = DEFAULT_GT_SAMPLES,
    seed: int = 0,
    collinear_pred: Collinear = collinear,
) -> OracleResult:
    """Group-zero versus collinearity on seeded random triples.

    Half of the triples are completed to ``x + y + z = 0`` so that both
    verdicts are exercised.
    """
    kind = ConicKind(kind)
    g = group_for(kind)
    rng = random.Random(f"{seed}:{kind.value}")
    res = OracleResult(f"conic+line bridge ({kind.value}), {samples} samples")
    t0 = time.perf_counter()
    while res.checked < samples:
        x, y = _rand_element(rng, kind), _rand_element(rng, kind)
        if x == y:
            continue
        z = g.neg(g.add(x, y)) if rng.random() < 0.5 else _rand_element(rng, kind)
        res.checked += 1
        group_zero, geometric = gt_collinear_check(x, y, z, kind)
        injected = collinear_pred(phi_Q(x, kind), phi_Q(y, kind), phi_ell(z, kind))
        res.applicable += group_zero
        if not (group_zero == geometric == injected):
            res.fail(f"{kind.value}: x={x}, y={y}, z={z}: group {group_zero}, geometry {injected}")
    res.seconds = time.perf_counter() - t0
    return res


# --------------------------------------------------------------------------
# chord-tangent law over prime fields


def small_curves(primes=(5, 7), max_order: int = 30) -> list[WeierstrassCurve]:
    """All nonsingular ``y^2 = x^3 + a x + b`` over the given prime fields with at most ``max_order`` points."""
    out = []
    for p in primes:
        F = PrimeField(p)
        for a, b in product(range(p), repeat=2):
            if (4 * a**3 + 27 * b**2) % p == 0:
                continue
            E = WeierstrassCurve(a, b, F)
            if E.order <= max_order:
                out.append(E)
    return out


def ec_law(curves=None, collinear_pred: Collinear = collinear) -> OracleResult:
    """Associativity, collinearity of ``x, y, -(x+y)`` and the tangent bound, exhaustively."""
    curves = small_curves() if curves is None else curves
    res = OracleResult(f"chord-tangent law on {len(curves)} curves")
    t0 = time.perf_counter()
    for E in curves:
        pts = E.enumerate_points()
        proj = {p: E.to_proj(p) for p in pts}
        for x, y, z in product(pts, repeat=3):
            res.checked += 1
            if E.add(E.add(x, y), z) != E.add(x, E.add(y, z)):
                res.fail(f"{E.name}: ({x} + {y}) + {z} != {x} + ({y} + {z})")
        for x, y, z in combinations(pts, 3):
            res.checked += 1
            sums_zero = E.add(E.add(x, y), z).is_identity
            res.applicable += sums_zero
            if sums_zero != collinear_pred(proj[x], proj[y], proj[z]):
                res.fail(f"{E.name}: {x}, {y}, {z}: sum zero {sums_zero}, collinear {not sums_zero}")
        for x in pts:
            # the tangent at x meets the curve again at -2x
            third = E.tangent_third(x)
            res.checked += 1
            if not E.tangent_line(x).contains(proj[third]):
                res.fail(f"{E.name}: tangent at {x} misses {third}")
        F = E.field
        for X, Y, Z in _plane_points(F.p):
            a = ProjPoint(X, Y, Z, F)
            res.checked += 1
            cnt = E.tangent_count_through(a)
            if cnt > 6:
                res.fail(f"{E.name}: {cnt} tangents through {a!r}")
    res.seconds = time.perf_counter() - t0
    return res


def _plane_points(p: int):
    """Normalized representatives of every point of the projective plane over F_p."""
    for x, y in product(range(p), repeat=2):
        yield (x, y, 1)
    for x in range(p):
        yield (x, 1, 0)
    yield (1, 0, 0)


def negated_collinear(p: ProjPoint, q: ProjPoint, r: ProjPoint) -> bool:
    """Deliberately broken predicate used to check that the oracles can fail."""
    return not collinear(p, q, r)


def run_selftest(
    lev_bound: int = DEFAULT_LEV_BOUND,
    lemma_bound: int = DEFAULT_LEMMA_BOUND,
    gt_samples: int = DEFAULT_GT_SAMPLES,
    lev_samples: bool = True,
    collinear_pred: Collinear = collinear,
) -> list[OracleResult]:
    results = [
        cross_validate_cyclic(min(lev_bound, 8)),
        lev_exhaustive(lev_bound),
    ]
    if lev_samples:
        results.append(lev_sampled(max_k=40, min_k=lev_bound + 1, per_k=100))
    results.append(lemma_exhaustive(lemma_bound))
    results.append(lemma_noncyclic())
    for kind in ConicKind:
        results.append(gt_bridge(kind, gt_samples, collinear_pred=collinear_pred))
    results.append(ec_law(collinear_pred=collinear_pred))
    return results
