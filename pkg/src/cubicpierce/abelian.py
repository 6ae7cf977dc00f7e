"""Abelian groups, sumsets, restricted sumsets, stabilizers and coset recovery.

Groups are small objects exposing ``zero``, ``add``, ``neg`` and membership;
elements are plain hashable values (residue tuples, :class:`AngleElem`,
fractions, curve points).  The set-level operations at the bottom of the
module work for any such group.

The circle group R/Z carries a formal generic rotation: an element is
``q + c*theta`` with ``q`` rational mod 1 and ``c`` an integer coefficient of
an angle ``theta`` that satisfies no rational relation.  Equality of such
elements is therefore exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import lcm, prod
from typing import Hashable, Iterable, Iterator

from .errors import DegenerateInputError, InfiniteGroupError, UsageError

DEFAULT_CLOSURE_CAP = 10_000

#: Marker returned when no finite subgroup contains the requested differences.
INFINITE = "infinite"


def fraction_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


class AbelianGroup:
    """Additive abelian group; subclasses supply the arithmetic."""

    finite = False
    name = "group"

    @property
    def zero(self):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def element(self, raw):
        """Coerce ``raw`` into a group element, raising ``UsageError`` if it is not one."""
        return raw

    def contains(self, x) -> bool:
        try:
            return self.element(x) == x
        except (UsageError, TypeError, ValueError):
            return False

    def elements(self) -> list:
        raise UsageError(f"{self.name} is infinite")

    def doubling_constant(self) -> int:
        """Maximum number of solutions of ``x + x = a``; equals the 2-torsion count."""
        return sum(1 for x in self.elements() if self.add(x, x) == self.zero)

    def sort_key(self, x):
        return x

    def multiple(self, x, k: int):
        if k < 0:
            return self.multiple(self.neg(x), -k)
        acc, base = self.zero, x
        while k:
            if k & 1:
                acc = self.add(acc, base)
            base = self.add(base, base)
            k >>= 1
        return acc

    def generated_subgroup(self, gens: Iterable, cap: int = DEFAULT_CLOSURE_CAP) -> frozenset:
        """Closure of ``gens`` under addition; raises ``InfiniteGroupError`` past ``cap``."""
        gens = [g for g in set(gens) if g != self.zero]
        seen = {self.zero}
        frontier = [self.zero]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.add(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
                        if len(seen) > cap:
                            raise InfiniteGroupError(f"subgroup closure exceeded {cap} elements")
            frontier = nxt
        return frozenset(seen)

    def encode(self, x):
        return x

    def decode(self, obj):
        return self.element(obj)


class FinAbGroup(AbelianGroup):
    """Product of cyclic groups ``Z_{n1} x ... x Z_{nr}``; elements are residue tuples."""

    finite = True

    def __init__(self, orders: Iterable[int]):
        orders = tuple(int(n) for n in orders)
        if not orders or any(n < 1 for n in orders):
            raise UsageError(f"cyclic orders must be positive integers, got {orders}")
        self.orders = orders

    @classmethod
    def cyclic(cls, n: int) -> "FinAbGroup":
        return cls((n,))

    @property
    def name(self) -> str:
        return " x ".join(f"Z{n}" for n in self.orders)

    @property
    def order(self) -> int:
        return prod(self.orders)

    @property
    def zero(self):
        return (0,) * len(self.orders)

    def add(self, a, b):
        return tuple((x + y) % n for x, y, n in zip(a, b, self.orders))

    def neg(self, a):
        return tuple(-x % n for x, n in zip(a, self.orders))

    def element(self, raw):
        if isinstance(raw, int) and not isinstance(raw, bool):
            raw = (raw,)
        raw = tuple(raw)
        if len(raw) != len(self.orders) or not all(isinstance(v, int) for v in raw):
            raise UsageError(f"{raw!r} is not an element of {self.name}")
        return tuple(v % n for v, n in zip(raw, self.orders))

    def elements(self) -> list:
        return list(product(*(range(n) for n in self.orders)))

    def doubling_constant(self) -> int:
        return 2 ** sum(1 for n in self.orders if n % 2 == 0)

    def encode(self, x):
        return list(x)

    def __eq__(self, other):
        return isinstance(other, FinAbGroup) and other.orders == self.orders

    def __hash__(self):
        return hash(("FinAb", self.orders))

    def __repr__(self):
        return f"FinAbGroup({self.orders})"


@dataclass(frozen=True, order=False)
class AngleElem:
    """Element ``q + c*theta`` of R/Z; ``q`` is reduced into [0, 1)."""

    q: Fraction
    c: int = 0

    def __init__(self, q=0, c: int = 0):
        q = Fraction(q)
        object.__setattr__(self, "q", q - (q.numerator // q.denominator))
        object.__setattr__(self, "c", int(c))

    def __add__(self, other: "AngleElem") -> "AngleElem":
        if not isinstance(other, AngleElem):
            return NotImplemented
        return AngleElem(self.q + other.q, self.c + other.c)

    def __sub__(self, other: "AngleElem") -> "AngleElem":
        if not isinstance(other, AngleElem):
            return NotImplemented
        return AngleElem(self.q - other.q, self.c - other.c)

    def __neg__(self) -> "AngleElem":
        return AngleElem(-self.q, -self.c)

    def shift(self, r) -> "AngleElem":
        """Add a rational rotation ``r``."""
        return AngleElem(self.q + Fraction(r), self.c)

    def numeric(self, theta: float) -> float:
        """Turns (fraction of a full circle) for a concrete display value of theta."""
        return (float(self.q) + self.c * theta) % 1.0

    def __repr__(self):
        q = fraction_str(self.q) if self.q.denominator != 1 else str(self.q.numerator)
        if self.c == 0:
            return f"<{q}>"
        t = "θ" if abs(self.c) == 1 else f"{abs(self.c)}θ"
        return f"<{q}{'+' if self.c > 0 else '-'}{t}>"


class AngleGroup(AbelianGroup):
    """The circle group R/Z with a formal generic rotation theta."""

    name = "R/Z"

    @property
    def zero(self):
        return AngleElem(0, 0)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def element(self, raw):
        if isinstance(raw, AngleElem):
            return raw
        if isinstance(raw, (int, Fraction, str)) and not isinstance(raw, bool):
            return AngleElem(Fraction(raw), 0)
        raise UsageError(f"{raw!r} is not an angle element")

    def doubling_constant(self) -> int:
        return 2

    def sort_key(self, x):
        return (x.c, x.q)

    def generated_subgroup(self, gens, cap: int = DEFAULT_CLOSURE_CAP) -> frozenset:
        gens = list(gens)
        if any(g.c != 0 for g in gens):
            raise InfiniteGroupError("a theta component generates an infinite cyclic subgroup")
        k = lcm(1, *(g.q.denominator for g in gens))
        if k > cap:
            raise InfiniteGroupError(f"subgroup of order {k} exceeds cap {cap}")
        return frozenset(AngleElem(Fraction(j, k)) for j in range(k))

    def encode(self, x):
        return {"q": fraction_str(x.q), "c": x.c}

    def decode(self, obj):
        if not isinstance(obj, dict) or set(obj) != {"q", "c"}:
            raise UsageError(f"angle element must be {{q, c}}, got {obj!r}")
        return AngleElem(Fraction(obj["q"]), int(obj["c"]))

    def __eq__(self, other):
        return isinstance(other, AngleGroup)

    def __hash__(self):
        return hash("R/Z")

    def __repr__(self):
        return "AngleGroup()"


CIRCLE = AngleGroup()


class RationalAdditiveGroup(AbelianGroup):
    """(QQ, +); torsion-free, so its only finite subgroup is {0}.  Contains (Z, +)."""

    name = "(Q,+)"

    @property
    def zero(self):
        return Fraction(0)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def element(self, raw):
        if isinstance(raw, bool):
            raise UsageError("booleans are not rationals")
        return Fraction(raw)

    def doubling_constant(self) -> int:
        return 1

    def generated_subgroup(self, gens, cap: int = DEFAULT_CLOSURE_CAP) -> frozenset:
        if any(g != 0 for g in gens):
            raise InfiniteGroupError("nonzero rationals have infinite additive order")
        return frozenset({Fraction(0)})

    def encode(self, x):
        return fraction_str(x)

    def __eq__(self, other):
        return isinstance(other, RationalAdditiveGroup)

    def __hash__(self):
        return hash("(Q,+)")


class RationalMultiplicativeGroup(AbelianGroup):
    """(QQ*, x) written additively: ``add`` is multiplication, ``zero`` is 1.

    Sign and absolute value split it as Z/2 x (positive rationals), mirroring
    the Z/2Z x R group of a hyperbola.
    """

    name = "(Q*,x)"

    @property
    def zero(self):
        return Fraction(1)

    def add(self, a, b):
        return a * b

    def neg(self, a):
        return 1 / a

    def element(self, raw):
        if isinstance(raw, bool):
            raise UsageError("booleans are not rationals")
        x = Fraction(raw)
        if x == 0:
            raise UsageError("0 is not in the multiplicative group")
        return x

    def doubling_constant(self) -> int:
        return 2

    def generated_subgroup(self, gens, cap: int = DEFAULT_CLOSURE_CAP) -> frozenset:
        gens = set(gens)
        if not gens <= {Fraction(1), Fraction(-1)}:
            raise InfiniteGroupError("only +-1 have finite multiplicative order in QQ*")
        return frozenset({Fraction(1)} | gens)

    def encode(self, x):
        return fraction_str(x)

    def __eq__(self, other):
        return isinstance(other, RationalMultiplicativeGroup)

    def __hash__(self):
        return hash("(Q*,x)")


class GroupSet:
    """Finite set of elements of one group."""

    __slots__ = ("group", "elements")

    def __init__(self, group: AbelianGroup, elements: Iterable = ()):
        self.group = group
        self.elements = frozenset(group.element(x) for x in elements)

    def __iter__(self) -> Iterator:
        return iter(self.sorted())

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self.elements

    def __eq__(self, other):
        if isinstance(other, GroupSet):
            return self.group == other.group and self.elements == other.elements
        return NotImplemented

    def __hash__(self):
        return hash(self.elements)

    def __le__(self, other: "GroupSet") -> bool:
        _same_group(self, other)
        return self.elements <= other.elements

    def sorted(self) -> list:
        return sorted(self.elements, key=self.group.sort_key)

    def neg(self) -> "GroupSet":
        return GroupSet(self.group, (self.group.neg(x) for x in self.elements))

    def translate(self, t) -> "GroupSet":
        return GroupSet(self.group, (self.group.add(x, t) for x in self.elements))

    def __repr__(self):
        return f"GroupSet({self.group.name}, {self.sorted()!r})"


def _same_group(*sets: GroupSet) -> AbelianGroup:
    g = sets[0].group
    for s in sets[1:]:
        if s.group != g:
            raise UsageError(f"group mismatch: {g.name} vs {s.group.name}")
    return g


@dataclass(frozen=True)
class SubgroupDescriptor:
    """A finite subgroup ``H`` (listed in full) and an offset naming the coset ``offset + H``."""

    group: AbelianGroup
    elements: frozenset
    generators: tuple
    offset: Hashable = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.elements

    def coset(self) -> frozenset:
        off = self.group.zero if self.offset is None else self.offset
        return frozenset(self.group.add(off, h) for h in self.elements)

    def sorted(self) -> list:
        return sorted(self.elements, key=self.group.sort_key)

    def is_closed(self) -> bool:
        g = self.group
        return g.zero in self.elements and all(
            g.sub(a, b) in self.elements for a in self.elements for b in self.elements
        )

    def to_dict(self) -> dict:
        g = self.group
        return {
            "order": self.order,
            "generators": [g.encode(x) for x in self.generators],
            "elements": [g.encode(x) for x in self.sorted()],
            "offset": None if self.offset is None else g.encode(self.offset),
        }


def _greedy_generators(group: AbelianGroup, elements: frozenset) -> tuple:
    """A short generating list for the finite subgroup ``elements``."""
    gens: list = []
    span = frozenset({group.zero})
    for x in sorted(elements, key=group.sort_key):
        if x not in span:
            gens.append(x)
            span = group.generated_subgroup(gens)
        if span == elements:
            break
    return tuple(gens)


def describe_subgroup(group: AbelianGroup, elements: Iterable, offset=None) -> SubgroupDescriptor:
    elements = frozenset(elements)
    return SubgroupDescriptor(group, elements, _greedy_generators(group, elements), offset)


# --------------------------------------------------------------------------
# set-level operations


def sumset(A: GroupSet, B: GroupSet) -> GroupSet:
    g = _same_group(A, B)
    return GroupSet(g, (g.add(a, b) for a in A.elements for b in B.elements))


def restricted_sumset(A: GroupSet) -> GroupSet:
    """``{a + a' : a, a' in A, a != a'}``."""
    if len(A) < 2:
        raise DegenerateInputError("restricted sumset needs at least two elements")
    g = A.group
    return GroupSet(g, (g.add(a, b) for a, b in combinations(A.elements, 2)))


def stabilizer(S: GroupSet) -> SubgroupDescriptor:
    """``{x : x + S = S}``.

    Every stabilizing ``x`` maps a fixed ``s0`` into ``S``, so the candidates
    ``s - s0`` are exhaustive; this stays exact in infinite groups as well.
    """
    if not S.elements:
        raise DegenerateInputError("stabilizer of the empty set is the whole group")
    g = S.group
    s0 = min(S.elements, key=g.sort_key)
    found = []
    for s in S.elements:
        x = g.sub(s, s0)
        if all(g.add(x, t) in S.elements for t in S.elements):
            found.append(x)
    return describe_subgroup(g, found)


def doubling_constant(group: AbelianGroup) -> int:
    return group.doubling_constant()


def lev_margin(n: int, s: int, L: int) -> int:
    """``2(s + L + 2) - n``; the golden-ratio bound holds iff this is <= sqrt(5)*n."""
    return 2 * (s + L + 2) - n


def lev_inequality(n: int, s: int, L: int) -> bool:
    """Exact test of ``s <= (1 + sqrt 5)/2 * n - (L + 2)`` in integers."""
    m = lev_margin(n, s, L)
    return m <= 0 or m * m <= 5 * n * n


def lev_hypothesis_holds(A: GroupSet, L: int | None = None) -> bool:
    if len(A) < 2:
        raise DegenerateInputError("the restricted-sumset bound needs |A| >= 2")
    if L is None:
        L = A.group.doubling_constant()
    return lev_inequality(len(A), len(restricted_sumset(A)), L)


@dataclass(frozen=True)
class Verdict:
    holds: bool
    detail: str = ""

    def __bool__(self):
        return self.holds


def check_lev_conclusion(A: GroupSet) -> Verdict:
    """Does the restricted sumset equal the full sumset ``A + A``?"""
    rs, full = restricted_sumset(A), sumset(A, A)
    if rs == full:
        return Verdict(True, f"|A+'A| = |A+A| = {len(full)}")
    missing = sorted(full.elements - rs.elements, key=A.group.sort_key)
    return Verdict(False, f"A+A has {len(missing)} sums missing from A+'A, e.g. {missing[0]!r}")


HOLDS = "holds"
INAPPLICABLE = "hypothesis not met"
COUNTEREXAMPLE = "counterexample"


@dataclass(frozen=True)
class LemmaVerdict:
    """Three-way outcome of the small-doubling coset test for ``A1 + A2``."""

    status: str
    stabilizer: SubgroupDescriptor | None = None
    detail: str = ""

    @property
    def holds(self) -> bool:
        return self.status == HOLDS


def lemma_ab_hypotheses(n1: int, n2: int, nsum: int) -> str | None:
    """Name of the first failed size hypothesis, or ``None`` when all hold."""
    if n1 == 0 or n2 == 0:
        return "A1 and A2 must be nonempty"
    if n1 < n2:
        return f"|A1| = {n1} < |A2| = {n2}"
    if 4 * n2 < 3 * n1:
        return f"|A2| = {n2} < 3/4 |A1| = {3 * n1}/4"
    if 2 * nsum >= 3 * n1:
        return f"|A1+A2| = {nsum} is not below 3/2 |A1| = {3 * n1 / 2:g}"
    return None


def is_coset(S: Iterable, H: SubgroupDescriptor) -> bool:
    """Is ``S`` exactly one coset of ``H``?"""
    S = frozenset(S)
    if len(S) != H.order:
        return False
    return in_one_coset(S, H)


def in_one_coset(S: Iterable, H: SubgroupDescriptor) -> bool:
    S = list(S)
    if not S:
        return True
    g = H.group
    return all(g.sub(s, S[0]) in H.elements for s in S)


def check_lemma_AB(A1: GroupSet, A2: GroupSet) -> LemmaVerdict:
    """Small doubling forces ``A1 + A2`` to be a coset of its stabilizer."""
    g = _same_group(A1, A2)
    S = sumset(A1, A2)
    failed = lemma_ab_hypotheses(len(A1), len(A2), len(S))
    if failed:
        return LemmaVerdict(INAPPLICABLE, None, failed)
    H = stabilizer(S)
    problems = []
    if not is_coset(S.elements, H):
        problems.append(f"A1+A2 ({len(S)} elements) is not a coset of its stabilizer (order {H.order})")
    for tag, A in (("A1", A1), ("A2", A2)):
        if not in_one_coset(A.elements, H):
            problems.append(f"{tag} meets more than one coset of H")
    if problems:
        return LemmaVerdict(COUNTEREXAMPLE, H, "; ".join(problems))
    s0 = min(S.elements, key=g.sort_key)
    return LemmaVerdict(HOLDS, SubgroupDescriptor(g, H.elements, H.generators, s0), f"|H| = {H.order}")


def minimal_containing_coset(*sets: GroupSet) -> SubgroupDescriptor | str:
    """Smallest subgroup ``H`` with each given set inside a single coset of ``H``.

    ``H`` is generated by the differences ``a - a0`` inside each set; the
    offset reported is ``a0`` of the first set (its least element).  Returns
    :data:`INFINITE` when those differences generate no finite subgroup.
    """
    g = _same_group(*sets)
    diffs = []
    offset = None
    for A in sets:
        if not A.elements:
            raise DegenerateInputError("cannot place an empty set in a coset")
        a0 = min(A.elements, key=g.sort_key)
        if offset is None:
            offset = a0
        diffs.extend(g.sub(a, a0) for a in A.elements)
    try:
        elems = g.generated_subgroup(diffs)
    except InfiniteGroupError:
        return INFINITE
    return describe_subgroup(g, elems, offset)


def all_subgroups(group: AbelianGroup) -> list[SubgroupDescriptor]:
    """Every subgroup of a finite group, smallest first."""
    if not group.finite:
        raise UsageError("subgroup enumeration needs a finite group")
    elems = group.elements()
    cyclic = {group.generated_subgroup([x]) for x in elems}
    found = set(cyclic)
    frontier = set(cyclic)
    while frontier:
        new = set()
        for A in frontier:
            for C in cyclic:
                if C <= A:
                    continue
                J = group.generated_subgroup(A | C)
                if J not in found:
                    new.add(J)
        found |= new
        frontier = new
    ordered = sorted(found, key=lambda s: (len(s), sorted(map(group.sort_key, s))))
    return [describe_subgroup(group, s) for s in ordered]
