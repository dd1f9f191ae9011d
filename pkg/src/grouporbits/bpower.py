"""Boolean powers of finite groups over interval rings.

An element of the Boolean power is a finitely supported labelling of [0,1):
a normal form (g_1)_{A_1} ... (g_n)_{A_n} with distinct nontrivial labels g_i
and disjoint nonempty carrier sets A_i from the ring.  Multiplication is
pointwise; three families of automorphisms act: ring rearrangements on the
carriers, a base automorphism applied globally, and a base automorphism
applied locally inside a window set.

``bp_canonicalize`` implements the constructive orbit labelling: push every
label to its base-orbit representative with local automorphisms (the carriers
of equal representatives then merge), and move the resulting carrier family
onto a canonical block family with one ring rearrangement.  The label records
each base orbit present with the ring class of its merged carrier, plus the
class of the total support, and the witness chain is verified exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb, gcd

from .boolring import (
    R1,
    R2,
    EMPTY,
    FULL,
    PROPER,
    IntervalSet,
    PLMap,
    SetParseError,
    VariantMismatchError,
    apply_map,
    build_map_family,
    parse_set,
    format_set,
    random_set,
    ring_orbit_class,
)
from .finite import FiniteGroup, GroupMap, OrbitPartition, parse_permutation
from .qarith import Q


class BPElement:
    """Normal form: parts (label index, carrier set), sorted by label index."""

    __slots__ = ("base", "variant", "parts")

    def __init__(self, base, variant, parts, _normal=False):
        self.base = base
        self.variant = variant
        if not _normal:
            parts = _normalize(base, variant, parts)
        self.parts = tuple(parts)

    @classmethod
    def identity(cls, base, variant=R1):
        return cls(base, variant, (), _normal=True)

    @classmethod
    def single(cls, base, g, carrier):
        """One labelled part (g may be an element index or a cycle string)."""
        if isinstance(g, str):
            g = _element_index(base, g)
        return cls(base, carrier.variant, [(g, carrier)])

    def is_identity(self):
        return not self.parts

    def support(self):
        out = IntervalSet.empty(self.variant)
        for _, a in self.parts:
            out = out | a
        return out

    def label_at(self, t):
        """Base element index at a sample point of [0,1)."""
        for g, a in self.parts:
            if t in a:
                return g
        return 0

    def __eq__(self, other):
        if not isinstance(other, BPElement):
            return NotImplemented
        return (
            self.base is other.base
            and self.variant == other.variant
            and self.parts == other.parts
        )

    def __hash__(self):
        return hash((id(self.base), self.variant, self.parts))

    def __str__(self):
        if not self.parts:
            return "e"
        return ";".join(
            f"{self.base.names[g]}@{format_set(a)}" for g, a in self.parts
        )

    def __repr__(self):
        return f"<BPElement {self}>"


def _element_index(base, name):
    perm = parse_permutation(name, degree=len(base.perms[0]) if base.perms else None)
    if base.perms is None:
        raise ValueError("named parts need a permutation-built base group")
    try:
        return base.perms.index(perm)
    except ValueError:
        raise ValueError(f"{name!r} is not in the base group") from None


def _normalize(base, variant, parts):
    """Merge equal labels (disjoint carriers union), drop trivial parts."""
    merged = {}
    claimed = IntervalSet.empty(variant)
    for g, a in parts:
        if a.variant != variant:
            raise VariantMismatchError("carrier from the wrong ring variant")
        if g == 0 or a.is_empty():
            continue
        if claimed & a:
            raise ValueError("carrier sets must be pairwise disjoint")
        claimed = claimed | a
        merged[g] = merged[g] | a if g in merged else a
    return tuple(sorted(merged.items()))


def _check_compat(x, y):
    if x.base is not y.base or x.variant != y.variant:
        raise VariantMismatchError("elements from different Boolean powers")


def bp_mul(x, y):
    """Pointwise product, renormalized."""
    _check_compat(x, y)
    ux = x.support()
    uy = y.support()
    parts = []
    for g, a in x.parts:
        rest = a - uy
        if rest:
            parts.append((g, rest))
    for h, b in y.parts:
        rest = b - ux
        if rest:
            parts.append((h, rest))
    for g, a in x.parts:
        for h, b in y.parts:
            both = a & b
            if both:
                parts.append((x.base.mul(g, h), both))
    return BPElement(x.base, x.variant, parts)


def bp_inv(x):
    """Pointwise inverse."""
    return BPElement(
        x.base,
        x.variant,
        [(x.base.inverse(g), a) for g, a in x.parts],
        _normal=False,
    )


def bp_order(x):
    """Least common multiple of the part label orders."""
    n = 1
    for g, _ in x.parts:
        o = x.base.order_of(g)
        n = n * o // gcd(n, o)
    return n


def bp_pow(x, k):
    if k < 0:
        return bp_pow(bp_inv(x), -k)
    out = BPElement.identity(x.base, x.variant)
    for _ in range(k):
        out = bp_mul(out, x)
    return out


# ---------------------------------------------------------------------------
# automorphism families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RingMap:
    """Carrier rearrangement: (g)_A -> (g)_{f(A)}."""

    f: PLMap


@dataclass(frozen=True)
class GlobalF:
    """Base automorphism applied everywhere: (g)_A -> (g^f)_A."""

    f: GroupMap


@dataclass(frozen=True)
class LocalF:
    """Base automorphism applied inside a window:
    (g)_B -> (g^f)_{B & W} (g)_{B - W}."""

    f: GroupMap
    window: IntervalSet


@dataclass(frozen=True)
class BPAut:
    """A composition chain of the three atomic automorphism kinds."""

    steps: tuple

    def then(self, other):
        return BPAut(self.steps + other.steps)


def _check_group_map(base, gm):
    if gm.src is not base or gm.dst is not base or not gm.is_bijective():
        raise ValueError("component must be an automorphism of the base group")


def bp_apply(aut, x):
    """Apply an atomic automorphism or a BPAut chain to an element."""
    if isinstance(aut, BPAut):
        for step in aut.steps:
            x = bp_apply(step, x)
        return x
    if isinstance(aut, RingMap):
        parts = [(g, apply_map(aut.f, a)) for g, a in x.parts]
        return BPElement(x.base, x.variant, parts)
    if isinstance(aut, GlobalF):
        _check_group_map(x.base, aut.f)
        parts = [(aut.f(g), a) for g, a in x.parts]
        return BPElement(x.base, x.variant, parts)
    if isinstance(aut, LocalF):
        _check_group_map(x.base, aut.f)
        parts = []
        for g, b in x.parts:
            inside = b & aut.window
            outside = b - aut.window
            if inside:
                parts.append((aut.f(g), inside))
            if outside:
                parts.append((g, outside))
        return BPElement(x.base, x.variant, parts)
    raise TypeError(f"not an automorphism step: {aut!r}")


def check_c1_relation(alpha, f, window, probe):
    """Conjugating a windowed base automorphism by a ring rearrangement
    re-windows it: alpha^-1 . f_W . alpha acts like f_{alpha(W)}."""
    lhs = bp_apply(
        BPAut((RingMap(alpha.invert()), LocalF(f, window), RingMap(alpha))),
        probe,
    )
    rhs = bp_apply(LocalF(f, apply_map(alpha, window)), probe)
    return lhs == rhs


def check_c1_relation_global(alpha, f, probe):
    """Conjugating a global base automorphism by a ring rearrangement fixes it."""
    lhs = bp_apply(
        BPAut((RingMap(alpha.invert()), GlobalF(f), RingMap(alpha))), probe
    )
    return lhs == bp_apply(GlobalF(f), probe)


# ---------------------------------------------------------------------------
# orbit bound and constructive canonical labels
# ---------------------------------------------------------------------------


def orbit_bound(r, m):
    """1 + sum_k m^k C(r,k): orbit count bound for a base with r+1 orbits
    over a ring with m+1 orbits."""
    return 1 + sum(m**k * comb(r, k) for k in range(1, r + 1))


def canonical_block_family(count, support_class, variant):
    """Deterministic disjoint carrier family: blocks of width 1/(2*count)
    when the support is proper, width 1/count when it is full."""
    if count == 0:
        return []
    stride = Q(1, count) if support_class == FULL else Q(1, 2 * count)
    return [
        IntervalSet.interval(k * stride, (k + 1) * stride, variant)
        for k in range(count)
    ]


def bp_canonical_form(x, orbits: OrbitPartition):
    """(label, canonical element, verified witness chain).

    label = (((rep name, carrier class), ...), support class): the base-orbit
    representatives present, each with the ring class of the union of its
    carriers, plus the class of the total support.  Elements in one orbit of
    the rearrangement/base-automorphism action receive equal labels, and the
    witness chain maps x exactly onto the canonical element.
    """
    if orbits.group is not x.base:
        raise ValueError("orbit partition is for a different base group")
    if x.is_identity():
        return ((), EMPTY), x, BPAut(())
    steps = []
    for g, a in x.parts:
        w = orbits.witness_to(g)
        if w(orbits.rep_of(g)) != g:
            raise AssertionError("orbit witness broken")
        if w.images != tuple(range(x.base.order)):
            steps.append(LocalF(w.inverse(), a))
    y = bp_apply(BPAut(tuple(steps)), x)
    # parts now carry orbit representatives; equal reps merged by normal form
    reps = [g for g, _ in y.parts]
    carriers = [a for _, a in y.parts]
    support_class = ring_orbit_class(y.support())
    blocks = canonical_block_family(len(reps), support_class, x.variant)
    ring_step = RingMap(build_map_family(carriers, blocks, x.variant))
    steps.append(ring_step)
    canonical = BPElement(
        x.base, x.variant, list(zip(reps, blocks)), _normal=False
    )
    witness = BPAut(tuple(steps))
    if bp_apply(witness, x) != canonical:
        raise AssertionError("canonicalization witness failed to verify")
    label = (
        tuple(
            (x.base.names[g], ring_orbit_class(a)) for g, a in y.parts
        ),
        support_class,
    )
    return label, canonical, witness


def bp_canonicalize(x, orbits):
    """Canonical orbit label (see bp_canonical_form)."""
    return bp_canonical_form(x, orbits)[0]


# ---------------------------------------------------------------------------
# the shifted product ("Boolean wreath")
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WreathElement:
    """A Boolean-power element together with a ring shift component."""

    bp: BPElement
    shift: IntervalSet


def wreath_identity(base, variant=R1):
    return WreathElement(
        BPElement.identity(base, variant), IntervalSet.empty(variant)
    )


def bp_shift(y, b):
    """Rewrite every part (g)_A as (g)_{A xor b} and multiply back out.

    This is generator-wise rewriting, not an automorphism of the power: the
    shifted carriers may overlap, in which case labels multiply in part
    order.  It is an involution on elements but does not respect products.
    """
    out = BPElement.identity(y.base, y.variant)
    for g, a in y.parts:
        out = bp_mul(out, BPElement(y.base, y.variant, [(g, a ^ b)]))
    return out


def wreath_mul(u, v):
    """(x, B) * (y, B') = (x * shift_B(y), B xor B').

    Identity and componentwise inverses exist, but the shift is not
    multiplicative, so this product is not associative in general; see the
    module tests for a concrete witness.
    """
    if u.bp.base is not v.bp.base or u.bp.variant != v.bp.variant:
        raise VariantMismatchError("wreath elements from different powers")
    return WreathElement(
        bp_mul(u.bp, bp_shift(v.bp, u.shift)), u.shift ^ v.shift
    )


# ---------------------------------------------------------------------------
# literals and sampling
# ---------------------------------------------------------------------------


def parse_bp(text, base, variant=R1):
    """Parse 'g@set;g2@set2' with cycle-notation labels, or 'e'."""
    s = text.strip()
    if s in ("e", "1", ""):
        return BPElement.identity(base, variant)
    parts = []
    claimed = IntervalSet.empty(variant)
    for chunk in s.split(";"):
        if "@" not in chunk:
            raise SetParseError(f"bad part {chunk!r}: expected label@set")
        name, lit = chunk.split("@", 1)
        carrier = parse_set(lit, variant)
        g = _element_index(base, name.strip())
        if claimed & carrier:
            raise SetParseError("part carriers overlap")
        claimed = claimed | carrier
        parts.append((g, carrier))
    return BPElement(base, variant, parts)


def random_bp_element(rng, base, variant=R1, max_parts=3, denominator=64):
    """Random element: a random disjoint carrier family with random labels."""
    nparts = rng.randint(0, max_parts)
    if not nparts:
        return BPElement.identity(base, variant)
    top = denominator if variant == R2 else denominator - 1
    ncuts = min(2 * nparts, top)
    cuts = sorted(rng.sample(range(0, top + 1), ncuts))
    parts = []
    for i in range(len(cuts) // 2):
        lo, hi = cuts[2 * i], cuts[2 * i + 1]
        if lo < hi:
            parts.append(
                (
                    rng.randrange(1, base.order),
                    IntervalSet.interval(
                        Q(lo, denominator), Q(hi, denominator), variant
                    ),
                )
            )
    return BPElement(base, variant, parts)
