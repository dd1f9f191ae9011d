"""Boolean rings of rational half-open subintervals of [0,1).

Two variants: "r1" admits finite unions of [a,b) with b < 1, "r2" also allows
b = 1 (so only r2 contains the full set [0,1), its multiplicative identity).
Symmetric difference is the ring addition, intersection the multiplication.

Ring automorphisms are realized by piecewise-linear rearrangements: bijections
of [0,1) that are increasing linear on each source piece.  In the topology
generated by half-open intervals these are homeomorphisms even when pieces
are permuted, and they map ring elements to ring elements.  ``build_map``
constructively transports any nonempty proper set onto any other by padding
the piece counts of the sets and of their complements and matching pieces in
order.
"""
from __future__ import annotations

from .qarith import ONE, ZERO, Q, as_q, format_q, parse_q

R1 = "r1"
R2 = "r2"

EMPTY = "empty"
PROPER = "proper"
FULL = "full"


class VariantMismatchError(ValueError):
    pass


class IntervalSet:
    """Canonical finite union of disjoint, non-adjacent [a,b) pieces."""

    __slots__ = ("variant", "pieces")

    def __init__(self, pieces, variant=R1, _canonical=False):
        if variant not in (R1, R2):
            raise ValueError(f"unknown variant {variant!r}")
        if not _canonical:
            pieces = _merge_union(pieces)
        self.variant = variant
        self.pieces = tuple(pieces)
        for a, b in self.pieces:
            if not (0 <= a < b <= 1):
                raise ValueError(f"bad interval [{a},{b})")
            if variant == R1 and b == 1:
                raise ValueError("right endpoint 1 is not allowed in r1")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def empty(cls, variant=R1):
        return cls((), variant, _canonical=True)

    @classmethod
    def full(cls):
        return cls(((ZERO, ONE),), R2, _canonical=True)

    @classmethod
    def interval(cls, a, b, variant=R1):
        return cls(((as_q(a), as_q(b)),), variant)

    # -- predicates -----------------------------------------------------------

    def is_empty(self):
        return not self.pieces

    def is_full(self):
        return self.pieces == ((ZERO, ONE),)

    def sup(self):
        return self.pieces[-1][1] if self.pieces else None

    def __bool__(self):
        return bool(self.pieces)

    def __contains__(self, t):
        t = as_q(t)
        return any(a <= t < b for a, b in self.pieces)

    # -- ring operations -------------------------------------------------------

    def _op(self, other, keep):
        if not isinstance(other, IntervalSet):
            return NotImplemented
        if other.variant != self.variant:
            raise VariantMismatchError(
                f"cannot combine {self.variant} with {other.variant}"
            )
        pieces = _sweep(self.pieces, other.pieces, keep)
        return IntervalSet(pieces, self.variant, _canonical=True)

    def __xor__(self, other):
        return self._op(other, lambda a, b: a != b)

    def __and__(self, other):
        return self._op(other, lambda a, b: a and b)

    def __or__(self, other):
        return self._op(other, lambda a, b: a or b)

    def __sub__(self, other):
        return self._op(other, lambda a, b: a and not b)

    def complement_pieces(self):
        """Pieces of [0,1) minus this set (plain tuples; in r1 the result can
        reach 1 and so need not be an r1 ring element)."""
        return _sweep(((ZERO, ONE),), self.pieces, lambda a, b: a and not b)

    def __eq__(self, other):
        if not isinstance(other, IntervalSet):
            return NotImplemented
        return self.variant == other.variant and self.pieces == other.pieces

    def __hash__(self):
        return hash((self.variant, self.pieces))

    def __str__(self):
        return format_set(self)

    def __repr__(self):
        return f"<IntervalSet {self.variant} {format_set(self)}>"


def sym_diff(a, b):
    return a ^ b


def intersect(a, b):
    return a & b


def _merge_union(pieces):
    """Sort and union-merge arbitrary [a,b) pairs into canonical form."""
    cleaned = sorted((as_q(a), as_q(b)) for a, b in pieces if as_q(a) != as_q(b))
    out = []
    for a, b in cleaned:
        if a > b:
            raise ValueError(f"bad interval [{a},{b})")
        if out and a <= out[-1][1]:
            if b > out[-1][1]:
                out[-1] = (out[-1][0], b)
        else:
            out.append((a, b))
    return tuple(out)


def _sweep(pa, pb, keep):
    """Generic boolean combination by an endpoint sweep."""
    events = sorted(
        {x for p in pa for x in p} | {x for p in pb for x in p}
    )
    out = []
    for lo, hi in zip(events, events[1:]):
        ina = any(a <= lo and hi <= b for a, b in pa)
        inb = any(a <= lo and hi <= b for a, b in pb)
        if keep(ina, inb):
            if out and out[-1][1] == lo:
                out[-1] = (out[-1][0], hi)
            else:
                out.append((lo, hi))
    return tuple(out)


def ring_orbit_class(a):
    """'empty', 'full' (r2 only), or 'proper'."""
    if a.is_empty():
        return EMPTY
    if a.is_full():
        return FULL
    return PROPER


def class_representative(label, variant=R1):
    if label == EMPTY:
        return IntervalSet.empty(variant)
    if label == PROPER:
        return IntervalSet.interval(0, Q(1, 2), variant)
    if label == FULL and variant == R2:
        return IntervalSet.full()
    raise ValueError(f"no representative for {label!r} in {variant}")


# ---------------------------------------------------------------------------
# piecewise-linear rearrangements
# ---------------------------------------------------------------------------


class PLMap:
    """A bijection of [0,1): increasing linear pieces (src, dst), with both
    the sources and the targets partitioning [0,1)."""

    __slots__ = ("pieces",)

    def __init__(self, pieces):
        pieces = tuple(
            ((as_q(s), as_q(t)), (as_q(u), as_q(v))) for (s, t), (u, v) in pieces
        )
        pieces = tuple(sorted(pieces))
        _check_partition([src for src, _ in pieces], "sources")
        _check_partition(sorted(dst for _, dst in pieces), "targets")
        self.pieces = pieces

    @classmethod
    def identity(cls):
        return cls((((ZERO, ONE), (ZERO, ONE)),))

    def __call__(self, t):
        t = as_q(t)
        for (s, e), (u, v) in self.pieces:
            if s <= t < e:
                return u + (t - s) * (v - u) / (e - s)
        raise ValueError(f"{t} outside [0,1)")

    def image_interval(self, a, b):
        """Canonical piece list of the image of [a,b)."""
        out = []
        for (s, e), (u, v) in self.pieces:
            lo, hi = max(a, s), min(b, e)
            if lo < hi:
                slope = (v - u) / (e - s)
                out.append((u + (lo - s) * slope, u + (hi - s) * slope))
        return out

    def invert(self):
        return PLMap(tuple((dst, src) for src, dst in self.pieces))

    def then(self, other):
        """Composition: apply self, then other."""
        pieces = []
        for (s, e), (u, v) in self.pieces:
            slope = (v - u) / (e - s)
            for (gs, ge), _ in other.pieces:
                lo, hi = max(u, gs), min(v, ge)
                if lo < hi:
                    src = (s + (lo - u) / slope, s + (hi - u) / slope)
                    dst_pieces = other.image_interval(lo, hi)
                    assert len(dst_pieces) == 1
                    pieces.append((src, dst_pieces[0]))
        return PLMap(tuple(pieces))

    def __eq__(self, other):
        if not isinstance(other, PLMap):
            return NotImplemented
        return self.pieces == other.pieces

    def __hash__(self):
        return hash(self.pieces)

    def __repr__(self):
        body = ", ".join(
            f"[{format_q(s)},{format_q(e)})->[{format_q(u)},{format_q(v)})"
            for (s, e), (u, v) in self.pieces
        )
        return f"<PLMap {body}>"


def _check_partition(intervals, what):
    if not intervals:
        raise ValueError(f"{what} must cover [0,1)")
    cursor = ZERO
    for a, b in intervals:
        if a != cursor or b <= a:
            raise ValueError(f"{what} do not tile [0,1)")
        cursor = b
    if cursor != 1:
        raise ValueError(f"{what} do not tile [0,1)")


def apply_map(f, a):
    """Image of an interval set under a rearrangement, canonicalized."""
    pieces = []
    for lo, hi in a.pieces:
        pieces.extend(f.image_interval(lo, hi))
    return IntervalSet(pieces, a.variant)


def _split_into(pieces, count):
    """Subdivide the last piece so the list has exactly `count` pieces."""
    pieces = list(pieces)
    if len(pieces) > count:
        raise ValueError("cannot shrink a piece list")
    extra = count - len(pieces)
    if extra:
        a, b = pieces.pop()
        step = (b - a) / (extra + 1)
        for k in range(extra + 1):
            pieces.append((a + k * step, a + (k + 1) * step))
    return pieces


def build_map(a, b):
    """A rearrangement f with f(A) = B, for nonempty proper sets.

    Pads A and B to equally many pieces by subdividing last pieces, does the
    same for the two complements, and maps matching pieces linearly in order.
    The postcondition apply_map(f, A) == B is verified exactly.
    """
    if a.variant != b.variant:
        raise VariantMismatchError("sets from different ring variants")
    if a.is_empty() or b.is_empty():
        raise ValueError("build_map needs nonempty sets")
    if a.is_full() or b.is_full():
        raise ValueError("the full set is rigid; no rearrangement is built")
    f = build_map_family([a], [b], a.variant)
    got = apply_map(f, a)
    if got != b:
        raise AssertionError(f"postcondition failed: image {got} != {b}")
    return f


def build_map_family(sources, targets, variant):
    """One rearrangement sending each source onto the matching target.

    Sources must be pairwise disjoint, likewise targets; the leftover
    complements must be both empty or both nonempty.  Each matched pair and
    the complement pair are piece-padded and mapped in order.
    """
    if len(sources) != len(targets):
        raise ValueError("sources and targets must match in length")
    piece_pairs = []
    used_src = IntervalSet.empty(variant)
    used_dst = IntervalSet.empty(variant)
    for s, t in zip(sources, targets):
        if s.is_empty() or t.is_empty():
            raise ValueError("family members must be nonempty")
        if (used_src & s) or (used_dst & t):
            raise ValueError("family members must be pairwise disjoint")
        used_src = used_src | s
        used_dst = used_dst | t
        piece_pairs.append((list(s.pieces), list(t.pieces)))
    rest_src = used_src.complement_pieces()
    rest_dst = used_dst.complement_pieces()
    if bool(rest_src) != bool(rest_dst):
        raise ValueError("complements differ in emptiness; no rearrangement")
    if rest_src:
        piece_pairs.append((list(rest_src), list(rest_dst)))
    pl_pieces = []
    for src_pieces, dst_pieces in piece_pairs:
        n = max(len(src_pieces), len(dst_pieces))
        for sp, dp in zip(_split_into(src_pieces, n), _split_into(dst_pieces, n)):
            pl_pieces.append((sp, dp))
    return PLMap(tuple(pl_pieces))


# ---------------------------------------------------------------------------
# literals
# ---------------------------------------------------------------------------


class SetParseError(ValueError):
    pass


def parse_set(text, variant=R1):
    """Parse '[a,b)+[c,d)' with rational endpoints, '{}', or 'full' (r2)."""
    s = text.strip().replace(" ", "")
    if s == "{}":
        return IntervalSet.empty(variant)
    if s == "full":
        if variant != R2:
            raise SetParseError("'full' exists only in the r2 variant")
        return IntervalSet.full()
    pieces = []
    for chunk in s.split("+"):
        if not (chunk.startswith("[") and chunk.endswith(")")):
            raise SetParseError(f"bad interval literal {chunk!r}")
        try:
            a, b = chunk[1:-1].split(",")
            pieces.append((parse_q(a), parse_q(b)))
        except ValueError as exc:
            raise SetParseError(f"bad interval literal {chunk!r}") from exc
    try:
        return IntervalSet(pieces, variant)
    except ValueError as exc:
        raise SetParseError(str(exc)) from exc


def format_set(a):
    if a.is_empty():
        return "{}"
    if a.is_full():
        return "full"
    return "+".join(
        f"[{format_q(lo)},{format_q(hi)})" for lo, hi in a.pieces
    )


def random_set(rng, variant=R1, max_pieces=3, denominator=64):
    """Random canonical interval set with endpoints of bounded denominator."""
    npieces = rng.randint(0, max_pieces)
    if not npieces:
        return IntervalSet.empty(variant)
    top = denominator if variant == R2 else denominator - 1
    cuts = sorted(rng.sample(range(0, top + 1), min(2 * npieces, top + 1)))
    pieces = [
        (Q(cuts[2 * i], denominator), Q(cuts[2 * i + 1], denominator))
        for i in range(len(cuts) // 2)
        if cuts[2 * i] < cuts[2 * i + 1]
    ]
    return IntervalSet(pieces, variant)
