"""Finite groups as Cayley tables built from permutation generators.

Element-order spectra, lcm-closures (the spectrum of a direct power),
automorphism orbits with constructive witnesses, and brute-forced
automorphism groups for small orders.  Permutations compose left to right:
(p * q)(x) = q(p(x)).
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

DEFAULT_CLOSURE_BOUND = 100000
DEFAULT_AUT_BOUND = 200


class ClosureBoundExceeded(RuntimeError):
    pass


# -- permutation plumbing (tuples of 0-based images) -------------------------


def parse_permutation(text, degree=None):
    """Parse disjoint-cycle notation like '(1 2)(3 4)' or '()' (identity).

    Points are 1-based in the notation; commas and spaces both separate.
    """
    s = text.strip()
    if s in ("()", "e", "id"):
        return tuple(range(degree)) if degree else ()
    cycles = []
    if not (s.startswith("(") and s.endswith(")")):
        raise ValueError(f"bad cycle notation: {text!r}")
    for chunk in s[1:-1].split(")("):
        pts = [int(t) for t in chunk.replace(",", " ").split()]
        if len(pts) < 2:
            raise ValueError(f"bad cycle in {text!r}")
        if len(set(pts)) != len(pts) or min(pts) < 1:
            raise ValueError(f"invalid cycle points in {text!r}")
        cycles.append(pts)
    n = max((max(c) for c in cycles), default=0)
    if degree is not None:
        if degree < n:
            raise ValueError("declared degree too small")
        n = degree
    img = list(range(n))
    for cyc in cycles:
        for i, pt in enumerate(cyc):
            if img[pt - 1] != pt - 1:
                raise ValueError(f"point {pt} repeated across cycles")
            img[pt - 1] = cyc[(i + 1) % len(cyc)] - 1
    return tuple(img)


def cycle_string(perm):
    """Disjoint-cycle form of an image tuple, '()' for the identity."""
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        nxt = perm[start]
        while nxt != start:
            cyc.append(nxt)
            seen[nxt] = True
            nxt = perm[nxt]
        out.append("(" + " ".join(str(p + 1) for p in cyc) + ")")
    return "".join(out) if out else "()"


def compose_perms(p, q):
    """Left-to-right composition: apply p, then q."""
    return tuple(q[x] for x in p)


def invert_perm(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def pad_perm(p, degree):
    return tuple(list(p) + list(range(len(p), degree)))


# -- the group type -----------------------------------------------------------


class FiniteGroup:
    """A finite group: index 0 is the identity; table[a][b] = a*b."""

    def __init__(self, table, names=None, perms=None, validate=True):
        self.order = len(table)
        self.table = [list(row) for row in table]
        self.names = list(names) if names else [str(i) for i in range(self.order)]
        self.perms = list(perms) if perms else None
        self.generator_indices = []
        if validate:
            self._validate()
        self._inverses = None
        self._orders = None

    def _validate(self):
        n = self.order
        rng = range(n)
        for row in self.table:
            if sorted(row) != list(rng):
                raise ValueError("table rows must be permutations of 0..n-1")
        for col in zip(*self.table):
            if sorted(col) != list(rng):
                raise ValueError("table columns must be permutations of 0..n-1")
        if any(self.table[0][x] != x or self.table[x][0] != x for x in rng):
            raise ValueError("index 0 must be the identity")
        if n <= 256:
            triples = ((a, b, c) for a in rng for b in rng for c in rng)
        else:  # sampled above the full-check bound
            import random as _random

            r = _random.Random(0)
            triples = (
                (r.randrange(n), r.randrange(n), r.randrange(n))
                for _ in range(20000)
            )
        for a, b, c in triples:
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                raise ValueError("table is not associative")

    @classmethod
    def trivial(cls):
        g = cls([[0]], names=["()"], validate=False)
        g.perms = [()]
        return g

    @classmethod
    def from_permutations(cls, generators, closure_bound=DEFAULT_CLOSURE_BOUND):
        """Closure of permutation generators; names are cycle strings."""
        gens = []
        for g in generators:
            gens.append(parse_permutation(g) if isinstance(g, str) else tuple(g))
        degree = max((len(g) for g in gens), default=0)
        gens = [pad_perm(g, degree) for g in gens]
        ident = tuple(range(degree))
        elements = [ident]
        index = {ident: 0}
        frontier = [ident]
        while frontier:
            nxt = []
            for p in frontier:
                for g in gens:
                    q = compose_perms(p, g)
                    if q not in index:
                        if len(elements) >= closure_bound:
                            raise ClosureBoundExceeded(
                                f"closure exceeds {closure_bound} elements"
                            )
                        index[q] = len(elements)
                        elements.append(q)
                        nxt.append(q)
            frontier = nxt
        table = [
            [index[compose_perms(p, q)] for q in elements] for p in elements
        ]
        grp = cls(
            table,
            names=[cycle_string(p) for p in elements],
            perms=elements,
        )
        grp.generator_indices = sorted({index[g] for g in gens})
        return grp

    @classmethod
    def direct_product(cls, g, h):
        """Direct product via permutations on disjoint point sets."""
        if g.perms is None or h.perms is None:
            raise ValueError("direct_product needs permutation-built groups")
        dg = len(g.perms[0])
        dh = len(h.perms[0])
        gens = []
        for i in g.generator_indices or range(1, g.order):
            gens.append(pad_perm(g.perms[i], dg + dh))
        for j in h.generator_indices or range(1, h.order):
            gens.append(tuple(list(range(dg)) + [x + dg for x in h.perms[j]]))
        return cls.from_permutations(gens)

    def mul(self, a, b):
        return self.table[a][b]

    def inverse(self, a):
        if self._inverses is None:
            inv = [0] * self.order
            for x in range(self.order):
                for y in range(self.order):
                    if self.table[x][y] == 0:
                        inv[x] = y
                        break
            self._inverses = inv
        return self._inverses[a]

    def order_of(self, a):
        if self._orders is None:
            self._orders = [0] * self.order
        if not self._orders[a]:
            k, x = 1, a
            while x != 0:
                x = self.table[x][a]
                k += 1
            self._orders[a] = k
        return self._orders[a]

    def conjugate(self, a, b):
        """b^-1 a b."""
        bi = self.inverse(b)
        return self.table[self.table[bi][a]][b]

    def exponent(self):
        e = 1
        for a in range(self.order):
            o = self.order_of(a)
            e = e * o // gcd(e, o)
        return e

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"<FiniteGroup order={self.order}>"


def spectrum(group):
    """The set of element orders."""
    return {group.order_of(a) for a in range(group.order)}


def lcm_closure(orders, k):
    """All lcms of multisets of at most k elements of `orders`.

    This is the spectrum of the k-th direct power when `orders` is a
    spectrum containing 1.
    """
    if 1 not in orders:
        raise ValueError("the spectrum must contain 1")
    current = set(orders)
    for _ in range(k - 1):
        current = {
            a * b // gcd(a, b) for a in current for b in orders
        }
    return current


# -- homomorphisms ------------------------------------------------------------


@dataclass(frozen=True)
class GroupMap:
    """A validated homomorphism between Cayley-table groups."""

    src: FiniteGroup
    dst: FiniteGroup
    images: tuple

    def __post_init__(self):
        if len(self.images) != self.src.order:
            raise ValueError("image vector has wrong length")
        n = self.src.order
        pairs = (
            ((a, b) for a in range(n) for b in range(n))
            if n <= 256
            else _sampled_pairs(n)
        )
        for a, b in pairs:
            if (
                self.dst.table[self.images[a]][self.images[b]]
                != self.images[self.src.table[a][b]]
            ):
                raise ValueError("not a homomorphism")

    def __call__(self, a):
        return self.images[a]

    def is_bijective(self):
        return len(set(self.images)) == self.src.order

    def then(self, other):
        if other.src is not self.dst:
            raise ValueError("maps do not compose")
        return GroupMap(
            self.src, other.dst, tuple(other.images[x] for x in self.images)
        )

    def inverse(self):
        if not self.is_bijective() or self.src is not self.dst:
            raise ValueError("only bijective self-maps invert")
        out = [0] * self.src.order
        for i, x in enumerate(self.images):
            out[x] = i
        return GroupMap(self.src, self.src, tuple(out))


def _sampled_pairs(n, count=20000):
    import random as _random

    r = _random.Random(0)
    return ((r.randrange(n), r.randrange(n)) for _ in range(count))


def identity_map(group):
    return GroupMap(group, group, tuple(range(group.order)))


def conjugation_map(group, perm):
    """Conjugation g -> perm^-1 g perm by a permutation normalizing the group.

    The permutation need not lie in the group (e.g. odd permutations acting
    on an alternating group); it must map the element set to itself.
    """
    if group.perms is None:
        raise ValueError("conjugation_map needs a permutation-built group")
    perm = parse_permutation(perm) if isinstance(perm, str) else tuple(perm)
    degree = len(group.perms[0])
    perm = pad_perm(perm, degree)
    if len(perm) != degree:
        raise ValueError("permutation degree exceeds the group's degree")
    index = {p: i for i, p in enumerate(group.perms)}
    pinv = invert_perm(perm)
    images = []
    for p in group.perms:
        q = compose_perms(compose_perms(pinv, p), perm)
        if q not in index:
            raise ValueError("permutation does not normalize the group")
        images.append(index[q])
    return GroupMap(group, group, tuple(images))


def inner_automorphisms(group):
    """Conjugation maps by the group's own generators (all elements if the
    generating set is unknown)."""
    gens = group.generator_indices or list(range(1, group.order))
    maps = []
    for g in gens:
        images = tuple(group.conjugate(a, g) for a in range(group.order))
        maps.append(GroupMap(group, group, images))
    return maps


# -- orbits -------------------------------------------------------------------


class OrbitPartition:
    """Orbits of a set of bijective maps, with witnesses rep -> element."""

    def __init__(self, group, maps):
        for m in maps:
            if m.src is not group or m.dst is not group:
                raise ValueError("maps must be self-maps of the group")
            if not m.is_bijective():
                raise ValueError("orbit maps must be automorphisms")
        gens = list(maps) + [m.inverse() for m in maps]
        n = group.order
        rep = [-1] * n
        witness = [None] * n
        orbits = []
        for start in range(n):
            if rep[start] != -1:
                continue
            orbit = [start]
            rep[start] = start
            witness[start] = identity_map(group)
            queue = [start]
            while queue:
                x = queue.pop()
                for m in gens:
                    y = m(x)
                    if rep[y] == -1:
                        rep[y] = start
                        witness[y] = witness[x].then(m)
                        orbit.append(y)
                        queue.append(y)
            orbits.append(sorted(orbit))
        self.group = group
        self.orbits = orbits
        self._rep = rep
        self._witness = witness

    def __len__(self):
        return len(self.orbits)

    def rep_of(self, a):
        return self._rep[a]

    def rep_name(self, a):
        return self.group.names[self._rep[a]]

    def witness_to(self, a):
        """An automorphism composition sending rep_of(a) to a."""
        return self._witness[a]


def aut_orbits(group, maps):
    """Partition of the elements under the group generated by the maps."""
    return OrbitPartition(group, maps)


def brute_force_auts(group, bound=DEFAULT_AUT_BOUND):
    """All automorphisms of a small group, by generator-image backtracking.

    Candidate images preserve element orders; a candidate assignment is
    extended over the whole group by closure, checking every product edge,
    which verifies the homomorphism property in full.
    """
    n = group.order
    if n > bound:
        raise ClosureBoundExceeded(f"|G| = {n} exceeds the bound {bound}")
    gens = _generating_sequence(group)
    by_order = {}
    for a in range(n):
        by_order.setdefault(group.order_of(a), []).append(a)
    found = []

    def extend(images_so_far, k):
        if k == len(gens):
            full = _closure_images(group, gens, images_so_far)
            if full is not None and len(set(full)) == n:
                found.append(GroupMap(group, group, tuple(full)))
            return
        for cand in by_order[group.order_of(gens[k])]:
            nxt = images_so_far + [cand]
            # prune: the partial assignment must already be consistent on
            # the subgroup generated so far
            if _closure_images(group, gens[: k + 1], nxt, require_full=False) is None:
                continue
            extend(nxt, k + 1)

    extend([], 0)
    return found


def _generating_sequence(group):
    """Greedy small generating sequence."""
    gens = []
    known = {0}
    for cand in group.generator_indices or []:
        if cand not in known:
            gens.append(cand)
            known = _closure_set(group, gens)
            if len(known) == group.order:
                return gens
    for cand in range(1, group.order):
        if cand not in known:
            gens.append(cand)
            known = _closure_set(group, gens)
            if len(known) == group.order:
                break
    return gens


def _closure_set(group, gens):
    out = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = group.table[x][g]
                if y not in out:
                    out.add(y)
                    nxt.append(y)
        frontier = nxt
    return out


def _closure_images(group, gens, gen_images, require_full=True):
    """BFS-extend a generator assignment to a map on <gens>; None if inconsistent.

    Every element is reached as (known) * generator, defining its image;
    every such edge is afterwards re-checked, so the returned vector is a
    homomorphism on all of <gens> x gens, hence on the generated subgroup.
    With require_full, the generators must generate the whole group.
    """
    n = group.order
    images = [-1] * n
    images[0] = 0
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g, gi in zip(gens, gen_images):
                y = group.table[x][g]
                iy = group.table[images[x]][gi]
                if images[y] == -1:
                    images[y] = iy
                    nxt.append(y)
                elif images[y] != iy:
                    return None
        frontier = nxt
    if require_full and -1 in images:
        return None
    for x in range(n):
        if images[x] == -1:
            continue
        for g, gi in zip(gens, gen_images):
            if images[group.table[x][g]] != group.table[images[x]][gi]:
                return None
    return images


def exponent_check(group, n):
    """True iff exp(G) divides the product of p^n over primes p dividing |G|."""
    modulus = 1
    size = group.order
    p = 2
    while p * p <= size:
        if size % p == 0:
            modulus *= p**n
            while size % p == 0:
                size //= p
        p += 1
    if size > 1:
        modulus *= size**n
    return modulus % group.exponent() == 0


def load_permutations(text):
    """Permutation strings from a group file: one per line, '#' comments."""
    perms = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        perms.append(line)
    return perms
