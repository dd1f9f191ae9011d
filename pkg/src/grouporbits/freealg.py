"""Truncated free associative algebra on r letters, degree cap c.

Elements are dense coefficient vectors indexed by words (tuples over 1..r of
length <= c, ordered by length then lexicographically).  Coefficients may be
exact rationals or ``Poly`` values; a structural zero is the int 0.  Products
of words longer than the cap are silently dropped, which is exactly the
quotient by the degree-(c+1) ideal.

Group elements live here as grouplike units 1 + (nilpotent); ``exp`` / ``log``
are finite sums because every product of c+1 letters vanishes.
"""
from __future__ import annotations

import itertools

from .qarith import ONE, Q


class TruncatedFreeAlgebra:
    """Multiplication tables and series helpers for one (rank, cap) pair."""

    def __init__(self, rank, cap):
        if rank < 1 or cap < 1:
            raise ValueError("rank and degree cap must be >= 1")
        self.rank = rank
        self.cap = cap
        words = [()]
        for length in range(1, cap + 1):
            words.extend(itertools.product(range(1, rank + 1), repeat=length))
        self.words = words
        self.index = {w: i for i, w in enumerate(words)}
        self.nwords = len(words)
        # degree d occupies the contiguous index range deg_slice[d]
        self.deg_slice = []
        start = 0
        for d in range(cap + 1):
            count = rank**d
            self.deg_slice.append((start, start + count))
            start += count
        # pair table: words[i] * words[j] = words[k] whenever degrees fit
        self._pairs = []
        for i, wi in enumerate(words):
            room = cap - len(wi)
            pairs = []
            for j, wj in enumerate(words):
                if len(wj) > room:
                    continue
                pairs.append((j, self.index[wi + wj]))
            self._pairs.append(pairs)
        self._inv_factorial = [ONE]
        f = 1
        for k in range(1, cap + 1):
            f *= k
            self._inv_factorial.append(Q(1, f))

    # -- vector constructors -------------------------------------------------

    def zero(self):
        return [0] * self.nwords

    def one(self):
        v = [0] * self.nwords
        v[0] = ONE
        return v

    def gen(self, i):
        """The degree-1 word for generator i (1-based)."""
        if not 1 <= i <= self.rank:
            raise ValueError(f"generator index {i} out of range 1..{self.rank}")
        v = [0] * self.nwords
        v[self.index[(i,)]] = ONE
        return v

    # -- ring operations -----------------------------------------------------

    def mul(self, a, b):
        out = [0] * self.nwords
        pairs = self._pairs
        for i, ca in enumerate(a):
            if ca:
                for j, k in pairs[i]:
                    cb = b[j]
                    if cb:
                        out[k] = out[k] + ca * cb
        return out

    def add(self, a, b):
        return [x + y if (x or y) else 0 for x, y in zip(a, b)]

    def sub(self, a, b):
        return [x - y if (x or y) else 0 for x, y in zip(a, b)]

    def scale(self, q, a):
        if not q:
            return [0] * self.nwords
        return [q * x if x else 0 for x in a]

    def add_scaled(self, acc, q, a):
        """acc += q*a in place (acc a plain list)."""
        if q:
            for i, x in enumerate(a):
                if x:
                    acc[i] = acc[i] + q * x
        return acc

    def is_zero(self, a):
        return not any(a)

    def equal(self, a, b):
        return all(x == y for x, y in zip(a, b))

    def degree_component(self, a, d):
        """Coefficients of the degree-d slice, as a list."""
        lo, hi = self.deg_slice[d]
        return a[lo:hi]

    def min_degree(self, a):
        """Smallest degree with a nonzero coefficient, or None for zero."""
        for d in range(self.cap + 1):
            lo, hi = self.deg_slice[d]
            if any(a[lo:hi]):
                return d
        return None

    # -- series on nilpotents / grouplikes ------------------------------------

    def exp(self, x):
        """exp of an element with zero constant term (finite sum)."""
        if x[0]:
            raise ValueError("exp needs zero constant term")
        acc = self.one()
        term = self.one()
        for k in range(1, self.cap + 1):
            term = self.mul(term, x)
            if self.is_zero(term):
                break
            self.add_scaled(acc, Q(1, k), term)
            term = self.scale(Q(1, k), term)
        return acc

    def log(self, p):
        """log of a unit with constant term 1 (finite sum)."""
        if p[0] != 1:
            raise ValueError("log needs constant term 1")
        n = p[:]
        n[0] = 0
        acc = [0] * self.nwords
        power = self.one()
        for k in range(1, self.cap + 1):
            power = self.mul(power, n)
            if self.is_zero(power):
                break
            self.add_scaled(acc, Q(-1 if k % 2 == 0 else 1, k), power)
        return acc

    def unit_inverse(self, p):
        """Inverse of a unit with constant term 1: alternating geometric series."""
        if p[0] != 1:
            raise ValueError("inverse needs constant term 1")
        n = p[:]
        n[0] = 0
        acc = self.one()
        power = self.one()
        sign = -1
        for _ in range(self.cap):
            power = self.mul(power, n)
            if self.is_zero(power):
                break
            self.add_scaled(acc, sign, power)
            sign = -sign
        return acc

    def group_commutator(self, a, b):
        """a^-1 b^-1 a b for grouplike units."""
        v = self.mul(self.unit_inverse(a), self.unit_inverse(b))
        return self.mul(self.mul(v, a), b)

    def bracket(self, a, b):
        """Lie bracket ab - ba."""
        return self.sub(self.mul(a, b), self.mul(b, a))

    def format_element(self, a):
        """Readable form like '1 + 2*w(1,2) - w(2,1)' for tests and demos."""
        parts = []
        for i, coeff in enumerate(a):
            if not coeff:
                continue
            word = self.words[i]
            name = "1" if not word else "w" + "".join(str(ch) for ch in word)
            parts.append(f"({coeff})*{name}")
        return " + ".join(parts) if parts else "0"
