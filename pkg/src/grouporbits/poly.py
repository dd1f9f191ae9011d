"""Sparse multivariate polynomials with exact rational coefficients.

Just enough of a polynomial ring for symbolic runs of the coordinate engine:
the same code paths that multiply group elements numerically are rerun with
``Poly`` coefficients to produce multiplication/powering laws and transport
constraints.  Monomials are exponent tuples aligned with the ring's variable
list; zero coefficients are never stored.
"""
from __future__ import annotations

from .qarith import ONE, ZERO, as_q, format_q


class PolyRing:
    """A polynomial ring Q[v1, ..., vk] with named variables."""

    def __init__(self, names):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        self._index = {n: i for i, n in enumerate(self.names)}
        self.nvars = len(self.names)
        self.zero = Poly(self, {})
        self.one = Poly(self, {(0,) * self.nvars: ONE})

    def var(self, name):
        e = [0] * self.nvars
        e[self._index[name]] = 1
        return Poly(self, {tuple(e): ONE})

    def gens(self):
        return [self.var(n) for n in self.names]

    def const(self, q):
        q = as_q(q)
        return Poly(self, {(0,) * self.nvars: q}) if q else self.zero

    def __repr__(self):
        return f"PolyRing({', '.join(self.names)})"


def _monomial_key(exps):
    # deterministic order: total degree, then earliest-declared variables first
    return (sum(exps), tuple(-e for e in exps))


class Poly:
    """Immutable sparse polynomial; supports +, -, *, ** and mixing with scalars."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms  # dict exponent-tuple -> nonzero Q

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ring is not self.ring:
                raise ValueError("polynomials from different rings")
            return other
        return self.ring.const(other)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            try:
                other = self._coerce(other)
            except TypeError:
                return NotImplemented
        elif other.ring is not self.ring:
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash((id(self.ring), frozenset(self.terms.items())))

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, ZERO) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            q = as_q(other)
            if not q:
                return self.ring.zero
            return Poly(self.ring, {e: c * q for e, c in self.terms.items()})
        other = self._coerce(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, ZERO) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        q = as_q(other)
        return self * (ONE / q)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def evaluate(self, values):
        """Evaluate at a point given as a sequence aligned with ring.names."""
        if len(values) != self.ring.nvars:
            raise ValueError("wrong number of values")
        vals = [as_q(v) for v in values]
        acc = ZERO
        for exps, coeff in self.terms.items():
            term = coeff
            for v, e in zip(vals, exps):
                if e:
                    term = term * v**e
            acc = acc + term
        return acc

    def coefficient(self, monomial):
        """Coefficient of an exponent tuple."""
        return self.terms.get(tuple(monomial), ZERO)

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.names
        parts = []
        for exps in sorted(self.terms, key=_monomial_key):
            coeff = self.terms[exps]
            factors = [
                n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e
            ]
            body = "*".join(factors)
            if not body:
                parts.append(format_q(coeff))
            elif coeff == 1:
                parts.append(body)
            elif coeff == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{format_q(coeff)}*{body}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"Poly({self})"
