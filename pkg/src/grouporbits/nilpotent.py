"""Exact arithmetic in free nilpotent groups and their rational completions.

Elements of the rank-r, class-c group are coordinate vectors (a_1, ..., a_n)
for the normal form u_1^{a_1} ... u_n^{a_n}, where u_1, ..., u_n are the basic
commutators of weight <= c.  Rational coordinates give the divisible
completion; integer coordinates are closed under all operations.

The engine works inside the truncated free associative algebra: an element
maps to the unit exp(a_1 H_1) ... exp(a_n H_n), where H_i is the expansion of
the i-th basic commutator.  Products and powers are computed there, and
coordinates are recovered weight layer by weight layer: once layers < w are
peeled off, the degree-w part of the remainder minus 1 is exactly
sum a_i H_i over the weight-w layer, an exact linear system solved against
the layer's expansion basis.

Running the same code with polynomial coefficients instead of rationals
yields the coordinate laws for multiplication and powering in closed form
(``polynomials``).
"""
from __future__ import annotations

from . import hall
from .freealg import TruncatedFreeAlgebra
from .linalg import inv as mat_inv
from .linalg import transpose, _eliminate
from .poly import Poly, PolyRing
from .qarith import ONE, ZERO, as_q


class ContextMismatchError(ValueError):
    """Raised when elements from different group contexts are combined."""


class ExtractionError(ArithmeticError):
    """Raised if a coordinate extraction fails its residual check (engine bug)."""


def _coerce_scalar(x):
    return x if isinstance(x, Poly) else as_q(x)


class _LayerSolver:
    """Exact solver for one weight layer of the coordinate extraction."""

    def __init__(self, algebra, basis, expansions, weight):
        self.basis_ids = [b.index for b in basis if b.weight == weight]
        lo, hi = algebra.deg_slice[weight]
        self.matrix = [
            [expansions[i][lo + p] for i in self.basis_ids]
            for p in range(hi - lo)
        ]
        if not self.basis_ids:
            self.pivots = []
            self.pivot_inv = []
            return
        _, pivots, _ = _eliminate(transpose(self.matrix))
        if len(pivots) != len(self.basis_ids):
            raise ExtractionError("layer expansions are not independent")
        self.pivots = pivots
        self.pivot_inv = mat_inv([self.matrix[p] for p in pivots])

    def solve(self, component):
        """Coordinates of a degree-w component in the layer basis, verified."""
        if not self.basis_ids:
            if any(component):
                raise ExtractionError("nonzero component in an empty layer")
            return []
        xs = [
            sum((row[k] * component[p] for k, p in enumerate(self.pivots)
                 if component[p]), 0)
            for row in self.pivot_inv
        ]
        for p, row in enumerate(self.matrix):
            lhs = sum((row[j] * xs[j] for j in range(len(xs)) if row[j]), 0)
            if lhs != component[p]:
                raise ExtractionError("component is outside the layer span")
        return xs


_context_cache: dict[tuple[int, int], "NilContext"] = {}


class NilContext:
    """Shared immutable data for one free nilpotent group N_{r,c}."""

    def __init__(self, rank, nilpotency_class):
        if rank < 1 or nilpotency_class < 1:
            raise ValueError("rank and nilpotency class must be >= 1")
        self.rank = rank
        self.nilpotency_class = nilpotency_class
        self.algebra = TruncatedFreeAlgebra(rank, nilpotency_class)
        self.basis = hall.enumerate_basis(rank, nilpotency_class)
        self.n = len(self.basis)
        self.basis_names = [
            hall.commutator_name(self.basis, i) for i in range(self.n)
        ]
        self.expansions = []
        for b in self.basis:
            if b.is_generator:
                self.expansions.append(self.algebra.gen(b.gen))
            else:
                self.expansions.append(
                    self.algebra.bracket(
                        self.expansions[b.left], self.expansions[b.right]
                    )
                )
        # The polycyclic generators u_i are the *group* basic commutators:
        # u_i = [u_s, u_t] as group elements.  log(u_i) starts with the Lie
        # expansion H_i but carries higher-weight corrections, so it is not
        # H_i itself; integer-coordinate closure depends on this choice.
        self.basis_units = []
        self._basis_logs = []
        for b in self.basis:
            if b.is_generator:
                unit = self.algebra.exp(self.algebra.gen(b.gen))
            else:
                unit = self.algebra.group_commutator(
                    self.basis_units[b.left], self.basis_units[b.right]
                )
            self.basis_units.append(unit)
            self._basis_logs.append(self.algebra.log(unit))
        # exp(t * log u_i) needs only the powers log(u_i)^k / k!, k*weight <= c
        self._exp_tables = []
        for i, b in enumerate(self.basis):
            pows = [self.algebra.one()]
            term = self.algebra.one()
            for k in range(1, nilpotency_class // b.weight + 1):
                term = self.algebra.scale(
                    as_q(1) / k, self.algebra.mul(term, self._basis_logs[i])
                )
                pows.append(term)
            self._exp_tables.append(pows)
        self._layers = [None] + [
            _LayerSolver(self.algebra, self.basis, self.expansions, w)
            for w in range(1, nilpotency_class + 1)
        ]
        self._layer_coord_ranges = []
        start = 0
        for w in range(1, nilpotency_class + 1):
            k = len(self._layers[w].basis_ids)
            self._layer_coord_ranges.append((start, start + k))
            start += k
        assert start == self.n
        self.identity = NilElement(self, (ZERO,) * self.n)

    @classmethod
    def get(cls, rank, nilpotency_class):
        """Memoized context lookup; contexts are immutable and shareable."""
        key = (rank, nilpotency_class)
        if key not in _context_cache:
            _context_cache[key] = cls(rank, nilpotency_class)
        return _context_cache[key]

    @property
    def c(self):
        return self.nilpotency_class

    def weight_of_coord(self, i):
        return self.basis[i].weight

    def layer_coords(self, w):
        """(start, end) range of coordinate positions of weight w."""
        return self._layer_coord_ranges[w - 1]

    def layer_basis_ids(self, w):
        """Basis indices of the weight-w layer, in order."""
        return list(self._layers[w].basis_ids)

    def generator(self, i):
        """The generator x_i (1-based) as a group element."""
        if not 1 <= i <= self.rank:
            raise ValueError(f"generator index {i} out of range 1..{self.rank}")
        coords = [ZERO] * self.n
        coords[i - 1] = ONE
        return NilElement(self, coords)

    def basis_element(self, i):
        """The i-th basic commutator u_i as a group element (0-based index)."""
        coords = [ZERO] * self.n
        coords[i] = ONE
        return NilElement(self, coords)

    def element(self, coords):
        return NilElement(self, coords)

    def _exp_basis(self, i, t):
        pows = self._exp_tables[i]
        out = pows[0][:]
        tk = 1
        add_scaled = self.algebra.add_scaled
        for k in range(1, len(pows)):
            tk = tk * t
            add_scaled(out, tk, pows[k])
        return out

    def to_algebra(self, coords):
        """exp(a_1 H_1) ... exp(a_n H_n) as an algebra unit."""
        acc = self.algebra.one()
        for i, a in enumerate(coords):
            if a:
                acc = self.algebra.mul(acc, self._exp_basis(i, a))
        return acc

    def from_algebra(self, vec):
        """Recover normal-form coordinates from a grouplike algebra unit."""
        alg = self.algebra
        coords = []
        rem = vec
        for w in range(1, self.nilpotency_class + 1):
            comp = alg.degree_component(rem, w)
            xs = self._layers[w].solve(comp)
            coords.extend(xs)
            if w < self.nilpotency_class and any(xs):
                peel = None
                for i, a in zip(self._layers[w].basis_ids, xs):
                    if a:
                        e = self._exp_basis(i, -a)
                        peel = e if peel is None else alg.mul(e, peel)
                rem = alg.mul(peel, rem)
        return tuple(coords)

    def __repr__(self):
        return f"NilContext(rank={self.rank}, class={self.nilpotency_class})"


class NilElement:
    """One group element: exact coordinates plus cached algebra form."""

    __slots__ = ("ctx", "coords", "_alg", "_log_pows")

    def __init__(self, ctx, coords, _alg=None):
        coords = tuple(_coerce_scalar(x) for x in coords)
        if len(coords) != ctx.n:
            raise ValueError(f"expected {ctx.n} coordinates, got {len(coords)}")
        self.ctx = ctx
        self.coords = coords
        self._alg = _alg
        self._log_pows = None

    @property
    def alg(self):
        if self._alg is None:
            self._alg = self.ctx.to_algebra(self.coords)
        return self._alg

    def log_pows(self):
        """[1, L, L^2/2!, ...] for L = log of the algebra form (cached)."""
        if self._log_pows is None:
            alg = self.ctx.algebra
            L = alg.log(self.alg)
            pows = [alg.one()]
            term = alg.one()
            for k in range(1, self.ctx.nilpotency_class + 1):
                term = alg.scale(as_q(1) / k, alg.mul(term, L))
                if alg.is_zero(term):
                    break
                pows.append(term)
            self._log_pows = pows
        return self._log_pows

    def is_identity(self):
        return not any(self.coords)

    def is_symbolic(self):
        return any(isinstance(x, Poly) for x in self.coords)

    def __mul__(self, other):
        return mul(self, other)

    def __pow__(self, t):
        return pow_(self, t)

    def inverse(self):
        return inv(self)

    def __eq__(self, other):
        if not isinstance(other, NilElement):
            return NotImplemented
        return self.ctx is other.ctx and self.coords == other.coords

    def __hash__(self):
        return hash((id(self.ctx), self.coords))

    def __str__(self):
        parts = [
            f"{name}^{coeff}" if coeff != 1 else name
            for name, coeff in zip(self.ctx.basis_names, self.coords)
            if coeff
        ]
        return "*".join(parts) if parts else "1"

    def __repr__(self):
        return f"<NilElement {self}>"


def _check_ctx(a, b):
    if a.ctx is not b.ctx:
        raise ContextMismatchError("elements come from different contexts")


def identity(ctx):
    return ctx.identity


def mul(a, b):
    """Exact product in normal-form coordinates."""
    _check_ctx(a, b)
    vec = a.ctx.algebra.mul(a.alg, b.alg)
    return NilElement(a.ctx, a.ctx.from_algebra(vec), _alg=vec)


def pow_(a, t):
    """Exact t-th power for rational (or polynomial) t: exp(t * log a)."""
    t = _coerce_scalar(t)
    pows = a.log_pows()
    vec = pows[0][:]
    tk = 1
    add_scaled = a.ctx.algebra.add_scaled
    for k in range(1, len(pows)):
        tk = tk * t
        add_scaled(vec, tk, pows[k])
    return NilElement(a.ctx, a.ctx.from_algebra(vec), _alg=vec)


def inv(a):
    """Group inverse, as the (-1)-th power."""
    return pow_(a, -1)


def commutator(a, b):
    """[a, b] = a^-1 b^-1 a b."""
    _check_ctx(a, b)
    return mul(mul(mul(inv(a), inv(b)), a), b)


def from_word(ctx, word):
    """Normal form of a word given as (generator index, rational exponent) pairs."""
    out = ctx.identity
    for g, e in word:
        out = mul(out, pow_(ctx.generator(g), e))
    return out


def lcs_weight(a):
    """Smallest weight layer with a nonzero coordinate; 0 for the identity."""
    for w in range(1, a.ctx.nilpotency_class + 1):
        lo, hi = a.ctx.layer_coords(w)
        if any(a.coords[lo:hi]):
            return w
    return 0


def is_central(a):
    """Central elements are exactly those supported on the top weight layer."""
    if a.ctx.rank == 1:
        return True
    w = lcs_weight(a)
    return w == 0 or w == a.ctx.nilpotency_class


_poly_cache: dict[int, tuple] = {}


def polynomials(ctx):
    """Coordinate laws (f_1..f_n, g_1..g_n) for products and powers.

    f_i are polynomials in x1..xn, y1..yn with (xy)_i = f_i(x, y); g_i are
    polynomials in x1..xn, t with (x^t)_i = g_i(x, t).  They are produced by
    rerunning the numeric engine with polynomial coordinates, so they agree
    with ``mul`` and ``pow_`` by construction.
    """
    key = id(ctx)
    if key not in _poly_cache:
        n = ctx.n
        ring_f = PolyRing([f"x{i+1}" for i in range(n)] + [f"y{i+1}" for i in range(n)])
        xs = [ring_f.var(f"x{i+1}") for i in range(n)]
        ys = [ring_f.var(f"y{i+1}") for i in range(n)]
        f = mul(NilElement(ctx, xs), NilElement(ctx, ys)).coords
        ring_g = PolyRing([f"x{i+1}" for i in range(n)] + ["t"])
        xs_g = [ring_g.var(f"x{i+1}") for i in range(n)]
        g = pow_(NilElement(ctx, xs_g), ring_g.var("t")).coords
        _poly_cache[key] = (list(f), list(g))
    return _poly_cache[key]
