"""Endomorphisms of the rational completions, orbit canonicalization, and
transport obstructions.

An endomorphism is determined by generator images X_1..X_r; it is an
automorphism exactly when the abelianized image matrix is invertible.
Canonicalizers return (label, representative, witness) and always verify the
witness by exact application: printed exponents are never trusted, the
construction is solved for and checked.

The obstruction reports mechanize the checkable steps of the infinite-orbit
arguments for (rank 2, class 4) and (rank 3, class 3): symbolic constraint
generation for transporting a central element v_p to v_q, exact
rational-square refutations of the closing branches, and seeded randomized
falsification.  They are evidence generators, not proofs.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .linalg import SingularMatrixError, det, inv as mat_inv, rank, solve
from .nilpotent import (
    ContextMismatchError,
    NilContext,
    NilElement,
    commutator,
    inv,
    lcs_weight,
    mul,
    pow_,
)
from .poly import Poly, PolyRing
from .qarith import ONE, ZERO, Q, as_q, is_rational_square, rand_q


class VerificationError(AssertionError):
    """A constructed witness failed its exact postcondition check."""


class EndoSpec:
    """Generator-image data for an endomorphism of one context."""

    __slots__ = ("ctx", "images", "abmat", "_exp_tables")

    def __init__(self, ctx, images):
        if len(images) != ctx.rank:
            raise ValueError(f"need exactly {ctx.rank} generator images")
        for img in images:
            if img.ctx is not ctx:
                raise ContextMismatchError("image from a different context")
        self.ctx = ctx
        self.images = tuple(images)
        self.abmat = [list(img.coords[: ctx.rank]) for img in images]
        self._exp_tables = None

    def _tables(self):
        """Per-basis-element image units and exp tables, built once."""
        if self._exp_tables is None:
            ctx, alg = self.ctx, self.ctx.algebra
            units = []
            for b in ctx.basis:
                if b.is_generator:
                    units.append(self.images[b.gen - 1].alg)
                else:
                    units.append(
                        alg.group_commutator(units[b.left], units[b.right])
                    )
            tables = []
            for b, unit in zip(ctx.basis, units):
                L = alg.log(unit)
                pows = [alg.one()]
                term = alg.one()
                for k in range(1, ctx.nilpotency_class // b.weight + 1):
                    term = alg.scale(as_q(1) / k, alg.mul(term, L))
                    if alg.is_zero(term):
                        break
                    pows.append(term)
                tables.append(pows)
            self._exp_tables = tables
        return self._exp_tables

    def is_symbolic(self):
        return any(img.is_symbolic() for img in self.images)

    def __eq__(self, other):
        if not isinstance(other, EndoSpec):
            return NotImplemented
        return self.ctx is other.ctx and self.images == other.images

    def __hash__(self):
        return hash((id(self.ctx), self.images))

    def __repr__(self):
        rows = ", ".join(f"x{i+1} -> {img}" for i, img in enumerate(self.images))
        return f"<EndoSpec {rows}>"


def make_endo(ctx, images):
    """The unique endomorphism sending x_i to images[i]."""
    return EndoSpec(ctx, images)


def identity_endo(ctx):
    return EndoSpec(ctx, [ctx.generator(i) for i in range(1, ctx.rank + 1)])


def is_automorphism(e) -> bool:
    """True iff the abelianized image matrix is invertible."""
    if e.is_symbolic():
        raise TypeError("is_automorphism needs numeric generator images")
    return det(e.abmat) != 0


def apply(e, g):
    """Image of g: substitute images into the normal form of g."""
    if e.ctx is not g.ctx:
        raise ContextMismatchError("endomorphism and element contexts differ")
    alg = e.ctx.algebra
    tables = e._tables()
    vec = alg.one()
    for i, a in enumerate(g.coords):
        if a:
            pows = tables[i]
            term = pows[0][:]
            tk = 1
            for k in range(1, len(pows)):
                tk = tk * a
                alg.add_scaled(term, tk, pows[k])
            vec = alg.mul(vec, term)
    return NilElement(e.ctx, e.ctx.from_algebra(vec), _alg=vec)


def compose(e, f):
    """The endomorphism 'apply e, then f'."""
    if e.ctx is not f.ctx:
        raise ContextMismatchError("endomorphism contexts differ")
    return EndoSpec(e.ctx, [apply(f, img) for img in e.images])


def invert(e):
    """Exact inverse of an automorphism.

    Start from the inverse of the abelianization and correct the commutator
    part layer by layer; each pass pushes the defect one weight higher, so
    class-many passes reach the identity.  The result is verified.
    """
    ctx = e.ctx
    if not is_automorphism(e):
        raise SingularMatrixError("endomorphism is not an automorphism")
    binv = mat_inv(e.abmat)
    psi = EndoSpec(ctx, [_pure_weight1(ctx, row) for row in binv])
    ident = identity_endo(ctx)
    for _ in range(ctx.nilpotency_class):
        delta = compose(e, psi)
        if delta == ident:
            break
        corr = []
        for i in range(ctx.rank):
            x = ctx.generator(i + 1)
            d = mul(inv(x), delta.images[i])
            corr.append(mul(x, inv(d)))
        psi = compose(psi, EndoSpec(ctx, corr))
    if compose(e, psi) != ident or compose(psi, e) != ident:
        raise VerificationError("inverse construction failed to verify")
    return psi


def _pure_weight1(ctx, row):
    coords = [ZERO] * ctx.n
    for j, x in enumerate(row):
        coords[j] = x
    return NilElement(ctx, coords)


def generic_endo(ctx, names=None, extra_vars=(), gprime_vars=False):
    """Endomorphism with formal weight-1 exponents (and optionally formal
    commutator parts); returns (endo, ring)."""
    r = ctx.rank
    if names is None:
        names = [f"a{i+1}{j+1}" for i in range(r) for j in range(r)]
    names = list(names)
    if len(names) != r * r:
        raise ValueError("need r*r variable names")
    gnames = []
    if gprime_vars:
        gnames = [
            f"g{i+1}_{k+1}" for i in range(r) for k in range(ctx.n - r)
        ]
    ring = PolyRing(names + gnames + list(extra_vars))
    images = []
    for i in range(r):
        coords = [ring.var(names[i * r + j]) for j in range(r)]
        if gprime_vars:
            coords += [ring.var(gnames[i * (ctx.n - r) + k]) for k in range(ctx.n - r)]
        else:
            coords += [ZERO] * (ctx.n - r)
        images.append(NilElement(ctx, coords))
    return EndoSpec(ctx, images), ring


def center_action_matrix(e):
    """Matrix of the induced linear map on the top weight layer.

    Row i holds the coordinates of the image of the i-th top-layer basic
    commutator, so composition corresponds to matrix product in row-vector
    convention.  Works for numeric and symbolic generator images alike.
    """
    ctx = e.ctx
    c = ctx.nilpotency_class
    lo, hi = ctx.layer_coords(c)
    ids = ctx.layer_basis_ids(c)
    tables = e._tables()
    rows = []
    for i in ids:
        # image of the basis unit itself: exp table entry at power 1
        pows = tables[i]
        unit = pows[1] if len(pows) > 1 else None
        if unit is None:
            rows.append([ZERO] * (hi - lo))
            continue
        vec = ctx.algebra.one()
        ctx.algebra.add_scaled(vec, ONE, unit)
        coords = ctx.from_algebra(vec)
        if any(coords[:lo]):
            raise VerificationError("central image is not central")
        rows.append(list(coords[lo:hi]))
    return rows


# ---------------------------------------------------------------------------
# width and canonical forms in class 2
# ---------------------------------------------------------------------------


def _alternating_matrix(z):
    """Weight-2 coordinates of a central class-2 element as an alternating matrix."""
    ctx = z.ctx
    r = ctx.rank
    lo, _ = ctx.layer_coords(2)
    M = [[ZERO] * r for _ in range(r)]
    for pos, bid in enumerate(ctx.layer_basis_ids(2)):
        b = ctx.basis[bid]
        gj = ctx.basis[b.left].gen - 1   # larger generator
        gi = ctx.basis[b.right].gen - 1  # smaller generator
        coeff = z.coords[lo + pos]
        M[gj][gi] = coeff
        M[gi][gj] = -coeff
    return M


def _form(M, u, v):
    return sum(
        (u[i] * sum((M[i][j] * v[j] for j in range(len(v)) if M[i][j]), 0)
         for i in range(len(u)) if u[i]),
        0,
    )


def _darboux_basis(M):
    """Split a basis into hyperbolic pairs (v, w) with w^T M v = 1 plus a
    radical-complement remainder; returns (pairs, rest)."""
    r = len(M)
    work = [[ONE if i == j else ZERO for j in range(r)] for i in range(r)]
    pairs = []
    while True:
        hit = None
        for i in range(len(work)):
            for j in range(i + 1, len(work)):
                if _form(M, work[i], work[j]):
                    hit = (i, j)
                    break
            if hit:
                break
        if hit is None:
            return pairs, work
        i, j = hit
        u = work[i]
        v = work[j]
        s = _form(M, v, u)
        p1 = u
        p2 = [x / s for x in v]
        rest = []
        for k, x in enumerate(work):
            if k in (i, j):
                continue
            c1 = _form(M, x, p1)
            c2 = _form(M, x, p2)
            rest.append(
                [xa - c1 * a2 + c2 * a1 for xa, a1, a2 in zip(x, p1, p2)]
            )
        pairs.append((p1, p2))
        work = rest


def width_class2(z):
    """Minimal number of commutators expressing a central class-2 element:
    half the rank of its alternating coefficient matrix."""
    ctx = z.ctx
    if ctx.nilpotency_class != 2:
        raise ValueError("width_class2 needs a class-2 context")
    if lcs_weight(z) == 1:
        raise ValueError("element is not in the commutator subgroup")
    return rank(_alternating_matrix(z)) // 2


def _pair_coord_index(ctx, gj, gi):
    """Coordinate position of the basic commutator [x_gj, x_gi] (gj > gi)."""
    lo, _ = ctx.layer_coords(2)
    for pos, bid in enumerate(ctx.layer_basis_ids(2)):
        b = ctx.basis[bid]
        if ctx.basis[b.left].gen == gj and ctx.basis[b.right].gen == gi:
            return lo + pos
    raise LookupError((gj, gi))


def _complete_to_basis(v):
    """Rows of an invertible matrix whose first row is v (nonzero)."""
    r = len(v)
    rows = [list(v)]
    for j in range(r):
        e = [ZERO] * r
        e[j] = ONE
        candidate = rows + [e]
        if len(candidate) <= r and _independent(candidate):
            rows.append(e)
        if len(rows) == r:
            break
    return rows


def _independent(rows):
    return rank(rows) == len(rows)


def canonicalize_class2(g):
    """Orbit label, canonical representative, and verified witness in class 2.

    Labels: 'identity', 'non-central', or 'central-width-k'; the witness w
    satisfies apply(w, g) == representative exactly.
    """
    ctx = g.ctx
    if ctx.nilpotency_class != 2:
        raise ValueError("canonicalize_class2 needs a class-2 context")
    if g.is_identity():
        return "identity", ctx.identity, identity_endo(ctx)
    r = ctx.rank
    v = list(g.coords[:r])
    if any(v):
        rows = _complete_to_basis(v)
        images = [g] + [_pure_weight1(ctx, row) for row in rows[1:]]
        witness = invert(EndoSpec(ctx, images))
        rep = ctx.generator(1)
        _verify_witness(witness, g, rep)
        return "non-central", rep, witness
    M = _alternating_matrix(g)
    pairs, rest = _darboux_basis(M)
    k = len(pairs)
    cols = []
    for p1, p2 in pairs:
        cols.extend([p1, p2])
    cols.extend(rest)
    # abelianization with column j = j-th new basis vector sends the
    # coefficient matrix M to B^T M B = canonical block form
    abmat = [[cols[j][i] for j in range(r)] for i in range(r)]
    witness = EndoSpec(ctx, [_pure_weight1(ctx, row) for row in abmat])
    rep_coords = [ZERO] * ctx.n
    for a in range(k):
        rep_coords[_pair_coord_index(ctx, 2 * a + 2, 2 * a + 1)] = ONE
    rep = NilElement(ctx, rep_coords)
    _verify_witness(witness, g, rep)
    return f"central-width-{k}", rep, witness


def _verify_witness(witness, g, rep):
    got = apply(witness, g)
    if got != rep:
        raise VerificationError(
            f"witness maps {g} to {got}, expected {rep}"
        )


# ---------------------------------------------------------------------------
# canonical forms in rank 2, class 3
# ---------------------------------------------------------------------------


def canonicalize_n23(g):
    """Orbit label, representative, and verified witness in rank 2, class 3.

    The four orbits are the identity, the complement of the commutator
    subgroup (representative x1), the commutator subgroup minus the centre
    (representative [x2,x1]), and the nontrivial centre ([x2,x1,x1]).
    Witness exponents are solved for, then checked by exact application.
    """
    ctx = g.ctx
    if (ctx.rank, ctx.nilpotency_class) != (2, 3):
        raise ValueError("canonicalize_n23 needs the rank-2 class-3 context")
    if g.is_identity():
        return "1", ctx.identity, identity_endo(ctx)
    if any(g.coords[:2]):
        rows = _complete_to_basis(list(g.coords[:2]))
        images = [g, _pure_weight1(ctx, rows[1])]
        witness = invert(EndoSpec(ctx, images))
        rep = ctx.generator(1)
        _verify_witness(witness, g, rep)
        return "x1", rep, witness
    g3 = g.coords[2]
    if g3:
        witness = _witness_gprime_n23(g)
        rep = ctx.basis_element(2)
        _verify_witness(witness, g, rep)
        return "[x2,x1]", rep, witness
    witness = _witness_center_n23(g)
    rep = ctx.basis_element(3)
    _verify_witness(witness, g, rep)
    return "[x2,x1,x1]", rep, witness


def _witness_gprime_n23(g):
    """Witness for g in G' minus the centre: x1 -> x1*[x2,x1]^m,
    x2 -> x2^(1/g3)*[x2,x1]^k, with (m, k) solved exactly.

    The central coordinates of the image are affine in (m, k), so three
    probe evaluations determine the affine map and one 2x2 solve kills them.
    """
    ctx = g.ctx
    t = ONE / g.coords[2]

    def endo_for(m, k):
        return EndoSpec(
            ctx,
            [
                NilElement(ctx, [ONE, ZERO, m, ZERO, ZERO]),
                NilElement(ctx, [ZERO, t, k, ZERO, ZERO]),
            ],
        )

    def central(m, k):
        img = apply(endo_for(m, k), g)
        if img.coords[2] != 1:
            raise VerificationError("commutator coordinate did not normalize")
        return [img.coords[3], img.coords[4]]

    f00 = central(ZERO, ZERO)
    f10 = central(ONE, ZERO)
    f01 = central(ZERO, ONE)
    a = [
        [f10[0] - f00[0], f01[0] - f00[0]],
        [f10[1] - f00[1], f01[1] - f00[1]],
    ]
    m, k = solve(a, [-f00[0], -f00[1]])
    return endo_for(m, k)


def _witness_center_n23(z):
    """Witness for a nontrivial central z = u4^c4 * u5^c5.

    The centre transforms by det(B) * B in row convention, so a triangular
    (c4 != 0) or antidiagonal (c4 == 0) abelianization suffices.
    """
    ctx = z.ctx
    c4, c5 = z.coords[3], z.coords[4]
    if c4:
        tt = ONE / c4
        rows = [[ONE, -c5 / (c4 * c4)], [ZERO, tt]]
    else:
        rows = [[ZERO, -ONE / c5], [ONE, ZERO]]
    return EndoSpec(ctx, [_pure_weight1(ctx, row) for row in rows])


# ---------------------------------------------------------------------------
# random sampling (seeded, bounded height)
# ---------------------------------------------------------------------------


def random_coords(ctx, rng, height=10):
    return [rand_q(rng, height) for _ in range(ctx.n)]


def random_element(ctx, rng, height=10):
    return NilElement(ctx, random_coords(ctx, rng, height))


def random_invertible_matrix(r, rng, height=10):
    while True:
        m = [[rand_q(rng, height) for _ in range(r)] for _ in range(r)]
        if det(m) != 0:
            return m


def random_automorphism(ctx, rng, height=10):
    """Random invertible abelianization plus random commutator parts."""
    abmat = random_invertible_matrix(ctx.rank, rng, height)
    images = []
    for row in abmat:
        coords = list(row) + [rand_q(rng, height) for _ in range(ctx.n - ctx.rank)]
        images.append(NilElement(ctx, coords))
    return EndoSpec(ctx, images)


# ---------------------------------------------------------------------------
# obstruction reports
# ---------------------------------------------------------------------------


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _check_prime_pair(p, q):
    if not (_is_prime(p) and _is_prime(q)):
        raise ValueError("p and q must be prime")
    if p == q:
        raise ValueError("p and q must be distinct")


@dataclass
class ObstructionReport:
    """Evidence bundle: symbolic identities, square refutations, trials."""

    case: str
    p: int
    q: int
    constraints: list = field(default_factory=list)
    constraint_names: list = field(default_factory=list)
    symbolic_match: bool = False
    square_tests: dict = field(default_factory=dict)
    trials: int = 0
    seed: int = 0
    witness_found: bool = False
    cross_checks: int = 0

    def refuted(self):
        """True when no trial witness appeared and every closing square test
        failed to produce a rational square."""
        return (
            not self.witness_found
            and self.symbolic_match
            and not any(self.square_tests.values())
        )


def derived_center_matrix_2_4(a, b, c, d):
    """Independently derived top-layer action for rank 2 class 4, from the
    graded Lie computation (basis [x2,x1,x1,x1], [x2,x1,x1,x2], [x2,x1,x2,x2]).

    Cross-checks the engine's center_action_matrix; the middle column is
    (2abD, (ad+bc)D, 2cdD) with D = ad - bc.
    """
    D = a * d - b * c
    return [
        [a * a * D, 2 * a * b * D, b * b * D],
        [a * c * D, (a * d + b * c) * D, b * d * D],
        [c * c * D, 2 * c * d * D, d * d * D],
    ]


def obstruction_n24(p, q, trials=10000, seed=0):
    """Evidence that v = [x2,x1,x1,x2] has v^p and v^q in distinct orbits of
    the rank-2 class-4 completion for distinct primes p, q.

    (i) symbolically, an endomorphism with diagonal abelianization (b=c=0)
    sends v^p to v^(D^2 p), and an antidiagonal one (a=d=0) to v^(-D^2 p),
    so transport to v^q forces D^2 = q/p or D^2 = -q/p; (ii) neither is a
    rational square; (iii) seeded random automorphisms (invertible
    abelianization, random commutator parts) never transport v^p to v^q.
    """
    _check_prime_pair(p, q)
    ctx = NilContext.get(2, 4)
    report = ObstructionReport(case="N24", p=p, q=q, trials=trials, seed=seed)

    endo, ring = generic_endo(ctx, names=["a", "b", "c", "d"])
    a, b, c, d = (ring.var(n) for n in ("a", "b", "c", "d"))
    m_sym = center_action_matrix(endo)
    m_ref = derived_center_matrix_2_4(a, b, c, d)
    report.symbolic_match = m_sym == m_ref

    # transport constraints: central coords of image of v^p must equal v^q
    pq, qq = ring.const(p), ring.const(q)
    row = m_sym[1]
    report.constraints = [pq * row[0], pq * row[1] - qq, pq * row[2]]
    report.constraint_names = [
        "p*M[1][0] = 0",
        "p*M[1][1] = q",
        "p*M[1][2] = 0",
    ]

    # reduced branches: diagonal (b=c=0) sends v^p to v^(D^2 p) with D = ad,
    # antidiagonal (a=d=0) to v^(-D^2 p) with D = -bc; both checked symbolically
    branch_ok = True
    for kind in ("diag", "anti"):
        ring2 = PolyRing(["s", "t"])
        s, t = ring2.var("s"), ring2.var("t")
        if kind == "diag":
            rows = [[s, ring2.zero], [ring2.zero, t]]
            expected_mid = s * s * t * t
        else:
            rows = [[ring2.zero, s], [t, ring2.zero]]
            expected_mid = -(s * s * t * t)
        e2 = EndoSpec(ctx, [_pure_weight1(ctx, row) for row in rows])
        m2 = center_action_matrix(e2)
        branch_ok = branch_ok and m2[1] == [ring2.zero, expected_mid, ring2.zero]
    report.symbolic_match = report.symbolic_match and branch_ok

    report.square_tests = {
        "q/p": is_rational_square(Q(q, p)),
        "-q/p": is_rational_square(-Q(q, p)),
    }

    vpos = ctx.basis_names.index("[x2,x1,x1,x2]")
    lo, hi = ctx.layer_coords(4)
    vp = pow_(ctx.basis_element(vpos), p)
    rng = random.Random(seed)
    cross_every = max(1, trials // 20)
    for trial in range(trials):
        am = random_invertible_matrix(2, rng)
        gparts = [
            [rand_q(rng) for _ in range(ctx.n - 2)],
            [rand_q(rng) for _ in range(ctx.n - 2)],
        ]
        (aa, bb), (cc, dd) = am
        D = aa * dd - bb * cc
        image_mid = [p * aa * cc * D, p * (aa * dd + bb * cc) * D, p * bb * dd * D]
        if image_mid == [ZERO, as_q(q), ZERO]:
            report.witness_found = True
        if trial % cross_every == 0:
            e = EndoSpec(
                ctx,
                [
                    NilElement(ctx, list(row) + gp)
                    for row, gp in zip(am, gparts)
                ],
            )
            img = apply(e, vp)
            if any(img.coords[:lo]) or list(img.coords[lo:hi]) != image_mid:
                raise VerificationError(
                    "closed-form central transport disagrees with the engine"
                )
            report.cross_checks += 1
    return report


def _n33_minor_system(ring, names, p, q):
    """The transport constraint system written via 2x2 minors.

    X_k are the minors of rows (1,2) and Y_k of rows (3,2) of the
    abelianization matrix; the eight equations pin the coefficients of the
    weight-3 basis in the image of [x2,x1,x1]^p [x3,x2,x3].
    """
    a = [[ring.var(names[i * 3 + j]) for j in range(3)] for i in range(3)]
    x1 = a[1][1] * a[0][0] - a[0][1] * a[1][0]
    x2 = a[1][2] * a[0][0] - a[1][0] * a[0][2]
    x3 = a[1][2] * a[0][1] - a[1][1] * a[0][2]
    y1 = a[2][1] * a[1][0] - a[1][1] * a[2][0]
    y2 = a[2][2] * a[1][0] - a[1][2] * a[2][0]
    y3 = a[2][2] * a[1][1] - a[1][2] * a[2][1]
    return [
        p * a[0][0] * x1 + a[2][0] * y1 - q,
        p * a[0][1] * x1 + a[2][1] * y1,
        p * (a[0][2] * x1 - a[0][0] * x3) + (a[2][2] * y1 - a[2][0] * y3),
        p * a[0][0] * x2 + a[2][0] * y2,
        p * (a[0][1] * x2 + a[0][0] * x3) + (a[2][1] * y2 + a[2][0] * y3),
        p * a[0][2] * x2 + a[2][2] * y2,
        p * a[0][1] * x3 + a[2][1] * y3,
        p * a[0][2] * x3 + a[2][2] * y3 - ring.one,
    ]


def _n33_residuals(am, p, q):
    """Fast numeric evaluation of the eight transport residuals."""
    (a11, a12, a13), (a21, a22, a23), (a31, a32, a33) = am
    x1 = a22 * a11 - a12 * a21
    x2 = a23 * a11 - a21 * a13
    x3 = a23 * a12 - a22 * a13
    y1 = a32 * a21 - a22 * a31
    y2 = a33 * a21 - a23 * a31
    y3 = a33 * a22 - a23 * a32
    return [
        p * a11 * x1 + a31 * y1 - q,
        p * a12 * x1 + a32 * y1,
        p * (a13 * x1 - a11 * x3) + (a33 * y1 - a31 * y3),
        p * a11 * x2 + a31 * y2,
        p * (a12 * x2 + a11 * x3) + (a32 * y2 + a31 * y3),
        p * a13 * x2 + a33 * y2,
        p * a12 * x3 + a32 * y3,
        p * a13 * x3 + a33 * y3 - 1,
    ]


def obstruction_n33(p, q, trials=100000, seed=0):
    """Evidence that [x2,x1,x1]^p [x3,x2,x3] and [x2,x1,x1]^q [x3,x2,x3] lie
    in distinct orbits of the rank-3 class-3 completion.

    (i) the symbolic transport constraints over formal weight-1 exponents are
    generated by the engine and matched, as polynomial identities, against
    the closed-form minor system; (ii) the closing branches need q/p or p to
    be a rational square, and neither is; (iii) seeded random invertible
    matrices (with random commutator parts) never satisfy the system.
    """
    _check_prime_pair(p, q)
    ctx = NilContext.get(3, 3)
    report = ObstructionReport(case="N33", p=p, q=q, trials=trials, seed=seed)

    names = [f"a{i+1}{j+1}" for i in range(3) for j in range(3)]
    endo, ring = generic_endo(ctx, names=names, extra_vars=("p", "q"))
    pv, qv = ring.var("p"), ring.var("q")
    lo, hi = ctx.layer_coords(3)
    m1 = ctx.basis_names.index("[x2,x1,x1]")
    m8 = ctx.basis_names.index("[x3,x2,x3]")
    coords = [ring.zero] * ctx.n
    coords[m1] = pv
    coords[m8] = ring.one
    vp = NilElement(ctx, coords)
    img = apply(endo, vp)
    if any(img.coords[:lo]):
        raise VerificationError("central transport image is not central")
    target = [ring.zero] * (hi - lo)
    target[m1 - lo] = qv
    target[m8 - lo] = ring.one
    generated = [ic - t for ic, t in zip(img.coords[lo:hi], target)]
    reference = _n33_minor_system(ring, names, pv, qv)
    report.symbolic_match = generated == reference
    report.constraints = generated
    report.constraint_names = [ctx.basis_names[i] for i in range(m1, m1 + 8)]

    report.square_tests = {
        "q/p": is_rational_square(Q(q, p)),
        "p": is_rational_square(Q(p)),
    }

    rng = random.Random(seed)
    cross_every = max(1, trials // 50)
    n_gp = ctx.n - 3
    for trial in range(trials):
        am = random_invertible_matrix(3, rng)
        gparts = [[rand_q(rng) for _ in range(n_gp)] for _ in range(3)]
        res = _n33_residuals(am, p, q)
        if not any(res):
            report.witness_found = True
        if trial % cross_every == 0:
            e = EndoSpec(
                ctx,
                [NilElement(ctx, list(row) + gp) for row, gp in zip(am, gparts)],
            )
            vnum = [ZERO] * ctx.n
            vnum[m1] = as_q(p)
            vnum[m8] = ONE
            img_num = apply(e, NilElement(ctx, vnum))
            expect = list(res)
            expect[0] = expect[0] + q
            expect[7] = expect[7] + 1
            if any(img_num.coords[:lo]) or list(img_num.coords[lo:hi]) != expect:
                raise VerificationError(
                    "minor system disagrees with the engine transport"
                )
            report.cross_checks += 1
    return report
