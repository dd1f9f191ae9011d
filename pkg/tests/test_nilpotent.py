import random

import pytest

from grouporbits.nilpotent import (
    ContextMismatchError,
    NilContext,
    NilElement,
    commutator,
    from_word,
    identity,
    inv,
    is_central,
    lcs_weight,
    mul,
    polynomials,
    pow_,
)
from grouporbits.autos import random_element
from grouporbits.qarith import ONE, ZERO, Q, rand_q


def test_from_word_examples(ctx23, ctx22):
    assert from_word(ctx23, []).is_identity()
    e = from_word(ctx23, [(1, Q(3, 2))])
    assert e.coords == (Q(3, 2), ZERO, ZERO, ZERO, ZERO)
    w = from_word(ctx22, [(1, 1), (2, 1), (1, -1), (2, -1)])
    assert w.coords == (ZERO, ZERO, -ONE)
    with pytest.raises(ValueError):
        from_word(ctx23, [(3, 1)])


def test_heisenberg_product_law(ctx22):
    rng = random.Random(5)
    for _ in range(50):
        a = random_element(ctx22, rng)
        b = random_element(ctx22, rng)
        c = mul(a, b)
        a1, a2, a3 = a.coords
        b1, b2, b3 = b.coords
        assert c.coords == (a1 + b1, a2 + b2, a3 + b3 + a2 * b1)


def test_square_and_square_root(ctx22):
    g = ctx22.element([1, 1, 0])
    assert mul(g, g).coords == (2, 2, 1)
    assert pow_(g, 2).coords == (2, 2, 1)
    h = pow_(g, Q(1, 2))
    assert h.coords == (Q(1, 2), Q(1, 2), Q(-1, 8))
    assert mul(h, h) == g


def test_identity_and_powers(ctx23):
    rng = random.Random(6)
    e = identity(ctx23)
    for _ in range(30):
        g = random_element(ctx23, rng)
        assert mul(e, g) == g and mul(g, e) == g
        assert pow_(g, 0).is_identity()
        assert pow_(g, 1) == g
        s, t = rand_q(rng), rand_q(rng)
        assert mul(pow_(g, s), pow_(g, t)) == pow_(g, s + t)
        assert pow_(pow_(g, s), t) == pow_(g, s * t)
        assert pow_(pow_(g, Q(7, 3)), Q(3, 7)) == g


def test_group_axioms_random(ctx23, ctx33, ctx24):
    rng = random.Random(7)
    for ctx in (ctx23, ctx33, ctx24):
        for _ in range(40):
            a = random_element(ctx, rng)
            b = random_element(ctx, rng)
            c = random_element(ctx, rng)
            assert mul(mul(a, b), c) == mul(a, mul(b, c))
            assert mul(a, inv(a)).is_identity()


def test_integer_coordinates_are_closed(ctx33):
    rng = random.Random(8)
    for _ in range(100):
        a = ctx33.element([rng.randint(-6, 6) for _ in range(ctx33.n)])
        b = ctx33.element([rng.randint(-6, 6) for _ in range(ctx33.n)])
        for coord in mul(a, b).coords + pow_(a, rng.randint(-3, 3)).coords:
            assert coord.denominator == 1


def test_nilpotency(ctx23, ctx33, ctx24):
    rng = random.Random(9)
    for ctx in (ctx23, ctx33, ctx24):
        for _ in range(10):
            acc = random_element(ctx, rng)
            for _ in range(ctx.nilpotency_class):
                acc = commutator(acc, random_element(ctx, rng))
            assert acc.is_identity()


def test_commutator_examples(ctx23):
    x1, x2 = ctx23.generator(1), ctx23.generator(2)
    assert commutator(x1, x1).is_identity()
    assert commutator(x2, x1) == ctx23.basis_element(2)
    assert commutator(inv(ctx23.identity), x1).is_identity()


def test_deep_layers_commute(ctx24):
    # elements supported on weight >= ceil((c+1)/2) commute
    rng = random.Random(10)
    lo, _ = ctx24.layer_coords(3)
    for _ in range(10):
        coords_a = [ZERO] * lo + [rand_q(rng) for _ in range(ctx24.n - lo)]
        coords_b = [ZERO] * lo + [rand_q(rng) for _ in range(ctx24.n - lo)]
        a, b = ctx24.element(coords_a), ctx24.element(coords_b)
        assert commutator(a, b).is_identity()


def test_lcs_weight_and_centrality(ctx23):
    assert lcs_weight(ctx23.identity) == 0
    assert lcs_weight(ctx23.generator(1)) == 1
    u4 = ctx23.basis_element(3)
    assert lcs_weight(u4) == 3 and is_central(u4)
    u3 = ctx23.basis_element(2)
    assert lcs_weight(u3) == 2 and not is_central(u3)
    assert is_central(ctx23.identity)


def test_rank1_collapses_to_vector_group():
    ctx = NilContext.get(1, 5)
    assert ctx.n == 1
    a, b = ctx.element([Q(2, 3)]), ctx.element([Q(1, 6)])
    assert mul(a, b).coords == (Q(5, 6),)
    assert pow_(a, Q(3, 2)).coords == (ONE,)


def test_context_mismatch(ctx22, ctx23):
    with pytest.raises(ContextMismatchError):
        mul(ctx22.identity, ctx23.identity)


def test_polynomials_closed_forms(ctx22):
    f, g = polynomials(ctx22)
    ring_f = f[2].ring
    x1, x2, x3 = (ring_f.var(f"x{i}") for i in (1, 2, 3))
    y1, y2, y3 = (ring_f.var(f"y{i}") for i in (1, 2, 3))
    assert f[0] == x1 + y1
    assert f[1] == x2 + y2
    assert f[2] == x3 + y3 + x2 * y1
    ring_g = g[2].ring
    gx = [ring_g.var(f"x{i}") for i in (1, 2, 3)]
    t = ring_g.var("t")
    assert g[2] == gx[2] * t + gx[0] * gx[1] * (t * t - t) / 2


def test_polynomials_identity_law(ctx23):
    f, _ = polynomials(ctx23)
    ring = f[0].ring
    n = ctx23.n
    xs = [rand_q(random.Random(17)) for _ in range(n)]
    at_identity = [fi.evaluate(xs + [0] * n) for fi in f]
    assert at_identity == xs


@pytest.mark.parametrize("rc", [(2, 2), (2, 3), (3, 3), (2, 4)])
def test_polynomials_agree_with_engine(rc):
    ctx = NilContext.get(*rc)
    f, g = polynomials(ctx)
    rng = random.Random(sum(rc))
    for _ in range(50):
        a = random_element(ctx, rng)
        b = random_element(ctx, rng)
        point = list(a.coords) + list(b.coords)
        assert tuple(fi.evaluate(point) for fi in f) == mul(a, b).coords
        t = rand_q(rng)
        point_g = list(a.coords) + [t]
        assert tuple(gi.evaluate(point_g) for gi in g) == pow_(a, t).coords


def test_print_form(ctx23):
    g = mul(pow_(ctx23.generator(1), Q(3, 2)), ctx23.basis_element(2))
    assert str(g) == "x1^3/2*[x2,x1]"
    assert str(ctx23.identity) == "1"
