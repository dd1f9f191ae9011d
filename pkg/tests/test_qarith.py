import random

import pytest
from hypothesis import given, strategies as st

from grouporbits.qarith import (
    Q,
    QParseError,
    as_q,
    format_q,
    is_rational_square,
    parse_q,
    q_parts,
    rand_nonzero_q,
    rand_q,
)


def test_parse_and_format():
    assert parse_q("3/2") == Q(3, 2)
    assert parse_q("-7") == -7
    assert parse_q(" 4/6 ") == Q(2, 3)
    assert format_q(Q(3, 2)) == "3/2"
    assert format_q(Q(-4, 2)) == "-2"
    assert q_parts(Q(6, 4)) == (3, 2)


def test_parse_errors():
    with pytest.raises(QParseError):
        parse_q("1/0")
    with pytest.raises(QParseError):
        parse_q("a/b")
    with pytest.raises(TypeError):
        as_q(1.5)


def test_square_examples():
    assert is_rational_square(Q(4, 9))
    assert not is_rational_square(Q(3, 2))
    assert not is_rational_square(Q(-1, 4))
    assert is_rational_square(0)
    assert is_rational_square(Q(49))
    assert not is_rational_square(Q(2))


@given(st.integers(min_value=-500, max_value=500), st.integers(min_value=1, max_value=500))
def test_squares_of_rationals_are_squares(n, d):
    q = Q(n, d)
    assert is_rational_square(q * q)


@given(st.integers(min_value=2, max_value=2000))
def test_squarefree_scaled_squares_are_not(n):
    # n * x^2 is a square iff n is; 2 * k^2 never is
    assert not is_rational_square(2 * n * n)


def test_rand_q_bounds():
    rng = random.Random(0)
    for _ in range(200):
        q = rand_q(rng, height=7)
        assert abs(q.numerator) <= 7 and 1 <= q.denominator <= 7
        assert rand_nonzero_q(rng, height=7) != 0


def test_rand_q_reproducible():
    a = [rand_q(random.Random(42)) for _ in range(5)]
    b = [rand_q(random.Random(42)) for _ in range(5)]
    assert a == b
