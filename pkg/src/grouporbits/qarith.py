"""Exact rational scalars: coercion, parsing, square tests, bounded random sampling.

Everything in this package computes over exact rationals.  ``Q`` is gmpy2's
``mpq`` when available (much faster) and falls back to ``fractions.Fraction``,
which implements the same arithmetic protocol.
"""
from __future__ import annotations

from fractions import Fraction
from math import isqrt

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    Q = Fraction

ZERO = Q(0)
ONE = Q(1)


class QParseError(ValueError):
    """Raised when a string is not a valid rational literal."""


def as_q(x):
    """Coerce an int, Fraction, Q, or 'p/q' string to Q."""
    if isinstance(x, (int, Fraction)) or type(x) is type(ZERO):
        return Q(x)
    if isinstance(x, str):
        return parse_q(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def parse_q(text):
    """Parse a rational literal: optional sign, integer, optional /denominator."""
    s = text.strip()
    try:
        if "/" in s:
            num, den = s.split("/", 1)
            d = int(den)
            if d == 0:
                raise QParseError(f"zero denominator in {text!r}")
            return Q(int(num), d)
        return Q(int(s))
    except (ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, QParseError):
            raise
        raise QParseError(f"bad rational literal {text!r}") from exc


def q_parts(x):
    """Return (numerator, denominator) of Q as plain ints, denominator > 0."""
    q = as_q(x)
    return int(q.numerator), int(q.denominator)


def format_q(x):
    """Deterministic string form: 'p' or 'p/q' in lowest terms."""
    num, den = q_parts(x)
    return str(num) if den == 1 else f"{num}/{den}"


def is_rational_square(x) -> bool:
    """True iff x is the square of a rational.

    Exact: reduce to lowest terms and test numerator and denominator for
    perfect squares.  Negative inputs are never squares; zero is.
    """
    q = as_q(x)
    if q < 0:
        return False
    num, den = q_parts(q)
    rn, rd = isqrt(num), isqrt(den)
    return rn * rn == num and rd * rd == den


def rand_q(rng, height=10):
    """Random rational with numerator in [-height, height], denominator in [1, height]."""
    return Q(rng.randint(-height, height), rng.randint(1, height))


def rand_nonzero_q(rng, height=10):
    """Random nonzero rational of bounded height."""
    while True:
        q = rand_q(rng, height)
        if q:
            return q
