"""Basic commutators of bounded weight on r generators.

The family is built recursively: generators are the weight-1 elements; a
bracket [b_i, b_j] of previously listed elements is kept when
w(b_i) + w(b_j) is the target weight, i > j, and, if b_i = [b_s, b_t],
j >= t.  Elements are ordered by weight, and inside a weight layer
lexicographically by the (left, right) index pair, which makes the listing
deterministic.

``expand`` maps a basic commutator to the truncated free associative algebra
by distributing [a, b] = ab - ba; the weight-w expansions form a basis of the
degree-w Lie layer, with dimensions given by the necklace-counting oracle
``witt_dimension``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .freealg import TruncatedFreeAlgebra


@dataclass(frozen=True)
class BasicCommutator:
    """One basic commutator: a generator, or a bracket of earlier ones."""

    index: int
    weight: int
    gen: int | None = None     # generator number for weight-1 elements
    left: int | None = None    # index of the left factor
    right: int | None = None   # index of the right factor

    @property
    def is_generator(self):
        return self.gen is not None


def enumerate_basis(rank, weight_cap):
    """All basic commutators of weight <= weight_cap on rank generators, in order."""
    if rank < 1 or weight_cap < 1:
        raise ValueError("rank and weight cap must be >= 1")
    basis = [
        BasicCommutator(index=i, weight=1, gen=i + 1) for i in range(rank)
    ]
    for w in range(2, weight_cap + 1):
        found = []
        for i, bi in enumerate(basis):
            wj = w - bi.weight
            if wj < 1:
                continue
            for j in range(i):
                bj = basis[j]
                if bj.weight != wj:
                    continue
                if bi.right is not None and j < bi.right:
                    continue
                found.append((i, j))
        found.sort()
        for i, j in found:
            basis.append(
                BasicCommutator(
                    index=len(basis), weight=w, left=i, right=j
                )
            )
    return basis


def is_basic(basis, k):
    """Re-check the defining conditions for basis[k] against the listing."""
    b = basis[k]
    if b.is_generator:
        return b.weight == 1 and b.left is None and b.right is None
    bi, bj = basis[b.left], basis[b.right]
    if b.weight != bi.weight + bj.weight:
        return False
    if b.left <= b.right:
        return False
    if bi.right is not None and b.right < bi.right:
        return False
    return True


def commutator_name(basis, k):
    """Print form: x3, [x2,x1], left-normed chains flattened as [x2,x1,x1]."""
    b = basis[k]
    if b.is_generator:
        return f"x{b.gen}"
    left = commutator_name(basis, b.left)
    right = commutator_name(basis, b.right)
    if basis[b.right].is_generator and left.startswith("["):
        return f"{left[:-1]},{right}]"
    return f"[{left},{right}]"


def expand(basis, k, algebra: TruncatedFreeAlgebra):
    """Lie-polynomial expansion of basis[k]: distribute [a,b] = ab - ba."""
    b = basis[k]
    if b.weight > algebra.cap:
        raise ValueError(
            f"weight {b.weight} exceeds the algebra's degree cap {algebra.cap}"
        )
    if b.is_generator:
        return algebra.gen(b.gen)
    return algebra.bracket(
        expand(basis, b.left, algebra), expand(basis, b.right, algebra)
    )


def _mobius(n):
    mu, m = 1, n
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            mu = -mu
        p += 1
    if m > 1:
        mu = -mu
    return mu


def witt_dimension(rank, weight):
    """Dimension of the weight-w Lie layer: (1/w) * sum_{d|w} mu(d) r^(w/d).

    Independent oracle for ``enumerate_basis`` (necklace counting), never
    derived from the enumeration itself.
    """
    if rank < 1 or weight < 1:
        raise ValueError("rank and weight must be >= 1")
    total = sum(
        _mobius(d) * rank ** (weight // d)
        for d in range(1, weight + 1)
        if weight % d == 0
    )
    assert total % weight == 0
    return total // weight


def hirsch_length(rank, weight_cap):
    """Number of basic commutators of weight <= cap (by the Witt oracle)."""
    return sum(witt_dimension(rank, w) for w in range(1, weight_cap + 1))
