"""q-integers, q-factorials and q-multinomial coefficients.

The q-multinomial of a multi-index K is the inversion-weighted count of
arrangements of the multiset {1^K_1, ..., d^K_d}: a polynomial in q with
non-negative integer coefficients and constant term 1.  It is computed by
the Pascal-type recurrence for q-binomials rather than the factorial
quotient, so evaluating at a root of unity is exact and a genuine pole of a
symmetrized-product coefficient is the only place division can fail.
"""

from __future__ import annotations

import math
from typing import Dict, Sequence, Tuple

from .scalars import GaussRational, RationalQ, Ring


class PoleAtRootOfUnity(ArithmeticError):
    """Raised when a coefficient has a genuine pole at the evaluated q."""

    def __init__(self, order: int | None):
        self.order = order
        label = f"a primitive root of unity of order {order}" if order else "a root of unity"
        super().__init__(f"coefficient has a pole: q is {label}")


def multinomial(K: Sequence[int]) -> int:
    """|K|! / (K_1! ... K_d!)."""
    total = sum(K)
    out = 1
    rest = total
    for k in K:
        out *= math.comb(rest, k)
        rest -= k
    return out


def q_integer(k: int, q, ring: Ring):
    """[k]_q = 1 + q + ... + q^(k-1)."""
    acc = ring.zero
    power = ring.one
    for _ in range(k):
        acc = acc + power
        power = power * q
    return acc


def q_factorial(k: int, q, ring: Ring):
    out = ring.one
    for m in range(1, k + 1):
        out = out * q_integer(m, q, ring)
    return out


def q_binomial(n: int, k: int, q, ring: Ring, _memo: Dict[Tuple[int, int], object] | None = None):
    """Gaussian binomial via [n k]_q = [n-1 k-1]_q + q^k [n-1 k]_q."""
    if k < 0 or k > n:
        return ring.zero
    if k == 0 or k == n:
        return ring.one
    memo = _memo if _memo is not None else {}
    key = (n, k)
    if key in memo:
        return memo[key]
    value = (q_binomial(n - 1, k - 1, q, ring, memo)
             + q ** k * q_binomial(n - 1, k, q, ring, memo))
    memo[key] = value
    return value


def q_multinomial(K: Sequence[int], q, ring: Ring):
    """[|K|]_q! / ([K_1]_q! ... [K_d]_q!), computed pole-free.

    Factors as a product of q-binomials over prefix sums, each evaluated by
    the Pascal recurrence.
    """
    memo: Dict[Tuple[int, int], object] = {}
    out = ring.one
    prefix = 0
    for k in K:
        prefix += k
        out = out * q_binomial(prefix, k, q, ring, memo)
    return out


def root_of_unity_order(q, ring: Ring, max_order: int, tol: float = 1e-9) -> int | None:
    """Smallest 2 <= n <= max_order with q^n = 1, or None."""
    power = q
    one = ring.one
    for n in range(2, max_order + 1):
        power = power * q
        if ring.exact:
            if power == one:
                return n
        else:
            if abs(ring.to_complex(power) - 1.0) < tol:
                return n
    return None


def q_multinomial_value_or_pole(K: Sequence[int], q, ring: Ring):
    """q-multinomial value; raises PoleAtRootOfUnity when it vanishes.

    A vanishing q-multinomial at an evaluated q certifies that q is a
    nontrivial root of unity, which is exactly the pole set of the
    symmetrized coefficients.
    """
    value = q_multinomial(K, q, ring)
    if ring.is_zero(value):
        raise PoleAtRootOfUnity(root_of_unity_order(q, ring, max_order=max(2, sum(K))))
    return value


def q_multinomial_coefficients(K: Sequence[int]) -> Tuple[GaussRational, ...]:
    """Integer coefficient vector of the q-multinomial, exact."""
    from .scalars import RationalQRing

    ring = RationalQRing()
    value = q_multinomial(K, ring.q, ring)
    if not isinstance(value, RationalQ) or not value.is_polynomial():
        raise ArithmeticError("q-multinomial did not reduce to a polynomial")
    return value.numerator_coefficients()
