"""Exact rational arithmetic: Bernoulli numbers, Bernoulli polynomials,
binomial coefficients, and two power-sum closed forms.

Convention note (important): B_1 = -1/2 throughout. The power-sum closed
form used here,

    sum_{j=1}^{n} j^r = n^r/2 + 1/(r+1) * sum_{m=0}^{floor(r/2)}
                        C(r+1, 2m) B_{2m} n^{r+1-2m},

absorbs the odd m = 1 term as the explicit +n^r/2, which only works with
B_1 = -1/2. Swapping in the B_1 = +1/2 convention silently breaks every
identity downstream, so the recurrence below is pinned to it.

All values are fractions.Fraction (arbitrary-precision, always reduced,
positive denominator), which is exactly the rational value type the rest
of the package builds on.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import comb
from typing import List, Union

__all__ = [
    "binomial",
    "bernoulli_number",
    "bernoulli_polynomial",
    "power_sum",
    "coprime_power_sum",
    "half_sum_check",
]

Rational = Union[int, Fraction]


def binomial(n: int, k: int) -> int:
    """C(n, k) exactly; 0 when k > n."""
    if n < 0 or k < 0:
        raise ValueError("binomial requires non-negative arguments")
    return comb(n, k)


# Memoized Bernoulli numbers B_0, B_1, ... Extension happens under a lock
# so each index is computed at most once; reads of filled indices are free.
_bernoulli_lock = threading.Lock()
_bernoulli_table: List[Fraction] = [Fraction(1)]


def bernoulli_number(m: int) -> Fraction:
    """Bernoulli number B_m with B_1 = -1/2.

    Defined by B_0 = 1 and sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1.
    """
    if m < 0:
        raise ValueError(f"bernoulli_number requires m >= 0, got {m}")
    if m >= len(_bernoulli_table):
        with _bernoulli_lock:
            while m >= len(_bernoulli_table):
                mm = len(_bernoulli_table)
                if mm % 2 == 1 and mm >= 3:
                    _bernoulli_table.append(Fraction(0))
                    continue
                acc = sum(
                    comb(mm + 1, j) * _bernoulli_table[j] for j in range(mm)
                )
                _bernoulli_table.append(Fraction(-acc, mm + 1))
    return _bernoulli_table[m]


def bernoulli_polynomial(m: int, x: Rational) -> Fraction:
    """B_m(x) = sum_{k=0}^{m} C(m, k) B_k x^(m-k), exactly."""
    if m < 0:
        raise ValueError(f"bernoulli_polynomial requires m >= 0, got {m}")
    x = Fraction(x)
    bernoulli_number(m)  # fill the table once up front
    total = Fraction(0)
    xpow = Fraction(1)
    for k in range(m, -1, -1):
        total += comb(m, k) * _bernoulli_table[k] * xpow
        xpow *= x
    return total


def power_sum(n: int, r: int) -> int:
    """sum_{j=1}^{n} j^r via the closed form; the result must be integral."""
    if n < 1 or r < 1:
        raise ValueError("power_sum requires n >= 1 and r >= 1")
    acc = Fraction(n**r, 2)
    for m in range(r // 2 + 1):
        acc += Fraction(comb(r + 1, 2 * m) * n ** (r + 1 - 2 * m), r + 1) * bernoulli_number(2 * m)
    if acc.denominator != 1:
        raise RuntimeError(f"power_sum({n}, {r}) is non-integral: {acc}")
    return acc.numerator


def coprime_power_sum(n: int, r: int) -> int:
    """sum of j^r over 1 <= j <= n with gcd(j, n) = 1, via

        n^(r+1)/(r+1) * sum_{m=0}^{floor(r/2)} C(r+1, 2m) B_{2m} / n^(2m)
                        * prod_{p|n} (1 - p^(2m-1)),

    which is stated for n > 1 only. The result must be integral.
    """
    from .arith import factorize

    if n < 2:
        raise ValueError("coprime_power_sum requires n >= 2")
    if r < 1:
        raise ValueError("coprime_power_sum requires r >= 1")
    primes = factorize(n).primes
    acc = Fraction(0)
    for m in range(r // 2 + 1):
        term = Fraction(comb(r + 1, 2 * m)) * bernoulli_number(2 * m) / n ** (2 * m)
        for p in primes:
            term *= 1 - Fraction(p) ** (2 * m - 1)
        acc += term
    acc *= Fraction(n ** (r + 1), r + 1)
    if acc.denominator != 1:
        raise RuntimeError(f"coprime_power_sum({n}, {r}) is non-integral: {acc}")
    return acc.numerator


def half_sum_check(r: int) -> Fraction:
    """sum_{m=0}^{floor(r/2)} C(r+1, 2m) B_{2m}; equals (r+1)/2 for r >= 1.

    This is the identity that removes the even/odd case split from the
    power-sum manipulations. It needs the B_1 term of the full binomial
    sum to exist, so it starts at r = 1; at r = 0 the sum is just B_0 = 1.
    """
    if r < 0:
        raise ValueError(f"half_sum_check requires r >= 0, got {r}")
    return Fraction(
        sum(comb(r + 1, 2 * m) * bernoulli_number(2 * m) for m in range(r // 2 + 1))
    )
