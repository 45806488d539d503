"""Integer factorization and the classical arithmetic functions.

Everything here is exact integer arithmetic. Factorization is trial
division against a cached prime table (primes below 2**20), which covers
inputs up to 2**40; larger inputs are rejected rather than silently slow.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Callable, Optional, Tuple, Union

__all__ = [
    "Factorization",
    "VonMangoldtValue",
    "FACTOR_LIMIT",
    "factorize",
    "is_prime",
    "mobius",
    "euler_phi",
    "jordan_totient",
    "divisors",
    "divisor_count_and_sum",
    "von_mangoldt",
    "dirichlet_convolve",
]

# Trial division by primes < 2**20 fully factors anything below 2**40.
_PRIME_TABLE_BOUND = 1 << 20
FACTOR_LIMIT = 1 << 40

_prime_lock = threading.Lock()
_primes: Optional[Tuple[int, ...]] = None


def _prime_table() -> Tuple[int, ...]:
    """Primes below 2**20, sieved once on first use (read-only afterwards)."""
    global _primes
    if _primes is None:
        with _prime_lock:
            if _primes is None:
                sieve = bytearray([1]) * _PRIME_TABLE_BOUND
                sieve[0] = sieve[1] = 0
                for p in range(2, math.isqrt(_PRIME_TABLE_BOUND) + 1):
                    if sieve[p]:
                        sieve[p * p :: p] = bytearray(len(range(p * p, _PRIME_TABLE_BOUND, p)))
                _primes = tuple(i for i in range(_PRIME_TABLE_BOUND) if sieve[i])
    return _primes


_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; the witness set is exact below 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Factorization:
    """Prime factorization n = prod p**e with primes strictly increasing."""

    n: int
    factors: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        if reduce(lambda acc, pe: acc * pe[0] ** pe[1], self.factors, 1) != self.n:
            raise ValueError(f"factors do not multiply back to {self.n}")
        primes = [p for p, _ in self.factors]
        if primes != sorted(set(primes)):
            raise ValueError("primes must be strictly increasing")

    @property
    def primes(self) -> Tuple[int, ...]:
        return tuple(p for p, _ in self.factors)


@dataclass(frozen=True)
class VonMangoldtValue:
    """Symbolic von Mangoldt value: the base p when n = p**a, else nothing.

    The numeric value log(p) is only materialized on demand, so callers
    decide where floating point enters.
    """

    prime_base: Optional[int] = None

    def value(self) -> float:
        return math.log(self.prime_base) if self.prime_base is not None else 0.0


@lru_cache(maxsize=1 << 15)
def factorize(n: int) -> Factorization:
    """Factor n by trial division. Accepts 1 <= n <= 2**40."""
    if n < 1:
        raise ValueError(f"factorize requires n >= 1, got {n}")
    if n > FACTOR_LIMIT:
        raise ValueError(f"n={n} exceeds the supported range (2**40)")
    m = n
    out = []
    for p in _prime_table():
        if p * p > m:
            break
        if m % p == 0:
            e = 1
            m //= p
            while m % p == 0:
                e += 1
                m //= p
            out.append((p, e))
    if m > 1:
        # No prime factor below 2**20 and m <= 2**40, so m is prime.
        out.append((m, 1))
    return Factorization(n, tuple(out))


@lru_cache(maxsize=1 << 15)
def mobius(n: int) -> int:
    """Mobius mu: 0 on non-squarefree n, else (-1)**(number of prime factors)."""
    fac = factorize(n)
    if any(e >= 2 for _, e in fac.factors):
        return 0
    return -1 if len(fac.factors) % 2 else 1


@lru_cache(maxsize=1 << 15)
def euler_phi(n: int) -> int:
    """Euler totient: count of 1 <= m <= n with gcd(m, n) = 1."""
    result = 1
    for p, e in factorize(n).factors:
        result *= p ** (e - 1) * (p - 1)
    return result


def jordan_totient(m: int, n: int) -> int:
    """Jordan totient J_m(n) = n**m * prod_{p|n} (1 - p**-m), exactly.

    J_0(n) is 1 when n = 1 and 0 otherwise (the empty product convention),
    and J_1 is the Euler totient.
    """
    if n < 1:
        raise ValueError(f"jordan_totient requires n >= 1, got {n}")
    if m < 0:
        raise ValueError(f"jordan_totient requires m >= 0, got {m}")
    fac = factorize(n)
    if m == 0:
        return 1 if n == 1 else 0
    result = 1
    for p, e in fac.factors:
        result *= p ** (m * e) - p ** (m * (e - 1))
    return result


@lru_cache(maxsize=1 << 14)
def divisors(n: int) -> Tuple[int, ...]:
    """All divisors of n, ascending, generated from the factorization."""
    if n < 1:
        raise ValueError(f"divisors requires n >= 1, got {n}")
    ds = [1]
    for p, e in factorize(n).factors:
        ds = [d * p**i for d in ds for i in range(e + 1)]
    return tuple(sorted(ds))


def divisor_count_and_sum(n: int) -> Tuple[int, int]:
    """(tau(n), sigma(n)): the number and the sum of the divisors."""
    tau = 1
    sigma = 1
    for p, e in factorize(n).factors:
        tau *= e + 1
        sigma *= (p ** (e + 1) - 1) // (p - 1)
    return tau, sigma


def von_mangoldt(n: int) -> VonMangoldtValue:
    """Lambda(n), symbolically: base p iff n = p**a with a >= 1."""
    if n < 1:
        raise ValueError(f"von_mangoldt requires n >= 1, got {n}")
    fac = factorize(n)
    if len(fac.factors) == 1:
        return VonMangoldtValue(prime_base=fac.factors[0][0])
    return VonMangoldtValue()


Rational = Union[int, Fraction]


def dirichlet_convolve(
    f: Callable[[int], Rational], g: Callable[[int], Rational], n: int
) -> Fraction:
    """(f * g)(n) = sum_{d|n} f(d) g(n/d)."""
    total = sum(Fraction(f(d)) * Fraction(g(n // d)) for d in divisors(n))
    return Fraction(total)
