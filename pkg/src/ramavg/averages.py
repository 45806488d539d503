"""Weighted averages of Ramanujan sums: direct and closed-form evaluators.

Every identity comes as a pair evaluator returning both sides. Rational
identities return ExactPair (equality must be literal), transcendental
ones return FloatPair (mixed tolerance |lhs - rhs| <= tol*(1 + max|side|),
which stays meaningful when a side is exactly zero).

Summation bounds are part of the contract and differ per identity:

    identity                      index range
    ------------------------------------------
    power weight (s_r_*)          j = 1 .. k
    log weight                    j = 1 .. k
    gcd weight                    j = 1 .. k
    log-Gamma weight              j = 1 .. k
    binomial weight               j = 0 .. k
    Bernoulli polynomial weight   j = 0 .. k-1
    inverse DFT                   j = 1 .. k

An off-by-one here breaks exact checks silently, hence the table.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from hashlib import blake2b
from typing import Callable, Dict, Tuple, Union

import numpy as np

from .arith import (
    dirichlet_convolve,
    divisor_count_and_sum,
    divisors,
    euler_phi,
    factorize,
    jordan_totient,
    mobius,
    von_mangoldt,
)
from .exact import bernoulli_number, binomial
from .ramanujan import ramanujan_row, _unit_roots

__all__ = [
    "DEFAULT_TOLERANCE",
    "DEFAULT_SEED",
    "COSINE_LIMIT",
    "DFT_LIMIT",
    "ArithmeticFunction",
    "ExactPair",
    "FloatPair",
    "NAMED_FUNCTIONS",
    "random_function",
    "log_factorial",
    "cos_pi",
    "s_r_direct",
    "s_r_closed",
    "log_weighted_pair",
    "gcd_weighted_pair",
    "gamma_weighted_pair",
    "gamma_product_check",
    "mobius_log_check",
    "binomial_weighted_exact",
    "binomial_weighted_cosine",
    "bernoulli_weighted_pair",
    "inverse_dft_check",
]

DEFAULT_TOLERANCE = 1e-8
DEFAULT_SEED = 123456789
COSINE_LIMIT = 1000  # cos^k underflows past this; reject rather than mislead
DFT_LIMIT = 10**5

Rational = Union[int, Fraction]


@dataclass(frozen=True)
class ArithmeticFunction:
    """A named map from positive integers to exact rationals."""

    name: str
    fn: Callable[[int], Rational]

    def __call__(self, n: int) -> Rational:
        return self.fn(n)


@dataclass(frozen=True)
class ExactPair:
    lhs: Fraction
    rhs: Fraction

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class FloatPair:
    lhs: float
    rhs: float
    tolerance: float = DEFAULT_TOLERANCE

    @property
    def abs_error(self) -> float:
        return abs(self.lhs - self.rhs)

    @property
    def ok(self) -> bool:
        return self.abs_error <= self.tolerance * (1 + max(abs(self.lhs), abs(self.rhs)))


NAMED_FUNCTIONS: Dict[str, ArithmeticFunction] = {
    "id": ArithmeticFunction("id", lambda n: n),
    "tau": ArithmeticFunction("tau", lambda n: divisor_count_and_sum(n)[0]),
    "sigma": ArithmeticFunction("sigma", lambda n: divisor_count_and_sum(n)[1]),
    "mu": ArithmeticFunction("mu", mobius),
    "phi": ArithmeticFunction("phi", euler_phi),
}


def random_function(index: int, seed: int = DEFAULT_SEED) -> ArithmeticFunction:
    """Seeded integer-valued test function, values in [-32768, 32767].

    Hash-derived rather than drawn from a stateful RNG so that the value
    at n never depends on evaluation order (sweeps may run in parallel).
    """

    def fn(n: int) -> int:
        digest = blake2b(f"{seed}:{index}:{n}".encode(), digest_size=2).digest()
        return int.from_bytes(digest, "big") - (1 << 15)

    return ArithmeticFunction(f"rand{index:02d}", fn)


# --- power weight ---------------------------------------------------------


def s_r_direct(k: int, r: int) -> Fraction:
    """S_r(k) = (1/k^(r+1)) sum_{j=1}^{k} j^r c_k(j), from the definition."""
    if k < 1 or r < 1:
        raise ValueError("s_r_direct requires k >= 1 and r >= 1")
    row = ramanujan_row(k).values
    num = sum(j**r * row[j] for j in range(1, k + 1))
    return Fraction(num, k ** (r + 1))


def s_r_closed(k: int, r: int) -> Fraction:
    """S_r(k) by the closed form

        phi(k)/(2k) + 1/(r+1) * sum_{m=0}^{floor(r/2)}
            C(r+1, 2m) B_{2m} J_{2m}(k) / k^(2m),

    where J_{2m}(k)/k^(2m) is the product of (1 - p^(-2m)) over p | k.
    """
    if k < 1 or r < 1:
        raise ValueError("s_r_closed requires k >= 1 and r >= 1")
    acc = Fraction(euler_phi(k), 2 * k)
    for m in range(r // 2 + 1):
        acc += (
            Fraction(binomial(r + 1, 2 * m), r + 1)
            * bernoulli_number(2 * m)
            * Fraction(jordan_totient(2 * m, k), k ** (2 * m))
        )
    return acc


# --- log weight -----------------------------------------------------------

_LOG_FACT_TABLE_LIMIT = 10**5
_log_fact_lock = threading.Lock()
_log_fact_table = [0.0, 0.0]  # log(0!), log(1!)
_log_fact_comp = 0.0  # Kahan compensation carried across extensions


def log_factorial(d: int) -> float:
    """log(d!) by compensated summation of log m (lgamma past the table)."""
    global _log_fact_comp
    if d < 0:
        raise ValueError(f"log_factorial requires d >= 0, got {d}")
    if d > _LOG_FACT_TABLE_LIMIT:
        return math.lgamma(d + 1)
    if d >= len(_log_fact_table):
        with _log_fact_lock:
            total = _log_fact_table[-1]
            comp = _log_fact_comp
            for m in range(len(_log_fact_table), d + 1):
                y = math.log(m) - comp
                t = total + y
                comp = (t - total) - y
                total = t
                _log_fact_table.append(total)
            _log_fact_comp = comp
    return _log_fact_table[d]


def log_weighted_pair(k: int, tolerance: float = DEFAULT_TOLERANCE) -> FloatPair:
    """(1/k) sum_{j=1}^{k} log(j) c_k(j)  vs  Lambda(k) + sum_{d|k} (mu(d)/d) log(d!)."""
    if k < 1:
        raise ValueError(f"log_weighted_pair requires k >= 1, got {k}")
    row = ramanujan_row(k).values
    lhs = sum(math.log(j) * row[j] for j in range(2, k + 1)) / k
    rhs = von_mangoldt(k).value()
    for d in divisors(k):
        mu_d = mobius(d)
        if mu_d:
            rhs += mu_d * log_factorial(d) / d
    return FloatPair(lhs, rhs, tolerance)


# --- gcd weight -----------------------------------------------------------


def gcd_weighted_pair(k: int, f: ArithmeticFunction) -> ExactPair:
    """sum_{j=1}^{k} f(gcd(j, k)) c_k(j)  vs  phi(k) (mu * f)(k), exactly."""
    if k < 1:
        raise ValueError(f"gcd_weighted_pair requires k >= 1, got {k}")
    row = ramanujan_row(k).values
    fval = {d: f(d) for d in divisors(k)}  # gcd(j, k) is always a divisor
    gcd = math.gcd
    lhs = sum(fval[gcd(j, k)] * row[j] for j in range(1, k + 1))
    rhs = euler_phi(k) * dirichlet_convolve(mobius, f, k)
    return ExactPair(Fraction(lhs), Fraction(rhs))


# --- log-Gamma weight -----------------------------------------------------


def gamma_weighted_pair(k: int, tolerance: float = DEFAULT_TOLERANCE) -> FloatPair:
    """(1/phi(k)) sum_{j=1}^{k} log Gamma(j/k) c_k(j)
    vs  (1/2) sum_{p|k} log(p)/(p-1) - log(2 pi)/2, for k > 1.

    math.lgamma is well within the 1e-12 relative error the comparison
    budget assumes.
    """
    if k < 2:
        raise ValueError(f"gamma_weighted_pair requires k >= 2, got {k}")
    row = ramanujan_row(k).values
    lhs = sum(math.lgamma(j / k) * row[j] for j in range(1, k + 1)) / euler_phi(k)
    rhs = 0.5 * sum(math.log(p) / (p - 1) for p in factorize(k).primes)
    rhs -= 0.5 * math.log(2 * math.pi)
    return FloatPair(lhs, rhs, tolerance)


def gamma_product_check(n: int, tolerance: float = DEFAULT_TOLERANCE) -> FloatPair:
    """log of prod_{k=1}^{n} Gamma(k/n)  vs  ((n-1)/2) log(2 pi) - (1/2) log n."""
    if n < 1:
        raise ValueError(f"gamma_product_check requires n >= 1, got {n}")
    lhs = sum(math.lgamma(k / n) for k in range(1, n + 1))
    rhs = (n - 1) / 2 * math.log(2 * math.pi) - 0.5 * math.log(n)
    return FloatPair(lhs, rhs, tolerance)


def mobius_log_check(k: int, tolerance: float = DEFAULT_TOLERANCE) -> FloatPair:
    """sum_{d|k} (mu(d)/d) log d  vs  -(phi(k)/k) sum_{p|k} log(p)/(p-1)."""
    if k < 1:
        raise ValueError(f"mobius_log_check requires k >= 1, got {k}")
    lhs = 0.0
    for d in divisors(k):
        mu_d = mobius(d)
        if mu_d and d > 1:
            lhs += mu_d * math.log(d) / d
    rhs = -euler_phi(k) / k * sum(math.log(p) / (p - 1) for p in factorize(k).primes)
    return FloatPair(lhs, rhs, tolerance)


# --- binomial weight ------------------------------------------------------


def binomial_weighted_exact(k: int) -> ExactPair:
    """sum_{j=0}^{k} C(k, j) c_k(j)  vs  the divisor-side big integer

        sum_{d|k} d mu(k/d) sum_{m=0}^{k/d} C(k, d m).
    """
    if k < 1:
        raise ValueError(f"binomial_weighted_exact requires k >= 1, got {k}")
    row = ramanujan_row(k).values
    lhs = sum(binomial(k, j) * row[j] for j in range(0, k + 1))
    rhs = 0
    for d in divisors(k):
        mu_kd = mobius(k // d)
        if mu_kd:
            rhs += d * mu_kd * sum(binomial(k, d * m) for m in range(k // d + 1))
    return ExactPair(Fraction(lhs), Fraction(rhs))


def cos_pi(num: int, den: int) -> float:
    """cos(num * pi / den) with the argument reduced mod 2*den first.

    Reduction keeps the lattice points exact: the result is exactly
    1.0, 0.0 or -1.0 whenever the angle is a multiple of pi/2.
    """
    t = num % (2 * den)
    if t > den:
        t = 2 * den - t
    if t == 0:
        return 1.0
    if t == den:
        return -1.0
    if 2 * t == den:
        return 0.0
    return math.cos(math.pi * t / den)


def binomial_weighted_cosine(k: int, tolerance: float = DEFAULT_TOLERANCE) -> FloatPair:
    """(1/2^k) sum_{j=0}^{k} C(k, j) c_k(j)  vs  the cosine double sum

        sum_{d|k} mu(k/d) sum_{l=1}^{d} (-1)^(l k/d) cos^k(l pi / d).
    """
    if k < 1:
        raise ValueError(f"binomial_weighted_cosine requires k >= 1, got {k}")
    if k > COSINE_LIMIT:
        raise ValueError(f"k={k} exceeds the cosine evaluation bound {COSINE_LIMIT}")
    row = ramanujan_row(k).values
    exact_lhs = sum(binomial(k, j) * row[j] for j in range(0, k + 1))
    lhs = float(Fraction(exact_lhs, 2**k))
    rhs = 0.0
    for d in divisors(k):
        mu_kd = mobius(k // d)
        if not mu_kd:
            continue
        inner = 0.0
        for ell in range(1, d + 1):
            sign = -1.0 if (ell * (k // d)) % 2 else 1.0
            inner += sign * cos_pi(ell, d) ** k
        rhs += mu_kd * inner
    return FloatPair(lhs, rhs, tolerance)


# --- Bernoulli polynomial weight ------------------------------------------


@lru_cache(maxsize=256)
def _bernoulli_poly_scaled(m: int) -> Tuple[Tuple[int, ...], int]:
    """Coefficients of D * B_m(x) with D clearing every denominator:

    returns (c_0..c_m, D) with D * B_m(x) = sum_t c_t x^(m-t).
    """
    coeffs = [binomial(m, t) * bernoulli_number(t) for t in range(m + 1)]
    d = math.lcm(*(c.denominator for c in coeffs))
    return tuple(int(c * d) for c in coeffs), d


def bernoulli_weighted_pair(k: int, m: int) -> ExactPair:
    """sum_{j=0}^{k-1} B_m(j/k) c_k(j)  vs  (B_m / k^(m-1)) J_m(k), exactly.

    The left side is evaluated with integer Horner on k^m * D * B_m(j/k)
    (D clears the Bernoulli denominators), then divided back out, which
    is the same rational sum without per-term Fraction reductions.
    """
    if k < 1 or m < 1:
        raise ValueError("bernoulli_weighted_pair requires k >= 1 and m >= 1")
    row = ramanujan_row(k).values
    base, d = _bernoulli_poly_scaled(m)
    # k^m * D * B_m(j/k) = sum_t (c_t k^t) j^(m-t): integer polynomial in j.
    coeffs = [c * k**t for t, c in enumerate(base)]
    total = 0
    for j in range(k):
        acc = 0
        for c in coeffs:
            acc = acc * j + c
        total += acc * row[j]
    lhs = Fraction(total, d * k**m)
    rhs = bernoulli_number(m) * Fraction(jordan_totient(m, k), k ** (m - 1))
    return ExactPair(lhs, rhs)


# --- inverse DFT ----------------------------------------------------------


@lru_cache(maxsize=1024)
def _dft_row(k: int) -> Tuple[np.ndarray, np.ndarray]:
    row = np.array(ramanujan_row(k).values[1:], dtype=np.float64)
    jarr = np.arange(1, k + 1, dtype=np.int64)
    return row, jarr


def inverse_dft_check(k: int, n: int, tolerance: float = DEFAULT_TOLERANCE) -> FloatPair:
    """(1/k) sum_{j=1}^{k} exp(2 pi i j n / k) c_k(j)  vs  [gcd(k, n) = 1].

    The imaginary part of the sum must cancel to below 1e-8 * k.
    """
    if k < 1 or n < 1:
        raise ValueError("inverse_dft_check requires k >= 1 and n >= 1")
    if k > DFT_LIMIT:
        raise ValueError(f"k={k} exceeds the DFT evaluation bound {DFT_LIMIT}")
    row, jarr = _dft_row(k)
    z = (row * _unit_roots(k)[(jarr * n) % k]).sum()
    if abs(z.imag) > 1e-8 * k:
        raise RuntimeError(f"imaginary part {z.imag} too large for k={k}, n={n}")
    lhs = float(z.real) / k
    rhs = 1.0 if math.gcd(k, n) == 1 else 0.0
    return FloatPair(lhs, rhs, tolerance)
