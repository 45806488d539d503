"""Ramanujan sums c_k(j), evaluated three independent ways.

    divisor formula   c_k(j) = sum_{d | gcd(k, j)} d mu(k/d)
    Holder form       c_k(j) = phi(k) mu(k/g) / phi(k/g),  g = gcd(k, j)
    definition        c_k(j) = sum over m coprime to k of exp(2 pi i m j / k)

The first two are exact integer arithmetic and are what the identity
evaluators consume. The float definitional sum exists purely as a test
oracle and is never used inside an identity evaluation path.

j is an arbitrary integer everywhere: it is reduced mod k up front, and
j = 0 falls under gcd(k, 0) = k, giving c_k(0) = phi(k). That convention
matters because two of the weighted averages sum from j = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

import numpy as np

from .arith import divisors, euler_phi, mobius

__all__ = [
    "RamanujanRow",
    "ramanujan_sum",
    "ramanujan_sum_holder",
    "ramanujan_sum_float",
    "ramanujan_row",
    "FLOAT_EVAL_LIMIT",
]

# Beyond this k the definitional float sum accumulates too much error to
# be a trustworthy oracle.
FLOAT_EVAL_LIMIT = 10**5


@dataclass(frozen=True)
class RamanujanRow:
    """One full row c_k(0), ..., c_k(k); values[0] = values[k] = phi(k)."""

    k: int
    values: Tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.k + 1:
            raise ValueError("row must hold indices 0..k")
        checksum = sum(self.values[1:])
        expected = 1 if self.k == 1 else 0
        if checksum != expected:
            raise ValueError(f"row checksum failed for k={self.k}: {checksum}")


def ramanujan_sum(k: int, j: int) -> int:
    """c_k(j) by the divisor formula."""
    if k < 1:
        raise ValueError(f"ramanujan_sum requires k >= 1, got {k}")
    g = math.gcd(k, j % k)
    return sum(d * mobius(k // d) for d in divisors(g))


def ramanujan_sum_holder(k: int, j: int) -> int:
    """c_k(j) by the Holder closed form; the division is exact."""
    if k < 1:
        raise ValueError(f"ramanujan_sum_holder requires k >= 1, got {k}")
    g = math.gcd(k, j % k)
    num = euler_phi(k) * mobius(k // g)
    den = euler_phi(k // g)
    if num % den:
        raise RuntimeError(f"Holder division not exact for k={k}, j={j}")
    return num // den


@lru_cache(maxsize=2048)
def _unit_roots(k: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(k) / k)


@lru_cache(maxsize=2048)
def _coprime_residues(k: int) -> np.ndarray:
    return np.array([m for m in range(1, k + 1) if math.gcd(m, k) == 1], dtype=np.int64)


def ramanujan_sum_float(k: int, j: int) -> float:
    """c_k(j) from the definitional sum of roots of unity, as a float.

    exp(2 pi i m j / k) is looked up in a table of k-th roots indexed by
    m*j mod k, which evaluates the identical terms without per-term exp
    calls. The imaginary part must cancel to below 1e-6 * k.
    """
    if k < 1:
        raise ValueError(f"ramanujan_sum_float requires k >= 1, got {k}")
    if k > FLOAT_EVAL_LIMIT:
        raise ValueError(f"k={k} exceeds the float evaluation bound {FLOAT_EVAL_LIMIT}")
    z = _unit_roots(k)[(_coprime_residues(k) * j) % k].sum()
    if abs(z.imag) >= 1e-6 * k:
        raise RuntimeError(f"imaginary part {z.imag} too large for k={k}, j={j}")
    return float(z.real)


@lru_cache(maxsize=4096)
def ramanujan_row(k: int) -> RamanujanRow:
    """All of c_k(0..k) in one pass over the divisors of k.

    Each divisor d of k contributes d*mu(k/d) to every index j it divides,
    so the row costs O(k tau(k)) with no per-index gcd.
    """
    if k < 1:
        raise ValueError(f"ramanujan_row requires k >= 1, got {k}")
    row = [0] * (k + 1)
    for d in divisors(k):
        v = d * mobius(k // d)
        if v:
            for j in range(0, k + 1, d):
                row[j] += v
    return RamanujanRow(k, tuple(row))
