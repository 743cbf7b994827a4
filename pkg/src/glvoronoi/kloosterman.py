"""Hyper-Kloosterman sums Kl_k(m, q) for prime q.

Two independent routes are provided: direct enumeration over (k-1)-tuples
of units, and reconstruction from Gauss-sum moments of Dirichlet
characters.  The two must agree on units, which is one of the package's
standing cross-checks.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

from .chars import PrimeModulus, is_prime

DEFAULT_BUDGET = 10**8


class EnumerationBudgetExceeded(Exception):
    """Raised when the direct sum would need more tuples than allowed."""


@dataclass(frozen=True)
class KloostermanParams:
    k: int
    m: int
    q: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if not is_prime(self.q):
            raise ValueError(f"q must be prime, got {self.q}")


def _roots_of_unity(q: int) -> list:
    return [cmath.exp(2j * math.pi * j / q) for j in range(q)]


@lru_cache(maxsize=None)
def _kl_direct_residue(k: int, m: int, q: int) -> complex:
    # m is already reduced mod q here
    e = _roots_of_unity(q)
    if k == 1:
        return e[m % q]
    total = 0j
    # recursive enumeration over units, accumulating sum and product mod q
    def rec(depth: int, ssum: int, prod: int):
        nonlocal total
        if depth == k - 1:
            inv = pow(prod, q - 2, q)
            total += e[(ssum + m * inv) % q]
            return
        for x in range(1, q):
            rec(depth + 1, (ssum + x) % q, prod * x % q)
    rec(0, 0, 1)
    return total


def kl_direct(p: KloostermanParams, budget: int = DEFAULT_BUDGET) -> complex:
    """Kl_k(m, q) by summation over (k-1)-tuples of units mod q."""
    if (p.q - 1) ** (p.k - 1) > budget:
        raise EnumerationBudgetExceeded(
            f"(q-1)^(k-1) = {(p.q - 1) ** (p.k - 1)} exceeds budget {budget}; "
            "use kl_via_chars")
    return _kl_direct_residue(p.k, p.m % p.q, p.q)


def char_moment(modulus: PrimeModulus, k: int, m: int, parity: str) -> complex:
    """Sum of tau(psi)^k * conj(psi)(m) over nontrivial psi of given parity."""
    total = 0j
    for psi in modulus.characters(parity=parity, nontrivial_only=True):
        total += psi.gauss_sum ** k * psi.conjugate()(m)
    return total


def kl_via_chars(p: KloostermanParams, modulus: PrimeModulus | None = None) -> complex:
    """Kl_k(m, q) reconstructed from the even and odd character moments.

    Valid only for (m, q) = 1; adding the even and odd moment identities
    gives (q-1) * Kl_k(m, q) - (-1)^k.
    """
    if p.m % p.q == 0:
        raise ValueError(f"m = {p.m} is divisible by q = {p.q}; "
                         "the character-moment identity needs (m, q) = 1")
    if modulus is None:
        modulus = PrimeModulus(p.q)
    even = char_moment(modulus, p.k, p.m, "even")
    odd = char_moment(modulus, p.k, p.m, "odd")
    return (even + odd + (-1) ** p.k) / (p.q - 1)


def kl_table(k: int, q: int, budget: int = DEFAULT_BUDGET) -> list:
    """Kl_k(r, q) for every residue r in [0, q); Kl depends on m mod q only."""
    return [kl_direct(KloostermanParams(k, r, q), budget=budget) for r in range(q)]
