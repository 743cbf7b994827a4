"""Dirichlet characters modulo a prime and their Gauss sums.

Characters mod a prime q are indexed by an exponent t in [0, q-2] against
the smallest primitive root g: the character with index t sends g^j to
exp(2*pi*i*t*j/(q-1)).  Index 0 is the trivial character, conjugation is
t -> (q-1-t) mod (q-1), and the parity of the character equals the parity
of t.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import cached_property


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def find_primitive_root(q: int) -> int:
    """Smallest g >= 2 generating the multiplicative group mod prime q >= 3."""
    if q < 3 or not is_prime(q):
        raise ValueError(f"modulus must be a prime >= 3, got {q}")
    # order of g is q-1 iff g^((q-1)/p) != 1 for every prime p | q-1
    factors = []
    m = q - 1
    d = 2
    while d * d <= m:
        if m % d == 0:
            factors.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        factors.append(m)
    for g in range(2, q):
        if all(pow(g, (q - 1) // p, q) != 1 for p in factors):
            return g
    raise RuntimeError(f"no primitive root found mod {q}")  # unreachable for prime q


@dataclass(frozen=True)
class PrimeModulus:
    """A prime q >= 3 together with its smallest primitive root.

    Discrete logs of all units are tabulated at construction (q is small in
    every planned use, a few hundred at most).
    """

    q: int
    g: int = field(init=False)
    _dlog: tuple = field(init=False, repr=False)

    def __post_init__(self):
        g = find_primitive_root(self.q)
        object.__setattr__(self, "g", g)
        dlog = [-1] * self.q
        x = 1
        for j in range(self.q - 1):
            dlog[x] = j
            x = x * g % self.q
        object.__setattr__(self, "_dlog", tuple(dlog))

    def dlog(self, m: int) -> int:
        """Discrete log base g of m mod q; raises on multiples of q."""
        r = m % self.q
        if r == 0:
            raise ValueError(f"{m} is divisible by {self.q}")
        return self._dlog[r]

    def character(self, t: int) -> "DirichletCharacter":
        return DirichletCharacter(self, t)

    def characters(self, parity: str | None = None, nontrivial_only: bool = True):
        """List characters, optionally filtered by parity ('even' or 'odd')."""
        out = []
        for t in range(0 if not nontrivial_only else 1, self.q - 1):
            if parity == "even" and t % 2 != 0:
                continue
            if parity == "odd" and t % 2 != 1:
                continue
            out.append(DirichletCharacter(self, t))
        return out


def characters_by_parity(modulus: PrimeModulus, parity: str,
                         nontrivial_only: bool = True):
    if parity not in ("even", "odd"):
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
    return modulus.characters(parity=parity, nontrivial_only=nontrivial_only)


@dataclass(frozen=True)
class DirichletCharacter:
    modulus: PrimeModulus
    t: int

    def __post_init__(self):
        if not 0 <= self.t <= self.modulus.q - 2:
            raise ValueError(f"character index {self.t} out of [0, {self.modulus.q - 2}]")

    @property
    def q(self) -> int:
        return self.modulus.q

    @property
    def is_trivial(self) -> bool:
        return self.t == 0

    @property
    def is_even(self) -> bool:
        return self.t % 2 == 0

    def __call__(self, m: int) -> complex:
        if m % self.q == 0:
            return 0j
        j = self.modulus.dlog(m)
        return cmath.exp(2j * math.pi * self.t * j / (self.q - 1))

    def conjugate(self) -> "DirichletCharacter":
        return DirichletCharacter(self.modulus, (self.q - 1 - self.t) % (self.q - 1))

    @cached_property
    def gauss_sum(self) -> complex:
        q = self.q
        return sum(self(x) * cmath.exp(2j * math.pi * x / q) for x in range(1, q))


def char_eval(psi: DirichletCharacter, m: int) -> complex:
    return psi(m)


def gauss_sum(psi: DirichletCharacter) -> complex:
    return psi.gauss_sum
