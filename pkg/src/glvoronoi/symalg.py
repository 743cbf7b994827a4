"""Exact Laurent-polynomial algebra for the Hecke Dirichlet polynomials.

Polynomials live in Q[X^-1, X, Q^-1, Q, A1..A(n-1)] with exact Fraction
coefficients.  X stands for q^(-s), Q for q, and Ai for the coefficient
A(1,...,1,q,1,...,1) with q at position i from the right.  The dual
identity between the polynomials H_l and their left-position mirrors is
checked here as a formal identity, with no floating point involved.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

Monomial = tuple  # sorted tuple of (variable, nonzero exponent) pairs


def _mono(**exps) -> Monomial:
    return tuple(sorted((v, e) for v, e in exps.items() if e != 0))


class LaurentPoly:
    """Sparse multivariate Laurent polynomial over the rationals."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for mono, coef in terms.items():
                coef = Fraction(coef)
                if coef != 0:
                    self.terms[mono] = self.terms.get(mono, Fraction(0)) + coef
            self.terms = {m: c for m, c in self.terms.items() if c != 0}

    # -- constructors ------------------------------------------------------
    @classmethod
    def constant(cls, c) -> "LaurentPoly":
        return cls({(): Fraction(c)})

    @classmethod
    def var(cls, name: str, exp: int = 1, coef=1) -> "LaurentPoly":
        return cls({_mono(**{name: exp}): Fraction(coef)})

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    # -- ring operations ---------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return LaurentPoly(out)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __neg__(self):
        return LaurentPoly({m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        other = self._coerce(other)
        out = {}
        for m1, c1 in self.terms.items():
            e1 = dict(m1)
            for m2, c2 in other.terms.items():
                e = dict(e1)
                for v, x in m2:
                    e[v] = e.get(v, 0) + x
                m = tuple(sorted((v, x) for v, x in e.items() if x != 0))
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return LaurentPoly(out)

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("use explicit negative variable exponents instead")
        out = LaurentPoly.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        return self.terms == self._coerce(other).terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    @staticmethod
    def _coerce(x):
        if isinstance(x, LaurentPoly):
            return x
        return LaurentPoly.constant(x)

    # -- queries -----------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.terms

    def substitute_x_dual(self) -> "LaurentPoly":
        """Replace X by Q^(-1) X^(-1), i.e. apply s -> 1 - s to q^(-s)."""
        out = {}
        for m, c in self.terms.items():
            e = dict(m)
            ex = e.pop("X", 0)
            if ex:
                e["X"] = -ex
                e["Q"] = e.get("Q", 0) - ex
            mono = tuple(sorted((v, x) for v, x in e.items() if x != 0))
            out[mono] = out.get(mono, Fraction(0)) + c
        return LaurentPoly(out)

    def evaluate(self, values: dict) -> complex:
        """Numeric evaluation with a full variable assignment."""
        total = 0j
        for m, c in self.terms.items():
            term = complex(c)
            for v, e in m:
                term *= values[v] ** e
            total += term
        return total

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for m, c in sorted(self.terms.items()):
            mono = "*".join(f"{v}^{e}" if e != 1 else v for v, e in m) or "1"
            bits.append(f"{c}*{mono}")
        return " + ".join(bits)


def _check_l(n: int, l: int):
    if not 1 <= l <= n - 1:
        raise ValueError(f"l must satisfy 1 <= l <= n-1 = {n - 1}, got {l}")


def build_H(n: int, l: int) -> LaurentPoly:
    """Right-position Hecke polynomial: sum_{i=l}^{n-1} (-1)^i Ai X^i + (-1)^n X^n."""
    _check_l(n, l)
    out = LaurentPoly({_mono(X=n): Fraction(-1) ** n})
    for i in range(l, n):
        out = out + LaurentPoly({_mono(**{f"A{i}": 1, "X": i}): Fraction(-1) ** i})
    return out


def build_H_tilde(n: int, l: int) -> LaurentPoly:
    """Left-position mirror of build_H: the coefficient with q at position i
    from the left is the right-position symbol A(n-i)."""
    _check_l(n, l)
    out = LaurentPoly({_mono(X=n): Fraction(-1) ** n})
    for i in range(l, n):
        out = out + LaurentPoly({_mono(**{f"A{n - i}": 1, "X": i}): Fraction(-1) ** i})
    return out


def substitute_dual(p: LaurentPoly) -> LaurentPoly:
    return p.substitute_x_dual()


def dual_identity_sides(n: int, k: int):
    """Both sides of the dual identity between the H and mirrored-H combos."""
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must satisfy 1 <= k <= n-1 = {n - 1}, got {k}")
    Qinv = LaurentPoly.var("Q", -1)
    lhs = Qinv + build_H(n, 1)
    for l in range(2, k + 1):
        w = LaurentPoly.var("Q", l - 1) - LaurentPoly.var("Q", l - 2)
        lhs = lhs + w * build_H(n, l)
    rhs_inner = Qinv + substitute_dual(build_H_tilde(n, 1))
    for l in range(2, n - k + 1):
        w = LaurentPoly.var("Q", l - 1) - LaurentPoly.var("Q", l - 2)
        rhs_inner = rhs_inner + w * substitute_dual(build_H_tilde(n, l))
    front = LaurentPoly({_mono(Q=k, X=n): Fraction(-1) ** n})
    return lhs, front * rhs_inner


def check_lemma34(n: int, k: int):
    """Return (holds, residual): residual = LHS - RHS of the dual identity."""
    lhs, rhs = dual_identity_sides(n, k)
    residual = lhs - rhs
    return residual.is_zero, residual


def closed_form_lhs(n: int, k: int) -> LaurentPoly:
    """The collapsed form of the identity's left side:
    Q^-1 + sum_i (-1)^i Q^(min(i,k)-1) Ai X^i + (-1)^n Q^(k-1) X^n."""
    out = LaurentPoly.var("Q", -1)
    for i in range(1, n):
        out = out + LaurentPoly(
            {_mono(**{f"A{i}": 1, "X": i, "Q": min(i, k) - 1}): Fraction(-1) ** i})
    out = out + LaurentPoly({_mono(X=n, Q=k - 1): Fraction(-1) ** n})
    return out


def random_numeric_agreement(n: int, k: int, seed: int = 0) -> float:
    """Max |LHS - RHS| at random numeric assignments; supports the symbolic verdict."""
    rng = random.Random(seed)
    lhs, rhs = dual_identity_sides(n, k)
    worst = 0.0
    for _ in range(5):
        values = {"X": complex(rng.uniform(0.5, 2), rng.uniform(-1, 1)),
                  "Q": complex(rng.uniform(1, 3), 0)}
        for i in range(1, n):
            values[f"A{i}"] = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        worst = max(worst, abs(lhs.evaluate(values) - rhs.evaluate(values)))
    return worst
