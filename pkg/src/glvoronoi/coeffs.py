"""Fourier coefficient suppliers.

Two sources are implemented: a degree-n Eisenstein-type family whose
standard L-function is a product of shifted zeta functions (the fully
computable surrogate the verification pipeline runs on), and a plain-text
file source for externally supplied coefficient data.

Eisenstein coefficients are multiplicative; at a prime p with exponent
tuple (e_1, ..., e_{n-1}) the value is the Schur polynomial
s_mu(p^a_1, ..., p^a_n) where mu_j = sum of the reversed exponent tuple
from slot j on.  The Jacobi-Trudi determinant in complete homogeneous
symmetric polynomials is used so that repeated shifts cost nothing
special.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .chars import is_prime


class InsufficientDataError(KeyError):
    """A file source was asked for a coefficient outside its stored range."""


def _factorize(m: int):
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            out.append((d, e))
        d += 1
    if m > 1:
        out.append((m, 1))
    return out


def complete_homogeneous(xs, kmax: int) -> np.ndarray:
    """h_0..h_kmax of the variables xs, by one-variable-at-a-time recursion."""
    h = np.zeros(kmax + 1, dtype=complex)
    h[0] = 1.0
    for x in xs:
        # multiply the generating series by 1/(1 - x t)
        for k in range(1, kmax + 1):
            h[k] = h[k] + x * h[k - 1]
    return h


def schur_jacobi_trudi(mu, xs) -> complex:
    """s_mu(xs) = det(h_{mu_i - i + j}) over the length of mu."""
    mu = [m for m in mu if m > 0]
    if not mu:
        return 1.0 + 0j
    ell = len(mu)
    h = complete_homogeneous(xs, max(mu) + ell)
    mat = np.empty((ell, ell), dtype=complex)
    for i in range(ell):
        for j in range(ell):
            d = mu[i] - (i + 1) + (j + 1)
            mat[i, j] = h[d] if d >= 0 else 0.0
    return complex(np.linalg.det(mat))


@dataclass(frozen=True)
class EisensteinParams:
    """Purely imaginary shifts summing to zero."""

    alphas: tuple

    def __post_init__(self):
        a = tuple(complex(x) for x in self.alphas)
        object.__setattr__(self, "alphas", a)
        if len(a) < 2:
            raise ValueError("need degree n >= 2")
        if any(abs(x.real) > 1e-14 for x in a):
            raise ValueError("shifts must be purely imaginary")
        if abs(sum(a)) > 1e-13:
            raise ValueError(f"shifts must sum to 0, got {sum(a)}")


class EisensteinSource:
    """Coefficients of the degree-n family with L(s) = prod_j zeta(s - alpha_j)."""

    kind = "eisenstein"
    cuspidal = False

    def __init__(self, alphas):
        self.params = EisensteinParams(tuple(alphas))
        self.alphas = self.params.alphas
        self.n = len(self.alphas)
        # spectral parameters of the gamma factors coincide with the shifts
        self.spectral_parameters = self.alphas
        self._prime_powers = {}
        self._schur_cache = {}

    def dual(self) -> "EisensteinSource":
        """Argument-reversed conjugate family; its shifts are the negated ones."""
        return EisensteinSource(tuple(-a for a in self.alphas))

    # -- pointwise coefficients ---------------------------------------------
    def _powers(self, p: int) -> np.ndarray:
        if p not in self._prime_powers:
            self._prime_powers[p] = np.array(
                [cmath.exp(a * np.log(p)) for a in self.alphas])
        return self._prime_powers[p]

    def prime_power_coefficient(self, p: int, exps) -> complex:
        """Schur value at prime p for the exponent tuple exps (length n-1)."""
        exps = tuple(exps)
        key = (p, exps)
        if key not in self._schur_cache:
            rev = exps[::-1]
            mu = [sum(rev[j:]) for j in range(self.n - 1)]
            self._schur_cache[key] = schur_jacobi_trudi(mu, self._powers(p))
        return self._schur_cache[key]

    def coefficient(self, m) -> complex:
        m = tuple(int(x) for x in m)
        if len(m) != self.n - 1:
            raise ValueError(f"expected a tuple of length {self.n - 1}, got {m}")
        if any(x < 1 for x in m):
            raise ValueError(f"coefficient indices must be positive, got {m}")
        # multiplicative across primes: gather the exponent tuple of each prime
        primes = {}
        for slot, x in enumerate(m):
            for p, e in _factorize(x):
                primes.setdefault(p, [0] * (self.n - 1))[slot] += e
        out = 1.0 + 0j
        for p, exps in primes.items():
            out *= self.prime_power_coefficient(p, exps)
        return out

    # -- bulk series ---------------------------------------------------------
    def _convolve(self, alphas, M: int) -> np.ndarray:
        M = int(M)
        idx = np.arange(M + 1, dtype=float)
        idx[0] = 1.0
        logs = np.log(idx)
        out = None
        for a in alphas:
            seq = np.exp(a * logs)
            seq[0] = 0.0
            if out is None:
                out = seq.astype(complex)
                continue
            new = np.zeros(M + 1, dtype=complex)
            for d in range(1, M + 1):
                new[d::d] += seq[d] * out[1:M // d + 1]
            out = new
        return out

    def last_slot_series(self, M: int) -> np.ndarray:
        """A(1,...,1,m) for m = 0..M (index 0 unused)."""
        return self._convolve(self.alphas, M)

    def first_slot_series(self, M: int) -> np.ndarray:
        """A(m,1,...,1) for m = 0..M; conjugate-reversed coefficients."""
        return self._convolve(tuple(-a for a in self.alphas), M)

    def first_slot_q_series(self, M: int, q: int, l: int) -> np.ndarray:
        """A(m,1,..,q@slot l,..,1) for m = 0..M, with q at slot l >= 2 from the left."""
        if not 2 <= l <= self.n - 1:
            raise ValueError(f"slot l must be in [2, {self.n - 1}], got {l}")
        base = self.first_slot_series(M)
        out = np.empty(M + 1, dtype=complex)
        out[0] = 0.0
        # joint q-part: exponents e_1 = v_q(m), e_l = 1
        vmax = 0
        while q ** (vmax + 1) <= M:
            vmax += 1
        for v in range(vmax + 1):
            exps = [0] * (self.n - 1)
            exps[0] = v
            exps[l - 1] += 1
            cq = self.prime_power_coefficient(q, exps)
            step = q ** v
            mp = np.arange(1, M // step + 1)
            mp = mp[mp % q != 0]
            out[mp * step] = cq * base[mp]
        return out


def hecke_check(source, q: int, m: int, i: int) -> float:
    """Residual of the coefficient recursion at a prime q, position i from the right.

    For 1 <= i <= n-1:
      A(..q@i..) * A(1,..,1,m) = A(..q@i.., m-last) + [q|m] A(..q@(i+1).., m/q-last)
    where i = 1 merges q into the last slot and i = n-1 drops the q entirely
    in the second term.
    """
    n = source.n
    if not is_prime(q):
        raise ValueError(f"q must be prime, got {q}")
    if not 1 <= i <= n - 1:
        raise ValueError(f"position i must be in [1, {n - 1}], got {i}")

    def unit_tuple(pos_right: int | None, last: int = 1):
        t = [1] * (n - 1)
        if pos_right is not None:
            t[n - 1 - pos_right] *= q
        t[n - 2] *= last
        return tuple(t)

    lhs = source.coefficient(unit_tuple(i)) * source.coefficient(unit_tuple(None, m))
    if i == n - 1:
        rhs = source.coefficient(unit_tuple(n - 1, m))
        if m % q == 0:
            rhs += source.coefficient(unit_tuple(None, m // q))
    elif i == 1:
        rhs = source.coefficient(unit_tuple(None, m * q))
        if m % q == 0:
            rhs += source.coefficient(unit_tuple(2, m // q))
    else:
        rhs = source.coefficient(unit_tuple(i, m))
        if m % q == 0:
            rhs += source.coefficient(unit_tuple(i + 1, m // q))
    return abs(lhs - rhs)


def last_slot_series_check(source: EisensteinSource, M: int) -> float:
    """Max deviation of pointwise (Schur) A(1,..,1,m) from the convolution series."""
    table = source.last_slot_series(M)
    worst = 0.0
    for m in range(1, M + 1):
        t = [1] * (source.n - 1)
        t[-1] = m
        worst = max(worst, abs(source.coefficient(tuple(t)) - table[m]))
    return worst


class FileCoefficientSource:
    """Coefficients read from a plain-text table.

    Format: '#' comments; header lines ``n=<int>`` and
    ``lambda=<re>,<im>;<re>,<im>;...``; then rows of n-1 positive integers
    followed by the real and imaginary part of the coefficient.
    """

    kind = "file"
    cuspidal = True

    def __init__(self, n: int, spectral_parameters, table: dict, path: str = "<memory>"):
        if n < 2:
            raise ValueError("need degree n >= 2")
        if len(spectral_parameters) != n:
            raise ValueError(f"expected {n} spectral parameters, "
                             f"got {len(spectral_parameters)}")
        ones = tuple([1] * (n - 1))
        if ones not in table:
            raise ValueError(f"{path}: normalization row A(1,...,1) missing")
        if abs(table[ones] - 1.0) > 1e-12:
            raise ValueError(f"{path}: A(1,...,1) must equal 1, got {table[ones]}")
        self.n = n
        self.spectral_parameters = tuple(spectral_parameters)
        self.alphas = None
        self._table = dict(table)
        self.path = path

    def coefficient(self, m) -> complex:
        m = tuple(int(x) for x in m)
        try:
            return self._table[m]
        except KeyError:
            raise InsufficientDataError(
                f"{self.path}: no stored coefficient for A{m}") from None

    @property
    def max_last_slot(self) -> int:
        ones = [1] * (self.n - 2)
        best = 0
        for key in self._table:
            if list(key[:-1]) == ones:
                best = max(best, key[-1])
        return best


def load_file_source(path: str) -> FileCoefficientSource:
    n = None
    lams = None
    table = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                if line.startswith("n="):
                    n = int(line[2:])
                elif line.startswith("lambda="):
                    lams = []
                    for part in line[len("lambda="):].split(";"):
                        re_s, im_s = part.split(",")
                        lams.append(complex(float(re_s), float(im_s)))
                else:
                    bits = line.split()
                    if n is None:
                        raise ValueError("coefficient row before n= header")
                    if len(bits) != n + 1:
                        raise ValueError(f"expected {n - 1} indices + re + im")
                    idx = tuple(int(b) for b in bits[:n - 1])
                    table[idx] = complex(float(bits[-2]), float(bits[-1]))
            except (ValueError, IndexError) as exc:
                raise ValueError(f"{path}:{lineno}: malformed line: {exc}") from None
    if n is None or lams is None:
        raise ValueError(f"{path}: missing n= or lambda= header")
    return FileCoefficientSource(n, lams, table, path=path)
