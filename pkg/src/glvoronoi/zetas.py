"""Vectorized Hurwitz/Riemann zeta via Euler-Maclaurin.

All contour work in this package evaluates zeta at thousands of points on
vertical lines, so this is a plain numpy implementation (mpmath is kept to
the test suite as an oracle).  Accuracy is ~1e-13 relative for
|Im s| <= a few thousand with the adaptive cutoff below.
"""

from __future__ import annotations

import numpy as np
from scipy.special import bernoulli, digamma, factorial

_NBERN = 14
_B2J = bernoulli(2 * _NBERN)[2::2]  # B_2, B_4, ..., B_28
_FAC2J = factorial(2 * np.arange(1, _NBERN + 1))


def hurwitz_zeta(s, a: float):
    """zeta(s, a) for a in (0, 1], vectorized over s; s != 1 required."""
    s_in = np.asarray(s, dtype=complex)
    s = np.atleast_1d(s_in).ravel()
    if np.any(np.abs(s - 1.0) < 1e-12):
        raise ValueError("hurwitz_zeta evaluated at the pole s = 1")
    if not 0 < a <= 1:
        raise ValueError(f"need 0 < a <= 1, got {a}")
    tmax = float(np.max(np.abs(s.imag))) if s.size else 0.0
    N = int(max(30, 1.3 * tmax + 10))
    lk = np.log(np.arange(N) + a)
    out = np.empty(len(s), dtype=complex)
    # chunk the outer product to bound memory
    for i0 in range(0, len(s), 1024):
        out[i0:i0 + 1024] = np.exp(-np.outer(s[i0:i0 + 1024], lk)).sum(axis=1)
    Na = N + a
    out += Na ** (1.0 - s) / (s - 1.0) + 0.5 * Na ** (-s)
    term = Na ** (-s)
    fac = s.copy()  # Pochhammer (s)_{2j-1}, updated in the loop
    pw = 1.0 / Na
    for j in range(1, _NBERN + 1):
        out += _B2J[j - 1] / _FAC2J[j - 1] * fac * term * pw
        fac = fac * (s + 2 * j - 1) * (s + 2 * j)
        pw = pw / Na ** 2
    return out.reshape(s_in.shape) if s_in.shape else complex(out[0])


def riemann_zeta(s):
    return hurwitz_zeta(s, 1.0)


def dirichlet_L(s, chi) -> complex:
    """L(s, chi) for a character mod prime q, via Hurwitz zeta.

    For the trivial character this is (1 - q^{-s}) zeta(s); otherwise
    L(s, chi) = q^{-s} sum_{r=1}^{q-1} chi(r) zeta(s, r/q), valid for all s
    (chi nontrivial makes the r-sum entire).
    """
    q = chi.modulus.q
    s_in = np.asarray(s, dtype=complex)
    s = np.atleast_1d(s_in).ravel()
    if chi.is_trivial:
        out = (1.0 - np.exp(-s * np.log(q))) * hurwitz_zeta(s, 1.0)
    else:
        out = np.zeros(len(s), dtype=complex)
        at_one = np.abs(s - 1.0) < 1e-12
        for r in range(1, q):
            if not at_one.all():
                out[~at_one] += chi(r) * hurwitz_zeta(s[~at_one], r / q)
            if at_one.any():
                # the Hurwitz poles at s = 1 cancel across r since
                # sum_r chi(r) = 0; the finite part is -digamma(r/q)
                out[at_one] += chi(r) * (-digamma(r / q))
        out *= np.exp(-s * np.log(q))
    return out.reshape(s_in.shape) if s_in.shape else complex(out[0])
