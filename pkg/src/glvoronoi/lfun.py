"""L-functions, character assemblies and functional-equation residuals.

For the computable (Eisenstein-type) source the standard L-function is
L(s, pi) = prod_j zeta(s - alpha_j) and every twisted L-function is a
product of Dirichlet L-functions, so all four character assemblies

    Z(s,q)  = sum*_{even psi} tau(conj psi)^k psi(a) L(s, pi x psi)
              + (-1)^k (L(s,pi) - q L_q(s,pi))
    Zt(s,q) = the dual version with k -> n-k, a -> abar, pi -> dual pi
    Y(s,q)  = sum*_{odd psi} tau(conj psi)^k psi(a) L(s, pi x psi)
    Yt(s,q) = sum*_{odd psi} tau(psi)^{n-k} psi(a) L(s, dual pi x conj psi)

continue to the whole plane.  Everything here is vectorized over s so the
contour integrations elsewhere stay cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .chars import PrimeModulus
from .zetas import dirichlet_L, hurwitz_zeta
from .mellin import G_plus, G_minus

POLE_TOL = 1e-8


class PoleError(ValueError):
    """Evaluation requested within POLE_TOL of a pole."""


@dataclass(frozen=True)
class LPoint:
    s: complex
    value: complex
    method: str  # "series" | "continuation"


def _guard(s, pole, what: str):
    s = np.atleast_1d(np.asarray(s, dtype=complex))
    d = np.abs(s - pole)
    if np.any(d < POLE_TOL):
        raise PoleError(f"{what}: s within {POLE_TOL} of pole at {pole}")


def _require_alphas(source):
    alphas = getattr(source, "alphas", None)
    if alphas is None:
        raise ValueError("continuation evaluators need an eisenstein source; "
                         "file sources only support the series method")
    return alphas


def eis_L(s, alphas):
    """L(s, pi) = prod_j zeta(s - alpha_j)."""
    s_in = np.asarray(s, dtype=complex)
    s = np.atleast_1d(s_in).ravel()
    out = np.ones(len(s), dtype=complex)
    for a in alphas:
        _guard(s, 1.0 + a, "eis_L")
        out = out * hurwitz_zeta(s - a, 1.0)
    return out.reshape(s_in.shape) if s_in.shape else complex(out[0])


def eis_L_twisted(s, alphas, chi):
    """L(s, pi x psi) = prod_j L(s - alpha_j, psi)."""
    s_in = np.asarray(s, dtype=complex)
    s = np.atleast_1d(s_in).ravel()
    out = np.ones(len(s), dtype=complex)
    for a in alphas:
        if chi.is_trivial:
            _guard(s, 1.0 + a, "eis_L_twisted")
        out = out * dirichlet_L(s - a, chi)
    return out.reshape(s_in.shape) if s_in.shape else complex(out[0])


def twisted_L_table(s, alphas, modulus: PrimeModulus) -> dict:
    """{t: L(s, pi x psi_t)} for every character index t, sharing zeta work.

    The Hurwitz values zeta(s - alpha_j, r/q) are computed once and reused
    by all q-1 characters; this dominates the cost of contour integration.
    """
    s = np.atleast_1d(np.asarray(s, dtype=complex)).ravel()
    q = modulus.q
    hz = {}
    for j, a in enumerate(alphas):
        for r in range(1, q):
            hz[j, r] = hurwitz_zeta(s - a, r / q)
    table = {}
    for t in range(q - 1):
        chi = modulus.character(t)
        if chi.is_trivial:
            out = np.ones(len(s), dtype=complex)
            for a in alphas:
                _guard(s, 1.0 + a, "twisted_L_table")
                out = out * (1.0 - np.exp(-(s - a) * np.log(q))) \
                    * hurwitz_zeta(s - a, 1.0)
        else:
            out = np.ones(len(s), dtype=complex)
            for j, a in enumerate(alphas):
                acc = np.zeros(len(s), dtype=complex)
                for r in range(1, q):
                    acc += chi(r) * hz[j, r]
                out = out * np.exp(-(s - a) * np.log(q)) * acc
        table[t] = out
    return table


def _elem_sym(vals, i: int) -> complex:
    if i == 0:
        return 1.0 + 0j
    return sum(np.prod(c) for c in combinations(vals, i))


def H_value(s, q: int, alphas, l: int):
    """H_l(s, q) = sum_{i=l}^{n-1} (-1)^i A_i q^{-is} + (-1)^n q^{-ns}."""
    n = len(alphas)
    if not 1 <= l <= n - 1:
        raise ValueError(f"l must be in [1, {n - 1}], got {l}")
    s = np.asarray(s, dtype=complex)
    X = np.exp(-s * np.log(q))
    qa = [np.exp(a * np.log(q)) for a in alphas]
    out = (-1.0) ** n * X ** n
    for i in range(l, n):
        out = out + (-1.0) ** i * _elem_sym(qa, i) * X ** i
    return out


def H_tilde_value(s, q: int, alphas, l: int):
    """Htilde_l(s, q): same shape with A_i replaced by A_{n-i} (dual symbols)."""
    n = len(alphas)
    if not 1 <= l <= n - 1:
        raise ValueError(f"l must be in [1, {n - 1}], got {l}")
    s = np.asarray(s, dtype=complex)
    X = np.exp(-s * np.log(q))
    qa = [np.exp(a * np.log(q)) for a in alphas]
    out = (-1.0) ** n * X ** n
    for i in range(l, n):
        out = out + (-1.0) ** i * _elem_sym(qa, n - i) * X ** i
    return out


def L_q_value(s, alphas, q: int):
    """L_q(s,pi) = sum_{q|m} A(1,..,1,m) m^{-s} = -L(s,pi) H_1(s,q)."""
    return -eis_L(s, alphas) * H_value(s, q, alphas, 1)


# -- the four assemblies ---------------------------------------------------

def assemble_Z(s, q: int, a: int, k: int, source, table: dict | None = None):
    alphas = _require_alphas(source)
    n = len(alphas)
    mod = PrimeModulus(q)
    if table is None:
        table = twisted_L_table(s, alphas, mod)
    tot = None
    for t in range(1, q - 1):
        chi = mod.character(t)
        if not chi.is_even:
            continue
        term = chi.conjugate().gauss_sum ** k * chi(a) * table[t]
        tot = term if tot is None else tot + term
    L = eis_L(s, alphas)
    tail = (-1.0) ** k * L * (1.0 + q * H_value(s, q, alphas, 1))
    return tail if tot is None else tot + tail


def assemble_Z_tilde(s, q: int, a: int, k: int, source, table: dict | None = None):
    """Zt(s, q) with the dual data: k -> n-k, a -> abar, shifts negated."""
    alphas = _require_alphas(source)
    n = len(alphas)
    dual = [-x for x in alphas]
    abar = pow(int(a), q - 2, q)
    mod = PrimeModulus(q)
    if table is None:
        table = twisted_L_table(s, dual, mod)
    tot = None
    for t in range(1, q - 1):
        chi = mod.character(t)
        if not chi.is_even:
            continue
        term = chi.conjugate().gauss_sum ** (n - k) * chi(abar) * table[t]
        tot = term if tot is None else tot + term
    Lt = eis_L(s, dual)
    # local sum over q | m of the dual coefficients: -Lt * Htilde_1
    tail = (-1.0) ** (n - k) * Lt * (1.0 + q * H_tilde_value(s, q, alphas, 1))
    return tail if tot is None else tot + tail


def assemble_Y(s, q: int, a: int, k: int, source, table: dict | None = None):
    alphas = _require_alphas(source)
    mod = PrimeModulus(q)
    if table is None:
        table = twisted_L_table(s, alphas, mod)
    tot = 0.0 * np.asarray(s, dtype=complex)
    for t in range(1, q - 1):
        chi = mod.character(t)
        if chi.is_even:
            continue
        tot = tot + chi.conjugate().gauss_sum ** k * chi(a) * table[t]
    return tot


def assemble_Y_tilde(s, q: int, a: int, k: int, source, table: dict | None = None):
    alphas = _require_alphas(source)
    n = len(alphas)
    dual = [-x for x in alphas]
    mod = PrimeModulus(q)
    if table is None:
        table = twisted_L_table(s, dual, mod)
    tot = 0.0 * np.asarray(s, dtype=complex)
    for t in range(1, q - 1):
        chi = mod.character(t)
        if chi.is_even:
            continue
        # L(s, dual pi x conj psi): conj psi has index q-1-t
        tot = tot + chi.gauss_sum ** (n - k) * chi(a) * table[(q - 1 - t) % (q - 1)]
    return tot


# -- pre-inversion identities ----------------------------------------------

def chain_even_lhs(s, q: int, a: int, k: int, source, table: dict | None = None):
    """Z(s,q) + (-1)^k q sum_{l=2}^{k} (q^{l-1}-q^{l-2}) H_l(s,q) L(s,pi)."""
    alphas = _require_alphas(source)
    out = assemble_Z(s, q, a, k, source, table)
    if k >= 2:
        L = eis_L(s, alphas)
        hecke = 0.0
        for l in range(2, k + 1):
            hecke = hecke + (q ** (l - 1) - q ** (l - 2)) * H_value(s, q, alphas, l)
        out = out + (-1.0) ** k * q * hecke * L
    return out


def chain_even_rhs_bracket(w, q: int, a: int, k: int, source,
                           table: dict | None = None):
    """Zt(w,q) + (-1)^{n-k} q sum_{l=2}^{n-k} (q^{l-1}-q^{l-2}) Htilde_l(w,q) L(w,dual)."""
    alphas = _require_alphas(source)
    n = len(alphas)
    out = assemble_Z_tilde(w, q, a, k, source, table)
    if n - k >= 2:
        Lt = eis_L(w, [-x for x in alphas])
        hecke = 0.0
        for l in range(2, n - k + 1):
            hecke = hecke + (q ** (l - 1) - q ** (l - 2)) \
                * H_tilde_value(w, q, alphas, l)
        out = out + (-1.0) ** (n - k) * q * hecke * Lt
    return out


def _rel(lhs, rhs) -> float:
    lhs = np.atleast_1d(np.asarray(lhs)); rhs = np.atleast_1d(np.asarray(rhs))
    scale = np.maximum(np.maximum(np.abs(lhs), np.abs(rhs)), 1.0)
    return float(np.max(np.abs(lhs - rhs) / scale))


def fe_residual(kind: str, s, q: int, a: int, k: int, source) -> float:
    """Relative residual of the standard / even-twisted / odd-twisted FE."""
    alphas = _require_alphas(source)
    n = len(alphas)
    dual = [-x for x in alphas]
    lam = source.spectral_parameters
    if kind == "standard":
        return _rel(eis_L(s, alphas), G_plus(s, lam) * eis_L(1.0 - np.asarray(s), dual))
    if kind not in ("even", "odd"):
        raise ValueError(f"unknown FE kind {kind!r}")
    mod = PrimeModulus(q)
    want_even = kind == "even"
    G = G_plus if want_even else G_minus
    s = np.asarray(s, dtype=complex)
    worst = 0.0
    for chi in mod.characters(parity="even" if want_even else "odd",
                              nontrivial_only=True):
        lhs = chi.conjugate().gauss_sum ** k * eis_L_twisted(s, alphas, chi)
        # psi(-1)^k = (-1)^k for odd psi: tau(psi) tau(conj psi) = psi(-1) q
        sign = 1.0 if want_even else (-1.0) ** k
        rhs = sign * chi.gauss_sum ** (n - k) * np.exp((k - n * s) * np.log(q)) \
            * G(s, lam) * eis_L_twisted(1.0 - s, dual, chi.conjugate())
        worst = max(worst, _rel(lhs, rhs))
    return worst


def proof_chain_residual(s, q: int, a: int, k: int, source) -> float:
    """Relative residual of the even and odd pre-inversion identities."""
    alphas = _require_alphas(source)
    n = len(alphas)
    lam = source.spectral_parameters
    s = np.asarray(s, dtype=complex)
    fac = np.exp((k - n * s) * np.log(q))
    even = _rel(chain_even_lhs(s, q, a, k, source),
                fac * G_plus(s, lam) * chain_even_rhs_bracket(1.0 - s, q, a, k, source))
    odd = _rel(assemble_Y(s, q, a, k, source),
               (-1.0) ** k * fac * G_minus(s, lam)
               * assemble_Y_tilde(1.0 - s, q, a, k, source))
    return max(even, odd)
