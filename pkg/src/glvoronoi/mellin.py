"""Test functions, Mellin transforms, gamma-factor ratios and Omega kernels.

The Omega kernels are the archimedean weights on the dual side of the
summation formulae:

    Omega_pm(x) = (1/2 pi i) int_{(sigma)} G_pm(s) wtilde(s) x^s ds

with wtilde the Mellin transform of the test function.  The integral is
taken on Re s = 1/2 where |G_pm| = 1 for purely imaginary spectral
parameters, so the truncation in t is governed entirely by the decay of
wtilde.  Kernels are evaluated either exactly (small point sets) or via a
band-limited uniform grid in log x followed by barycentric Lagrange
interpolation, which keeps large dual sums affordable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import comb, loggamma


@dataclass(frozen=True)
class TestFunction:
    """Smooth compactly supported bump amp*exp(1 - 1/(1-u^2)), u=(x-center)/radius."""

    center: float = 40.0
    radius: float = 30.0
    amp: float = 1.0

    def __post_init__(self):
        if self.center - self.radius <= 0:
            raise ValueError("support must stay inside (0, inf)")

    @property
    def support(self):
        return (self.center - self.radius, self.center + self.radius)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        u = (x - self.center) / self.radius
        out = np.zeros_like(u)
        msk = np.abs(u) < 1.0
        out[msk] = self.amp * np.exp(1.0 - 1.0 / (1.0 - u[msk] ** 2))
        return out if out.shape else float(out)


def mellin(fn: TestFunction, s):
    """wtilde(s) = int_0^inf fn(x) x^{s-1} dx by Gauss-Legendre panels.

    The panel count scales with max |Im s| so the oscillatory factor stays
    resolved.
    """
    s_in = np.asarray(s, dtype=complex)
    s = np.atleast_1d(s_in).ravel()
    tmax = float(np.max(np.abs(s.imag))) if s.size else 0.0
    lo, hi = fn.support
    # keep the phase t*log(x) under ~2.5 cycles per 12-point panel
    panels = max(60, int((hi - lo) * tmax / (lo * 2.0 * np.pi * 2.5)) + 60)
    xg, wg = leggauss(12)
    edges = np.linspace(lo, hi, panels + 1)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1] - edges[0])
    nodes = (mid[:, None] + half * xg[None, :]).ravel()
    wts = half * np.tile(wg, panels)
    f = fn(nodes) * wts
    lx = np.log(nodes)
    out = np.empty(len(s), dtype=complex)
    for i0 in range(0, len(s), 512):
        out[i0:i0 + 512] = np.exp(np.outer(s[i0:i0 + 512] - 1.0, lx)) @ f
    return out.reshape(s_in.shape) if s_in.shape else complex(out[0])


def G_plus(s, lam):
    """prod_j pi^{s-1/2} Gamma((1-s-conj(lam_j))/2) / Gamma((s-lam_j)/2)."""
    s_in = np.asarray(s, dtype=complex)
    s = np.atleast_1d(s_in).ravel()
    z = len(lam) * (s - 0.5) * np.log(np.pi)
    for l in lam:
        z = z + loggamma((1.0 - s - np.conj(l)) / 2.0) - loggamma((s - l) / 2.0)
    out = np.exp(z)
    return out.reshape(s_in.shape) if s_in.shape else complex(out[0])


def G_minus(s, lam):
    """i^{-n} times the G_plus product with arguments shifted by one."""
    s_in = np.asarray(s, dtype=complex)
    s = np.atleast_1d(s_in).ravel()
    n = len(lam)
    z = n * (s - 0.5) * np.log(np.pi)
    for l in lam:
        z = z + loggamma((2.0 - s - np.conj(l)) / 2.0) - loggamma((s + 1.0 - l) / 2.0)
    out = (1j) ** (-n) * np.exp(z)
    return out.reshape(s_in.shape) if s_in.shape else complex(out[0])


@dataclass(frozen=True)
class ContourSpec:
    """Vertical-line contour Re s = sigma, |Im s| <= height, for series-side work.

    sigma must exceed 1 so that the coefficient Dirichlet series converge
    on the line.
    """

    sigma: float = 2.0
    height: float = 40.0
    nodes_per_unit: int = 12

    def __post_init__(self):
        if self.sigma <= 1.0:
            raise ValueError(f"sigma must exceed 1, got {self.sigma}")
        if self.height < 20 or self.nodes_per_unit < 2:
            raise ValueError("need height >= 20 and >= 2 nodes per unit")

    def nodes(self):
        s, w = _line_nodes(self.sigma, self.height, self.nodes_per_unit)
        return s, w


def _line_nodes(sigma: float, T: float, nodes_per_unit: int):
    """Gauss-Legendre nodes/weights for int_{-T}^{T} dt on Re s = sigma."""
    panels = max(4, int(np.ceil(2.0 * T)))
    xg, wg = leggauss(nodes_per_unit)
    edges = np.linspace(-T, T, panels + 1)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1] - edges[0])
    t = (mid[:, None] + half * xg[None, :]).ravel()
    w = half * np.tile(wg, panels)
    return sigma + 1j * t, w


def mellin_inversion_check(fn: TestFunction, spec: ContourSpec, xs) -> float:
    """max |fn(x) - (1/2 pi i) int wtilde(s) x^{-s} ds| over the points xs."""
    s, w = spec.nodes()
    coef = w * mellin(fn, s) / (2.0 * np.pi)
    xs = np.asarray(xs, dtype=float)
    recon = np.exp(np.outer(-np.log(xs), s)) @ coef
    return float(np.max(np.abs(recon - fn(xs))))


def adaptive_height(fn: TestFunction, sigma: float, tol: float,
                    tmax: float = 6000.0) -> float:
    """Smallest multiple of 100 where |wtilde(sigma+iT)| drops below tol."""
    T = 100.0
    while T < tmax:
        if abs(mellin(fn, sigma + 1j * T)) < tol:
            return T
        T += 100.0
    return tmax


_LAG_N = 16
_LAG_W = (-1.0) ** np.arange(_LAG_N) * comb(_LAG_N - 1, np.arange(_LAG_N))


class OmegaTransform:
    """Dual-side kernel Omega_pm for spectral parameters lam and a sign.

    call via .exact(x) for direct contour evaluation or (x) for the
    grid-interpolated fast path (built lazily on first use from the range
    of requested points).
    """

    def __init__(self, fn: TestFunction, lam, sign: str, sigma: float = 0.5,
                 height: float | None = None, nodes_per_unit: int | None = None,
                 tol: float = 5e-13, max_log_x: float = 8.0):
        if sign not in ("+", "-"):
            raise ValueError("sign must be '+' or '-'")
        self.fn = fn
        self.lam = tuple(complex(l) for l in lam)
        self.sign = sign
        self.sigma = float(sigma)
        if height is None:
            height = adaptive_height(fn, self.sigma, tol)
        self.height = float(height)
        if nodes_per_unit is None:
            # resolve the integrand phase x^{it} G(sigma+it): rate <=
            # max|log x| + n log(T/2pi) radians per unit of t
            rate = max_log_x + len(self.lam) * np.log(max(self.height, 20.0) / (2 * np.pi))
            nodes_per_unit = max(12, int(1.4 * rate) + 2)
        self.nodes_per_unit = int(nodes_per_unit)
        s, w = _line_nodes(self.sigma, self.height, self.nodes_per_unit)
        g = G_plus(s, self.lam) if sign == "+" else G_minus(s, self.lam)
        self.s_nodes = s
        self.coef = w * mellin(fn, s) * g / (2.0 * np.pi)
        self.tail_bound = abs(mellin(fn, self.sigma + 1j * self.height))
        self._grid = None

    def exact(self, x):
        x_in = np.asarray(x, dtype=float)
        x = np.atleast_1d(x_in).ravel()
        out = np.empty(len(x), dtype=complex)
        for i0 in range(0, len(x), 2048):
            out[i0:i0 + 2048] = (
                np.exp(np.outer(np.log(x[i0:i0 + 2048]), self.s_nodes)) @ self.coef)
        return out.reshape(x_in.shape) if x_in.shape else complex(out[0])

    # -- fast path -------------------------------------------------------
    def _build_grid(self, vmin: float, vmax: float):
        dv = np.pi / (8.0 * self.height)
        v0 = vmin - (_LAG_N // 2 + 1) * dv
        ng = int(np.ceil((vmax - v0) / dv)) + _LAG_N // 2 + 2
        t = self.s_nodes.imag
        vals = np.empty(ng, dtype=complex)
        block = 256
        # E[j, b] = e^{i t_j b dv}; grid values come out as blocked mat-vecs
        E = np.exp(1j * np.outer(t, dv * np.arange(block)))
        for k0 in range(0, ng, block):
            p = self.coef * np.exp(1j * t * (v0 + k0 * dv))
            m = min(block, ng - k0)
            vals[k0:k0 + m] = p @ E[:, :m]
        vals *= np.exp(self.sigma * (v0 + dv * np.arange(ng)))
        self._grid = (v0, dv, vals)

    def __call__(self, x):
        x_in = np.asarray(x, dtype=float)
        x = np.atleast_1d(x_in).ravel()
        if x.size <= 64:
            out = self.exact(x)
            return out.reshape(x_in.shape) if x_in.shape else complex(out[0])
        v = np.log(x)
        if self._grid is None or v.min() < self._grid[0] + (_LAG_N // 2) * self._grid[1] \
                or v.max() > self._grid[0] + (len(self._grid[2]) - _LAG_N // 2 - 1) * self._grid[1]:
            self._build_grid(float(v.min()), float(v.max()))
        v0, dv, vals = self._grid
        pos = (v - v0) / dv
        base = np.floor(pos).astype(int) - (_LAG_N // 2 - 1)
        base = np.clip(base, 0, len(vals) - _LAG_N)
        d = pos[:, None] - (base[:, None] + np.arange(_LAG_N)[None, :])
        on_node = np.abs(d) < 1e-12
        d = np.where(on_node, 1.0, d)
        terms = _LAG_W[None, :] / d
        stencil = vals[base[:, None] + np.arange(_LAG_N)[None, :]]
        out = (terms * stencil).sum(axis=1) / terms.sum(axis=1)
        hit = on_node.any(axis=1)
        if np.any(hit):
            out[hit] = stencil[on_node]
        return out.reshape(x_in.shape) if x_in.shape else complex(out[0])

    def interpolation_error(self, xs) -> float:
        """max |fast - exact| over a sample of points (diagnostic)."""
        xs = np.asarray(xs, dtype=float)
        return float(np.max(np.abs(self(xs) - self.exact(xs))))


def omega_plus(x, fn: TestFunction, lam, height: float | None = None):
    """Omega_+(x); the contour sits on Re s = 1/2 (see package notes)."""
    return OmegaTransform(fn, lam, "+", height=height).exact(x)


def omega_minus(x, fn: TestFunction, lam, height: float | None = None):
    """Omega_-(x); the contour sits on Re s = 1/2 (see package notes)."""
    return OmegaTransform(fn, lam, "-", height=height).exact(x)
