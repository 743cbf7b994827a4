import math

import mpmath as mp
import numpy as np
import pytest

from glvoronoi.chars import PrimeModulus
from glvoronoi.zetas import dirichlet_L, hurwitz_zeta, riemann_zeta


def test_hurwitz_oracles():
    assert abs(hurwitz_zeta(2.0 + 0j, 1.0) - math.pi ** 2 / 6) < 1e-12
    assert abs(hurwitz_zeta(2.0 + 0j, 0.5) - math.pi ** 2 / 2) < 1e-12
    assert abs(hurwitz_zeta(-1.0 + 0j, 1.0) - (-1.0 / 12.0)) < 1e-12


def test_hurwitz_pole_guard():
    with pytest.raises(ValueError):
        hurwitz_zeta(1.0 + 0j, 0.25)


def test_hurwitz_vs_mpmath():
    rng = np.random.RandomState(3)
    for _ in range(12):
        s = complex(rng.uniform(-1, 3), rng.uniform(-40, 40))
        a = rng.uniform(0.1, 1.0)
        ref = complex(mp.zeta(mp.mpc(s.real, s.imag), a))
        val = hurwitz_zeta(s, a)
        assert abs(val - ref) / max(abs(ref), 1.0) < 1e-10, (s, a)


def test_hurwitz_vectorized_shape():
    s = np.array([2.0 + 1j, 3.0 - 2j, 0.5 + 10j])
    out = hurwitz_zeta(s, 0.3)
    assert out.shape == s.shape
    for i in range(3):
        assert abs(out[i] - hurwitz_zeta(complex(s[i]), 0.3)) < 1e-12


def test_riemann_zeta_functional_value():
    assert abs(riemann_zeta(2.0 + 0j) - math.pi ** 2 / 6) < 1e-12


def test_dirichlet_L_euler_product():
    # sigma = 3: compare against a direct Dirichlet sum
    chi = PrimeModulus(7).character(2)
    s = 3.0 + 0.7j
    direct = sum(chi(m) * m ** (-s) for m in range(1, 20000))
    assert abs(dirichlet_L(s, chi) - direct) < 1e-9


def test_dirichlet_L_trivial_character():
    mod = PrimeModulus(5)
    chi0 = mod.character(0)
    s = 2.5 + 1j
    assert abs(dirichlet_L(s, chi0) - (1 - 5.0 ** (-s)) * riemann_zeta(s)) < 1e-12


def test_legendre_L_at_one_positive():
    # L(1, Legendre mod 5) = (2/sqrt 5) log((1+sqrt 5)/2) > 0
    chi = PrimeModulus(5).character(2)
    val = dirichlet_L(1.0 + 0j, chi)
    ref = 2.0 / math.sqrt(5) * math.log((1 + math.sqrt(5)) / 2)
    assert abs(val - ref) < 1e-10
    assert val.real > 0
