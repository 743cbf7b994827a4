import cmath
import math

import pytest

from glvoronoi.chars import PrimeModulus
from glvoronoi.kloosterman import (EnumerationBudgetExceeded,
                                   KloostermanParams, char_moment, kl_direct,
                                   kl_table, kl_via_chars)


def test_kl1_is_additive_character():
    for q in (3, 5, 7):
        for m in range(q):
            val = kl_direct(KloostermanParams(1, m, q))
            assert abs(val - cmath.exp(2j * math.pi * m / q)) < 1e-12


def test_kl2_oracle():
    # Kl_2(1, 5) = sum_x e((x + xbar)/5) = 0.38196601125... (precomputed;
    # equals (sqrt(5) - 1)/2 - 1 + 1 = 2 cos(2pi/5) + 2 cos(4pi/5) + ...)
    val = kl_direct(KloostermanParams(2, 1, 5))
    assert abs(val - 0.381966011250105) < 1e-12
    assert abs(val.imag) < 1e-12


def test_kl_real_for_symmetric():
    # Kl_2(m, q) is real (x <-> xbar symmetry)
    for q in (5, 7, 11):
        for m in range(1, q):
            assert abs(kl_direct(KloostermanParams(2, m, q)).imag) < 1e-12


def test_kl_weil_bound():
    # |Kl_k(m,q)| <= k q^{(k-1)/2} for (m, q) = 1
    for q in (3, 5, 7):
        for k in (1, 2, 3):
            for m in range(1, q):
                val = kl_direct(KloostermanParams(k, m, q))
                assert abs(val) <= k * q ** ((k - 1) / 2) + 1e-9


def test_kl_degenerate_m0():
    # m = 0: sum over units of e((x_1 + ... + x_{k-1})/q) = (-1)^{k-1}
    for q in (3, 5, 7):
        for k in (2, 3, 4):
            val = kl_direct(KloostermanParams(k, 0, q))
            assert abs(val - (-1.0) ** (k - 1)) < 1e-10


def test_direct_vs_chars():
    for q in (3, 5, 7, 11):
        for k in (1, 2, 3, 4):
            for m in range(1, q):
                p = KloostermanParams(k, m, q)
                assert abs(kl_direct(p) - kl_via_chars(p)) < 1e-10


def test_char_moment_vanishes_at_zero():
    # both parity moments are 0 at m = 0 since psi(0) = 0
    mod = PrimeModulus(7)
    for k in (1, 2, 3):
        assert abs(char_moment(mod, k, 0, "even")) < 1e-12
        assert abs(char_moment(mod, k, 0, "odd")) < 1e-12


def test_budget():
    with pytest.raises(EnumerationBudgetExceeded):
        kl_direct(KloostermanParams(9, 1, 13), budget=10)


def test_kl_table_matches_direct():
    tab = kl_table(3, 7)
    for m in range(7):
        assert abs(tab[m] - kl_direct(KloostermanParams(3, m, 7))) < 1e-14


def test_chars_needs_unit():
    with pytest.raises(ValueError):
        kl_via_chars(KloostermanParams(2, 0, 5))
