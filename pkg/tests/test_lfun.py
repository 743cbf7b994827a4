import numpy as np
import pytest

from glvoronoi.chars import PrimeModulus
from glvoronoi.coeffs import EisensteinSource
from glvoronoi.lfun import (PoleError, assemble_Z, chain_even_lhs, eis_L,
                            eis_L_twisted, fe_residual, proof_chain_residual,
                            twisted_L_table)

SRC2 = EisensteinSource((0.5j, -0.5j))
SRC3 = EisensteinSource((0.6j, 0j, -0.6j))


def test_eis_L_is_dirichlet_series():
    # sigma = 3: L(s) = sum A(m,1,..) m^{-s}
    s = 3.0 + 0.4j
    for src in (SRC2, SRC3):
        # truncation tail at sigma=3, M=5000 is ~1e-7
        series = sum(src.first_slot_series(5000)[m] * m ** (-s)
                     for m in range(1, 5001))
        assert abs(eis_L(s, src.alphas) - series) < 1e-6


def test_eis_L_pole_guard():
    with pytest.raises(PoleError):
        eis_L(1.0 + 0.5j, (0.5j, -0.5j))


def test_twisted_matches_table():
    mod = PrimeModulus(7)
    s = 1.3 + 2.0j
    table = twisted_L_table(s, SRC3.alphas, mod)
    for chi in mod.characters():
        assert abs(table[chi.t] - eis_L_twisted(s, SRC3.alphas, chi)) < 1e-10


def test_twisted_is_dirichlet_series():
    mod = PrimeModulus(5)
    chi = mod.character(1)
    s = 3.0 - 0.3j
    series = sum(chi(m) * SRC2.first_slot_series(4000)[m] * m ** (-s)
                 for m in range(1, 4001))
    assert abs(eis_L_twisted(s, SRC2.alphas, chi) - series) < 1e-9


def test_Z_matches_kloosterman_series():
    # Z(s,q)/(q-1) = (1/2) sum_m A(m,1) (Kl_k(am)+Kl_k(-am)) m^{-s}, sigma=3
    from glvoronoi.kloosterman import kl_table
    q, a, k, s = 5, 2, 1, 3.0 + 0j
    tab = kl_table(k, q)
    At = SRC2.first_slot_series(6000)
    series = 0.5 * sum(At[m] * (tab[(a * m) % q] + tab[(-a * m) % q]) * m ** (-s)
                       for m in range(1, 6001))
    assert abs(assemble_Z(s, q, a, k, SRC2) / (q - 1) - series) < 1e-8


def test_fe_residuals_sample():
    for src, q, k in ((SRC2, 5, 1), (SRC3, 7, 1), (SRC3, 3, 2)):
        for s in (0.3 + 4.0j, 1.4 - 9.0j, -0.5 + 21.0j):
            for kind in ("standard", "even", "odd"):
                assert fe_residual(kind, s, q, 2, k, src) < 1e-8, (q, k, s, kind)


def test_proof_chain_sample():
    assert proof_chain_residual(0.4 + 11.0j, 5, 2, 1, SRC2) < 1e-8
    assert proof_chain_residual(1.2 - 6.0j, 3, 1, 2, SRC3) < 1e-8


def test_odd_sign_is_needed():
    # dropping the (-1)^k factor breaks the odd functional equation at odd k
    from glvoronoi.lfun import assemble_Y, assemble_Y_tilde
    from glvoronoi.mellin import G_minus
    s, q, a, k = 0.7 + 5.0j, 5, 2, 1
    lhs = assemble_Y(s, q, a, k, SRC2)
    fac = np.exp((k - 2 * s) * np.log(q))
    rhs = fac * G_minus(s, SRC2.spectral_parameters) \
        * assemble_Y_tilde(1.0 - s, q, a, k, SRC2)
    good = abs(lhs - (-1.0) ** k * rhs) / max(abs(lhs), 1.0)
    bad = abs(lhs - rhs) / max(abs(lhs), 1.0)
    assert good < 1e-8
    assert bad > 1.0
