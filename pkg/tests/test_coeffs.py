import numpy as np
import pytest

from glvoronoi.coeffs import (EisensteinSource, InsufficientDataError,
                              hecke_check, last_slot_series_check,
                              load_file_source, schur_jacobi_trudi)


def _src(n):
    defaults = {2: (0.5j, -0.5j), 3: (0.6j, 0j, -0.6j),
                4: (0.9j, 0.3j, -0.3j, -0.9j)}
    return EisensteinSource(defaults[n])


def test_divisor_oracle():
    # all alphas zero on GL(3): A(m, 1) = d_3(m); d_3(4) = 6, d_3(12) = 18
    src = EisensteinSource((0j, 0j, 0j))
    assert abs(src.coefficient((4, 1)) - 6.0) < 1e-10
    assert abs(src.coefficient((12, 1)) - 18.0) < 1e-10
    assert abs(src.coefficient((1, 1)) - 1.0) < 1e-12


def test_gl2_hecke_eigenvalue():
    # A(m) = sum_{d | m} d^{alpha_1 - alpha_2} m^{... normalized}
    src = _src(2)
    a = 0.5j
    for m in (2, 3, 4, 6):
        ref = sum((m / d) ** a * d ** (-a) for d in range(1, m + 1) if m % d == 0)
        assert abs(src.coefficient((m,)) - ref) < 1e-10


def test_schur_principal_specialization():
    # s_(1)(x) = x1 + x2 + x3
    xs = np.array([1.1, 0.7, 0.3], dtype=complex)
    assert abs(schur_jacobi_trudi((1,), xs) - xs.sum()) < 1e-12
    # s_(1,1) = e_2
    e2 = xs[0] * xs[1] + xs[0] * xs[2] + xs[1] * xs[2]
    assert abs(schur_jacobi_trudi((1, 1), xs) - e2) < 1e-12


def test_alphas_validation():
    with pytest.raises(ValueError):
        EisensteinSource((0.5j, 0.2j))  # does not sum to zero
    with pytest.raises(ValueError):
        EisensteinSource((0.5 + 0.5j, -0.5 - 0.5j))  # not purely imaginary


def test_hecke_relations():
    for n in (2, 3, 4):
        src = _src(n)
        for q in (2, 3, 5):
            for i in range(1, n):
                for m in (1, 2, 5, 6, 9, 10, 12, 30):
                    assert hecke_check(src, q, m, i) < 1e-10, (n, q, m, i)


def test_dual_coefficients_conjugate_reverse():
    src = _src(3)
    dual = src.dual()
    for t in ((2, 3), (4, 1), (5, 5)):
        assert abs(dual.coefficient(t) -
                   np.conj(src.coefficient(t[::-1]))) < 1e-10


def test_series_builders_match_pointwise():
    src = _src(3)
    M = 60
    first = src.first_slot_series(M)
    last = src.last_slot_series(M)
    for m in range(1, M + 1):
        assert abs(first[m] - src.coefficient((m, 1))) < 1e-10
        assert abs(last[m] - src.coefficient((1, m))) < 1e-10
    assert last_slot_series_check(src, 100) < 1e-10


def test_first_slot_q_series():
    src = _src(4)
    q, l, M = 3, 2, 40
    series = src.first_slot_q_series(M, q, l)
    for m in range(1, M + 1):
        assert abs(series[m] - src.coefficient((m, q, 1))) < 1e-10


FILE_TEXT = """# sample GL(3) coefficient file
n=3
lambda=0,0.6;0,0;0,-0.6
# m1 m2 re im
1 1 1.0 0.0
2 1 0.5 -0.25
1 2 0.5 0.25
"""


def test_file_source_roundtrip(tmp_path):
    p = tmp_path / "c.txt"
    p.write_text(FILE_TEXT)
    src = load_file_source(str(p))
    assert src.n == 3
    assert abs(src.coefficient((2, 1)) - (0.5 - 0.25j)) < 1e-15
    with pytest.raises(InsufficientDataError):
        src.coefficient((9, 9))


def test_file_source_error_has_line_number(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("n=3\nlambda=0,0.6;0,0;0,-0.6\n1 1 1.0 0.0\nnot numbers here\n")
    with pytest.raises(ValueError) as err:
        load_file_source(str(p))
    assert ":4" in str(err.value)


def test_file_source_requires_normalized_first(tmp_path):
    p = tmp_path / "un.txt"
    p.write_text("n=3\nlambda=0,0.6;0,0;0,-0.6\n1 1 2.0 0.0\n")
    with pytest.raises(ValueError):
        load_file_source(str(p))
