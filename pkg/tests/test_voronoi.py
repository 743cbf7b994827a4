import numpy as np
import pytest

from glvoronoi.coeffs import EisensteinSource, FileCoefficientSource
from glvoronoi.mellin import TestFunction
from glvoronoi import voronoi as vor

SRC2 = EisensteinSource((0.5j, -0.5j))


def test_instance_validation():
    with pytest.raises(ValueError):
        vor.VoronoiInstance(SRC2, q=6, a=1, k=1)  # composite q
    with pytest.raises(ValueError):
        vor.VoronoiInstance(SRC2, q=5, a=10, k=1)  # (a, q) != 1
    with pytest.raises(ValueError):
        vor.VoronoiInstance(SRC2, q=5, a=1, k=2)  # k out of range
    inst = vor.VoronoiInstance(SRC2, q=5, a=3, k=1)
    assert (inst.a * inst.abar) % 5 == 1


def test_lhs_regrouping_exact():
    inst = vor.VoronoiInstance(SRC2, q=7, a=3, k=1)
    lc = vor.lhs_combined(inst)
    le, lo = vor.lhs_even(inst), vor.lhs_odd(inst)
    assert abs(lc - (le + lo)) <= 1e-12 * max(abs(lc), 1.0)


def test_lhs_depends_on_a_mod_q():
    i1 = vor.VoronoiInstance(SRC2, q=5, a=2, k=1)
    i2 = vor.VoronoiInstance(SRC2, q=5, a=7, k=1)
    assert abs(vor.lhs_even(i1) - vor.lhs_even(i2)) < 1e-14


def test_polar_correction_radius_invariant():
    inst = vor.VoronoiInstance(SRC2, q=5, a=2, k=1)
    c1 = vor.polar_correction_even(inst, radius=0.05)
    c2 = vor.polar_correction_even(inst, radius=0.03)
    assert abs(c1 - c2) <= 1e-10 * max(abs(c1), 1.0)


def test_polar_correction_zero_for_cuspidal():
    src = FileCoefficientSource(2, (0.5j, -0.5j), {(1,): 1.0 + 0j})
    inst = vor.VoronoiInstance(src, q=5, a=1, k=1)
    assert vor.polar_correction_even(inst) == 0


def test_file_source_report_is_approximate():
    table = {(m,): complex(m % 3 - 1 + (1 if m == 1 else 0)) for m in range(1, 71)}
    table[(1,)] = 1.0 + 0j
    src = FileCoefficientSource(2, (0.5j, -0.5j), table)
    inst = vor.VoronoiInstance(src, q=3, a=1, k=1)
    rep = vor.verify(inst, part="odd")
    assert rep.verdict == "approximate"
    assert rep.diagnostics["coefficients_complete"] is False


def test_verify_rejects_bad_part():
    inst = vor.VoronoiInstance(SRC2, q=5, a=1, k=1)
    with pytest.raises(ValueError):
        vor.verify(inst, part="sideways")


def test_report_error_definitions():
    inst = vor.VoronoiInstance(SRC2, q=5, a=2, k=1)
    rep = vor.verify(inst, part="even")
    assert rep.abs_err == abs(rep.lhs - (rep.rhs + rep.polar_correction))
    assert rep.rel_err == rep.abs_err / max(abs(rep.lhs), abs(rep.rhs), 1e-30)
    d = rep.to_dict()
    assert d["check"] == "voronoi_even"
    assert d["params"]["q"] == 5
