import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from psical.exceptions import DomainError
from psical.geometry import (
    PhasePoint,
    boundary_weights,
    defining_functions,
    equivalence_ratios,
    face_weight,
    ratio,
)
from psical.symbols import Orders, SampleGrid

SQRT2 = math.sqrt(2.0)


def test_boundary_weights_origin():
    w = boundary_weights(PhasePoint((0.0,), 0.0))
    assert w.astuple() == (1.0, 1.0, 1.0, 0.0)


def test_boundary_weights_reference_point():
    w = boundary_weights(PhasePoint((3.0,), 0.5))
    assert w.astuple() == pytest.approx((0.31623, 0.55470, 0.59161, 0.87706), abs=5e-6)


def test_boundary_weights_unit_h():
    w = boundary_weights(PhasePoint((0.0,), 1.0))
    assert w.astuple() == pytest.approx((1.0, 1.0, SQRT2, 1.0), abs=1e-12)


def test_equivalence_ratios_reference_points():
    expected = math.sqrt(3.5 / 3.25)
    assert equivalence_ratios(PhasePoint((3.0,), 0.5)) == pytest.approx((expected, expected),
                                                                        rel=1e-14)
    assert equivalence_ratios(PhasePoint((0.0,), 1.0)) == pytest.approx((SQRT2, SQRT2), abs=1e-12)


def test_r_inf_tends_to_one_as_h_vanishes():
    for zeta in (0.0, 1.0, 1e3):
        assert ratio(zeta, 1e-12) == pytest.approx(1.0, abs=1e-15)


def test_r_h_undefined_at_h_zero():
    with pytest.raises(DomainError):
        equivalence_ratios(PhasePoint((1.0,), 0.0))


def test_phase_point_validation():
    with pytest.raises(DomainError):
        PhasePoint((1.0,), 1.5)
    with pytest.raises(DomainError):
        PhasePoint((np.inf,), 0.5)


def test_face_weight_examples():
    assert face_weight((0, 0, 0), PhasePoint((7.0,), 0.3)) == 1.0
    assert face_weight((2, 2, 2), PhasePoint((0.0,), 0.5)) == pytest.approx(3.2, rel=1e-12)
    # 1 / (rho_h_inf * rho_h_ff) at (3, 0.5) from the closed forms
    expected = 1.0 / (math.sqrt(1 / 3.25) * math.sqrt(0.25 + 0.1))
    assert expected == pytest.approx(3.04725, abs=1e-5)
    assert face_weight((1, 1, 0), PhasePoint((3.0,), 0.5)) == pytest.approx(expected, rel=1e-14)
    assert face_weight(Orders(1, 1, 0), PhasePoint((3.0,), 0.5)) == pytest.approx(expected,
                                                                                  rel=1e-14)


def test_face_weight_singular_at_parameter_boundary():
    with pytest.raises(DomainError):
        face_weight((0, 0, 1), PhasePoint((0.0,), 0.0))
    # nonpositive k is harmless there
    assert face_weight((0, 0, -1), PhasePoint((0.0,), 0.0)) == 0.0


def test_ratios_on_default_grid():
    r, h = SampleGrid.default().radius_h()
    rho = defining_functions(r, h)
    r_h = rho[3] * rho[2] / h
    r_inf = rho[1] * rho[2] / rho[0]
    assert np.all(r_h >= 1 - 1e-12) and np.all(r_h <= SQRT2 + 1e-12)
    assert np.all(r_inf >= 1 - 1e-12) and np.all(r_inf <= SQRT2 + 1e-12)
    assert np.max(np.abs(r_h - r_inf)) <= 1e-12


@settings(max_examples=200, deadline=None)
@given(zeta=st.floats(0, 1e6), h=st.floats(1e-8, 1.0))
def test_ratio_bounds_property(zeta, h):
    r_h, r_inf = equivalence_ratios(PhasePoint((zeta,), h))
    assert 1 - 1e-12 <= r_h <= SQRT2 + 1e-12
    assert abs(r_h - r_inf) <= 1e-12 * r_h
    assert abs(r_h - ratio(zeta, h)) <= 1e-12 * r_h


@settings(max_examples=100, deadline=None)
@given(zeta=st.floats(-1e6, 1e6), h=st.floats(0, 1.0))
def test_weights_in_range(zeta, h):
    w = boundary_weights(PhasePoint((zeta,), h))
    for v in (w.rho_inf, w.rho_h_inf, w.rho_h_ff):
        assert 0 < v <= SQRT2 + 1e-15
    assert 0 <= w.rho_h_0 <= SQRT2
    assert (w.rho_h_0 == 0) == (h == 0)


def test_monotone_limits():
    h = 0.25
    ff = defining_functions(1e9, h)[2]
    assert ff == pytest.approx(h, rel=1e-12)
    assert defining_functions(5.0, 1e-12)[1] == pytest.approx(1.0, abs=1e-15)


def test_two_dimensional_points_use_euclidean_norm():
    a = boundary_weights(PhasePoint((3.0, 4.0), 0.5))
    b = boundary_weights(PhasePoint((5.0,), 0.5))
    assert a.astuple() == pytest.approx(b.astuple(), rel=1e-15)
