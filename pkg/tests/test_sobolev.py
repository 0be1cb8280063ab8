import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from psical.exceptions import DomainError
from psical.geometry import PhasePoint
from psical.quantize import GridSpec, adjoint, assemble
from psical.sobolev import (
    SobolevTriple,
    classical_triple,
    mapping_constant,
    norm,
    operator_norm,
    semiclassical_triple,
    standard_norm,
    weight,
    weight_matrix,
)
from psical.spectral import SpectralParameter, spectral_family
from psical.symbols import constant, japanese_bracket, laplacian, perturbed

G = GridSpec(d=1, N=64, h_grid=tuple(2.0 ** -np.arange(1, 7)))


def test_weight_examples():
    assert weight(SobolevTriple(0, 0, 0), PhasePoint((4.0,), 0.3)) == 1.0
    expected = 1.0 / (math.sqrt(1 / 3.25) * math.sqrt(0.35))
    assert weight(SobolevTriple(1, 1, 0), PhasePoint((3.0,), 0.5)) == pytest.approx(expected,
                                                                                   rel=1e-14)
    assert weight(SobolevTriple(0, 1, 1), PhasePoint((0.0,), 0.5)) == pytest.approx(
        1 / (math.sqrt(1.25) * 0.5), rel=1e-14)


def test_weight_needs_positive_h():
    with pytest.raises(DomainError):
        weight(SobolevTriple(1, 0, 0), PhasePoint((0.0,), 0.0))
    with pytest.raises(DomainError):
        weight_matrix(SobolevTriple(1, 0, 0), 0.0, G)


def test_norm_examples():
    rng = np.random.default_rng(1)
    u = rng.standard_normal(G.size) + 1j * rng.standard_normal(G.size)
    assert norm(u, SobolevTriple(0, 0, 0), 0.3, G) == pytest.approx(np.linalg.norm(u), rel=1e-15)
    for h in (1.0, 0.1):
        assert norm(G.delta(0), SobolevTriple(2.5, 0, 0), h, G) == pytest.approx(1.0, rel=1e-15)
    expected = 1.0 / (math.sqrt(1 / 3.25) * math.sqrt(0.35))
    assert norm(G.delta(3), SobolevTriple(1, 1, 0), 0.5, G) == pytest.approx(expected, rel=1e-14)


def test_triple_identifications():
    assert classical_triple(2, 0) == SobolevTriple(2, 2, 0)
    assert semiclassical_triple(1, 1) == SobolevTriple(1, 1, 1)
    assert classical_triple(0, 0) == semiclassical_triple(0, 0) == SobolevTriple(0, 0, 0)


def test_triple_arithmetic_and_validation():
    t = SobolevTriple(1, 2, 3)
    assert -t == SobolevTriple(-1, -2, -3)
    assert t - (1, 1, 1) == SobolevTriple(0, 1, 2)
    with pytest.raises(DomainError):
        SobolevTriple(np.nan, 0, 0)


def test_operator_norm_examples():
    h = 0.25
    I = assemble(constant(1.0), h, G)
    t = SobolevTriple(1.5, -0.5, 2.0)
    assert operator_norm(I, t, t) == pytest.approx(1.0, rel=1e-14)
    for h in (1.0, 0.5, 2.0 ** -6):
        v = operator_norm(assemble(japanese_bracket(-1.0), h, G), SobolevTriple(0, 0, 0),
                          SobolevTriple(1, 1, 0))
        assert 1 / math.sqrt(2) - 1e-12 <= v <= 1 + 1e-12
    # mode-supremum oracle for Op(zeta^2) from (2,2,0) to L2
    h = 0.5
    n = G.modes.astype(float)
    rho_inf = 1 / np.sqrt(1 + h ** 2 * n ** 2)
    rho_ff = np.sqrt(h ** 2 + 1 / (1 + n ** 2))
    oracle = np.max(n ** 2 * (rho_inf * rho_ff) ** 2)
    v = operator_norm(assemble(laplacian(), h, G), SobolevTriple(2, 2, 0), SobolevTriple(0, 0, 0))
    assert v == pytest.approx(oracle, rel=1e-12)
    assert v == pytest.approx(1.0, abs=1e-3)


@pytest.mark.parametrize("m", [1.0, 2.0, -1.5])
def test_mapping_constant_for_brackets(m):
    A = [assemble(japanese_bracket(m), h, G) for h in G.h_grid]
    res = mapping_constant(A, (m, m, 0), SobolevTriple(0.5, 0.5, 0))
    bound = 2 ** (abs(m) / 2)
    assert res.passed
    assert all(1 / bound - 1e-12 <= v <= bound + 1e-12 for v in res.norms)


def test_mapping_constant_spectral_family():
    fam = spectral_family(laplacian(), SpectralParameter(1j, 2.0))
    A = [assemble(fam, h, G) for h in G.h_grid]
    res = mapping_constant(A, fam.orders, SobolevTriple(0, 0, 0))
    assert res.passed and np.isfinite(res.value) and res.variation <= 2
    rms = mapping_constant(A, fam.orders, SobolevTriple(0, 0, 0), aggregate="l2")
    assert rms.value <= res.value


def test_mapping_constant_zero_operator():
    A = [assemble(constant(0.0) * japanese_bracket(1.0), h, G) for h in G.h_grid]
    assert mapping_constant(A, (1, 1, 0), SobolevTriple(0, 0, 0)).value == 0.0


def test_mapping_constant_validation():
    A = [assemble(constant(1.0), 0.5, G)]
    with pytest.raises(DomainError):
        mapping_constant(A, (0, 0, 0), SobolevTriple(0, 0, 0))
    with pytest.raises(DomainError):
        mapping_constant(A * 2, (0, 0, 0), SobolevTriple(0, 0, 0), aggregate="median")


@settings(max_examples=30, deadline=None)
@given(s=st.integers(0, 2), p=st.integers(0, 2), h=st.floats(1e-4, 1.0), seed=st.integers(0, 99))
def test_norm_identification(s, p, h, seed):
    u = np.random.default_rng(seed).standard_normal(G.size)
    q = norm(u, classical_triple(s, p), h, G) / standard_norm(u, s, p, h, G)
    bound = 2.0 ** ((abs(s) + abs(p)) / 2.0)
    assert 1 / bound - 1e-12 <= q <= bound + 1e-12


@settings(max_examples=15, deadline=None)
@given(t_in=st.tuples(*[st.floats(-2, 2)] * 3), t_out=st.tuples(*[st.floats(-2, 2)] * 3),
       h=st.floats(0.01, 1.0))
def test_duality(t_in, t_out, h):
    A = assemble(perturbed(1.0, 0.3), h, G)
    t_in, t_out = SobolevTriple(*t_in), SobolevTriple(*t_out)
    lhs = operator_norm(adjoint(A), -t_out, -t_in)
    assert lhs == pytest.approx(operator_norm(A, t_in, t_out), rel=1e-10)


@settings(max_examples=30, deadline=None)
@given(zeta=st.floats(1, 1e4), h=st.floats(1e-3, 0.99), slot=st.integers(0, 2),
       step=st.floats(0.1, 2))
def test_weight_monotone(zeta, h, slot, step):
    base = [0.5, -0.5, 1.0]
    bigger = list(base)
    bigger[slot] += step
    p = PhasePoint((zeta,), h)
    assert weight(SobolevTriple(*bigger), p) > weight(SobolevTriple(*base), p)
