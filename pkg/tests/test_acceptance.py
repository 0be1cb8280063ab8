"""Acceptance criteria, one test per criterion.

Each test prints a single ``[PASS]`` or ``[FAIL]`` line with the measured
values. Run ``pytest tests/test_acceptance.py -v`` or ``python3
tests/test_acceptance.py``. The default grid is d = 1, N = 256 and
h = 2^-1 ... 2^-8; the resolvent and interpolation criteria use N = 512
(the dense-matrix cap), and the N = 256 values are printed alongside.
"""
import math
import sys

import numpy as np
import pytest

from psical.calculus import compose_asymptotic, compose_exact, neumann_correct, parametrix_symbol
from psical.geometry import defining_functions
from psical.quantize import GridSpec, assemble, assemble_semiclassical, scale_symbol, symmetrize
from psical.sobolev import classical_triple, norm, standard_norm
from psical.spectral import (
    ContourSpec,
    SpectralParameter,
    complex_power,
    eigen_oracle_power,
    normal_inverse_family,
    normal_operator_defect,
    spectral_family,
    verify_interpolation,
    verify_main_theorem,
)
from psical.symbols import (
    BUILTINS,
    ClassicalOrders,
    Orders,
    SampleGrid,
    classical_membership,
    cosine,
    fit_orders,
    frequency,
    is_fully_elliptic,
    japanese_bracket,
    laplacian,
    make_symbol,
    monomial,
    perturbed,
    plane_wave,
    polynomial,
    resolve_orders,
    sc_spectral,
    sine,
)
from psical._numerics import loglog_slope

H_GRID = tuple(2.0 ** -np.arange(1, 9))
GRID = GridSpec(d=1, N=256, h_grid=H_GRID)
FINE = GridSpec(d=1, N=512, h_grid=H_GRID)


def _line(number, passed, text):
    return f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {text}"


@pytest.fixture
def report(capsys):
    def emit(number, passed, text, info=()):
        with capsys.disabled():
            print()
            print(_line(number, passed, text))
            for extra in info:
                print(f"       info: {extra}")
        return passed

    return emit


def criterion_1():
    r, h = SampleGrid.default().radius_h()
    rho = defining_functions(r, h)
    r_h = rho[3] * rho[2] / h
    r_inf = rho[1] * rho[2] / rho[0]
    lo = float(min(r_h.min(), r_inf.min()))
    hi = float(max(r_h.max(), r_inf.max()))
    gap = float(np.max(np.abs(r_h - r_inf)))
    ok = lo >= 1 - 1e-12 and hi <= math.sqrt(2) + 1e-12 and gap <= 1e-12
    return ok, f"ratios in [{lo:.6f}, {hi:.6f}] within [1, sqrt 2]; max |r_h - r_inf| = {gap:.1e}", ()


def _all_builtins():
    out = [make_symbol(name) for name in BUILTINS]
    out += [japanese_bracket(-2.0), perturbed(2.0, 0.3), monomial(2.0, 1.0), cosine(2), sine(1),
            polynomial([1.0, -2.0, 0.5]),
            sc_spectral(laplacian(), 2.0, 1j), sc_spectral(perturbed(1.0, 0.3), 1.0, 1j)]
    return out


def criterion_2():
    worst = 0.0
    count = 0
    for a in _all_builtins():
        for h in H_GRID:
            X = assemble_semiclassical(a, h, GRID).entries
            Y = assemble(scale_symbol(a), h, GRID).entries
            worst = max(worst, float(np.linalg.norm(X - Y) / np.linalg.norm(Y)))
            count += 1
    return worst <= 1e-12, f"max Frobenius relative error {worst:.1e} over {count} cases (tol 1e-12)", ()


def criterion_3():
    worst = 0.0
    for m in (0, 1, 2):
        for k in (0, 1, 2):
            fit = fit_orders(monomial(m, k)).orders
            target = resolve_orders(ClassicalOrders(m, k))
            worst = max(worst, max(abs(a - b) for a, b in zip(fit, target)))
    membership = [(classical_membership(Orders(-m, -m, -m), 0.0),
                   classical_membership(Orders(-m, -m, -m), -m)) for m in (1, 2)]
    exact = membership == [(-1, 0), (-2, 0)]
    ok = worst <= 0.1 and exact
    return ok, (f"max order error {worst:.3f} (tol 0.1); double membership {membership} "
                f"for m = 1, 2"), ()


def criterion_4():
    partners = [plane_wave(1), perturbed(1.0, 0.3), cosine(2) * 3.0 + sine(1)]
    worst = 0.0
    for coeffs in ([2.0], [1.0, -1.0], [0.5, 0.0, 1.0], [1.0, 2.0, -1.0, 0.5]):
        a = polynomial(coeffs)
        for b in partners:
            c = compose_asymptotic(a, b, len(coeffs))
            for h in H_GRID:
                C = compose_exact(assemble(a, h, GRID), assemble(b, h, GRID)).entries
                T = assemble(c, h, GRID).entries
                worst = max(worst, float(np.linalg.norm(C - T) / np.linalg.norm(C)))
    return worst <= 1e-10, f"max relative error {worst:.1e} for degrees 0..3 (tol 1e-10)", ()


def criterion_5():
    sp = SpectralParameter(1j, 1.0)
    fam = spectral_family(perturbed(1.0, 0.3), sp)
    A = [assemble(fam, h, GRID) for h in H_GRID]
    B0 = normal_inverse_family(sp, H_GRID, GRID)
    slopes = {}
    for J in (1, 2, 3):
        Bt = [assemble(parametrix_symbol(fam, fam.orders, J), h, GRID) for h in H_GRID]
        res = neumann_correct(A, Bt, B0, "iterate", J)
        slopes[J] = loglog_slope(H_GRID, res.residual)
    exact = neumann_correct(A, mode="exact")
    kept = [r for r in exact.residual if np.isfinite(r)]
    exact_max = max(kept) if kept else np.nan
    ok = all(slopes[J] >= J - 0.2 for J in slopes) and len(kept) == len(H_GRID) \
        and exact_max <= 1e-10
    text = ", ".join(f"J={J} slope {s:.3f}" for J, s in slopes.items())
    return ok, (f"{text} (need >= J - 0.2); exact ||BA - I|| max {exact_max:.1e} at "
                f"{len(kept)}/{len(H_GRID)} h (floor h = {exact.h0:g})"), ()


def criterion_6():
    parts, info, ok = [], [], True
    for m in (1.0, 2.0):
        a, sp = perturbed(m, 0.3), SpectralParameter(1j, m)
        rep = verify_main_theorem(a, sp, H_GRID, 0.0, FINE)
        coarse = verify_main_theorem(a, sp, H_GRID, 0.0, GRID)
        ok &= rep.passed
        parts.append(f"m={m:g}: L2 slope {rep.slope:.3f} (want {m:g} +- 0.1), "
                     f"L2->H^{m:g} max/min {rep.variation:.2f} (want <= 2)")
        verdict = "PASS" if coarse.passed else "FAIL"
        info.append(f"m={m:g} at N=256: slope {coarse.slope:.3f}, max/min {coarse.variation:.2f} "
                    f"-> {verdict} (1/h exceeds the largest mode N/2 at h = 2^-8)")
    return ok, "; ".join(parts) + " [N=512]", info


def criterion_7():
    z_list = [1j / h ** 2 for h in H_GRID]
    rows = verify_interpolation(z_list, [0.0, 1.0, 2.0], 0.0, 0.0, FINE, 0.05)
    coarse = verify_interpolation(z_list, [0.0, 1.0, 2.0], 0.0, 0.0, GRID, 0.05)
    ok = all(r.passed and r.oracle_error <= 1e-9 for r in rows)
    text = ", ".join(f"t={r.t:g} slope {r.slope:.3f} (want {r.expected:.2f})" for r in rows)
    oracle = max(r.oracle_error for r in rows)
    verdict = "PASS" if all(r.passed for r in coarse) else "FAIL"
    info = [", ".join(f"t={r.t:g} slope {r.slope:.3f}" for r in coarse) + f" at N=256 -> {verdict}"]
    return ok, f"{text}; oracle error {oracle:.1e} (tol 1e-9) [N=512]", info


def _power_checks(A):
    half = complex_power(A, ContourSpec("log_ellipse", 64, 0.5))
    oracle = eigen_oracle_power(A, 0.5)
    rel = float(np.abs(half.matrix - oracle).max() / np.abs(oracle).max())
    inverse = np.linalg.solve(A.entries, np.eye(A.shape[0]))
    semi = float(np.linalg.norm(half.matrix @ half.matrix - inverse) / np.linalg.norm(inverse))
    return rel, semi, half.error_estimate


def criterion_8():
    cases = {
        "Delta+1": assemble(laplacian() + 1.0, 1.0, GRID),
        "sym(<zeta>+0.2cos z)": symmetrize(assemble(japanese_bracket(1.0) + 0.2 * cosine(1),
                                                    1.0, GRID)),
    }
    parts, ok = [], True
    for label, A in cases.items():
        rel, semi, est = _power_checks(A)
        ok &= rel <= 1e-8 and semi <= 1e-6
        parts.append(f"{label}: rel error {rel:.1e}, semigroup {semi:.1e}")
    z_ellipse = complex_power(cases["Delta+1"], ContourSpec("ellipse", 64, 0.5))
    oracle = eigen_oracle_power(cases["Delta+1"], 0.5)
    plain = float(np.abs(z_ellipse.matrix - oracle).max() / np.abs(oracle).max())
    info = [f"64-node ellipse in the z-plane (not the accuracy path): rel error {plain:.2f}"]
    return ok, "; ".join(parts) + " (tol 1e-8 / 1e-6, 64-node log-plane ellipse)", info


def criterion_9():
    parts, ok = [], True
    for m, a in ((1.0, perturbed(1.0, 0.3)), (2.0, laplacian())):
        _, slope = normal_operator_defect(a, SpectralParameter(1j, m), H_GRID, GRID)
        ok &= abs(slope - m) <= 0.1
        parts.append(f"m={m:g} defect slope {slope:.3f}")
    full, _, normal_margin = is_fully_elliptic(sc_spectral(laplacian(), 2.0, 1j), Orders(2, 2, 2))
    counter = frequency().with_orders(Orders(1, 1, 1))
    c_full, _, c_normal = is_fully_elliptic(counter, counter.orders)
    ok &= full and not c_full
    parts.append(f"spectral family fully elliptic: {full} (normal margin {normal_margin:.3g})")
    parts.append(f"h^-1(h zeta) fully elliptic: {c_full} (normal margin {c_normal:.3g})")
    return ok, "; ".join(parts), ()


def criterion_10():
    rng = np.random.default_rng(20261014)
    worst = 0.0
    ok = True
    for s in (0, 1, 2):
        for p in (0, 1, 2):
            bound = 2.0 ** ((abs(s) + abs(p)) / 2.0)
            for h in H_GRID:
                for _ in range(4):
                    u = rng.standard_normal(GRID.size) + 1j * rng.standard_normal(GRID.size)
                    q = norm(u, classical_triple(s, p), h, GRID) / standard_norm(u, s, p, h, GRID)
                    ok &= 1 / bound - 1e-12 <= q <= bound + 1e-12
                    worst = max(worst, abs(math.log2(q)))
    return bool(ok), (f"all ratios within [2^-(|s|+|p|)/2, 2^(|s|+|p|)/2] (slack 1e-12); "
                      f"max |log2 ratio| {worst:.4f}"), ()


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("number", range(1, 11))
def test_criterion(number, report):
    ok, text, info = CRITERIA[number - 1]()
    assert report(number, ok, text, info), text


if __name__ == "__main__":
    failed = 0
    for number, crit in enumerate(CRITERIA, 1):
        ok, text, info = crit()
        print(_line(number, ok, text))
        for extra in info:
            print(f"       info: {extra}")
        failed += not ok
    sys.exit(1 if failed else 0)
