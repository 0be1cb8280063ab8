"""Spectral families, resolvents, the uniform resolvent bounds and contour functional calculus."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import linalg

from ._numerics import loglog_slope, spectral_norm
from ._parallel import ordered_map
from .exceptions import ConditioningError, ContourError, DomainError, NotEllipticError
from .quantize import GridSpec, OperatorMatrix, assemble
from .symbols.base import Orders, SampleGrid, SymbolFamily, laplacian, sc_spectral
from .symbols.ellipticity import is_elliptic

__all__ = [
    "SpectralParameter",
    "ContourSpec",
    "spectral_family",
    "resolvent",
    "ResolventReport",
    "verify_main_theorem",
    "InterpolationRow",
    "verify_interpolation",
    "interpolation_oracle",
    "PowerResult",
    "complex_power",
    "eigen_oracle_power",
    "normal_inverse_family",
    "normal_operator_defect",
]

# resolvents are refused when sigma_min falls below this fraction of sigma_max
CONDITION_LIMIT = 1e-13


@dataclass(frozen=True)
class SpectralParameter:
    """``lambda`` off the real axis and the order ``m > 0``; ``z(h) = lambda / h^m``."""

    lam: complex
    m: float

    def __post_init__(self):
        object.__setattr__(self, "lam", complex(self.lam))
        if self.lam.imag == 0:
            raise DomainError("the spectral parameter must have nonzero imaginary part")
        if not self.m > 0:
            raise DomainError("the order m must be positive")

    def z(self, h):
        return self.lam / np.asarray(h, dtype=float) ** self.m


@dataclass(frozen=True)
class ContourSpec:
    """Quadrature contour enclosing a positive spectrum.

    ``shape`` is ``"log_ellipse"`` (an ellipse in the ``log z`` plane, the
    accuracy path), ``"ellipse"`` (an ellipse in the z-plane through
    ``delta/2``) or ``"vertical_line"`` (``Re z = delta/2`` with a sinh map and
    tail truncation at ``|u| <= line_cutoff``).
    """

    shape: str = "log_ellipse"
    nodes: int = 64
    s: complex = 0.5
    aspect: float = 0.5
    line_cutoff: float = 40.0

    def __post_init__(self):
        if self.shape not in ("log_ellipse", "ellipse", "vertical_line"):
            raise DomainError(f"unknown contour shape {self.shape!r}")
        if self.nodes < 8 or self.nodes % 2:
            raise DomainError("contours need an even number of at least 8 nodes")


def _require_h_independent(a: SymbolFamily):
    grid = SampleGrid.default(h_exponents=(0, 3, 7))
    vals = grid.evaluate(a)
    if not np.allclose(vals, vals[..., :1], rtol=1e-12, atol=0):
        raise DomainError(f"{a.name} depends on h; spectral families need an h-independent base")


def spectral_family(a: SymbolFamily, sp: SpectralParameter) -> SymbolFamily:
    """The family ``a - lambda / h^m`` with orders ``(m, m, m)``."""
    if a.orders is not None and a.orders.k != 0:
        raise DomainError(f"{a.name} carries parameter order {a.orders.k}; expected 0")
    _require_h_independent(a)
    return sc_spectral(a, sp.m, sp.lam)


def _inverse(M, what):
    sv = linalg.svdvals(M, check_finite=False)
    if sv[-1] <= CONDITION_LIMIT * sv[0]:
        raise ConditioningError(f"{what} is numerically singular", sigma_min=float(sv[-1]))
    return linalg.solve(M, np.eye(M.shape[0], dtype=complex), check_finite=False), float(sv[-1])


def resolvent(a: SymbolFamily, sp: SpectralParameter, h, g: GridSpec) -> OperatorMatrix:
    """Dense inverse of the quantized spectral family at ``h``; orders ``(-m, -m, -m)``."""
    A = assemble(spectral_family(a, sp), h, g)
    R, _ = _inverse(A.entries, f"the spectral family at h = {h}")
    return OperatorMatrix(R, float(h), g, Orders(-sp.m, -sp.m, -sp.m), f"({A.provenance})^-1")


def _bracket(g: GridSpec, power):
    return (1.0 + g.frequency_norms ** 2) ** (power / 2.0)


@dataclass
class ResolventReport:
    h: list
    norm_same: list
    norm_gain: list
    slope: float
    variation: float
    sup_gain: float
    m: float
    s: float
    slope_tol: float = 0.1
    variation_bound: float = 2.0
    h0: float | None = None

    @property
    def slope_passed(self):
        return bool(abs(self.slope - self.m) <= self.slope_tol)

    @property
    def variation_passed(self):
        return bool(np.isfinite(self.sup_gain) and self.variation <= self.variation_bound)

    @property
    def passed(self):
        return self.slope_passed and self.variation_passed


def verify_main_theorem(a: SymbolFamily, sp: SpectralParameter, h_grid, s=0.0,
                        g: GridSpec | None = None, slope_tol=0.1, variation_bound=2.0):
    """Uniform resolvent bounds over an h-grid.

    Reports ``||R_h||_{H^s -> H^{s+m}}`` (bounded uniformly, measured by the
    max/min ratio across the grid) and the slope of ``log ||R_h||_{H^s -> H^s}``
    against ``log h`` (expected ``m``). Sobolev spaces here are the classical
    ``<D>^s``-weighted ones.
    """
    g = g or GridSpec(d=1, N=256, h_grid=tuple(h_grid))
    m = sp.m
    if a.orders is None:
        raise DomainError("declared orders are needed for the ellipticity check")
    ok, margin = is_elliptic(a, Orders(m, m, 0.0))
    if not ok:
        raise NotEllipticError(f"{a.name} is not elliptic of order {m} (margin {margin:.3g})")
    vals = SampleGrid.default().evaluate(a)
    if np.max(np.abs(vals.imag)) > 1e-12 * np.max(np.abs(vals)):
        raise DomainError(f"{a.name} is not real valued")
    w_s = _bracket(g, s)
    w_gain = _bracket(g, s + m)

    def one(h):
        try:
            R = resolvent(a, sp, h, g).entries
        except ConditioningError:
            return None
        return (spectral_norm(w_s[:, None] * R / w_s[None, :]),
                spectral_norm(w_gain[:, None] * R / w_s[None, :]))

    res = ordered_map(one, h_grid)
    # h0: largest h below which every grid inversion succeeded
    h0 = None
    for h, r in sorted(zip(h_grid, res), key=lambda x: x[0]):
        if r is None:
            break
        h0 = float(h)
    kept = [(h, r) for h, r in zip(h_grid, res) if r is not None and h <= (h0 or 0)]
    if len(kept) < 2:
        raise ConditioningError("fewer than two h values admit a stable inversion")
    hs = [h for h, _ in kept]
    same = [r[0] for _, r in kept]
    gain = [r[1] for _, r in kept]
    return ResolventReport(hs, same, gain, loglog_slope(hs, same),
                           float(max(gain) / min(gain)), float(max(gain)), m, s, slope_tol,
                           variation_bound, h0)


def interpolation_oracle(z, t, N):
    """Mode supremum ``max_n <n>^t / |n^2 - z|`` over ``n in [-N/2, N/2)``."""
    n = np.arange(-N // 2, N // 2, dtype=float)
    return float(np.max((1.0 + n ** 2) ** (t / 2.0) / np.abs(n ** 2 - z)))


@dataclass
class InterpolationRow:
    t: float
    abs_z: list
    norms: list
    oracle: list
    slope: float
    expected: float
    oracle_error: float
    mapping_norms: list
    tol: float = 0.05

    @property
    def passed(self):
        return bool(abs(self.slope - self.expected) <= self.tol and self.oracle_error <= 1e-9)


def verify_interpolation(z_list, t_list, s=0.0, p=0.0, g: GridSpec | None = None, tol=0.05):
    """Slopes of ``log ||<D>^t (Delta - z)^{-1}||`` against ``log |z|``.

    The dense resolvent of the quantized Laplacian is checked against the
    mode-supremum oracle. ``mapping_norms`` record the norm from
    ``H^{s,p}`` to ``H^{s+t, p+2-t}`` with ``h = |z|^{-1/2}``, which stays
    bounded.
    """
    g = g or GridSpec(d=1, N=512, h_grid=())
    D = assemble(laplacian(), 1.0, g).entries
    I = np.eye(g.size)

    def dense(z):
        R = linalg.solve(D - z * I, I.astype(complex), check_finite=False)
        return R

    Rs = ordered_map(dense, z_list)
    absz = [float(abs(z)) for z in z_list]
    rows = []
    for t in t_list:
        wt = _bracket(g, t)
        ws = _bracket(g, s)
        norms, oracle, mapping = [], [], []
        for z, R in zip(z_list, Rs):
            norms.append(spectral_norm(wt[:, None] * R))
            oracle.append(interpolation_oracle(z, t, g.N))
            h = abs(z) ** -0.5
            w_in = ws * h ** (-p)
            w_out = ws * wt * h ** (-(p + 2 - t))
            mapping.append(spectral_norm(w_out[:, None] * R / w_in[None, :]))
        err = float(np.max(np.abs(np.asarray(norms) - oracle) / np.asarray(oracle)))
        rows.append(InterpolationRow(t, absz, norms, oracle, loglog_slope(absz, norms),
                                     -(2.0 - t) / 2.0, err, mapping, tol))
    return rows


@dataclass
class PowerResult:
    matrix: np.ndarray
    error_estimate: float
    delta: float
    upper: float
    distance: float
    contour: ContourSpec = field(default_factory=ContourSpec)


def _hermitian(M, what):
    scale = max(np.abs(M).max(), 1.0)
    if np.abs(M - M.conj().T).max() > 1e-12 * scale:
        raise DomainError(f"{what} is not Hermitian")


def _nodes(c: ContourSpec, delta, upper):
    """Quadrature nodes ``z_k`` and weights ``w_k`` with ``f(A) ~ sum_k w_k f(z_k) (z_k - A)^{-1}``."""
    n = c.nodes
    theta = 2 * np.pi * (np.arange(n) + 0.5) / n
    if c.shape == "log_ellipse":
        a, b = np.log(delta), np.log(upper)
        w0 = 0.5 * (a + b)
        focal = 0.5 * (b - a) + 0.25
        # half way between the segment (mu = 0) and the first periodic copy at Im w = 2 pi
        mu = 0.5 * np.arcsinh(2 * np.pi / focal)
        if focal * np.sinh(mu) >= np.pi:
            mu = np.arcsinh(0.9 * np.pi / focal)
        w = w0 + focal * np.cosh(mu + 1j * theta)
        dw = 1j * focal * np.sinh(mu + 1j * theta)
        z = np.exp(w)
        weights = z * dw / (1j * n)
        return z, weights
    if c.shape == "ellipse":
        center = 0.5 * (delta + upper)
        alpha = 0.5 * (upper - delta) + 0.5 * delta
        beta = c.aspect * alpha
        z = center + alpha * np.cos(theta) + 1j * beta * np.sin(theta)
        dz = -alpha * np.sin(theta) + 1j * beta * np.cos(theta)
        return z, dz / (1j * n)
    # vertical line Re z = delta/2, y = scale * sinh(u), traversed downward
    cline = 0.5 * delta
    scale = max(delta, 1.0)
    u = np.linspace(-c.line_cutoff, c.line_cutoff, n)
    du = u[1] - u[0]
    y = scale * np.sinh(u)
    z = cline + 1j * y
    # (1/2 pi) int f(z) (A - z)^{-1} dy = sum w f(z) (z - A)^{-1} with w = -dy / (2 pi)
    weights = -scale * np.cosh(u) * du / (2 * np.pi)
    return z, weights


def _spectral_bounds(M):
    try:
        linalg.cholesky(M, lower=True, check_finite=False)
    except linalg.LinAlgError:
        raise ContourError("the operator is not positive definite")
    sv = linalg.svdvals(M, check_finite=False)
    return float(sv[-1]), float(sv[0])


def _segment_distance(z, delta, upper):
    x = np.clip(z.real, delta, upper)
    return float(np.min(np.abs(z - x)))


def complex_power(A, c: ContourSpec | None = None) -> PowerResult:
    """``A^{-s}`` by trapezoidal quadrature of ``z^{-s} (z - A)^{-1}`` over a contour.

    ``A`` must be Hermitian positive definite. The error estimate is the
    difference from the rule on every other node.
    """
    c = c or ContourSpec()
    M = A.entries if isinstance(A, OperatorMatrix) else np.asarray(A)
    _hermitian(M, "the operator")
    delta, upper = _spectral_bounds(M)
    z, w = _nodes(c, delta, upper)
    distance = _segment_distance(z, delta, upper)
    margin = 0.0 if c.shape == "log_ellipse" else 0.25 * delta
    if not distance > margin:
        raise ContourError(f"contour comes within {distance:.3g} of the spectrum")
    n = M.shape[0]
    I = np.eye(n, dtype=complex)
    s = complex(c.s)

    def term(k):
        return w[k] * np.exp(-s * np.log(z[k])) * linalg.solve(z[k] * I - M, I, check_finite=False)

    terms = ordered_map(term, range(len(z)))
    total = np.zeros((n, n), dtype=complex)
    half = np.zeros((n, n), dtype=complex)
    for k, T in enumerate(terms):
        total += T
        if k % 2 == 0:
            half += 2 * T
    err = float(np.abs(total - half).max())
    return PowerResult(total, err, delta, upper, distance, c)


def eigen_oracle_power(A, s) -> np.ndarray:
    """``A^{-s}`` from a full eigendecomposition (principal branch)."""
    M = A.entries if isinstance(A, OperatorMatrix) else np.asarray(A)
    _hermitian(M, "the operator")
    lam, V = linalg.eigh(M)
    f = np.exp(-complex(s) * np.log(lam.astype(complex)))
    return (V * f) @ V.conj().T


def normal_inverse_family(sp: SpectralParameter, h_grid, g: GridSpec):
    """``B_0 = -(h^m / lambda) I``, the inverse of the normal-operator model ``-lambda / h^m``."""
    return [OperatorMatrix(-(h ** sp.m / sp.lam) * np.eye(g.size, dtype=complex), float(h), g,
                           Orders(-sp.m, -sp.m, -sp.m), "normal inverse") for h in h_grid]


def normal_operator_defect(a: SymbolFamily, sp: SpectralParameter, h_grid, g: GridSpec):
    """Norms ``||h^m A_h + lambda I||`` over the h-grid and their log-log slope."""
    fam = spectral_family(a, sp)
    norms = []
    for h in h_grid:
        A = assemble(fam, h, g).entries
        norms.append(spectral_norm(h ** sp.m * A + sp.lam * np.eye(g.size)))
    return norms, loglog_slope(h_grid, norms)
