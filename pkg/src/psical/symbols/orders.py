"""Order bookkeeping and empirical order/seminorm estimation."""
from __future__ import annotations

from typing import NamedTuple

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from ..exceptions import CapabilityError, DomainError, OrderError
from ..geometry import defining_functions, log_face_weight
from .base import ClassicalOrders, Orders, SampleGrid, SymbolFamily

__all__ = [
    "resolve_orders",
    "classical_membership",
    "OrderEstimator",
    "OrderFit",
    "fit_orders",
    "seminorm",
    "principal_residual_orders",
    "same_principal_symbol",
]

# values below this fraction of the z-maximum at the same (zeta, h) count as zeros
ZERO_FRACTION = 1e-10


def resolve_orders(c: ClassicalOrders) -> Orders:
    """Pull classical orders ``(m, k)`` back to the resolved triple ``(m, m + k, k)``."""
    return Orders(c.m, c.m + c.k, c.k)


def classical_membership(o: Orders, k_target: float) -> float:
    """Smallest ``m'`` with ``S^{m,l,k}`` contained in ``S^{m', k_target}``.

    Equal to ``max(m, l - k_target)``. Raises :class:`OrderError` when
    ``k_target < k`` since then no such embedding exists.
    """
    if k_target < o.k:
        raise OrderError(f"no embedding into parameter order {k_target} < k = {o.k}")
    return max(o.m, o.l - k_target)


def _design(zeta_norm, h):
    _, r_inf, r_ff, r_0 = defining_functions(zeta_norm, h)
    return np.column_stack([-np.log(r_inf), -np.log(r_ff), -np.log(r_0)])


class OrderEstimator(RegressorMixin, BaseEstimator):
    """Least-squares estimate of triple orders from symbol magnitudes.

    Fits ``log|a| ~ -m log rho_h_inf - l log rho_h_ff - k log rho_h_0 + c``.

    ``X`` has two columns, ``|zeta|`` and ``h``; ``y`` holds ``|a|``. Samples
    with ``y <= 0`` are dropped. After fitting, ``orders_`` holds the
    estimate, ``residual_`` the RMS residual in ``log|a|`` and ``condition_``
    the condition number of the design matrix (``inf`` if rank deficient).
    """

    def __init__(self, fit_intercept=True):
        self.fit_intercept = fit_intercept

    def _features(self, X):
        F = _design(X[:, 0], X[:, 1])
        if self.fit_intercept:
            F = np.column_stack([F, np.ones(len(F))])
        return F

    def fit(self, X, y):
        X, y = check_X_y(X, y, dtype=float)
        if np.any(X[:, 1] <= 0):
            raise DomainError("order fitting needs h > 0")
        keep = y > 0
        if not np.any(keep):
            raise DomainError("no nonzero samples to fit")
        F = self._features(X[keep])
        target = np.log(y[keep])
        coef, _, rank, sv = np.linalg.lstsq(F, target, rcond=None)
        self.coef_ = coef[:3]
        self.intercept_ = float(coef[3]) if self.fit_intercept else 0.0
        self.orders_ = Orders(*(float(c) for c in self.coef_))
        self.residual_ = float(np.sqrt(np.mean((F @ coef - target) ** 2)))
        full = F.shape[1]
        self.condition_ = float(sv[0] / sv[-1]) if rank == full and sv[-1] > 0 else np.inf
        self.n_samples_used_ = int(keep.sum())
        return self

    def predict(self, X):
        check_is_fitted(self, "coef_")
        X = check_array(X, dtype=float)
        F = _design(X[:, 0], X[:, 1])
        return np.exp(F @ self.coef_ + self.intercept_)


class OrderFit(NamedTuple):
    orders: Orders
    residual: float
    condition: float

    @property
    def reliable(self):
        return bool(np.isfinite(self.condition))


def _magnitudes(a: SymbolFamily, grid: SampleGrid):
    mag = np.abs(grid.evaluate(a))
    zmax = mag.max(axis=0, keepdims=True)
    zero = (mag == 0) | (mag <= ZERO_FRACTION * zmax)
    return mag, zero


def fit_orders(a: SymbolFamily, grid: SampleGrid | None = None, min_nonzero=0.9) -> OrderFit:
    """Fit the triple orders of ``a`` over the sample grid.

    Grid points where ``|a|`` vanishes (relative to its z-maximum) are
    excluded; at least ``min_nonzero`` of the points must survive.
    """
    grid = grid or SampleGrid.default()
    mag, zero = _magnitudes(a, grid)
    if (~zero).mean() < min_nonzero:
        raise DomainError(f"{a.name}: fewer than {min_nonzero:.0%} of grid points are nonzero")
    r, h = grid.radius_h()
    X = np.column_stack([np.broadcast_to(r, mag.shape).ravel(),
                         np.broadcast_to(h, mag.shape).ravel()])
    y = np.where(zero, 0.0, mag).ravel()
    est = OrderEstimator().fit(X, y)
    return OrderFit(est.orders_, est.residual_, est.condition_)


def _stirling2(n, k):
    table = [[0] * (n + 1) for _ in range(n + 1)]
    table[0][0] = 1
    for i in range(1, n + 1):
        for j in range(1, i + 1):
            table[i][j] = j * table[i - 1][j] + table[i - 1][j - 1]
    return table[n][k]


def _central_weights(p):
    """Central finite-difference weights for the ``p``-th derivative on offsets ``-P..P``."""
    P = max(1, (p + 1) // 2)
    offsets = np.arange(-P, P + 1)
    V = np.vander(offsets, increasing=True).T.astype(float)
    rhs = np.zeros(len(offsets))
    rhs[p] = float(np.prod(np.arange(1, p + 1)))
    return offsets, np.linalg.solve(V, rhs)


def _radial_derivative(f: SymbolFamily, z, zeta, h, q, use_jets):
    """``(zeta . d/dzeta)^q f`` evaluated at the mesh points."""
    if q == 0:
        return f(z, zeta, h)
    if use_jets:
        jets = f.taylor(z, zeta, h, q)
        zeta1 = zeta[0]
        out = np.zeros(jets.shape[1:], dtype=complex)
        for j in range(1, q + 1):
            fact = float(np.prod(np.arange(1, j + 1)))
            out = out + _stirling2(q, j) * zeta1 ** j * fact * jets[j]
        return out
    offsets, weights = _central_weights(q)
    step = 1e-3 if q <= 2 else 1e-2
    out = 0.0
    for o, w in zip(offsets, weights):
        if w != 0:
            out = out + w * f(z, zeta * np.exp(o * step), h)
    return out / step ** q


def seminorm(a: SymbolFamily, o: Orders, derivative_budget=2, grid: SampleGrid | None = None):
    """Grid supremum of ``|V_1 ... V_N a| / face_weight(o)`` over words of length ``<= budget``.

    The fields are ``h D_h`` (central difference in ``log h``), ``zeta . d_zeta``
    (central difference in ``log |zeta|`` along rays, or exact from jets when
    available) and ``D_z`` (exact spectral differentiation). All three commute,
    so words are enumerated by their multiplicities.
    """
    grid = grid or SampleGrid.default()
    if derivative_budget > 2 and not a.has_jets:
        raise CapabilityError("derivative budgets above 2 need analytic zeta-derivatives")
    use_jets = a.has_jets and grid.d == 1
    z, zeta, h = grid.mesh()
    r, hh = grid.radius_h()
    logw = log_face_weight(o, r, hh)
    best = 0.0
    for p in range(derivative_budget + 1):
        for q in range(derivative_budget + 1 - p):
            for s in range(derivative_budget + 1 - p - q):
                f = a.dz(s) if s else a
                if p == 0:
                    vals = _radial_derivative(f, z, zeta, h, q, use_jets)
                else:
                    offsets, weights = _central_weights(p)
                    step = 1e-3 if p <= 2 else 1e-2
                    vals = 0.0
                    for off, w in zip(offsets, weights):
                        if w != 0:
                            vals = vals + w * _radial_derivative(
                                f, z, zeta, h * np.exp(off * step), q, use_jets)
                    vals = vals / step ** p
                ratio = np.abs(np.broadcast_to(vals, grid.shape)) * np.exp(-logw)
                best = max(best, float(np.max(ratio)))
    return best


def principal_residual_orders(a: SymbolFamily, a2: SymbolFamily, grid: SampleGrid | None = None):
    """Fitted orders of ``a - a2``; ``(-inf, -inf, -inf)`` if the difference vanishes."""
    grid = grid or SampleGrid.default()
    diff = a - a2
    scale = max(float(np.max(np.abs(grid.evaluate(a)))), float(np.max(np.abs(grid.evaluate(a2)))))
    dvals = np.abs(grid.evaluate(diff))
    if np.all(dvals <= 1e-14 * scale):
        return Orders(-np.inf, -np.inf, -np.inf)
    return fit_orders(diff, grid).orders


def same_principal_symbol(a: SymbolFamily, a2: SymbolFamily, grid: SampleGrid | None = None,
                          tol=0.15):
    """Whether ``a`` and ``a2`` agree modulo ``S^{m-1, l-1, k}`` (first two slots within ``tol``)."""
    o = a.orders if a.orders is not None else a2.orders
    if o is None:
        raise DomainError("declared orders are needed to compare principal symbols")
    fitted = principal_residual_orders(a, a2, grid)
    return bool(fitted.m <= o.m - 1 + tol and fitted.l <= o.l - 1 + tol)
