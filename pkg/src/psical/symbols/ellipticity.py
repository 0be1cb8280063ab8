"""Ellipticity, wave front indicators, normal operators and full ellipticity."""
from __future__ import annotations

import numpy as np

from ..exceptions import DomainError, LimitError
from ..geometry import defining_functions, log_face_weight
from .base import Orders, SampleGrid, SymbolFamily

__all__ = [
    "elliptic_margin",
    "is_elliptic",
    "wavefront_indicator",
    "normal_operator_symbol",
    "is_fully_elliptic",
]

DEFAULT_THRESHOLD = 1e-3
# absolute floor (relative to the grid maximum) below which |a| counts as zero
ZERO_ABS = 1e-14
# two small parameter values used to certify the h -> 0 limit
_H_LIMIT = (2.0 ** -40, 2.0 ** -50)


def _log_weight(o, r, h, weight):
    if weight == "class":
        return log_face_weight(o, r, h)
    if weight == "displayed":
        # <zeta>^m h^{-k}, equivalent to the class weight only when l = m + k
        return 0.5 * o.m * np.log1p(np.square(r)) - o.k * np.log(h)
    raise ValueError(f"unknown ellipticity weight {weight!r}")


def elliptic_margin(a: SymbolFamily, o: Orders, grid: SampleGrid | None = None,
                    weight="class", threshold=0.25):
    """Infimum of ``|a| / weight`` over the near-boundary grid points (all z, all rays)."""
    grid = grid or SampleGrid.default()
    mag = np.abs(grid.evaluate(a)).min(axis=(0, 1))
    r, h = grid.radius_h()
    ratio = mag * np.exp(-_log_weight(o, r, h, weight))
    mask = grid.near_boundary(threshold)
    if not np.any(mask):
        return np.inf
    return float(ratio[mask].min())


def is_elliptic(a: SymbolFamily, o: Orders, grid: SampleGrid | None = None,
                threshold=DEFAULT_THRESHOLD, weight="class"):
    """Return ``(flag, margin)``; elliptic iff the near-boundary margin exceeds ``threshold``.

    ``weight="class"`` compares against ``rho_h_inf^{-m} rho_h_ff^{-l} rho_h_0^{-k}``;
    ``weight="displayed"`` against ``<zeta>^m h^{-k}``.
    """
    margin = elliptic_margin(a, o, grid, weight)
    return bool(margin > threshold), margin


def wavefront_indicator(a: SymbolFamily, o: Orders, grid: SampleGrid | None = None,
                        probe_depth=1):
    """Boolean ``(nr, nh)`` field, ``True`` where the point lies outside the wave front set.

    At each near-boundary point the local decay order of ``sup_z |a| / weight``
    is the least-squares slope of its logarithm against ``log(rho_h_inf rho_h_ff)``
    over the neighbouring 3x3 block of the grid. A point is outside the wave
    front set when that order exceeds ``probe_depth`` (hence every extra
    order ``1..probe_depth``) or when ``a`` vanishes there. Interior points
    are never in the wave front set.
    """
    if probe_depth < 1:
        raise DomainError("probe_depth must be at least 1")
    grid = grid or SampleGrid.default()
    mag = np.abs(grid.evaluate(a)).max(axis=(0, 1))
    r, h = grid.radius_h()
    _, r_inf, r_ff, _ = defining_functions(r, h)
    x = np.log(r_inf * r_ff)
    scale = mag.max()
    zero = mag <= ZERO_ABS * (scale if scale > 0 else 1.0)
    with np.errstate(divide="ignore"):
        y = np.log(np.where(zero, 1.0, mag)) - log_face_weight(o, r, h)
    nr, nh = mag.shape
    outside = ~grid.near_boundary()
    for i in range(nr):
        for j in range(nh):
            if outside[i, j]:
                continue
            if zero[i, j]:
                outside[i, j] = True
                continue
            sl = (slice(max(i - 1, 0), i + 2), slice(max(j - 1, 0), j + 2))
            keep = ~zero[sl]
            xs, ys = x[sl][keep], y[sl][keep]
            if xs.size < 2 or np.ptp(xs) == 0:
                continue
            slope = np.polyfit(xs, ys, 1)[0]
            outside[i, j] = slope > probe_depth
    return outside


def normal_operator_symbol(a: SymbolFamily, k, grid: SampleGrid | None = None, rtol=1e-6):
    """The ``h -> 0`` limit ``n(z, zeta)`` of ``h^k a(z, zeta, h)``.

    The limit is certified on the sample grid by comparing the values at
    ``h = 2^-40`` and ``h = 2^-50``; :class:`LimitError` is raised when they
    disagree beyond ``rtol``.
    """
    grid = grid or SampleGrid.default()
    z, zeta, _ = grid.mesh()
    h1, h2 = _H_LIMIT
    v1 = h1 ** k * a(z, zeta, h1)
    v2 = h2 ** k * a(z, zeta, h2)
    if not (np.all(np.isfinite(v1)) and np.all(np.isfinite(v2))):
        raise LimitError(f"h^{k:g} {a.name} is not finite near h = 0")
    scale = max(float(np.max(np.abs(v2))), 1.0)
    if np.max(np.abs(v1 - v2)) > rtol * scale:
        raise LimitError(f"h^{k:g} {a.name} has no h -> 0 limit on the sample grid")

    def func(zz, zt, h):
        return h2 ** k * a(zz, zt, h2)

    jet = None
    if a.has_jets:
        def jet(zz, zt, h, order):
            return h2 ** k * a.taylor(zz, zt, h2, order)

    orders = None
    if a.orders is not None:
        spent = a.orders.l - k
        orders = Orders(spent, spent, 0.0)
    return SymbolFamily(func, orders, a.z_bandwidth, f"N({a.name})", jet, a.nz)


def is_fully_elliptic(a: SymbolFamily, o: Orders, grid: SampleGrid | None = None, spec=None,
                      threshold=DEFAULT_THRESHOLD, weight="class"):
    """Return ``(flag, margin, normal_margin)``.

    ``normal_margin`` is the smallest singular value of the quantized normal
    operator ``normal_operator_symbol(a, o.k)`` on ``spec`` (a
    :class:`psical.quantize.GridSpec`, default ``N = 64``).
    """
    from ..quantize import GridSpec, assemble

    spec = spec or GridSpec(d=1, N=64)
    elliptic, margin = is_elliptic(a, o, grid, threshold, weight)
    n = normal_operator_symbol(a, o.k, grid)
    mat = assemble(n, 1.0, spec).entries
    normal_margin = float(np.linalg.svd(mat, compute_uv=False).min())
    return bool(elliptic and normal_margin >= threshold), margin, normal_margin
