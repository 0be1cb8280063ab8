"""Left quantization on the torus as dense frequency-basis matrices.

For a symbol ``a(z, zeta, h)`` the operator ``Op(a)`` acts on Fourier
coefficients by

    Op(a)u^(eta) = sum_zeta a^(eta - zeta; zeta, h) u^(zeta),

where ``a^(n; zeta, h)`` are the Fourier coefficients of ``z -> a(z, zeta, h)``.
Frequencies are the integer vectors with components in ``[-N/2, N/2)``,
ordered increasingly (row-major for ``d = 2``).
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .exceptions import AliasingError, DomainError, NumericError
from .symbols.base import Orders, SymbolFamily

__all__ = [
    "GridSpec",
    "OperatorMatrix",
    "assemble",
    "scale_symbol",
    "assemble_semiclassical",
    "apply",
    "adjoint",
    "symmetrize",
    "write_csv",
    "read_csv",
]

# relative size allowed for Fourier tails of symbols without a declared z-bandwidth
ALIAS_TOL = 1e-12


def _default_h_grid():
    return tuple(2.0 ** -np.arange(1, 9))


@dataclass(frozen=True)
class GridSpec:
    """Discretization: dimension ``d``, ``N`` modes per dimension and the h-grid."""

    d: int = 1
    N: int = 256
    h_grid: tuple = field(default_factory=_default_h_grid)

    def __post_init__(self):
        if self.d not in (1, 2):
            raise DomainError("only d = 1 and d = 2 are supported")
        if self.N < 2 or self.N % 2:
            raise DomainError(f"N must be even and at least 2, got {self.N}")
        object.__setattr__(self, "h_grid", tuple(float(h) for h in self.h_grid))

    @property
    def size(self):
        return self.N ** self.d

    @property
    def modes(self):
        return np.arange(-self.N // 2, self.N // 2)

    @property
    def frequencies(self):
        """Integer frequencies, shape ``(size, d)``."""
        return np.array(list(product(self.modes, repeat=self.d)), dtype=float)

    @property
    def frequency_norms(self):
        return np.sqrt(np.sum(self.frequencies ** 2, axis=1))

    @property
    def z_points(self):
        """Equispaced torus points, shape ``(size, d)``."""
        t = 2 * np.pi * np.arange(self.N) / self.N
        return np.array(list(product(t, repeat=self.d)))

    def index(self, zeta):
        """Position of the integer frequency ``zeta`` in the basis ordering."""
        zeta = np.atleast_1d(np.asarray(zeta, dtype=int))
        shifted = zeta + self.N // 2
        if zeta.size != self.d or np.any(shifted < 0) or np.any(shifted >= self.N):
            raise DomainError(f"frequency {zeta.tolist()} is not on the grid")
        return int(np.ravel_multi_index(tuple(shifted), (self.N,) * self.d))

    def delta(self, zeta):
        """Coefficient vector of the single mode ``e^{i zeta z}``."""
        u = np.zeros(self.size, dtype=complex)
        u[self.index(zeta)] = 1.0
        return u


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """Dense matrix ``entries[eta, zeta]`` of an operator at a fixed ``h``."""

    entries: np.ndarray
    h: float
    grid: GridSpec
    orders: Orders | None = None
    provenance: str = ""

    @property
    def shape(self):
        return self.entries.shape

    def replace(self, entries, provenance=None, orders="keep"):
        return OperatorMatrix(np.asarray(entries), self.h, self.grid,
                              self.orders if orders == "keep" else orders,
                              self.provenance if provenance is None else provenance)


def _check_bandwidth(a: SymbolFamily, g: GridSpec):
    K = a.z_bandwidth
    if K is not None and 2 * K >= g.N:
        raise AliasingError(f"z-bandwidth {K} of {a.name} needs N > {2 * K}, got N = {g.N}")


def _offsets(g: GridSpec):
    """Integer offsets ``eta - zeta`` as an array of shape ``(size, size, d)``."""
    f = g.frequencies
    return f[:, None, :] - f[None, :, :]


def _band_mask(a: SymbolFamily, g: GridSpec):
    n = np.abs(_offsets(g))
    if a.z_bandwidth is None:
        return np.all(n < g.N / 2, axis=-1)
    return np.all(n <= a.z_bandwidth, axis=-1)


def _samples(a: SymbolFamily, h, g: GridSpec):
    """``a(z_j, zeta, h)`` for all grid points ``z_j`` (rows) and frequencies (columns)."""
    z = g.z_points.T[:, :, None]
    zeta = g.frequencies.T[:, None, :]
    vals = np.asarray(a(z, zeta, h), dtype=complex)
    vals = np.broadcast_to(vals, (g.size, g.size))
    if not np.all(np.isfinite(vals)):
        raise NumericError(f"{a.name} is not finite on the grid at h = {h}")
    return vals


def assemble(a: SymbolFamily, h, g: GridSpec) -> OperatorMatrix:
    """Dense matrix of ``Op(a)`` at parameter ``h`` (coefficients by an N-point FFT)."""
    _check_bandwidth(a, g)
    vals = _samples(a, h, g)
    shape = (g.N,) * g.d
    cube = vals.reshape(shape + (g.size,))
    coef = np.fft.fftn(cube, axes=tuple(range(g.d))) / g.size
    if a.z_bandwidth is None:
        _check_tails(coef, g, a.name)
    n = _offsets(g).astype(int) % g.N
    idx = tuple(n[..., i] for i in range(g.d))
    cols = np.broadcast_to(np.arange(g.size)[None, :], (g.size, g.size))
    entries = coef[idx + (cols,)]
    entries = np.where(_band_mask(a, g), entries, 0.0)
    return OperatorMatrix(entries, float(h), g, a.orders, f"Op({a.name})")


def _check_tails(coef, g: GridSpec, name):
    freq = np.abs(np.rint(np.fft.fftfreq(g.N, 1.0 / g.N)))
    grids = np.meshgrid(*([freq] * g.d), indexing="ij")
    tail = np.zeros(grids[0].shape, dtype=bool)
    for q in grids:
        tail |= q >= g.N / 4
    mag = np.abs(coef)
    peak = mag.max()
    if peak > 0 and mag[tail].max() > ALIAS_TOL * peak:
        raise AliasingError(f"{name} is not resolved in z by N = {g.N}; declare a bandwidth or "
                            "refine the grid")


def scale_symbol(a: SymbolFamily) -> SymbolFamily:
    """The rescaled symbol ``a~(z, zeta, h) = a(z, h zeta, h)``.

    A semiclassical symbol of differential order ``m`` and parameter order
    ``k`` becomes a member of ``S^{m, k, k}``.
    """
    def func(z, zeta, h):
        h = np.asarray(h, dtype=float)
        return a(z, zeta * h, h)

    jet = None
    if a.has_jets:
        def jet(z, zeta, h, order):
            h = np.asarray(h, dtype=float)
            out = np.array(a.taylor(z, zeta * h, h, order))
            for j in range(1, order + 1):
                out[j] = out[j] * h ** j
            return out

    orders = None
    if a.orders is not None:
        orders = Orders(a.orders.m, a.orders.k, a.orders.k)
    return SymbolFamily(func, orders, a.z_bandwidth, f"{a.name}(z, h zeta)", jet, a.nz)


def _dft(g: GridSpec):
    """Matrix taking grid values to Fourier coefficients in the basis ordering."""
    phase = g.frequencies @ g.z_points.T
    return np.exp(-1j * phase) / g.size


def assemble_semiclassical(a: SymbolFamily, h, g: GridSpec) -> OperatorMatrix:
    """Dense matrix of ``Op_h(a)``, built from its Schwartz kernel on the z-grid.

    The kernel ``K(z_i, z_j) = N^{-d} sum_zeta e^{i (z_i - z_j) zeta} a(z_i, h zeta, h)``
    is transformed to the frequency basis by dense DFT matrices. This route
    does not use :func:`scale_symbol` or the FFT path of :func:`assemble`, so
    the two serve as checks on each other.
    """
    _check_bandwidth(a, g)
    z = g.z_points.T[:, :, None]
    zeta = g.frequencies.T[:, None, :]
    vals = np.broadcast_to(np.asarray(a(z, zeta * h, h), dtype=complex), (g.size, g.size))
    if not np.all(np.isfinite(vals)):
        raise NumericError(f"{a.name} is not finite on the grid at h = {h}")
    E = np.exp(1j * (g.z_points @ g.frequencies.T))
    kernel = (vals * E) @ E.conj().T / g.size
    F = _dft(g)
    entries = F @ kernel @ (F.conj().T * g.size)
    entries = np.where(_band_mask(a, g), entries, 0.0)
    orders = None if a.orders is None else Orders(a.orders.m, a.orders.k, a.orders.k)
    return OperatorMatrix(entries, float(h), g, orders, f"Op_h({a.name})")


def apply(A: OperatorMatrix, u):
    u = np.asarray(u)
    if u.shape != (A.shape[1],):
        raise DomainError(f"state of shape {u.shape} does not match operator {A.shape}")
    return A.entries @ u


def adjoint(A: OperatorMatrix) -> OperatorMatrix:
    return A.replace(A.entries.conj().T, f"({A.provenance})*")


def symmetrize(A: OperatorMatrix) -> OperatorMatrix:
    """Self-adjoint part ``(A + A*) / 2``."""
    return A.replace(0.5 * (A.entries + A.entries.conj().T), f"Re({A.provenance})")


def write_csv(A: OperatorMatrix, path):
    """Write all entries as ``row,col,value_re,value_im`` with 17 significant digits."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["row", "col", "value_re", "value_im"])
        for (i, j), v in np.ndenumerate(A.entries):
            w.writerow([i, j, f"{v.real:.17g}", f"{v.imag:.17g}"])


def read_csv(path, h, grid: GridSpec, orders=None, provenance="csv") -> OperatorMatrix:
    entries = np.zeros((grid.size, grid.size), dtype=complex)
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            entries[int(row["row"]), int(row["col"])] = complex(float(row["value_re"]),
                                                                float(row["value_im"]))
    return OperatorMatrix(entries, float(h), grid, orders, provenance)
