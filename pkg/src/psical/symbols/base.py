"""Symbol families, order triples, sample grids and the built-in symbol library.

Evaluation convention
---------------------
A symbol is called as ``a(z, zeta, h)`` where ``z`` and ``zeta`` carry a
*leading* axis of length ``d`` (the dimension) and otherwise broadcast
against each other and against ``h``. For ``d = 1`` the helper
:meth:`SymbolFamily.at` accepts plain arrays.

Frequency derivatives are supplied as Taylor jets (see :mod:`psical._jets`):
``a.taylor(z, zeta, h, q)[j] == (d/dzeta)^j a / j!`` for ``j <= q``. Only
one-dimensional symbols carry jets.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .. import _jets
from ..exceptions import CapabilityError, DomainError

__all__ = [
    "Orders",
    "ClassicalOrders",
    "SymbolFamily",
    "SampleGrid",
    "trig_interpolate",
    "constant",
    "frequency",
    "japanese_bracket",
    "laplacian",
    "polynomial",
    "plane_wave",
    "cosine",
    "sine",
    "perturbed",
    "monomial",
    "sc_spectral",
    "BUILTINS",
    "make_symbol",
]


@dataclass(frozen=True)
class Orders:
    """Triple orders ``(m, l, k)``: differential, semiclassical, parameter."""

    m: float
    l: float
    k: float

    def __iter__(self):
        return iter((self.m, self.l, self.k))

    def __add__(self, other):
        return Orders(*(a + b for a, b in zip(self, other)))

    def __sub__(self, other):
        return Orders(*(a - b for a, b in zip(self, other)))

    def __neg__(self):
        return Orders(-self.m, -self.l, -self.k)

    def astuple(self):
        return (self.m, self.l, self.k)

    def componentwise_max(self, other):
        return Orders(*(max(a, b) for a, b in zip(self, other)))


@dataclass(frozen=True)
class ClassicalOrders:
    """Orders ``(m, k)`` of an h-dependent family of standard symbols."""

    m: float
    k: float


def _sum_orders(a, b):
    if a is None or b is None:
        return None
    return a.componentwise_max(b)


def _prod_orders(a, b):
    if a is None or b is None:
        return None
    return a + b


def _bandwidth_sum(a, b):
    if a is None or b is None:
        return None
    return max(a, b)


def _bandwidth_prod(a, b):
    if a is None or b is None:
        return None
    return a + b


def trig_interpolate(grid_values, z, alpha=0, lead=0):
    """Evaluate ``D_z^alpha`` of the trigonometric interpolant of equispaced samples.

    ``grid_values`` has shape ``(*lead_shape, nz, *S)`` with samples at
    ``2 pi j / nz``; ``z`` has a leading axis of length one. The result has
    shape ``(*lead_shape, *broadcast(z.shape[1:], S))``.
    """
    grid_values = np.asarray(grid_values)
    nz = grid_values.shape[lead]
    coef = np.fft.fft(grid_values, axis=lead) / nz
    freqs = np.rint(np.fft.fftfreq(nz, d=1.0 / nz)).astype(int)
    zz = np.asarray(z, dtype=float)[0]
    tail = grid_values.shape[lead + 1:]
    lead_shape = grid_values.shape[:lead]
    out_shape = np.broadcast_shapes(zz.shape, tail)
    expand = (1,) * (len(out_shape) - len(tail))
    out = np.zeros(lead_shape + out_shape, dtype=complex)
    for j, n in enumerate(freqs):
        if alpha and n == 0:
            continue
        c = np.take(coef, j, axis=lead).reshape(lead_shape + expand + tail)
        out += c * (float(n) ** alpha) * np.exp(1j * n * zz)
    return out


@dataclass(frozen=True, eq=False)
class SymbolFamily:
    """An h-dependent symbol ``a(z, zeta, h)`` with declared triple orders.

    Parameters
    ----------
    func : callable
        ``func(z, zeta, h)``, vectorized, following the module convention.
    orders : Orders or None
        Declared class ``S^{m,l,k}`` (``None`` if unknown).
    z_bandwidth : int or None
        Degree of ``a`` as a trigonometric polynomial in ``z``. ``None`` marks
        a symbol that is analytic but not band-limited in ``z``; spectral
        operations then use ``nz`` internal samples.
    jet : callable or None
        ``jet(z, zeta, h, order)`` returning Taylor coefficients in ``zeta``.
    """

    func: Callable
    orders: Optional[Orders] = None
    z_bandwidth: Optional[int] = 0
    name: str = "symbol"
    jet: Optional[Callable] = None
    nz: int = 64
    meta: dict = field(default_factory=dict)

    def __call__(self, z, zeta, h):
        z = np.asarray(z, dtype=float)
        zeta = np.asarray(zeta, dtype=float)
        out = np.asarray(self.func(z, zeta, h), dtype=complex)
        shape = np.broadcast_shapes(z.shape[1:], zeta.shape[1:], np.shape(h))
        return np.broadcast_to(out, shape)

    def at(self, z, zeta, h):
        """One-dimensional convenience: ``z`` and ``zeta`` without the leading axis."""
        return self(np.asarray(z, dtype=float)[None], np.asarray(zeta, dtype=float)[None], h)

    @property
    def has_jets(self):
        return self.jet is not None

    def taylor(self, z, zeta, h, order):
        z = np.asarray(z, dtype=float)
        zeta = np.asarray(zeta, dtype=float)
        shape = np.broadcast_shapes(z.shape[1:], zeta.shape[1:], np.shape(h))
        if order == 0 and self.jet is None:
            return self(z, zeta, h)[None]
        if self.jet is None:
            raise CapabilityError(f"symbol {self.name!r} supplies no zeta-derivatives")
        out = np.asarray(self.jet(z, zeta, h, order), dtype=complex)
        return np.broadcast_to(out, (order + 1,) + shape)

    def z_grid_size(self):
        if self.z_bandwidth is None:
            return self.nz
        return 2 * self.z_bandwidth + 2

    def grid_values(self, zeta, h, order=None):
        """Samples on the internal equispaced z-grid.

        Returns an array of shape ``(nz, *S)`` (values) or
        ``(order + 1, nz, *S)`` (jets), ``S`` being the broadcast shape of
        ``zeta`` (without its leading axis) and ``h``.
        """
        zeta = np.asarray(zeta, dtype=float)
        h = np.asarray(h, dtype=float)
        shape = np.broadcast_shapes(zeta.shape[1:], h.shape)
        nz = self.z_grid_size()
        zg = (2 * np.pi * np.arange(nz) / nz).reshape((1, nz) + (1,) * len(shape))
        zg = np.broadcast_to(zg, (zeta.shape[0], nz) + (1,) * len(shape))
        zeta_b = np.broadcast_to(zeta, (zeta.shape[0],) + shape)[:, None]
        h_b = np.broadcast_to(h, shape)[None]
        if order is None:
            return self(zg, zeta_b, h_b)
        return self.taylor(zg, zeta_b, h_b, order)

    def dz(self, alpha):
        """The symbol ``D_z^alpha a`` (exact spectral differentiation, d = 1)."""
        if alpha == 0:
            return self
        if self.z_bandwidth == 0:
            return constant(0.0).renamed(f"D_z^{alpha}({self.name})")
        parent = self

        def func(z, zeta, h):
            return trig_interpolate(parent.grid_values(zeta, h), z, alpha)

        jet = None
        if self.jet is not None:
            def jet(z, zeta, h, order):
                return trig_interpolate(parent.grid_values(zeta, h, order), z, alpha, lead=1)

        return SymbolFamily(func, self.orders, self.z_bandwidth, f"D_z^{alpha}({self.name})",
                            jet, self.nz)

    def renamed(self, name):
        return SymbolFamily(self.func, self.orders, self.z_bandwidth, name, self.jet, self.nz,
                            dict(self.meta))

    def with_orders(self, orders):
        return SymbolFamily(self.func, orders, self.z_bandwidth, self.name, self.jet, self.nz,
                            dict(self.meta))

    # arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, SymbolFamily):
            return other
        if np.isscalar(other):
            return constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self, other

        def func(z, zeta, h):
            return a(z, zeta, h) + b(z, zeta, h)

        jet = None
        if a.jet is not None and b.jet is not None:
            def jet(z, zeta, h, order):
                return a.taylor(z, zeta, h, order) + b.taylor(z, zeta, h, order)

        return SymbolFamily(func, _sum_orders(a.orders, b.orders),
                            _bandwidth_sum(a.z_bandwidth, b.z_bandwidth),
                            f"({a.name} + {b.name})", jet, max(a.nz, b.nz))

    __radd__ = __add__

    def __neg__(self):
        return self * -1.0

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return (self + (-other)).renamed(f"({self.name} - {other.name})")

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if np.isscalar(other):
            c, a = other, self

            def func(z, zeta, h):
                return c * a(z, zeta, h)

            jet = None
            if a.jet is not None:
                def jet(z, zeta, h, order):
                    return c * a.taylor(z, zeta, h, order)

            orders = a.orders if c != 0 else None
            return SymbolFamily(func, orders, a.z_bandwidth, f"{c}*{a.name}", jet, a.nz)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self, other

        def func(z, zeta, h):
            return a(z, zeta, h) * b(z, zeta, h)

        jet = None
        if a.jet is not None and b.jet is not None:
            def jet(z, zeta, h, order):
                return _jets.mul(a.taylor(z, zeta, h, order), b.taylor(z, zeta, h, order))

        return SymbolFamily(func, _prod_orders(a.orders, b.orders),
                            _bandwidth_prod(a.z_bandwidth, b.z_bandwidth),
                            f"{a.name}*{b.name}", jet, max(a.nz, b.nz))

    __rmul__ = __mul__

    def __truediv__(self, c):
        if not np.isscalar(c):
            return NotImplemented
        return self * (1.0 / c)


def _r2(zeta):
    return np.sum(np.square(zeta), axis=0)


def _require_1d(zeta):
    if zeta.shape[0] != 1:
        raise CapabilityError("zeta-jets are only available in dimension 1")
    return zeta[0]


def _h_shape(z, zeta, h):
    return np.broadcast_shapes(z.shape[1:], zeta.shape[1:], np.shape(h))


# built-in library -----------------------------------------------------------

def constant(c=1.0):
    def func(z, zeta, h):
        return np.full(_h_shape(z, zeta, h), c, dtype=complex)

    def jet(z, zeta, h, order):
        return _jets.constant(np.full(_h_shape(z, zeta, h), c, dtype=complex), order)

    orders = Orders(0.0, 0.0, 0.0) if c != 0 else None
    return SymbolFamily(func, orders, 0, f"{c}", jet)


def frequency():
    """``a = zeta`` in dimension one (the symbol of ``D_z``)."""
    def func(z, zeta, h):
        return np.broadcast_to(_require_1d(zeta), _h_shape(z, zeta, h))

    def jet(z, zeta, h, order):
        zeta1 = np.broadcast_to(_require_1d(zeta), _h_shape(z, zeta, h))
        return _jets.variable(zeta1, order)

    return SymbolFamily(func, Orders(1.0, 1.0, 0.0), 0, "zeta", jet)


def _bracket_jet(zeta1, order, p):
    w = np.zeros((order + 1,) + zeta1.shape)
    w[0] = 1.0 + zeta1 ** 2
    if order >= 1:
        w[1] = 2.0 * zeta1
    if order >= 2:
        w[2] = 1.0
    return _jets.power(w, p)


def japanese_bracket(m=1.0):
    """``<zeta>^m = (1 + |zeta|^2)^{m/2}``."""
    def func(z, zeta, h):
        return np.broadcast_to((1.0 + _r2(zeta)) ** (m / 2.0), _h_shape(z, zeta, h))

    def jet(z, zeta, h, order):
        zeta1 = np.broadcast_to(_require_1d(zeta), _h_shape(z, zeta, h))
        return _bracket_jet(zeta1, order, m / 2.0)

    return SymbolFamily(func, Orders(m, m, 0.0), 0, f"<zeta>^{m:g}", jet)


def polynomial(coeffs):
    """``sum_j coeffs[j] zeta^j`` in dimension one."""
    coeffs = [complex(c) for c in coeffs]
    deg = max((j for j, c in enumerate(coeffs) if c != 0), default=0)

    def func(z, zeta, h):
        x = np.broadcast_to(_require_1d(zeta), _h_shape(z, zeta, h))
        return np.polynomial.polynomial.polyval(x, coeffs)

    def jet(z, zeta, h, order):
        x = np.broadcast_to(_require_1d(zeta), _h_shape(z, zeta, h))
        out = np.zeros((order + 1,) + x.shape, dtype=complex)
        c = np.array(coeffs)
        for j in range(order + 1):
            out[j] = np.polynomial.polynomial.polyval(x, c)
            c = np.polynomial.polynomial.polyder(c) / (j + 1) if len(c) > 1 else np.zeros(1)
        return out

    return SymbolFamily(func, Orders(deg, deg, 0.0), 0, f"poly{tuple(coeffs)}", jet)


def laplacian():
    """``|zeta|^2``, the symbol of the flat Laplacian."""
    def func(z, zeta, h):
        return np.broadcast_to(_r2(zeta), _h_shape(z, zeta, h))

    def jet(z, zeta, h, order):
        x = np.broadcast_to(_require_1d(zeta), _h_shape(z, zeta, h))
        out = np.zeros((order + 1,) + x.shape)
        out[0] = x ** 2
        if order >= 1:
            out[1] = 2 * x
        if order >= 2:
            out[2] = 1.0
        return out

    return SymbolFamily(func, Orders(2.0, 2.0, 0.0), 0, "|zeta|^2", jet)


def plane_wave(n=1):
    """``exp(i n z_1)``."""
    def func(z, zeta, h):
        return np.broadcast_to(np.exp(1j * n * z[0]), _h_shape(z, zeta, h))

    def jet(z, zeta, h, order):
        return _jets.constant(func(z, zeta, h), order)

    return SymbolFamily(func, Orders(0.0, 0.0, 0.0), abs(int(n)), f"exp({n}iz)", jet)


def cosine(n=1):
    return ((plane_wave(n) + plane_wave(-n)) * 0.5).renamed(f"cos({n}z)")


def sine(n=1):
    return ((plane_wave(n) - plane_wave(-n)) * (-0.5j)).renamed(f"sin({n}z)")


def perturbed(m=1.0, eps=0.3):
    """``<zeta>^m (1 + eps sin z)``."""
    out = japanese_bracket(m) * (1.0 + eps * sine(1))
    return out.with_orders(Orders(m, m, 0.0)).renamed(f"<zeta>^{m:g}(1+{eps:g}sin z)")


def monomial(m=0.0, k=0.0):
    """``<zeta>^m h^{-k}``, a member of ``S^{m, m+k, k}``."""
    base = japanese_bracket(m)

    def func(z, zeta, h):
        return base(z, zeta, h) * np.asarray(h, dtype=float) ** (-k)

    def jet(z, zeta, h, order):
        return base.taylor(z, zeta, h, order) * np.asarray(h, dtype=float) ** (-k)

    return SymbolFamily(func, Orders(m, m + k, k), 0, f"<zeta>^{m:g} h^{-k:g}", jet)


def sc_spectral(base, m, lam):
    """The spectral family ``base - lam / h^m`` of an h-independent symbol."""
    lam = complex(lam)

    def shifted(h):
        h = np.asarray(h, dtype=float)
        if np.any(h == 0):
            raise DomainError("the spectral family is defined for h > 0 only")
        return lam / h ** m

    def func(z, zeta, h):
        return base(z, zeta, h) - shifted(h)

    jet = None
    if base.jet is not None:
        def jet(z, zeta, h, order):
            out = np.array(base.taylor(z, zeta, h, order), dtype=complex)
            out[0] = out[0] - shifted(h)
            return out

    fam = SymbolFamily(func, Orders(m, m, m), base.z_bandwidth,
                       f"{base.name} - ({lam:g})/h^{m:g}", jet, base.nz)
    fam.meta.update(base=base, lam=lam, m=m)
    return fam


BUILTINS = {
    "constant": lambda c=1.0: constant(c),
    "frequency": lambda: frequency(),
    "japanese_bracket": lambda m=1.0: japanese_bracket(m),
    "laplacian": lambda: laplacian(),
    "perturbed": lambda m=1.0, eps=0.3: perturbed(m, eps),
    "monomial": lambda m=0.0, k=0.0: monomial(m, k),
    "plane_wave": lambda n=1: plane_wave(int(n)),
}


def make_symbol(name, **params):
    """Instantiate a built-in symbol by name (the names used in configs)."""
    try:
        factory = BUILTINS[name]
    except KeyError:
        raise DomainError(f"unknown built-in symbol {name!r}; choose from {sorted(BUILTINS)}")
    return factory(**params)


# sample grids -----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SampleGrid:
    """Log-spaced phase-space samples used by the empirical order and seminorm tools.

    ``directions`` has shape ``(d, ndir)`` (unit vectors), ``z`` has shape
    ``(d, nzs)``. Evaluated fields have shape ``(nzs, ndir, nr, nh)``.
    """

    h: np.ndarray
    radii: np.ndarray
    directions: np.ndarray
    z: np.ndarray

    def __post_init__(self):
        h = np.asarray(self.h, dtype=float)
        if h.size == 0 or np.any(h <= 0):
            raise DomainError("sample h values must be nonempty and strictly positive")
        if np.asarray(self.radii).size == 0:
            raise DomainError("sample radii must be nonempty")

    @classmethod
    def default(cls, d=1, h_exponents=range(0, 13), r_exponents=range(0, 15), nz=8):
        h = 2.0 ** -np.asarray(list(h_exponents), dtype=float)
        radii = 2.0 ** np.asarray(list(r_exponents), dtype=float)
        # half-step offsets keep sin z and cos z away from their zeros
        t = 2 * np.pi * (np.arange(nz) + 0.5) / nz
        if d == 1:
            directions = np.array([[1.0, -1.0]])
            z = t[None]
        elif d == 2:
            ang = np.pi / 8 + np.pi / 2 * np.arange(4)
            directions = np.stack([np.cos(ang), np.sin(ang)])
            z = np.stack([t, np.roll(t, 3)])
        else:
            raise DomainError("only d = 1 and d = 2 are supported")
        return cls(h, radii, directions, z)

    @property
    def d(self):
        return self.directions.shape[0]

    @property
    def shape(self):
        return (self.z.shape[1], self.directions.shape[1], len(self.radii), len(self.h))

    def mesh(self, h=None, radii=None):
        """Broadcastable ``(z, zeta, h)`` arrays for symbol evaluation."""
        h = self.h if h is None else np.asarray(h, dtype=float)
        radii = self.radii if radii is None else np.asarray(radii, dtype=float)
        d = self.d
        z = self.z.reshape(d, -1, 1, 1, 1)
        zeta = self.directions.reshape(d, 1, -1, 1, 1) * radii.reshape(1, 1, 1, -1, 1)
        hh = h.reshape(1, 1, 1, -1)
        return z, zeta, hh

    def radius_h(self):
        """``(|zeta|, h)`` arrays of shape ``(nr, nh)``."""
        return np.meshgrid(self.radii, self.h, indexing="ij")

    def evaluate(self, a):
        z, zeta, h = self.mesh()
        return np.broadcast_to(a(z, zeta, h), self.shape)

    def near_boundary(self, threshold=0.25):
        from ..geometry import defining_functions

        r, h = self.radius_h()
        _, r_inf, r_ff, _ = defining_functions(r, h)
        return np.minimum(r_inf, r_ff) <= threshold
