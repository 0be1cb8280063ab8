"""Composition, parametrices and the Neumann correction at the parameter boundary."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _jets
from ._numerics import loglog_slope, smallest_singular_value, spectral_norm
from .exceptions import AliasingError, CapabilityError, DomainError, NotEllipticError
from .quantize import OperatorMatrix
from .symbols.base import Orders, SymbolFamily, trig_interpolate
from .symbols.ellipticity import is_elliptic

__all__ = [
    "compose_exact",
    "compose_asymptotic",
    "compose_symbol_exact",
    "parametrix_symbol",
    "parametrix_remainder",
    "NeumannResult",
    "neumann_correct",
    "remainder_decay",
    "CONTRACTION",
]

# iterate mode requires ||B~ A - I|| below this
CONTRACTION = 0.9
# exact-solve mode inverts only where sigma_min(A) exceeds this
CONDITIONING_FLOOR = 1e-10


def _add_orders(a, b):
    return None if a is None or b is None else a + b


def compose_exact(A: OperatorMatrix, B: OperatorMatrix) -> OperatorMatrix:
    """The matrix product ``A B``; orders add."""
    if A.grid != B.grid or A.h != B.h:
        raise DomainError("composition needs operators on the same grid and at the same h")
    return OperatorMatrix(A.entries @ B.entries, A.h, A.grid, _add_orders(A.orders, B.orders),
                          f"{A.provenance} o {B.provenance}")


def compose_asymptotic(a: SymbolFamily, b: SymbolFamily, M: int) -> SymbolFamily:
    """Truncated left-reduction symbol ``sum_{alpha < M} (1/alpha!) d_zeta^alpha a  D_z^alpha b``."""
    if M < 1:
        raise DomainError("the expansion needs at least one term")
    if M > 1 and not a.has_jets:
        raise CapabilityError(f"{a.name} supplies no zeta-derivatives for the expansion")
    db = [b.dz(alpha) for alpha in range(M)]

    def func(z, zeta, h):
        ja = a.taylor(z, zeta, h, M - 1)
        out = 0
        for alpha in range(M):
            out = out + ja[alpha] * db[alpha](z, zeta, h)
        return out

    jet = None
    if a.has_jets and b.has_jets:
        def jet(z, zeta, h, order):
            ja = a.taylor(z, zeta, h, order + M - 1)
            out = 0
            for alpha in range(M):
                shifted = _jets.pad(_jets.shift(ja, alpha), order)
                out = out + _jets.mul(shifted, db[alpha].taylor(z, zeta, h, order))
            return out

    bw = None if a.z_bandwidth is None or b.z_bandwidth is None else a.z_bandwidth + b.z_bandwidth
    return SymbolFamily(func, _add_orders(a.orders, b.orders), bw, f"({a.name} # {b.name})_{M}",
                        jet, max(a.nz, b.nz))


def compose_symbol_exact(a: SymbolFamily, b: SymbolFamily) -> SymbolFamily:
    """Exact symbol of ``Op(a) Op(b)`` on the torus.

    Uses ``c(z, zeta) = sum_n b^(n; zeta) a(z, zeta + n) e^{i n z}``, valid
    whenever ``b`` is a trigonometric polynomial in ``z`` (for non-band-limited
    ``b`` its internal z-samples are used). On integer frequencies this is
    the symbol of the matrix product.
    """
    def func(z, zeta, h):
        zeta = np.asarray(zeta, dtype=float)
        vals = b.grid_values(zeta, h)
        nz = vals.shape[0]
        coef = np.fft.fft(vals, axis=0) / nz
        freqs = np.rint(np.fft.fftfreq(nz, 1.0 / nz)).astype(int)
        out = 0
        for j, n in enumerate(freqs):
            if nz % 2 == 0 and abs(n) == nz // 2:
                continue
            shift = np.zeros(zeta.shape[0])
            shift[0] = n
            out = out + coef[j] * a(z, zeta + shift.reshape((-1,) + (1,) * (zeta.ndim - 1)), h) \
                * np.exp(1j * n * np.asarray(z)[0])
        return out

    bw = None if a.z_bandwidth is None or b.z_bandwidth is None else a.z_bandwidth + b.z_bandwidth
    return SymbolFamily(func, _add_orders(a.orders, b.orders), bw, f"{a.name} # {b.name}",
                        None, max(a.nz, b.nz))


def _dz_grid(values, alpha, axis):
    """``D_z^alpha`` of equispaced periodic samples along ``axis``."""
    if alpha == 0:
        return values
    nz = values.shape[axis]
    coef = np.fft.fft(values, axis=axis)
    n = np.rint(np.fft.fftfreq(nz, 1.0 / nz))
    factor = n.astype(float) ** alpha
    if nz % 2 == 0 and alpha % 2:
        factor[nz // 2] = 0.0
    shape = [1] * values.ndim
    shape[axis] = nz
    return np.fft.ifft(coef * factor.reshape(shape), axis=axis)


def _parametrix_jets(a: SymbolFamily, J, side, zeta, h, order, nz):
    """Jets (to ``order``) of ``sum_{j<J} b_j`` on an ``nz``-point z-grid."""
    Q = J - 1 + order
    zeta = np.asarray(zeta, dtype=float)
    h = np.asarray(h, dtype=float)
    shape = np.broadcast_shapes(zeta.shape[1:], h.shape)
    zg = (2 * np.pi * np.arange(nz) / nz).reshape((1, nz) + (1,) * len(shape))
    zeta_b = np.broadcast_to(zeta, (1,) + shape)[:, None]
    ja = np.asarray(a.taylor(zg, zeta_b, np.broadcast_to(h, shape)[None], Q), dtype=complex)
    inv = _jets.reciprocal(ja)
    bs = [inv]
    for j in range(1, J):
        acc = np.zeros_like(ja)
        for i in range(j):
            alpha = j - i
            if side == "left":
                acc = acc + _jets.mul(_jets.shift(bs[i], alpha), _dz_grid(ja, alpha, 1))
            else:
                acc = acc + _jets.mul(_jets.shift(ja, alpha), _dz_grid(bs[i], alpha, 1))
        bs.append(-_jets.mul(inv, acc))
    return sum(bs)[: order + 1]


def parametrix_symbol(a: SymbolFamily, o: Orders, J: int, side="left", nz=64, grid=None,
                      check=True) -> SymbolFamily:
    """Symbolic parametrix ``b = sum_{j<J} b_j`` of an elliptic symbol.

    ``b_0 = 1/a`` and, for the left parametrix,
    ``b_j = -(1/a) sum_{i<j} (1/(j-i)!) d_zeta^{j-i} b_i  D_z^{j-i} a`` so that
    the expansion of ``b # a`` equals ``1`` through order ``J - 1``. The right
    parametrix uses ``a # b`` instead. The ``b_j`` are computed on an internal
    ``nz``-point z-grid (spectral differentiation) and interpolated.
    """
    if J < 1:
        raise DomainError("J must be at least 1")
    if side not in ("left", "right"):
        raise DomainError(f"side must be 'left' or 'right', got {side!r}")
    if J > 1 and not a.has_jets:
        raise CapabilityError(f"{a.name} supplies no zeta-derivatives for a parametrix")
    if a.z_bandwidth is not None and 2 * a.z_bandwidth >= nz:
        raise AliasingError(f"z-bandwidth {a.z_bandwidth} needs more than {nz} samples")
    if check:
        ok, margin = is_elliptic(a, o, grid)
        if not ok:
            raise NotEllipticError(f"{a.name} is not elliptic in {o} (margin {margin:.3g})")

    def func(z, zeta, h):
        return trig_interpolate(_parametrix_jets(a, J, side, zeta, h, 0, nz)[0], z)

    def jet(z, zeta, h, order):
        return trig_interpolate(_parametrix_jets(a, J, side, zeta, h, order, nz), z, lead=1)

    bw = 0 if a.z_bandwidth == 0 else None
    name = f"{side} parametrix_{J}({a.name})"
    return SymbolFamily(func, -o, bw, name, jet if a.has_jets else None, nz)


def parametrix_remainder(a: SymbolFamily, b: SymbolFamily, side="left") -> SymbolFamily:
    """Exact remainder ``b # a - 1`` (left) or ``a # b - 1`` (right)."""
    c = compose_symbol_exact(b, a) if side == "left" else compose_symbol_exact(a, b)
    return (c - 1.0).renamed(f"r({b.name})")


@dataclass
class NeumannResult:
    """Output of :func:`neumann_correct`, one entry per grid h."""

    h: list
    B: list
    E: list
    mode: str
    contraction: list
    h0: float | None
    residual: list
    sigma_min: list

    @property
    def error_norms(self):
        return [spectral_norm(E) for E in self.E]


def _h0(h_values, norms, bound):
    """Largest h such that the bound holds at every grid h up to it."""
    best = None
    for h, n in sorted(zip(h_values, norms)):
        if n < bound:
            best = h
        else:
            break
    return best


def neumann_correct(A_family, Btilde_family=None, B0_family=None, mode="iterate", J=1):
    """Correct a symbolic parametrix at the parameter boundary.

    Parameters
    ----------
    A_family : list of OperatorMatrix
        The operators over the h-grid.
    Btilde_family : list of OperatorMatrix
        Parametrices with ``B~ A = I + E~`` (iterate mode).
    B0_family : list of OperatorMatrix
        Inverses of the normal-operator models ``A_0`` (iterate mode).
    mode : {"iterate", "exact"}
        ``iterate`` performs ``J`` steps of ``B_1 = B~ - E~ B_0``,
        ``B_{j+1} = B_j - E_j B_0``, so that ``B_J A = I + E_J`` with
        ``E_J = E~ (B_0 (A_0 - A))^J``. ``exact`` returns the dense inverse.

    Returns
    -------
    NeumannResult
        ``h0`` is the largest grid h below which ``||E~|| < 0.9`` holds
        (``None`` for an empty range); in exact mode it is the largest h
        above which every ``sigma_min(A)`` clears the conditioning floor.
    """
    hs = [A.h for A in A_family]
    sig = [smallest_singular_value(A.entries) for A in A_family]
    if mode == "exact":
        Bs, Es, res = [], [], []
        for A, s in zip(A_family, sig):
            n = A.shape[0]
            if s <= CONDITIONING_FLOOR:
                Bs.append(None)
                Es.append(None)
                res.append(np.nan)
                continue
            Binv = np.linalg.solve(A.entries, np.eye(n))
            E = Binv @ A.entries - np.eye(n)
            Bs.append(A.replace(Binv, f"inv({A.provenance})",
                                None if A.orders is None else -A.orders))
            Es.append(E)
            res.append(spectral_norm(E))
        ok = [s > CONDITIONING_FLOOR for s in sig]
        h0 = min((h for h, good in zip(hs, ok) if good), default=None)
        return NeumannResult(hs, Bs, Es, mode, [], h0, res, sig)
    if mode != "iterate":
        raise DomainError(f"unknown mode {mode!r}")
    if Btilde_family is None or B0_family is None:
        raise DomainError("iterate mode needs the parametrix and normal-inverse families")
    Bs, Es, contraction = [], [], []
    for A, Bt, B0 in zip(A_family, Btilde_family, B0_family):
        n = A.shape[0]
        I = np.eye(n)
        A0 = np.linalg.inv(B0.entries)
        Et = Bt.entries @ A.entries - I
        contraction.append(spectral_norm(Et))
        B = Bt.entries
        E = Et
        step = B0.entries @ (A0 - A.entries)
        for _ in range(J):
            B = B - E @ B0.entries
            E = E @ step
        Bs.append(Bt.replace(B, f"neumann_{J}({Bt.provenance})"))
        Es.append(E)
    res = [spectral_norm(E) for E in Es]
    return NeumannResult(hs, Bs, Es, mode, contraction, _h0(hs, contraction, CONTRACTION), res, sig)


def remainder_decay(E_family, h_grid, pairs, M_list, grid=None):
    """Slopes of ``log ||E_h||`` against ``log h`` for each Sobolev pair.

    ``E_family`` holds matrices (or :class:`OperatorMatrix`); ``pairs`` is a
    list of ``(t_in, t_out)`` Sobolev triples. Returns one row per pair and
    ``M`` with the slope and ``passed = slope >= M - 0.2``.
    """
    from .sobolev import weight_matrix

    if len(h_grid) < 4:
        raise DomainError("remainder slopes need at least four h values")
    rows = []
    for t_in, t_out in pairs:
        norms = []
        for E, h in zip(E_family, h_grid):
            M = E.entries if isinstance(E, OperatorMatrix) else np.asarray(E)
            g = E.grid if isinstance(E, OperatorMatrix) else grid
            if g is None:
                raise DomainError("a GridSpec is needed for plain matrices")
            w_out = weight_matrix(t_out, h, g)
            w_in = weight_matrix(t_in, h, g)
            norms.append(spectral_norm(w_out[:, None] * M / w_in[None, :]))
        slope = loglog_slope(h_grid, norms)
        for M_req in M_list:
            passed = bool(slope == -np.inf or slope >= M_req - 0.2)
            rows.append(dict(t_in=t_in, t_out=t_out, M=M_req, slope=slope, norms=norms,
                             passed=passed))
    return rows

