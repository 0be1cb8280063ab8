"""Triple-weighted Sobolev norms on frequency space.

The space ``H^{s,r,p}`` is realized as weighted l2 with the diagonal
weight ``rho_h_inf^{-s} rho_h_ff^{-r} rho_h_0^{-p}`` evaluated at each mode.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ._numerics import spectral_norm
from .exceptions import DomainError
from .geometry import PhasePoint, face_weight, log_face_weight
from .quantize import GridSpec, OperatorMatrix

__all__ = [
    "SobolevTriple",
    "weight",
    "weight_matrix",
    "norm",
    "standard_norm",
    "classical_triple",
    "semiclassical_triple",
    "operator_norm",
    "MappingResult",
    "mapping_constant",
]


@dataclass(frozen=True)
class SobolevTriple:
    """Exponents ``(s, r, p)``: differential, semiclassical, parameter."""

    s: float
    r: float
    p: float

    def __post_init__(self):
        if not all(np.isfinite([self.s, self.r, self.p])):
            raise DomainError("Sobolev exponents must be finite")

    def __iter__(self):
        return iter((self.s, self.r, self.p))

    def __neg__(self):
        return SobolevTriple(-self.s, -self.r, -self.p)

    def __add__(self, other):
        return SobolevTriple(*(a + b for a, b in zip(self, other)))

    def __sub__(self, other):
        return SobolevTriple(*(a - b for a, b in zip(self, other)))

    def astuple(self):
        return (self.s, self.r, self.p)


def classical_triple(s, p) -> SobolevTriple:
    """``H^{s,p}`` (h-weighted classical) as the triple ``(s, s + p, p)``."""
    return SobolevTriple(s, s + p, p)


def semiclassical_triple(s, r) -> SobolevTriple:
    """``H_h^{s,r}`` as the triple ``(s, r, r)``."""
    return SobolevTriple(s, r, r)


def weight(t: SobolevTriple, p: PhasePoint) -> float:
    if p.h <= 0:
        raise DomainError("Sobolev weights are defined for h > 0")
    return face_weight(tuple(t), p)


def weight_matrix(t, h, grid: GridSpec):
    """Diagonal of the weight operator on the grid modes (returned as a vector)."""
    if h <= 0:
        raise DomainError("Sobolev weights are defined for h > 0")
    return np.exp(log_face_weight(tuple(t), grid.frequency_norms, h))


def _grid_for(u, grid):
    if grid is not None:
        return grid
    return GridSpec(d=1, N=len(u), h_grid=())


def norm(u, t: SobolevTriple, h, grid: GridSpec | None = None) -> float:
    """Weighted l2 norm of the coefficient vector ``u`` (``d = 1`` if no grid is given)."""
    u = np.asarray(u)
    g = _grid_for(u, grid)
    return float(np.linalg.norm(weight_matrix(t, h, g) * u))


def standard_norm(u, s, p, h, grid: GridSpec | None = None) -> float:
    """The l2 norm of ``<zeta>^s h^{-p} u``."""
    u = np.asarray(u)
    g = _grid_for(u, grid)
    w = (1.0 + g.frequency_norms ** 2) ** (s / 2.0) * float(h) ** (-p)
    return float(np.linalg.norm(w * u))


def operator_norm(A: OperatorMatrix, t_in: SobolevTriple, t_out: SobolevTriple) -> float:
    """``||A||`` from ``H^{t_in}`` to ``H^{t_out}``: the top singular value of ``W_out A W_in^{-1}``."""
    w_in = weight_matrix(t_in, A.h, A.grid)
    w_out = weight_matrix(t_out, A.h, A.grid)
    return spectral_norm(w_out[:, None] * A.entries / w_in[None, :])


class MappingResult(NamedTuple):
    value: float
    variation: float
    norms: list
    passed: bool


def mapping_constant(A_family, o, t: SobolevTriple, aggregate="sup", variation_bound=2.0):
    """Uniform bound of ``A_h : H^t -> H^{t - o}`` over the h-grid.

    ``aggregate`` is ``"sup"`` (the default, an L^inf-in-h bound) or ``"l2"``
    (root mean square over the grid). ``variation`` is the max/min ratio of
    the per-h norms; the check passes when the value is finite and the
    variation stays within ``variation_bound``. The zero operator has value 0
    and passes.
    """
    if len(A_family) < 2:
        raise DomainError("mapping constants need at least two h values")
    t_out = t - tuple(o)
    norms = [operator_norm(A, t, t_out) for A in A_family]
    arr = np.asarray(norms)
    if aggregate == "sup":
        value = float(arr.max())
    elif aggregate == "l2":
        value = float(np.sqrt(np.mean(arr ** 2)))
    else:
        raise DomainError(f"unknown aggregate {aggregate!r}")
    if np.all(arr == 0):
        return MappingResult(0.0, 1.0, norms, True)
    variation = float(arr.max() / arr.min()) if arr.min() > 0 else np.inf
    passed = bool(np.isfinite(value) and variation <= variation_bound)
    return MappingResult(value, variation, norms, passed)
