"""Defining functions of the blown-up, fiber-compactified phase space.

All quantities depend on a phase-space point only through ``|zeta|`` and
``h``, so the array-level helpers take those two (broadcastable) arrays.

The global forms used here are

* ``rho_inf   = <zeta>^{-1}``
* ``rho_h_inf = (1 + h^2 |zeta|^2)^{-1/2}``            (semiclassical fiber infinity)
* ``rho_h_ff  = (h^2 + <zeta>^{-2})^{1/2}``            (front face)
* ``rho_h_0   = ((h^2 + h^2|zeta|^2) / (1 + h^2|zeta|^2))^{1/2}``  (parameter boundary)

With these, ``rho_h_0 * rho_h_ff / h`` and ``rho_h_inf * rho_h_ff / rho_inf``
are the same rational expression and lie in ``[1, sqrt(2)]``.
"""
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError

__all__ = [
    "PhasePoint",
    "BoundaryWeights",
    "boundary_weights",
    "equivalence_ratios",
    "face_weight",
    "defining_functions",
    "ratio",
    "log_face_weight",
    "face_weight_array",
]


@dataclass(frozen=True)
class PhasePoint:
    """A frequency vector ``zeta`` together with a parameter value ``h``."""

    zeta: tuple
    h: float

    def __post_init__(self):
        zeta = np.atleast_1d(np.asarray(self.zeta, dtype=float))
        if zeta.ndim != 1 or not np.all(np.isfinite(zeta)):
            raise DomainError("zeta must be a finite frequency vector")
        if not 0.0 <= self.h <= 1.0:
            raise DomainError(f"h must lie in [0, 1], got {self.h}")
        object.__setattr__(self, "zeta", tuple(zeta.tolist()))

    @property
    def zeta_norm(self):
        return float(np.sqrt(np.sum(np.square(self.zeta))))

    @property
    def zeta_semiclassical(self):
        """The rescaled frequency ``h * zeta``."""
        return tuple(self.h * c for c in self.zeta)


@dataclass(frozen=True)
class BoundaryWeights:
    rho_inf: float
    rho_h_inf: float
    rho_h_ff: float
    rho_h_0: float

    def astuple(self):
        return (self.rho_inf, self.rho_h_inf, self.rho_h_ff, self.rho_h_0)


def defining_functions(zeta_norm, h):
    """Vectorized ``(rho_inf, rho_h_inf, rho_h_ff, rho_h_0)`` for arrays of ``|zeta|`` and ``h``."""
    r2 = np.square(np.asarray(zeta_norm, dtype=float))
    h = np.asarray(h, dtype=float)
    h2 = np.square(h)
    x = h2 * r2
    rho_inf = 1.0 / np.sqrt(1.0 + r2)
    rho_h_inf = 1.0 / np.sqrt(1.0 + x)
    rho_h_ff = np.sqrt(h2 + 1.0 / (1.0 + r2))
    # h * sqrt(...) equals the closed form and does not underflow for tiny h
    rho_h_0 = np.abs(h) * np.sqrt((1.0 + r2) / (1.0 + x))
    return rho_inf, rho_h_inf, rho_h_ff, rho_h_0


def ratio(zeta_norm, h):
    """The common value of both equivalence ratios, ``((1+h^2+h^2|zeta|^2)/(1+h^2|zeta|^2))^{1/2}``."""
    x = np.square(np.asarray(h, dtype=float)) * np.square(np.asarray(zeta_norm, dtype=float))
    return np.sqrt((1.0 + np.square(h) + x) / (1.0 + x))


def boundary_weights(p: PhasePoint) -> BoundaryWeights:
    return BoundaryWeights(*(float(v) for v in defining_functions(p.zeta_norm, p.h)))


def equivalence_ratios(p: PhasePoint):
    """Return ``(r_h, r_inf)``.

    ``r_h = rho_h_0 * rho_h_ff / h`` is undefined at ``h = 0`` and raises
    :class:`DomainError` there; use :func:`ratio` for the ``h -> 0`` value of
    ``r_inf`` alone.
    """
    if p.h == 0:
        raise DomainError("r_h = rho_h_0 * rho_h_ff / h is undefined at h = 0")
    w = boundary_weights(p)
    r_h = w.rho_h_0 * w.rho_h_ff / p.h
    r_inf = w.rho_h_inf * w.rho_h_ff / w.rho_inf
    return r_h, r_inf


def log_face_weight(orders, zeta_norm, h):
    """``log`` of ``rho_h_inf^{-m} rho_h_ff^{-l} rho_h_0^{-k}`` (vectorized)."""
    m, l, k = (float(v) for v in orders)
    _, r_inf, r_ff, r_0 = defining_functions(zeta_norm, h)
    with np.errstate(divide="ignore"):
        log0 = np.log(r_0)
    if k != 0 and np.any(r_0 == 0):
        if k > 0:
            raise DomainError("face weight with k > 0 is singular where rho_h_0 = 0 (h = 0)")
    out = -m * np.log(r_inf) - l * np.log(r_ff)
    if k != 0:
        out = out - k * log0
    return out


def face_weight_array(orders, zeta_norm, h):
    return np.exp(log_face_weight(orders, zeta_norm, h))


def face_weight(orders, p: PhasePoint) -> float:
    """Class weight ``rho_h_inf^{-m} rho_h_ff^{-l} rho_h_0^{-k}`` at a single point."""
    return float(face_weight_array(orders, p.zeta_norm, p.h))
