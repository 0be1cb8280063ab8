"""Truncated Taylor arithmetic in the frequency variable.

A jet is an array whose leading axis holds normalized Taylor coefficients
``f[j] = (d/dzeta)^j f / j!``; all remaining axes are evaluation points.
"""
import numpy as np
from scipy.special import comb


def constant(value, order):
    value = np.asarray(value)
    out = np.zeros((order + 1,) + value.shape, dtype=np.result_type(value, float))
    out[0] = value
    return out


def variable(zeta, order):
    """Jet of the identity map ``zeta -> zeta``."""
    zeta = np.asarray(zeta, dtype=float)
    out = np.zeros((order + 1,) + zeta.shape)
    out[0] = zeta
    if order >= 1:
        out[1] = 1.0
    return out


def mul(f, g):
    n = min(len(f), len(g))
    shape = np.broadcast_shapes(f.shape[1:], g.shape[1:])
    out = np.zeros((n,) + shape, dtype=np.result_type(f, g))
    for k in range(n):
        for i in range(k + 1):
            out[k] += f[i] * g[k - i]
    return out


def reciprocal(f):
    out = np.zeros_like(f, dtype=np.result_type(f, float))
    inv0 = 1.0 / f[0]
    out[0] = inv0
    for k in range(1, len(f)):
        acc = np.zeros_like(out[0])
        for i in range(1, k + 1):
            acc = acc + f[i] * out[k - i]
        out[k] = -inv0 * acc
    return out


def power(f, p):
    """Jet of ``f**p``; requires ``f[0]`` away from zero (and off the branch cut)."""
    out = np.zeros_like(f, dtype=np.result_type(f, float))
    out[0] = f[0] ** p
    for k in range(1, len(f)):
        acc = np.zeros_like(out[0])
        for i in range(1, k + 1):
            acc = acc + ((p + 1) * i - k) * f[i] * out[k - i]
        out[k] = acc / (k * f[0])
    return out


def shift(f, alpha):
    """Jet of ``(d/dzeta)^alpha f / alpha!``; the top ``alpha`` entries are lost."""
    out = np.zeros_like(f)
    n = len(f)
    for k in range(n - alpha):
        out[k] = comb(alpha + k, alpha) * f[alpha + k]
    return out


def pad(f, order):
    """Truncate or zero-extend ``f`` to the given order."""
    if len(f) > order + 1:
        return f[: order + 1]
    out = np.zeros((order + 1,) + f.shape[1:], dtype=f.dtype)
    out[: len(f)] = f
    return out
