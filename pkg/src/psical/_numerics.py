"""Small numerical helpers shared across modules."""
import numpy as np
from scipy.linalg import svdvals


def spectral_norm(M):
    """Largest singular value (the l2 operator norm)."""
    M = np.asarray(M)
    if M.size == 0:
        return 0.0
    return float(svdvals(M, check_finite=False)[0])


def smallest_singular_value(M):
    return float(svdvals(np.asarray(M), check_finite=False)[-1])


def loglog_slope(x, y):
    """Least-squares slope of ``log y`` against ``log x``.

    Returns ``-inf`` when every ``y`` vanishes (exact zero remainders) and
    ``nan`` when only some do.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.all(y == 0):
        return -np.inf
    if np.any(y <= 0):
        return np.nan
    return float(np.polyfit(np.log(x), np.log(y), 1)[0])
