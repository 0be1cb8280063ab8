"""Symbol families, order classes and ellipticity tools."""
from .base import (
    BUILTINS,
    ClassicalOrders,
    Orders,
    SampleGrid,
    SymbolFamily,
    constant,
    cosine,
    frequency,
    japanese_bracket,
    laplacian,
    make_symbol,
    monomial,
    perturbed,
    plane_wave,
    polynomial,
    sc_spectral,
    sine,
    trig_interpolate,
)
from .ellipticity import (
    elliptic_margin,
    is_elliptic,
    is_fully_elliptic,
    normal_operator_symbol,
    wavefront_indicator,
)
from .orders import (
    OrderEstimator,
    OrderFit,
    classical_membership,
    fit_orders,
    principal_residual_orders,
    resolve_orders,
    same_principal_symbol,
    seminorm,
)
