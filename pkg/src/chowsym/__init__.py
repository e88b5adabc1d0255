"""Exact intersection-theoretic calculus on projective space."""

from .bundles import VirtualBundle, chern_total, cotangent, dual_bundle, rank, tangent, tensor_by_line
from .chowring import (
    ChowClass,
    LineBundle,
    chern_power,
    degree,
    dual,
    format_class,
    generalized_binomial,
    involution,
    parse_class,
    ring_product,
    tensor_line,
    unit_inverse,
)
from .correspondence import (
    Correspondence,
    compose,
    diagonal,
    from_matrix,
    involutive_correspondence,
    pullback,
    pushforward,
    to_matrix,
)
from .hypersurface import (
    HypersurfaceModel,
    aluffi_class,
    alpha_n,
    csm,
    euler_char,
    from_model,
    fulton,
    le_class,
    milnor,
    mu_class,
    nu_n,
)

__version__ = "0.1.0"
