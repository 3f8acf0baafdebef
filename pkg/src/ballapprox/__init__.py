"""Exact weighted orthogonal polynomials and optimal approximants for
``f = 1 - (z1 + z2)/sqrt(2)`` in the spaces H_gamma on the unit 2-ball."""

from .approximant import (
    Approximant,
    ConventionMismatch,
    DistanceSeries,
    InsufficientData,
    SingularSystemError,
    approximant_oracle,
    decay_slope,
    optimal_approximant,
    optimal_distance,
    optimal_distance_series,
    phi_cap,
)
from .hgamma_space import SpaceParams, Weight, inner, weight_a, weighted_inner
from .monomial_order import MonomialIndex, index_of, monomial_at, precedes
from .orthopoly import (
    IndexMappingError,
    OrthoPoly,
    gram_schmidt_oracle,
    phi_closed_form,
    phi_recursive,
    verify_f_squared_recursion,
)
from .poly2 import Poly, weight_f, weight_f_squared
from .qfield import QSqrt2, pochhammer, sqrt2_half_pow, to_float

__version__ = "0.1.0"
