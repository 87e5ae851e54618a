"""Quadrature weights, degree of precision and error constants by undetermined coefficients."""

from .classical import Family, FamilySpec, ScaledError, build_family_rule, normalized_nodes
from .engine import RuleResult, build_rule, compute_weights, degree_of_precision, error_coefficient
from .errors import (
    ConsistencyError,
    ConvergenceError,
    DegreeDetectionError,
    DuplicateNodesError,
    QuadratureError,
)
from .gaussian import GaussRule, gauss_legendre_rule, legendre_polynomial, legendre_roots
from .moments import LegendreWeight, MomentProvider, Uniform
from .polynomial import NodeSet, Polynomial, newton_basis, q_extension
from .scalar import BigFloatField, Precision, RationalField, rational

__version__ = "0.1.0"
