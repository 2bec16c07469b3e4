"""Geometric-mean distance metric: evaluation, verification, ball geometry."""

from . import backend
from .domains import (Domain, contains, dist_to_boundary, nearest_boundary_point,
                      parse_domain, path_infimum, sample_interior)
from .errors import (DomainError, SamplingError, SearchError,
                     UnsupportedDimensionError)
from .metrics import (MetricId, evaluate, h_from_rho, h_metric, j_metric,
                      j_star, p_metric, parse_metric, rho_half_space,
                      rho_unit_ball, s_metric, th_half_h)

__version__ = "0.1.0"

__all__ = [
    "Domain", "MetricId", "backend", "contains", "dist_to_boundary",
    "nearest_boundary_point", "parse_domain", "parse_metric", "path_infimum",
    "sample_interior", "evaluate", "h_metric", "th_half_h", "j_metric",
    "j_star", "s_metric", "p_metric", "rho_half_space", "rho_unit_ball",
    "h_from_rho", "DomainError", "SamplingError", "SearchError",
    "UnsupportedDimensionError", "__version__",
]
