"""Exception types shared across the package."""


class DomainError(ValueError):
    """A point lies outside the open domain (or on its boundary)."""


class UnsupportedDimensionError(ValueError):
    """Operation requires a boundary parametrization only available in 2D/3D."""


class SamplingError(RuntimeError):
    """Rejection sampling exhausted its acceptance budget."""


class SearchError(RuntimeError):
    """A numerical search failed to bracket or converge."""
