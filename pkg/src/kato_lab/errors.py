"""Exception and warning types raised across the package."""


class KatoLabError(Exception):
    """Base class for all package errors."""


class RangeError(KatoLabError, ValueError):
    """A parameter falls outside the range where a formula or estimate holds."""


class DimensionError(KatoLabError, ValueError):
    """The spatial dimension does not match what the operation requires."""


class UnsupportedDimension(DimensionError):
    pass


class GridError(KatoLabError, ValueError):
    """Grid is inconsistent, non-symmetric, or mismatched with the samples."""


class PoleError(KatoLabError, ValueError):
    """Gamma function evaluated at a non-positive integer."""


class ParityError(KatoLabError, ValueError):
    pass


class FitError(KatoLabError, ValueError):
    """A ladder or regression does not have the shape the fit needs."""


class DivergenceWarning(RuntimeWarning):
    """Cutoff ladder values keep growing as the origin cutoff shrinks."""
