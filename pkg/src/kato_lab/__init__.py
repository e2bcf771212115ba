"""Sharp smoothing-estimate constants for dispersive equations, with numerical checks."""

__version__ = "0.1.0"

from .closed_forms import (  # noqa: E402
    ConstantsReport,
    constants_reports,
    funk_hecke_eigenvalue,
    kato_constant_1d,
    kato_constant_nd,
    riesz_constant,
    sphere_pair_integral,
    weight_coefficient,
    weight_integral,
)
from .errors import (  # noqa: E402
    DimensionError,
    DivergenceWarning,
    FitError,
    GridError,
    KatoLabError,
    ParityError,
    PoleError,
    RangeError,
    UnsupportedDimension,
)
from .experiments import ScenarioConfig, VerificationReport, run_scenario, run_sweep  # noqa: E402
from .extrapolation import richardson  # noqa: E402
from .functionals import (  # noqa: E402
    QuadratureSpec,
    divergence_probe,
    time_integrated_density_1d,
    weighted_spacetime_integral_direct,
    weighted_spacetime_integral_fourier,
)
from .params import DispersionParams, GridSpec, Parity, TimeSpec, classify_parity, validate_params  # noqa: E402
from .spectral import SampledField, SpectralField, evolve, forward_transform, inverse_transform  # noqa: E402
