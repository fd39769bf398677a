"""Particle creation by a static mirror with a time-dependent Robin boundary condition."""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    Flag,
    FrequencyGrid,
    Method,
    PhysicalParams,
    RateMethod,
    RateResult,
    SpectralResult,
    ThermalConvention,
    scaled_units_note,
    validate_params,
)
from .errors import (  # noqa: E402
    DCEError,
    InvalidParameterError,
    OccupationPoleError,
    QuadratureError,
    TailUnboundedError,
)
from .kernels import (  # noqa: E402
    DampedCosine,
    Tabulated,
    alpha_correction_kernel,
    beta_kernel,
    bose_einstein,
    delta_gamma,
    delta_gamma_ft,
    occupation_weighted,
    spectral_weight,
)
from .quadrature import QuadratureConfig, integrate, integrate_semi_infinite  # noqa: E402
from .rates import rate_thermal, rate_total, rate_vac_closed  # noqa: E402
from .spectra import (  # noqa: E402
    spectrum_general,
    spectrum_thermal_closed,
    spectrum_total,
    spectrum_vac_closed,
)
