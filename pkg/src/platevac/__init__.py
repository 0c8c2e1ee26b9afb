"""Regularized vacuum energies for plate-confined fields.

A Dirichlet scalar on an interval in 1+1 dimensions and the
electromagnetic field between parallel plates: energy densities and
totals under zeta continuation and exponential-cutoff regularization,
lowest-order radiative corrections, and an experiment harness for the
order of regularization versus spatial integration.
"""

from .errors import (
    ConfigError,
    DomainError,
    FitError,
    PlatevacError,
    PoleError,
    SingularityError,
)
from .geometry import Geometry, Position
from .regsum import (
    PowerSeriesSpec,
    RegKind,
    RegScheme,
    TrigFlavor,
    TrigSeriesSpec,
)
from .scalar1d import Couplings, EnergySplit, Mode, Route
from .em3d import CorrelatorPair, EhCouplings

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "PlatevacError",
    "DomainError",
    "PoleError",
    "SingularityError",
    "FitError",
    "ConfigError",
    "Geometry",
    "Position",
    "RegKind",
    "RegScheme",
    "PowerSeriesSpec",
    "TrigFlavor",
    "TrigSeriesSpec",
    "Mode",
    "Couplings",
    "EnergySplit",
    "Route",
    "CorrelatorPair",
    "EhCouplings",
]
