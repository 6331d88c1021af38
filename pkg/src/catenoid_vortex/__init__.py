"""Point vortices, vortex dipoles and geodesics on the catenoid.

The catenoid of throat radius ``a`` is parametrised by azimuth ``u`` and
meridional height ``v`` with metric ``cosh^2(v/a) (dv^2 + a^2 du^2)``.
"""

from .dipole_model import (
    DipoleState,
    DipoleSystemState,
    Mode,
    dipole_system_rhs,
    external_advection,
    integrate_dipoles,
    orientation_rate,
    place_vortices,
    self_propulsion_full,
    self_propulsion_truncated,
)
from .elliptic import carlson_rf, elliptic_f
from .errors import (
    CatenoidError,
    CoincidentVortices,
    ConfigError,
    DegenerateVelocity,
    DomainError,
    IntegrationError,
    OutsideDomain,
    WrongRegime,
)
from .geodesics import (
    GeodesicSpec,
    GeodesicState,
    Regime,
    classify,
    integrate_geodesic,
    lambda_from_dipole,
    orbit_u_of_v,
)
from .geometry import CatenoidGeometry, SurfacePoint, embed, greens_function, pair_kernel
from .integrator import IntegratorConfig, Termination, TrajectoryRecord, integrate
from .vortex_system import (
    VortexSystemState,
    hamiltonian,
    integrate_vortices,
    momentum_map,
    rhs,
)

__version__ = "0.1.0"

__all__ = [
    "CatenoidError",
    "CatenoidGeometry",
    "CoincidentVortices",
    "ConfigError",
    "DegenerateVelocity",
    "DipoleState",
    "DipoleSystemState",
    "DomainError",
    "GeodesicSpec",
    "GeodesicState",
    "IntegrationError",
    "IntegratorConfig",
    "Mode",
    "OutsideDomain",
    "Regime",
    "SurfacePoint",
    "Termination",
    "TrajectoryRecord",
    "VortexSystemState",
    "WrongRegime",
    "carlson_rf",
    "classify",
    "dipole_system_rhs",
    "elliptic_f",
    "embed",
    "external_advection",
    "greens_function",
    "hamiltonian",
    "integrate",
    "integrate_dipoles",
    "integrate_geodesic",
    "integrate_vortices",
    "lambda_from_dipole",
    "momentum_map",
    "orbit_u_of_v",
    "orientation_rate",
    "pair_kernel",
    "place_vortices",
    "rhs",
    "self_propulsion_full",
    "self_propulsion_truncated",
]
