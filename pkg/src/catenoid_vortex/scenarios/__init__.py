"""Scenario catalogue, runner, trajectory analysis and output writers."""

from .analysis import (
    CenterPath,
    CorotationSummary,
    GeodesicComparison,
    ScatteringClass,
    ScatteringOutcome,
    classify_scattering,
    compare_to_geodesic,
    corotation_summary,
    nearest_partners,
    vortex_pair_center,
)
from .catalogue import CATALOGUE, bundled_configs, write_catalogue
from .config import Analysis, Kind, OutputPaths, ScenarioConfig, load_config, save_config
from .runner import (
    ScenarioResult,
    compare_dipole_to_geodesic,
    integrate_scenario,
    run_corotating,
    run_scenario,
)

__all__ = [
    "CATALOGUE",
    "Analysis",
    "CenterPath",
    "CorotationSummary",
    "GeodesicComparison",
    "Kind",
    "OutputPaths",
    "ScatteringClass",
    "ScatteringOutcome",
    "ScenarioConfig",
    "ScenarioResult",
    "bundled_configs",
    "classify_scattering",
    "compare_dipole_to_geodesic",
    "compare_to_geodesic",
    "corotation_summary",
    "integrate_scenario",
    "load_config",
    "nearest_partners",
    "run_corotating",
    "run_scenario",
    "save_config",
    "vortex_pair_center",
    "write_catalogue",
]
