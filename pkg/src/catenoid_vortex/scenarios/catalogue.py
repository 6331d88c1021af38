"""Bundled scenarios: dipole geodesics, two-dipole scattering, co-rotation and a finite dipole.

Each builder takes the small parameters as arguments so that convergence
studies can rerun a scenario at other sizes.  Point lists for the four-vortex
scenarios are written ``(v, u)``: first coordinate along the meridian.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from pathlib import Path

from ..geometry import CatenoidGeometry
from ..integrator import IntegratorConfig
from .config import Analysis, Kind, OutputPaths, ScenarioConfig, save_config

#: Integration horizon of the two-vortex geodesic scenarios.
GEODESIC_T_FINAL = 10.0
SCATTERING_T_FINAL = 0.5
COROTATING_T_FINAL = 10.0


def _outputs(name: str) -> OutputPaths:
    return OutputPaths(f"{name}.csv", f"{name}.json", f"{name}_xyz.csv")


def _two_vortex(name, description, u, v, t_final, a, sample_interval):
    return ScenarioConfig(
        name=name,
        description=description,
        geometry=CatenoidGeometry(a),
        kind=Kind.VORTICES,
        initial={"u": list(u), "v": list(v), "gamma": [1.0, -1.0]},
        t_final=t_final,
        integrator=IntegratorConfig(sample_interval=sample_interval),
        analysis=Analysis.GEODESIC,
        outputs=_outputs(name),
    )


def meridional(eps: float = 0.05, t_final: float = GEODESIC_T_FINAL, a: float = 1.0) -> ScenarioConfig:
    """Pair side by side at ``v = -2``: zero azimuthal momentum, travels along a meridian."""
    return _two_vortex(
        "fig1-meridional",
        "Dipole launched along a meridian; J = 0 exactly.",
        [eps, -eps],
        [-2.0, -2.0],
        t_final,
        a,
        t_final / 200,
    )


def neck(eps: float = 0.05, t_final: float = GEODESIC_T_FINAL, a: float = 1.0) -> ScenarioConfig:
    """Pair straddling the neck: circulates the throat circle."""
    return _two_vortex(
        "fig2-neck",
        "Dipole straddling the throat; follows the neck circle.",
        [0.0, 0.0],
        [eps, -eps],
        t_final,
        a,
        t_final / 200,
    )


def trapped(
    eps: float = 0.05, t_final: float = GEODESIC_T_FINAL, a: float = 1.0, v_center: float = 0.15
) -> ScenarioConfig:
    """Pair stacked above the neck: launched at the turning point of a trapped orbit."""
    return _two_vortex(
        "fig3-trapped",
        "Dipole stacked along the meridian at v = 0.15; one-sided trapped orbit.",
        [0.0, 0.0],
        [v_center + eps, v_center - eps],
        t_final,
        a,
        t_final / 200,
    )


def _four_vortex(name, description, eps, delta, gamma, t_final, analysis, a, sample_interval):
    points = [(0.0, eps), (eps, 0.0), (1.0 - delta, 1.0), (1.0, 1.0 - delta)]
    return ScenarioConfig(
        name=name,
        description=description,
        geometry=CatenoidGeometry(a),
        kind=Kind.VORTICES,
        initial={
            "u": [p[1] for p in points],
            "v": [p[0] for p in points],
            "gamma": list(gamma),
        },
        t_final=t_final,
        integrator=IntegratorConfig(sample_interval=sample_interval),
        analysis=analysis,
        outputs=_outputs(name),
    )


def direct_scattering(eps: float = 0.07, delta: float = 0.03, a: float = 1.0) -> ScenarioConfig:
    return _four_vortex(
        "fig4-direct-scattering",
        "Two dipoles collide near the throat and keep their partners.",
        eps,
        delta,
        [-1.0, 1.0, 1.0, -1.0],
        SCATTERING_T_FINAL,
        Analysis.SCATTERING,
        a,
        0.005,
    )


def exchange_scattering(eps: float = 0.05, delta: float = 0.05, a: float = 1.0) -> ScenarioConfig:
    return _four_vortex(
        "fig5-exchange-scattering",
        "Two dipoles collide near the throat and swap partners.",
        eps,
        delta,
        [-1.0, 1.0, 1.0, -1.0],
        SCATTERING_T_FINAL,
        Analysis.SCATTERING,
        a,
        0.005,
    )


def corotating(eps: float = 0.07, delta: float = 0.03, a: float = 1.0, name: str = "fig6-corotating") -> ScenarioConfig:
    return _four_vortex(
        name,
        "Four equal vortices in the scattering layout rotate collectively.",
        eps,
        delta,
        [1.0, 1.0, 1.0, 1.0],
        COROTATING_T_FINAL,
        Analysis.COROTATING,
        a,
        0.05,
    )


def finite_dipole(
    ell: float = 1e-4, v_center: float = 0.15, mu: float = 1.0, arclength: float = 3.0, a: float = 1.0
) -> ScenarioConfig:
    """Reduced dipole with axis along the meridian, at the turning point of a trapped orbit.

    ``t_final`` is chosen so the center travels roughly ``arclength`` at the
    planar dipole speed ``mu / (2 pi ell)``.
    """
    t_final = arclength * 2.0 * math.pi * ell / mu
    name = "fig8-finite-dipole"
    return ScenarioConfig(
        name=name,
        description="Finite dipole on a trapped orbit, compared with its geodesic.",
        geometry=CatenoidGeometry(a),
        kind=Kind.DIPOLES,
        initial={
            "mode": "full",
            "dipoles": [{"u": 0.0, "v": v_center, "alpha": math.pi / 2, "ell": ell, "mu": mu}],
        },
        t_final=t_final,
        integrator=IntegratorConfig(sample_interval=t_final / 200),
        analysis=Analysis.GEODESIC,
        outputs=_outputs(name),
    )


CATALOGUE: dict[str, Callable[[], ScenarioConfig]] = {
    "fig1-meridional": meridional,
    "fig2-neck": neck,
    "fig3-trapped": trapped,
    "fig4-direct-scattering": direct_scattering,
    "fig5-exchange-scattering": exchange_scattering,
    "fig6-corotating": corotating,
    "fig7-corotating": lambda: corotating(0.05, 0.05, name="fig7-corotating"),
    "fig8-finite-dipole": finite_dipole,
}


def bundled_configs() -> list[ScenarioConfig]:
    return [build() for build in CATALOGUE.values()]


def write_catalogue(directory: str | Path) -> list[Path]:
    """Write every bundled scenario as ``<name>.json`` into ``directory``."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for config in bundled_configs():
        path = directory / f"{config.name}.json"
        save_config(config, path)
        paths.append(path)
    return paths
