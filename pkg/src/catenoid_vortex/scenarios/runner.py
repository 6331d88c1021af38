"""Execute a scenario: integrate, analyse and write outputs."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from ..dipole_model import integrate_dipoles
from ..geodesics import integrate_geodesic
from ..integrator import TrajectoryRecord
from ..vortex_system import integrate_vortices
from .analysis import (
    classify_scattering,
    compare_to_geodesic,
    corotation_summary,
    geodesic_path,
    reduced_dipole_center,
    vortex_pair_center,
)
from .config import Analysis, Kind, ScenarioConfig
from .io import write_embedding_csv, write_summary_json, write_trajectory_csv


@dataclass
class ScenarioResult:
    config: ScenarioConfig
    record: TrajectoryRecord
    summary: dict[str, Any]
    outcome: Any = None
    files: list[Path] = field(default_factory=list)


def integrate_scenario(config: ScenarioConfig) -> TrajectoryRecord:
    geom = config.geometry
    state = config.initial_state()
    ic = config.integrator
    if config.kind is Kind.VORTICES:
        return integrate_vortices(geom, state, config.t_final, ic)
    if config.kind is Kind.DIPOLES:
        return integrate_dipoles(geom, state, config.t_final, config.mode, ic)
    return integrate_geodesic(
        geom, state, config.t_final, tol=ic.rel_tol, sample_interval=ic.sample_interval, method=ic.method
    )


def analyse(config: ScenarioConfig, record: TrajectoryRecord):
    """Analysis result for the scenario's ``analysis`` field, or ``None``."""
    geom = config.geometry
    if config.analysis is Analysis.SCATTERING:
        return classify_scattering(geom, record, config.initial["gamma"])
    if config.analysis is Analysis.COROTATING:
        return corotation_summary(record)
    if config.analysis is Analysis.GEODESIC:
        return compare_dipole_to_geodesic(config, record)
    return None


def compare_dipole_to_geodesic(config: ScenarioConfig, record: TrajectoryRecord | None = None):
    """Orbit-form comparison of the scenario's dipole center with its geodesic."""
    if record is None:
        record = integrate_scenario(config)
    geom = config.geometry
    if config.kind is Kind.VORTICES:
        path = vortex_pair_center(geom, record, config.initial["gamma"])
    elif config.kind is Kind.DIPOLES:
        path = reduced_dipole_center(geom, record, config.initial_state(), config.mode)
    else:
        path = geodesic_path(record)
    return compare_to_geodesic(geom, path)


def _summary(config: ScenarioConfig, record: TrajectoryRecord, outcome) -> dict[str, Any]:
    summary: dict[str, Any] = {
        "name": config.name,
        "kind": config.kind.value,
        "a": config.geometry.a,
        "t_final": config.t_final,
        "termination": record.termination.value,
        "n_samples": len(record),
        "n_steps": record.n_steps,
        "n_rejected": record.n_rejected,
        "n_evals": record.n_evals,
        "max_abs_drift": {k: record.max_drift(k) for k in record.diagnostics},
        "max_rel_drift": {k: record.max_relative_drift(k) for k in record.diagnostics},
    }
    if outcome is None:
        return summary
    if config.analysis is Analysis.SCATTERING:
        summary["scattering"] = {
            "classification": outcome.classification,
            "partners": outcome.partners,
            "distance_ratios": outcome.distance_ratios,
            "min_separation": {f"{i}-{j}": d for (i, j), d in outcome.min_separation.items()},
        }
    elif config.analysis is Analysis.COROTATING:
        summary["corotation"] = {
            "drift_rate": outcome.drift_rate,
            "v_min": outcome.v_min,
            "v_max": outcome.v_max,
        }
    else:
        spec = outcome.spec
        summary["geodesic"] = {
            "regime": spec.regime,
            "lambda": spec.lam,
            "v_turn": spec.v_turn,
            "deviation": outcome.deviation,
            "min_height_margin": outcome.min_height_margin,
            "u_rate_spread": outcome.u_rate_spread,
        }
    return summary


def run_scenario(config: ScenarioConfig, out_dir: str | Path | None = None) -> ScenarioResult:
    """Integrate ``config``, run its analysis and write its output files.

    Files go to ``out_dir`` (created if needed); with ``out_dir=None`` nothing
    is written.
    """
    record = integrate_scenario(config)
    outcome = analyse(config, record)
    result = ScenarioResult(config, record, _summary(config, record, outcome), outcome)
    if out_dir is not None and config.outputs is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        traj = out / config.outputs.trajectory
        write_trajectory_csv(traj, record, config.kind.value)
        result.files.append(traj)
        if config.outputs.embedding:
            emb = out / config.outputs.embedding
            write_embedding_csv(emb, config.geometry, record, config.kind.value)
            result.files.append(emb)
        diag = out / config.outputs.diagnostics
        write_summary_json(diag, result.summary)
        result.files.append(diag)
    return result


def run_corotating(config: ScenarioConfig, out_dir: str | Path | None = None) -> ScenarioResult:
    """Run a same-sign configuration and report the centroid's azimuthal drift rate."""
    gamma = np.asarray(config.initial["gamma"], dtype=float)
    if not (np.all(gamma > 0) or np.all(gamma < 0)):
        raise ValueError("co-rotating runs need circulations of one sign")
    result = run_scenario(config, out_dir)
    if result.outcome is None or config.analysis is not Analysis.COROTATING:
        result.outcome = corotation_summary(result.record)
    return result
