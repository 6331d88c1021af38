"""Scenario configuration documents and their JSON form.

A scenario file is a UTF-8 JSON object::

    {
      "name": "fig1-meridional",
      "description": "...",
      "geometry": {"a": 1.0},
      "kind": "vortices",                # or "dipoles", "geodesic"
      "initial": {...},                  # shape depends on kind, see below
      "t_final": 10.0,
      "integrator": {"rel_tol": 1e-12, "abs_tol": 1e-12, "max_step": null,
                     "sample_interval": 0.05, "max_steps": 2000000,
                     "method": "dop853"},
      "analysis": "geodesic",            # or "scattering", "corotating", null
      "outputs": {"trajectory": "x.csv", "diagnostics": "x.json",
                  "embedding": "x_xyz.csv"}
    }

``initial`` by kind:

* ``vortices``: ``{"u": [...], "v": [...], "gamma": [...]}``
* ``dipoles``: ``{"mode": "full", "dipoles": [{"u", "v", "alpha", "ell", "mu"}, ...]}``
* ``geodesic``: ``{"u", "v", "u_dot", "v_dot"}``

Relative output paths are resolved against the output directory chosen at
run time.  ``embedding`` may be ``null``.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from ..dipole_model import DipoleState, DipoleSystemState, Mode
from ..errors import CatenoidError, ConfigError
from ..geodesics import GeodesicState
from ..geometry import CatenoidGeometry
from ..integrator import IntegratorConfig
from ..vortex_system import VortexSystemState


class Kind(str, enum.Enum):
    VORTICES = "vortices"
    DIPOLES = "dipoles"
    GEODESIC = "geodesic"


class Analysis(str, enum.Enum):
    GEODESIC = "geodesic"
    SCATTERING = "scattering"
    COROTATING = "corotating"


@dataclass(frozen=True)
class OutputPaths:
    trajectory: str
    diagnostics: str
    embedding: str | None = None


@dataclass(frozen=True)
class ScenarioConfig:
    name: str
    geometry: CatenoidGeometry
    kind: Kind
    initial: dict[str, Any]
    t_final: float
    integrator: IntegratorConfig = field(default_factory=IntegratorConfig)
    outputs: OutputPaths | None = None
    analysis: Analysis | None = None
    description: str = ""

    def __post_init__(self) -> None:
        if not self.name:
            raise ConfigError("scenario name must be nonempty")
        if not (math.isfinite(self.t_final) and self.t_final > 0):
            raise ConfigError(f"{self.name}: t_final must be positive and finite")
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.analysis is not None:
            object.__setattr__(self, "analysis", Analysis(self.analysis))
        # Build the state once so malformed initial data fails at load time.
        self.initial_state()

    def initial_state(self):
        """Typed initial state for this kind."""
        init = self.initial
        try:
            if self.kind is Kind.VORTICES:
                return VortexSystemState(init["u"], init["v"], init["gamma"])
            if self.kind is Kind.DIPOLES:
                return DipoleSystemState(tuple(DipoleState(**d) for d in init["dipoles"]))
            return GeodesicState(
                float(init["u"]), float(init["v"]), float(init["u_dot"]), float(init["v_dot"])
            )
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"{self.name}: malformed initial data ({exc})") from exc
        except CatenoidError as exc:
            raise ConfigError(f"{self.name}: invalid initial data ({exc})") from exc

    @property
    def mode(self) -> Mode:
        return Mode(self.initial.get("mode", Mode.FULL.value))

    def to_dict(self) -> dict[str, Any]:
        ic = self.integrator
        return {
            "name": self.name,
            "description": self.description,
            "geometry": {"a": self.geometry.a},
            "kind": self.kind.value,
            "initial": self.initial,
            "t_final": self.t_final,
            "integrator": {
                "rel_tol": ic.rel_tol,
                "abs_tol": ic.abs_tol,
                "max_step": None if math.isinf(ic.max_step) else ic.max_step,
                "sample_interval": ic.sample_interval,
                "max_steps": ic.max_steps,
                "method": ic.method,
            },
            "analysis": None if self.analysis is None else self.analysis.value,
            "outputs": None
            if self.outputs is None
            else {
                "trajectory": self.outputs.trajectory,
                "diagnostics": self.outputs.diagnostics,
                "embedding": self.outputs.embedding,
            },
        }

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> ScenarioConfig:
        if not isinstance(doc, dict):
            raise ConfigError("scenario document must be a JSON object")
        try:
            ic = dict(doc.get("integrator") or {})
            if ic.get("max_step") is None:
                ic["max_step"] = math.inf
            outputs = doc.get("outputs")
            return cls(
                name=str(doc["name"]),
                description=str(doc.get("description", "")),
                geometry=CatenoidGeometry(float(doc.get("geometry", {}).get("a", 1.0))),
                kind=Kind(doc["kind"]),
                initial=dict(doc["initial"]),
                t_final=float(doc["t_final"]),
                integrator=IntegratorConfig(**ic),
                analysis=None if doc.get("analysis") is None else Analysis(doc["analysis"]),
                outputs=None if outputs is None else OutputPaths(**outputs),
            )
        except ConfigError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"invalid scenario document: {exc}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> ScenarioConfig:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON: {exc}") from exc
        return cls.from_dict(doc)


def load_config(path: str | Path) -> ScenarioConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    return ScenarioConfig.from_json(text)


def save_config(config: ScenarioConfig, path: str | Path) -> None:
    Path(path).write_text(config.to_json(), encoding="utf-8")
