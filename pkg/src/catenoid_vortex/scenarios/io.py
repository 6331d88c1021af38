"""CSV and JSON writers for scenario output.

Floats are written with ``%.17g`` so files reload bit-exactly and repeated
runs produce byte-identical output.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from ..geometry import CatenoidGeometry, SurfacePoint, embed
from ..integrator import TrajectoryRecord

_FMT = "%.17g"


def state_columns(kind: str, width: int) -> list[str]:
    """Column names of a state vector of ``width`` entries."""
    if kind == "vortices":
        return [f"{c}{i}" for i in range(1, width // 2 + 1) for c in ("u", "v")]
    if kind == "dipoles":
        return [f"{c}{i}" for i in range(1, width // 3 + 1) for c in ("u", "v", "alpha")]
    return ["u", "v", "u_dot", "v_dot"]


def write_trajectory_csv(path: str | Path, record: TrajectoryRecord, kind: str) -> None:
    """``t``, the state columns, then one column per diagnostic."""
    names = list(record.diagnostics)
    header = ["t", *state_columns(kind, record.states.shape[1]), *names]
    cols = [record.times[:, None], record.states]
    cols += [record.diagnostics[n][:, None] for n in names]
    np.savetxt(path, np.hstack(cols), fmt=_FMT, delimiter=",", header=",".join(header), comments="")


def write_embedding_csv(
    path: str | Path, geom: CatenoidGeometry, record: TrajectoryRecord, kind: str
) -> None:
    """Cartesian positions ``t,x1,y1,z1,...`` of every vortex, dipole center or geodesic point."""
    stride = {"vortices": 2, "dipoles": 3}.get(kind)
    if stride is None:
        u, v = record.states[:, :1], record.states[:, 1:2]
    else:
        u, v = record.states[:, 0::stride], record.states[:, 1::stride]
    x, y, z = embed(geom, SurfacePoint(u, v))
    n = u.shape[1]
    xyz = np.stack([x, y, z], axis=-1).reshape(len(record), 3 * n)
    header = ["t"] + [f"{c}{i}" for i in range(1, n + 1) for c in ("x", "y", "z")]
    np.savetxt(
        path, np.hstack([record.times[:, None], xyz]), fmt=_FMT, delimiter=",",
        header=",".join(header), comments="",
    )


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if hasattr(value, "value") and isinstance(value.value, str):
        return value.value
    return value


def write_summary_json(path: str | Path, summary: dict[str, Any]) -> None:
    Path(path).write_text(json.dumps(_jsonable(summary), indent=2, sort_keys=True) + "\n", encoding="utf-8")
