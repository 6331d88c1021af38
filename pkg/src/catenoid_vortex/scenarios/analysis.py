"""Post-processing of trajectories: partner tracking, collective drift, geodesic comparison."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field

import numpy as np

from ..dipole_model import DipoleSystemState, Mode, dipole_system_rhs
from ..errors import DomainError, WrongRegime
from ..geodesics import (
    GeodesicSpec,
    GeodesicState,
    Regime,
    bounce_u_of_v,
    classify,
    orbit_u0,
    orbit_u_of_v,
)
from ..geometry import CatenoidGeometry, SurfacePoint, embed
from ..integrator import TrajectoryRecord
from ..vortex_system import _velocities

#: Nearest partner must be at least this much closer than the runner-up.
PARTNER_RATIO = 1.5
#: Samples within this height of a turning point are left out of orbit comparisons.
TURNING_EXCLUSION = 0.05


class ScatteringClass(str, enum.Enum):
    DIRECT = "direct"
    EXCHANGE = "exchange"
    UNRESOLVED = "unresolved"


@dataclass(frozen=True)
class ScatteringOutcome:
    classification: ScatteringClass
    partners: dict[int, int]
    min_separation: dict[tuple[int, int], float] = field(default_factory=dict)
    distance_ratios: dict[int, float] = field(default_factory=dict)


def _points(geom: CatenoidGeometry, state_row: np.ndarray) -> np.ndarray:
    x, y, z = embed(geom, SurfacePoint(state_row[0::2], state_row[1::2]))
    return np.stack([x, y, z], axis=-1)


def nearest_partners(geom: CatenoidGeometry, state_row, gamma) -> tuple[dict[int, int], dict[int, float]]:
    """Nearest opposite-sign vortex (chordal distance) of every positive vortex.

    Also returns, per positive vortex, the ratio of the second-nearest to the
    nearest distance (``inf`` with a single candidate).
    """
    gamma = np.asarray(gamma, dtype=float)
    pts = _points(geom, np.asarray(state_row, dtype=float))
    pos = np.flatnonzero(gamma > 0)
    neg = np.flatnonzero(gamma < 0)
    partners, ratios = {}, {}
    for i in pos:
        dist = np.linalg.norm(pts[neg] - pts[i], axis=1)
        order = np.argsort(dist)
        partners[int(i)] = int(neg[order[0]])
        ratios[int(i)] = float(dist[order[1]] / dist[order[0]]) if len(order) > 1 else np.inf
    return partners, ratios


def classify_scattering(
    geom: CatenoidGeometry,
    record: TrajectoryRecord,
    gamma,
    initial_partners: dict[int, int] | None = None,
) -> ScatteringOutcome:
    """Compare partners at the last sample with the initial pairing.

    The outcome is unresolved when a nearest partner is not clearly nearer
    than the runner-up or two positive vortices claim the same partner.
    """
    gamma = np.asarray(gamma, dtype=float)
    if initial_partners is None:
        initial_partners, _ = nearest_partners(geom, record.states[0], gamma)
    final, ratios = nearest_partners(geom, record.states[-1], gamma)

    pts = np.stack([_points(geom, row) for row in record.states])
    min_sep = {}
    for i, j in itertools.combinations(range(len(gamma)), 2):
        min_sep[(i, j)] = float(np.min(np.linalg.norm(pts[:, i] - pts[:, j], axis=1)))

    ambiguous = any(r < PARTNER_RATIO for r in ratios.values())
    bijective = len(set(final.values())) == len(final)
    if ambiguous or not bijective:
        label = ScatteringClass.UNRESOLVED
    elif final == initial_partners:
        label = ScatteringClass.DIRECT
    elif all(final[i] != initial_partners[i] for i in final):
        label = ScatteringClass.EXCHANGE
    else:
        label = ScatteringClass.UNRESOLVED
    return ScatteringOutcome(label, final, min_sep, ratios)


@dataclass(frozen=True)
class CorotationSummary:
    drift_rate: float
    v_min: np.ndarray
    v_max: np.ndarray


def corotation_summary(record: TrajectoryRecord) -> CorotationSummary:
    """Least-squares slope of the mean azimuth and the height range of each vortex."""
    u_mean = record.states[:, 0::2].mean(axis=1)
    slope = float(np.polyfit(record.times, u_mean, 1)[0])
    v = record.states[:, 1::2]
    return CorotationSummary(slope, v.min(axis=0), v.max(axis=0))


@dataclass(frozen=True)
class CenterPath:
    """Positions and velocities of a dipole center at each sample."""

    u: np.ndarray
    v: np.ndarray
    u_dot: np.ndarray
    v_dot: np.ndarray

    def state(self, k: int) -> GeodesicState:
        return GeodesicState(
            float(self.u[k]), float(self.v[k]), float(self.u_dot[k]), float(self.v_dot[k])
        )


def vortex_pair_center(geom: CatenoidGeometry, record: TrajectoryRecord, gamma) -> CenterPath:
    """Mean position and velocity of a two-vortex run."""
    gamma = np.asarray(gamma, dtype=float)
    if gamma.size != 2:
        raise DomainError("a dipole center needs exactly two vortices")
    u, v = record.states[:, 0::2], record.states[:, 1::2]
    vel = [_velocities(geom, u[k], v[k], gamma) for k in range(len(record))]
    u_dot = np.array([w[0] for w in vel])
    v_dot = np.array([w[1] for w in vel])
    return CenterPath(u.mean(1), v.mean(1), u_dot.mean(1), v_dot.mean(1))


def reduced_dipole_center(
    geom: CatenoidGeometry, record: TrajectoryRecord, template: DipoleSystemState, mode: Mode
) -> CenterPath:
    """Center of the first dipole of a reduced-model run."""
    rates = np.array([dipole_system_rhs(geom, template.with_vector(y), mode)[0] for y in record.states])
    return CenterPath(record.states[:, 0], record.states[:, 1], rates[:, 0], rates[:, 1])


def geodesic_path(record: TrajectoryRecord) -> CenterPath:
    s = record.states
    return CenterPath(s[:, 0], s[:, 1], s[:, 2], s[:, 3])


@dataclass(frozen=True)
class GeodesicComparison:
    """Distance of a center path from the geodesic through its first sample.

    ``deviation`` is the largest ``|u_path(v) - u_geodesic(v)|`` for orbits
    that are graphs over ``v``.  For meridians it is the azimuthal excursion,
    for the neck circle the largest ``|v|``.
    """

    spec: GeodesicSpec
    deviation: float
    min_height_margin: float | None = None
    u_rate_spread: float | None = None


def compare_to_geodesic(geom: CatenoidGeometry, path: CenterPath) -> GeodesicComparison:
    spec = classify(geom, path.state(0))
    if spec.regime is Regime.MERIDIONAL:
        return GeodesicComparison(spec, float(np.max(np.abs(path.u - path.u[0]))))
    if spec.regime is Regime.CRITICAL:
        rate = path.u_dot
        spread = float((rate.max() - rate.min()) / abs(rate.mean()))
        return GeodesicComparison(spec, float(np.max(np.abs(path.v))), u_rate_spread=spread)
    if spec.regime is Regime.SUBCRITICAL:
        u0 = orbit_u0(spec, geom, path.state(0))
        dev = np.abs(path.u - orbit_u_of_v(spec, geom, path.v, u0))
        return GeodesicComparison(spec, float(dev.max()))

    margin = np.abs(path.v) - spec.v_turn
    u_turn = orbit_u0(spec, geom, path.state(0))
    keep = margin >= TURNING_EXCLUSION * geom.a
    if not keep.any():
        raise WrongRegime("trapped path never leaves the turning region")
    outgoing = np.sign(path.v_dot) == np.sign(path.v)
    if spec.sign == np.sign(path.v[0]):
        # Started at or past the turning point: every sample is outgoing.
        outgoing = np.ones_like(outgoing)
    u_geo = bounce_u_of_v(spec, geom, path.v[keep], u_turn, outgoing[keep])
    return GeodesicComparison(
        spec, float(np.max(np.abs(path.u[keep] - u_geo))), min_height_margin=float(margin.min())
    )
