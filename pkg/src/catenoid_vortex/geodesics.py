"""Geodesics of the catenoid: classification, closed-form orbits and ODE integration.

Along a geodesic the azimuthal momentum ``p_u = a^2 cosh^2(v/a) u_dot`` and the
energy ``E = cosh^2(v/a) (v_dot^2 + a^2 u_dot^2) / 2`` are constant.  Their
ratio ``lam = p_u / (a sqrt(2E))`` sorts orbits into four families:

* ``lam == 0``      meridians,
* ``0 < |lam| < 1`` spirals crossing the neck,
* ``|lam| == 1``    the neck circle,
* ``|lam| > 1``     orbits trapped on one side, turning at
  ``cosh(v_turn/a) = |lam|``.

The orbit ``u(v)`` obeys ``du/dv = sign * lam / (a sqrt(cosh^2(v/a) - lam^2))``
and is evaluated in closed form with :func:`~catenoid_vortex.elliptic.elliptic_f`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .elliptic import elliptic_f
from .errors import DegenerateVelocity, DomainError, OutsideDomain, WrongRegime
from .geometry import CatenoidGeometry, christoffel
from .integrator import IntegratorConfig, TrajectoryRecord, integrate

#: Width of the band around 0 and 1 inside which ``|lam|`` is snapped to a regime.
TAU_LAMBDA = 1e-9
#: Inside this distance from the turning point the orbit uses its local series.
TURNING_BAND = 1e-8
# Tolerance for evaluating a supercritical orbit slightly inside the forbidden band.
_TURN_SLACK = 1e-9


class Regime(str, enum.Enum):
    MERIDIONAL = "meridional"
    SUBCRITICAL = "subcritical"
    CRITICAL = "critical"
    SUPERCRITICAL = "supercritical"


@dataclass(frozen=True)
class GeodesicState:
    u: float
    v: float
    u_dot: float
    v_dot: float

    def to_vector(self) -> np.ndarray:
        return np.array([self.u, self.v, self.u_dot, self.v_dot], dtype=float)


@dataclass(frozen=True)
class GeodesicSpec:
    """Conserved data and orbit class of one geodesic.

    ``sign`` selects the branch of the orbit equation: ``du/dv`` has the sign
    of ``sign * lam``.
    """

    p_u: float
    energy: float
    lam: float
    regime: Regime
    v_turn: float | None = None
    sign: int = 1


def geodesic_invariants(geom: CatenoidGeometry, state: GeodesicState) -> tuple[float, float]:
    """``(p_u, E)`` of the geodesic through ``state``."""
    a = geom.a
    h2 = math.cosh(state.v / a) ** 2
    p_u = a * a * h2 * state.u_dot
    energy = 0.5 * h2 * (state.v_dot**2 + a * a * state.u_dot**2)
    return p_u, energy


def regime_of(lam: float) -> Regime:
    x = abs(lam)
    if x <= TAU_LAMBDA:
        return Regime.MERIDIONAL
    if abs(x - 1.0) <= TAU_LAMBDA:
        return Regime.CRITICAL
    return Regime.SUBCRITICAL if x < 1.0 else Regime.SUPERCRITICAL


def make_spec(geom: CatenoidGeometry, lam: float, sign: int = 1, energy: float = 0.5) -> GeodesicSpec:
    """Spec for a given ``lam`` with ``p_u`` fixed by the requested energy."""
    if energy <= 0:
        raise DegenerateVelocity("energy must be positive")
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    regime = regime_of(lam)
    v_turn = geom.a * math.acosh(abs(lam)) if regime is Regime.SUPERCRITICAL else None
    p_u = lam * geom.a * math.sqrt(2.0 * energy)
    return GeodesicSpec(p_u, energy, lam, regime, v_turn, sign)


def classify(geom: CatenoidGeometry, state: GeodesicState) -> GeodesicSpec:
    """Invariants, ``lam``, regime, turning point and branch of the geodesic through ``state``.

    At a turning point (``v_dot == 0``) the outgoing branch is chosen.
    """
    p_u, energy = geodesic_invariants(geom, state)
    if not energy > 0.0:
        raise DegenerateVelocity("zero velocity has no geodesic class")
    lam = p_u / (geom.a * math.sqrt(2.0 * energy))
    if state.v_dot != 0.0:
        sign = 1 if state.v_dot > 0 else -1
    else:
        sign = -1 if state.v < 0 else 1
    spec = make_spec(geom, lam, sign, energy)
    return GeodesicSpec(p_u, energy, lam, spec.regime, spec.v_turn, sign)


def lambda_from_dipole(geom: CatenoidGeometry, mean_state: GeodesicState) -> float:
    """Orbit class parameter of the geodesic followed by a tight dipole.

    ``mean_state`` holds the averaged positions and velocities of the pair.
    """
    p_u, energy = geodesic_invariants(geom, mean_state)
    if not energy > 0.0:
        raise DegenerateVelocity("dipole mean velocity vanishes")
    return p_u / (geom.a * math.sqrt(2.0 * energy))


def mean_state(u, v, u_dot, v_dot) -> GeodesicState:
    """Average position and velocity of a group of vortices."""
    return GeodesicState(
        float(np.mean(u)), float(np.mean(v)), float(np.mean(u_dot)), float(np.mean(v_dot))
    )


def orbit_slope(spec: GeodesicSpec, geom: CatenoidGeometry, v):
    """Right-hand side of the orbit equation, ``du/dv``."""
    a = geom.a
    v = np.asarray(v, dtype=float)
    return spec.sign * spec.lam / (a * np.sqrt(np.cosh(v / a) ** 2 - spec.lam**2))


def _orbit_scalar(spec: GeodesicSpec, a: float, v: float) -> float:
    lam = spec.lam
    x = v / a
    if spec.regime is Regime.SUBCRITICAL:
        beta = math.sqrt((1.0 - lam) * (1.0 + lam))
        phi = math.atan2(math.sinh(x), beta)
        return spec.sign * lam * elliptic_f(phi, lam * lam)

    # Supercritical: measure the distance into the allowed region on either side.
    x_turn = spec.v_turn / a
    depth = abs(x) - x_turn
    side = 1.0 if x >= 0 else -1.0
    if depth * a < -_TURN_SLACK:
        raise OutsideDomain(f"|v|={abs(v):.12g} lies inside the turning point {spec.v_turn:.12g}")
    depth = max(depth, 0.0)
    sgn_lam = 1.0 if lam > 0 else -1.0
    if depth * a < TURNING_BAND:
        # cosh^2 x - lam^2 ~ sinh(2 x_turn) (|x| - x_turn) near the turning point
        return spec.sign * side * lam * 2.0 * math.sqrt(depth / math.sinh(2.0 * x_turn))
    alpha = math.sqrt((abs(lam) - 1.0) * (abs(lam) + 1.0))
    s = abs(math.sinh(x))
    phi = side * math.atan2(math.sqrt((s - alpha) * (s + alpha)), alpha)
    return spec.sign * sgn_lam * elliptic_f(phi, 1.0 / (lam * lam))


def orbit_u_of_v(spec: GeodesicSpec, geom: CatenoidGeometry, v, u0: float = 0.0):
    """Closed-form orbit ``u(v)`` on the branch ``spec.sign``.

    ``u0`` is the azimuth at the reference height: ``v = 0`` for spirals and
    the turning point (on the side of ``v``) for trapped orbits.  Accepts a
    scalar or an array of heights.

    Raises
    ------
    WrongRegime
        For meridians and the neck circle, which are not graphs over ``v``.
    OutsideDomain
        For trapped orbits evaluated at ``|v| < v_turn``.
    """
    if spec.regime not in (Regime.SUBCRITICAL, Regime.SUPERCRITICAL):
        raise WrongRegime(f"{spec.regime.value} geodesics have no orbit u(v)")
    arr = np.asarray(v, dtype=float)
    if arr.ndim == 0:
        return u0 + _orbit_scalar(spec, geom.a, float(arr))
    return u0 + np.array([_orbit_scalar(spec, geom.a, float(x)) for x in arr.ravel()]).reshape(
        arr.shape
    )


def orbit_u0(spec: GeodesicSpec, geom: CatenoidGeometry, state: GeodesicState) -> float:
    """Integration constant placing the orbit of ``spec`` through ``state``."""
    return state.u - float(orbit_u_of_v(spec, geom, state.v))


def bounce_u_of_v(spec: GeodesicSpec, geom: CatenoidGeometry, v, u_turn: float, outgoing):
    """Trapped orbit through its turning point, as two branches joined at ``v_turn``.

    ``outgoing`` (bool or bool array) marks samples after the turning point;
    ``u_turn`` is the azimuth at the turning point.
    """
    if spec.regime is not Regime.SUPERCRITICAL:
        raise WrongRegime("only trapped orbits have a turning point")
    v = np.asarray(v, dtype=float)
    out = np.broadcast_to(np.asarray(outgoing, dtype=bool), v.shape)
    # Leaving the turning point |v| grows, so du/dv takes the sign of lam*sgn(v).
    side = np.where(v >= 0, 1, -1)
    result = np.empty(v.shape)
    for idx in np.ndindex(v.shape):
        branch = int(side[idx]) * (1 if out[idx] else -1)
        leg = GeodesicSpec(spec.p_u, spec.energy, spec.lam, spec.regime, spec.v_turn, branch)
        result[idx] = u_turn + _orbit_scalar(leg, geom.a, float(v[idx]))
    return result if result.ndim else float(result)


def state_on_orbit(
    geom: CatenoidGeometry, lam: float, v: float, direction: int = 1, energy: float = 0.5, u: float = 0.0
) -> GeodesicState:
    """Initial data at height ``v`` for the geodesic of class ``lam``.

    ``direction`` is the sign of ``v_dot``; it is ignored at a turning point.
    """
    a = geom.a
    h2 = math.cosh(v / a) ** 2
    p_u = lam * a * math.sqrt(2.0 * energy)
    u_dot = p_u / (a * a * h2)
    radicand = 2.0 * energy / h2 - (a * u_dot) ** 2
    if radicand < -1e-12 * 2.0 * energy:
        raise OutsideDomain(f"height v={v} is not reachable for lam={lam}")
    v_dot = direction * math.sqrt(max(radicand, 0.0))
    return GeodesicState(u, v, u_dot, v_dot)


def geodesic_vector_field(geom: CatenoidGeometry):
    """First-order form of the geodesic equations over ``[u, v, u_dot, v_dot]``."""

    def f(t: float, y: np.ndarray) -> np.ndarray:
        g_vvv, g_vuu, g_uuv = christoffel(geom, y[1])
        u_dot, v_dot = y[2], y[3]
        return np.array(
            [
                u_dot,
                v_dot,
                -2.0 * g_uuv * u_dot * v_dot,
                -g_vvv * v_dot * v_dot - g_vuu * u_dot * u_dot,
            ]
        )

    return f


def integrate_geodesic(
    geom: CatenoidGeometry,
    state0: GeodesicState,
    t_final: float,
    tol: float = 1e-12,
    sample_interval: float = 0.01,
    method: str = "dop853",
) -> TrajectoryRecord:
    """Integrate the geodesic equations, recording ``p_u`` and ``E`` per sample."""
    if not (t_final > 0 and tol > 0):
        raise DomainError("t_final and tol must be positive")
    if state0.u_dot == 0.0 and state0.v_dot == 0.0:
        raise DegenerateVelocity("geodesic needs a nonzero initial velocity")
    cfg = IntegratorConfig(rel_tol=tol, abs_tol=tol, sample_interval=sample_interval, method=method)

    def diag(t: float, y: np.ndarray) -> dict[str, float]:
        p_u, energy = geodesic_invariants(geom, GeodesicState(*y))
        return {"p_u": p_u, "E": energy}

    return integrate(geodesic_vector_field(geom), state0.to_vector(), 0.0, t_final, cfg, diag)
