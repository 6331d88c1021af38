"""Reduced dynamics of tight vortex dipoles on the catenoid.

A dipole is a pair of opposite vortices ``+mu`` and ``-mu`` a geodesic
distance ``ell`` apart, centred at ``(u, v)`` with axis at angle ``alpha``
from the azimuthal unit vector.  The reduced state of each dipole is
``(u, v, alpha)``; ``ell`` and ``mu`` are fixed parameters.

Center velocities are the mean of the two vortex velocities.  The rotation
rate is the difference of the two vortex velocities in the orthonormal frame,
projected on the axis normal and divided by ``ell``, plus the turning of the
frame along the center path, ``tanh(v/a) u_dot``.

Two levels of the self-induced part are provided: ``Mode.FULL`` uses the
exact pair interaction and ``Mode.TRUNCATED`` its leading terms in ``ell``.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import CoincidentVortices, DomainError
from .geodesics import GeodesicState, geodesic_invariants
from .geometry import EPS_COLL, CatenoidGeometry, SurfacePoint, embed
from .integrator import IntegratorConfig, TrajectoryRecord, integrate

_PI = math.pi
#: Above this ``ell/a`` the first-order placement is flagged as inaccurate.
ELL_WARN = 0.3
#: Above this ``ell/a`` the reduced model is rejected.
ELL_MAX = 0.6


class DipoleValidityWarning(UserWarning):
    """Dipole separation is large compared with the throat radius."""


class Mode(str, enum.Enum):
    TRUNCATED = "truncated"
    FULL = "full"


@dataclass(frozen=True)
class DipoleState:
    """Center ``(u, v)``, unwrapped orientation ``alpha``, separation ``ell`` and strength ``mu``."""

    u: float
    v: float
    alpha: float
    ell: float
    mu: float = 1.0

    def __post_init__(self) -> None:
        for name in ("u", "v", "alpha", "ell", "mu"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise DomainError(f"{name} must be finite")
            object.__setattr__(self, name, value)
        if self.ell <= 0.0:
            raise DomainError("ell must be positive")

    def check_validity(self, geom: CatenoidGeometry) -> None:
        """Warn when ``ell/a > 0.3``; raise :class:`DomainError` when ``ell/a > 0.6``."""
        ratio = self.ell / geom.a
        if ratio > ELL_MAX:
            raise DomainError(f"ell/a = {ratio:.3g} exceeds {ELL_MAX}")
        if ratio > ELL_WARN:
            warnings.warn(f"ell/a = {ratio:.3g} exceeds {ELL_WARN}", DipoleValidityWarning, stacklevel=2)


@dataclass(frozen=True)
class DipoleSystemState:
    """Ordered dipoles; the flat state vector is ``[u_1, v_1, alpha_1, u_2, ...]``."""

    dipoles: tuple[DipoleState, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "dipoles", tuple(self.dipoles))
        if not self.dipoles:
            raise DomainError("at least one dipole is required")

    @property
    def n(self) -> int:
        return len(self.dipoles)

    def to_vector(self) -> np.ndarray:
        return np.array([[d.u, d.v, d.alpha] for d in self.dipoles], dtype=float).ravel()

    def with_vector(self, y) -> DipoleSystemState:
        y = np.asarray(y, dtype=float).reshape(self.n, 3)
        return DipoleSystemState(
            tuple(DipoleState(r[0], r[1], r[2], d.ell, d.mu) for r, d in zip(y, self.dipoles))
        )

    def close_encounters(self, geom: CatenoidGeometry) -> list[tuple[int, int]]:
        """Center pairs closer (chordally) than twice the largest separation."""
        limit = 2.0 * max(d.ell for d in self.dipoles)
        pts = [np.array(embed(geom, SurfacePoint(d.u, d.v))) for d in self.dipoles]
        return [
            (i, j)
            for i in range(self.n)
            for j in range(i + 1, self.n)
            if np.linalg.norm(pts[i] - pts[j]) < limit
        ]


class PairVelocities(NamedTuple):
    """Coordinate velocities of the ``+`` and ``-`` vortices of one dipole."""

    u_plus: float
    v_plus: float
    u_minus: float
    v_minus: float


class ExternalAdvection(NamedTuple):
    u_dot: float
    v_dot: float
    vortices: PairVelocities


def place_vortices(geom: CatenoidGeometry, d: DipoleState) -> tuple[SurfacePoint, SurfacePoint]:
    """Positions of the ``+mu`` and ``-mu`` vortices, to first order in ``ell``."""
    a = geom.a
    h = math.cosh(d.v / a)
    du = d.ell * math.cos(d.alpha) / (2.0 * a * h)
    dv = d.ell * math.sin(d.alpha) / (2.0 * h)
    return SurfacePoint(d.u + du, d.v + dv), SurfacePoint(d.u - du, d.v - dv)


def dipole_from_pair(
    geom: CatenoidGeometry, plus: SurfacePoint, minus: SurfacePoint, mu: float = 1.0
) -> DipoleState:
    """Dipole whose placed vortices are exactly ``plus`` and ``minus``."""
    a = geom.a
    uc, vc = 0.5 * (plus[0] + minus[0]), 0.5 * (plus[1] + minus[1])
    h = math.cosh(vc / a)
    x = a * h * (plus[0] - minus[0])
    y = h * (plus[1] - minus[1])
    return DipoleState(uc, vc, math.atan2(y, x), math.hypot(x, y), mu)


def _induced(geom: CatenoidGeometry, ut, vt, us, vs, gs) -> tuple[np.ndarray, np.ndarray]:
    """Velocity at targets ``(ut, vt)`` induced by sources ``(us, vs, gs)``."""
    a = geom.a
    du = ut[:, None] - us[None, :]
    dv = (vt[:, None] - vs[None, :]) / a
    f = 2.0 * np.sinh(0.5 * dv) ** 2 + 2.0 * np.sin(0.5 * du) ** 2
    if f.size and f.min() < EPS_COLL:
        i, j = np.unravel_index(np.argmin(f), f.shape)
        raise CoincidentVortices((int(i), int(j)), float(f[i, j]))
    inv = 1.0 / (4.0 * _PI * a * np.cosh(vt / a) ** 2)
    v_dot = inv * ((np.sin(du) / f) @ gs)
    u_dot = -(inv / a) * ((np.sinh(dv) / f) @ gs)
    return u_dot, v_dot


def pair_velocities(geom: CatenoidGeometry, d: DipoleState) -> PairVelocities:
    """Velocities of the two vortices of an isolated dipole, curvature terms included."""
    a = geom.a
    p, m = place_vortices(geom, d)
    u = np.array([p.u, m.u])
    v = np.array([p.v, m.v])
    gamma = np.array([d.mu, -d.mu])
    up, vp = _induced(geom, u[:1], v[:1], u[1:], v[1:], gamma[1:])
    um, vm = _induced(geom, u[1:], v[1:], u[:1], v[:1], gamma[:1])
    u_dot = np.concatenate([up, um])
    v_dot = np.concatenate([vp, vm])
    u_dot = u_dot + gamma * np.tanh(v / a) / (4.0 * _PI * a * a * np.cosh(v / a) ** 2)
    return PairVelocities(float(u_dot[0]), float(v_dot[0]), float(u_dot[1]), float(v_dot[1]))


def frame_rotation(geom: CatenoidGeometry, d: DipoleState, w: PairVelocities) -> float:
    """Rate at which the differential velocity ``w`` turns the dipole axis.

    The frame components ``A = a (h_+ u_dot_+ - h_- u_dot_-)`` and
    ``B = h_+ v_dot_+ - h_- v_dot_-`` are projected on ``(-sin alpha, cos alpha)``.
    """
    a = geom.a
    p, m = place_vortices(geom, d)
    hp, hm = math.cosh(p.v / a), math.cosh(m.v / a)
    big_a = a * (hp * w.u_plus - hm * w.u_minus)
    big_b = hp * w.v_plus - hm * w.v_minus
    return (-math.sin(d.alpha) * big_a + math.cos(d.alpha) * big_b) / d.ell


def _closed_form_parts(geom: CatenoidGeometry, d: DipoleState):
    a = geom.a
    sech = 1.0 / math.cosh(d.v / a)
    sa, ca = math.sin(d.alpha), math.cos(d.alpha)
    x = d.ell * ca * sech / a
    y = d.ell * sa * sech / a
    # cos x - cosh y without cancellation
    den = -2.0 * math.sin(0.5 * x) ** 2 - 2.0 * math.sinh(0.5 * y) ** 2
    if -den < EPS_COLL:
        raise CoincidentVortices((0, 1), -den)
    shift = 0.5 * d.ell * sech * sa
    wm, wp = (d.v - shift) / a, (d.v + shift) / a
    return a, sa, ca, x, y, den, wm, wp


def self_propulsion_full(geom: CatenoidGeometry, d: DipoleState) -> tuple[float, float]:
    """Exact center velocity ``(u_dot, v_dot)`` induced by the dipole on itself.

    Closed form of the mean of the two vortex velocities from
    :func:`pair_velocities`.
    """
    a, _, _, x, y, den, wm, wp = _closed_form_parts(geom, d)
    sm2, sp2 = 1.0 / math.cosh(wm) ** 2, 1.0 / math.cosh(wp) ** 2
    sinh_y = math.sinh(y)
    u_dot = -d.mu / (8.0 * a * a * _PI * den) * (
        sm2 * (sinh_y + den * math.tanh(wm)) + sp2 * (sinh_y - den * math.tanh(wp))
    )
    v_dot = d.mu * (sm2 + sp2) * math.sin(x) / (8.0 * a * _PI * den)
    return u_dot, v_dot


def self_propulsion_truncated(geom: CatenoidGeometry, d: DipoleState) -> tuple[float, float]:
    """Leading-order self-propulsion, normal to the axis with speed ``mu sech(v/a) / (2 pi ell)``."""
    a = geom.a
    sech = 1.0 / math.cosh(d.v / a)
    scale = d.mu * sech / (2.0 * _PI * d.ell)
    return scale * math.sin(d.alpha) / a, -scale * math.cos(d.alpha)


def self_rotation_full(geom: CatenoidGeometry, d: DipoleState) -> float:
    """Exact self-induced rotation of the axis, without the frame-transport term."""
    return frame_rotation(geom, d, pair_velocities(geom, d))


def self_rotation_closed_form(geom: CatenoidGeometry, d: DipoleState) -> float:
    """Independent closed form of :func:`self_rotation_full`."""
    a, sa, ca, x, y, den, wm, wp = _closed_form_parts(geom, d)
    common = ca * math.sin(x) + sa * math.sinh(y)
    minus = -(common + den * sa * math.tanh(wm)) / math.cosh(wm)
    plus = (common - den * sa * math.tanh(wp)) / math.cosh(wp)
    return d.mu / (4.0 * a * d.ell * _PI * den) * (minus + plus)


def self_rotation_leading(geom: CatenoidGeometry, d: DipoleState) -> float:
    """First nonvanishing term of the self-rotation, linear in ``ell``."""
    a = geom.a
    t = math.tanh(d.v / a)
    sech = 1.0 / math.cosh(d.v / a)
    s2, c2 = math.sin(d.alpha) ** 2, math.cos(d.alpha) ** 2
    return (
        -d.mu * sech**3 * math.sin(d.alpha) * t * d.ell
        * (c2 - 6.0 * s2 + 6.0 * s2 * t * t)
        / (24.0 * a**3 * _PI)
    )


def _placed(geom: CatenoidGeometry, sys: DipoleSystemState):
    u = np.empty(2 * sys.n)
    v = np.empty(2 * sys.n)
    g = np.empty(2 * sys.n)
    for k, d in enumerate(sys.dipoles):
        p, m = place_vortices(geom, d)
        u[2 * k : 2 * k + 2] = (p.u, m.u)
        v[2 * k : 2 * k + 2] = (p.v, m.v)
        g[2 * k : 2 * k + 2] = (d.mu, -d.mu)
    return u, v, g


def external_advection(
    geom: CatenoidGeometry, sys: DipoleSystemState, n: int, center_metric: bool = False
) -> ExternalAdvection:
    """Velocity induced on dipole ``n`` by the vortices of every other dipole.

    Returns the mean over the two vortices and the per-vortex velocities.  By
    default each vortex uses the metric factor at its own position, which makes
    the result an exact part of the full point-vortex field.  With
    ``center_metric=True`` the factor is taken at the dipole center instead.
    """
    u, v, g = _placed(geom, sys)
    others = np.ones(u.size, dtype=bool)
    others[2 * n : 2 * n + 2] = False
    ut, vt = u[~others], v[~others]
    u_dot, v_dot = _induced(geom, ut, vt, u[others], v[others], g[others])
    if center_metric:
        a = geom.a
        rescale = (np.cosh(vt / a) / math.cosh(sys.dipoles[n].v / a)) ** 2
        u_dot, v_dot = u_dot * rescale, v_dot * rescale
    w = PairVelocities(float(u_dot[0]), float(v_dot[0]), float(u_dot[1]), float(v_dot[1]))
    return ExternalAdvection(0.5 * (w.u_plus + w.u_minus), 0.5 * (w.v_plus + w.v_minus), w)


def _dipole_rates(geom, sys, n, mode, ext):
    d = sys.dipoles[n]
    if mode is Mode.FULL:
        u_self, v_self = self_propulsion_full(geom, d)
        rot_self = self_rotation_full(geom, d)
    else:
        u_self, v_self = self_propulsion_truncated(geom, d)
        rot_self = self_rotation_leading(geom, d)
    u_dot = u_self + ext.u_dot
    v_dot = v_self + ext.v_dot
    rot_ext = frame_rotation(geom, d, ext.vortices) if sys.n > 1 else 0.0
    alpha_dot = rot_self + rot_ext + math.tanh(d.v / geom.a) * u_dot
    return u_dot, v_dot, alpha_dot


def orientation_rate(
    geom: CatenoidGeometry, sys: DipoleSystemState, n: int, mode: Mode | str = Mode.FULL
) -> float:
    """Total ``alpha_dot`` of dipole ``n``: self and external rotation plus frame transport."""
    mode = Mode(mode)
    return _dipole_rates(geom, sys, n, mode, external_advection(geom, sys, n))[2]


def dipole_system_rhs(
    geom: CatenoidGeometry, sys: DipoleSystemState, mode: Mode | str = Mode.FULL
) -> np.ndarray:
    """Rates ``(u_dot, v_dot, alpha_dot)`` for every dipole, shape ``(N, 3)``."""
    mode = Mode(mode)
    out = np.empty((sys.n, 3))
    for n in range(sys.n):
        ext = external_advection(geom, sys, n) if sys.n > 1 else ExternalAdvection(
            0.0, 0.0, PairVelocities(0.0, 0.0, 0.0, 0.0)
        )
        out[n] = _dipole_rates(geom, sys, n, mode, ext)
    return out


def dipole_vector_field(geom: CatenoidGeometry, template: DipoleSystemState, mode: Mode | str = Mode.FULL):
    """Flat ``f(t, y)`` over ``[u_1, v_1, alpha_1, ...]``; ``ell`` and ``mu`` come from ``template``."""
    mode = Mode(mode)

    def f(t: float, y: np.ndarray) -> np.ndarray:
        return dipole_system_rhs(geom, template.with_vector(y), mode).ravel()

    return f


def center_invariants(geom: CatenoidGeometry, sys: DipoleSystemState, mode: Mode | str = Mode.FULL):
    """Geodesic invariants ``(L, E)`` of each center's instantaneous motion."""
    rates = dipole_system_rhs(geom, sys, mode)
    return [
        geodesic_invariants(geom, GeodesicState(d.u, d.v, r[0], r[1]))
        for d, r in zip(sys.dipoles, rates)
    ]


def integrate_dipoles(
    geom: CatenoidGeometry,
    sys: DipoleSystemState,
    t_final: float,
    mode: Mode | str = Mode.FULL,
    config: IntegratorConfig | None = None,
) -> TrajectoryRecord:
    """Integrate the reduced system, recording ``L_n`` and ``E_n`` for every dipole."""
    mode = Mode(mode)
    for d in sys.dipoles:
        d.check_validity(geom)

    def diag(t: float, y: np.ndarray) -> dict[str, float]:
        out = {}
        for k, (ell_k, e_k) in enumerate(center_invariants(geom, sys.with_vector(y), mode), 1):
            out[f"L{k}"] = ell_k
            out[f"E{k}"] = e_k
        return out

    return integrate(dipole_vector_field(geom, sys, mode), sys.to_vector(), 0.0, t_final, config, diag)
