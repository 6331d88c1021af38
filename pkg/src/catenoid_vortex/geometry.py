"""Intrinsic geometry of the catenoid of throat radius ``a``.

Coordinates are ``(u, v)``: ``u`` the azimuthal angle (kept unwrapped) and
``v`` the axial height.  The metric is conformally flat,

    ds^2 = cosh^2(v/a) (dv^2 + a^2 du^2),

so every quantity below is a closed-form expression in ``cosh``, ``sinh`` and
``tanh`` of ``v/a``.  All functions accept scalars or numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import CoincidentVortices, DomainError

#: Smallest admissible pair kernel before the logarithm is taken.
EPS_COLL = 1e-12

_FOUR_PI = 4.0 * math.pi


@dataclass(frozen=True)
class CatenoidGeometry:
    """Catenoid of throat radius ``a`` (length units)."""

    a: float = 1.0

    def __post_init__(self) -> None:
        a = float(self.a)
        if not (math.isfinite(a) and a > 0.0):
            raise DomainError(f"throat radius must be positive and finite, got {self.a!r}")
        object.__setattr__(self, "a", a)


class SurfacePoint(NamedTuple):
    u: float
    v: float


def metric_factor(geom: CatenoidGeometry, v):
    """Conformal factor ``h(v) = cosh(v/a)``."""
    return np.cosh(np.asarray(v, dtype=float) / geom.a)


def log_metric_factor(geom: CatenoidGeometry, v):
    """``log cosh(v/a)`` evaluated without overflow for large ``|v|``."""
    x = np.abs(np.asarray(v, dtype=float) / geom.a)
    return x + np.log1p(np.exp(-2.0 * x)) - math.log(2.0)


def area_weight(geom: CatenoidGeometry, v):
    """Area density ``a cosh^2(v/a)``; also the symplectic weight per unit circulation."""
    return geom.a * np.cosh(np.asarray(v, dtype=float) / geom.a) ** 2


def kernel(geom: CatenoidGeometry, du, dv):
    """Pair kernel from coordinate differences.

    Uses ``cosh x - cos y = 2 sinh^2(x/2) + 2 sin^2(y/2)`` which keeps full
    relative precision for close pairs.
    """
    du = np.asarray(du, dtype=float)
    dv = np.asarray(dv, dtype=float)
    return 2.0 * np.sinh(0.5 * dv / geom.a) ** 2 + 2.0 * np.sin(0.5 * du) ** 2


def pair_kernel(geom: CatenoidGeometry, p: SurfacePoint, q: SurfacePoint) -> float:
    """``F(p, q) = cosh((v_p - v_q)/a) - cos(u_p - u_q)``; zero only for coincident points."""
    return float(kernel(geom, p[0] - q[0], p[1] - q[1]))


def greens_function(geom: CatenoidGeometry, p: SurfacePoint, q: SurfacePoint) -> float:
    """Hydrodynamic Green's function ``log(F(p, q)) / 4 pi``."""
    f = pair_kernel(geom, p, q)
    if f < EPS_COLL:
        raise CoincidentVortices((0, 1), f)
    return math.log(f) / _FOUR_PI


def momentum_potential(geom: CatenoidGeometry, v):
    """Antiderivative of the area weight, ``(a/2) v + (a^2/4) sinh(2v/a)``.

    It vanishes at the neck and generates the conserved azimuthal momentum.
    """
    a = geom.a
    v = np.asarray(v, dtype=float)
    return 0.5 * a * v + 0.25 * a * a * np.sinh(2.0 * v / a)


def christoffel(geom: CatenoidGeometry, v):
    """Nonvanishing Christoffel symbols ``(G^v_vv, G^v_uu, G^u_uv)`` at height ``v``."""
    a = geom.a
    t = np.tanh(np.asarray(v, dtype=float) / a)
    return t / a, -a * t, t / a


def transport_rotation_rate(geom: CatenoidGeometry, v, u_dot):
    """Rotation rate of a parallel-transported tangent vector, ``tanh(v/a) u_dot``.

    The angle is measured in the orthonormal frame ``(e_u, e_v)``; moving along
    ``v`` alone never rotates the frame.
    """
    return np.tanh(np.asarray(v, dtype=float) / geom.a) * np.asarray(u_dot, dtype=float)


def embed(geom: CatenoidGeometry, p: SurfacePoint):
    """Cartesian coordinates of a surface point (accepts arrays of ``u``/``v``)."""
    u = np.asarray(p[0], dtype=float)
    v = np.asarray(p[1], dtype=float)
    r = geom.a * np.cosh(v / geom.a)
    x, y, z = r * np.cos(u), r * np.sin(u), v + 0.0 * u
    if x.ndim == 0:
        return float(x), float(y), float(z)
    return x, y, z
