"""Incomplete elliptic integral of the first kind in the parameter convention.

    F(phi | m) = int_0^phi dtheta / sqrt(1 - m sin^2 theta)

The primary evaluation goes through Carlson's symmetric integral ``R_F`` with
the duplication theorem.  :func:`elliptic_f_oracle` integrates the defining
integral by adaptive quadrature and is kept only for cross-checking.
"""

from __future__ import annotations

import math

from scipy import integrate

from .errors import DomainError

# Carlson's error parameter; the truncated series below is accurate to O(r).
_CARLSON_R = 1e-17
_CARLSON_Q_SCALE = (3.0 * _CARLSON_R) ** (-1.0 / 6.0)
_HALF_PI = 0.5 * math.pi


def carlson_rf(x: float, y: float, z: float) -> float:
    """Carlson's symmetric elliptic integral ``R_F(x, y, z)``.

    At most one argument may be zero; all must be nonnegative.
    """
    if min(x, y, z) < 0.0 or (x == 0.0) + (y == 0.0) + (z == 0.0) > 1:
        raise DomainError(f"R_F undefined for ({x}, {y}, {z})")
    a0 = (x + y + z) / 3.0
    dx0, dy0 = a0 - x, a0 - y
    q = _CARLSON_Q_SCALE * max(abs(dx0), abs(dy0), abs(a0 - z))
    an = a0
    scale = 1.0
    while q * scale >= abs(an):
        sx, sy, sz = math.sqrt(x), math.sqrt(y), math.sqrt(z)
        lam = sx * sy + sx * sz + sy * sz
        x = 0.25 * (x + lam)
        y = 0.25 * (y + lam)
        z = 0.25 * (z + lam)
        an = 0.25 * (an + lam)
        scale *= 0.25
    X = dx0 * scale / an
    Y = dy0 * scale / an
    Z = -(X + Y)
    e2 = X * Y - Z * Z
    e3 = X * Y * Z
    poly = 1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0
    return poly / math.sqrt(an)


def _check_domain(phi: float, m: float) -> None:
    if not (math.isfinite(phi) and math.isfinite(m)):
        raise DomainError(f"non-finite arguments phi={phi!r}, m={m!r}")
    if not 0.0 <= m < 1.0:
        raise DomainError(f"parameter m={m!r} outside [0, 1)")
    if abs(phi) > _HALF_PI * (1.0 + 4.0 * 2.0**-52):
        raise DomainError(f"amplitude |phi|={abs(phi)!r} exceeds pi/2")
    if m * math.sin(phi) ** 2 >= 1.0:
        raise DomainError(f"m sin^2(phi) >= 1 for phi={phi!r}, m={m!r}")


def elliptic_f(phi: float, m: float) -> float:
    """Incomplete elliptic integral ``F(phi | m)`` for ``0 <= m < 1``, ``|phi| <= pi/2``.

    Evaluated as ``sin(phi) R_F(cos^2 phi, 1 - m sin^2 phi, 1)``.  The result is
    exactly odd in ``phi`` and returns ``phi`` itself when ``m == 0``.
    """
    phi = float(phi)
    m = float(m)
    _check_domain(phi, m)
    if m == 0.0 or phi == 0.0:
        return phi
    sign = 1.0 if phi > 0.0 else -1.0
    phi = min(abs(phi), _HALF_PI)
    s = math.sin(phi)
    c = math.cos(phi)
    return sign * s * carlson_rf(c * c, 1.0 - m * s * s, 1.0)


def elliptic_f_oracle(phi: float, m: float) -> float:
    """Reference value of ``F(phi | m)`` by adaptive Gauss-Kronrod quadrature."""
    phi = float(phi)
    m = float(m)
    _check_domain(phi, m)
    value, _ = integrate.quad(
        lambda th: 1.0 / math.sqrt(1.0 - m * math.sin(th) ** 2),
        0.0,
        phi,
        epsabs=1e-14,
        epsrel=1e-13,
        limit=200,
    )
    return value
