"""Point vortices on the catenoid: vector field, Hamiltonian and momentum map.

State vectors handed to the integrator are interleaved,
``[u_1, v_1, u_2, v_2, ...]``, matching the column order of trajectory files.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CoincidentVortices, DomainError
from .geometry import (
    EPS_COLL,
    CatenoidGeometry,
    area_weight,
    kernel,
    log_metric_factor,
    momentum_potential,
)
from .integrator import IntegratorConfig, TrajectoryRecord, integrate

_FOUR_PI = 4.0 * math.pi


@dataclass(frozen=True)
class VortexSystemState:
    """Positions ``(u_i, v_i)`` and circulations ``gamma_i`` of N point vortices."""

    u: np.ndarray
    v: np.ndarray
    gamma: np.ndarray

    def __post_init__(self) -> None:
        u = np.array(self.u, dtype=float).ravel()
        v = np.array(self.v, dtype=float).ravel()
        g = np.array(self.gamma, dtype=float).ravel()
        if not (u.shape == v.shape == g.shape) or u.size == 0:
            raise DomainError("u, v and gamma must be nonempty and of equal length")
        if not (np.all(np.isfinite(u)) and np.all(np.isfinite(v)) and np.all(np.isfinite(g))):
            raise DomainError("vortex state contains non-finite values")
        if np.any(g == 0.0):
            raise DomainError("every circulation must be nonzero")
        for name, arr in (("u", u), ("v", v), ("gamma", g)):
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def n(self) -> int:
        return self.u.size

    def to_vector(self) -> np.ndarray:
        y = np.empty(2 * self.n)
        y[0::2] = self.u
        y[1::2] = self.v
        return y

    @classmethod
    def from_vector(cls, y, gamma) -> VortexSystemState:
        y = np.asarray(y, dtype=float)
        return cls(y[0::2], y[1::2], gamma)

    def rotated(self, theta: float) -> VortexSystemState:
        return VortexSystemState(self.u + theta, self.v, self.gamma)


def _pair_terms(geom: CatenoidGeometry, u: np.ndarray, v: np.ndarray):
    """Pairwise ``sin(du)/F`` and ``sinh(dv/a)/F``; diagonals come out zero."""
    du = u[:, None] - u[None, :]
    dv = (v[:, None] - v[None, :]) / geom.a
    f = 2.0 * np.sinh(0.5 * dv) ** 2 + 2.0 * np.sin(0.5 * du) ** 2
    n = u.size
    if n > 1:
        off = f + np.eye(n)
        fmin = off.min()
        if fmin < EPS_COLL:
            i, j = np.unravel_index(np.argmin(off), off.shape)
            raise CoincidentVortices((int(min(i, j)), int(max(i, j))), float(fmin))
        f = off
    else:
        f = np.ones_like(f)
    return np.sin(du) / f, np.sinh(dv) / f, f


def _velocities(geom: CatenoidGeometry, u, v, gamma):
    a = geom.a
    s, sh, _ = _pair_terms(geom, u, v)
    inv = 1.0 / (_FOUR_PI * a * np.cosh(v / a) ** 2)
    v_dot = inv * (s @ gamma)
    u_dot = (inv / a) * (gamma * np.tanh(v / a) - sh @ gamma)
    return u_dot, v_dot


def rhs(geom: CatenoidGeometry, state: VortexSystemState) -> tuple[np.ndarray, np.ndarray]:
    """Coordinate velocities ``(u_dot, v_dot)`` of every vortex.

    Each vortex is advected by all others through the pair kernel and, in
    ``u_dot``, by its own curvature-induced term ``gamma_i tanh(v_i/a)``.
    """
    return _velocities(geom, state.u, state.v, state.gamma)


def vector_field(geom: CatenoidGeometry, gamma):
    """Flat-vector right-hand side ``f(t, y)`` for :func:`integrate`."""
    gamma = np.array(gamma, dtype=float)

    def f(t: float, y: np.ndarray) -> np.ndarray:
        u_dot, v_dot = _velocities(geom, y[0::2], y[1::2], gamma)
        out = np.empty_like(y)
        out[0::2] = u_dot
        out[1::2] = v_dot
        return out

    return f


def hamiltonian(geom: CatenoidGeometry, state: VortexSystemState) -> float:
    """Pair interaction energy plus the curvature self-energy of each vortex."""
    g = state.gamma
    self_part = -float(np.sum(g * g * log_metric_factor(geom, state.v))) / _FOUR_PI
    if state.n == 1:
        return self_part
    i, j = np.triu_indices(state.n, k=1)
    f = kernel(geom, state.u[i] - state.u[j], state.v[i] - state.v[j])
    if f.min() < EPS_COLL:
        k = int(np.argmin(f))
        raise CoincidentVortices((int(i[k]), int(j[k])), float(f[k]))
    return float(np.sum(g[i] * g[j] * np.log(f))) / _FOUR_PI + self_part


def momentum_map(geom: CatenoidGeometry, state: VortexSystemState) -> float:
    """Azimuthal momentum ``J = sum_i gamma_i S(v_i)``, conserved by the flow."""
    return float(np.sum(state.gamma * momentum_potential(geom, state.v)))


def momentum_flux(geom: CatenoidGeometry, state: VortexSystemState) -> float:
    """``dJ/dt`` evaluated from the vector field; zero up to rounding."""
    _, v_dot = rhs(geom, state)
    return float(np.sum(state.gamma * area_weight(geom, state.v) * v_dot))


def diagnostics(geom: CatenoidGeometry, gamma):
    """Per-sample ``{"H": ..., "J": ...}`` callback for the integrator."""
    gamma = np.array(gamma, dtype=float)

    def diag(t: float, y: np.ndarray) -> dict[str, float]:
        state = VortexSystemState.from_vector(y, gamma)
        return {"H": hamiltonian(geom, state), "J": momentum_map(geom, state)}

    return diag


def hamiltonian_consistency_check(
    geom: CatenoidGeometry, state: VortexSystemState, h_step: float = 1e-6
) -> float:
    """Largest mismatch between the vector field and Hamilton's equations.

    Central differences of :func:`hamiltonian` are compared with
    ``gamma_i a h^2(v_i) v_dot_i = dH/du_i`` and
    ``gamma_i a h^2(v_i) u_dot_i = -dH/dv_i``.
    """
    if not h_step > 0:
        raise DomainError("h_step must be positive")
    u_dot, v_dot = rhs(geom, state)
    weight = state.gamma * area_weight(geom, state.v)
    residual = 0.0
    for i in range(state.n):
        for coord in ("u", "v"):
            plus = {"u": state.u.copy(), "v": state.v.copy()}
            minus = {"u": state.u.copy(), "v": state.v.copy()}
            plus[coord][i] += h_step
            minus[coord][i] -= h_step
            dh = (
                hamiltonian(geom, VortexSystemState(plus["u"], plus["v"], state.gamma))
                - hamiltonian(geom, VortexSystemState(minus["u"], minus["v"], state.gamma))
            ) / (2.0 * h_step)
            lhs = weight[i] * (v_dot[i] if coord == "u" else u_dot[i])
            expected = dh if coord == "u" else -dh
            residual = max(residual, abs(lhs - expected))
    return residual


def integrate_vortices(
    geom: CatenoidGeometry,
    state: VortexSystemState,
    t_final: float,
    config: IntegratorConfig | None = None,
) -> TrajectoryRecord:
    """Evolve ``state`` to ``t_final`` recording ``H`` and ``J`` at every sample."""
    return integrate(
        vector_field(geom, state.gamma),
        state.to_vector(),
        0.0,
        t_final,
        config,
        diagnostics(geom, state.gamma),
    )
