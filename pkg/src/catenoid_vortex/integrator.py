"""Adaptive explicit Runge-Kutta integration with sampled output.

Two embedded Dormand-Prince pairs are available: the 5(4) pair ("dopri5")
and the 8(5,3) pair ("dop853", the default, much cheaper at the tight
tolerances used for conservation checks).  Both use FSAL, local
extrapolation and a proportional-integral step-size controller.  Output is taken on a
uniform grid of sample times; steps are shortened to land on those times
exactly, so recorded states carry no interpolation error.

Conservation is only ever *monitored* here.  Nothing projects the state back
onto a level set of the invariants.
"""

from __future__ import annotations

import enum
import math
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field

import numpy as np

from ._tableaus import TABLEAUS, Tableau
from .errors import CoincidentVortices, DomainError, MaxStepsExceeded, StepFailure

System = Callable[[float, np.ndarray], np.ndarray]
DiagnosticsFn = Callable[[float, np.ndarray], Mapping[str, float]]

_SAFETY = 0.9
_FAC_MIN = 0.2
_FAC_MAX = 10.0


class Termination(str, enum.Enum):
    COMPLETED = "completed"
    COLLISION = "collision"
    STEP_FAILURE = "step_failure"
    MAX_STEPS = "max_steps"


@dataclass(frozen=True)
class IntegratorConfig:
    """Tolerances and output cadence of one integration."""

    rel_tol: float = 1e-12
    abs_tol: float = 1e-12
    max_step: float = math.inf
    sample_interval: float = 0.01
    max_steps: int = 2_000_000
    method: str = "dop853"

    def __post_init__(self) -> None:
        for name in ("rel_tol", "abs_tol"):
            tol = getattr(self, name)
            if not 1e-15 <= tol <= 1e-2:
                raise DomainError(f"{name}={tol!r} outside [1e-15, 1e-2]")
        if not self.max_step > 0:
            raise DomainError("max_step must be positive")
        if not (self.sample_interval > 0 and math.isfinite(self.sample_interval)):
            raise DomainError("sample_interval must be positive and finite")
        if int(self.max_steps) != self.max_steps or self.max_steps <= 0:
            raise DomainError("max_steps must be a positive integer")
        if self.method not in TABLEAUS:
            raise DomainError(f"unknown method {self.method!r}; choose from {sorted(TABLEAUS)}")


@dataclass
class TrajectoryRecord:
    """Sampled trajectory plus per-sample diagnostic series."""

    times: np.ndarray
    states: np.ndarray
    diagnostics: dict[str, np.ndarray] = field(default_factory=dict)
    termination: Termination = Termination.COMPLETED
    n_steps: int = 0
    n_rejected: int = 0
    n_evals: int = 0

    def __len__(self) -> int:
        return len(self.times)

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1]

    def drift(self, name: str) -> np.ndarray:
        """Absolute deviation ``|q(t) - q(t0)|`` of a diagnostic series."""
        q = self.diagnostics[name]
        return np.abs(q - q[0])

    def max_drift(self, name: str) -> float:
        return float(self.drift(name).max())

    def max_relative_drift(self, name: str) -> float:
        """Largest ``|q(t) - q(t0)| / |q(t0)|``; the absolute drift when ``q(t0) == 0``."""
        q = self.diagnostics[name]
        scale = abs(q[0])
        return self.max_drift(name) / scale if scale > 0 else self.max_drift(name)


def _sample_times(t0: float, t_final: float, dt: float) -> np.ndarray:
    n = int(math.floor((t_final - t0) / dt * (1.0 + 1e-12)))
    times = t0 + dt * np.arange(1, n + 1)
    times = times[times < t_final - 1e-12 * max(1.0, abs(t_final))]
    return np.append(times, t_final)


def _initial_step(f: System, t0, y0, k0, order, rtol, atol) -> float:
    # Hairer, Norsett & Wanner, starting step heuristic.
    scale = atol + rtol * np.abs(y0)
    d0 = np.max(np.abs(y0) / scale)
    d1 = np.max(np.abs(k0) / scale)
    h0 = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
    k1 = f(t0 + h0, y0 + h0 * k0)
    d2 = np.max(np.abs(k1 - k0) / scale) / h0
    if max(d1, d2) <= 1e-15:
        h1 = max(1e-6, 1e-3 * h0)
    else:
        h1 = (0.01 / max(d1, d2)) ** (1.0 / (order + 1))
    return min(100.0 * h0, h1)


def _step(f, tab: Tableau, t, y, h, K, rtol, atol):
    """One trial step; fills ``K`` and returns the new state and scaled error."""
    n_stages = len(tab.b)
    for s in range(1, n_stages):
        K[s] = f(t + tab.c[s] * h, y + h * (tab.a[s, :s] @ K[:s]))
    y_new = y + h * (tab.b @ K[:n_stages])
    K[n_stages] = f(t + h, y_new)
    scale = atol + rtol * np.maximum(np.abs(y), np.abs(y_new))
    if len(tab.b_error) == 1:
        err = h * np.max(np.abs(tab.b_error[0] @ K) / scale)
    else:
        e5 = np.max(np.abs(tab.b_error[0] @ K) / scale)
        e3 = np.max(np.abs(tab.b_error[1] @ K) / scale)
        denom = math.sqrt(e5 * e5 + 0.01 * e3 * e3)
        err = h * e5 * e5 / denom if denom > 0 else 0.0
    err = float(err)
    if not math.isfinite(err):
        err = 1e10
    return y_new, err


def _record(times, states, diagnostics, termination, stats) -> TrajectoryRecord:
    t = np.asarray(times, dtype=float)
    s = np.asarray(states, dtype=float)
    diag: dict[str, np.ndarray] = {}
    if diagnostics is not None and len(t):
        rows = [diagnostics(ti, yi) for ti, yi in zip(t, s)]
        diag = {key: np.array([row[key] for row in rows], dtype=float) for key in rows[0]}
    return TrajectoryRecord(t, s, diag, termination, *stats)


def integrate(
    system: System,
    y0,
    t0: float,
    t_final: float,
    config: IntegratorConfig | None = None,
    diagnostics: DiagnosticsFn | None = None,
) -> TrajectoryRecord:
    """Integrate ``y' = system(t, y)`` from ``t0`` to ``t_final``.

    Parameters
    ----------
    system : callable
        Right-hand side over a flat float vector.
    y0 : array_like
        Finite initial state.
    t0, t_final : float
        Time span; ``t_final > t0``.
    config : IntegratorConfig, optional
        Tolerances, step limits and sample cadence.
    diagnostics : callable, optional
        ``diagnostics(t, y) -> {name: value}`` evaluated at every sample.

    Returns
    -------
    TrajectoryRecord
        Samples at ``t0``, ``t0 + k * sample_interval`` and ``t_final``.

    Raises
    ------
    StepFailure, MaxStepsExceeded
        With the partial trajectory in ``exc.record``.
    CoincidentVortices
        Propagated from ``system`` with ``exc.time`` and ``exc.record`` set.
    """
    cfg = config or IntegratorConfig()
    if not t_final > t0:
        raise DomainError(f"t_final={t_final!r} must exceed t0={t0!r}")
    y = np.array(y0, dtype=float).ravel()
    if not np.all(np.isfinite(y)):
        raise DomainError("initial state contains non-finite values")

    rtol, atol = cfg.rel_tol, cfg.abs_tol
    targets = _sample_times(float(t0), float(t_final), cfg.sample_interval)
    times = [float(t0)]
    states = [y.copy()]
    t = float(t0)
    n_steps = n_rejected = 0
    n_evals = 0

    def f(tt, yy):
        nonlocal n_evals
        n_evals += 1
        return np.asarray(system(tt, yy), dtype=float)

    def stats():
        return n_steps, n_rejected, n_evals

    tab: Tableau = TABLEAUS[cfg.method]
    n_stages = len(tab.b)
    beta = 0.2 / tab.order
    alpha = 1.0 / (tab.error_order + 1) - 0.75 * beta
    K = np.empty((n_stages + 1, y.size))
    try:
        K[0] = f(t, y)
        h = min(_initial_step(f, t, y, K[0], tab.order, rtol, atol), cfg.max_step)
        err_prev = 1e-4
        rejected_last = False
        i_target = 0
        while i_target < len(targets):
            if n_steps + n_rejected >= cfg.max_steps:
                raise MaxStepsExceeded(f"step budget {cfg.max_steps} exhausted at t={t:.9g}")
            target = targets[i_target]
            remaining = target - t
            h_try = min(h, cfg.max_step)
            lands = h_try >= remaining
            if lands:
                h_try = remaining
            if h_try <= 16.0 * np.finfo(float).eps * max(1.0, abs(t)):
                raise StepFailure(f"step size underflow at t={t:.9g}")

            y_new, err = _step(f, tab, t, y, h_try, K, rtol, atol)

            if err <= 1.0:
                n_steps += 1
                t = target if lands else t + h_try
                y = y_new
                K[0] = K[n_stages]
                fac = _SAFETY * err ** (-alpha) * err_prev**beta if err > 0 else _FAC_MAX
                fac = min(_FAC_MAX, max(_FAC_MIN, fac))
                if rejected_last:
                    fac = min(fac, 1.0)
                h_next = h_try * fac
                h = max(h, h_next) if lands and h_try < h else h_next
                err_prev = max(err, 1e-4)
                rejected_last = False
                if lands:
                    times.append(t)
                    states.append(y.copy())
                    i_target += 1
            else:
                n_rejected += 1
                h = h_try * max(_FAC_MIN, _SAFETY * err ** (-alpha))
                rejected_last = True
    except CoincidentVortices as exc:
        if exc.time is None:
            exc.time = t
        exc.record = _record(times, states, diagnostics, Termination.COLLISION, stats())
        raise
    except StepFailure as exc:
        exc.record = _record(times, states, diagnostics, Termination.STEP_FAILURE, stats())
        raise
    except MaxStepsExceeded as exc:
        exc.record = _record(times, states, diagnostics, Termination.MAX_STEPS, stats())
        raise

    return _record(times, states, diagnostics, Termination.COMPLETED, stats())
