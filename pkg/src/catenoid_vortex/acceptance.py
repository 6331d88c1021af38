"""Acceptance checks with their stated tolerances.

Every check returns :class:`CriterionResult` rows carrying the measured value
and the threshold, so the same code drives the test suite and the
``verify`` command.  Random samples use fixed seeds.
"""

from __future__ import annotations

import math
import time
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from . import dipole_model as dm
from .elliptic import elliptic_f, elliptic_f_oracle
from .geodesics import (
    TAU_LAMBDA,
    Regime,
    bounce_u_of_v,
    classify,
    integrate_geodesic,
    lambda_from_dipole,
    mean_state,
    orbit_u0,
    orbit_u_of_v,
    state_on_orbit,
)
from .geometry import CatenoidGeometry
from .integrator import IntegratorConfig
from .scenarios import catalogue
from .scenarios.analysis import ScatteringClass, vortex_pair_center
from .scenarios.runner import run_scenario
from .vortex_system import (
    VortexSystemState,
    hamiltonian_consistency_check,
    integrate_vortices,
    momentum_flux,
    rhs,
)


@dataclass(frozen=True)
class CriterionResult:
    criterion: int
    name: str
    passed: bool
    measured: float
    tolerance: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} [{self.criterion}] {self.name}: measured={self.measured:.3e} limit={self.tolerance:.3e}"
        return f"{text} ({self.detail})" if self.detail else text


def _below(criterion, name, measured, tol, detail=""):
    return CriterionResult(criterion, name, bool(measured <= tol), float(measured), tol, detail)


def _within(criterion, name, measured, lo, hi):
    ok = lo <= measured <= hi
    return CriterionResult(criterion, name, bool(ok), float(measured), hi, f"required in [{lo}, {hi}]")


def _timed(config):
    start = time.perf_counter()
    result = run_scenario(config)
    return result, time.perf_counter() - start


def _conservation_rows(criterion, configs, tols, runtime_limit):
    rows = []
    for config, tol in zip(configs, tols):
        result, elapsed = _timed(config)
        rec = result.record
        for q in ("H", "J"):
            rows.append(_below(criterion, f"{config.name} max|d{q}|", rec.max_drift(q), tol))
        rows.append(_below(criterion, f"{config.name} runtime [s]", elapsed, runtime_limit))
    return rows


def conservation_geodesic_scenarios() -> list[CriterionResult]:
    configs = [catalogue.meridional(), catalogue.neck(), catalogue.trapped()]
    return _conservation_rows(1, configs, [1e-8, 1e-7, 1e-7], 1.0)


def conservation_scattering_scenarios() -> list[CriterionResult]:
    configs = [
        catalogue.direct_scattering(),
        catalogue.exchange_scattering(),
        catalogue.corotating(),
        catalogue.corotating(0.05, 0.05, name="fig7-corotating"),
    ]
    return _conservation_rows(2, configs, [1e-7] * 4, 10.0)


def scattering_classification() -> list[CriterionResult]:
    rows = []
    for config, expected in (
        (catalogue.direct_scattering(), ScatteringClass.DIRECT),
        (catalogue.exchange_scattering(), ScatteringClass.EXCHANGE),
    ):
        outcome = run_scenario(config).outcome
        ratio = min(outcome.distance_ratios.values())
        rows.append(
            CriterionResult(
                3,
                f"{config.name} is {expected.value}",
                outcome.classification is expected,
                ratio,
                1.5,
                f"got {outcome.classification.value}; nearest-partner distance ratio shown",
            )
        )
    return rows


def _initial_lambda(config) -> float:
    geom = config.geometry
    state = config.initial_state()
    u_dot, v_dot = rhs(geom, state)
    return lambda_from_dipole(geom, mean_state(state.u, state.v, u_dot, v_dot))


def geodesic_regimes() -> list[CriterionResult]:
    rows = [_below(4, "fig1 |lambda|", abs(_initial_lambda(catalogue.meridional())), TAU_LAMBDA)]
    for eps in (0.05, 0.025):
        lam = _initial_lambda(catalogue.neck(eps))
        rows.append(_below(4, f"fig2 ||lambda|-1| at eps={eps}", abs(abs(lam) - 1.0), TAU_LAMBDA))
    eps = 0.05
    config = catalogue.trapped(eps)
    lam = _initial_lambda(config)
    rows.append(
        CriterionResult(4, "fig3 lambda > 1", lam > 1.0 + TAU_LAMBDA, lam, 1.0, "supercritical")
    )
    geom = config.geometry
    record = run_scenario(config).record
    path = vortex_pair_center(geom, record, config.initial["gamma"])
    v_turn = geom.a * math.acosh(lam)
    dip = max(0.0, float(v_turn - path.v.min()))
    rows.append(_below(4, "fig3 depth below v_turn", dip, eps**2, "slack eps^2"))
    return rows


def orbit_form_agreement(seed: int = 5) -> list[CriterionResult]:
    geom = CatenoidGeometry(1.0)
    worst = 0.0
    for lam, v0, direction in ((0.3, -1.5, 1), (-0.7, 1.2, -1), (0.95, -1.0, 1), (-0.999, 0.8, -1)):
        start = state_on_orbit(geom, lam, v0, direction)
        spec = classify(geom, start)
        rec = integrate_geodesic(geom, start, 3.0, sample_interval=0.01)
        u_geo = orbit_u_of_v(spec, geom, rec.states[:, 1], orbit_u0(spec, geom, start))
        worst = max(worst, float(np.max(np.abs(u_geo - rec.states[:, 0]))))
    rows = [_below(5, "subcritical orbit form vs ODE", worst, 1e-8)]

    worst = 0.0
    for lam, v0 in ((1.2, 1.5), (-1.5, -2.0), (3.0, 2.5), (-1.05, 1.0)):
        side = 1 if v0 > 0 else -1
        start = state_on_orbit(geom, lam, v0, -side)
        spec = classify(geom, start)
        u_turn = orbit_u0(spec, geom, start)
        rec = integrate_geodesic(geom, start, 4.0, sample_interval=0.01)
        u, v, v_dot = rec.states[:, 0], rec.states[:, 1], rec.states[:, 3]
        keep = np.abs(v) - spec.v_turn > 1e-6
        outgoing = np.sign(v_dot) == np.sign(v)
        u_geo = bounce_u_of_v(spec, geom, v[keep], u_turn, outgoing[keep])
        worst = max(worst, float(np.max(np.abs(u_geo - u[keep]))))
    rows.append(_below(5, "supercritical orbit form vs ODE through the bounce", worst, 1e-8))

    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(200):
        m = rng.uniform(0.0, 0.999)
        phi = rng.uniform(-math.pi / 2, math.pi / 2)
        worst = max(worst, abs(elliptic_f(phi, m) - elliptic_f_oracle(phi, m)))
    rows.append(_below(5, "elliptic_f vs quadrature", worst, 1e-11))
    return rows


def random_vortex_state(rng: np.random.Generator, geom: CatenoidGeometry, n: int) -> VortexSystemState:
    """Random configuration with nonzero circulations and well separated vortices."""
    while True:
        u = rng.uniform(-math.pi, math.pi, n)
        v = rng.uniform(-1.5, 1.5, n) * geom.a
        if n == 1 or np.min(np.abs(np.subtract.outer(u + 1j * v, u + 1j * v)) + np.eye(n)) > 0.05:
            break
    gamma = rng.choice([-1.0, 1.0], n) * rng.uniform(0.5, 2.0, n)
    return VortexSystemState(u, v, gamma)


def _random_states(seed: int, count: int):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        geom = CatenoidGeometry(float(rng.uniform(0.5, 2.0)))
        yield geom, random_vortex_state(rng, geom, int(rng.integers(1, 7)))


def hamiltonian_structure(seed: int = 6) -> list[CriterionResult]:
    worst = max(hamiltonian_consistency_check(g, s) for g, s in _random_states(seed, 100))
    return [_below(6, "finite-difference Hamilton equations, 100 states", worst, 1e-7)]


def _isolated_dipole_deviation(ell: float, v0: float = 0.15, alpha: float = math.pi / 2) -> float:
    geom = CatenoidGeometry(1.0)
    t_final = 3.0 * 2.0 * math.pi * ell
    cfg = IntegratorConfig(sample_interval=t_final / 100)
    d = dm.DipoleState(0.0, v0, alpha, ell)
    reduced = dm.integrate_dipoles(geom, dm.DipoleSystemState((d,)), t_final, dm.Mode.FULL, cfg)
    p, m = dm.place_vortices(geom, d)
    pair = integrate_vortices(geom, VortexSystemState([p.u, m.u], [p.v, m.v], [d.mu, -d.mu]), t_final, cfg)
    u_mean = pair.states[:, 0::2].mean(axis=1)
    v_mean = pair.states[:, 1::2].mean(axis=1)
    h = np.cosh(v_mean / geom.a)
    gap = np.hypot(geom.a * h * (reduced.states[:, 0] - u_mean), h * (reduced.states[:, 1] - v_mean))
    return float(gap.max())


def finite_dipole_convergence() -> list[CriterionResult]:
    rec = run_scenario(catalogue.finite_dipole()).record
    rows = [
        _below(7, "fig8 relative drift of L", rec.max_relative_drift("L1"), 1e-7),
        _below(7, "fig8 relative drift of E", rec.max_relative_drift("E1"), 1e-7),
    ]
    ratio = _isolated_dipole_deviation(0.05) / _isolated_dipole_deviation(0.025)
    rows.append(_within(7, "center vs pair-mean deviation ratio, ell 0.05 -> 0.025", ratio, 3.0, 5.0))
    return rows


def truncation_consistency(seed: int = 8) -> list[CriterionResult]:
    geom = CatenoidGeometry(1.0)

    def rel_gap(ell):
        d = dm.DipoleState(0.3, 0.7, 1.1, ell)
        full = np.array(dm.self_propulsion_full(geom, d))
        trunc = np.array(dm.self_propulsion_truncated(geom, d))
        return np.linalg.norm(full - trunc) / np.linalg.norm(full)

    rows = [_within(8, "truncated vs full propulsion ratio, ell 0.1 -> 0.05", rel_gap(0.1) / rel_gap(0.05), 3.5, 4.5)]
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(100):
        g = CatenoidGeometry(float(rng.uniform(0.5, 2.0)))
        d = dm.DipoleState(
            rng.uniform(-3, 3), rng.uniform(-2, 2) * g.a, rng.uniform(-4, 4),
            rng.uniform(0.01, 0.3) * g.a, rng.uniform(0.5, 2.0) * rng.choice([-1, 1]),
        )
        p, m = dm.place_vortices(g, d)
        u_dot, v_dot = rhs(g, VortexSystemState([p.u, m.u], [p.v, m.v], [d.mu, -d.mu]))
        avg = np.array([u_dot.mean(), v_dot.mean()])
        full = np.array(dm.self_propulsion_full(g, d))
        worst = max(worst, float(np.max(np.abs(full - avg)) / np.max(np.abs(avg))))
    rows.append(_below(8, "closed-form propulsion vs averaged pair velocities", worst, 1e-12, "relative to speed"))
    return rows


def momentum_invariance(seed: int = 9) -> list[CriterionResult]:
    worst = max(abs(momentum_flux(g, s)) for g, s in _random_states(seed, 200))
    return [_below(9, "sum gamma a h^2 v_dot on random states", worst, 1e-13)]


CRITERIA: dict[int, Callable[[], list[CriterionResult]]] = {
    1: conservation_geodesic_scenarios,
    2: conservation_scattering_scenarios,
    3: scattering_classification,
    4: geodesic_regimes,
    5: orbit_form_agreement,
    6: hamiltonian_structure,
    7: finite_dipole_convergence,
    8: truncation_consistency,
    9: momentum_invariance,
}


def run_all(selected=None) -> list[CriterionResult]:
    rows = []
    for key, check in CRITERIA.items():
        if selected is None or key in selected:
            rows.extend(check())
    return rows
