import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from catenoid_vortex import CatenoidGeometry, IntegratorConfig, SurfacePoint
from catenoid_vortex import dipole_model as dm
from catenoid_vortex.errors import CoincidentVortices, DomainError
from catenoid_vortex.geodesics import GeodesicState, lambda_from_dipole
from catenoid_vortex.scenarios import catalogue
from catenoid_vortex.vortex_system import VortexSystemState, integrate_vortices, rhs

SECH_1 = 0.6480542736638854  # mpmath 1/cosh(1)

radius = st.floats(0.5, 2.0)
height = st.floats(-2.0, 2.0)
angle = st.floats(-4.0, 4.0)
strength = st.floats(0.5, 2.0)


def dipole(a, v, alpha, ell_frac, mu, u=0.3):
    return dm.DipoleState(u, v * a, alpha, ell_frac * a, mu)


def test_state_validation(unit):
    with pytest.raises(DomainError):
        dm.DipoleState(0.0, 0.0, 0.0, 0.0)
    with pytest.raises(DomainError):
        dm.DipoleState(0.0, math.inf, 0.0, 0.1)
    with pytest.warns(dm.DipoleValidityWarning):
        dm.DipoleState(0.0, 0.0, 0.0, 0.4).check_validity(unit)
    with pytest.raises(DomainError):
        dm.DipoleState(0.0, 0.0, 0.0, 0.7).check_validity(unit)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        dm.DipoleState(0.0, 0.0, 0.0, 0.3).check_validity(unit)


def test_system_state_vector_round_trip():
    sys = dm.DipoleSystemState((dm.DipoleState(0.1, 0.2, 0.3, 0.05, 2.0), dm.DipoleState(1.0, -1.0, 7.0, 0.1)))
    y = sys.to_vector()
    assert np.array_equal(y, [0.1, 0.2, 0.3, 1.0, -1.0, 7.0])
    assert sys.with_vector(y) == sys
    with pytest.raises(DomainError):
        dm.DipoleSystemState(())


def test_close_encounters(unit):
    near = dm.DipoleSystemState((dm.DipoleState(0.0, 0.0, 0.0, 0.1), dm.DipoleState(0.15, 0.0, 0.0, 0.1)))
    far = dm.DipoleSystemState((dm.DipoleState(0.0, 0.0, 0.0, 0.1), dm.DipoleState(1.0, 0.0, 0.0, 0.1)))
    assert near.close_encounters(unit) == [(0, 1)]
    assert far.close_encounters(unit) == []


def test_placement_examples(unit):
    p, m = dm.place_vortices(unit, dm.DipoleState(0.2, 0.0, 0.0, 0.1))
    assert p == pytest.approx((0.25, 0.0)) and m == pytest.approx((0.15, 0.0))
    p, m = dm.place_vortices(unit, dm.DipoleState(0.2, 0.0, math.pi / 2, 0.1))
    assert p == pytest.approx((0.2, 0.05), abs=1e-17) and m == pytest.approx((0.2, -0.05), abs=1e-17)
    p, m = dm.place_vortices(unit, dm.DipoleState(0.0, 1.0, math.pi / 4, 0.1))
    offset = 0.05 * math.sqrt(0.5) * SECH_1
    assert p == pytest.approx((offset, 1.0 + offset), rel=1e-15)


@given(radius, height, angle, st.floats(0.01, 0.3), strength)
def test_dipole_from_pair_inverts_placement(a, v, alpha, ell, mu):
    geom = CatenoidGeometry(a)
    d = dipole(a, v, alpha, ell, mu)
    back = dm.dipole_from_pair(geom, *dm.place_vortices(geom, d), mu=mu)
    got = np.ravel(dm.place_vortices(geom, back))
    want = np.ravel(dm.place_vortices(geom, d))
    assert np.allclose(got, want, rtol=1e-13, atol=1e-15)
    assert back.ell == pytest.approx(d.ell, rel=1e-13)


def test_full_propulsion_examples(unit):
    assert abs(dm.self_propulsion_full(unit, dm.DipoleState(0.0, 0.0, math.pi / 2, 0.1))[1]) <= 1e-15
    # Exact pair speed at the neck is (1 - ell^2/12 + ...) / (2 pi ell).
    for ell in (0.1, 0.05, 0.025):
        v_dot = dm.self_propulsion_full(unit, dm.DipoleState(0.0, 0.0, 0.0, ell))[1]
        planar = -1.0 / (2.0 * math.pi * ell)
        assert (1.0 - v_dot / planar) / ell**2 == pytest.approx(1.0 / 12.0, rel=1e-3)


@given(radius, height, angle, st.floats(0.01, 0.3), strength, st.sampled_from([1, -1]))
def test_full_propulsion_is_mean_of_pair_velocities(a, v, alpha, ell, mu, sgn):
    geom = CatenoidGeometry(a)
    d = dipole(a, v, alpha, ell, sgn * mu)
    p, m = dm.place_vortices(geom, d)
    u_dot, v_dot = rhs(geom, VortexSystemState([p.u, m.u], [p.v, m.v], [d.mu, -d.mu]))
    mean = np.array([u_dot.mean(), v_dot.mean()])
    full = np.array(dm.self_propulsion_full(geom, d))
    assert np.max(np.abs(full - mean)) <= 1e-12 * np.max(np.abs(mean))


def test_truncated_propulsion_examples(unit):
    u_dot, v_dot = dm.self_propulsion_truncated(unit, dm.DipoleState(0.0, 0.0, 0.0, 0.1, 2.0))
    assert u_dot == 0.0 and v_dot == pytest.approx(-2.0 / (2 * math.pi * 0.1), rel=1e-15)
    u_dot, _ = dm.self_propulsion_truncated(unit, dm.DipoleState(0.0, 1.0, math.pi / 2, 0.05))
    assert u_dot == pytest.approx(2.0628208209087049, rel=1e-14)


@given(radius, height, angle, st.floats(0.01, 0.3), strength)
def test_truncated_propulsion_normal_to_axis(a, v, alpha, ell, mu):
    geom = CatenoidGeometry(a)
    d = dipole(a, v, alpha, ell, mu)
    u_dot, v_dot = dm.self_propulsion_truncated(geom, d)
    h = math.cosh(d.v / a)
    frame = (a * h * u_dot, h * v_dot)
    speed = math.hypot(*frame)
    assert abs(frame[0] * math.cos(alpha) + frame[1] * math.sin(alpha)) <= 1e-15 * speed
    assert speed == pytest.approx(mu / (2 * math.pi * d.ell), rel=1e-14)


def test_full_and_truncated_differ_at_second_order(unit):
    def gap(ell):
        d = dm.DipoleState(0.3, 0.7, 1.1, ell)
        full = np.array(dm.self_propulsion_full(unit, d))
        return np.linalg.norm(full - dm.self_propulsion_truncated(unit, d)) / np.linalg.norm(full)

    assert 3.5 <= gap(0.1) / gap(0.05) <= 4.5


@given(radius, height, angle, st.floats(0.02, 0.3))
def test_self_rotation_closed_form_matches_projection(a, v, alpha, ell):
    geom = CatenoidGeometry(a)
    d = dipole(a, v, alpha, ell, 1.0)
    assert abs(dm.self_rotation_full(geom, d) - dm.self_rotation_closed_form(geom, d)) <= 1e-12 / a**2


def test_self_rotation_leading_order_ratio(unit):
    def rel(ell):
        d = dm.DipoleState(0.0, 0.6, 1.0, ell)
        return dm.self_rotation_full(unit, d) / dm.self_rotation_leading(unit, d) - 1.0

    errors = [abs(rel(ell)) for ell in (0.1, 0.05, 0.025, 0.0125)]
    assert errors[-1] < 2e-5
    for coarse, fine in zip(errors, errors[1:]):
        assert 3.5 <= coarse / fine <= 4.5


@given(radius, height, angle)
def test_geodesic_limit_of_lambda(a, v, alpha):
    geom = CatenoidGeometry(a)
    if abs(math.sin(alpha)) < 0.05 or abs(math.cos(alpha)) < 0.05:
        return

    def gap(ell):
        d = dm.DipoleState(0.0, v * a, alpha, ell * a)
        u_dot, v_dot = dm.self_propulsion_full(geom, d)
        lam = lambda_from_dipole(geom, GeodesicState(0.0, d.v, u_dot, v_dot))
        return abs(lam - math.cosh(v) * math.sin(alpha))

    assert gap(0.01) <= 1e-3
    assert gap(0.01) <= gap(0.04) / 8


def test_external_advection_single_dipole(unit):
    sys = dm.DipoleSystemState((dm.DipoleState(0.0, 0.3, 1.0, 0.1),))
    ext = dm.external_advection(unit, sys, 0)
    assert (ext.u_dot, ext.v_dot) == (0.0, 0.0)
    assert ext.vortices == (0.0, 0.0, 0.0, 0.0)


def test_external_advection_mirror_symmetry(unit):
    # Reflection u -> -u flips circulation, so the image of an alpha = 0 dipole is again alpha = 0.
    left = dm.DipoleState(-0.4, 0.2, 0.3, 0.1)
    right = dm.DipoleState(0.4, 0.2, -0.3, 0.1)
    sys = dm.DipoleSystemState((left, right))
    a, b = dm.external_advection(unit, sys, 0), dm.external_advection(unit, sys, 1)
    assert a.u_dot == pytest.approx(-b.u_dot, rel=1e-13)
    assert a.v_dot == pytest.approx(b.v_dot, rel=1e-13)


def _fig4_as_dipoles(geom):
    state = catalogue.direct_scattering().initial_state()
    # Vortex 1 (+) pairs with 0 (-), vortex 2 (+) with 3 (-).
    first = dm.dipole_from_pair(geom, SurfacePoint(state.u[1], state.v[1]), SurfacePoint(state.u[0], state.v[0]))
    second = dm.dipole_from_pair(geom, SurfacePoint(state.u[2], state.v[2]), SurfacePoint(state.u[3], state.v[3]))
    return state, dm.DipoleSystemState((first, second))


def test_external_advection_matches_point_vortex_cross_terms(unit):
    state, sys = _fig4_as_dipoles(unit)
    u_all, v_all = rhs(unit, state)
    pairs = {0: (1, 0), 1: (2, 3)}
    for n, (ip, im) in pairs.items():
        pair = VortexSystemState(state.u[[ip, im]], state.v[[ip, im]], state.gamma[[ip, im]])
        u_self, v_self = rhs(unit, pair)
        expected = [u_all[ip] - u_self[0], v_all[ip] - v_self[0], u_all[im] - u_self[1], v_all[im] - v_self[1]]
        got = dm.external_advection(unit, sys, n).vortices
        assert np.allclose(got, expected, rtol=0, atol=1e-12)


def test_external_advection_center_metric_variant(unit):
    _, sys = _fig4_as_dipoles(unit)
    exact = dm.external_advection(unit, sys, 0)
    centered = dm.external_advection(unit, sys, 0, center_metric=True)
    p, m = dm.place_vortices(unit, sys.dipoles[0])
    hc = math.cosh(sys.dipoles[0].v)
    assert centered.vortices.u_plus == pytest.approx(exact.vortices.u_plus * (math.cosh(p.v) / hc) ** 2, rel=1e-14)
    assert centered.vortices.v_minus == pytest.approx(exact.vortices.v_minus * (math.cosh(m.v) / hc) ** 2, rel=1e-14)


def test_full_mode_rhs_reproduces_point_vortex_means(unit):
    state, sys = _fig4_as_dipoles(unit)
    u_all, v_all = rhs(unit, state)
    rates = dm.dipole_system_rhs(unit, sys, "full")
    assert rates[0, 0] == pytest.approx(0.5 * (u_all[0] + u_all[1]), rel=1e-12)
    assert rates[1, 1] == pytest.approx(0.5 * (v_all[2] + v_all[3]), rel=1e-12)


def test_external_collision(unit):
    sys = dm.DipoleSystemState((dm.DipoleState(0.0, 0.0, 0.0, 0.1), dm.DipoleState(0.1, 0.0, 0.0, 0.1)))
    with pytest.raises(CoincidentVortices):
        dm.external_advection(unit, sys, 0)


@pytest.mark.parametrize("mode", list(dm.Mode))
def test_isolated_neck_dipole_does_not_rotate(unit, mode):
    sys = dm.DipoleSystemState((dm.DipoleState(0.0, 0.0, math.pi / 2, 0.1),))
    assert dm.orientation_rate(unit, sys, 0, mode) == 0.0


def test_truncated_meridional_launch(unit):
    sys = dm.DipoleSystemState((dm.DipoleState(0.0, 0.0, 0.0, 0.1, 1.5),))
    rates = dm.dipole_system_rhs(unit, sys, dm.Mode.TRUNCATED)
    assert rates[0] == pytest.approx([0.0, -1.5 / (2 * math.pi * 0.1), 0.0], abs=1e-15)


def test_mode_difference_scales_quadratically(unit):
    def gap(ell):
        sys = dm.DipoleSystemState((dm.DipoleState(0.0, 0.5, 0.9, ell),))
        full = dm.dipole_system_rhs(unit, sys, "full")[0, :2]
        trunc = dm.dipole_system_rhs(unit, sys, "truncated")[0, :2]
        return np.linalg.norm(full - trunc) / np.linalg.norm(full)

    assert 3.5 <= gap(0.1) / gap(0.05) <= 4.5


def test_transport_term_uses_total_center_rate(unit):
    d = dm.DipoleState(0.0, 0.8, 0.4, 0.05)
    sys = dm.DipoleSystemState((d, dm.DipoleState(1.5, -0.3, 2.0, 0.05)))
    ext = dm.external_advection(unit, sys, 0)
    u_self, _ = dm.self_propulsion_full(unit, d)
    expected = (
        dm.self_rotation_full(unit, d)
        + dm.frame_rotation(unit, d, ext.vortices)
        + math.tanh(0.8) * (u_self + ext.u_dot)
    )
    assert dm.orientation_rate(unit, sys, 0) == pytest.approx(expected, rel=1e-14)


def _reduced_vs_pair(ell, alpha):
    geom = CatenoidGeometry(1.0)
    t_final = 3.0 * 2.0 * math.pi * ell
    cfg = IntegratorConfig(sample_interval=t_final / 100)
    d = dm.DipoleState(0.0, 0.15, alpha, ell)
    reduced = dm.integrate_dipoles(geom, dm.DipoleSystemState((d,)), t_final, "full", cfg)
    p, m = dm.place_vortices(geom, d)
    pair = integrate_vortices(geom, VortexSystemState([p.u, m.u], [p.v, m.v], [1.0, -1.0]), t_final, cfg)
    return reduced.states, pair.states


def test_orientation_follows_pair_separation():
    def gap(ell):
        reduced, pair = _reduced_vs_pair(ell, 1.2)
        du, dv = pair[:, 0] - pair[:, 2], pair[:, 1] - pair[:, 3]
        return np.max(np.abs(np.unwrap(np.arctan2(dv, du)) - reduced[:, 2]))

    assert 3.0 <= gap(0.05) / gap(0.025) <= 5.0


def test_fig8_center_follows_geodesic():
    from catenoid_vortex.scenarios import run_scenario

    result = run_scenario(catalogue.finite_dipole())
    assert result.outcome.spec.lam == pytest.approx(1.0112711095766705, rel=1e-12)
    assert result.outcome.deviation <= 1e-6
    assert result.record.max_relative_drift("L1") <= 1e-7
    assert result.record.max_relative_drift("E1") <= 1e-7


def test_integrate_dipoles_rejects_wide_dipole(unit):
    sys = dm.DipoleSystemState((dm.DipoleState(0.0, 0.0, 0.0, 0.7),))
    with pytest.raises(DomainError):
        dm.integrate_dipoles(unit, sys, 1.0)
