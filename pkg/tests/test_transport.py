"""Transport integrator vs the closed form, path independence, curves."""

import math

import numpy as np
import pytest

from disclination.ansatz import flat_connection_field
from disclination.errors import IntegrationError, OriginExclusionError
from disclination.profiles import exp_decay, zero_profile
from disclination.so3 import check_rotation, exp_so3, log_so3
from disclination.transport import (
    Curve,
    curve_commutator_norm,
    integrate_transport,
    radial_transport_closed_form,
    transport_to_infinity,
    verify_ray_commutativity,
)
from helpers import profile_test_set, random_unit

EXAMPLE_TWO = exp_decay(math.pi / 2.0, 1.0)


def random_polyline(rng, n_vertices=4, r_lo=0.5, r_hi=3.0, clearance=0.3):
    """A random origin-avoiding polyline; resamples until every segment clears."""
    while True:
        verts = [random_unit(rng) * rng.uniform(r_lo, r_hi) for _ in range(n_vertices)]
        try:
            return Curve.polyline(verts, r_min=clearance)
        except OriginExclusionError:
            continue


class TestCurves:
    def test_ray_geometry(self):
        start = np.array([1.0, 1.0, 1.0])
        ray = Curve.ray(start, r_far=50.0)
        y0, _ = ray(0.0)
        y1, _ = ray(1.0)
        assert np.allclose(y0, start)
        assert np.linalg.norm(y1) == pytest.approx(50.0, rel=1e-12)

    def test_ray_requires_far_radius_beyond_start(self):
        with pytest.raises(ValueError):
            Curve.ray(np.array([10.0, 0.0, 0.0]), r_far=5.0)

    def test_polyline_through_origin_rejected(self):
        with pytest.raises(OriginExclusionError):
            Curve.polyline([np.array([1.0, 0.0, 0.0]), np.array([-1.0, 0.0, 0.0])], r_min=1e-3)

    def test_inconsistent_velocity_rejected(self):
        with pytest.raises(ValueError, match="velocity"):
            Curve.parametric(
                lambda t: np.array([1.0 + t, 0.0, 1.0]),
                lambda t: np.array([2.0, 0.0, 0.0]),  # should be (1, 0, 0)
            )

    def test_reversed_swaps_endpoints(self):
        curve = Curve.polyline([np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0])])
        rev = curve.reversed()
        assert np.allclose(rev(0.0)[0], curve(1.0)[0])
        assert np.allclose(rev(1.0)[0], curve(0.0)[0])


class TestIntegrator:
    def test_zero_connection_preserves_start(self):
        conn = lambda x: np.zeros((3, 3))
        start = exp_so3(np.array([0.2, -0.4, 0.9]))
        curve = Curve.polyline([np.array([1.0, 0.0, 0.0]), np.array([0.0, 2.0, 1.0])])
        res = integrate_transport(conn, curve, S0_inv=start)
        assert np.abs(res.S_inv - start).max() < 1e-12

    def test_matches_closed_form_on_rays(self):
        for f in profile_test_set():
            for x in (np.array([1.0, 1.0, 1.0]), np.array([0.4, -0.8, 0.3])):
                res = transport_to_infinity(f, x)
                closed = radial_transport_closed_form(f, x)
                assert np.linalg.norm(res.S_inv - closed) < 1e-8
                check_rotation(res.S_inv, tol=1e-12)

    def test_path_independence(self):
        conn = flat_connection_field(EXAMPLE_TWO)
        rng = np.random.default_rng(101)
        for _ in range(3):
            a = random_unit(rng) * rng.uniform(0.5, 2.5)
            b = random_unit(rng) * rng.uniform(0.5, 2.5)
            mid1 = random_unit(rng) * rng.uniform(1.0, 3.0)
            mid2 = random_unit(rng) * rng.uniform(1.0, 3.0)
            try:
                c1 = Curve.polyline([a, mid1, b], r_min=0.2)
                c2 = Curve.polyline([a, mid2, b], r_min=0.2)
            except OriginExclusionError:
                continue
            r1 = integrate_transport(conn, c1)
            r2 = integrate_transport(conn, c2)
            assert np.linalg.norm(r1.S_inv - r2.S_inv) < 2e-9

    def test_reversal_returns_to_start(self):
        conn = flat_connection_field(EXAMPLE_TWO)
        curve = Curve.polyline([np.array([1.0, 0.2, 0.0]), np.array([0.5, 1.5, 1.0])])
        fwd = integrate_transport(conn, curve)
        back = integrate_transport(conn, curve.reversed(), S0_inv=fwd.S_inv)
        assert np.abs(back.S_inv - np.eye(3)).max() < 2e-9

    def test_orthogonality_drift_is_monitored(self):
        res = transport_to_infinity(EXAMPLE_TWO, np.array([1.0, 1.0, 1.0]))
        assert res.max_orth_drift < 1e-12

    def test_step_budget_exhaustion_raises_with_estimate(self):
        conn = flat_connection_field(EXAMPLE_TWO)
        curve = Curve.ray(np.array([0.5, 0.0, 0.0]), r_far=50.0)
        with pytest.raises(IntegrationError) as err:
            integrate_transport(conn, curve, tol=1e-16, n_max=256)
        assert err.value.error_estimate > 0.0


class TestClosedForm:
    def test_zero_profile_gives_identity(self):
        f = zero_profile()
        for x in (np.array([1.0, 0.0, 0.0]), np.array([0.3, -0.7, 2.0])):
            assert np.array_equal(radial_transport_closed_form(f, x), np.eye(3))

    def test_axis_and_angle_along_coordinate_ray(self):
        r0 = 1.3
        x = np.array([0.0, 0.0, r0])
        S = radial_transport_closed_form(EXAMPLE_TWO, x)
        f = log_so3(S)
        angle = np.linalg.norm(f)
        assert angle == pytest.approx(EXAMPLE_TWO(r0), abs=1e-12)
        axis = f / angle
        assert min(np.abs(axis - [0, 0, 1]).max(), np.abs(axis + [0, 0, 1]).max()) < 1e-12

    def test_far_points_transport_trivially(self):
        x = random_unit(np.random.default_rng(3)) * 50.0
        S = radial_transport_closed_form(EXAMPLE_TWO, x)
        assert np.abs(S - np.eye(3)).max() < 1e-6


class TestCommutativity:
    def test_rays_commute(self):
        for f in profile_test_set():
            worst = verify_ray_commutativity(f, np.array([0.7, -0.2, 1.1]), samples=64)
            assert worst < 1e-12

    def test_zero_connection_commutes(self):
        conn = lambda x: np.zeros((3, 3))
        curve = Curve.polyline([np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0])])
        assert curve_commutator_norm(conn, curve, samples=32) == 0.0

    def test_non_radial_curve_does_not_commute(self):
        # Negative control: along a quarter arc the integrand matrices at
        # different parameters have different axes, so commutators are
        # measurably nonzero even though the connection is flat.
        conn = flat_connection_field(EXAMPLE_TWO)
        arc = Curve.parametric(
            lambda t: np.array([math.cos(t * math.pi / 2), math.sin(t * math.pi / 2), 0.0]),
            lambda t: np.array([
                -math.sin(t * math.pi / 2) * math.pi / 2,
                math.cos(t * math.pi / 2) * math.pi / 2,
                0.0,
            ]),
        )
        worst = curve_commutator_norm(conn, arc, samples=64)
        assert worst > 1e-6
