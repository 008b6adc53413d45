"""Ansatz evaluation, curvature (closed form vs oracle), residuals, torsion."""

import math

import numpy as np
import pytest

from disclination import so3
from disclination.ansatz import (
    PAIR_INDICES,
    GeneralAnsatz,
    SignBranch,
    eval_curvature_K_form,
    eval_flat_connection,
    eval_general_connection,
    eval_general_curvature,
    finite_difference_curvature,
    flat_connection_field,
    general_connection_field,
    ode_residuals,
    flat_solution,
    torsion_flat_vielbein,
)
from disclination.errors import OriginExclusionError
from disclination.profiles import RadialFunction, exp_decay
from helpers import (
    ZERO_RF,
    const_rf,
    levi_civita_sign,
    profile_test_set,
    random_points,
    random_unit,
    smooth_triple,
    w_from_k,
)

EXAMPLE_TWO = exp_decay(math.pi / 2.0, 1.0)
LINEAR_PROFILE = RadialFunction(lambda r: r, lambda r: 1.0, "f=r")


class TestGeneralConnection:
    def test_zero_ansatz_gives_zero(self):
        a = GeneralAnsatz(ZERO_RF, ZERO_RF, ZERO_RF)
        assert np.array_equal(eval_general_connection(a, np.array([1.0, 2.0, 3.0])), np.zeros((3, 3)))

    def test_pure_V_gives_identity(self):
        a = GeneralAnsatz(ZERO_RF, const_rf(1.0), ZERO_RF)
        assert np.allclose(eval_general_connection(a, np.array([1.0, 0.0, 0.0])), np.eye(3), atol=1e-15)

    def test_matches_flat_connection_through_family_profiles(self):
        f = EXAMPLE_TWO
        K, V, U = flat_solution(f)
        a = GeneralAnsatz(w_from_k(K), V, U)
        x = np.array([1.0, 1.0, 1.0])
        assert np.abs(eval_general_connection(a, x) - eval_flat_connection(f, x)).max() < 1e-14

    def test_origin_exclusion(self):
        a = GeneralAnsatz(ZERO_RF, const_rf(1.0), ZERO_RF)
        with pytest.raises(OriginExclusionError):
            eval_general_connection(a, np.array([0.0, 0.0, 1e-12]))


class TestFlatConnection:
    def test_zero_profile_gives_zero_connection(self):
        from disclination.profiles import zero_profile

        f = zero_profile()
        rng = np.random.default_rng(3)
        for x in random_points(rng, 10, 0.1, 10.0):
            assert np.abs(eval_flat_connection(f, x)).max() == 0.0

    def test_radial_contraction_identity(self):
        rng = np.random.default_rng(5)
        f = EXAMPLE_TWO
        for x in random_points(rng, 10, 0.2, 20.0):
            r = np.linalg.norm(x)
            a = eval_flat_connection(f, x)
            contracted = (x / r) @ a
            expected = x * (f.deriv(r) / r)
            assert np.abs(contracted - expected).max() < 1e-12

    def test_spherical_symmetry_covariance(self):
        rng = np.random.default_rng(7)
        f = EXAMPLE_TWO
        for _ in range(10):
            R = so3.exp_so3(random_unit(rng) * rng.uniform(0, 2 * math.pi))
            x = random_unit(rng) * rng.uniform(0.3, 5.0)
            lhs = eval_flat_connection(f, R @ x)
            rhs = R @ eval_flat_connection(f, x) @ R.T
            assert np.abs(lhs - rhs).max() < 1e-12


class TestGeneralCurvature:
    def test_zero_ansatz_gives_zero(self):
        a = GeneralAnsatz(ZERO_RF, ZERO_RF, ZERO_RF)
        assert eval_general_curvature(a, np.array([0.5, -0.5, 1.0])).max_abs() == 0.0

    def test_pure_W_literal_values(self):
        # W(r) = r, V = U = 0 at x = (0, 0, 1): coefficients are
        # c1 = W' + W/r = 2, c2 = W - r W' + r W^2 = 1, c3 = 0, so
        # F_{mu nu}^i = 2 eps_{mu nu i} + eps_{mu nu 3} x^i.
        a = GeneralAnsatz(RadialFunction(lambda r: r, lambda r: 1.0, "W=r"), ZERO_RF, ZERO_RF)
        x = np.array([0.0, 0.0, 1.0])
        cur = eval_general_curvature(a, x)
        for row, (mu, nu) in enumerate(PAIR_INDICES):
            for i in range(3):
                expected = 2.0 * levi_civita_sign(mu, nu, i) + levi_civita_sign(mu, nu, 2) * x[i]
                assert cur.values[row, i] == pytest.approx(expected, abs=1e-14)

    def test_pure_W_matches_fd_oracle(self):
        a = GeneralAnsatz(RadialFunction(lambda r: r, lambda r: 1.0, "W=r"), ZERO_RF, ZERO_RF)
        conn = general_connection_field(a)
        x = np.array([0.0, 0.0, 1.0])
        analytic = eval_general_curvature(a, x)
        fd = finite_difference_curvature(conn, x, h=1e-5)
        assert np.abs(analytic.values - fd.values).max() < 1e-6

    def test_random_smooth_ansatz_matches_fd_oracle(self):
        K, V, U = smooth_triple(seed=41)
        a = GeneralAnsatz(w_from_k(K), V, U)
        conn = general_connection_field(a)
        rng = np.random.default_rng(43)
        for x in random_points(rng, 10, 0.5, 10.0):
            analytic = eval_general_curvature(a, x)
            fd = finite_difference_curvature(conn, x, h=1e-5)
            assert np.abs(analytic.values - fd.values).max() < 1e-6

    def test_family_profiles_are_flat(self):
        rng = np.random.default_rng(11)
        for f in profile_test_set():
            K, V, U = flat_solution(f)
            a = GeneralAnsatz(w_from_k(K), V, U)
            for x in random_points(rng, 20, 0.1, 50.0):
                assert eval_general_curvature(a, x).max_abs() < 1e-10


class TestKFormCurvature:
    def test_vacuum_is_flat(self):
        assert eval_curvature_K_form(const_rf(1.0), ZERO_RF, ZERO_RF, np.array([1.0, 2.0, -0.5])).max_abs() == 0.0

    def test_agrees_with_general_form(self):
        K, V, U = smooth_triple(seed=13)
        a = GeneralAnsatz(w_from_k(K), V, U)
        rng = np.random.default_rng(17)
        for x in random_points(rng, 20, 0.2, 30.0):
            via_k = eval_curvature_K_form(K, V, U, x)
            via_w = eval_general_curvature(a, x)
            assert np.abs(via_k.values - via_w.values).max() < 1e-10

    def test_family_profiles_vanish(self):
        rng = np.random.default_rng(19)
        for f in profile_test_set():
            for branch in SignBranch:
                K, V, U = flat_solution(f, branch)
                for x in random_points(rng, 10, 0.1, 50.0):
                    assert eval_curvature_K_form(K, V, U, x).max_abs() < 1e-10


class TestDualityRoutes:
    def test_commutator_dualization_agrees_with_cross_product(self):
        # The quadratic term formed in matrix (bivector) form and dualized
        # back must equal the direct cross-product form.
        rng = np.random.default_rng(23)
        for _ in range(100):
            a, b, d = rng.normal(size=3), rng.normal(size=3), rng.normal(size=3)
            vec_route = d + np.cross(a, b)
            ba, bb = so3.vector_to_bivector(a), so3.vector_to_bivector(b)
            biv_route = so3.vector_to_bivector(d) - (ba @ bb - bb @ ba)
            assert np.abs(so3.bivector_to_vector(biv_route) - vec_route).max() < 1e-12


class TestOdeResiduals:
    def test_family_profiles_vanish_identically(self):
        K, V, U = flat_solution(LINEAR_PROFILE)
        rho = ode_residuals(K, V, U, 1.7)
        assert max(abs(v) for v in rho) < 1e-12

    def test_vacuum(self):
        for r in (0.3, 1.0, 12.0):
            assert ode_residuals(const_rf(1.0), ZERO_RF, ZERO_RF, r) == (0.0, 0.0, 0.0)

    def test_sum_identity_for_arbitrary_functions(self):
        # rho1 + rho2 = r V^2 + (K^2 - 1)/r for any smooth (K, V, U).
        for seed in (29, 31, 37):
            K, V, U = smooth_triple(seed)
            rng = np.random.default_rng(seed + 1)
            for r in rng.uniform(0.1, 40.0, size=20):
                rho1, rho2, _ = ode_residuals(K, V, U, r)
                identity = r * V(r) ** 2 + (K(r) ** 2 - 1.0) / r
                assert abs((rho1 + rho2) - identity) < 1e-12

    def test_third_residual_vanishes_only_for_consistent_U(self):
        f = EXAMPLE_TWO
        K, V, U = flat_solution(f)
        perturbed = RadialFunction(lambda r: U(r) + 0.1, U.deriv, "U+0.1")
        radii = np.linspace(0.2, 6.0, 25)
        good = max(abs(ode_residuals(K, V, U, r)[2]) for r in radii)
        bad = max(abs(ode_residuals(K, V, perturbed, r)[2]) for r in radii)
        assert good < 1e-12
        # delta rho3 = -0.1 K(r); K = cos f stays well away from 0 on these radii
        assert bad > 1e-3

    def test_requires_positive_radius(self):
        K, V, U = flat_solution(EXAMPLE_TWO)
        with pytest.raises(ValueError):
            ode_residuals(K, V, U, 0.0)


class TestFamilySolution:
    def test_zero_profile_gives_vacuum(self):
        from disclination.profiles import zero_profile

        K, V, U = flat_solution(zero_profile())
        for r in (0.2, 1.0, 9.0):
            assert K(r) == 1.0
            assert V(r) == 0.0
            assert U(r) == 0.0

    def test_example_two_values_and_residuals(self):
        f = EXAMPLE_TWO
        K, V, U = flat_solution(f)
        fv = math.pi / 2.0 * math.exp(-1.0)
        assert K(1.0) == pytest.approx(math.cos(fv), rel=1e-15)
        assert V(1.0) == pytest.approx(math.sin(fv), rel=1e-15)
        assert U(1.0) == pytest.approx(f.deriv(1.0) - math.sin(fv), rel=1e-14)
        assert max(abs(v) for v in ode_residuals(K, V, U, 1.0)) < 1e-12

    def test_lower_branch_negates_V_and_U_only(self):
        f = EXAMPLE_TWO
        Ku, Vu, Uu = flat_solution(f, SignBranch.UPPER)
        Kl, Vl, Ul = flat_solution(f, SignBranch.LOWER)
        for r in (0.4, 1.3, 5.0):
            assert Kl(r) == Ku(r)
            assert Vl(r) == -Vu(r)
            assert Ul(r) == -Uu(r)
        assert max(abs(v) for v in ode_residuals(Kl, Vl, Ul, 2.2)) < 1e-12


class TestFiniteDifferenceCurvature:
    def test_zero_connection(self):
        conn = lambda x: np.zeros((3, 3))
        assert finite_difference_curvature(conn, np.array([1.0, 0.0, 0.0])).max_abs() == 0.0

    def test_flat_connection_is_flat(self):
        conn = flat_connection_field(EXAMPLE_TWO)
        fd = finite_difference_curvature(conn, np.array([0.7, -0.3, 1.1]), h=1e-5)
        assert fd.max_abs() < 1e-6

    def test_stencil_must_avoid_origin(self):
        conn = flat_connection_field(EXAMPLE_TWO, r_min=1e-3)
        with pytest.raises(OriginExclusionError):
            finite_difference_curvature(conn, np.array([2e-3, 0.0, 0.0]), h=1.5e-3, r_min=1e-3)


class TestTorsion:
    def test_zero_connection_gives_zero_torsion(self):
        conn = lambda x: np.zeros((3, 3))
        assert torsion_flat_vielbein(conn, np.array([1.0, 1.0, 1.0])).max_abs() == 0.0

    def test_constant_V_hand_expansion(self):
        # A_mu^k = c delta_mu^k dualizes to w_{mu j}^i = c eps_{mu j i},
        # so T_{mu nu}^i = c eps_{mu nu i} - c eps_{nu mu i} = 2 c eps_{mu nu i}.
        c = 0.7
        a = GeneralAnsatz(ZERO_RF, const_rf(c), ZERO_RF)
        conn = general_connection_field(a)
        T = torsion_flat_vielbein(conn, np.array([0.4, -1.0, 2.0]))
        for row, (mu, nu) in enumerate(PAIR_INDICES):
            for i in range(3):
                assert T.values[row, i] == pytest.approx(2.0 * c * levi_civita_sign(mu, nu, i), abs=1e-15)

    def test_flat_connection_carries_torsion(self):
        conn = flat_connection_field(EXAMPLE_TWO)
        T = torsion_flat_vielbein(conn, np.array([1.0, 0.0, 0.0]))
        assert T.max_abs() > 0.1


def test_pair_tensor_antisymmetric_lookup():
    K, V, U = smooth_triple(seed=47)
    cur = eval_curvature_K_form(K, V, U, np.array([1.0, -2.0, 0.3]))
    assert cur.component(1, 0, 2) == -cur.component(0, 1, 2)
    assert cur.component(2, 2, 1) == 0.0
