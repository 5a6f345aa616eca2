"""Tests for toric locus membership, Birch projection and the map Q."""

import numpy as np
import pytest

from src.core.exceptions import NotInToricLocusError
from src.services.kinetics import MassActionSystem, is_complex_balanced_at, tree_constants_minor
from src.services.locus import (
    MembershipReason,
    Q_map,
    binomial_constraint_rank,
    binomial_gap,
    birch_projection,
    equilibrium_set,
    flux_balance_residual,
    log_linear_system,
    phi,
    q_hat,
    random_member,
    retarget_rates,
    spanning_pairs,
    toric_membership,
)
from src.services.network import deficiency, example_network, stoichiometric_space

from tests.conftest import log_uniform_rates, random_weakly_reversible_network


class TestLogLinearSystem:
    def test_spanning_pairs_cover_each_class(self, two_class_network):
        pairs = spanning_pairs(two_class_network)
        assert len(pairs) == two_class_network.m - 2

    def test_equal_constants_give_zero_rhs(self, bidirected_triangle):
        _, rhs = log_linear_system(bidirected_triangle, [3.0, 3.0, 3.0])
        np.testing.assert_array_equal(rhs, 0.0)

    def test_triangle_always_consistent(self, triangle):
        K = tree_constants_minor(MassActionSystem(triangle, [1.0, 2.0, 3.0]))
        rows, rhs = log_linear_system(triangle, K)
        log_x = np.linalg.solve(rows, rhs)
        assert binomial_gap(triangle, K, log_x) <= 1e-14

    def test_square_solution(self, square_cycle):
        # Psi(x) = (1, x1, x1 x2, x2) on the unit square
        K = [1.0, 2.0, 4.0, 2.0]
        rows, rhs = log_linear_system(square_cycle, K)
        log_x, *_ = np.linalg.lstsq(rows, rhs, rcond=None)
        np.testing.assert_allclose(log_x, [np.log(2.0), np.log(2.0)], atol=1e-12)
        assert binomial_gap(square_cycle, K, log_x) <= 1e-14

    @pytest.mark.parametrize(
        "name", ["triangle", "square-cycle", "line-cycle", "bidirected-triangle", "reversible-pair"]
    )
    def test_constraint_rank_equals_deficiency(self, name):
        net = example_network(name)
        assert binomial_constraint_rank(net) == deficiency(net)


class TestMembership:
    def test_triangle_always_member(self, triangle, rng):
        for _ in range(50):
            sys = MassActionSystem(triangle, log_uniform_rates(rng, 3))
            report = toric_membership(sys)
            assert report.member
            assert report.reason is MembershipReason.OK
            assert is_complex_balanced_at(sys, report.witness.x, 1e-8)

    def test_square_cycle_condition(self, square_cycle):
        # on the unit square member iff k1 k3 = k2 k4
        assert toric_membership(MassActionSystem(square_cycle, [1.0, 2.0, 3.0, 1.5])).member
        report = toric_membership(MassActionSystem(square_cycle, [1.0, 2.0, 3.0, 1.0]))
        assert not report.member
        assert report.reason is MembershipReason.INCONSISTENT
        assert report.witness is None

    def test_bidirected_triangle_on_and_off_variety(self, bidirected_triangle, rng):
        for _ in range(20):
            sys = random_member(bidirected_triangle, rng)
            assert toric_membership(sys).member
            K = tree_constants_minor(sys).K
            assert abs(K[0] * K[2] - K[1] ** 2) / (K[0] * K[2] + K[1] ** 2) <= 1e-10
            perturbed = sys.rates.copy()
            perturbed[0] *= 1.1
            assert not toric_membership(MassActionSystem(bidirected_triangle, perturbed)).member

    def test_not_weakly_reversible(self, one_way_edge):
        report = toric_membership(MassActionSystem(one_way_edge, [1.0]))
        assert not report.member
        assert report.reason is MembershipReason.NOT_WEAKLY_REVERSIBLE
        assert report.to_dict() == {
            "member": False,
            "residual": 1.0,
            "witness": None,
            "reason": "not-weakly-reversible",
        }

    def test_scale_invariance(self, square_cycle, rng):
        for rates in ([1.0, 2.0, 3.0, 1.5], [1.0, 2.0, 3.0, 1.0]):
            flags = {
                toric_membership(MassActionSystem(square_cycle, c * np.array(rates))).member
                for c in (1e-3, 1.0, 1e3)
            }
            assert len(flags) == 1

    def test_loose_tolerance_witness_is_balanced(self, square_cycle):
        # K = (2, 2, 2, 1) gives a pairwise gap of exactly 1/3
        sys = MassActionSystem(square_cycle, [1.0, 1.0, 1.0, 2.0])
        assert not toric_membership(sys, tol=0.3).member
        report = toric_membership(sys, tol=0.34)
        assert report.member
        assert report.residual == pytest.approx(1.0 / 3.0)
        assert is_complex_balanced_at(sys, report.witness.x, 0.34)

    def test_unbalanced_witness_is_not_a_member(self, square_cycle, monkeypatch):
        monkeypatch.setattr(
            "src.services.locus.toric_locus.is_complex_balanced_at", lambda *args: False
        )
        report = toric_membership(MassActionSystem(square_cycle, np.ones(4)))
        assert not report.member
        assert report.residual <= 1e-12
        assert report.reason is MembershipReason.INCONSISTENT
        assert report.witness is None

    def test_rejects_non_positive_tol(self, triangle):
        with pytest.raises(ValueError):
            toric_membership(MassActionSystem(triangle, np.ones(3)), tol=0.0)

    def test_random_members_have_witnesses(self, rng):
        for _ in range(10):
            net = random_weakly_reversible_network(rng)
            sys = random_member(net, rng)
            report = toric_membership(sys)
            assert report.member
            assert is_complex_balanced_at(sys, report.witness.x, 1e-8)


class TestBirchProjection:
    def test_reversible_pair(self, reversible_pair):
        S = stoichiometric_space(reversible_pair)
        x = birch_projection([1.0, 1.0], [3.0, 1.0], S)
        np.testing.assert_allclose(x.x, [2.0, 2.0], rtol=1e-12)

    def test_full_rank_returns_reference(self, triangle):
        S = stoichiometric_space(triangle)
        x = birch_projection([0.3, 4.0], [7.0, 1.0], S)
        np.testing.assert_array_equal(x.x, [0.3, 4.0])

    def test_fixed_point(self, reversible_pair):
        S = stoichiometric_space(reversible_pair)
        x = birch_projection([1.5, 2.5], [1.5, 2.5], S)
        np.testing.assert_allclose(x.x, [1.5, 2.5], rtol=1e-12)

    def test_extreme_start(self, reversible_pair):
        S = stoichiometric_space(reversible_pair)
        x = birch_projection([1.0, 1e-3], [1e3, 1e-3], S)
        assert x.x.sum() == pytest.approx(1e3 + 1e-3, rel=1e-12)
        assert np.log(x.x[0]) - np.log(x.x[1]) == pytest.approx(np.log(1e3), rel=1e-9)

    def test_conservation_and_orthogonality(self, reversible_pair, rng):
        S = stoichiometric_space(reversible_pair)
        for _ in range(10):
            x_star = np.exp(rng.normal(size=2))
            x0 = np.exp(rng.normal(size=2))
            x = birch_projection(x_star, x0, S).x
            np.testing.assert_allclose(S.perp_projector() @ (x - x0), 0.0, atol=1e-9)
            np.testing.assert_allclose(
                S.basis.T @ (np.log(x) - np.log(x_star)), 0.0, atol=1e-10
            )


class TestQMap:
    def test_triangle_analytic(self, triangle):
        k12, k23, k31 = 2.0, 3.0, 5.0
        x = Q_map(MassActionSystem(triangle, [k12, k23, k31]), [9.0, 9.0])
        np.testing.assert_allclose(x.x, [k12 / k23, k12 / k31], rtol=1e-10)

    def test_reversible_pair(self, reversible_pair):
        x = Q_map(MassActionSystem(reversible_pair, [1.0, 1.0]), [3.0, 1.0])
        np.testing.assert_allclose(x.x, [2.0, 2.0], rtol=1e-12)

    def test_square_cycle_unit_rates(self, square_cycle):
        x = Q_map(MassActionSystem(square_cycle, np.ones(4)), [1.0, 1.0])
        np.testing.assert_allclose(x.x, [1.0, 1.0], rtol=1e-12)

    def test_non_member(self, square_cycle):
        with pytest.raises(NotInToricLocusError):
            Q_map(MassActionSystem(square_cycle, [1.0, 2.0, 3.0, 1.0]), [1.0, 1.0])

    def test_result_is_balanced_and_in_polyhedron(self, two_class_network, rng):
        S = stoichiometric_space(two_class_network)
        for _ in range(10):
            sys = random_member(two_class_network, rng)
            x0 = np.exp(rng.normal(size=2))
            x = Q_map(sys, x0).x
            assert is_complex_balanced_at(sys, x, 1e-8)
            assert np.max(np.abs(S.perp_projector() @ (x - x0))) <= 1e-9

    def test_equilibrium_set(self, reversible_pair):
        description = equilibrium_set(MassActionSystem(reversible_pair, [2.0, 1.0]))
        assert description.normal_space.shape == (2, 1)
        sys = MassActionSystem(reversible_pair, [2.0, 1.0])
        for c in (-1.0, 0.0, 2.5):
            assert is_complex_balanced_at(sys, description.point([c]).x, 1e-8)

    def test_equilibrium_set_non_member(self, square_cycle):
        with pytest.raises(NotInToricLocusError):
            equilibrium_set(MassActionSystem(square_cycle, [1.0, 2.0, 3.0, 1.0]))


class TestLocusStructure:
    def test_retarget_rates_moves_equilibrium(self, square_cycle, rng):
        sys = random_member(square_cycle, rng)
        x_from = Q_map(sys, [1.0, 1.0]).x
        x_to = np.array([0.4, 2.5])
        moved = MassActionSystem(square_cycle, retarget_rates(sys, x_from, x_to))
        assert toric_membership(moved).member
        np.testing.assert_allclose(Q_map(moved, x_to).x, x_to, rtol=1e-8)

    def test_fiber_convexity(self, square_cycle, rng):
        # two members sharing Q: same equilibrium, different fluxes
        x = np.array([1.3, 0.6])
        k1 = phi(x, [1.0, 1.0, 1.0, 1.0], square_cycle).k
        k2 = phi(x, [2.0, 2.0, 2.0, 2.0], square_cycle).k
        sys1 = MassActionSystem(square_cycle, k1)
        sys2 = MassActionSystem(square_cycle, k2)
        for t in np.linspace(0.0, 1.0, 5):
            mix = MassActionSystem(square_cycle, (1 - t) * k1 + t * k2)
            assert toric_membership(mix).member
            np.testing.assert_allclose(Q_map(mix, x).x, x, rtol=1e-8)
        np.testing.assert_allclose(Q_map(sys1, x).x, Q_map(sys2, x).x, atol=1e-10)

    def test_q_hat_balanced(self, two_class_network, rng):
        for _ in range(5):
            sys = random_member(two_class_network, rng)
            assert flux_balance_residual(two_class_network, q_hat(sys, [1.0, 1.0])) <= 1e-10
