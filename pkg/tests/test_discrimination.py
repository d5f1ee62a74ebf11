"""Tests for measurement error probabilities and the overlap measure."""

import numpy as np
import pytest

from qillum.linalg import max_abs_diff
from qillum.states import (
    BipartiteState,
    DensityMatrix,
    bell_state,
    effective_rank_k,
    haar_random_state,
    idler_reduction,
)
from qillum.illumination import IlluminationScenario
from qillum.discrimination import (
    DiscriminationProblem,
    Povm,
    advantage,
    h01_closed_form,
    h01_direct,
    helstrom_error,
    hs_distinguishability,
    optimal_povm,
    povm_error,
)
from conftest import random_density, random_pure_density, random_projective_povm, random_two_outcome_povm, random_unitary


def dm(mat):
    return DensityMatrix(np.asarray(mat, dtype=complex))


ZERO = dm(np.diag([1.0, 0.0]))
ONE = dm(np.diag([0.0, 1.0]))
PLUS = dm(np.full((2, 2), 0.5))


class TestPovmValidation:
    def test_rejects_non_identity_sum(self):
        with pytest.raises(ValueError, match="identity"):
            Povm([np.diag([1.0, 0.0]), np.diag([0.0, 0.5])])

    def test_rejects_negative_element(self):
        with pytest.raises(ValueError, match="positive"):
            Povm([np.diag([1.5, 1.0]), np.diag([-0.5, 0.0])])

    def test_rejects_mixed_dims(self):
        with pytest.raises(ValueError):
            Povm([np.eye(2), np.zeros((3, 3))])

    def test_accepts_projective(self):
        p = Povm([np.diag([1.0, 0.0]), np.diag([0.0, 1.0])])
        assert len(p) == 2 and p.dim == 2


class TestProblemValidation:
    def test_rejects_dim_mismatch(self):
        with pytest.raises(ValueError, match="dimension"):
            DiscriminationProblem(ZERO, dm(np.eye(3) / 3))

    def test_rejects_bad_priors(self):
        with pytest.raises(ValueError):
            DiscriminationProblem(ZERO, PLUS, p0=0.7, p1=0.7)
        with pytest.raises(ValueError):
            DiscriminationProblem(ZERO, PLUS, p0=-0.1)

    def test_default_priors_complement(self):
        prob = DiscriminationProblem(ZERO, PLUS, p0=0.3)
        assert prob.p1 == pytest.approx(0.7)


class TestPovmError:
    def test_always_guess_zero(self):
        povm = Povm([np.eye(2), np.zeros((2, 2))])
        prob = DiscriminationProblem(ZERO, PLUS, p0=0.4)
        assert povm_error(prob, povm) == pytest.approx(0.6, abs=1e-12)

    def test_orthogonal_states_perfectly_resolved(self):
        povm = Povm([ZERO.mat, ONE.mat])
        prob = DiscriminationProblem(ZERO, ONE)
        assert povm_error(prob, povm) == pytest.approx(0.0, abs=1e-12)

    def test_computational_basis_on_zero_vs_plus(self):
        povm = Povm([np.diag([1.0, 0.0]), np.diag([0.0, 1.0])])
        prob = DiscriminationProblem(ZERO, PLUS)
        assert povm_error(prob, povm) == pytest.approx(0.25, abs=1e-12)

    def test_rejects_non_binary(self):
        third = Povm([np.eye(2) / 3] * 3)
        with pytest.raises(ValueError, match="binary"):
            povm_error(DiscriminationProblem(ZERO, PLUS), third)

    def test_rejects_dim_mismatch(self):
        povm = Povm([np.eye(3), np.zeros((3, 3))])
        with pytest.raises(ValueError, match="mismatch"):
            povm_error(DiscriminationProblem(ZERO, PLUS), povm)


class TestHelstrom:
    def test_identical_states(self):
        prob = DiscriminationProblem(PLUS, PLUS, p0=0.3)
        assert helstrom_error(prob) == pytest.approx(0.3, abs=1e-12)

    def test_orthogonal_states(self):
        assert helstrom_error(DiscriminationProblem(ZERO, ONE)) == pytest.approx(0.0, abs=1e-12)

    def test_zero_vs_plus(self):
        # weighted difference has eigenvalues +-1/(2 sqrt(2))
        expected = 0.5 * (1 - 1 / np.sqrt(2))
        assert helstrom_error(DiscriminationProblem(ZERO, PLUS)) == pytest.approx(expected, abs=1e-12)

    def test_bounded_by_smaller_prior(self):
        rng = np.random.default_rng(31)
        for _ in range(20):
            p0 = float(rng.uniform(0, 1))
            prob = DiscriminationProblem(
                dm(random_density(rng, 4)), dm(random_density(rng, 4)), p0=p0
            )
            assert 0.0 <= helstrom_error(prob) <= min(p0, 1 - p0) + 1e-12


class TestOptimalPovm:
    def test_orthogonal_pure_states(self):
        povm = optimal_povm(DiscriminationProblem(ZERO, ONE))
        assert povm_error(DiscriminationProblem(ZERO, ONE), povm) == pytest.approx(0.0, abs=1e-12)

    def test_identical_states_larger_prior_wins(self):
        povm = optimal_povm(DiscriminationProblem(PLUS, PLUS, p0=0.7))
        assert max_abs_diff(povm.elements[0], np.eye(2)) < 1e-10

    def test_matches_helstrom_on_random_qutrits(self):
        rng = np.random.default_rng(77)
        for _ in range(25):
            prob = DiscriminationProblem(
                dm(random_density(rng, 3)), dm(random_density(rng, 3)),
                p0=float(rng.uniform(0.2, 0.8)),
            )
            gap = povm_error(prob, optimal_povm(prob)) - helstrom_error(prob)
            assert abs(gap) < 1e-10

    def test_no_random_povm_beats_it(self):
        rng = np.random.default_rng(99)
        for _ in range(10):
            dim = int(rng.integers(2, 7))
            prob = DiscriminationProblem(dm(random_density(rng, dim)), dm(random_density(rng, dim)))
            floor = helstrom_error(prob)
            for maker in (random_projective_povm, random_two_outcome_povm):
                for _ in range(10):
                    challenger = Povm(maker(rng, dim))
                    assert povm_error(prob, challenger) >= floor - 1e-10


class TestHsDistinguishability:
    def test_identical_states(self):
        rho = dm(random_density(np.random.default_rng(1), 4))
        assert hs_distinguishability(rho, rho) == pytest.approx(1.0, abs=1e-12)

    def test_orthogonal_support(self):
        assert hs_distinguishability(ZERO, ONE) == pytest.approx(0.0, abs=1e-12)

    def test_pure_against_maximally_mixed(self):
        half = dm(np.eye(2) / 2)
        assert hs_distinguishability(ZERO, half) == pytest.approx(1 / np.sqrt(2), abs=1e-12)

    def test_symmetric(self):
        rng = np.random.default_rng(6)
        a, b = dm(random_density(rng, 5)), dm(random_density(rng, 5))
        assert hs_distinguishability(a, b) == pytest.approx(hs_distinguishability(b, a), abs=1e-14)

    def test_unitary_invariance(self):
        rng = np.random.default_rng(12)
        for _ in range(10):
            a, b = dm(random_density(rng, 4)), dm(random_density(rng, 4))
            u = random_unitary(rng, 4)
            rotated = hs_distinguishability(
                dm(u @ a.mat @ u.conj().T), dm(u @ b.mat @ u.conj().T)
            )
            assert abs(rotated - hs_distinguishability(a, b)) < 1e-10

    def test_pure_states_reduce_to_squared_inner_product(self):
        rng = np.random.default_rng(40)
        for _ in range(10):
            u = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            u /= np.linalg.norm(u)
            v /= np.linalg.norm(v)
            got = hs_distinguishability(dm(np.outer(u, u.conj())), dm(np.outer(v, v.conj())))
            assert abs(got - abs(np.vdot(u, v)) ** 2) < 1e-12

    def test_rejects_dim_mismatch(self):
        with pytest.raises(ValueError):
            hs_distinguishability(ZERO, dm(np.eye(3) / 3))


class TestClosedForm:
    def test_zero_signal(self):
        for d_s, k_i in [(2, 1.0), (3, 2.5), (6, 6.0)]:
            assert h01_closed_form(0.0, d_s, k_i) == 1.0

    def test_anchor_values(self):
        assert h01_closed_form(1.0, 2, 2.0) == pytest.approx(0.5, abs=1e-15)
        assert h01_closed_form(1.0, 2, 1.0) == pytest.approx(1 / np.sqrt(2), abs=1e-15)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            h01_closed_form(1.5, 2, 1.0)
        with pytest.raises(ValueError):
            h01_closed_form(0.5, 1, 1.0)
        with pytest.raises(ValueError):
            h01_closed_form(0.5, 2, 0.5)

    @pytest.mark.parametrize("seed,d_s,d_i", [(0, 2, 2), (1, 3, 4), (2, 5, 3), (3, 4, 4)])
    @pytest.mark.parametrize("eta", [0.0, 0.3, 0.8, 1.0])
    def test_matches_direct_evaluation(self, seed, d_s, d_i, eta):
        state = haar_random_state(d_s, d_i, seed=seed)
        k_i = effective_rank_k(idler_reduction(state))
        direct = h01_direct(IlluminationScenario(state, eta=eta))
        assert abs(direct - h01_closed_form(eta, d_s, k_i)) < 1e-10

    def test_partial_difference_signs_on_grid(self):
        etas = np.linspace(0.1, 1.0, 7)
        dims = range(2, 7)
        ranks = [1.0, 1.5, 2.0, 3.0]
        for d in dims:
            for k in ranks:
                vals = [h01_closed_form(e, d, k) for e in etas]
                assert all(b < a for a, b in zip(vals, vals[1:]))
        for e in etas:
            for k in ranks:
                vals = [h01_closed_form(e, d, k) for d in dims]
                assert all(b < a for a, b in zip(vals, vals[1:]))
        for e in etas:
            for d in dims:
                vals = [h01_closed_form(e, d, k) for k in ranks]
                assert all(b < a for a, b in zip(vals, vals[1:]))


class TestAdvantage:
    def test_product_input_gives_zero(self):
        amp = np.zeros(4, dtype=complex)
        amp[1] = 1.0
        product = BipartiteState(2, 2, amp)
        assert advantage(IlluminationScenario(product, eta=0.8)) == pytest.approx(0.0, abs=1e-10)

    def test_bell_qubit_anchor(self):
        got = advantage(IlluminationScenario(bell_state(2), eta=1.0))
        assert got == pytest.approx(1 / np.sqrt(2) - 0.5, abs=1e-10)

    @pytest.mark.parametrize("eta", [0.25, 0.5, 0.7])
    def test_grows_with_bell_dimension(self, eta):
        # tabulating 1/sqrt(1 + eta^2 (d-1)) - 1/sqrt(1 + eta^2 (d^2-1))
        # shows a strict increase over d in 2..6 for these eta; at strong
        # signal (eta near 1) the same tabulation peaks around d=4 instead
        vals = [advantage(IlluminationScenario(bell_state(d), eta=eta)) for d in range(2, 7)]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    @pytest.mark.parametrize("eta", [0.25, 0.6, 1.0])
    def test_matches_closed_form_tabulation(self, eta):
        vals = [advantage(IlluminationScenario(bell_state(d), eta=eta)) for d in range(2, 7)]
        expected = [
            h01_closed_form(eta, d, 1.0) - h01_closed_form(eta, d, float(d))
            for d in range(2, 7)
        ]
        assert np.allclose(vals, expected, atol=1e-12)

    def test_rejects_full_model(self):
        sc = IlluminationScenario(bell_state(2), eta=0.5, lam=0.2, post_selected=False)
        with pytest.raises(ValueError):
            advantage(sc)


class TestMixtureChallenge:
    """The minimum over measurements is a true floor for the channel outputs."""

    def test_helstrom_floors_random_povms_on_channel_outputs(self):
        rng = np.random.default_rng(2024)
        from qillum.illumination import remaining_state_post_selected, returned_state_post_selected

        for seed in range(5):
            state = haar_random_state(2, 2, seed=seed)
            sc = IlluminationScenario(state, eta=float(rng.uniform(0.2, 1.0)))
            prob = DiscriminationProblem(
                returned_state_post_selected(sc), remaining_state_post_selected(sc)
            )
            floor = helstrom_error(prob)
            assert povm_error(prob, optimal_povm(prob)) == pytest.approx(floor, abs=1e-10)
            for _ in range(20):
                challenger = Povm(random_two_outcome_povm(rng, 4))
                assert povm_error(prob, challenger) >= floor - 1e-10
