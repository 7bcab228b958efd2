import math

import numpy as np
import pytest

from rabi2q import ModelParams
from rabi2q.model import FockTruncation, spin1_matrices
from rabi2q.transform import (
    PerturbationValidityWarning,
    dressed_levels,
    perturbation_correction,
    perturbation_sum_over_states,
    solve_chi,
    with_correction,
)
from rabi2q import variational

SQ2 = math.sqrt(2.0)


class TestDressedLevels:
    def test_zero_displacement_gives_bare_spectrum(self):
        sol = dressed_levels(0.0, ModelParams(1.0, 1.0, 0.5))
        assert sol.mu == 0.0
        assert sol.eps_minus == pytest.approx(-1.0, abs=1e-14)
        assert sol.eps_zero == 0.0
        assert sol.eps_plus == pytest.approx(1.0, abs=1e-14)
        assert sol.lambda_minus == pytest.approx(-SQ2, abs=1e-14)
        assert sol.lambda_plus == pytest.approx(SQ2, abs=1e-14)

    def test_against_dense_3x3_eigensolve(self):
        rng = np.random.default_rng(5)
        ops = spin1_matrices()
        jz2 = (ops.jz @ ops.jz).real
        for _ in range(25):
            chi = rng.uniform(-1.5, 1.5)
            p = ModelParams(rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0), rng.uniform(0, 1.5))
            sol = dressed_levels(chi, p)
            atom = sol.eta * p.omega_a * ops.jx.real - (
                2 * p.g * chi - p.omega_c * chi * chi
            ) * jz2
            eps, vecs = np.linalg.eigh(atom)
            np.testing.assert_allclose(
                [sol.eps_minus, sol.eps_zero, sol.eps_plus], eps, atol=1e-12
            )
            for closed, column in zip((sol.vec_minus, sol.vec_zero, sol.vec_plus), vecs.T):
                assert abs(abs(closed @ column) - 1.0) < 1e-12

    def test_eigenvector_orthonormality(self):
        sol = dressed_levels(0.8, ModelParams(1.0, 1.0, 0.9))
        basis = np.column_stack([sol.vec_minus, sol.vec_zero, sol.vec_plus])
        np.testing.assert_allclose(basis.T @ basis, np.eye(3), atol=1e-14)

    def test_level_ordering(self):
        for chi, g in [(0.2, 0.3), (0.7, 0.9), (1.1, 1.2)]:
            sol = dressed_levels(chi, ModelParams(1.0, 1.0, g))
            assert sol.eps_plus > sol.eps_zero > sol.eps_minus

    def test_lambda_product(self):
        for chi in (0.1, 0.5, 1.3):
            sol = dressed_levels(chi, ModelParams(1.0, 1.2, 0.8))
            assert sol.lambda_minus * sol.lambda_plus == pytest.approx(-2.0, rel=1e-12)


class TestSolveChi:
    @pytest.mark.parametrize("g,reference", [(0.8, -1.19965), (1.2, -1.62699)])
    def test_resonance_reference_energies(self, g, reference):
        assert abs(solve_chi(ModelParams(1.0, 1.0, g)).eps_minus - reference) < 2e-5

    def test_decoupled(self):
        sol = solve_chi(ModelParams(1.0, 1.0, 0.0))
        assert sol.chi == 0.0
        assert sol.eps_minus == pytest.approx(-1.0, abs=1e-12)

    def test_equivalence_with_variational(self):
        # chi = alpha, lambda_- = beta, eps_- = E_v
        for wc in (0.8, 1.0, 1.2):
            for g in (0.2, 0.7, 1.1):
                p = ModelParams(1.0, wc, g)
                var = variational.solve(p)
                sol = solve_chi(p)
                assert sol.chi == var.alpha
                assert abs(sol.lambda_minus - var.beta) < 1e-9
                assert abs(sol.eps_minus - var.energy) < 1e-9


class TestPerturbationCorrection:
    @pytest.mark.parametrize("g,reference", [(0.6, -1.10403), (1.0, -1.39094)])
    def test_corrected_energy_reference(self, g, reference):
        p = ModelParams(1.0, 1.0, g)
        sol = solve_chi(p)
        corrected = sol.eps_minus + perturbation_correction(sol, p)
        assert abs(corrected - reference) < 2e-5

    def test_zero_displacement_gives_zero_shift(self):
        p = ModelParams(1.0, 1.0, 0.5)
        assert perturbation_correction(dressed_levels(0.0, p), p) == 0.0

    @pytest.mark.filterwarnings("ignore::rabi2q.transform.PerturbationValidityWarning")
    def test_correction_never_positive(self):
        for wc in (0.8, 1.0, 1.2):
            for g in np.arange(0.1, 1.25, 0.1):
                p = ModelParams(1.0, wc, float(g))
                sol = solve_chi(p)
                assert perturbation_correction(sol, p) <= 0.0

    def test_warns_outside_expansion_regime(self):
        p = ModelParams(1.0, 0.8, 1.1)
        sol = solve_chi(p)
        assert sol.chi >= 1.0
        with pytest.warns(PerturbationValidityWarning):
            perturbation_correction(sol, p)

    def test_with_correction_fills_delta_e(self):
        p = ModelParams(1.0, 1.0, 0.4)
        sol = solve_chi(p)
        assert sol.delta_e is None
        filled = with_correction(sol, p)
        assert filled.delta_e == perturbation_correction(sol, p)

    def test_improves_on_uncorrected(self, exact_ground):
        # second-order shift tightens the dressed-level estimate
        for g in (0.2, 0.4, 0.6, 0.8, 1.0, 1.2):
            p = ModelParams(1.0, 1.0, g)
            sol = solve_chi(p)
            e_exact = exact_ground(g).energy
            corrected = sol.eps_minus + perturbation_correction(sol, p)
            assert abs(corrected - e_exact) < abs(sol.eps_minus - e_exact)


class TestSumOverStatesOracle:
    def test_matches_closed_form_tightly(self):
        p = ModelParams(1.0, 1.0, 0.4)
        sol = solve_chi(p)
        closed = perturbation_correction(sol, p)
        summed = perturbation_sum_over_states(sol, p, FockTruncation(40))
        assert abs(closed - summed) < 1e-10

    @pytest.mark.parametrize(
        "wc,g", [(1.0, 0.2), (1.0, 0.6), (1.0, 0.8), (0.8, 0.5), (1.2, 0.5), (1.2, 0.9)]
    )
    def test_grid_agreement(self, wc, g):
        p = ModelParams(1.0, wc, g)
        sol = solve_chi(p)
        closed = perturbation_correction(sol, p)
        summed = perturbation_sum_over_states(sol, p, FockTruncation(40))
        assert abs(closed - summed) < 1e-9

    def test_zero_displacement(self):
        p = ModelParams(1.0, 1.0, 0.3)
        sol = dressed_levels(0.0, p)
        assert perturbation_sum_over_states(sol, p, FockTruncation(20)) == 0.0
