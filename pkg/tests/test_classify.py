import numpy as np
import pytest

from evpos.catalog import (
    averaging_plus_singular,
    averaging_plus_slope,
    diagonal_drift,
    nonreal_diagonal,
)
from evpos.classify import (
    Confirmed,
    ExtremePoints,
    MonteCarlo,
    NotClassifiableError,
    Notion,
    RefutedWithWitness,
    StrategyUnavailableError,
    UndeterminedUpToHorizon,
    classify_asymptotic,
    delta_n,
    hierarchy_violations,
    individual_eventual,
    is_positive_operator,
    uniform_eventual,
    weak_eventual,
)
from evpos.lattice import Ell1, Ell2, EllInf, LatticeVector
from evpos.operators import Dense, Diagonal, WeightedShift
from evpos.rng import rng_for


class TestPositiveOperator:
    def test_positive_matrix(self):
        assert is_positive_operator(Dense(np.array([[1.0, 2.0], [0.0, 1.0]]), Ell1()))

    def test_negative_entry(self):
        assert not is_positive_operator(Dense(np.array([[1.0, -0.1], [0.0, 1.0]]), Ell1()))

    def test_complex_entry(self):
        assert not is_positive_operator(Diagonal(np.array([1.0, 0.5j]), Ell1()))


class TestEventualClassification:
    def test_positive_matrix_confirmed_at_zero(self):
        v = uniform_eventual(Dense(np.array([[0.5, 0.2], [0.1, 0.6]]), Ell1()))
        assert isinstance(v.status, Confirmed) and v.status.n0 == 0

    def test_eventually_positive_matrix_gets_finite_threshold(self):
        # strictly positive rank-1 projection plus a commuting contraction
        # that is large enough to push an entry of A itself negative
        vperp = np.array([1.0, 0.2]), np.array([0.2, -1.0])
        P = np.outer(vperp[0], vperp[0]) / (vperp[0] @ vperp[0])
        Q = -0.7 * np.outer(vperp[1], vperp[1]) / (vperp[1] @ vperp[1])
        A = P + Q
        assert np.min(A) < 0
        v = uniform_eventual(Dense(A, Ell1()))
        assert isinstance(v.status, Confirmed)
        assert v.status.n0 >= 1

    def test_slope_model_uniform_refuted(self):
        v = uniform_eventual(averaging_plus_slope(201))
        assert isinstance(v.status, RefutedWithWitness)

    def test_slope_model_individual_confirmed(self):
        v = individual_eventual(averaging_plus_slope(201))
        assert isinstance(v.status, Confirmed)

    def test_singular_model_individual_refuted(self):
        v = individual_eventual(averaging_plus_singular(400))
        assert isinstance(v.status, RefutedWithWitness)

    def test_singular_model_weak_confirmed(self):
        v = weak_eventual(averaging_plus_singular(400))
        assert isinstance(v.status, Confirmed)

    def test_drift_diagonal_weak_refuted(self):
        v = weak_eventual(diagonal_drift(50))
        assert isinstance(v.status, RefutedWithWitness)

    def test_nilpotent_shift_confirmed(self):
        T = WeightedShift(tuple(-1.0 for _ in range(9)), Ell1())
        v = uniform_eventual(T, horizon=15)
        assert isinstance(v.status, Confirmed)
        assert v.status.n0 == 10


class TestDeltaN:
    def test_ell1_extreme_points_exact(self):
        T = nonreal_diagonal()
        for n in range(1, 12):
            val, witness, exact = delta_n(T, n, ExtremePoints())
            assert exact
            expected = abs((0.5j) ** n - np.real((0.5j) ** n) * 0) if n % 4 else 0.0
            # d_+((i/2)^n e_2): 0 when (i/2)^n is positive real, else the
            # distance of the single complex entry to the half-line
            z = (0.5j) ** n
            expected = np.hypot(max(-z.real, 0.0), z.imag)
            assert val == pytest.approx(expected, abs=1e-12)

    def test_monte_carlo_is_lower_bound(self):
        T = nonreal_diagonal()
        exact, _, _ = delta_n(T, 3, ExtremePoints())
        mc, _, flag = delta_n(T, 3, MonteCarlo(samples=200, seed=1))
        assert not flag
        assert mc <= exact + 1e-12

    def test_sup_norm_enumeration_cap(self):
        T = Dense(np.eye(25, dtype=complex), EllInf())
        with pytest.raises(StrategyUnavailableError):
            delta_n(T, 1, ExtremePoints())

    def test_zero_spectral_radius_rejected(self):
        T = WeightedShift(np.array([-1.0]), Ell1())
        with pytest.raises(NotClassifiableError):
            delta_n(T, 1, ExtremePoints())


class TestAsymptotic:
    def test_nonreal_diagonal_all_confirmed(self):
        u, i, w = classify_asymptotic(nonreal_diagonal(), horizon=80)
        assert isinstance(u.status, Confirmed)
        assert isinstance(i.status, Confirmed)
        assert isinstance(w.status, Confirmed)

    def test_drift_diagonal_all_refuted(self):
        u, i, w = classify_asymptotic(diagonal_drift(50), horizon=120)
        assert isinstance(u.status, RefutedWithWitness)
        assert isinstance(i.status, RefutedWithWitness)
        assert isinstance(w.status, RefutedWithWitness)

    def test_drift_uniform_witness_is_last_basis_vector(self):
        u, _, _ = classify_asymptotic(diagonal_drift(50), horizon=120)
        witness = u.status.witness
        assert isinstance(witness, LatticeVector)
        # the worst direction is the symbol entry closest to -1
        assert witness.entries[-1] == pytest.approx(1.0)
        assert np.sum(np.abs(witness.entries)) == pytest.approx(1.0)

    def test_positive_matrix_confirmed(self):
        A = Dense(np.array([[0.6, 0.4], [0.3, 0.7]]), Ell1())
        u, i, w = classify_asymptotic(A, horizon=60)
        assert isinstance(u.status, Confirmed)

    def test_rotation_refuted(self):
        theta = 2 * np.pi / 5
        R = np.array(
            [[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]]
        )
        u, i, w = classify_asymptotic(Dense(R, Ell2()), horizon=120)
        assert isinstance(w.status, RefutedWithWitness)


class TestHierarchy:
    def test_no_violation_in_consistent_verdicts(self):
        T = averaging_plus_slope(101)
        verdicts = [
            uniform_eventual(T),
            individual_eventual(T),
            weak_eventual(T),
        ]
        assert hierarchy_violations(verdicts) == []

    def test_detects_inverted_pair(self):
        from evpos.classify import PositivityVerdict

        upper = PositivityVerdict(Notion.UNIFORM_EVENTUAL, Confirmed(0), (), 1e-9)
        lower = PositivityVerdict(
            Notion.WEAK_EVENTUAL,
            RefutedWithWitness(None, "synthetic"),
            (),
            1e-9,
        )
        bad = hierarchy_violations([upper, lower])
        assert len(bad) == 1

    def test_catalog_examples_respect_hierarchy(self):
        for T in (averaging_plus_slope(101), averaging_plus_singular(200)):
            verdicts = [
                uniform_eventual(T),
                individual_eventual(T),
                weak_eventual(T),
            ]
            assert hierarchy_violations(verdicts) == []
