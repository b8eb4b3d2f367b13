import numpy as np
import pytest

from evpos.catalog import averaging_plus_singular, averaging_plus_slope
from evpos.lattice import (
    Ell1,
    Ell2,
    GridSup,
    LatticeVector,
    LpQuadrature,
    midpoint_rule,
)
from evpos.operators import (
    Constant,
    Dense,
    Diagonal,
    Monomial,
    OperatorError,
    PointCombination,
    RankK,
    SignedPower,
    Tabulated,
    WeightedIntegral,
    WeightedShift,
    adjoint,
    apply,
    apply_functional,
    duality_matrix,
    integrate_product,
    model_from_json,
    model_to_json,
    pairing,
    power_apply,
    to_dense,
)


def grid(n=41):
    return GridSup(tuple(np.linspace(-1.0, 1.0, n)))


class TestFunctionals:
    def test_integral_of_constant(self):
        # (1/2) int_{-1}^{1} 1 dx = 1
        val = apply_functional(WeightedIntegral(Constant(1.0), 0.5), Constant(1.0), grid())
        assert val == pytest.approx(1.0)

    def test_integral_of_odd_function_vanishes(self):
        val = apply_functional(WeightedIntegral(Constant(1.0), 0.5), Monomial(1), grid())
        assert val == pytest.approx(0.0, abs=1e-14)

    def test_signed_weight_against_signed_power(self):
        # c int sgn(x) sgn(x)|x|^{-1/4} dx = c * 2 * (4/3)
        c = 3.0 / 16.0
        val = apply_functional(
            WeightedIntegral(SignedPower(0.0), c), SignedPower(-0.25), grid()
        )
        assert val == pytest.approx(0.5)

    def test_point_combination(self):
        phi = PointCombination((1.0, -1.0), (0.25, -0.25))
        assert apply_functional(phi, Monomial(1), grid()) == pytest.approx(0.5)
        assert apply_functional(phi, Constant(1.0), grid()) == pytest.approx(0.0)

    def test_integrate_product_closed_form(self):
        # int_{-1}^{1} x * sgn(x)|x|^{1/2} dx = 2 * int_0^1 x^{3/2} = 4/5
        assert integrate_product(Monomial(1), SignedPower(0.5), -1.0, 1.0) == pytest.approx(0.8)


class TestDualityMatrices:
    def test_slope_model_duality(self):
        T = averaging_plus_slope(201)
        D = duality_matrix(T)
        assert np.allclose(D, np.diag([1.0, 0.5]), atol=1e-12)

    def test_singular_model_duality_validates_c(self):
        # c = 3/16 is exactly the constant making <phi_2, f_2> = 1/2
        T = averaging_plus_singular(400)
        D = duality_matrix(T)
        assert abs(D[0, 0] - 1.0) < 1e-10
        assert abs(D[1, 1] - 0.5) < 1e-10
        assert abs(D[0, 1]) < 1e-10 and abs(D[1, 0]) < 1e-10

    def test_nondiagonal_duality_rejected(self):
        with pytest.raises(OperatorError):
            RankK(
                functions=(Constant(1.0), Monomial(1)),
                functionals=(
                    WeightedIntegral(Constant(1.0), 0.5),
                    WeightedIntegral(Constant(1.0), 0.5),
                ),
                space=grid(),
            )


class TestPowers:
    def test_rank2_power_formula(self):
        # T^n g = <phi_1, g> f_1 + lambda_2^{n-1} <phi_2, g> f_2
        T = averaging_plus_slope(201)
        nodes = np.asarray(T.space.nodes)
        g = LatticeVector((nodes**2).astype(complex), T.space)
        direct = power_apply(T, 4, g)
        a = pairing(T, 0, g, T.functionals[0])
        b = pairing(T, 0, g, T.functionals[1])
        expected = a * np.ones_like(nodes) + 0.5**3 * b * nodes
        assert np.allclose(direct.entries, expected, atol=1e-12)

    def test_semigroup_law(self):
        T = averaging_plus_slope(101)
        g = LatticeVector(np.ones(101, dtype=complex), T.space)
        lhs = power_apply(T, 5, g)
        rhs = power_apply(T, 2, power_apply(T, 3, g))
        assert np.allclose(lhs.entries, rhs.entries, atol=1e-12)

    def test_power_apply_matches_dense_power(self):
        T = averaging_plus_slope(41)
        A = to_dense(T).matrix
        g = LatticeVector(np.linspace(0.1, 1.0, 41).astype(complex), T.space)
        for n in (1, 2, 6):
            assert np.allclose(
                power_apply(T, n, g).entries,
                np.linalg.matrix_power(A, n) @ g.entries,
                atol=1e-10,
            )

    def test_diagonal_and_shift_powers(self):
        D = Diagonal(np.array([1.0, 0.5j]), Ell1())
        x = LatticeVector(np.ones(2, dtype=complex), Ell1())
        assert np.allclose(power_apply(D, 4, x).entries, [1.0, (0.5j) ** 4])
        S = WeightedShift(np.array([-1.0, -1.0]), Ell1())
        y = LatticeVector(np.array([1.0, 0, 0], dtype=complex), Ell1())
        assert np.allclose(power_apply(S, 2, y).entries, [0, 0, 1.0])
        assert np.allclose(power_apply(S, 3, y).entries, 0.0)

    def test_power_requires_positive_exponent(self):
        with pytest.raises(OperatorError):
            power_apply(Diagonal(np.array([1.0]), Ell1()), 0,
                        LatticeVector(np.ones(1, dtype=complex), Ell1()))


class TestPairings:
    def test_vector_pairing_at_n_zero(self):
        D = Diagonal(np.array([2.0, 3.0]), Ell1())
        x = LatticeVector(np.array([1.0, 1.0], dtype=complex), Ell1())
        xp = LatticeVector(np.array([1.0, 2.0], dtype=complex), Ell1())
        assert pairing(D, 0, x, xp) == pytest.approx(3.0)
        assert pairing(D, 1, x, xp) == pytest.approx(2.0 + 6.0)

    def test_functional_pairing_consistent_with_quadrature(self):
        T = averaging_plus_singular(200)
        x = LatticeVector(np.ones(200, dtype=complex), T.space)
        phi = T.functionals[0]
        via_closed = pairing(T, 3, x, phi)
        y = power_apply(T, 3, x)
        via_grid = pairing(T, 0, y, phi)
        assert via_closed == pytest.approx(via_grid, abs=1e-10)


class TestAdjointAndDense:
    def test_adjoint_is_conjugate_transpose(self):
        A = np.array([[1 + 1j, 2], [3, 4 - 2j]])
        assert np.allclose(adjoint(Dense(A, Ell2())).matrix, A.conj().T)

    def test_to_dense_diagonal(self):
        D = Diagonal(np.array([1.0, 0.5j]), Ell1())
        assert np.allclose(to_dense(D).matrix, np.diag([1.0, 0.5j]))

    def test_apply_matches_dense(self):
        T = averaging_plus_slope(41)
        g = LatticeVector(np.cos(np.asarray(T.space.nodes)).astype(complex), T.space)
        assert np.allclose(apply(T, g).entries, to_dense(T).matrix @ g.entries, atol=1e-12)


class TestJsonRoundTrip:
    @pytest.mark.parametrize(
        "model",
        [
            Dense(np.array([[1.0, 2.0j], [0.0, -1.0]]), Ell2()),
            Diagonal(np.array([1.0, 0.5j]), Ell1()),
            WeightedShift(np.array([-1.0, -1.0]), Ell1()),
            averaging_plus_slope(41),
            averaging_plus_singular(60),
        ],
    )
    def test_round_trip(self, model):
        data = model_to_json(model)
        back = model_from_json(data)
        assert np.allclose(to_dense(back).matrix, to_dense(model).matrix, atol=1e-14)
        assert model_to_json(back) == data

    def test_unknown_variant_rejected(self):
        with pytest.raises(OperatorError):
            model_from_json({"variant": "mystery"})
