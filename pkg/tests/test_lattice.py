import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from evpos.lattice import (
    Ell1,
    Ell2,
    EllInf,
    GridSup,
    LatticeError,
    LatticeVector,
    LpQuadrature,
    complex_modulus,
    cone_distance,
    cone_distance_oracle,
    imag_part,
    is_positive,
    midpoint_rule,
    negative_part,
    norm_value,
    positive_part,
    real_part,
    trapezoid_weights,
)

NORMS = [Ell1(), Ell2(), EllInf()]


def vec(entries, norm=None):
    return LatticeVector(np.asarray(entries, dtype=complex), norm or Ell2())


class TestParts:
    def test_real_imag_split(self):
        x = vec([1 + 2j, -3 - 4j])
        assert np.allclose(real_part(x).entries, [1, -3])
        assert np.allclose(imag_part(x).entries, [2, -4])

    def test_positive_negative_parts(self):
        x = vec([2, -3, 0])
        assert np.allclose(positive_part(x).entries, [2, 0, 0])
        assert np.allclose(negative_part(x).entries, [0, 3, 0])

    def test_modulus(self):
        x = vec([3 + 4j])
        assert np.allclose(complex_modulus(x).entries, [5])

    def test_decomposition_identity(self):
        rng = np.random.default_rng(3)
        z = rng.normal(size=8) + 1j * rng.normal(size=8)
        x = vec(z)
        rebuilt = (
            positive_part(real_part(x)).entries
            - negative_part(real_part(x)).entries
            + 1j * imag_part(x).entries
        )
        assert np.allclose(rebuilt, z)


class TestNorms:
    def test_ell1(self):
        assert norm_value(vec([3, -4j], Ell1())) == pytest.approx(7)

    def test_ell2(self):
        assert norm_value(vec([3, 4], Ell2())) == pytest.approx(5)

    def test_ellinf(self):
        assert norm_value(vec([3, -4j], EllInf())) == pytest.approx(4)

    def test_lp_quadrature_constant(self):
        nodes, weights = midpoint_rule(-1.0, 1.0, 64)
        norm = LpQuadrature(2.0, tuple(nodes), tuple(weights))
        x = LatticeVector(np.ones(64, dtype=complex), norm)
        # ||1||_{L^2(-1,1)} = sqrt(2)
        assert norm_value(x) == pytest.approx(np.sqrt(2.0))

    def test_grid_sup(self):
        norm = GridSup((0.0, 0.5, 1.0))
        assert norm_value(LatticeVector(np.array([1, -2, 0.5j]), norm)) == pytest.approx(2)

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(LatticeError):
            LatticeVector(np.ones(3, dtype=complex), GridSup((0.0, 1.0)))

    def test_bad_quadrature_weights_rejected(self):
        with pytest.raises(LatticeError):
            LpQuadrature(2.0, (0.0, 1.0), (0.5, -0.5))


class TestConeDistance:
    def test_positive_vector_is_at_distance_zero(self):
        for norm in NORMS:
            assert cone_distance(vec([1, 2, 0], norm)) == 0.0
            assert is_positive(vec([1, 2, 0], norm))

    def test_negative_real_scalar(self):
        # d_+((-1)) = ||-(-1)^- || = 1 in every norm
        for norm in NORMS:
            assert cone_distance(vec([-1], norm)) == pytest.approx(1.0)

    def test_imaginary_scalar(self):
        for norm in NORMS:
            assert cone_distance(vec([1j], norm)) == pytest.approx(1.0)

    def test_formula_value(self):
        # d_+(x) = || -(Re x)^- + i Im x ||
        x = vec([-3 + 4j, 2], Ell2())
        assert cone_distance(x) == pytest.approx(5.0)

    def test_translation_by_positive_part_only(self):
        x = vec([-1, 5], Ell1())
        # the nearest cone point is (Re x)^+ = (0, 5)
        assert cone_distance(x) == pytest.approx(1.0)

    @settings(max_examples=200, deadline=None)
    @given(
        st.lists(
            st.tuples(
                st.floats(-5, 5, allow_nan=False), st.floats(-5, 5, allow_nan=False)
            ),
            min_size=1,
            max_size=6,
        ),
        st.sampled_from([0, 1, 2]),
    )
    def test_cone_distance_bounds(self, pairs, which):
        norm = NORMS[which]
        z = np.array([complex(a, b) for a, b in pairs])
        x = LatticeVector(z, norm)
        d = cone_distance(x)
        assert 0.0 <= d <= norm_value(x) + 1e-12
        # distance to the specific cone point (Re x)^+ is an upper bound that
        # the formula must attain
        ref = norm_value(
            x.with_entries(z - np.maximum(z.real, 0.0))
        )
        assert d == pytest.approx(ref, abs=1e-12)

    @settings(max_examples=60, deadline=None)
    @given(
        st.lists(
            st.tuples(
                st.floats(-2, 2, allow_nan=False), st.floats(-2, 2, allow_nan=False)
            ),
            min_size=1,
            max_size=4,
        ),
        st.sampled_from([0, 1, 2]),
    )
    def test_formula_matches_oracle(self, pairs, which):
        norm = NORMS[which]
        z = np.array([complex(a, b) for a, b in pairs])
        x = LatticeVector(z, norm)
        resolution = 1e-3
        d = cone_distance(x)
        d_oracle = cone_distance_oracle(x, resolution)
        assert d <= d_oracle + 1e-12
        assert d_oracle - d <= len(z) * resolution

    def test_scaling_homogeneity(self):
        x = vec([-1 + 2j, 3 - 1j], Ell2())
        assert cone_distance(x.with_entries(2 * x.entries)) == pytest.approx(
            2 * cone_distance(x)
        )


class TestQuadratureHelpers:
    def test_midpoint_rule_integrates_linear_exactly(self):
        nodes, weights = midpoint_rule(-1.0, 1.0, 50)
        assert np.sum(weights) == pytest.approx(2.0)
        assert np.sum(weights * nodes) == pytest.approx(0.0, abs=1e-14)

    def test_trapezoid_weights_sum_to_length(self):
        nodes = np.linspace(-1, 1, 201)
        w = trapezoid_weights(nodes)
        assert np.sum(w) == pytest.approx(2.0)
