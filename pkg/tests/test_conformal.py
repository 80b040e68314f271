import math

import numpy as np
import pytest

from hexflow.conformal import (
    AdmissibilityError,
    boundary_margin,
    curvature,
    edge_length_derivative,
    edge_margins,
    laplacian,
    random_admissible_factor,
    scale_metric,
)
from hexflow.surface import make_one_holed_torus, make_random_surface

from conftest import ACOSH2, corpus, random_metric


class TestScaleMetric:
    def test_identity_at_zero_factor(self, pants, pants_metric):
        l = scale_metric(np.zeros(3), pants_metric, pants)
        assert np.allclose(l, pants_metric, rtol=1e-14)

    @pytest.mark.parametrize("t", [-0.05, 0.0, 0.1, 0.4])
    def test_symmetric_scaling_closed_form(self, pants, pants_metric, t):
        # cosh(l/2) = e^{2t} sqrt(3/2) for the all-equal factor (t, t, t)
        l = scale_metric(np.full(3, t), pants_metric, pants)
        expected = 2.0 * math.acosh(math.exp(2.0 * t) * math.sqrt(1.5))
        assert np.allclose(l, expected, rtol=1e-13)

    def test_boundary_of_admissible_set_rejected(self, pants, pants_metric):
        # w_i + w_j = -ln cosh(l~/2) exactly on edge 0 (endpoints 0 and 2)
        shift = math.log(math.cosh(ACOSH2 / 2.0))
        w = np.array([-shift / 2.0, 0.5, -shift / 2.0])
        assert edge_margins(w, pants_metric, pants)[0] == pytest.approx(0.0, abs=1e-15)
        with pytest.raises(AdmissibilityError, match="edge 0"):
            scale_metric(w, pants_metric, pants)

    def test_error_names_first_violated_edge(self, pants, pants_metric):
        with pytest.raises(AdmissibilityError, match="edge 1"):
            # drive only edge 1 (endpoints 1 and 0) past the wall
            scale_metric(np.array([-0.2, -0.2, 0.3]), pants_metric, pants)


class TestBoundaryMargin:
    def test_zero_factor_margin(self, pants, pants_metric):
        expected = math.log(math.sqrt(1.5))
        assert boundary_margin(np.zeros(3), pants_metric, pants) == pytest.approx(
            expected, abs=1e-14
        )

    def test_positive_at_zero_for_any_metric(self):
        rng = np.random.default_rng(0)
        for cx in corpus():
            bg = random_metric(cx, rng)
            assert boundary_margin(np.zeros(cx.num_components), bg, cx) > 0.0

    def test_concavity(self, pants, pants_metric):
        rng = np.random.default_rng(3)
        for _ in range(30):
            w1 = rng.uniform(-1, 1, 3)
            w2 = rng.uniform(-1, 1, 3)
            for lam in (0.0, 0.25, 0.5, 0.75, 1.0):
                mid = boundary_margin(lam * w1 + (1 - lam) * w2, pants_metric, pants)
                lo = lam * boundary_margin(w1, pants_metric, pants) + (
                    1 - lam
                ) * boundary_margin(w2, pants_metric, pants)
                assert mid >= lo - 1e-12


class TestCurvature:
    def test_pants_closed_form(self, pants, pants_metric):
        K = curvature(pants_metric, pants)
        assert np.allclose(K, 2.0 * ACOSH2, atol=1e-12)

    def test_torus_closed_form(self, torus):
        K = curvature(np.full(3, ACOSH2), torus)
        assert K.shape == (1,)
        assert K[0] == pytest.approx(6.0 * ACOSH2, abs=1e-12)

    def test_positive_on_random_inputs(self):
        rng = np.random.default_rng(5)
        for cx in corpus():
            bg = random_metric(cx, rng)
            w = random_admissible_factor(bg, cx, rng)
            K = curvature(scale_metric(w, bg, cx), cx)
            assert np.all(K > 0.0)

    def test_blowup_as_edge_shrinks(self, pants, pants_metric):
        i, j = pants.edge_endpoints[0]
        previous = None
        for l0 in (1e-1, 1e-2, 1e-3):
            l = pants_metric.copy()
            l[0] = l0
            K = curvature(l, pants)
            if previous is not None:
                assert K[i] > previous[i]
                assert K[j] > previous[j]
            previous = K
        assert previous[i] > 2.0 * curvature(pants_metric, pants)[i]


class TestEdgeLengthDerivative:
    def test_value_at_one(self):
        assert edge_length_derivative(1.0) == pytest.approx(2.0 / math.tanh(0.5), rel=1e-13)
        assert edge_length_derivative(1.0) == pytest.approx(4.3279069, abs=1e-6)

    def test_limit_at_infinity(self):
        assert edge_length_derivative(500.0) == pytest.approx(2.0, rel=1e-12)

    def test_matches_finite_difference_of_scaling(self):
        rng = np.random.default_rng(9)
        h = 1e-6
        for cx in corpus(n_random=3):
            bg = random_metric(cx, rng)
            w = random_admissible_factor(bg, cx, rng)
            l = scale_metric(w, bg, cx)
            for e, (i, j) in enumerate(cx.edge_endpoints):
                mult = 2 if i == j else 1
                basis = np.zeros(cx.num_components)
                basis[i] = h
                fd = (
                    scale_metric(w + basis, bg, cx)[e] - scale_metric(w - basis, bg, cx)[e]
                ) / (2.0 * h)
                assert fd == pytest.approx(mult * edge_length_derivative(l[e]), rel=1e-5)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            edge_length_derivative(0.0)


def finite_difference_jacobian(w, bg, cx, h=1e-6):
    n = cx.num_components
    J = np.zeros((n, n))
    for j in range(n):
        basis = np.zeros(n)
        basis[j] = h
        K_plus = curvature(scale_metric(w + basis, bg, cx), cx)
        K_minus = curvature(scale_metric(w - basis, bg, cx), cx)
        J[:, j] = (K_plus - K_minus) / (2.0 * h)
    return J


class TestLaplacian:
    def test_pants_symmetric_negative_definite(self, pants, pants_metric):
        L = laplacian(np.zeros(3), pants_metric, pants)
        assert np.max(np.abs(L - L.T)) < 1e-12
        assert np.max(np.linalg.eigvalsh(L)) < 0.0

    def test_matches_finite_differences(self):
        rng = np.random.default_rng(13)
        for cx in corpus(n_random=5):
            bg = random_metric(cx, rng)
            w = random_admissible_factor(bg, cx, rng)
            L = laplacian(w, bg, cx)
            fd = finite_difference_jacobian(w, bg, cx)
            assert np.max(np.abs(L - fd)) <= 1e-5 * max(1.0, np.max(np.abs(fd)))

    def test_torus_scalar_negative(self, torus):
        L = laplacian(np.zeros(1), np.full(3, ACOSH2), torus)
        assert L.shape == (1, 1)
        assert L[0, 0] < 0.0
        fd = finite_difference_jacobian(np.zeros(1), np.full(3, ACOSH2), torus)
        assert L[0, 0] == pytest.approx(fd[0, 0], rel=1e-6)

    def test_definite_at_sampled_admissible_points(self):
        rng = np.random.default_rng(17)
        for cx in corpus(n_random=4):
            bg = random_metric(cx, rng)
            for _ in range(3):
                w = random_admissible_factor(bg, cx, rng)
                L = laplacian(w, bg, cx)
                scale = np.max(np.abs(L))
                assert np.max(np.abs(L - L.T)) < 1e-9 * scale
                assert np.max(np.linalg.eigvalsh(L)) < -1e-12 * scale

    def test_rejects_inadmissible(self, pants, pants_metric):
        with pytest.raises(AdmissibilityError):
            laplacian(np.full(3, -1.0), pants_metric, pants)


class TestCurvatureBlowupNearWall:
    def test_margin_to_zero_drives_endpoint_curvatures(self, pants, pants_metric):
        e = 0
        i, j = pants.edge_endpoints[e]
        m0 = boundary_margin(np.zeros(3), pants_metric, pants)
        normal = np.zeros(3)
        normal[i] += 1.0
        normal[j] += 1.0
        previous = None
        for margin in (1e-2, 1e-4, 1e-8, 1e-12):
            w = -(m0 - margin) / 2.0 * normal
            assert edge_margins(w, pants_metric, pants)[e] == pytest.approx(margin, rel=1e-6)
            K = curvature(scale_metric(w, pants_metric, pants), pants)
            if previous is not None:
                assert K[i] > previous[i]
                assert K[j] > previous[j]
            previous = K
        # any fixed bound is eventually exceeded
        assert previous[i] > 25.0
        assert previous[j] > 25.0
