"""Developing maps, holonomy generators, rescaling and chart matching."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from btzgeo.develop import (
    boost_conjugate,
    btz_holonomy_generator,
    develop_btz,
    develop_btz_inverse,
    develop_btz_jacobian,
    develop_massive,
    develop_massive_jacobian,
    developing_report,
    massive_holonomy_generator,
    match_cone_charts,
    rescale_btz,
)
from btzgeo.lorentz import MINKOWSKI_METRIC, classify_isometry, fixed_null_direction
from btzgeo.models import TWO_PI, metric_at

RNG = np.random.default_rng(2024)


def _cover_points(n, theta_span=8.0):
    return np.stack(
        [
            RNG.uniform(-2.0, 2.0, n),
            RNG.uniform(0.05, 3.0, n),
            RNG.uniform(-theta_span, theta_span, n),
        ],
        axis=-1,
    )


def _pullback(jac):
    return np.einsum("...ji,jk,...kl->...il", jac, MINKOWSKI_METRIC, jac)


class TestDevelopBtz:
    def test_known_images(self):
        assert np.array_equal(develop_btz([1.0, 1.0, 0.0]), [1.0, 0.0, 0.0])
        # t = tau + r theta^2/2, x = t - r, y = -r theta
        assert np.array_equal(develop_btz([0.0, 2.0, 1.0]), [1.0, -1.0, -2.0])

    def test_image_law_exact(self):
        pts = _cover_points(500)
        image = develop_btz(pts)
        assert np.max(np.abs(image[:, 0] - image[:, 1] - pts[:, 1])) < 1e-12

    def test_isometry_exact_jacobian(self):
        pts = _cover_points(300)
        pulled = _pullback(develop_btz_jacobian(pts))
        target = np.array([metric_at(0.0, r) for r in pts[:, 1]])
        assert np.max(np.abs(pulled - target)) < 1e-9

    def test_jacobian_determinant_is_radius(self):
        pts = _cover_points(100)
        dets = np.linalg.det(develop_btz_jacobian(pts))
        assert np.max(np.abs(dets - pts[:, 1])) < 1e-10

    def test_inverse_round_trip(self):
        pts = _cover_points(200)
        back = develop_btz_inverse(develop_btz(pts))
        assert np.max(np.abs(back - pts)) < 1e-9

    def test_inverse_needs_positive_depth(self):
        with pytest.raises(ValueError):
            develop_btz_inverse([0.0, 0.5, 0.0])

    @given(st.floats(-2.0, 2.0), st.floats(0.05, 2.0), st.floats(-6.0, 6.0))
    @settings(max_examples=50)
    def test_local_injectivity_round_trip(self, tau, r, theta):
        p = np.array([tau, r, theta])
        q = develop_btz_inverse(develop_btz(p))
        assert np.max(np.abs(q - p)) < 1e-9 * max(1.0, abs(theta))


class TestBtzHolonomy:
    def test_exact_matrix(self):
        b = TWO_PI
        expected = np.array(
            [
                [1.0 + b * b / 2.0, -b * b / 2.0, -b],
                [b * b / 2.0, 1.0 - b * b / 2.0, -b],
                [-b, b, 1.0],
            ]
        )
        assert np.array_equal(btz_holonomy_generator().linear, expected)

    def test_parabolic_trace(self):
        gamma = btz_holonomy_generator()
        assert abs(float(np.trace(gamma.linear)) - 3.0) < 1e-12
        assert classify_isometry(gamma)["kind"] == "parabolic"

    def test_fixes_null_ray(self):
        gamma = btz_holonomy_generator()
        v = np.array([1.0, 1.0, 0.0])
        assert np.max(np.abs(gamma.apply_linear(v) - v)) < 1e-12
        assert np.max(np.abs(fixed_null_direction(gamma) - v)) < 1e-9

    def test_equivariance(self):
        pts = _cover_points(500)
        gamma = btz_holonomy_generator()
        lhs = develop_btz(pts + np.array([0.0, 0.0, TWO_PI]))
        rhs = develop_btz(pts) @ gamma.linear.T
        assert np.max(np.abs(lhs - rhs)) < 1e-9


class TestDevelopMassive:
    def test_known_image(self):
        # angle pi has angular contraction 1/2
        out = develop_massive(math.pi, [0.5, 2.0, math.pi])
        expected = [0.5, 2.0 * math.cos(math.pi / 2), 2.0 * math.sin(math.pi / 2)]
        assert np.max(np.abs(out - expected)) < 1e-15

    def test_isometry_exact_jacobian(self):
        for alpha in (0.4, math.pi, TWO_PI):
            pts = _cover_points(200)
            pulled = _pullback(develop_massive_jacobian(alpha, pts))
            target = np.array([metric_at(alpha, r) for r in pts[:, 1]])
            assert np.max(np.abs(pulled - target)) < 1e-9, f"alpha={alpha}"

    def test_deck_transformation_is_rotation(self):
        alpha = 1.1
        pts = _cover_points(200)
        gamma = massive_holonomy_generator(alpha)
        lhs = develop_massive(alpha, pts + np.array([0.0, 0.0, TWO_PI]))
        rhs = develop_massive(alpha, pts) @ gamma.linear.T
        assert np.max(np.abs(lhs - rhs)) < 1e-9

    def test_holonomy_class(self):
        info = classify_isometry(massive_holonomy_generator(1.1))
        assert info["kind"] == "elliptic"
        assert abs(info["angle"] - 1.1) < 1e-12
        # reflex cone angles fold onto the principal representative
        info = classify_isometry(massive_holonomy_generator(5.0))
        assert abs(info["angle"] - (TWO_PI - 5.0)) < 1e-12

    def test_regular_angle_gives_identity(self):
        info = classify_isometry(massive_holonomy_generator(TWO_PI))
        assert info["kind"] == "identity"

    def test_rejects_extremal(self):
        with pytest.raises(ValueError):
            develop_massive(0.0, [0.0, 1.0, 0.0])


class TestRescale:
    def test_unit_scaling_is_isometry(self):
        report = rescale_btz(1.0)
        assert report.is_isometry
        assert report.max_residual == 0.0

    def test_sign_flip_is_isometry(self):
        assert rescale_btz(-1.0).is_isometry

    def test_dilation_is_not(self):
        report = rescale_btz(2.0)
        assert not report.is_isometry
        assert report.angular_factor == 4.0
        assert report.max_residual > 1.0


class TestBoostConjugate:
    def test_stays_parabolic(self):
        gamma = btz_holonomy_generator()
        for mu in (-1.0, 0.3, 2.0):
            conj = boost_conjugate(gamma, mu)
            assert classify_isometry(conj)["kind"] == "parabolic", f"mu={mu}"

    def test_fixed_direction_is_null(self):
        conj = boost_conjugate(btz_holonomy_generator(), 0.8)
        v = fixed_null_direction(conj)
        assert abs(v[0] - 1.0) < 1e-12
        assert abs(-v[0] ** 2 + v[1] ** 2 + v[2] ** 2) < 1e-9

    def test_zero_rapidity_is_identity_conjugation(self):
        gamma = btz_holonomy_generator()
        conj = boost_conjugate(gamma, 0.0)
        assert np.max(np.abs(conj.linear - gamma.linear)) < 1e-12


class TestChartMatching:
    def test_equal_angles_match(self):
        assert match_cone_charts(1.0, 1.0)
        assert match_cone_charts(1.0, 1.0 + 1e-12)

    def test_distinct_angles_do_not(self):
        assert not match_cone_charts(1.0, 1.5)
        assert not match_cone_charts(0.0, 1.0)

    def test_regular_angle_rejected(self):
        # a full-angle chart carries no singular line to compare
        with pytest.raises(ValueError):
            match_cone_charts(TWO_PI, 1.0)


class TestReport:
    def test_extremal_report(self):
        report = developing_report(0.0)
        assert report["model"] == "extremal"
        assert report["holonomy_class"] == "parabolic"
        assert abs(report["trace"] - 3.0) < 1e-12

    def test_massive_report(self):
        report = developing_report(1.2)
        assert report["model"] == "massive"
        assert report["holonomy_class"] == "elliptic"
        assert abs(report["angle"] - 1.2) < 1e-15
