"""Line surgeries and the nested chain where extendability is not monotone."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from btzgeo.develop import btz_holonomy_generator, massive_holonomy_generator
from btzgeo.errors import NotBTZExtendableError
from btzgeo.extensions import (
    TubeChart,
    adjoin_btz,
    chain_membership,
    extremal_chart,
    mixed_extension_chain,
    remove_btz,
    sample_chain_monotone,
)
from btzgeo.lorentz import LorentzIsometry, rotation_about_t_axis
from btzgeo.models import TWO_PI
from btzgeo.surfaces import BoundaryCurve, completeness_certificate


def massive_chart(alpha, with_line=True):
    return TubeChart(
        angle=alpha,
        radius=1.0,
        t_min=-1.0,
        t_max=1.0,
        has_singular_line=with_line,
        holonomy=massive_holonomy_generator(alpha),
    )


def regular_chart():
    return TubeChart(
        angle=TWO_PI,
        radius=1.0,
        t_min=-1.0,
        t_max=1.0,
        has_singular_line=False,
        holonomy=LorentzIsometry.identity(),
    )


class TestTubeChartInvariants:
    def test_valid_charts_construct(self):
        extremal_chart(with_line=True)
        extremal_chart(with_line=False)
        massive_chart(1.3)
        regular_chart()

    @pytest.mark.parametrize("angle", [-0.1, 7.0, float("nan")])
    def test_invalid_angle(self, angle):
        with pytest.raises(ValueError):
            TubeChart(angle, 1.0, -1.0, 1.0, False, LorentzIsometry.identity())

    def test_bad_extents(self):
        with pytest.raises(ValueError):
            extremal_chart(radius=0.0)
        with pytest.raises(ValueError):
            extremal_chart(t_min=1.0, t_max=1.0)

    def test_regular_tube_cannot_contain_line(self):
        with pytest.raises(ValueError, match="no singular line"):
            TubeChart(TWO_PI, 1.0, -1.0, 1.0, True, LorentzIsometry.identity())

    def test_extremal_requires_parabolic_holonomy(self):
        with pytest.raises(ValueError, match="parabolic"):
            TubeChart(0.0, 1.0, -1.0, 1.0, False, LorentzIsometry.identity())

    def test_regular_requires_trivial_holonomy(self):
        with pytest.raises(ValueError, match="trivial"):
            TubeChart(TWO_PI, 1.0, -1.0, 1.0, False, btz_holonomy_generator())

    def test_massive_requires_matching_angle(self):
        with pytest.raises(ValueError, match="elliptic"):
            TubeChart(1.3, 1.0, -1.0, 1.0, True, rotation_about_t_axis(0.7))
        with pytest.raises(ValueError, match="elliptic"):
            TubeChart(1.3, 1.0, -1.0, 1.0, True, btz_holonomy_generator())

    def test_massive_reflex_angle_folds(self):
        # the elliptic class only sees the rotation angle mod sign, so the
        # deck generator of a 5.0-cone classifies as 2 pi - 5.0
        massive_chart(5.0)


class TestAdjoin:
    def test_adds_line(self):
        chart = extremal_chart(with_line=False)
        full = adjoin_btz(chart)
        assert full.has_singular_line
        assert (full.angle, full.radius, full.t_min, full.t_max) == (
            chart.angle, chart.radius, chart.t_min, chart.t_max,
        )
        assert np.array_equal(full.holonomy.linear, chart.holonomy.linear)

    def test_idempotent(self):
        chart = extremal_chart(with_line=True)
        assert adjoin_btz(chart) is chart
        once = adjoin_btz(extremal_chart(with_line=False))
        assert adjoin_btz(once) is once

    def test_massive_not_extendable(self):
        with pytest.raises(NotBTZExtendableError):
            adjoin_btz(massive_chart(1.3, with_line=False))

    def test_regular_not_extendable(self):
        with pytest.raises(NotBTZExtendableError):
            adjoin_btz(regular_chart())


class TestRemove:
    def test_round_trip(self):
        chart = extremal_chart(radius=2.0, with_line=True)
        punctured, surf = remove_btz(chart)
        assert not punctured.has_singular_line
        restored = adjoin_btz(punctured)
        assert restored.has_singular_line
        assert restored.angle == chart.angle and restored.radius == chart.radius
        assert np.array_equal(restored.holonomy.linear, chart.holonomy.linear)

    def test_end_is_complete(self):
        _, surf = remove_btz(extremal_chart(with_line=True))
        assert surf.punctured
        cert = completeness_certificate(surf)
        assert cert is not None and cert >= 1.0

    def test_custom_boundary_trace(self):
        b = BoundaryCurve.from_trig(0.5, [0.2], [0.1])
        _, surf = remove_btz(extremal_chart(radius=1.0, with_line=True), b)
        th = np.linspace(0.0, TWO_PI, 32, endpoint=False)
        assert np.max(np.abs(surf.tau(np.ones_like(th), th) - b.value(th))) == 0.0

    def test_requires_line(self):
        with pytest.raises(ValueError):
            remove_btz(extremal_chart(with_line=False))

    def test_targets_extremal(self):
        with pytest.raises(ValueError):
            remove_btz(massive_chart(1.3))


class TestChain:
    def test_region_names(self):
        regions = mixed_extension_chain()
        assert [reg.name for reg in regions] == ["M0", "M1", "M2", "M3"]

    @pytest.mark.parametrize(
        "point, expected",
        [
            ((-1.0, 0.0, 0.0), [False, False, True, True]),
            ((-1.0, 1.0, 0.0), [True, True, True, True]),
            ((1.0, 1.0, 0.0), [False, False, False, True]),
            ((0.0, 0.0, 0.0), [False, False, False, True]),
        ],
    )
    def test_cited_points(self, point, expected):
        assert chain_membership(point) == expected

    def test_future_of_line_point_excluded_from_m1(self):
        # boundary of the closed future (dt exactly r/2) is excluded too
        _, m1, m2, _ = mixed_extension_chain()
        assert (0.5, 1.0, 0.0) not in m1
        assert (0.5, 1.0, 0.0) not in m2
        assert (0.49, 1.0, 0.0) in m1

    def test_past_half_line_only_in_m2(self):
        _, m1, m2, _ = mixed_extension_chain()
        assert (-0.5, 0.0, 1.0) not in m1
        assert (-0.5, 0.0, 1.0) in m2
        assert (0.5, 0.0, 1.0) not in m2

    def test_massive_points_rejected(self):
        from btzgeo.models import ModelPoint

        regions = mixed_extension_chain()
        with pytest.raises(ValueError):
            regions[0].contains(ModelPoint(math.pi, 0.0, 1.0, 0.0))

    @given(
        st.floats(-2.0, 2.0),
        st.floats(0.0, 2.0),
        st.floats(0.0, TWO_PI),
    )
    @settings(max_examples=200)
    def test_membership_monotone(self, t, r, theta):
        pattern = chain_membership((t, r, theta))
        assert not any(a and not b for a, b in zip(pattern, pattern[1:]))
        assert pattern[-1]

    def test_sampled_monotone_count(self):
        assert sample_chain_monotone(n=2000, seed=11) == 0
