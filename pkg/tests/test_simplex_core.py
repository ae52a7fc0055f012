import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import ks_2samp
from shapely.geometry import Polygon, box

from simplex_orders import (
    CapacityError,
    SimplexError,
    SimplexVector,
    joint_cdf,
    sample_exponential,
    sample_spacings,
    simplex_volume,
    spacings,
    tail_prob,
)
from simplex_orders.simplex_core import (
    SUM_RTOL,
    draw_exponential,
    draw_spacings,
    make_generator,
)


def triangle_cdf(a, b, c):
    """Independent oracle for n=3: area fraction of the (theta1, theta2) triangle
    cut by theta1 <= a, theta2 <= b and theta3 = 1 - theta1 - theta2 <= c."""
    tri = Polygon([(0, 0), (1, 0), (0, 1)])
    region = tri.intersection(box(0, 0, a, b))
    # theta1 + theta2 >= 1 - c
    half = Polygon([(1 - c, 0), (5, 0), (5, 5), (0, 5), (0, 1 - c)]) if c < 1 else box(-1, -1, 5, 5)
    return region.intersection(half).area / tri.area


class TestSimplexVector:
    def test_valid(self):
        v = SimplexVector((0.25, 0.75))
        assert v.n == 2 and v.u == 1.0
        assert list(v) == [0.25, 0.75]

    @pytest.mark.parametrize(
        "coords, u",
        [((), 1.0), ((-0.1, 1.1), 1.0), ((0.5, 0.4), 1.0), ((1.0,), 0.0), ((float("nan"), 1.0), 1.0)],
    )
    def test_invalid(self, coords, u):
        with pytest.raises(SimplexError):
            SimplexVector(coords, u)

    def test_sum_tolerance_scales_with_u(self):
        SimplexVector((500.0, 500.0 + 1e-10), 1000.0)
        with pytest.raises(SimplexError):
            SimplexVector((500.0, 500.0 + 1e-8), 1000.0)

    def test_suffix_sums(self):
        np.testing.assert_allclose(SimplexVector((0.5, 0.3, 0.2)).suffix_sums(), [1.0, 0.5, 0.2])


class TestSpacings:
    def test_single_point(self):
        assert spacings([0.3]).coords == pytest.approx((0.3, 0.7))

    def test_sorts_then_differences(self):
        assert spacings([0.5, 0.2]).coords == pytest.approx((0.2, 0.3, 0.5))

    def test_empty(self):
        assert spacings([]).coords == (1.0,)

    def test_scaled(self):
        assert spacings([0.25], u=4.0).coords == (1.0, 3.0)

    def test_ties_give_zero_coordinates(self):
        assert spacings([0.4, 0.4]).coords == pytest.approx((0.4, 0.0, 0.6))

    @pytest.mark.parametrize("bad", [[-0.1], [1.5], [0.2, float("nan")]])
    def test_domain(self, bad):
        with pytest.raises(SimplexError):
            spacings(bad)


class TestSamplers:
    def test_one_dimensional(self):
        assert sample_spacings(1, 2.0, seed=5).coords == (2.0,)
        assert sample_exponential(1, 1.0, seed=5).coords == (1.0,)

    @pytest.mark.parametrize("sampler", [sample_spacings, sample_exponential])
    def test_deterministic(self, sampler):
        assert sampler(3, 1.0, seed=42) == sampler(3, 1.0, seed=42)
        assert sampler(3, 1.0, seed=42) != sampler(3, 1.0, seed=43)

    @pytest.mark.parametrize("sampler", [sample_spacings, sample_exponential])
    def test_zero_dimension_rejected(self, sampler):
        with pytest.raises(SimplexError):
            sampler(0, 1.0, seed=1)

    def test_seed_range(self):
        with pytest.raises(SimplexError):
            make_generator(-1)
        with pytest.raises(SimplexError):
            make_generator(2**64)

    @pytest.mark.parametrize("draw", [draw_spacings, draw_exponential])
    @pytest.mark.parametrize("n, u", [(2, 1.0), (5, 3.5), (40, 0.01)])
    def test_batch_on_simplex(self, draw, n, u):
        x = draw(make_generator(3), 20_000, n, u)
        assert np.all(x >= 0)
        np.testing.assert_allclose(x.sum(axis=1), u, rtol=0, atol=SUM_RTOL * max(1.0, u))

    def test_coordinate_means(self):
        # exchangeability forces mean u/n
        x = draw_spacings(make_generator(11), 100_000, 4)
        np.testing.assert_allclose(x.mean(axis=0), 0.25, atol=0.005)

    def test_samplers_agree_on_max(self):
        a = draw_spacings(make_generator(1), 100_000, 5).max(axis=1)
        b = draw_exponential(make_generator(2), 100_000, 5).max(axis=1)
        assert ks_2samp(a, b).statistic <= 0.01

    def test_samplers_indistinguishable_across_seeds(self):
        failures = 0
        for s in range(20):
            a = draw_spacings(make_generator(100 + s), 20_000, 5).max(axis=1)
            b = draw_exponential(make_generator(200 + s), 20_000, 5).max(axis=1)
            failures += ks_2samp(a, b).pvalue <= 0.001
        assert failures <= 1


class TestJointCdf:
    def test_two_dimensional_value(self):
        # on the 2-simplex: P(0.3 <= Theta_1 <= 0.6)
        assert joint_cdf([0.6, 0.7], 2, 1.0) == pytest.approx(0.3, abs=1e-15)

    def test_zero_threshold(self):
        assert joint_cdf([0.0, 0.5, 0.9]) == 0.0
        assert joint_cdf([-0.2, 0.5]) == 0.0

    @pytest.mark.parametrize("n, u", [(2, 1.0), (4, 2.5), (9, 0.3)])
    def test_whole_simplex(self, n, u):
        assert joint_cdf([u] * n, n, u) == pytest.approx(1.0, abs=1e-12)

    def test_one_dimensional(self):
        assert joint_cdf([1.0], 1, 1.0) == 1.0
        assert joint_cdf([0.9], 1, 1.0) == 0.0

    def test_length_mismatch(self):
        with pytest.raises(SimplexError):
            joint_cdf([0.5, 0.5], 3)

    def test_capacity(self):
        with pytest.raises(CapacityError):
            joint_cdf([0.5] * 26)

    def test_chunked_enumeration(self):
        # n above the in-memory block exercises the tail loop; equal thresholds
        # reduce the joint CDF to the CDF of the maximum
        n = 22
        theta = [0.2] * n
        from simplex_orders.max_coordinate import MaxDistParams, whitworth_cdf

        assert joint_cdf(theta) == pytest.approx(whitworth_cdf(MaxDistParams(n), 0.2, "exact"), abs=1e-9)

    @pytest.mark.parametrize(
        "theta",
        [(0.5, 0.5, 0.5), (0.2, 0.6, 0.9), (0.7, 0.1, 0.45), (1.0, 0.3, 0.35), (0.4, 0.4, 0.3)],
    )
    def test_against_area_oracle(self, theta):
        assert joint_cdf(theta) == pytest.approx(triangle_cdf(*theta), abs=1e-12)

    def test_scale_invariance(self):
        theta = np.array([0.3, 0.5, 0.4, 0.2])
        assert joint_cdf(theta * 3.0, 4, 3.0) == pytest.approx(joint_cdf(theta), abs=1e-13)

    @settings(max_examples=60, deadline=None)
    @given(
        st.lists(st.floats(0.01, 1.0), min_size=2, max_size=6).flatmap(
            lambda lo: st.tuples(st.just(lo), st.lists(st.floats(0.0, 0.5), min_size=len(lo), max_size=len(lo)))
        )
    )
    def test_monotone(self, pair):
        lo, bump = pair
        hi = [a + b for a, b in zip(lo, bump)]
        assert joint_cdf(lo) <= joint_cdf(hi) + 1e-12

    def test_inclusion_exclusion_n2(self):
        # P(T1<=a, T2<=b) = 1 - P(T1>a) - P(T2>b) + P(T1>a, T2>b)
        for a, b in [(0.3, 0.9), (0.6, 0.7), (0.2, 0.3), (0.95, 0.5)]:
            p_gt_a = tail_prob([a, 0.0])
            p_gt_b = tail_prob([0.0, b])
            both = tail_prob([a, b])
            assert joint_cdf([a, b]) == pytest.approx(1 - p_gt_a - p_gt_b + both, abs=1e-14)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_against_monte_carlo(self, n):
        rng = np.random.default_rng(n)
        theta = rng.uniform(0.2, 0.8, size=n)
        x = draw_spacings(make_generator(77, n), 10**6, n)
        emp = np.mean(np.all(x <= theta, axis=1))
        p = joint_cdf(theta)
        assert abs(p - emp) <= 4 * math.sqrt(p * (1 - p) / 10**6) + 1e-12


class TestTailProb:
    def test_value(self):
        assert tail_prob([0.2, 0.3]) == pytest.approx(0.5)

    def test_exhausted(self):
        assert tail_prob([0.6, 0.5]) == 0.0
        assert tail_prob([1.0]) == 0.0

    def test_all_zero(self):
        assert tail_prob([0.0, 0.0, 0.0]) == 1.0

    def test_size(self):
        # (max(u - sum, 0) / u) ** (n - 1)
        assert tail_prob([0.5, 0.5, 1.0], 3, 4.0) == pytest.approx((2.0 / 4.0) ** 2)

    def test_negative(self):
        with pytest.raises(SimplexError):
            tail_prob([-0.1, 0.2])

    def test_against_monte_carlo(self):
        theta = np.array([0.1, 0.2, 0.05])
        x = draw_spacings(make_generator(5), 10**6, 3)
        emp = np.mean(np.all(x > theta, axis=1))
        p = tail_prob(theta)
        assert abs(p - emp) <= 4 * math.sqrt(p * (1 - p) / 10**6)


class TestVolume:
    def test_segment(self):
        # the segment from (1, 0) to (0, 1)
        assert simplex_volume(2, 1.0) == pytest.approx(math.sqrt(2))

    def test_point(self):
        assert simplex_volume(1, 5.0) == 1.0

    def test_triangle(self):
        assert simplex_volume(3, 2.0) == pytest.approx(2 * math.sqrt(3))

    def test_equilateral_triangle_area(self):
        # Delta^3 is an equilateral triangle with side sqrt(2)
        assert simplex_volume(3) == pytest.approx(math.sqrt(3) / 4 * 2)

    def test_overflow_falls_back_to_logs(self):
        # 10**199 / 199! overflows the direct route
        expected = math.exp(0.5 * math.log(200) + 199 * math.log(10.0) - math.lgamma(200))
        assert simplex_volume(200, 10.0) == pytest.approx(expected, rel=1e-12)
