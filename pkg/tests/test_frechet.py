import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circfrechet.circle import PI, TWO_PI, SortedSample, frechet_value, signed_distance, wrap
from circfrechet.distributions import CASES, sample, sim_family
from circfrechet.frechet import enumerate_candidates, intrinsic_sample_mean, oracle_mean
from helpers import mixed_sample

angle_lists = st.lists(st.floats(-PI, PI, exclude_max=True, allow_nan=False),
                       min_size=1, max_size=40)


def test_single_point():
    cands = enumerate_candidates([0.7])
    assert len(cands) == 1
    assert cands[0].location == pytest.approx(0.7)
    assert cands[0].is_local_min and cands[0].value == 0.0


def test_three_point_candidates():
    cands = enumerate_candidates([-PI / 2, 0.0, PI / 2])
    locs = sorted(c.location for c in cands)
    assert locs == pytest.approx([-2 * PI / 3, 0.0, 2 * PI / 3])
    by_loc = {round(c.location, 9): c for c in cands}
    assert by_loc[0.0].is_local_min
    assert by_loc[0.0].value == pytest.approx(PI ** 2 / 6, rel=1e-12)
    c = by_loc[round(2 * PI / 3, 9)]
    assert c.is_local_min
    assert c.value == pytest.approx(7 * PI ** 2 / 18, rel=1e-12)


def test_three_point_values_against_grid():
    # frozen from a 10**6 point grid of the direct functional
    x = SortedSample.from_angles([-PI / 2, 0.0, PI / 2])
    grid = -PI + TWO_PI * np.arange(10 ** 6) / 10 ** 6
    v = np.empty_like(grid)
    for s in range(0, grid.size, 100_000):
        v[s:s + 100_000] = frechet_value(x, grid[s:s + 100_000])
    assert grid[np.argmin(v)] == pytest.approx(0.0, abs=1e-5)
    assert v.min() == pytest.approx(1.6449340668482264, abs=1e-10)


def test_repeated_point():
    res = intrinsic_sample_mean([1.2, 1.2, 1.2])
    assert res.is_unique
    assert res.mean == pytest.approx(1.2)
    assert res.global_value == pytest.approx(0.0, abs=1e-15)


def test_seam_pair():
    res = intrinsic_sample_mean([-PI + 0.1, PI - 0.1])
    assert res.global_means == [-PI]
    assert res.global_value == pytest.approx(0.01, abs=1e-12)


@pytest.mark.parametrize("n", range(1, 9))
def test_equally_spaced_points_tie(n):
    x = -PI + TWO_PI * np.arange(n) / n
    res = intrinsic_sample_mean(SortedSample(x))
    assert len(res.global_means) == n


def test_empty_sample_rejected():
    with pytest.raises(ValueError):
        intrinsic_sample_mean([])
    with pytest.raises(ValueError):
        enumerate_candidates(np.array([]))


def test_negative_tie_tolerance_rejected():
    with pytest.raises(ValueError):
        intrinsic_sample_mean([0.0], tie_tolerance=-1.0)


def test_oracle_requires_dense_grid():
    with pytest.raises(ValueError):
        oracle_mean(SortedSample.from_angles(np.linspace(-3, 3, 10)), grid_points=39)


@given(angle_lists)
def test_polygon_property(xs):
    s = SortedSample.from_angles(xs)
    locs = np.sort([c.location for c in enumerate_candidates(s)])
    n = s.n
    step = np.diff(np.concatenate([locs, [locs[0] + TWO_PI]]))
    assert np.allclose(step, TWO_PI / n, atol=1e-12)


@given(angle_lists)
def test_local_min_values_are_exact(xs):
    s = SortedSample.from_angles(xs)
    for c in enumerate_candidates(s):
        if c.is_local_min:
            direct = frechet_value(s, c.location)
            assert c.value == pytest.approx(direct, rel=1e-10, abs=1e-12)


@given(angle_lists)
def test_first_order_condition(xs):
    s = SortedSample.from_angles(xs)
    for c in intrinsic_sample_mean(s).local_minima:
        d = signed_distance(c.location, s.points)
        if np.any(np.abs(np.abs(d) - PI) <= 4 * np.finfo(float).eps * PI):
            # the minimizer sits on an arc narrower than the float spacing
            # at its location, so only the value can be checked
            assert c.value == pytest.approx(frechet_value(s, c.location), rel=1e-12)
            continue
        assert abs(np.mean(d)) < 1e-10


@given(angle_lists)
def test_result_invariants(xs):
    res = intrinsic_sample_mean(xs)
    assert res.global_means
    assert res.global_value == min(c.value for c in res.local_minima)
    locs = {c.location: c.value for c in res.local_minima}
    for m in res.global_means:
        assert locs[m] <= res.global_value + res.tie_tolerance


@settings(max_examples=50, deadline=None)
@given(angle_lists, st.floats(-10, 10, allow_nan=False))
def test_rotation_equivariance(xs, r):
    a = intrinsic_sample_mean(xs)
    b = intrinsic_sample_mean(wrap(np.array(xs) + r))
    assert len(a.global_means) == len(b.global_means)
    rotated = sorted(wrap(np.array(a.global_means) + r))
    for u, v in zip(rotated, b.global_means):
        assert abs(wrap(u - v)) < 1e-9
    assert a.global_value == pytest.approx(b.global_value, abs=1e-10)


def _same_means(res, ref, grid):
    if len(res.global_means) != len(ref.global_means):
        return False
    for m in res.global_means:
        if min(abs(wrap(m - r)) for r in ref.global_means) > TWO_PI / grid:
            return False
    return abs(res.global_value - ref.global_value) <= 1e-10


def test_oracle_agreement_on_mixed_samples():
    rng = np.random.default_rng(7)
    for _ in range(100):
        s = SortedSample(mixed_sample(rng, int(rng.integers(1, 51))))
        assert _same_means(intrinsic_sample_mean(s), oracle_mean(s), 100_000)


@pytest.mark.parametrize("case", sorted(CASES))
def test_oracle_agreement_on_simulation_cases(case):
    dist = sim_family(CASES[case])
    rng = np.random.default_rng(11)
    for _ in range(10):
        s = SortedSample(np.sort(sample(dist, rng, 40)))
        assert _same_means(intrinsic_sample_mean(s), oracle_mean(s), 100_000)


def test_local_minimum_values_distinct_for_continuous_data():
    rng = np.random.default_rng(3)
    for _ in range(1000):
        n = int(rng.integers(2, 60))
        x = np.sort(wrap(rng.normal(rng.uniform(-PI, PI), 1.5, n)))
        vals = sorted(c.value for c in intrinsic_sample_mean(SortedSample(x)).local_minima)
        assert all(b - a > 1e-9 for a, b in zip(vals, vals[1:]))


def test_linear_time_scaling():
    # 10x the data should cost far less than 100x the time
    import time
    rng = np.random.default_rng(0)
    samples = [SortedSample(np.sort(rng.uniform(-PI, PI, n))) for n in (10 ** 5, 10 ** 6)]
    times = []
    for s in samples:
        t0 = time.perf_counter()
        intrinsic_sample_mean(s)
        times.append(time.perf_counter() - t0)
    assert times[1] < 40 * max(times[0], 1e-3)


def test_compensated_sums_keep_values_accurate():
    rng = np.random.default_rng(5)
    x = np.sort(wrap(rng.normal(0.3, 0.2, 10 ** 6)))
    res = intrinsic_sample_mean(SortedSample(x))
    exact = math.fsum(x) / x.size
    assert res.mean == pytest.approx(exact, abs=1e-14)
    direct = math.fsum((x - res.mean) ** 2) / x.size
    assert res.global_value == pytest.approx(direct, rel=1e-12)


def test_local_minimum_on_arc_below_float_spacing():
    # the antipodes of two nearly equal points bound a convex arc far
    # narrower than the float spacing at -pi; its minimum rounds onto -pi
    s = SortedSample.from_angles([3.8518012222802513e-50, -2.7126276647597698e-142])
    res = intrinsic_sample_mean(s)
    assert res.global_means == [pytest.approx(1.9259006111401257e-50, abs=1e-60)]
    far = [c for c in res.local_minima if c.location < 0]
    assert len(far) == 1 and far[0].location == -PI
    assert far[0].value == pytest.approx(PI ** 2, rel=1e-15)
