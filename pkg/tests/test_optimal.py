import itertools
import math

import numpy as np
import pytest

from polyapprox import (
    CostKind,
    DegenerateSegment,
    DigitalCurve,
    ErrorProfile,
    InvalidCounts,
    OutOfRange,
    SegmentCosts,
    baseline_from_profile,
    interpolate_m_optimal,
    optimal_baseline,
    optimal_polygon,
    optimal_profile,
    polygon_errors,
    provisional_start_vertex,
    select_start_vertex,
)
from polyapprox.approx_error import segment_errors_naive
from polyapprox.schemes import split_to_m
from conftest import lattice_ring


def brute_force_values(curve, start, m_lo, m_hi, kind):
    """Exhaustive minimum over all vertex subsets containing start.

    Shares nothing with the DP: per-side costs come from the naive loop.
    """
    n = curve.n
    cache = {}

    def side(u, v):
        if (u, v) not in cache:
            se = segment_errors_naive(curve, u, v)
            cache[(u, v)] = se.sum_sq if kind is CostKind.SUM_SQUARED else se.max_e
        return cache[(u, v)]

    others = [i for i in range(n) if i != start]
    out = {}
    for m in range(m_lo, m_hi + 1):
        best = math.inf
        for combo in itertools.combinations(others, m - 1):
            verts = sorted((start, *combo))
            if kind is CostKind.SUM_SQUARED:
                total = 0.0
                for i in range(m):
                    total += side(verts[i], verts[(i + 1) % m])
            else:
                total = 0.0
                for i in range(m):
                    total = max(total, side(verts[i], verts[(i + 1) % m]))
            if total < best:
                best = total
        out[m] = best
    return out


def synthetic_profile(square8, values_by_m):
    m_max = max(values_by_m)
    vals = np.full(m_max + 1, np.nan)
    for m, v in values_by_m.items():
        vals[m] = v
    return ErrorProfile(square8, 0, CostKind.SUM_SQUARED, m_max, vals)


def test_profile_square_corner_start_hits_zero(square8):
    prof = optimal_profile(square8, 0, 8, CostKind.SUM_SQUARED)
    assert prof.value(4) == 0.0
    assert prof.value(8) == 0.0          # m = n reproduces the curve
    assert prof.value(3) > 0.0
    with pytest.raises(InvalidCounts):
        prof.value(2)
    with pytest.raises(InvalidCounts):
        prof.value(9)


def test_profile_items_spans_3_to_m_max(square8):
    prof = optimal_profile(square8, 0, 6, CostKind.MAX_ERROR)
    ms = [m for m, _ in prof.items()]
    assert ms == [3, 4, 5, 6]
    assert np.isnan(prof.values[2])


def test_profile_matches_brute_force_both_kinds():
    for seed in range(12):
        c = lattice_ring(seed + 300)
        start = provisional_start_vertex(c)
        for kind in (CostKind.SUM_SQUARED, CostKind.MAX_ERROR):
            prof = optimal_profile(c, start, 6, kind)
            ref = brute_force_values(c, start, 3, 6, kind)
            for m in range(3, 7):
                assert prof.value(m) == pytest.approx(ref[m], abs=1e-9), (
                    seed, kind, m)


def test_optimal_polygon_achieves_profile_value():
    for seed in range(8):
        c = lattice_ring(seed + 500)
        start = provisional_start_vertex(c)
        for kind in (CostKind.SUM_SQUARED, CostKind.MAX_ERROR):
            for m in (3, 4, 5):
                poly = optimal_polygon(c, start, m, kind)
                assert poly.m == m
                assert start in poly.indices
                e2, emax = polygon_errors(c, poly)
                got = e2 if kind is CostKind.SUM_SQUARED else emax
                prof = optimal_profile(c, start, m, kind)
                assert got == pytest.approx(prof.value(m), abs=1e-9)


def test_optimal_polygon_deterministic():
    c = lattice_ring(42)
    start = provisional_start_vertex(c)
    a = optimal_polygon(c, start, 5, CostKind.SUM_SQUARED)
    b = optimal_polygon(c, start, 5, CostKind.SUM_SQUARED)
    assert a == b


def test_segment_costs_shared_across_kinds_and_starts():
    c = lattice_ring(9)
    costs = SegmentCosts(c)
    p1 = costs.polygon(0, 4, CostKind.SUM_SQUARED)
    p2 = optimal_polygon(c, 0, 4, CostKind.SUM_SQUARED)
    assert p1 == p2
    assert costs.table(CostKind.SUM_SQUARED) is costs.table(CostKind.SUM_SQUARED)


def test_segment_costs_rejects_coincident_points():
    c = DigitalCurve(np.array([[0, 0], [1, 0], [0, 0], [-1, 0]]) + 5)
    with pytest.raises(DegenerateSegment, match="points 0 and 2"):
        SegmentCosts(c)


def test_solve_range_checks():
    c = lattice_ring(1)
    costs = SegmentCosts(c)
    with pytest.raises(InvalidCounts):
        costs.profile(-1, 4, CostKind.SUM_SQUARED)
    with pytest.raises(InvalidCounts):
        costs.profile(c.n, 4, CostKind.SUM_SQUARED)
    with pytest.raises(InvalidCounts):
        costs.profile(0, 2, CostKind.SUM_SQUARED)
    with pytest.raises(InvalidCounts):
        costs.profile(0, c.n + 1, CostKind.SUM_SQUARED)


def test_provisional_start_square_tie_breaks_low(square8):
    # all four corners are equally far from the centroid
    assert provisional_start_vertex(square8) == 0


def test_provisional_start_farthest():
    c = DigitalCurve(np.array([[10, 0], [0, 2], [-3, 0], [0, -2]]))
    assert provisional_start_vertex(c) == 0


def test_select_start_square_second_corner(square8):
    start = select_start_vertex(square8, 4, CostKind.SUM_SQUARED)
    assert start == 2


def test_select_start_triangle_next_vertex():
    c = DigitalCurve(np.array([[9, 0], [-1, 3], [-1, -3]]))
    # only one 3-gon exists; start becomes the vertex after the farthest
    assert provisional_start_vertex(c) == 0
    assert select_start_vertex(c, 3, CostKind.SUM_SQUARED) == 1


def test_select_start_full_polygon_next_vertex():
    c = DigitalCurve(np.array([[8, 0], [4, 7], [-4, 7], [-8, 0], [-4, -7], [4, -7]]))
    p0 = provisional_start_vertex(c)
    assert select_start_vertex(c, 6, CostKind.SUM_SQUARED) == (p0 + 1) % 6


def test_select_start_range_check(square8):
    with pytest.raises(InvalidCounts):
        select_start_vertex(square8, 2, CostKind.SUM_SQUARED)


def test_interpolate_linear_midpoint(square8):
    prof = synthetic_profile(square8, {3: 90, 4: 85, 5: 80, 6: 75, 7: 70,
                                       8: 65, 9: 60, 10: 50, 11: 30})
    assert interpolate_m_optimal(prof, 40.0) == pytest.approx(10.5, abs=1e-12)


def test_interpolate_exact_hit(square8):
    prof = synthetic_profile(square8, {3: 90, 4: 85, 5: 80, 6: 75, 7: 70,
                                       8: 65, 9: 60, 10: 50, 11: 30})
    assert interpolate_m_optimal(prof, 70.0) == 7.0


def test_interpolate_plateau_resolves_to_fewer_vertices(square8):
    prof = synthetic_profile(square8, {3: 90, 4: 60, 5: 60, 6: 60, 7: 20})
    assert interpolate_m_optimal(prof, 60.0) == 4.0
    # just under the plateau interpolates inside the next strict descent
    assert 6.0 < interpolate_m_optimal(prof, 59.0) < 7.0


def test_interpolate_out_of_range_sides(square8):
    prof = synthetic_profile(square8, {3: 90, 4: 50, 5: 30})
    with pytest.raises(OutOfRange) as lo:
        interpolate_m_optimal(prof, 90.5)
    assert lo.value.side == "low"
    with pytest.raises(OutOfRange) as hi:
        interpolate_m_optimal(prof, 29.0)
    assert hi.value.side == "high"


def test_interpolate_random_bracketing_oracle(square8):
    # independent scan for the bracketing pair, then the same line formula
    rng = np.random.default_rng(5)
    vals = {3: 100.0}
    v = 100.0
    for m in range(4, 12):
        v -= float(rng.uniform(1.0, 10.0))
        vals[m] = v
    prof = synthetic_profile(square8, vals)
    for _ in range(50):
        q = float(rng.uniform(vals[11], vals[3]))
        got = interpolate_m_optimal(prof, q)
        bracket = [m for m in range(3, 12) if vals[m] <= q]
        lo = min(bracket)
        if vals[lo] == q:
            want = float(lo)
        else:
            want = (lo - 1) + (vals[lo - 1] - q) / (vals[lo - 1] - vals[lo])
        assert got == pytest.approx(want, abs=1e-12)


def test_baseline_from_profile_reads_and_clamps(square8):
    prof = synthetic_profile(square8, {3: 90, 4: 50, 5: 30})
    b = baseline_from_profile(prof, 4, 40.0)
    assert b.error_optimal == 50.0
    assert 4.0 < b.m_optimal < 5.0
    assert not b.clamped

    worse = baseline_from_profile(prof, 4, 95.0)
    assert worse.m_optimal == 3.0 and worse.clamped

    better = baseline_from_profile(prof, 4, 10.0)
    assert better.m_optimal == 5.0 and better.clamped


def test_baseline_square_corners_self_evaluation(square8):
    from polyapprox import PolygonApprox

    poly = PolygonApprox(square8, [0, 2, 4, 6])
    b = optimal_baseline(square8, poly, CostKind.SUM_SQUARED)
    assert b.error_optimal == 0.0
    assert b.m_optimal == 4.0
    assert not b.clamped


def test_baseline_cross_checked_against_enumeration():
    # split-scheme polygon scored against a brute-force profile
    for seed in (21, 22, 23):
        c = lattice_ring(seed)
        poly = split_to_m(c, 4)
        b = optimal_baseline(c, poly, CostKind.SUM_SQUARED)
        start = b.start_index
        m_max = min(c.n, 12)
        ref = brute_force_values(c, start, 3, m_max, CostKind.SUM_SQUARED)
        assert b.error_optimal == pytest.approx(ref[4], abs=1e-9)
        e2, _ = polygon_errors(c, poly)
        if not b.clamped:
            ms = sorted(ref)
            lo = min(m for m in ms if ref[m] <= e2 + 1e-15)
            assert b.m_optimal >= lo - 1 - 1e-12
            assert b.m_optimal <= lo + 1e-12
