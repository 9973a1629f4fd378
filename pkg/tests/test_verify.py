#!/usr/bin/env python3
"""
Unit tests for verify.py (C(D), C_n(D), midpoint recovery, corners)
"""

import math
import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import verify
from tests.conftest import SQUARE_SIDE, rotor_with_amplitude
from curves import TransformedCurve
from verify import (
    NGonWitness, NonMonotoneAngle, NormalMiss, VerificationOptions, check_cn,
    check_constant_diameter, check_square_center_property, check_summary_conditions,
    count_plateau, detect_corners, find_inscribed_ngons, find_points_at_distance, merge_maxima,
    recover_midpoint_curve, regular_polygon,
)


def brute_force_verdicts(curve, D, bases, offsets, tol):
    """Double loop over a bases x offsets grid: max chord within tol of D."""
    verdicts = []
    for i in range(bases):
        base = curve.period * i / bases
        x = curve.point(base)
        best = 0.0
        for j in range(1, offsets):
            y = curve.point(base + curve.period * j / offsets)
            best = max(best, math.hypot(x[0] - y[0], x[1] - y[1]))
        verdicts.append(abs(best - D) <= tol)
    return verdicts


@pytest.mark.unit
class TestVerificationOptions:
    """Test option validation and tolerance scaling."""

    def test_defaults_scale_with_diameter(self):
        opts = VerificationOptions().resolve(2.0)
        assert opts.value_tol == pytest.approx(2e-9)
        assert opts.uniq_tol == pytest.approx(2e-6)
        assert opts.membership_tol == pytest.approx(2e-7)

    def test_explicit_tolerances_kept(self):
        opts = VerificationOptions(value_tol=1e-3).resolve(2.0)
        assert opts.value_tol == 1e-3

    def test_from_settings(self, default_settings):
        opts = VerificationOptions.from_settings(default_settings['verification'], 0.5,
                                                 theta_samples=64)
        assert opts.theta_samples == 64
        assert opts.value_tol == pytest.approx(0.5e-9)

    @pytest.mark.parametrize('kwargs', [
        {'theta_samples': 0}, {'phi_samples': 2.5}, {'value_tol': -1.0},
        {'epsilon_margin': 1.0},
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            VerificationOptions(**kwargs)


@pytest.mark.unit
class TestMaximaHelpers:
    """Test maxima merging and plateau counting."""

    def test_merge_keeps_highest_of_cluster(self):
        phi = np.array([1.0, 1.001, 3.0])
        values = np.array([0.5, 0.7, 0.2])
        merged_phi, merged_values = merge_maxima(phi, values, 0.01, 2 * math.pi)
        assert sorted(zip(merged_phi, merged_values)) == [(1.001, 0.7), (3.0, 0.2)]

    def test_merge_wraps_around(self):
        phi = np.array([0.001, 2 * math.pi - 0.001])
        values = np.array([0.4, 0.9])
        _, merged_values = merge_maxima(phi, values, 0.01, 2 * math.pi)
        assert list(merged_values) == [0.9]

    def test_plateau_count(self):
        phi = np.array([1.0, 1.0005, 1.5, 2.0, 4.0])
        values = np.array([1.0, 1.0, 1.0, 1.0, 0.5])
        assert count_plateau(phi, values, 1.0, 1e-9, 1e-3, 2 * math.pi) == 3


@pytest.mark.slow
class TestConstantDiameter:
    """Test check_constant_diameter."""

    def test_fourier_curves_pass(self, fourier_curve):
        report = check_constant_diameter(fourier_curve, 1.0)
        assert report.passed
        assert len(report.records) == 512
        assert report.max_deviation < 1e-9
        assert all(r.gap is None or r.gap > 1e-6 for r in report.records)

    def test_diametral_exactness(self, fourier_curve):
        theta = 2 * math.pi * np.arange(4096) / 4096
        diff = fourier_curve.point(theta) - fourier_curve.point(theta + math.pi)
        assert np.max(np.abs(np.hypot(diff[:, 0], diff[:, 1]) - 1.0)) < 1e-12

    def test_circle_passes(self, circle):
        report = check_constant_diameter(circle, 1.0, VerificationOptions(theta_samples=64))
        assert report.passed
        assert report.worst_base is not None

    def test_ellipse_fails(self, ellipse):
        report = check_constant_diameter(ellipse, 2.0, VerificationOptions(theta_samples=64))
        assert not report.passed
        assert report.failing_bases
        assert report.worst_base.passed is False

    def test_wrong_diameter_fails(self, curve1):
        report = check_constant_diameter(curve1, 1.01, VerificationOptions(theta_samples=32))
        assert not report.passed

    def test_reuleaux_plateau_at_three_bases(self, reuleaux):
        opts = VerificationOptions(theta_samples=96)
        report = check_constant_diameter(reuleaux, 1.0, opts)
        assert not report.passed
        assert report.plateau_bases == pytest.approx([0.0, 1 / 3, 2 / 3])
        assert report.failing_bases == pytest.approx([0.0, 1 / 3, 2 / 3])

    def test_reuleaux_without_uniqueness(self, reuleaux):
        opts = VerificationOptions(theta_samples=96)
        assert check_constant_diameter(reuleaux, 1.0, opts, require_unique=False).passed

    def test_rounded_reuleaux_passes(self, rounded_reuleaux):
        opts = VerificationOptions(theta_samples=96)
        assert check_constant_diameter(rounded_reuleaux, 1.0, opts).passed

    def test_rigid_motion_invariance(self, curve2):
        opts = VerificationOptions(theta_samples=64)
        moved = TransformedCurve(curve2, angle=0.9, shift=(-4.0, 7.0))
        assert check_constant_diameter(moved, 1.0, opts).passed

    def test_report_independent_of_thread_count(self, curve1, monkeypatch):
        opts = VerificationOptions(theta_samples=96)
        monkeypatch.setenv('CONSTWIDTH_THREADS', '1')
        serial = check_constant_diameter(curve1, 1.0, opts).to_dict()
        monkeypatch.setenv('CONSTWIDTH_THREADS', '4')
        threaded = check_constant_diameter(curve1, 1.0, opts).to_dict()
        assert serial == threaded

    @pytest.mark.parametrize('name, expected', [
        ('circle', True), ('curve1', True), ('ellipse', False), ('reuleaux', True),
    ])
    def test_matches_brute_force_oracle(self, request, name, expected):
        curve = request.getfixturevalue(name)
        D = 2.0 if name == 'ellipse' else 1.0
        tol = 1e-2
        opts = VerificationOptions(theta_samples=64, phi_samples=256, value_tol=tol)
        report = check_constant_diameter(curve, D, opts, require_unique=False)
        oracle = brute_force_verdicts(curve, D, 64, 256, tol)
        assert report.passed == all(oracle) == expected
        if expected:
            assert [r.passed for r in report.records] == oracle


@pytest.mark.unit
class TestPointsAtDistance:
    """Test find_points_at_distance."""

    def test_circle_has_two_transversal_solutions(self, circle):
        found = find_points_at_distance(circle, 0.0, SQUARE_SIDE)
        params = sorted(p for p, _ in found)
        assert params == pytest.approx([math.pi / 2, 3 * math.pi / 2], abs=1e-9)
        assert {kind for _, kind in found} == {'transversal'}

    def test_diameter_is_tangential(self, curve1):
        found = find_points_at_distance(curve1, 0.3, 1.0)
        assert len(found) == 1
        param, kind = found[0]
        assert kind == 'tangential'
        assert param == pytest.approx(0.3 + math.pi, abs=1e-6)

    def test_too_far_has_no_solution(self, circle):
        assert find_points_at_distance(circle, 0.0, 1.5) == []


@pytest.mark.unit
class TestRegularPolygon:
    """Test polygon construction from an edge."""

    @pytest.mark.parametrize('n', [3, 4, 6])
    def test_sides_and_orientation(self, n):
        vertices, center = regular_polygon((0.0, 0.0), (2.0, 0.0), 1.0, n, 1)
        sides = np.linalg.norm(vertices - np.roll(vertices, -1, axis=0), axis=1)
        assert np.allclose(sides, 1.0)
        assert np.allclose(vertices[1], [1.0, 0.0])
        assert center[1] > 0
        radii = np.linalg.norm(vertices - center, axis=1)
        assert np.allclose(radii, 1.0 / (2 * math.sin(math.pi / n)))

    def test_clockwise(self):
        vertices, center = regular_polygon((0.0, 0.0), (0.0, 1.0), 1.0, 4, -1)
        assert np.allclose(vertices, [[0, 0], [0, 1], [1, 1], [1, 0]])
        assert np.allclose(center, [0.5, 0.5])

    def test_two_gon(self):
        vertices, center = regular_polygon((1.0, 1.0), (1.0, 5.0), 2.0, 2, 1)
        assert np.allclose(vertices, [[1, 1], [1, 3]])
        assert np.allclose(center, [1, 2])

    def test_same_polygon(self):
        a, ca = regular_polygon((0.0, 0.0), (1.0, 0.0), 1.0, 4, 1)
        b, cb = regular_polygon((0.0, 0.0), (0.0, 1.0), 1.0, 4, -1)
        wa = NGonWitness(0.0, a, 'ccw', np.zeros(4), ca)
        wb = NGonWitness(0.0, b, 'cw', np.zeros(4), cb)
        assert wa.same_polygon(wb, 1e-12)


@pytest.mark.slow
class TestInscribedPolygons:
    """Test find_inscribed_ngons and check_cn."""

    def test_circle_square(self, circle):
        witnesses = find_inscribed_ngons(circle, 0.0, 4, SQUARE_SIDE)
        assert len(witnesses) == 1
        assert witnesses[0].n == 4
        assert np.allclose(witnesses[0].center, [0.0, 0.0], atol=1e-9)
        assert witnesses[0].max_residual < 1e-9

    def test_circle_diameter_two_gon(self, circle):
        assert len(find_inscribed_ngons(circle, 0.5, 2, 1.0)) == 1

    def test_n_below_two_rejected(self, circle):
        with pytest.raises(ValueError):
            find_inscribed_ngons(circle, 0.0, 1, 1.0)

    def test_circle_passes_cn(self, circle):
        report = check_cn(circle, 4, SQUARE_SIDE, VerificationOptions(theta_samples=64))
        assert report.passed
        assert all(r.count == 1 and r.margin_ok for r in report.records)

    @pytest.mark.parametrize('n', [3, 4, 5, 6])
    def test_rotor_curves_pass(self, n):
        curve = rotor_with_amplitude(n)
        report = check_cn(curve, n, 1.0, VerificationOptions(theta_samples=256))
        assert report.passed
        assert all(r.count == 1 for r in report.records)

    def test_curve1_fails_square_property(self, curve1):
        report = check_cn(curve1, 4, SQUARE_SIDE)
        assert not report.passed
        assert any(r.count != 1 for r in report.records)

    def test_report_serialization(self, circle):
        report = check_cn(circle, 3, math.sqrt(3) / 2, VerificationOptions(theta_samples=8))
        data = report.to_dict()
        assert data['property'] == 'C_n(D)'
        assert data['n'] == 3
        assert len(data['records']) == 8
        assert len(data['records'][0]['witnesses'][0]['vertices']) == 3


@pytest.mark.slow
class TestMidpointRecovery:
    """Test recovery of G and r by the normal construction."""

    def test_round_trip(self, fourier_curve):
        recovery = recover_midpoint_curve(fourier_curve, 1.0, samples=2048)
        G = fourier_curve.midpoint(recovery.theta)
        assert np.max(np.linalg.norm(recovery.G - G, axis=1)) < 1e-8
        assert np.max(np.abs(recovery.r - fourier_curve.profile(recovery.theta))) < 1e-6
        assert recovery.orthogonality_defect < 1e-8

    def test_circle_profile_vanishes(self, circle):
        recovery = recover_midpoint_curve(circle, 1.0)
        assert np.max(np.abs(recovery.r)) < 1e-8
        assert np.max(np.linalg.norm(recovery.G, axis=1)) < 1e-8
        assert recovery.periodicity_defect(math.pi / 2) < 1e-8

    def test_g_has_half_period(self, curve1):
        recovery = recover_midpoint_curve(curve1, 1.0)
        assert recovery.periodicity_defect(math.pi) < 1e-8
        assert recovery.periodicity_defect(math.pi / 2) > 1e-3

    def test_shift_off_grid_rejected(self, circle):
        recovery = recover_midpoint_curve(circle, 1.0, samples=64)
        with pytest.raises(ValueError):
            recovery.periodicity_defect(0.1)

    def test_ellipse_normal_miss(self, ellipse):
        with pytest.raises(NormalMiss) as info:
            recover_midpoint_curve(ellipse, 2.0)
        assert info.value.residual > 1e-3

    def test_non_monotone_angle(self, circle, mocker):
        mocker.patch('verify.chord_angle', return_value=np.zeros(64))
        with pytest.raises(NonMonotoneAngle):
            recover_midpoint_curve(circle, 1.0, samples=64)


@pytest.mark.slow
class TestSquareCenter:
    """Test the square-center cross-check."""

    def test_circle_consistent(self, circle):
        report = check_square_center_property(circle, 1.0, VerificationOptions(theta_samples=32))
        assert report.consistent
        assert report.escape_bases == []
        assert all(r['center_error'] < 1e-7 for r in report.records)
        assert all(r['midpoint_error'] < 1e-6 for r in report.records)

    def test_center_checked_against_recovered_midpoint(self, circle, mocker):
        real = verify.recover_midpoint_curve

        def displaced(*args, **kwargs):
            recovery = real(*args, **kwargs)
            recovery.G = recovery.G + np.array([1e-3, 0.0])
            return recovery

        mocker.patch('verify.recover_midpoint_curve', side_effect=displaced)
        report = check_square_center_property(circle, 1.0, VerificationOptions(theta_samples=16))
        assert not report.consistent
        assert all(r['midpoint_error'] == pytest.approx(1e-3, abs=1e-6) for r in report.records)

    def test_curve1_has_escapes(self, curve1):
        report = check_square_center_property(curve1, 1.0)
        assert report.escape_bases


@pytest.mark.unit
class TestCorners:
    """Test corner detection."""

    def test_reuleaux_has_three_corners(self, reuleaux):
        corners = detect_corners(reuleaux)
        assert len(corners) == 3
        for _, angle in corners:
            assert abs(angle - math.pi / 3) < 1e-9

    def test_rounded_reuleaux_is_smooth(self, rounded_reuleaux):
        assert detect_corners(rounded_reuleaux) == []

    def test_fourier_curves_are_smooth(self, fourier_curve):
        assert detect_corners(fourier_curve) == []

    def test_ellipse_is_smooth(self, ellipse):
        assert detect_corners(ellipse) == []

    def test_transformed_reuleaux(self, reuleaux):
        assert len(detect_corners(TransformedCurve(reuleaux, angle=0.3))) == 3


@pytest.mark.unit
class TestSummaryConditions:
    """Test the three facts of the constant-diameter construction."""

    def test_fourier_curves(self, fourier_curve):
        summary = check_summary_conditions(fourier_curve, 1.0)
        assert summary.holds()
        assert summary.curvature_margin > 0

    def test_ellipse(self, ellipse):
        summary = check_summary_conditions(ellipse, 2.0)
        assert not summary.holds()
        assert summary.chord_defect > 0.5
