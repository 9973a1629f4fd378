#!/usr/bin/env python3
"""
Unit tests for figure_renderer.py (SVG output)
"""

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import config
from curve_config import parse_curve_data
from figure_renderer import (
    CHORD_COLOR, MIDPOINT_COLOR, NGON_COLOR, RenderOptions, SvgFigure, render_curve, write_svg,
)


@pytest.fixture
def circle_config():
    return parse_curve_data({"kind": "circle", "D": 1.0})


@pytest.fixture
def reuleaux_config():
    return parse_curve_data({"kind": "reuleaux", "D": 1.0, "n": 3})


@pytest.fixture
def trig_config():
    return parse_curve_data({"kind": "trig", "D": 1.0, "terms": [{"m": 3, "a": 0.2}]})


@pytest.mark.unit
class TestRenderOptions:
    """Test figure option validation."""

    def test_defaults(self):
        options = RenderOptions()
        assert options.samples == 720
        assert options.ngon is None

    @pytest.mark.parametrize('kwargs', [
        {'samples': 32}, {'samples': 100.5}, {'chords': -1}, {'ngon': 1}, {'stroke_width': 0},
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            RenderOptions(**kwargs)

    def test_from_settings_ignores_missing_overrides(self):
        settings = config.get_render_settings({'render': {'chords': 4}})
        options = RenderOptions.from_settings(settings, samples=128, ngon=None)
        assert options.samples == 128
        assert options.chords == 4
        assert options.ngon is None


@pytest.mark.unit
class TestSvgFigure:
    """Test the SVG accumulator."""

    def test_y_axis_flipped(self):
        figure = SvgFigure()
        figure.polyline([(0.0, 1.0), (2.0, 3.0)])
        svg = figure.to_svg()
        assert '0.000000,-1.000000 2.000000,-3.000000' in svg
        assert figure.min_y == 1.0 and figure.max_y == 3.0

    def test_dot_extends_bounds(self):
        figure = SvgFigure()
        figure.dot(0.0, 0.0, 0.5)
        assert (figure.min_x, figure.max_x) == (-0.5, 0.5)


@pytest.mark.unit
class TestRenderCurve:
    """Test curve figures and overlays."""

    def test_circle_only_curve(self, circle_config):
        figure = render_curve(circle_config, RenderOptions(samples=64))
        assert len(figure.commands) == 1
        assert figure.min_x == pytest.approx(-0.5)
        assert figure.max_x == pytest.approx(0.5)

    def test_trig_draws_midpoint_curve(self, trig_config):
        svg = render_curve(trig_config, RenderOptions(samples=128)).to_svg()
        assert svg.count('<polygon') == 2
        assert MIDPOINT_COLOR in svg

    def test_reuleaux_centers(self, reuleaux_config):
        figure = render_curve(reuleaux_config, RenderOptions(samples=96, show_centers=True))
        assert figure.to_svg().count('<circle') == 3

    def test_centers_ignored_for_smooth_curves(self, circle_config):
        svg = render_curve(circle_config, RenderOptions(samples=64, show_centers=True)).to_svg()
        assert '<circle' not in svg

    def test_chords(self, circle_config):
        svg = render_curve(circle_config, RenderOptions(samples=64, chords=6)).to_svg()
        assert svg.count('<polyline') == 6
        assert CHORD_COLOR in svg

    @pytest.mark.slow
    def test_inscribed_square(self, circle_config):
        svg = render_curve(circle_config, RenderOptions(samples=64, ngon=4)).to_svg()
        assert svg.count('<polygon') == 2
        assert NGON_COLOR in svg

    def test_write_svg_is_deterministic(self, reuleaux_config, temp_dir):
        first = os.path.join(temp_dir, 'a.svg')
        second = os.path.join(temp_dir, 'b.svg')
        options = RenderOptions(samples=96, chords=3, show_centers=True)
        write_svg(reuleaux_config, first, options)
        write_svg(reuleaux_config, second, options)
        with open(first, 'rb') as f1, open(second, 'rb') as f2:
            content = f1.read()
            assert content == f2.read()
        assert content.startswith(b'<?xml')
        assert content.rstrip().endswith(b'</svg>')
