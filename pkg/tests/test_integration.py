#!/usr/bin/env python3
"""
End-to-end checks on the shipped example configurations
"""

import math
import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from curve_config import load_config
from geometry import perimeter, polar_directions, widths
from verify import VerificationOptions, check_cn, check_constant_diameter


EXAMPLES_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))),
                            'examples_configs')

CONSTANT_WIDTH = ['curve1', 'curve2', 'curve3', 'rounded_reuleaux', 'circle']


def load_example(name):
    return load_config(os.path.join(EXAMPLES_DIR, f'{name}.json'))


@pytest.mark.integration
@pytest.mark.slow
class TestShippedExamples:
    """Load, measure and certify every shipped configuration."""

    @pytest.mark.parametrize('name', CONSTANT_WIDTH)
    def test_constant_diameter(self, name):
        config = load_example(name)
        opts = VerificationOptions(theta_samples=64)
        assert check_constant_diameter(config.curve, config.target_D, opts).passed

    @pytest.mark.parametrize('name', CONSTANT_WIDTH + ['reuleaux'])
    def test_barbier(self, name):
        config = load_example(name)
        assert perimeter(config.curve) == pytest.approx(math.pi * config.target_D, abs=1e-9)

    @pytest.mark.parametrize('name', CONSTANT_WIDTH + ['reuleaux'])
    def test_width(self, name):
        config = load_example(name)
        values = widths(config.curve, polar_directions(90))
        assert np.max(np.abs(values - config.target_D)) < 1e-6

    def test_reuleaux_passes_without_uniqueness(self):
        config = load_example('reuleaux')
        opts = VerificationOptions(theta_samples=96)
        assert not check_constant_diameter(config.curve, 1.0, opts).passed
        assert check_constant_diameter(config.curve, 1.0, opts, require_unique=False).passed

    def test_ellipse_fails(self):
        config = load_example('ellipse')
        report = check_constant_diameter(config.curve, config.target_D,
                                         VerificationOptions(theta_samples=32))
        assert not report.passed
        assert report.max_deviation > 0.1

    def test_rotor_carries_pentagons(self):
        config = load_example('rotor5')
        report = check_cn(config.curve, 5, config.D, VerificationOptions(theta_samples=32))
        assert report.passed
        assert report.n == 5
