"""
Shared pytest fixtures and configuration for constwidth tests.
"""

import copy
import json
import math
import os
import sys
import tempfile

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import config
from curves import (
    TrigTerm, make_circle, make_constant_diameter, make_ellipse, make_reuleaux, make_rotor,
    make_rounded_reuleaux,
)


# Example profiles, D = 1
CURVE1_TERMS = (TrigTerm(3, a=1.0 / 3.0), TrigTerm(3, b=1.0 / 5.0))
CURVE2_TERMS = (TrigTerm(5, a=1.0 / 2.01),)
CURVE3_TERMS = (TrigTerm(3, a=1.0 / 10.0), TrigTerm(7, b=1.0 / 2.501))

SQUARE_SIDE = 1.0 / math.sqrt(2.0)


@pytest.fixture
def temp_dir():
    """Create a temporary directory for test files."""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield tmpdir


@pytest.fixture
def default_settings():
    """A private copy of the default settings."""
    return copy.deepcopy(config.DEFAULT_CONFIG)


@pytest.fixture
def settings_file(temp_dir, default_settings):
    """Create a temporary settings JSON file."""
    filepath = os.path.join(temp_dir, 'constwidth.json')
    with open(filepath, 'w') as f:
        json.dump(default_settings, f, indent=2)
    return filepath


@pytest.fixture
def write_config(temp_dir):
    """Factory writing a curve configuration dict to a JSON file."""
    def write(data, name='curve.json'):
        filepath = os.path.join(temp_dir, name)
        with open(filepath, 'w') as f:
            json.dump(data, f)
        return filepath
    return write


@pytest.fixture
def curve1():
    return make_constant_diameter(1.0, CURVE1_TERMS)


@pytest.fixture
def curve2():
    return make_constant_diameter(1.0, CURVE2_TERMS)


@pytest.fixture
def curve3():
    return make_constant_diameter(1.0, CURVE3_TERMS)


@pytest.fixture(params=['curve1', 'curve2', 'curve3'])
def fourier_curve(request):
    """Each example constant-diameter curve in turn."""
    return request.getfixturevalue(request.param)


@pytest.fixture
def circle():
    return make_circle(1.0)


@pytest.fixture
def ellipse():
    return make_ellipse(1.0, 0.6)


@pytest.fixture
def reuleaux():
    return make_reuleaux(3, 1.0)


@pytest.fixture
def rounded_reuleaux():
    return make_rounded_reuleaux(3, 1.0, 0.1)


def rotor_with_amplitude(n, D=1.0, fraction=0.02):
    """Rotor with G of frequency n and amplitude ``fraction`` * R in both coordinates."""
    R = D / (2.0 * math.sin(math.pi / n))
    c = fraction * R
    return make_rotor(n, D, gx=[(n, 0.0, c)], gy=[(n, c, 0.0)])


@pytest.fixture
def rotor5():
    return rotor_with_amplitude(5)


@pytest.fixture(autouse=True)
def serial_runtime(monkeypatch):
    """Tests start from default runtime settings and no thread override."""
    monkeypatch.delenv(config.THREADS_ENV, raising=False)
    config.use_runtime_settings(config.DEFAULT_CONFIG)
    yield
    config.use_runtime_settings(config.DEFAULT_CONFIG)
