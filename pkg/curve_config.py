#!/usr/bin/env python3
"""
Curve Configuration for constwidth

Loads, validates and builds curve specifications from JSON files, and
serializes curves back to normalized JSON with derived quantities.

Supported kinds:
- trig: {"D", "terms": [{"m", "a", "b"}]}
- rotor: {"D", "n", "gx": [{"freq", "a", "b"}], "gy": [...]}
- reuleaux: {"D", "n"}
- rounded_reuleaux: {"D", "n", "b"}
- circle: {"D", "center"?}
- ellipse: {"semiAxes": [a, b], "D"?}
Every kind also accepts optional "description" and "derived" keys.
"""

import json
import logging
import math
import os
from dataclasses import dataclass

from curves import (
    AmplitudeViolation, BadOrder, BadRadius, CurveError, EvenOrder, FrequencyViolation,
    GuardViolation, HarmonicViolation, PiecewiseArcCurve, make_circle, make_constant_diameter,
    make_ellipse, make_reuleaux, make_rotor, make_rounded_reuleaux,
)


logger = logging.getLogger(__name__)

COMMON_KEYS = {'kind', 'description', 'derived'}
KIND_KEYS = {
    'trig': {'D', 'terms'},
    'rotor': {'D', 'n', 'gx', 'gy'},
    'reuleaux': {'D', 'n'},
    'rounded_reuleaux': {'D', 'n', 'b'},
    'circle': {'D', 'center'},
    'ellipse': {'D', 'semiAxes'},
}
REQUIRED_KEYS = {
    'trig': {'D', 'terms'},
    'rotor': {'D', 'n'},
    'reuleaux': {'D', 'n'},
    'rounded_reuleaux': {'D', 'n', 'b'},
    'circle': {'D'},
    'ellipse': {'semiAxes'},
}
TERM_KEYS = {'m', 'a', 'b'}
ROTOR_KEYS = {'freq', 'a', 'b'}


class ConfigError(Exception):
    """Base class for curve configuration errors; ``field`` is the offending path."""

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


class ParseError(ConfigError):
    """The file is missing or not valid JSON."""


class SchemaError(ConfigError):
    """The JSON does not match the curve configuration schema."""


class ConstructionError(ConfigError):
    """The configuration is well formed but the curve cannot be built."""


@dataclass
class CurveConfig:
    """A validated configuration and the curve it describes."""

    kind: str
    D: float
    data: dict
    curve: object

    @property
    def target_D(self):
        """Diameter to verify against (ellipses default to the major axis)."""
        if self.D is not None:
            return self.D
        return 2.0 * max(self.data['semiAxes'])


def _is_number(value):
    return isinstance(value, (int, float)) and not isinstance(value, bool) and math.isfinite(value)


def _is_integer(value):
    return _is_number(value) and int(value) == value


def _check_entries(entries, name, keys, index_key, errors):
    if not isinstance(entries, list):
        errors.append(f"{name}: must be a list")
        return
    for i, entry in enumerate(entries):
        path = f"{name}[{i}]"
        if not isinstance(entry, dict):
            errors.append(f"{path}: must be an object")
            continue
        for key in sorted(set(entry) - keys):
            errors.append(f"{path}.{key}: unknown key")
        if index_key not in entry:
            errors.append(f"{path}.{index_key}: missing")
        elif not _is_integer(entry[index_key]):
            errors.append(f"{path}.{index_key}: must be an integer, got {entry[index_key]!r}")
        for key in ('a', 'b'):
            if key in entry and not _is_number(entry[key]):
                errors.append(f"{path}.{key}: must be a number, got {entry[key]!r}")


def validate_curve_data(data):
    """
    Validate curve configuration structure and value types.

    Args:
        data (dict): Parsed JSON configuration.

    Returns:
        tuple: (is_valid, errors_list) with field-prefixed messages.
    """
    errors = []
    if not isinstance(data, dict):
        return False, ["<root>: configuration must be a JSON object"]

    kind = data.get('kind')
    if kind not in KIND_KEYS:
        errors.append(f"kind: must be one of {', '.join(sorted(KIND_KEYS))}, got {kind!r}")
        return False, errors

    allowed = KIND_KEYS[kind] | COMMON_KEYS
    for key in sorted(set(data) - allowed):
        errors.append(f"{key}: unknown key for kind '{kind}'")
    for key in sorted(REQUIRED_KEYS[kind] - set(data)):
        errors.append(f"{key}: missing")

    if 'D' in data and (not _is_number(data['D']) or data['D'] <= 0):
        errors.append(f"D: must be a positive number, got {data['D']!r}")
    if 'n' in data and not _is_integer(data['n']):
        errors.append(f"n: must be an integer, got {data['n']!r}")
    if 'b' in data and not _is_number(data['b']):
        errors.append(f"b: must be a number, got {data['b']!r}")
    if 'description' in data and not isinstance(data['description'], str):
        errors.append("description: must be a string")
    if 'derived' in data and not isinstance(data['derived'], dict):
        errors.append("derived: must be an object")

    if kind == 'trig' and 'terms' in data:
        _check_entries(data['terms'], 'terms', TERM_KEYS, 'm', errors)
    if kind == 'rotor':
        for name in ('gx', 'gy'):
            if name in data:
                _check_entries(data[name], name, ROTOR_KEYS, 'freq', errors)
    if 'center' in data:
        center = data['center']
        if not (isinstance(center, list) and len(center) == 2 and all(_is_number(c) for c in center)):
            errors.append(f"center: must be a list of two numbers, got {center!r}")
    if 'semiAxes' in data:
        axes = data['semiAxes']
        if not (isinstance(axes, list) and len(axes) == 2
                and all(_is_number(a) and a > 0 for a in axes)):
            errors.append(f"semiAxes: must be a list of two positive numbers, got {axes!r}")

    return len(errors) == 0, errors


def _error_field(error, data):
    """Map a curve construction error to the configuration path that caused it."""
    if isinstance(error, HarmonicViolation):
        for i, term in enumerate(data.get('terms', [])):
            m = term.get('m')
            if m < 3 or m % 2 == 0:
                return f"terms[{i}].m"
        return 'terms'
    if isinstance(error, AmplitudeViolation):
        return 'terms'
    if isinstance(error, FrequencyViolation):
        n = data.get('n')
        for name in ('gx', 'gy'):
            for i, entry in enumerate(data.get(name, [])):
                freq = entry.get('freq')
                if freq <= 0 or freq % n:
                    return f"{name}[{i}].freq"
        return 'gx'
    if isinstance(error, GuardViolation):
        return 'gx'
    if isinstance(error, (BadOrder, EvenOrder)):
        return 'n'
    if isinstance(error, BadRadius):
        return 'b'
    return 'D'


def build_curve(data):
    """Build the curve described by a validated configuration.

    Args:
        data (dict): Configuration that passed validate_curve_data.

    Returns:
        Curve: Constructed curve.

    Raises:
        ConstructionError: Wraps the curves-module error with its field path.
    """
    kind = data['kind']
    try:
        if kind == 'trig':
            return make_constant_diameter(data['D'], [
                {'m': int(t['m']), 'a': t.get('a', 0.0), 'b': t.get('b', 0.0)} for t in data['terms']])
        if kind == 'rotor':
            return make_rotor(int(data['n']), data['D'], data.get('gx', []), data.get('gy', []))
        if kind == 'reuleaux':
            return make_reuleaux(int(data['n']), data['D'])
        if kind == 'rounded_reuleaux':
            return make_rounded_reuleaux(int(data['n']), data['D'], data['b'])
        if kind == 'circle':
            return make_circle(data['D'], tuple(data.get('center', (0.0, 0.0))))
        return make_ellipse(*data['semiAxes'])
    except CurveError as e:
        field = _error_field(e, data)
        raise ConstructionError(f"{field}: {e}", field=field) from e


def parse_curve_data(data):
    """Validate and build a configuration held in memory.

    Raises:
        SchemaError: Validation failed (messages joined).
        ConstructionError: The curve cannot be built.
    """
    is_valid, errors = validate_curve_data(data)
    if not is_valid:
        first = errors[0].split(':', 1)[0]
        raise SchemaError("; ".join(errors), field=first)
    curve = build_curve(data)
    D = float(data['D']) if 'D' in data else None
    return CurveConfig(kind=data['kind'], D=D, data=data, curve=curve)


def load_config(filepath):
    """
    Load a curve configuration from a JSON file.

    Args:
        filepath (str): Path to the configuration.

    Returns:
        CurveConfig: Validated configuration with its curve.

    Raises:
        ParseError: File missing, unreadable or not JSON.
        SchemaError: Schema violations.
        ConstructionError: Curve construction failed.
    """
    if not os.path.exists(filepath):
        raise ParseError(f"Curve configuration not found: {filepath}")
    try:
        with open(filepath, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ParseError(f"Invalid JSON in {filepath}: {e}") from e
    except (OSError, UnicodeDecodeError) as e:
        raise ParseError(f"Error reading {filepath}: {e}") from e
    config = parse_curve_data(data)
    logger.info(f"loaded {config.kind} curve from {filepath}")
    return config


def _series_entries(series):
    return [{'freq': int(f), 'a': s, 'b': c} for f, s, c in series.terms()]


def curve_to_config(config):
    """Normalized JSON description of a configuration with derived quantities.

    Args:
        config (CurveConfig): Loaded configuration.

    Returns:
        dict: Input keys (without any stale "derived") plus a fresh "derived" block.
    """
    data = {k: v for k, v in config.data.items() if k != 'derived'}
    curve = config.curve
    derived = {}
    if config.kind == 'trig':
        derived['G'] = {'x': _series_entries(curve.gx), 'y': _series_entries(curve.gy)}
    elif config.kind == 'rotor':
        derived['R'] = curve.spec.R
    elif isinstance(curve, PiecewiseArcCurve):
        derived['arcs'] = [{
            'center': [arc.center[0], arc.center[1]],
            'radius': arc.radius,
            'start_angle': arc.start_angle,
            'end_angle': arc.end_angle,
        } for arc in curve.arcs]
        derived['junctions'] = [float(u) for u in curve.junctions]
        derived['perimeter'] = curve.length
    elif config.kind == 'circle':
        derived['radius'] = curve.radius
    data['derived'] = derived
    return data
