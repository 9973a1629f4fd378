#!/usr/bin/env python3
"""
Figure Renderer for constwidth

Writes deterministic SVG pictures of configured curves: the curve as a closed
polyline plus optional overlays (diametral chords, one inscribed n-gon, arc
centers, and the midpoint curve G of trig curves).
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from curves import PiecewiseArcCurve
from geometry import chord_maxima, native_grid
from verify import find_inscribed_ngons


logger = logging.getLogger(__name__)

PREAMBLE = """\
<?xml version="1.0" encoding="UTF-8" standalone="no"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="%(x).6f %(y).6f %(width).6f %(height).6f">
<rect x="%(x).6f" y="%(y).6f" width="%(width).6f" height="%(height).6f" style="fill:#ffffff"/>
"""

POSTAMBLE = """\
</svg>
"""

MARGIN = 0.05
CHORD_SAMPLES = 2048
CURVE_COLOR = '#000000'
CHORD_COLOR = '#888888'
NGON_COLOR = '#cc0000'
MIDPOINT_COLOR = '#0055cc'


@dataclass(frozen=True)
class RenderOptions:
    """Figure options; stroke_width and dot_radius are fractions of D."""

    samples: int = 720
    chords: int = 0
    ngon: int = None
    show_centers: bool = False
    stroke_width: float = 0.005
    dot_radius: float = 0.01

    def __post_init__(self):
        if int(self.samples) != self.samples or self.samples < 64:
            raise ValueError(f"samples must be an integer >= 64, got {self.samples!r}")
        if self.chords < 0:
            raise ValueError(f"chords must be >= 0, got {self.chords!r}")
        if self.ngon is not None and self.ngon < 2:
            raise ValueError(f"ngon must be >= 2, got {self.ngon!r}")
        if not (self.stroke_width > 0 and self.dot_radius > 0):
            raise ValueError("stroke_width and dot_radius must be positive")

    @classmethod
    def from_settings(cls, settings, **overrides):
        values = {key: settings[key] for key in
                  ('samples', 'chords', 'ngon', 'show_centers', 'stroke_width', 'dot_radius')}
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


class SvgFigure:
    """Accumulates SVG elements in math coordinates (y up) and tracks the bounding box."""

    def __init__(self):
        self.min_x = None
        self.max_x = None
        self.min_y = None
        self.max_y = None
        self.commands = []

    def require(self, x, y):
        if self.min_x is None:
            self.min_x = self.max_x = x
            self.min_y = self.max_y = y
        else:
            self.min_x = min(self.min_x, x)
            self.max_x = max(self.max_x, x)
            self.min_y = min(self.min_y, y)
            self.max_y = max(self.max_y, y)

    def _points(self, points):
        for x, y in points:
            self.require(x, y)
        return ' '.join('%.6f,%.6f' % (x, -y) for x, y in points)

    def polygon(self, points, color=CURVE_COLOR, width=0.005):
        self.commands.append(
            '<polygon points="%s" style="fill:none;stroke:%s;stroke-width:%.6f"/>'
            % (self._points(points), color, width))

    def polyline(self, points, color=CURVE_COLOR, width=0.005):
        self.commands.append(
            '<polyline points="%s" style="fill:none;stroke:%s;stroke-width:%.6f"/>'
            % (self._points(points), color, width))

    def dot(self, x, y, radius, color=CURVE_COLOR):
        self.require(x - radius, y - radius)
        self.require(x + radius, y + radius)
        self.commands.append(
            '<circle cx="%.6f" cy="%.6f" r="%.6f" style="fill:%s;stroke:none"/>'
            % (x, -y, radius, color))

    def to_svg(self):
        span = max(self.max_x - self.min_x, self.max_y - self.min_y)
        pad = span * MARGIN
        # y is flipped, so the top edge is -max_y
        header = PREAMBLE % {
            'x': self.min_x - pad,
            'y': -self.max_y - pad,
            'width': self.max_x - self.min_x + 2 * pad,
            'height': self.max_y - self.min_y + 2 * pad,
        }
        return header + ''.join(item + '\n' for item in self.commands) + POSTAMBLE

    def save(self, filename):
        with open(filename, 'w', encoding='utf-8', newline='\n') as f:
            f.write(self.to_svg())


def _ngon_side(config, n):
    if config.kind == 'rotor':
        return config.D
    return config.target_D * math.sin(math.pi / n)


def render_curve(config, options=None):
    """Draw a configured curve and its overlays.

    Args:
        config (CurveConfig): Loaded configuration.
        options (RenderOptions, optional): Figure options.

    Returns:
        SvgFigure: Figure ready to be saved.
    """
    options = options or RenderOptions()
    curve = config.curve
    D = config.target_D
    stroke = options.stroke_width * D
    figure = SvgFigure()

    u = native_grid(curve, options.samples)
    figure.polygon([tuple(p) for p in curve.point(u)], CURVE_COLOR, stroke)

    if options.chords:
        bases = native_grid(curve, options.chords)
        rows, phi, values = chord_maxima(curve, bases, CHORD_SAMPLES)
        for i, base in enumerate(bases):
            sel = np.nonzero(rows == i)[0]
            if sel.size == 0:
                continue
            best = sel[values[sel].argmax()]
            ends = curve.point(np.array([base, base + phi[best]]))
            figure.polyline([tuple(p) for p in ends], CHORD_COLOR, 0.5 * stroke)

    if options.ngon:
        side = _ngon_side(config, options.ngon)
        witnesses = find_inscribed_ngons(curve, 0.0, options.ngon, side)
        if witnesses:
            figure.polygon([tuple(v) for v in witnesses[0].vertices], NGON_COLOR, stroke)
        else:
            logger.warning(f"no inscribed {options.ngon}-gon of side {side:.6g} at parameter 0")

    if config.kind == 'trig':
        theta = native_grid(curve, options.samples)
        figure.polygon([tuple(p) for p in curve.midpoint(theta)], MIDPOINT_COLOR, stroke)

    if options.show_centers and isinstance(curve, PiecewiseArcCurve):
        for cx, cy in curve.centers:
            figure.dot(cx, cy, options.dot_radius * D)

    return figure


def write_svg(config, path, options=None):
    """Render ``config`` and save it to ``path``."""
    figure = render_curve(config, options)
    figure.save(path)
    logger.info(f"wrote {len(figure.commands)} SVG elements to {path}")
    return path
