#!/usr/bin/env python3
"""
Geometry Analyzers for constwidth

Curvature, perimeter, directional width, the chord function and nearest-point
queries on any ``curves.Curve``. All parameters are the curve's native
parameter (theta for Fourier families, normalized arc length for arc chains).
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

from curves import Curve, PiecewiseArcCurve
from numerics import golden_section_max, grid_local_minima, grid_local_maxima


logger = logging.getLogger(__name__)

SINGULAR_FACTOR = 1e-12
WIDTH_GRID = 2048
NEAREST_GRID = 4096
NEAREST_CHUNK = 256
GAUSS_NODES = 16
START_PANELS = 4
MAX_DOUBLINGS = 20
PERIMETER_TOL = 1e-13
ARC_CROSS_CHECK_TOL = 1e-10


class GeometryError(Exception):
    """Base class for geometry analyzer errors."""


class SingularPoint(GeometryError):
    """The curve derivative vanishes (relative to the curve scale)."""


class NonConvergence(GeometryError):
    """Panel doubling did not reach the quadrature tolerance."""


def _result(value, like):
    if np.ndim(like) == 0:
        return float(value)
    return np.asarray(value, dtype=float)


def norms(vectors):
    return np.hypot(vectors[..., 0], vectors[..., 1])


def cross_z(a, b):
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


def native_grid(curve, samples):
    """Uniform grid of ``samples`` native parameters over one period."""
    return curve.period * np.arange(samples) / samples


def speed(curve, u):
    """Return ||gamma'(u)||."""
    return _result(norms(curve.point(u, 1)), u)


def tangent_angle(curve, u):
    """Return the direction angle of gamma'(u) in (-pi, pi]."""
    d1 = curve.point(u, 1)
    return _result(np.arctan2(d1[..., 1], d1[..., 0]), u)


def curvature(curve, u):
    """Curvature |gamma' x gamma''| / ||gamma'||^3 from exact derivatives.

    Arc chains return 1/radius of the arc containing u.

    Args:
        curve (Curve): Curve to analyze.
        u (float or ndarray): Native parameter(s).

    Returns:
        float or ndarray: Curvature value(s), >= 0.

    Raises:
        SingularPoint: ||gamma'|| below 1e-12 of the curve scale.
    """
    d1 = curve.point(u, 1)
    sp = norms(d1)
    limit = SINGULAR_FACTOR * curve.scale
    bad = np.atleast_1d(sp < limit)
    if bad.any():
        where = float(np.atleast_1d(np.asarray(u, dtype=float))[bad][0])
        raise SingularPoint(f"curve is singular at parameter {where:.12g}")
    exact = curve.exact_curvature(u)
    if exact is not None:
        return _result(exact, u)
    d2 = curve.point(u, 2)
    return _result(np.abs(cross_z(d1, d2)) / sp ** 3, u)


def _piece_bounds(curve):
    """Native parameter intervals of the smooth pieces of ``curve``."""
    junctions = np.sort(np.asarray(curve.junctions, dtype=float))
    if junctions.size == 0:
        return [(0.0, curve.period)]
    edges = np.append(junctions, junctions[0] + curve.period)
    return list(zip(edges[:-1], edges[1:]))


def _gauss_integral(func, lo, hi, panels, nodes, weights):
    edges = np.linspace(lo, hi, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    u = mid[:, None] + half[:, None] * nodes[None, :]
    return float(np.sum(half[:, None] * weights[None, :] * func(u)))


def integrate_pieces(curve, func):
    """Integrate ``func(u)`` over one period, piece by piece, with panel doubling.

    Args:
        curve (Curve): Curve whose junctions split the period.
        func (callable): Vectorized integrand of the native parameter.

    Returns:
        float: Integral value.

    Raises:
        NonConvergence: No convergence after 20 doublings on some piece.
    """
    nodes, weights = leggauss(GAUSS_NODES)
    tol = PERIMETER_TOL * curve.scale
    total = 0.0
    for lo, hi in _piece_bounds(curve):
        panels = START_PANELS
        previous = _gauss_integral(func, lo, hi, panels, nodes, weights)
        for _ in range(MAX_DOUBLINGS):
            panels *= 2
            current = _gauss_integral(func, lo, hi, panels, nodes, weights)
            if abs(current - previous) < tol:
                break
            previous = current
        else:
            raise NonConvergence(
                f"quadrature on [{lo:.6g}, {hi:.6g}] did not converge after {MAX_DOUBLINGS} doublings")
        total += current
    return total


def quadrature_perimeter(curve):
    """Arc length by composite 16-point Gauss-Legendre quadrature."""
    return integrate_pieces(curve, lambda u: norms(curve.point(u, 1)))


def arc_chain(curve):
    while not isinstance(curve, PiecewiseArcCurve) and hasattr(curve, 'base'):
        curve = curve.base
    return curve if isinstance(curve, PiecewiseArcCurve) else None


def perimeter(curve):
    """Return the perimeter of ``curve``.

    Arc chains use the exact sum of radius*sweep; quadrature runs as a
    cross-check and a mismatch is logged.

    Args:
        curve (Curve): Curve to measure.

    Returns:
        float: Perimeter length.
    """
    chain = arc_chain(curve)
    if chain is None:
        return quadrature_perimeter(curve)
    exact = chain.length
    numeric = quadrature_perimeter(chain)
    if abs(exact - numeric) > ARC_CROSS_CHECK_TOL * chain.scale:
        logger.warning(f"arc perimeter {exact:.15g} disagrees with quadrature {numeric:.15g}")
    return exact


def signed_area(curve):
    """Signed enclosed area, positive for counterclockwise curves."""
    return 0.5 * integrate_pieces(curve, lambda u: cross_z(curve.point(u), curve.point(u, 1)))


def widths(curve, directions, grid=WIDTH_GRID):
    """Directional widths max<p,u> - min<p,u> for many unit directions.

    Each extremum is taken from a ``grid``-point sample and refined by
    golden-section search to 1e-12 in the parameter.

    Args:
        curve (Curve): Curve to measure.
        directions (ndarray): Unit vectors, shape (K, 2).
        grid (int): Number of samples.

    Returns:
        ndarray: K widths.
    """
    dirs = np.asarray(directions, dtype=float).reshape(-1, 2)
    u = native_grid(curve, grid)
    step = curve.period / grid
    proj = dirs @ curve.point(u).T

    def support(sign, start):
        def objective(x):
            return sign * np.sum(curve.point(x) * dirs, axis=-1)
        _, value = golden_section_max(objective, start - step, start + step)
        return np.maximum(value, (sign * proj).max(axis=1))

    upper = support(1.0, u[proj.argmax(axis=1)])
    lower = -support(-1.0, u[proj.argmin(axis=1)])
    return upper - lower


def width(curve, direction, grid=WIDTH_GRID):
    """Width of ``curve`` in the unit direction ``direction``."""
    return float(widths(curve, [direction], grid)[0])


def chord(curve, theta, phi):
    """Chord function f_theta(phi) = ||gamma(theta) - gamma(theta + phi)||."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    value = norms(curve.point(theta) - curve.point(theta + phi))
    return float(value) if np.ndim(value) == 0 else value


@dataclass(frozen=True)
class ChordFunction:
    """f_theta for a fixed base parameter; f_theta(0) = 0."""

    curve: Curve
    base: float

    def __call__(self, phi):
        return chord(self.curve, self.base, phi)

    def samples(self, count):
        """Return (phi grid, f values) on ``count`` uniform offsets."""
        phi = native_grid(self.curve, count)
        return phi, chord(self.curve, self.base, phi)


def chord_maxima(curve, bases, samples):
    """Refined local maxima of the chord function for many base parameters.

    Args:
        curve (Curve): Curve to analyze.
        bases (ndarray): Base parameters, shape (B,).
        samples (int): Offsets per base on the uniform phi grid.

    Returns:
        tuple: (rows, phi, values) flat arrays; rows index into ``bases``,
        phi is the maximizing offset in [0, period).
    """
    bases = np.asarray(bases, dtype=float).ravel()
    offsets = native_grid(curve, samples)
    step = curve.period / samples
    base_pts = curve.point(bases)
    values = norms(curve.point(bases[:, None] + offsets[None, :]) - base_pts[:, None, :])
    rows, cols = grid_local_maxima(values)
    # offset 0 is the base point itself
    keep = cols != 0
    rows, cols = rows[keep], cols[keep]
    anchors = base_pts[rows]
    row_bases = bases[rows]

    def objective(x):
        return norms(curve.point(row_bases + x) - anchors)

    centers = offsets[cols]
    phi, refined = golden_section_max(objective, centers - step, centers + step)
    grid_values = values[rows, cols]
    better = grid_values > refined
    phi = np.where(better, centers, phi)
    refined = np.where(better, grid_values, refined)
    return rows, np.mod(phi, curve.period), refined


def nearest_points(curve, points, grid=NEAREST_GRID, candidates=3):
    """Nearest curve parameters and distances for many query points.

    The ``candidates`` deepest grid basins of each query are refined by
    golden-section search to 1e-12 in the parameter.

    Args:
        curve (Curve): Curve to search.
        points (ndarray): Query points, shape (M, 2).
        grid (int): Number of samples.
        candidates (int): Basins refined per query.

    Returns:
        tuple: (params, distances) arrays of shape (M,).
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    u = native_grid(curve, grid)
    step = curve.period / grid
    samples = curve.point(u)
    k = min(candidates, grid)
    params = np.empty(len(pts))
    dists = np.empty(len(pts))

    for start in range(0, len(pts), NEAREST_CHUNK):
        query = pts[start:start + NEAREST_CHUNK]
        sq = np.sum((samples[None, :, :] - query[:, None, :]) ** 2, axis=-1)
        mask = np.zeros(sq.shape, dtype=bool)
        mask[grid_local_minima(sq)] = True
        masked = np.where(mask, sq, np.inf)
        idx = np.argpartition(masked, k - 1, axis=1)[:, :k]
        missing = ~np.isfinite(np.take_along_axis(masked, idx, axis=1))
        idx = np.where(missing, sq.argmin(axis=1)[:, None], idx)

        centers = u[idx].ravel()
        targets = np.repeat(query, k, axis=0)

        def objective(x):
            return -np.sum((curve.point(x) - targets) ** 2, axis=-1)

        arg, value = golden_section_max(objective, centers - step, centers + step)
        arg = arg.reshape(-1, k)
        value = -value.reshape(-1, k)
        best = value.argmin(axis=1)
        rows = np.arange(len(query))
        best_sq = value[rows, best]
        best_arg = arg[rows, best]

        grid_best = sq.argmin(axis=1)
        grid_sq = sq[rows, grid_best]
        use_grid = grid_sq < best_sq
        best_sq = np.where(use_grid, grid_sq, best_sq)
        best_arg = np.where(use_grid, u[grid_best], best_arg)

        params[start:start + len(query)] = np.mod(best_arg, curve.period)
        dists[start:start + len(query)] = np.sqrt(np.maximum(best_sq, 0.0))

    return params, dists


def nearest_point(curve, p, grid=NEAREST_GRID):
    """Nearest point on ``curve`` to ``p``.

    Returns:
        tuple: (parameter, distance).
    """
    params, dists = nearest_points(curve, [p], grid)
    return float(params[0]), float(dists[0])


def outward_normal(curve, u):
    """Unit outward normal (-90 degree rotation of the tangent) of a ccw curve."""
    d1 = curve.point(u, 1)
    sp = norms(d1)[..., None]
    return np.stack([d1[..., 1], -d1[..., 0]], axis=-1) / sp


def inward_normal(curve, u):
    """Unit inward normal (+90 degree rotation of the tangent) of a ccw curve."""
    return -outward_normal(curve, u)


def opposite_distance(curve, u):
    """||gamma(u) - gamma(u + period/2)||, the diametral chord for Fourier curves."""
    return chord(curve, u, 0.5 * curve.period)


def polar_directions(count):
    """``count`` unit vectors at equally spaced angles in [0, pi)."""
    angles = math.pi * np.arange(count) / count
    return np.stack([np.cos(angles), np.sin(angles)], axis=-1)
