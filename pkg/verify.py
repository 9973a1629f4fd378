#!/usr/bin/env python3
"""
Property Verification for constwidth

Certifies or refutes, at a finite sampling resolution,

- C(D): every point has exactly one other point at distance D and all other
  points are strictly closer,
- C_n(D): every point is a vertex of exactly one inscribed regular n-gon with
  edge length D,

recovers the midpoint curve G and the profile r of a C(D) curve by the normal
construction, cross-checks the square-center property, and detects corners.

Refutations are reports, never exceptions. Verification runs as a parallel
map over chunks of base points followed by an ordered reduction, so reports
are identical for any thread count.
"""

import logging
import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np
from scipy.interpolate import CubicSpline, PchipInterpolator

from config import parallel_map
from curves import PiecewiseArcCurve
from geometry import (
    chord_maxima, curvature, inward_normal, native_grid, nearest_points, tangent_angle,
    arc_chain, cross_z, norms,
)
from numerics import bisection_root, golden_section_max, grid_local_maxima, wrap_to_pi


logger = logging.getLogger(__name__)

BASE_CHUNK = 32
DEDUPE_TOL = 1e-9
POLYGON_MATCH_FACTOR = 1e-9
PLATEAU_SEPARATION = 1e-3
PLATEAU_MIN_COUNT = 3
CORNER_TOL = 1e-6
CORNER_FINE = 8192
CORNER_COARSE = 4096
CORNER_RATIO = 1.5
ANGLE_TOTAL_TOL = 1e-6
NEWTON_STEPS = 3


class VerificationError(Exception):
    """Base class for errors raised while recovering structure from a curve."""


class NormalMiss(VerificationError):
    """The point D along the inward normal is not on the curve."""

    def __init__(self, message, param, residual):
        super().__init__(message)
        self.param = param
        self.residual = residual


class NonMonotoneAngle(VerificationError):
    """The diametral chord angle does not increase strictly by 2*pi."""


@dataclass(frozen=True)
class VerificationOptions:
    """Sampling densities and tolerances; None tolerances scale with D."""

    theta_samples: int = 512
    phi_samples: int = 2048
    value_tol: Optional[float] = None
    uniq_tol: Optional[float] = None
    membership_tol: Optional[float] = None
    epsilon_margin: float = 0.1
    nearest_grid: int = 4096

    def __post_init__(self):
        for name in ('theta_samples', 'phi_samples', 'nearest_grid'):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")
        for name in ('value_tol', 'uniq_tol', 'membership_tol'):
            value = getattr(self, name)
            if value is not None and not value > 0:
                raise ValueError(f"{name} must be positive, got {value!r}")
        if not 0 < self.epsilon_margin < math.pi / 4:
            raise ValueError(f"epsilon_margin must lie in (0, pi/4), got {self.epsilon_margin!r}")

    @classmethod
    def from_settings(cls, settings, D, **overrides):
        """Build options from a ``verification`` settings section (factors times D)."""
        values = dict(
            theta_samples=settings['theta_samples'],
            phi_samples=settings['phi_samples'],
            value_tol=settings['value_tol_factor'] * D,
            uniq_tol=settings['uniq_tol_factor'] * D,
            membership_tol=settings['membership_tol_factor'] * D,
            epsilon_margin=settings['epsilon_margin'],
        )
        values.update(overrides)
        return cls(**values)

    def resolve(self, D):
        """Return a copy with every tolerance made concrete for diameter ``D``."""
        return replace(
            self,
            value_tol=self.value_tol if self.value_tol is not None else 1e-9 * D,
            uniq_tol=self.uniq_tol if self.uniq_tol is not None else 1e-6 * D,
            membership_tol=self.membership_tol if self.membership_tol is not None else 1e-7 * D,
        )

    def to_dict(self):
        return {
            'theta_samples': self.theta_samples,
            'phi_samples': self.phi_samples,
            'value_tol': self.value_tol,
            'uniq_tol': self.uniq_tol,
            'membership_tol': self.membership_tol,
            'epsilon_margin': self.epsilon_margin,
            'nearest_grid': self.nearest_grid,
        }


@dataclass
class NGonWitness:
    """A regular polygon inscribed at a base point; vertices[0] is the base point."""

    base: float
    vertices: np.ndarray
    orientation: str
    residuals: np.ndarray
    center: np.ndarray

    @property
    def n(self):
        return len(self.vertices)

    @property
    def max_residual(self):
        return float(np.max(self.residuals))

    def same_polygon(self, other, tol):
        """True if both witnesses have the same vertex set within ``tol``."""
        if self.n != other.n:
            return False
        dist = np.linalg.norm(self.vertices[:, None, :] - other.vertices[None, :, :], axis=-1)
        return bool(np.all(dist.min(axis=1) < tol) and np.all(dist.min(axis=0) < tol))

    def to_dict(self):
        return {
            'base': float(self.base),
            'vertices': [[float(x), float(y)] for x, y in self.vertices],
            'orientation': self.orientation,
            'residuals': [float(r) for r in self.residuals],
            'max_residual': self.max_residual,
            'center': [float(self.center[0]), float(self.center[1])],
        }


@dataclass
class BaseRecord:
    """Verification outcome at one base parameter."""

    base: float
    passed: bool
    max_value: Optional[float] = None
    phi: Optional[float] = None
    gap: Optional[float] = None
    plateau: bool = False
    count: Optional[int] = None
    witnesses: list = field(default_factory=list)
    max_residual: Optional[float] = None
    margin_ok: Optional[bool] = None

    def to_dict(self):
        data = {'base': float(self.base), 'passed': bool(self.passed)}
        if self.count is None:
            data.update({
                'max_value': self.max_value,
                'phi': self.phi,
                'gap': self.gap,
                'plateau': bool(self.plateau),
            })
        else:
            data.update({
                'count': int(self.count),
                'max_residual': self.max_residual,
                'margin_ok': self.margin_ok,
                'witnesses': [w.to_dict() for w in self.witnesses],
            })
        return data


@dataclass
class VerificationReport:
    """Per-base records of a C(D) or C_n(D) check."""

    prop: str
    D: float
    passed: bool
    records: list
    options: VerificationOptions
    n: Optional[int] = None

    @property
    def failing_bases(self):
        return [r.base for r in self.records if not r.passed]

    @property
    def plateau_bases(self):
        return [r.base for r in self.records if r.plateau]

    @property
    def worst_base(self):
        """First failing record, else the record furthest from its target."""
        for record in self.records:
            if not record.passed:
                return record
        if not self.records:
            return None
        if self.n is None:
            return max(self.records, key=lambda r: abs(r.max_value - self.D))
        return max(self.records, key=lambda r: r.max_residual if r.max_residual is not None else 0.0)

    @property
    def max_deviation(self):
        """max |max chord - D| over bases (C(D) reports only)."""
        values = [abs(r.max_value - self.D) for r in self.records if r.max_value is not None]
        return max(values) if values else 0.0

    def to_dict(self):
        worst = self.worst_base
        return {
            'property': self.prop,
            'D': self.D,
            'n': self.n,
            'passed': bool(self.passed),
            'options': self.options.to_dict(),
            'failing_bases': [float(b) for b in self.failing_bases],
            'worst_base': worst.to_dict() if worst is not None else None,
            'records': [r.to_dict() for r in self.records],
        }


def _bases(curve, opts):
    return native_grid(curve, opts.theta_samples)


def _chunks(values):
    count = max(1, math.ceil(len(values) / BASE_CHUNK))
    return np.array_split(values, count)


def _cyclic_gap(a, b, period):
    d = np.mod(np.abs(a - b), period)
    return np.minimum(d, period - d)


def merge_maxima(phi, values, spacing, period):
    """Collapse maxima closer than ``spacing`` (cyclically), keeping the highest of each cluster."""
    if phi.size <= 1:
        return phi, values
    order = np.argsort(phi)
    phi, values = phi[order], values[order]
    breaks = np.diff(np.append(phi, phi[0] + period)) > spacing
    if not breaks.any():
        best = values.argmax()
        return phi[best:best + 1], values[best:best + 1]
    shift = (int(np.argmax(breaks)) + 1) % phi.size
    phi, values, breaks = np.roll(phi, -shift), np.roll(values, -shift), np.roll(breaks, -shift)
    cluster = np.concatenate([[0], np.cumsum(breaks[:-1])])
    keep = []
    for cid in np.unique(cluster):
        members = np.nonzero(cluster == cid)[0]
        keep.append(members[values[members].argmax()])
    keep = np.array(keep)
    return phi[keep], values[keep]


def count_plateau(phi, values, D, value_tol, separation, period):
    """Greedy count of near-D maxima separated by more than ``separation``."""
    near = np.sort(phi[np.abs(values - D) <= value_tol])
    kept = []
    for p in near:
        if all(_cyclic_gap(p, q, period) > separation for q in kept):
            kept.append(p)
    return len(kept)


def _cd_records(curve, bases, D, opts, require_unique):
    period = curve.period
    spacing = 2.0 * period / opts.phi_samples
    separation = PLATEAU_SEPARATION * period / (2.0 * math.pi)
    rows, phi, values = chord_maxima(curve, bases, opts.phi_samples)
    records = []
    for i, base in enumerate(bases):
        sel = rows == i
        raw_phi, raw_values = phi[sel], values[sel]
        plateau = count_plateau(raw_phi, raw_values, D, opts.value_tol,
                                separation, period) >= PLATEAU_MIN_COUNT
        m_phi, m_values = merge_maxima(raw_phi, raw_values, spacing, period)
        if m_values.size == 0:
            records.append(BaseRecord(base=float(base), passed=False, max_value=0.0))
            continue
        order = np.argsort(-m_values, kind='stable')
        best = float(m_values[order[0]])
        second = float(m_values[order[1]]) if m_values.size > 1 else None
        passed = abs(best - D) <= opts.value_tol
        if require_unique:
            passed = passed and not plateau and (second is None or second < D - opts.uniq_tol)
        records.append(BaseRecord(
            base=float(base),
            passed=bool(passed),
            max_value=best,
            phi=float(m_phi[order[0]]),
            gap=None if second is None else float(D - second),
            plateau=bool(plateau),
        ))
    return records


def check_constant_diameter(curve, D, opts=None, require_unique=True):
    """Check property C(D) at ``opts.theta_samples`` base points.

    Args:
        curve (Curve): Closed simple curve.
        D (float): Target diameter.
        opts (VerificationOptions, optional): Grids and tolerances.
        require_unique (bool): Also demand a single farthest point.

    Returns:
        VerificationReport: Per-base max chord, maximizing offset, gap and plateau flag.
    """
    opts = (opts or VerificationOptions()).resolve(D)
    bases = _bases(curve, opts)
    chunks = parallel_map(lambda chunk: _cd_records(curve, chunk, D, opts, require_unique),
                          _chunks(bases))
    records = [record for chunk in chunks for record in chunk]
    passed = all(r.passed for r in records)
    logger.info(f"C({D:g}) check over {len(records)} bases: {'pass' if passed else 'fail'}")
    return VerificationReport(prop='C(D)', D=float(D), passed=passed,
                              records=records, options=opts)


@dataclass
class DistanceSolutions:
    """Solutions of f_base(phi) = D for one base point."""

    base: float
    params: np.ndarray
    kinds: list
    near_max: float

    def as_list(self):
        return list(zip([float(p) for p in self.params], self.kinds))


def _dedupe(params, kinds, period):
    kept_params, kept_kinds = [], []
    for p, kind in zip(params, kinds):
        if all(_cyclic_gap(p, q, period) > DEDUPE_TOL for q in kept_params):
            kept_params.append(p)
            kept_kinds.append(kind)
    return np.array(kept_params), kept_kinds


def distance_solutions(curve, bases, D, opts):
    """Batched find_points_at_distance over ``bases`` with resolved ``opts``.

    Also reports, per base, the largest chord within epsilon_margin of the base.
    """
    period = curve.period
    P = opts.phi_samples
    step = period / P
    tol = opts.value_tol
    offsets = period * np.arange(P + 1) / P
    base_pts = curve.point(bases)
    g = norms(curve.point(bases[:, None] + offsets[None, :]) - base_pts[:, None, :]) - D
    g[:, 0] = -D
    g[:, -1] = -D

    eps = opts.epsilon_margin * period / (2.0 * math.pi)
    margin = (offsets <= eps) | (offsets >= period - eps)
    near_max = (g[:, margin] + D).max(axis=1)

    # tangential: interior grid maxima refined to within tol of D
    rows, cols = grid_local_maxima(g, cyclic=False)
    anchors = base_pts[rows]
    row_bases = bases[rows]

    def excess(x):
        return norms(curve.point(row_bases + x) - anchors) - D

    t_phi, t_val = golden_section_max(excess, offsets[cols] - step, offsets[cols] + step)
    tangential = np.abs(t_val) < tol

    # transversal: sign changes between consecutive samples away from D
    sign = np.sign(g)
    sign[np.abs(g) < tol] = 0
    lo_rows, lo_phi, hi_phi = [], [], []
    for i in range(len(bases)):
        nz = np.nonzero(sign[i])[0]
        flips = np.nonzero(sign[i, nz[:-1]] * sign[i, nz[1:]] < 0)[0]
        for k in flips:
            lo_rows.append(i)
            lo_phi.append(offsets[nz[k]])
            hi_phi.append(offsets[nz[k + 1]])
    # crossings hidden between two samples around a refined maximum
    hidden = (t_val > tol) & (cols >= 1) & (cols < P)
    for j in np.nonzero(hidden)[0]:
        i, c = rows[j], cols[j]
        if g[i, c] <= 0 and g[i, c - 1] < -tol and g[i, c + 1] < -tol:
            lo_rows.extend([i, i])
            lo_phi.extend([offsets[c - 1], t_phi[j]])
            hi_phi.extend([t_phi[j], offsets[c + 1]])

    lo_rows = np.array(lo_rows, dtype=int)
    x_anchor = base_pts[lo_rows] if lo_rows.size else np.empty((0, 2))
    x_bases = bases[lo_rows] if lo_rows.size else np.empty(0)

    def residual(x):
        return norms(curve.point(x_bases + x) - x_anchor) - D

    roots = bisection_root(residual, np.array(lo_phi), np.array(hi_phi))

    results = []
    for i, base in enumerate(bases):
        params = list(roots[lo_rows == i]) + list(t_phi[(rows == i) & tangential])
        kinds = (['transversal'] * int(np.sum(lo_rows == i))
                 + ['tangential'] * int(np.sum((rows == i) & tangential)))
        params, kinds = _dedupe(np.mod(np.array(params) + base, period), kinds, period)
        results.append(DistanceSolutions(base=float(base), params=params, kinds=kinds,
                                         near_max=float(near_max[i])))
    return results


def find_points_at_distance(curve, t0, D, opts=None):
    """All parameters at distance exactly D from gamma(t0).

    Args:
        curve (Curve): Curve to search.
        t0 (float): Base parameter.
        D (float): Distance.
        opts (VerificationOptions, optional): Grids and tolerances.

    Returns:
        list: (parameter, kind) tuples, kind is 'transversal' or 'tangential'.
    """
    opts = (opts or VerificationOptions()).resolve(D)
    return distance_solutions(curve, np.array([float(t0)]), D, opts)[0].as_list()


def regular_polygon(x, y, D, n, sigma):
    """Regular n-gon with side D, first vertex x, edge towards y.

    sigma = +1 places the polygon left of x->y (counterclockwise vertex
    order), sigma = -1 to the right.

    Returns:
        tuple: (vertices (n, 2), center (2,)).
    """
    x = np.asarray(x, dtype=float)
    direction = np.asarray(y, dtype=float) - x
    e = direction / np.linalg.norm(direction)
    if n == 2:
        return np.array([x, x + D * e]), x + 0.5 * D * e
    normal = np.array([-e[1], e[0]])
    apothem = 0.5 * D / math.tan(math.pi / n)
    center = x + 0.5 * D * e + sigma * apothem * normal
    rel = x - center
    angles = sigma * 2.0 * math.pi * np.arange(n) / n
    cos_a, sin_a = np.cos(angles), np.sin(angles)
    vertices = center + np.stack([cos_a * rel[0] - sin_a * rel[1],
                                  sin_a * rel[0] + cos_a * rel[1]], axis=-1)
    vertices[0] = x
    return vertices, center


def candidate_polygons(curve, solutions, n, D):
    polygons = []
    for sol in solutions:
        x = curve.point(sol.base)
        if sol.params.size == 0:
            continue
        ys = curve.point(sol.params)
        sigmas = (1,) if n == 2 else (1, -1)
        for y in ys:
            for sigma in sigmas:
                vertices, center = regular_polygon(x, y, D, n, sigma)
                polygons.append((sol.base, vertices, 'ccw' if sigma > 0 else 'cw', center))
    return polygons


def _ngon_witnesses(curve, bases, n, D, opts):
    """Accepted witnesses, best candidate residual and margin flag per base."""
    solutions = distance_solutions(curve, bases, D, opts)
    polygons = candidate_polygons(curve, solutions, n, D)
    if polygons:
        verts = np.concatenate([p[1] for p in polygons])
        _, residuals = nearest_points(curve, verts, grid=opts.nearest_grid)
        residuals = residuals.reshape(len(polygons), n)
    else:
        residuals = np.empty((0, n))

    match_tol = POLYGON_MATCH_FACTOR * D
    per_base = {float(b): ([], math.inf) for b in bases}
    for (base, vertices, orientation, center), res in zip(polygons, residuals):
        accepted, best = per_base[base]
        best = min(best, float(res.max()))
        if res.max() < opts.membership_tol:
            witness = NGonWitness(base=base, vertices=vertices, orientation=orientation,
                                  residuals=res, center=center)
            if not any(witness.same_polygon(w, match_tol) for w in accepted):
                accepted.append(witness)
        per_base[base] = (accepted, best)

    results = []
    for sol in solutions:
        accepted, best = per_base[sol.base]
        margin_ok = sol.near_max < D - opts.value_tol
        results.append((sol.base, accepted, best, margin_ok))
    return results


def find_inscribed_ngons(curve, t0, n, D, opts=None):
    """Regular n-gons with side D inscribed in ``curve`` with a vertex at gamma(t0).

    Args:
        curve (Curve): Curve to search.
        t0 (float): Base parameter.
        n (int): Number of vertices, >= 2.
        D (float): Edge length.
        opts (VerificationOptions, optional): Grids and tolerances.

    Returns:
        list: NGonWitness objects, duplicates merged.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    opts = (opts or VerificationOptions()).resolve(D)
    return _ngon_witnesses(curve, np.array([float(t0)]), n, D, opts)[0][1]


def _cn_records(curve, bases, n, D, opts):
    records = []
    for base, witnesses, best, margin_ok in _ngon_witnesses(curve, bases, n, D, opts):
        if witnesses:
            worst = max(w.max_residual for w in witnesses)
        else:
            worst = best if math.isfinite(best) else None
        records.append(BaseRecord(base=base, passed=len(witnesses) == 1,
                                  count=len(witnesses), witnesses=witnesses,
                                  max_residual=worst, margin_ok=bool(margin_ok)))
    return records


def check_cn(curve, n, D, opts=None):
    """Check property C_n(D): exactly one inscribed regular n-gon at every base.

    Args:
        curve (Curve): Curve to check.
        n (int): Number of vertices, >= 2.
        D (float): Edge length.
        opts (VerificationOptions, optional): Grids and tolerances.

    Returns:
        VerificationReport: Per-base witness counts and residuals.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    opts = (opts or VerificationOptions()).resolve(D)
    chunks = parallel_map(lambda chunk: _cn_records(curve, chunk, n, D, opts),
                          _chunks(_bases(curve, opts)))
    records = [record for chunk in chunks for record in chunk]
    passed = all(r.passed for r in records)
    logger.info(f"C_{n}({D:g}) check over {len(records)} bases: {'pass' if passed else 'fail'}")
    return VerificationReport(prop='C_n(D)', D=float(D), passed=passed,
                              records=records, options=opts, n=int(n))


def chord_angle(curve, u):
    """Angle of the diametral chord gamma(u) - y(u), i.e. of the outward normal."""
    d1 = curve.point(u, 1)
    return np.arctan2(-d1[..., 0], d1[..., 1])


def chord_angle_rate(curve, u):
    """d(chord angle)/du = curvature * speed for counterclockwise curves."""
    d1 = curve.point(u, 1)
    d2 = curve.point(u, 2)
    return cross_z(d1, d2) / np.sum(d1 * d1, axis=-1)


@dataclass
class MidpointRecovery:
    """Midpoint curve and profile sampled on a uniform chord-angle grid."""

    theta: np.ndarray
    params: np.ndarray
    G: np.ndarray
    r: np.ndarray
    orthogonality: np.ndarray
    max_normal_residual: float

    @property
    def orthogonality_defect(self):
        return float(np.max(np.abs(self.orthogonality)))

    def periodicity_defect(self, shift):
        """max ||G(theta + shift) - G(theta)||; ``shift`` must be a grid multiple."""
        h = 2.0 * math.pi / len(self.theta)
        k = int(round(shift / h))
        if abs(k * h - shift) > 1e-12:
            raise ValueError(f"shift {shift} is not a multiple of the grid spacing {h}")
        return float(np.max(np.linalg.norm(np.roll(self.G, -k, axis=0) - self.G, axis=-1)))

    def to_dict(self):
        return {
            'samples': len(self.theta),
            'max_normal_residual': self.max_normal_residual,
            'orthogonality_defect': self.orthogonality_defect,
            'max_abs_r': float(np.max(np.abs(self.r))),
        }


def _five_point_derivative(values, h):
    return (-np.roll(values, -2, axis=0) + 8.0 * np.roll(values, -1, axis=0)
            - 8.0 * np.roll(values, 1, axis=0) + np.roll(values, 2, axis=0)) / (12.0 * h)


def recover_midpoint_curve(curve, D, samples=1024, opts=None):
    """Recover G and r from a C(D) curve by the normal construction.

    y(t) = gamma(t) + D * inward normal must lie on the curve; the chord
    angle must increase strictly by 2*pi; G and r are resampled on a uniform
    chord-angle grid (monotone interpolation then Newton polish).

    Args:
        curve (Curve): Counterclockwise C(D) curve.
        D (float): Diameter.
        samples (int): Size of the parameter and chord-angle grids.
        opts (VerificationOptions, optional): Supplies membership_tol and nearest_grid.

    Returns:
        MidpointRecovery: theta grid, parameters, G, r and orthogonality values.

    Raises:
        NormalMiss: A normal point is off the curve.
        NonMonotoneAngle: The chord angle is not strictly increasing by 2*pi.
    """
    opts = (opts or VerificationOptions()).resolve(D)
    period = curve.period
    t = native_grid(curve, samples)
    x = curve.point(t)
    y = x + D * inward_normal(curve, t)
    _, residuals = nearest_points(curve, y, grid=opts.nearest_grid)
    worst = int(np.argmax(residuals))
    if residuals[worst] >= opts.membership_tol:
        raise NormalMiss(
            f"normal point at parameter {t[worst]:.9g} misses the curve by {residuals[worst]:.3e}",
            param=float(t[worst]), residual=float(residuals[worst]))

    angles = chord_angle(curve, t)
    steps = wrap_to_pi(np.diff(np.append(angles, angles[0])))
    total = float(np.sum(steps))
    if np.any(steps <= 0) or abs(total - 2.0 * math.pi) > ANGLE_TOTAL_TOL:
        raise NonMonotoneAngle(
            f"chord angle is not strictly increasing by 2*pi (total {total:.9f}, "
            f"min step {steps.min():.3e})")

    unwrapped = angles[0] + np.concatenate([[0.0], np.cumsum(steps[:-1])])
    two_pi = 2.0 * math.pi
    inverse = PchipInterpolator(
        np.concatenate([unwrapped - two_pi, unwrapped, unwrapped + two_pi]),
        np.concatenate([t - period, t, t + period]))
    theta = two_pi * np.arange(samples) / samples
    # keep targets inside the extended interpolation range
    targets = unwrapped[0] + np.mod(theta - unwrapped[0], two_pi)
    params = inverse(targets)
    for _ in range(NEWTON_STEPS):
        miss = wrap_to_pi(chord_angle(curve, params) - theta)
        params = params - miss / chord_angle_rate(curve, params)
    params = np.mod(params, period)

    G = curve.point(params) + 0.5 * D * inward_normal(curve, params)
    dG = _five_point_derivative(G, two_pi / samples)
    r = -np.sin(theta) * dG[:, 0] + np.cos(theta) * dG[:, 1]
    orthogonality = np.cos(theta) * dG[:, 0] + np.sin(theta) * dG[:, 1]
    logger.info(f"recovered midpoint curve on {samples} angles, "
                f"orthogonality defect {np.max(np.abs(orthogonality)):.3e}")
    return MidpointRecovery(theta=theta, params=params, G=G, r=r,
                            orthogonality=orthogonality,
                            max_normal_residual=float(residuals[worst]))


@dataclass
class SquareCenterReport:
    """Square-center cross-check against the diametral chord and the recovered G."""

    D: float
    records: list
    escape_bases: list
    consistent: bool

    def to_dict(self):
        return {
            'D': self.D,
            'consistent': bool(self.consistent),
            'escape_bases': [float(b) for b in self.escape_bases],
            'records': self.records,
        }


def check_square_center_property(curve, D, opts=None):
    """At bases with a unique inscribed square of side D/sqrt(2), compare it to the diametral chord.

    Args:
        curve (Curve): C(D) curve.
        D (float): Diameter.
        opts (VerificationOptions, optional): Grids and tolerances.

    Returns:
        SquareCenterReport: Per-base errors and the bases whose square count is not 1.
    """
    opts = (opts or VerificationOptions()).resolve(D)
    side = D / math.sqrt(2.0)
    report = check_cn(curve, 4, side, opts)
    recovery = recover_midpoint_curve(curve, D, opts=opts)
    two_pi = 2.0 * math.pi
    recovered_G = CubicSpline(np.append(recovery.theta, two_pi),
                              np.vstack([recovery.G, recovery.G[:1]]), bc_type='periodic')
    records, escapes, consistent = [], [], True
    for record in report.records:
        entry = {'base': record.base, 'count': record.count}
        if record.count != 1:
            escapes.append(record.base)
        else:
            witness = record.witnesses[0]
            x = curve.point(record.base)
            y = x + D * inward_normal(curve, record.base)
            entry['diagonal_error'] = float(np.linalg.norm(witness.vertices[2] - y))
            entry['center_error'] = float(np.linalg.norm(witness.center - 0.5 * (x + y)))
            G = recovered_G(np.mod(chord_angle(curve, record.base), two_pi))
            entry['midpoint_error'] = float(np.linalg.norm(witness.center - G))
            if max(entry['diagonal_error'], entry['center_error']) >= opts.membership_tol:
                consistent = False
            if entry['midpoint_error'] >= opts.uniq_tol:
                consistent = False
        records.append(entry)
    logger.info(f"square-center check: {len(escapes)} of {len(records)} bases without a unique square")
    return SquareCenterReport(D=float(D), records=records, escape_bases=escapes,
                              consistent=consistent)


def detect_corners(curve):
    """Corners of ``curve`` as (parameter, exterior turning angle) pairs.

    Arc chains report every junction whose tangent jump exceeds 1e-6 rad.
    Smooth curves must show a maximum tangent-angle step that halves with the
    grid spacing; otherwise the largest step is reported as a suspected corner.
    """
    chain = arc_chain(curve)
    if isinstance(chain, PiecewiseArcCurve):
        turning = chain.turning_angles()
        return [(float(u), float(a)) for u, a in zip(chain.junctions, turning)
                if abs(a) > CORNER_TOL]

    def max_step(samples):
        angles = tangent_angle(curve, native_grid(curve, samples))
        steps = np.abs(wrap_to_pi(np.diff(np.append(angles, angles[0]))))
        return steps.max(), int(steps.argmax())

    fine, where = max_step(CORNER_FINE)
    coarse, _ = max_step(CORNER_COARSE)
    if fine == 0.0 or coarse / fine > CORNER_RATIO:
        return []
    logger.warning(f"tangent angle step does not shrink with the grid ({coarse:.3e} vs {fine:.3e})")
    return [(float(curve.period * (where + 0.5) / CORNER_FINE), float(fine))]


@dataclass
class SummaryConditions:
    """Defects of the three facts every Fourier C(D) curve satisfies."""

    chord_defect: float
    normal_defect: float
    curvature_margin: float

    def holds(self, tol=1e-12):
        return self.chord_defect < tol and self.normal_defect < tol and self.curvature_margin > 0

    def to_dict(self):
        return {
            'chord_defect': self.chord_defect,
            'normal_defect': self.normal_defect,
            'curvature_margin': self.curvature_margin,
        }


def check_summary_conditions(curve, D, samples=1024):
    """Chord length D at opposite parameters, tangent normal to that chord, curvature > 1/D.

    Args:
        curve (Curve): Curve parametrized so that opposite points are half a period apart.
        D (float): Diameter.
        samples (int): Grid size.

    Returns:
        SummaryConditions: max |chord - D|, max |cos(tangent, chord)|, min curvature - 1/D.
    """
    u = native_grid(curve, samples)
    diff = curve.point(u) - curve.point(u + 0.5 * curve.period)
    d1 = curve.point(u, 1)
    length = norms(diff)
    cosine = np.abs(np.sum(d1 * diff, axis=-1)) / (norms(d1) * length)
    return SummaryConditions(
        chord_defect=float(np.max(np.abs(length - D))),
        normal_defect=float(np.max(cosine)),
        curvature_margin=float(np.min(curvature(curve, u)) - 1.0 / D),
    )
