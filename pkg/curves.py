#!/usr/bin/env python3
"""
Curve Families for constwidth

Constructs and evaluates the plane curves handled by the toolkit:

- constant-diameter curves gamma(theta) = G(theta) + (D/2)(cos, sin), seeded
  by a profile r(theta) made of odd harmonics >= 3,
- rotor curves gamma(theta) = G(theta) + R(cos, sin) where G has period 2*pi/n,
  which carry a regular n-gon of side D inscribed at every point,
- Reuleaux polygons and their rounded two-radius variants,
- circle and ellipse fixtures (negative/positive controls for verification).

Every curve is immutable and counterclockwise. ``Curve.point`` evaluates in the
curve's native parameter (theta for Fourier families, normalized arc length
for arc chains); ``Curve.eval`` is the uniform facade over t in [0, 1).
"""

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from numerics import grid_local_maxima, wrap_to_pi


logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
AMPLITUDE_GRID = 4096
AMPLITUDE_MARGIN = 1e-9
CLOSURE_TOL = 1e-12


class CurveError(ValueError):
    """Base class for curve construction errors."""


class HarmonicViolation(CurveError):
    """A profile harmonic is even, or smaller than 3."""


class AmplitudeViolation(CurveError):
    """The profile reaches D/2 in absolute value."""

    def __init__(self, message, theta, value):
        super().__init__(message)
        self.theta = theta
        self.value = value


class BadOrder(CurveError):
    """A polygon order below the supported minimum."""


class FrequencyViolation(CurveError):
    """A rotor displacement frequency that is not a positive multiple of n."""


class GuardViolation(CurveError):
    """Rotor displacement too large for the construction guard."""

    def __init__(self, message, bound, limit):
        super().__init__(message)
        self.bound = bound
        self.limit = limit


class EvenOrder(CurveError):
    """Reuleaux polygons need an odd number of vertices."""


class BadRadius(CurveError):
    """Corner radius outside [0, D/2)."""


def _require_positive(name, value):
    if not value > 0 or not math.isfinite(value):
        raise CurveError(f"{name} must be a positive finite number, got {value}")


def _unit(angle, order=0):
    """Derivative of order ``order`` of (cos, sin) at ``angle``."""
    shifted = np.asarray(angle, dtype=float) + order * (math.pi / 2.0)
    return np.cos(shifted), np.sin(shifted)


# ---------------------------------------------------------------------------
# Fourier building blocks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FourierSeries:
    """Real series  sum_k s_k sin(f_k x) + c_k cos(f_k x)  (no constant term)."""

    freqs: tuple = ()
    sin_coeffs: tuple = ()
    cos_coeffs: tuple = ()

    @classmethod
    def from_terms(cls, terms):
        """Build a series from (freq, sin, cos) triples, merging equal frequencies.

        Args:
            terms (iterable): Triples (frequency, sine coefficient, cosine coefficient).

        Returns:
            FourierSeries: Series sorted by frequency, zero terms dropped.
        """
        merged = {}
        for freq, s, c in terms:
            prev_s, prev_c = merged.get(freq, (0.0, 0.0))
            merged[freq] = (prev_s + float(s), prev_c + float(c))
        kept = [(f, s, c) for f, (s, c) in sorted(merged.items()) if s != 0.0 or c != 0.0]
        return cls(
            tuple(f for f, _, _ in kept),
            tuple(s for _, s, _ in kept),
            tuple(c for _, _, c in kept),
        )

    def terms(self):
        """Return the series as a list of (freq, sin, cos) triples."""
        return list(zip(self.freqs, self.sin_coeffs, self.cos_coeffs))

    def __call__(self, x, order=0):
        x = np.asarray(x, dtype=float)
        if not self.freqs:
            return np.zeros_like(x)
        freqs = np.asarray(self.freqs, dtype=float)
        phase = np.multiply.outer(x, freqs)
        if order:
            phase = phase + order * (math.pi / 2.0)
        scale = freqs ** order
        return (np.sin(phase) @ (scale * np.asarray(self.sin_coeffs))
                + np.cos(phase) @ (scale * np.asarray(self.cos_coeffs)))


@dataclass(frozen=True)
class TrigTerm:
    """One profile term a*sin(m*theta) + b*cos(m*theta) with m odd, m >= 3."""

    m: int
    a: float = 0.0
    b: float = 0.0

    def __post_init__(self):
        m = self.m
        if isinstance(m, bool) or not isinstance(m, (int, float, np.integer)) or int(m) != m:
            raise HarmonicViolation(f"harmonic index must be an integer, got {m!r}")
        m = int(m)
        if m < 3 or m % 2 == 0:
            raise HarmonicViolation(
                f"harmonic m={m} is not admissible: profile harmonics must be odd and >= 3")
        object.__setattr__(self, 'm', m)
        object.__setattr__(self, 'a', float(self.a))
        object.__setattr__(self, 'b', float(self.b))


def _as_terms(terms):
    result = []
    for term in terms:
        if isinstance(term, TrigTerm):
            result.append(term)
        elif isinstance(term, dict):
            result.append(TrigTerm(**term))
        else:
            result.append(TrigTerm(*term))
    return tuple(result)


def integrate_profile(terms):
    """Integrate G'(theta) = r(theta) * (-sin(theta), cos(theta)) term by term.

    For a term a*sin(m t) + b*cos(m t) the product-to-sum expansion gives only
    the even harmonics m-1 and m+1, so G has no drift and G(t + pi) = G(t).

    Args:
        terms (iterable): TrigTerm objects (or dicts with m, a, b).

    Returns:
        tuple: (gx, gy) FourierSeries of the two coordinates of G.
    """
    gx, gy = [], []
    for term in _as_terms(terms):
        p, q = term.m + 1, term.m - 1
        a, b = term.a, term.b
        gx.append((p, a / (2 * p), b / (2 * p)))
        gx.append((q, -a / (2 * q), -b / (2 * q)))
        gy.append((p, b / (2 * p), -a / (2 * p)))
        gy.append((q, b / (2 * q), -a / (2 * q)))
    return FourierSeries.from_terms(gx), FourierSeries.from_terms(gy)


def differentiate_profile(gx, gy, rel_tol=1e-12):
    """Recover profile terms from G via r = <G', (-sin, cos)>.

    Args:
        gx (FourierSeries): First coordinate of G.
        gy (FourierSeries): Second coordinate of G.
        rel_tol (float): Coefficients below rel_tol * largest are treated as zero.

    Returns:
        list: TrigTerm objects sorted by harmonic.

    Raises:
        HarmonicViolation: G does not come from an admissible profile.
    """
    acc = {}

    def add(m, s, c):
        prev_s, prev_c = acc.get(m, (0.0, 0.0))
        acc[m] = (prev_s + s, prev_c + c)

    for k, s, c in gx.terms():
        # -sin(t) * k (s cos kt - c sin kt)
        add(k + 1, -0.5 * k * s, -0.5 * k * c)
        add(k - 1, 0.5 * k * s, 0.5 * k * c)
    for k, s, c in gy.terms():
        # cos(t) * k (s cos kt - c sin kt)
        add(k + 1, -0.5 * k * c, 0.5 * k * s)
        add(k - 1, -0.5 * k * c, 0.5 * k * s)

    # sin(0 * t) vanishes identically
    if 0 in acc:
        acc[0] = (0.0, acc[0][1])
    scale = max([abs(v) for pair in acc.values() for v in pair] + [0.0])
    terms = []
    for m in sorted(acc):
        a, b = acc[m]
        if abs(a) <= rel_tol * scale and abs(b) <= rel_tol * scale:
            continue
        terms.append(TrigTerm(m, a, b))
    return terms


# ---------------------------------------------------------------------------
# Curve interface
# ---------------------------------------------------------------------------

class Curve(ABC):
    """Closed counterclockwise plane curve with exact derivatives."""

    period = TWO_PI

    @property
    @abstractmethod
    def scale(self):
        """Characteristic length used to scale tolerances."""

    @property
    def junctions(self):
        """Native parameters where the curve is only piecewise smooth."""
        return np.empty(0)

    @abstractmethod
    def point(self, u, order=0):
        """Evaluate the curve or a derivative at native parameter(s) ``u``.

        Args:
            u (float or ndarray): Native parameter(s).
            order (int): 0 for position, 1 or 2 for derivatives.

        Returns:
            ndarray: Array of shape u.shape + (2,).
        """

    def exact_curvature(self, u):
        """Closed-form curvature when the family has one, else None."""
        return None

    def eval(self, t, order=0):
        """Evaluate at normalized parameter t (wrapped mod 1).

        Derivatives are taken with respect to the native parameter.
        """
        if order not in (0, 1, 2):
            raise ValueError(f"order must be 0, 1 or 2, got {order}")
        t = np.mod(np.asarray(t, dtype=float), 1.0)
        return self.point(t * self.period, order)


@dataclass(frozen=True, eq=False)
class Circle(Curve):
    """Circle fixture, parametrized by polar angle."""

    radius: float
    center: tuple = (0.0, 0.0)

    def __post_init__(self):
        _require_positive('radius', self.radius)

    @property
    def scale(self):
        return 2.0 * self.radius

    def point(self, u, order=0):
        cos_u, sin_u = _unit(u, order)
        x = self.radius * cos_u
        y = self.radius * sin_u
        if order == 0:
            x = x + self.center[0]
            y = y + self.center[1]
        return np.stack([x, y], axis=-1)

    def exact_curvature(self, u):
        return np.full(np.shape(u), 1.0 / self.radius)


@dataclass(frozen=True, eq=False)
class Ellipse(Curve):
    """Axis-aligned ellipse fixture (a*cos, b*sin); never of constant width unless a == b."""

    a: float
    b: float

    def __post_init__(self):
        _require_positive('a', self.a)
        _require_positive('b', self.b)

    @property
    def scale(self):
        return 2.0 * max(self.a, self.b)

    def point(self, u, order=0):
        cos_u, sin_u = _unit(u, order)
        return np.stack([self.a * cos_u, self.b * sin_u], axis=-1)


@dataclass(frozen=True, eq=False)
class ConstantDiameterCurve(Curve):
    """gamma(theta) = G(theta) + (D/2)(cos, sin) with G' = r * (-sin, cos)."""

    D: float
    terms: tuple
    r: FourierSeries
    gx: FourierSeries
    gy: FourierSeries

    @property
    def scale(self):
        return self.D

    @property
    def g_terms(self):
        return self.gx, self.gy

    def profile(self, theta, order=0):
        """Evaluate r(theta) or one of its derivatives."""
        return self.r(theta, order)

    def midpoint(self, theta, order=0):
        """Evaluate the midpoint curve G(theta) or one of its derivatives."""
        return np.stack([self.gx(theta, order), self.gy(theta, order)], axis=-1)

    def point(self, u, order=0):
        u = np.asarray(u, dtype=float)
        half = 0.5 * self.D
        if order == 0:
            cos_u, sin_u = _unit(u)
            return np.stack([self.gx(u) + half * cos_u, self.gy(u) + half * sin_u], axis=-1)
        # G' = r(-sin, cos) keeps the derivatives aligned with the moving frame
        speed = self.r(u) + half
        cos_u, sin_u = _unit(u)
        if order == 1:
            return np.stack([-speed * sin_u, speed * cos_u], axis=-1)
        slope = self.r(u, 1)
        return np.stack([-slope * sin_u - speed * cos_u,
                         slope * cos_u - speed * sin_u], axis=-1)


@dataclass(frozen=True)
class RotorSpec:
    """Seed of a rotor curve: order n, polygon side D and displacement G."""

    n: int
    D: float
    gx: FourierSeries
    gy: FourierSeries

    @property
    def R(self):
        """Circumradius of the regular n-gon of side D."""
        return self.D / (2.0 * math.sin(math.pi / self.n))


@dataclass(frozen=True, eq=False)
class RotorCurve(Curve):
    """gamma(theta) = G(theta) + R(cos, sin) with G of period 2*pi/n."""

    spec: RotorSpec

    @property
    def scale(self):
        return 2.0 * self.spec.R

    def point(self, u, order=0):
        u = np.asarray(u, dtype=float)
        cos_u, sin_u = _unit(u, order)
        R = self.spec.R
        return np.stack([self.spec.gx(u, order) + R * cos_u,
                         self.spec.gy(u, order) + R * sin_u], axis=-1)


# ---------------------------------------------------------------------------
# Arc chains
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ArcSegment:
    """Counterclockwise circular arc from start_angle to end_angle."""

    center: tuple
    radius: float
    start_angle: float
    end_angle: float

    def __post_init__(self):
        _require_positive('radius', self.radius)
        if not self.end_angle > self.start_angle:
            raise CurveError("arc end angle must exceed its start angle")
        if self.end_angle - self.start_angle >= TWO_PI:
            raise CurveError("arc sweep must be below 2*pi")

    @property
    def sweep(self):
        return self.end_angle - self.start_angle

    @property
    def length(self):
        return self.radius * self.sweep

    def point_at(self, angle):
        return (self.center[0] + self.radius * math.cos(angle),
                self.center[1] + self.radius * math.sin(angle))

    @property
    def start_point(self):
        return self.point_at(self.start_angle)

    @property
    def end_point(self):
        return self.point_at(self.end_angle)


@dataclass(frozen=True, eq=False)
class PiecewiseArcCurve(Curve):
    """Closed chain of counterclockwise arcs, parametrized by normalized arc length."""

    arcs: tuple
    D: float
    period = 1.0
    junction_params: np.ndarray = field(init=False, repr=False)
    _centers: np.ndarray = field(init=False, repr=False)
    _radii: np.ndarray = field(init=False, repr=False)
    _starts: np.ndarray = field(init=False, repr=False)
    _sweeps: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if len(self.arcs) < 2:
            raise CurveError("an arc chain needs at least two arcs")
        lengths = np.array([arc.length for arc in self.arcs])
        params = np.concatenate([[0.0], np.cumsum(lengths) / lengths.sum()])
        params[-1] = 1.0
        object.__setattr__(self, 'junction_params', params)
        object.__setattr__(self, '_centers', np.array([arc.center for arc in self.arcs], dtype=float))
        object.__setattr__(self, '_radii', np.array([arc.radius for arc in self.arcs]))
        object.__setattr__(self, '_starts', np.array([arc.start_angle for arc in self.arcs]))
        object.__setattr__(self, '_sweeps', np.array([arc.sweep for arc in self.arcs]))
        self._check_closure()

    def _check_closure(self):
        mismatch = 0.0
        for i, arc in enumerate(self.arcs):
            nxt = self.arcs[(i + 1) % len(self.arcs)]
            mismatch += math.dist(arc.end_point, nxt.start_point)
        if mismatch >= CLOSURE_TOL * self.D:
            raise CurveError(f"arc chain does not close: cumulative junction mismatch {mismatch:.3e}")
        turning = float(np.sum(self._sweeps) + np.sum(self.turning_angles()))
        if abs(turning - TWO_PI) > 1e-9:
            raise CurveError(f"arc chain total turning is {turning:.12f}, expected 2*pi")

    @property
    def scale(self):
        return self.D

    @property
    def length(self):
        return float(np.sum(self._radii * self._sweeps))

    @property
    def junctions(self):
        return self.junction_params[:-1].copy()

    @property
    def centers(self):
        """Distinct arc centers, in order of first appearance."""
        seen = []
        for arc in self.arcs:
            if not any(math.dist(arc.center, c) < CLOSURE_TOL * self.D for c in seen):
                seen.append(arc.center)
        return seen

    def turning_angles(self):
        """Exterior tangent jump at each junction (start of arc i minus end of arc i-1)."""
        ends = np.roll(self._starts + self._sweeps, 1)
        return wrap_to_pi(self._starts - ends)

    def _locate(self, u):
        u = np.mod(np.asarray(u, dtype=float), 1.0)
        idx = np.searchsorted(self.junction_params, u, side='right') - 1
        idx = np.clip(idx, 0, len(self.arcs) - 1)
        span = self.junction_params[idx + 1] - self.junction_params[idx]
        local = (u - self.junction_params[idx]) / span
        return idx, local, span

    def point(self, u, order=0):
        idx, local, span = self._locate(u)
        angle = self._starts[idx] + local * self._sweeps[idx]
        radius = self._radii[idx]
        rate = self._sweeps[idx] / span
        cos_a, sin_a = _unit(angle, order)
        factor = radius * rate ** order
        x = factor * cos_a
        y = factor * sin_a
        if order == 0:
            x = x + self._centers[idx, 0]
            y = y + self._centers[idx, 1]
        return np.stack([x, y], axis=-1)

    def exact_curvature(self, u):
        idx, _, _ = self._locate(u)
        return 1.0 / self._radii[idx]


@dataclass(frozen=True, eq=False)
class TransformedCurve(Curve):
    """Rigid motion (rotation by ``angle`` then translation by ``shift``) of a curve."""

    base: Curve
    angle: float = 0.0
    shift: tuple = (0.0, 0.0)

    @property
    def period(self):
        return self.base.period

    @property
    def scale(self):
        return self.base.scale

    @property
    def junctions(self):
        return self.base.junctions

    def point(self, u, order=0):
        p = self.base.point(u, order)
        c, s = math.cos(self.angle), math.sin(self.angle)
        x = c * p[..., 0] - s * p[..., 1]
        y = s * p[..., 0] + c * p[..., 1]
        if order == 0:
            x = x + self.shift[0]
            y = y + self.shift[1]
        return np.stack([x, y], axis=-1)

    def exact_curvature(self, u):
        return self.base.exact_curvature(u)


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------

def profile_max_abs(r):
    """Locate max |r(theta)| by a 4096-point grid plus bounded refinement.

    Args:
        r (FourierSeries): Profile.

    Returns:
        tuple: (max |r|, theta where it is reached).
    """
    if not r.freqs:
        return 0.0, 0.0
    theta = TWO_PI * np.arange(AMPLITUDE_GRID) / AMPLITUDE_GRID
    values = np.abs(r(theta))
    step = TWO_PI / AMPLITUDE_GRID
    best_value, best_theta = float(values.max()), float(theta[values.argmax()])
    for i in grid_local_maxima(values)[0]:
        res = minimize_scalar(lambda x: -abs(float(r(x))),
                              bounds=(theta[i] - step, theta[i] + step),
                              method='bounded', options={'xatol': 1e-12})
        if -res.fun > best_value:
            best_value, best_theta = float(-res.fun), float(res.x) % TWO_PI
    return best_value, best_theta


def make_constant_diameter(D, terms=()):
    """Build the constant-diameter curve seeded by an odd-harmonic profile.

    Args:
        D (float): Diameter.
        terms (iterable): TrigTerm objects (or dicts with m, a, b).

    Returns:
        ConstantDiameterCurve: Curve with property C(D).

    Raises:
        HarmonicViolation: Even harmonic or m < 3.
        AmplitudeViolation: max |r| >= D/2 (within a 1e-9*D margin).
    """
    _require_positive('D', D)
    terms = _as_terms(terms)
    r = FourierSeries.from_terms((t.m, t.a, t.b) for t in terms)
    peak, where = profile_max_abs(r)
    if peak >= 0.5 * D - AMPLITUDE_MARGIN * D:
        raise AmplitudeViolation(
            f"max |r| = {peak:.12g} at theta = {where:.12g} is not below D/2 = {0.5 * D:.12g}",
            theta=where, value=peak)
    gx, gy = integrate_profile(terms)
    logger.debug(f"constant-diameter curve D={D} with {len(terms)} terms, max|r|={peak:.6g}")
    return ConstantDiameterCurve(D=float(D), terms=terms, r=r, gx=gx, gy=gy)


def _rotor_series(n, coeffs, name):
    triples = []
    for entry in coeffs or ():
        if isinstance(entry, dict):
            triple = (entry.get('freq'), entry.get('a', 0.0), entry.get('b', 0.0))
        else:
            triple = tuple(entry)
        freq = triple[0]
        if isinstance(freq, bool) or not isinstance(freq, (int, float, np.integer)) \
                or int(freq) != freq or freq <= 0 or int(freq) % n != 0:
            raise FrequencyViolation(
                f"{name}: frequency {freq!r} is not a positive multiple of n={n}")
        triples.append((int(freq), float(triple[1]), float(triple[2])))
    return FourierSeries.from_terms(triples)


def rotor_guard(spec):
    """Return (bound, limit) of the rotor smallness guard.

    bound = sum|coeffs| + sum freq*|coeffs| over both coordinates of G,
    limit = R*cos(pi/n).
    """
    bound = 0.0
    for series in (spec.gx, spec.gy):
        for freq, s, c in series.terms():
            bound += (1.0 + freq) * (abs(s) + abs(c))
    return bound, spec.R * math.cos(math.pi / spec.n)


def make_rotor(n, D, gx=(), gy=()):
    """Build a rotor curve carrying a regular n-gon of side D at every point.

    Args:
        n (int): Polygon order, >= 3.
        D (float): Polygon side.
        gx (iterable): (freq, sin, cos) triples or {freq, a, b} dicts for G_x.
        gy (iterable): Same for G_y.

    Returns:
        RotorCurve: gamma(theta) = G(theta) + R(cos, sin).

    Raises:
        BadOrder: n < 3.
        FrequencyViolation: A frequency is not a positive multiple of n.
        GuardViolation: Displacement too large for the guard.
    """
    if isinstance(n, bool) or int(n) != n or n < 3:
        raise BadOrder(f"rotor order must be an integer >= 3, got {n!r}")
    n = int(n)
    _require_positive('D', D)
    spec = RotorSpec(n=n, D=float(D), gx=_rotor_series(n, gx, 'gx'), gy=_rotor_series(n, gy, 'gy'))
    assert abs(2.0 * spec.R * math.sin(math.pi / n) - spec.D) <= 1e-12 * spec.D
    bound, limit = rotor_guard(spec)
    if bound > limit:
        raise GuardViolation(
            f"displacement guard {bound:.6g} exceeds R*cos(pi/n) = {limit:.6g}",
            bound=bound, limit=limit)
    logger.debug(f"rotor n={n} D={D} R={spec.R:.6g} guard {bound:.3g}/{limit:.3g}")
    return RotorCurve(spec)


def _check_odd_order(n):
    if isinstance(n, bool) or int(n) != n or n < 3:
        raise BadOrder(f"Reuleaux order must be an integer >= 3, got {n!r}")
    if int(n) % 2 == 0:
        raise EvenOrder(f"Reuleaux polygons need an odd number of vertices, got {n}")
    return int(n)


def reuleaux_vertices(n, width):
    """Vertices of the regular n-gon whose longest diagonal is ``width`` (first vertex up)."""
    rho = width / (2.0 * math.cos(math.pi / (2 * n)))
    angles = [math.pi / 2 + TWO_PI * k / n for k in range(n)]
    return [(rho * math.cos(a), rho * math.sin(a)) for a in angles], angles


def make_reuleaux(n, D):
    """Build the Reuleaux n-gon of width D (n odd).

    Each of the n arcs has radius D, sweeps pi/n and is centred at the vertex
    opposite to it; the chain starts at a vertex, so t=0 is a corner.

    Raises:
        EvenOrder: n even.
        BadOrder: n < 3.
    """
    n = _check_odd_order(n)
    _require_positive('D', D)
    vertices, angles = reuleaux_vertices(n, D)
    half = math.pi / (2 * n)
    arcs = []
    for k in range(n):
        start = (angles[k] + math.pi - half) % TWO_PI
        arcs.append(ArcSegment(center=vertices[k], radius=float(D),
                               start_angle=start, end_angle=start + 2 * half))
    return PiecewiseArcCurve(arcs=tuple(arcs), D=float(D))


def make_rounded_reuleaux(n, D, b):
    """Build the tangent-continuous rounded Reuleaux n-gon of width D.

    The inner Reuleaux polygon has width s = D - 2b; arcs of radius b round its
    corners and arcs of radius s + b are centred at the opposite vertices.
    b = 0 returns make_reuleaux(n, D).

    Raises:
        BadRadius: b outside [0, D/2).
    """
    n = _check_odd_order(n)
    _require_positive('D', D)
    if not (0.0 <= b < 0.5 * D):
        raise BadRadius(f"corner radius b={b} must satisfy 0 <= b < D/2 = {0.5 * D}")
    if b == 0:
        return make_reuleaux(n, D)
    s = D - 2.0 * b
    vertices, angles = reuleaux_vertices(n, s)
    half = math.pi / (2 * n)
    m = (n - 1) // 2
    arcs = []
    for k in range(n):
        start = (angles[k] + math.pi - half) % TWO_PI
        arcs.append(ArcSegment(center=vertices[k], radius=s + b,
                               start_angle=start, end_angle=start + 2 * half))
        j = (k + m + 1) % n
        corner = (angles[j] - half) % TWO_PI
        arcs.append(ArcSegment(center=vertices[j], radius=float(b),
                               start_angle=corner, end_angle=corner + 2 * half))
    return PiecewiseArcCurve(arcs=tuple(arcs), D=float(D))


def make_circle(D, center=(0.0, 0.0)):
    """Circle of diameter D."""
    _require_positive('D', D)
    return Circle(radius=0.5 * D, center=(float(center[0]), float(center[1])))


def make_ellipse(a, b):
    """Ellipse with semi-axes a (x) and b (y)."""
    return Ellipse(a=float(a), b=float(b))
