#!/usr/bin/env python3
"""
Counterexample Probe for constwidth

Searches Fourier coefficient families for non-circular curves that have both
C(D) and C_n(Dside). The penalty is a mean-square defect of the two
properties on coarse grids; coefficients live on a sphere of radius delta so
the circle is never in the search set. Results are lower-bound reports: a
positive best penalty says nothing about nonexistence.
"""

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from config import parallel_map
from curves import CurveError, TrigTerm, make_constant_diameter, make_rotor
from geometry import chord_maxima, nearest_points, native_grid
from verify import (
    VerificationError, VerificationOptions, candidate_polygons, check_cn,
    check_constant_diameter, distance_solutions, merge_maxima, recover_midpoint_curve,
)


logger = logging.getLogger(__name__)

PROFILE = 'constant_diameter_profile'
ROTOR = 'rotor_displacement'
FAMILY_PREFIXES = {'trig': PROFILE, 'rotor': ROTOR}
UNCONSTRUCTIBLE_FACTOR = 10.0
DELTA_FRACTION = 0.05


def probe_options(bases=128, offsets=512, nearest_grid=1024):
    """Coarse verification grids used inside the penalty."""
    return VerificationOptions(theta_samples=bases, phi_samples=offsets,
                               nearest_grid=nearest_grid)


@dataclass(frozen=True)
class ProbeFamily:
    """Coefficient family searched by the probe.

    ``constant_diameter_profile``: odd harmonics >= 3, two coefficients each.
    ``rotor_displacement``: frequencies that are multiples of ``order``, four
    coefficients each (sine and cosine for both coordinates of G).
    """

    kind: str
    D: float
    harmonics: tuple
    order: int = 2
    delta: float = None

    def __post_init__(self):
        if self.kind not in (PROFILE, ROTOR):
            raise ValueError(f"unknown probe family kind {self.kind!r}")
        if not self.D > 0:
            raise ValueError(f"D must be positive, got {self.D!r}")
        if len(self.harmonics) == 0:
            raise ValueError("a probe family needs at least one free coefficient")
        object.__setattr__(self, 'harmonics', tuple(int(h) for h in self.harmonics))
        if self.kind == PROFILE:
            for m in self.harmonics:
                TrigTerm(m)
        else:
            if self.order < 3:
                raise ValueError(f"rotor families need order >= 3, got {self.order}")
            for freq in self.harmonics:
                if freq <= 0 or freq % self.order:
                    raise ValueError(f"frequency {freq} is not a positive multiple of {self.order}")
        if self.delta is None:
            object.__setattr__(self, 'delta', DELTA_FRACTION * self.D)
        if not self.delta > 0:
            raise ValueError(f"delta must be positive, got {self.delta!r}")

    @classmethod
    def parse(cls, text, D, n=None, delta=None):
        """Parse ``trig:3,5`` or ``rotor:4,8`` (rotor order taken from ``n``)."""
        prefix, _, rest = text.partition(':')
        if prefix not in FAMILY_PREFIXES or not rest:
            raise ValueError(f"family must look like trig:3,5 or rotor:4,8, got {text!r}")
        try:
            harmonics = tuple(int(part) for part in rest.split(','))
        except ValueError:
            raise ValueError(f"family harmonics must be integers, got {rest!r}")
        kind = FAMILY_PREFIXES[prefix]
        order = int(n) if kind == ROTOR and n is not None else 2
        return cls(kind=kind, D=float(D), harmonics=harmonics, order=order, delta=delta)

    @property
    def dims(self):
        return len(self.harmonics) * (2 if self.kind == PROFILE else 4)

    def project(self, z):
        """Scale ``z`` onto the coefficient sphere of radius delta."""
        z = np.asarray(z, dtype=float)
        norm = np.linalg.norm(z)
        if norm == 0.0:
            z = np.zeros(self.dims)
            z[0] = 1.0
            norm = 1.0
        return self.delta * z / norm

    def curve_for(self, coeffs, side=None):
        """Build the curve for a coefficient vector.

        Raises:
            CurveError: The coefficients are not constructible.
        """
        c = np.asarray(coeffs, dtype=float)
        if self.kind == PROFILE:
            terms = [TrigTerm(m, c[2 * i], c[2 * i + 1]) for i, m in enumerate(self.harmonics)]
            return make_constant_diameter(self.D, terms)
        gx = [(f, c[4 * i], c[4 * i + 1]) for i, f in enumerate(self.harmonics)]
        gy = [(f, c[4 * i + 2], c[4 * i + 3]) for i, f in enumerate(self.harmonics)]
        return make_rotor(self.order, side if side is not None else self.D, gx, gy)

    def to_dict(self):
        return {'kind': self.kind, 'D': self.D, 'harmonics': list(self.harmonics),
                'order': self.order, 'delta': self.delta}


def _diameter_term(curve, D, opts):
    bases = native_grid(curve, opts.theta_samples)
    rows, phi, values = chord_maxima(curve, bases, opts.phi_samples)
    spacing = 2.0 * curve.period / opts.phi_samples
    total = 0.0
    for i in range(len(bases)):
        sel = rows == i
        _, merged = merge_maxima(phi[sel], values[sel], spacing, curve.period)
        if merged.size == 0:
            total += D ** 2
            continue
        merged = np.sort(merged)[::-1]
        violation = 0.0
        if merged.size > 1:
            violation = max(0.0, float(merged[1]) - (D - opts.uniq_tol))
        total += (float(merged[0]) - D) ** 2 + violation ** 2
    return total / len(bases)


def _polygon_term(curve, n, side, opts):
    bases = native_grid(curve, opts.theta_samples)
    solutions = distance_solutions(curve, bases, side, opts)
    polygons = candidate_polygons(curve, solutions, n, side)
    energies = {}
    if polygons:
        verts = np.concatenate([p[1] for p in polygons])
        _, dists = nearest_points(curve, verts, grid=opts.nearest_grid)
        energy = np.sum(dists.reshape(len(polygons), n) ** 2, axis=1)
        for (base, _, _, _), value in zip(polygons, energy):
            energies[base] = min(energies.get(base, math.inf), float(value))
    # no candidate second vertex: capped at side^2
    return sum(energies.get(float(b), side ** 2) for b in bases) / len(bases)


def penalty_terms(curve, D, n, side, opts=None):
    """The two components of the probe penalty.

    Args:
        curve (Curve): Curve to score.
        D (float): Diameter target for C(D).
        n (int): Polygon order for C_n.
        side (float): Polygon edge length.
        opts (VerificationOptions, optional): Defaults to the coarse probe grids.

    Returns:
        tuple: (diameter term, polygon term), both >= 0.
    """
    opts = opts or probe_options()
    cd = _diameter_term(curve, D, opts.resolve(D))
    ngon = _polygon_term(curve, n, side, opts.resolve(side))
    return cd, ngon


def penalty(curve, D, n, side, opts=None):
    """Mean-square defect of C(D) plus C_n(side); zero iff both hold at grid resolution."""
    cd, ngon = penalty_terms(curve, D, n, side, opts)
    return cd + ngon


@dataclass(frozen=True)
class TraceEntry:
    evaluation: int
    restart: int
    penalty: float
    cd_term: float
    ngon_term: float
    best: float


@dataclass
class ProbeResult:
    """Best point found by counterexample_search and the full evaluation trace."""

    family: ProbeFamily
    n: int
    side: float
    seed: int
    best_coefficients: list
    best_penalty: float
    evaluations: int
    trace: list = field(default_factory=list)

    def to_dict(self):
        return {
            'family': self.family.to_dict(),
            'n': self.n,
            'side': self.side,
            'seed': self.seed,
            'best_coefficients': [float(c) for c in self.best_coefficients],
            'best_penalty': self.best_penalty,
            'evaluations': self.evaluations,
            'max_cd_term': max((e.cd_term for e in self.trace), default=0.0),
        }

    def trace_rows(self):
        """Rows (evaluation, restart, penalty, cd_term, ngon_term, best) for CSV export."""
        return [(e.evaluation, e.restart, e.penalty, e.cd_term, e.ngon_term, e.best)
                for e in self.trace]


def _scored(family, coeffs, n, side, opts):
    try:
        curve = family.curve_for(coeffs, side)
    except CurveError as e:
        logger.debug(f"unconstructible probe point: {e}")
        return UNCONSTRUCTIBLE_FACTOR * family.D ** 2, 0.0
    return penalty_terms(curve, family.D, n, side, opts)


def counterexample_search(family, n, side, iterations=500, restarts=1, seed=0, opts=None):
    """Minimize the penalty over the coefficient sphere with Nelder-Mead and random restarts.

    Args:
        family (ProbeFamily): Coefficient family.
        n (int): Polygon order.
        side (float): Polygon edge length.
        iterations (int): Function evaluations per restart.
        restarts (int): Independent starts (run in parallel).
        seed (int): Seed of the restart generator.
        opts (VerificationOptions, optional): Penalty grids.

    Returns:
        ProbeResult: Best coefficients and the best-so-far trace.
    """
    opts = opts or probe_options()
    streams = np.random.SeedSequence(seed).spawn(restarts)

    def run(indexed):
        index, stream = indexed
        rng = np.random.default_rng(stream)
        rows = []

        def objective(z):
            coeffs = family.project(z)
            cd, ngon = _scored(family, coeffs, n, side, opts)
            rows.append((coeffs, cd + ngon, cd, ngon))
            return cd + ngon

        minimize(objective, rng.standard_normal(family.dims), method='Nelder-Mead',
                 options={'maxfev': iterations, 'maxiter': iterations,
                          'xatol': 1e-12, 'fatol': 0.0})
        logger.info(f"restart {index}: {len(rows)} evaluations, "
                    f"best {min(r[1] for r in rows):.3e}")
        return index, rows

    runs = parallel_map(run, list(enumerate(streams)))

    trace = []
    best_value, best_coeffs = math.inf, None
    for index, rows in runs:
        for coeffs, value, cd, ngon in rows:
            if value < best_value:
                best_value, best_coeffs = value, coeffs
            trace.append(TraceEntry(evaluation=len(trace), restart=index, penalty=value,
                                    cd_term=cd, ngon_term=ngon, best=best_value))
    return ProbeResult(family=family, n=int(n), side=float(side), seed=int(seed),
                       best_coefficients=list(best_coeffs), best_penalty=best_value,
                       evaluations=len(trace), trace=trace)


@dataclass
class C2nReport:
    """Joint C(D) / C_2n(D sin(pi/2n)) check and the G(theta + pi/n) periodicity defect."""

    n: int
    D: float
    side: float
    cd_report: object
    cn_report: object
    periodicity_defect: float
    recovery_error: str = None

    @property
    def cd_defect(self):
        return self.cd_report.max_deviation

    @property
    def cn_defect(self):
        records = self.cn_report.records
        return sum(1 for r in records if r.count != 1) / len(records)

    def all_vanish(self, tol=1e-9):
        return max(self.cd_defect, self.cn_defect, self.periodicity_defect) < tol

    def to_dict(self):
        return {
            'n': self.n,
            'D': self.D,
            'side': self.side,
            'cd_passed': bool(self.cd_report.passed),
            'cn_passed': bool(self.cn_report.passed),
            'cd_defect': self.cd_defect,
            'cn_defect': self.cn_defect,
            'periodicity_defect': self.periodicity_defect if math.isfinite(self.periodicity_defect) else None,
            'recovery_error': self.recovery_error,
        }


def probe_c2n(curve, D, n, opts=None, samples=1024):
    """Evaluate C(D), C_2n(D sin(pi/2n)) and max ||G(theta + pi/n) - G(theta)||.

    Args:
        curve (Curve): Curve to probe.
        D (float): Diameter.
        n (int): Half the polygon order, >= 2.
        opts (VerificationOptions, optional): Verification grids.
        samples (int): Recovery grid size, rounded up to a multiple of 2n.

    Returns:
        C2nReport: The three defects; all vanish for the circle.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    side = D * math.sin(math.pi / (2 * n))
    samples = 2 * n * math.ceil(samples / (2 * n))
    cd_report = check_constant_diameter(curve, D, opts)
    cn_report = check_cn(curve, 2 * n, side, opts)
    try:
        recovery = recover_midpoint_curve(curve, D, samples, opts)
        defect, error = recovery.periodicity_defect(math.pi / n), None
    except VerificationError as e:
        defect, error = math.inf, str(e)
    return C2nReport(n=int(n), D=float(D), side=side, cd_report=cd_report,
                     cn_report=cn_report, periodicity_defect=defect, recovery_error=error)
