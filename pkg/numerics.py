#!/usr/bin/env python3
"""
Numerical Refiners for constwidth

Vectorized golden-section maximization, bisection root isolation and grid
local-maximum detection. Each routine works on whole arrays of brackets at
once, so a verification pass over hundreds of base points refines all of its
candidates in a few dozen numpy sweeps instead of thousands of scalar calls.
"""

import numpy as np


INV_PHI = (np.sqrt(5.0) - 1.0) / 2.0
PARAM_TOL = 1e-12
MAX_ITERATIONS = 200


def wrap_to_pi(angle):
    """Wrap angles to the interval (-pi, pi].

    Args:
        angle (float or ndarray): Angle(s) in radians.

    Returns:
        ndarray: Wrapped angle(s).
    """
    wrapped = np.mod(np.asarray(angle, dtype=float) + np.pi, 2.0 * np.pi) - np.pi
    return np.where(wrapped == -np.pi, np.pi, wrapped)


def golden_section_max(func, lo, hi, tol=PARAM_TOL, max_iter=MAX_ITERATIONS):
    """Maximize ``func`` independently on every bracket [lo[i], hi[i]].

    ``func`` is called with an array shaped like ``lo`` and must return values
    of the same shape; element i of the argument always belongs to bracket i.
    scipy.optimize.minimize_scalar handles a single bracket, hence this array form.

    Args:
        func (callable): Vectorized objective.
        lo (ndarray): Lower bracket ends.
        hi (ndarray): Upper bracket ends.
        tol (float): Bracket width at which iteration stops.
        max_iter (int): Iteration cap.

    Returns:
        tuple: (argmax, max) arrays shaped like ``lo``.
    """
    a = np.array(lo, dtype=float)
    b = np.array(hi, dtype=float)
    if a.size == 0:
        return a, a.copy()

    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc = func(c)
    fd = func(d)

    for _ in range(max_iter):
        if np.all(b - a <= tol):
            break
        left = fc >= fd
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        x_new = np.where(left, b - INV_PHI * (b - a), a + INV_PHI * (b - a))
        f_new = func(x_new)
        c, d = np.where(left, x_new, d), np.where(left, c, x_new)
        fc, fd = np.where(left, f_new, fd), np.where(left, fc, f_new)

    take_c = fc >= fd
    return np.where(take_c, c, d), np.where(take_c, fc, fd)


def bisection_root(func, lo, hi, tol=PARAM_TOL, max_iter=MAX_ITERATIONS):
    """Locate a sign change of ``func`` inside every bracket [lo[i], hi[i]].

    Brackets must carry opposite (non-zero) signs at their ends. scipy.optimize.brentq
    takes one bracket per call and scipy.optimize.elementwise needs scipy 1.15, above
    the supported 1.10, so all brackets are halved together here.

    Args:
        func (callable): Vectorized function.
        lo (ndarray): Lower bracket ends.
        hi (ndarray): Upper bracket ends.
        tol (float): Bracket width at which iteration stops.
        max_iter (int): Iteration cap.

    Returns:
        ndarray: Root estimates (bracket midpoints).
    """
    a = np.array(lo, dtype=float)
    b = np.array(hi, dtype=float)
    if a.size == 0:
        return a
    fa = func(a)

    for _ in range(max_iter):
        if np.all(np.abs(b - a) <= tol):
            break
        mid = 0.5 * (a + b)
        fm = func(mid)
        same = np.sign(fm) == np.sign(fa)
        a = np.where(same, mid, a)
        fa = np.where(same, fm, fa)
        b = np.where(same, b, mid)

    return 0.5 * (a + b)


def grid_local_maxima(values, cyclic=True):
    """Find grid local maxima along the last axis (ties count as maxima).

    Args:
        values (ndarray): 1-D or 2-D sampled values.
        cyclic (bool): Treat the last axis as periodic. When False the first
            and last samples are never reported.

    Returns:
        tuple: Index arrays as returned by ``np.nonzero``.
    """
    values = np.asarray(values, dtype=float)
    prev = np.roll(values, 1, axis=-1)
    nxt = np.roll(values, -1, axis=-1)
    mask = (values >= prev) & (values >= nxt)
    if not cyclic:
        mask[..., 0] = False
        mask[..., -1] = False
    return np.nonzero(mask)


def grid_local_minima(values, cyclic=True):
    """Find grid local minima along the last axis (ties count as minima)."""
    return grid_local_maxima(-np.asarray(values, dtype=float), cyclic=cyclic)
