#!/usr/bin/env python3
"""
Configuration Management for constwidth

Handles tool settings (grid densities, tolerances, render and probe defaults)
and the worker pool used by verification and probing.
"""

import copy
import json
import logging
import os
from concurrent.futures import ThreadPoolExecutor


logger = logging.getLogger(__name__)

THREADS_ENV = 'CONSTWIDTH_THREADS'

# runtime section installed by use_runtime_settings()
_runtime = {}

DEFAULT_CONFIG = {
    "verification": {
        "theta_samples": 512,  # Base points per check
        "phi_samples": 2048,  # Chord-function offsets per base
        "value_tol_factor": 1e-9,  # Times D
        "uniq_tol_factor": 1e-6,  # Times D
        "membership_tol_factor": 1e-7,  # Times D
        "epsilon_margin": 0.1  # Radians
    },
    "render": {
        "samples": 720,
        "chords": 0,
        "ngon": None,
        "show_centers": False,
        "stroke_width": 0.005,  # Fraction of D
        "dot_radius": 0.01  # Fraction of D
    },
    "probe": {
        "bases": 128,
        "offsets": 512,
        "nearest_grid": 1024,
        "delta_fraction": 0.05,  # Sphere radius as a fraction of D
        "iterations": 500,
        "restarts": 1,
        "seed": 0
    },
    "export": {
        "samples": 720
    },
    "runtime": {
        "threads": None  # None means os.cpu_count()
    }
}


def load_config(filepath='constwidth.json'):
    """Load settings from a JSON file.

    Args:
        filepath (str): Path to settings file.

    Returns:
        dict: Settings merged over the defaults, or the defaults if the file
        is missing or unreadable.
    """
    if not os.path.exists(filepath):
        # Create default settings file
        save_config(DEFAULT_CONFIG, filepath)
        return copy.deepcopy(DEFAULT_CONFIG)

    try:
        with open(filepath, 'r') as f:
            loaded = json.load(f)
    except (json.JSONDecodeError, PermissionError) as e:
        logger.warning(f"Error loading settings {filepath}: {e}. Using defaults.")
        return copy.deepcopy(DEFAULT_CONFIG)

    merged = copy.deepcopy(DEFAULT_CONFIG)
    for section, values in loaded.items():
        if isinstance(values, dict) and isinstance(merged.get(section), dict):
            merged[section].update(values)
        else:
            merged[section] = values
    return merged


def save_config(config, filepath='constwidth.json'):
    """Save settings to a JSON file.

    Args:
        config (dict): Settings to save.
        filepath (str): Destination path.

    Returns:
        bool: True if successful, False otherwise.
    """
    try:
        with open(filepath, 'w') as f:
            json.dump(config, f, indent=2)
        return True
    except OSError as e:
        logger.warning(f"Error saving settings to {filepath}: {e}")
        return False


def get_verification_settings(config):
    """Return the verification section with defaults filled in."""
    return {**DEFAULT_CONFIG['verification'], **config.get('verification', {})}


def get_render_settings(config):
    """Return the render section with defaults filled in."""
    return {**DEFAULT_CONFIG['render'], **config.get('render', {})}


def get_probe_settings(config):
    """Return the probe section with defaults filled in."""
    return {**DEFAULT_CONFIG['probe'], **config.get('probe', {})}


def get_export_samples(config):
    """Get the default number of exported samples.

    Args:
        config (dict): Settings.

    Returns:
        int: Samples per export.
    """
    return config.get('export', {}).get('samples', 720)


def get_thread_count(config=None):
    """Resolve the worker count.

    ``CONSTWIDTH_THREADS`` wins over ``runtime.threads``; when neither is set
    all cores are used.

    Args:
        config (dict, optional): Settings.

    Returns:
        int: Number of worker threads (>= 1).
    """
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            value = int(env)
            if value >= 1:
                return value
        except ValueError:
            pass
        logger.warning(f"Ignoring invalid {THREADS_ENV}={env!r}")
    runtime = (config or {}).get('runtime', _runtime)
    threads = runtime.get('threads')
    if isinstance(threads, int) and threads >= 1:
        return threads
    return os.cpu_count() or 1


def parallel_map(func, items, threads=None):
    """Map ``func`` over ``items`` on a thread pool, keeping input order.

    Args:
        func (callable): Function of one item.
        items (iterable): Work items.
        threads (int, optional): Worker count; defaults to get_thread_count().

    Returns:
        list: Results in the order of ``items``.
    """
    items = list(items)
    workers = min(threads or get_thread_count(), max(len(items), 1))
    if workers <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


def use_runtime_settings(config):
    """Make ``config['runtime']`` the default for later parallel_map calls."""
    _runtime.clear()
    _runtime.update(config.get('runtime', {}))
