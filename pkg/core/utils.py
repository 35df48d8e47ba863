"""
Utility functions for the estimation lab.
"""
import math
import os
from pathlib import Path

from core.exceptions import TraceIOError


def format_significant(value, digits=10):
    """
    Format a float with the given number of significant digits.

    Example:
        format_significant(0.39269908169872414) -> '0.3926990817'
    """
    return f"{value:.{digits}g}"


def format_fixed(value, decimals=4):
    """
    Format a float with a fixed number of decimals; infinities as 'inf'/'-inf'.
    """
    if math.isinf(value):
        return 'inf' if value > 0 else '-inf'
    return f"{value:.{decimals}f}"


def resolve_worker_count(workers):
    """
    Number of worker processes; 0 or None means all available cores.
    """
    if not workers:
        return max(1, os.cpu_count() or 1)
    return int(workers)


def ensure_directory(path):
    """
    Create an output directory (and parents) or fail with the path in the error.
    """
    path = Path(path)
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise TraceIOError(path, exc)
    if not os.access(path, os.W_OK):
        raise TraceIOError(path, 'directory is not writable')
    return path
