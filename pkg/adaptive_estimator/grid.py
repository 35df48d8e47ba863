"""
Discretized log-likelihood over an evenly spaced grid of [0, pi/2).

Grid point k sits at theta_k = k * (pi/2) / G. When the measurement is set at
grid point j, the per-photon term log p(x; theta_k, theta_j) depends only on
d = (j - k) mod G:

    log p(1) = log cos^2(d pi / G + pi/4),  log p(2) = log sin^2(d pi / G + pi/4)

so one G-entry table per outcome, added under a circular shift, replaces the
per-step trigonometry. Tables are stored reversed and doubled so the shifted
copy is a contiguous slice.
"""
import functools
import logging
import math

import numpy as np

from core.exceptions import EstimatorError, GridError
from core.validators import ParameterValidator
from qubit_model.angles import HALF_PI, QUARTER_PI, as_radians

logger = logging.getLogger(__name__)

DEFAULT_GRID_SIZE = 10000


def validate_grid_size(grid_size):
    if isinstance(grid_size, bool) or int(grid_size) != grid_size or grid_size < 2:
        raise GridError(f"Grid size must be an integer >= 2, got {grid_size!r}")
    return int(grid_size)


@functools.lru_cache(maxsize=8)
def log_probability_tables(grid_size):
    """
    Per-outcome log-probability tables indexed by d = (j - k) mod G.

    Exact zeros of the outcome probabilities (d = G/4 for outcome 1 and
    d = 3G/4 for outcome 2, present when 4 divides G) are stored as -inf.
    """
    grid_size = validate_grid_size(grid_size)
    d = np.arange(grid_size)
    angle = d * (math.pi / grid_size) + QUARTER_PI
    p1 = np.cos(angle) ** 2
    p2 = np.sin(angle) ** 2
    if grid_size % 4 == 0:
        p1[grid_size // 4] = 0.0
        p2[3 * grid_size // 4] = 0.0
    with np.errstate(divide='ignore'):
        tables = {1: np.log(p1), 2: np.log(p2)}
    for table in tables.values():
        table.setflags(write=False)
    return tables


@functools.lru_cache(maxsize=8)
def shifted_tables(grid_size):
    """
    Reversed, doubled tables: D[G - j + k] = T[(j - k) mod G] for k in [0, G).
    """
    tables = log_probability_tables(grid_size)
    shifted = {}
    for outcome, table in tables.items():
        reversed_table = np.roll(table[::-1], 1)
        doubled = np.concatenate([reversed_table, reversed_table])
        doubled.setflags(write=False)
        shifted[outcome] = doubled
    return shifted


def circular_index_distance(indices, reference, grid_size):
    """Distance between grid indices on the circle of G points."""
    delta = np.abs(np.asarray(indices) - reference) % grid_size
    return np.minimum(delta, grid_size - delta)


def select_maximizer(values, previous_index):
    """
    Index of the maximum of `values`.

    Ties go to the candidate nearest (circularly) to `previous_index`, then
    to the smallest index. Entries at -inf never win.
    """
    peak = values.max()
    if peak == -np.inf:
        raise EstimatorError('All log-likelihood entries are -inf; no maximizer exists')
    candidates = np.flatnonzero(values == peak)
    if candidates.size == 1:
        return int(candidates[0])
    distances = circular_index_distance(candidates, previous_index, values.size)
    # argmin returns the first minimum, i.e. the smallest index among equals
    return int(candidates[np.argmin(distances)])


class LikelihoodGrid:
    """
    Accumulated log-likelihood l_n over G grid points.
    """

    def __init__(self, grid_size=DEFAULT_GRID_SIZE):
        self.grid_size = validate_grid_size(grid_size)
        self.step = HALF_PI / self.grid_size
        self.values = np.zeros(self.grid_size)
        self._shifted = shifted_tables(self.grid_size)

    def angle(self, index):
        """Radians of grid point `index`."""
        return index * self.step

    def points(self):
        return np.arange(self.grid_size) * self.step

    def nearest_index(self, theta):
        """Index of the grid point nearest to theta on the circle."""
        return int(round(as_radians(theta) / self.step)) % self.grid_size

    def increment(self, setting_index, outcome):
        """
        View of the per-photon term log p(outcome; theta_k, theta_setting) over k.
        """
        outcome = ParameterValidator.validate_outcome(outcome)
        start = self.grid_size - setting_index
        return self._shifted[outcome][start:start + self.grid_size]

    def add(self, setting_index, outcome):
        """l_n = l_{n-1} + log p(outcome; ., theta_setting)."""
        self.values += self.increment(setting_index, outcome)

    def argmax(self, previous_index):
        return select_maximizer(self.values, previous_index)
