"""
Adaptive maximum-likelihood estimator state and its update rule.
"""
import logging

from adaptive_estimator.grid import DEFAULT_GRID_SIZE, LikelihoodGrid
from qubit_model.angles import AngleRad

logger = logging.getLogger(__name__)


class EstimatorState:
    """
    Grid log-likelihood plus the running MLE.

    `mle_index` is the grid index of theta_hat_n. When `adaptive` is false the
    measurement stays at the initial guess for every photon.
    """

    def __init__(self, grid, initial_index, adaptive=True):
        self.grid = grid
        self.initial_index = initial_index
        self.mle_index = initial_index
        self.step_count = 0
        self.adaptive = adaptive

    @property
    def initial_guess(self):
        return AngleRad(self.grid.angle(self.initial_index))

    @property
    def current_mle(self):
        return AngleRad(self.grid.angle(self.mle_index))

    @property
    def setting_index(self):
        """Grid index the next measurement is set at."""
        return self.mle_index if self.adaptive else self.initial_index

    @property
    def setting(self):
        return AngleRad(self.grid.angle(self.setting_index))

    def __repr__(self):
        return (
            f"EstimatorState(grid_size={self.grid.grid_size}, mle_index={self.mle_index}, "
            f"step_count={self.step_count}, adaptive={self.adaptive})"
        )


def init_estimator(grid_size=DEFAULT_GRID_SIZE, initial_guess=0.0, adaptive=True):
    """
    Fresh state with l_0 = 0 and theta_hat_0 snapped to the nearest grid point.

    Raises GridError when grid_size < 2.
    """
    grid = LikelihoodGrid(grid_size)
    initial_index = grid.nearest_index(initial_guess)
    return EstimatorState(grid, initial_index, adaptive=adaptive)


def update(state, outcome):
    """
    Fold one outcome observed at the current setting into the likelihood and
    move the MLE. The state is updated in place and returned.
    """
    state.grid.add(state.setting_index, outcome)
    state.mle_index = state.grid.argmax(state.mle_index)
    state.step_count += 1
    return state


def mle(state):
    """
    Grid point maximizing l_n.

    Ties resolve to the maximizer nearest the previous MLE, then the smallest
    index. Raises EstimatorError when every entry is -inf.
    """
    return AngleRad(state.grid.angle(state.grid.argmax(state.mle_index)))
