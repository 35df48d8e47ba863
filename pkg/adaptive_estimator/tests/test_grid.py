"""
Tests for the likelihood grid, its log tables and the maximizer
"""
import math

import numpy as np
import pytest

from adaptive_estimator.estimator import init_estimator, mle, update
from adaptive_estimator.grid import (
    LikelihoodGrid,
    circular_index_distance,
    log_probability_tables,
    select_maximizer,
)
from core.exceptions import EstimatorError, GridError, InvalidOutcomeError
from qubit_model.angles import HALF_PI
from qubit_model.states import outcome_probabilities


def from_scratch(grid, settings, outcomes):
    """Direct trigonometric evaluation of l_n on the grid points."""
    total = np.zeros(grid.grid_size)
    with np.errstate(divide='ignore'):
        for setting, outcome in zip(settings, outcomes):
            total += np.log(outcome_probabilities(outcome, grid.points(), setting))
    return total


class TestLogTables:
    """Test the precomputed per-outcome tables."""

    def test_tables_are_read_only(self):
        """Test cached tables cannot be mutated."""
        tables = log_probability_tables(16)
        with pytest.raises(ValueError):
            tables[1][0] = 0.0

    def test_exact_zeros_are_negative_infinity(self):
        """Test d = G/4 (outcome 1) and d = 3G/4 (outcome 2) are -inf."""
        tables = log_probability_tables(16)
        assert tables[1][4] == -np.inf
        assert tables[2][12] == -np.inf
        assert np.isfinite(np.delete(tables[1], 4)).all()
        assert np.isfinite(np.delete(tables[2], 12)).all()

    def test_no_infinities_without_exact_zero(self):
        """Test a grid size not divisible by 4 has only finite entries."""
        tables = log_probability_tables(10)
        assert np.isfinite(tables[1]).all()
        assert np.isfinite(tables[2]).all()

    def test_entries_are_non_positive(self):
        """Test every table entry is a log probability."""
        for table in log_probability_tables(10000).values():
            assert (table <= 0.0).all()

    def test_grids_share_tables_not_values(self):
        """Test two grids of one size reuse the cached tables but accumulate separately."""
        first, second = LikelihoodGrid(16), LikelihoodGrid(16)
        assert first._shifted is second._shifted
        first.add(3, 1)
        assert (second.values == 0.0).all()
        assert not hasattr(LikelihoodGrid, 'copy')

    def test_increment_matches_trigonometry(self):
        """Test the shifted slice equals log p(x; theta_k, theta_j)."""
        grid = LikelihoodGrid(1000)
        for setting_index in (0, 1, 250, 617, 999):
            setting = grid.angle(setting_index)
            for outcome in (1, 2):
                expected = np.log(outcome_probabilities(outcome, grid.points(), setting))
                actual = grid.increment(setting_index, outcome)
                mask = expected > math.log(1e-2)
                assert np.allclose(actual[mask], expected[mask], atol=1e-12, rtol=0)


class TestSelectMaximizer:
    """Test argmax with the documented tie-break."""

    def test_single_peak(self):
        """Test a unique maximum wins."""
        values = np.array([-3.0, -1.0, -0.5, -2.0])
        assert select_maximizer(values, 0) == 2

    def test_flat_returns_previous(self):
        """Test an all-equal grid keeps the previous MLE."""
        assert select_maximizer(np.zeros(10), 7) == 7

    def test_nearest_to_previous(self):
        """Test ties resolve to the candidate nearest the previous MLE."""
        values = np.full(8, -1.0)
        values[[1, 6]] = 0.0
        assert select_maximizer(values, 5) == 6

    def test_nearest_wraps_around(self):
        """Test distance is measured around the circle."""
        values = np.full(8, -1.0)
        values[[2, 6]] = 0.0
        assert select_maximizer(values, 7) == 6
        values = np.full(8, -1.0)
        values[[3, 7]] = 0.0
        assert select_maximizer(values, 0) == 7

    def test_equidistant_smaller_index(self):
        """Test equidistant maximizers fall back to the smaller index."""
        values = np.full(8, -1.0)
        values[[2, 6]] = 0.0
        assert select_maximizer(values, 4) == 2
        assert select_maximizer(values, 0) == 2

    def test_negative_infinity_never_wins(self):
        """Test -inf entries are excluded."""
        values = np.array([-np.inf, -50.0, -np.inf])
        assert select_maximizer(values, 0) == 1

    def test_all_negative_infinity(self):
        """Test an all -inf grid has no maximizer."""
        with pytest.raises(EstimatorError):
            select_maximizer(np.full(5, -np.inf), 0)

    def test_circular_distance(self):
        """Test circular index distance."""
        assert list(circular_index_distance([0, 1, 9, 5], 0, 10)) == [0, 1, 1, 5]


class TestInitEstimator:
    """Test estimator initialization."""

    def test_flat_start(self):
        """Test init(10000, 0) gives l_0 = 0 and theta_hat_0 = 0."""
        state = init_estimator(10000, 0.0)
        assert (state.grid.values == 0.0).all()
        assert state.current_mle.value == 0.0
        assert state.step_count == 0
        assert mle(state).value == 0.0

    def test_snaps_to_nearest_grid_point(self):
        """Test init(4, pi/5) snaps to pi/4."""
        state = init_estimator(4, math.pi / 5)
        assert state.mle_index == 2
        assert state.current_mle.value == pytest.approx(math.pi / 4)
        assert state.initial_guess == state.current_mle

    def test_snaps_across_the_wrap(self):
        """Test a guess just below pi/2 snaps to 0."""
        state = init_estimator(100, HALF_PI - 1e-6)
        assert state.mle_index == 0

    @pytest.mark.parametrize('grid_size', [1, 0, -5, 2.5, True])
    def test_invalid_grid_size(self, grid_size):
        """Test grid sizes below 2 are rejected."""
        with pytest.raises(GridError):
            init_estimator(grid_size, 0.0)


class TestUpdate:
    """Test the likelihood update and the MLE it produces."""

    def test_first_outcome_moves_forward(self):
        """Test theta_hat_0 = 0 and outcome 1 gives theta_hat_1 = pi/8."""
        state = update(init_estimator(10000, 0.0), 1)
        assert state.mle_index == 2500
        assert state.current_mle.value == pytest.approx(math.pi / 8)
        assert state.step_count == 1

    def test_second_outcome_moves_backward(self):
        """Test theta_hat_0 = 0 and outcome 2 gives theta_hat_1 = 3 pi/8."""
        state = update(init_estimator(10000, 0.0), 2)
        assert state.mle_index == 7500
        assert state.current_mle.value == pytest.approx(3 * math.pi / 8)

    @pytest.mark.parametrize('outcome', [1, 2])
    def test_single_step_against_dense_grid(self, outcome):
        """Test the single-step argmax against 100k-point direct evaluation."""
        state = update(init_estimator(10000, 0.0), outcome)
        dense = np.linspace(0.0, HALF_PI, 100000, endpoint=False)
        dense_mle = dense[np.argmax(outcome_probabilities(outcome, dense, 0.0))]
        assert abs(state.current_mle.value - dense_mle) <= state.grid.step

    def test_additivity(self):
        """Test two updates equal the sum of both per-step terms."""
        state = init_estimator(10000, 0.0)
        settings = [state.grid.angle(state.setting_index)]
        update(state, 1)
        settings.append(state.grid.angle(state.setting_index))
        update(state, 2)
        expected = from_scratch(state.grid, settings, [1, 2])
        assert (expected[np.isneginf(state.grid.values)] < -50).all()
        tight = expected > 2 * math.log(1e-2)
        assert np.allclose(state.grid.values[tight], expected[tight], atol=1e-12, rtol=0)
        finite = np.isfinite(state.grid.values)
        assert np.allclose(state.grid.values[finite], expected[finite], atol=1e-9, rtol=0)

    def test_entries_never_positive(self):
        """Test accumulated values stay at or below zero."""
        state = init_estimator(10000, 0.3)
        for outcome in (1, 1, 2, 1, 2, 2, 2, 1):
            update(state, outcome)
            assert (state.grid.values <= 0.0).all()

    def test_mle_is_grid_point(self):
        """Test the MLE is always exactly a grid point."""
        state = init_estimator(10000, 0.3)
        for outcome in (2, 1, 1, 2):
            update(state, outcome)
            assert state.current_mle.value == state.grid.angle(state.mle_index)
            assert mle(state) == state.current_mle

    def test_invalid_outcome(self):
        """Test outcome labels other than 1 and 2 are rejected."""
        with pytest.raises(InvalidOutcomeError):
            update(init_estimator(100, 0.0), 0)

    def test_non_adaptive_setting_is_fixed(self):
        """Test the control mode measures at theta_hat_0 every time."""
        state = init_estimator(10000, 0.2, adaptive=False)
        start = state.setting_index
        update(state, 1)
        assert state.setting_index == start
        assert state.mle_index != start
