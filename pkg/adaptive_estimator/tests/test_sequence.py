"""
Tests for the adaptive loop and trajectories
"""
import itertools

import numpy as np
import pytest

from adaptive_estimator.sequence import (
    EstimatorConfig,
    Trajectory,
    likelihood_snapshots,
    run_sequence,
)
from core.exceptions import ConfigurationError, ReplayDivergenceError, SourceExhaustedError
from outcome_source.seeding import seed_record, trial_rng
from outcome_source.sources import ReplaySource, SimulatedSource
from outcome_source.traces import trajectory_records
from qubit_model.angles import HALF_PI, AngleRad, wrapped_deviation
from qubit_model.states import outcome_probabilities

DENSE_POINTS = 100000


class ScriptedSource:
    """Returns a fixed outcome sequence whatever the setting."""

    def __init__(self, outcomes):
        self.outcomes = list(outcomes)
        self.settings = []

    def draw(self, setting):
        self.settings.append(setting)
        return self.outcomes[len(self.settings) - 1]


def dense_log_likelihood(settings, outcomes, points):
    total = np.zeros(points.size)
    with np.errstate(divide='ignore'):
        for setting, outcome in zip(settings, outcomes):
            total += np.log(outcome_probabilities(outcome, points, setting))
    return total


def simulate(theta_true, n, seed=11, trial=0, **config):
    rng = trial_rng(seed, trial)
    config = EstimatorConfig(**config).resolve_initial_guess(rng)
    source = SimulatedSource(theta_true, rng, seed_record(seed, trial))
    return run_sequence(theta_true, n, source, config)


class TestEstimatorConfig:
    """Test estimator configuration."""

    def test_fixed_guess_is_kept(self):
        """Test a fixed initial guess needs no generator."""
        config = EstimatorConfig(grid_size=100, initial_guess=0.4)
        assert config.resolve_initial_guess(None) is config

    def test_random_guess_is_reproducible(self):
        """Test the drawn guess depends only on the generator seed."""
        first = EstimatorConfig(grid_size=100).resolve_initial_guess(trial_rng(5, 3))
        second = EstimatorConfig(grid_size=100).resolve_initial_guess(trial_rng(5, 3))
        assert first == second
        assert 0.0 <= first.initial_guess < HALF_PI

    def test_invalid_grid_size(self):
        """Test the grid size is validated on construction."""
        with pytest.raises(ValueError):
            EstimatorConfig(grid_size=1)


class TestRunSequence:
    """Test the per-trial adaptive loop."""

    def test_full_length_and_adaptivity(self):
        """Test n = 300 produces 300 steps obeying the adaptivity contract."""
        trajectory = simulate(0.7, 300)
        assert len(trajectory) == 300
        assert len(trajectory.steps) == 300
        trajectory.check_adaptivity()
        steps = trajectory.steps
        assert steps[0].setting == trajectory.initial_guess
        for previous, current in zip(steps, steps[1:]):
            assert current.setting == previous.mle_after

    def test_single_step(self):
        """Test n = 1 moves theta_hat_0 by +/- pi/8 at grid resolution."""
        for trial in range(10):
            trajectory = simulate(0.5, 1, trial=trial)
            grid_size = trajectory.grid_size
            forward = (trajectory.initial_index + grid_size // 4) % grid_size
            backward = (trajectory.initial_index - grid_size // 4) % grid_size
            expected = forward if trajectory.outcomes[0] == 1 else backward
            assert trajectory.mle_indices == (expected,)

    def test_deterministic(self):
        """Test identical seed and config give identical trajectories."""
        assert simulate(0.2, 120, seed=3) == simulate(0.2, 120, seed=3)

    def test_seed_changes_trajectory(self):
        """Test a different trial index gives a different outcome stream."""
        assert simulate(0.2, 120, trial=0).outcomes != simulate(0.2, 120, trial=1).outcomes

    def test_errors_shrink(self):
        """Test the final error is small after 300 photons."""
        errors = [abs(simulate(1.1, 300, trial=trial).errors_rad()[-1]) for trial in range(20)]
        assert np.median(errors) < 0.05

    def test_requires_positive_n(self):
        """Test n must be at least 1."""
        with pytest.raises(ConfigurationError):
            run_sequence(0.1, 0, ScriptedSource([]), EstimatorConfig(grid_size=100, initial_guess=0.0))

    def test_requires_resolved_guess(self):
        """Test a random initial guess must be drawn first."""
        with pytest.raises(ConfigurationError):
            run_sequence(0.1, 3, ScriptedSource([1, 1, 1]), EstimatorConfig(grid_size=100))

    def test_replay_reproduces_trajectory(self):
        """Test replaying recorded settings and outcomes gives the same trajectory."""
        original = simulate(0.9, 80, trial=4)
        source = ReplaySource.from_records(trajectory_records(original, 4), trial=4)
        config = EstimatorConfig(original.grid_size, original.initial_guess.value)
        replayed = run_sequence(original.true_value, len(original), source, config)
        assert replayed == original

    def test_replay_detects_changed_setting(self):
        """Test a replay whose recomputed settings differ fails."""
        original = simulate(0.9, 40, trial=4)
        records = trajectory_records(original, 4)
        config = EstimatorConfig(original.grid_size, original.initial_guess.value + 0.01)
        with pytest.raises(ReplayDivergenceError) as excinfo:
            run_sequence(original.true_value, 40, ReplaySource.from_records(records, trial=4), config)
        assert excinfo.value.step == 0

    def test_replay_shorter_than_n(self):
        """Test a replay trace with too few records is exhausted."""
        original = simulate(0.9, 10, trial=2)
        source = ReplaySource.from_records(trajectory_records(original, 2), trial=2)
        config = EstimatorConfig(original.grid_size, original.initial_guess.value)
        with pytest.raises(SourceExhaustedError):
            run_sequence(original.true_value, 11, source, config)


class TestGridOracle:
    """Test grid maximization against a ten times denser direct evaluation."""

    @pytest.mark.parametrize('outcomes', list(itertools.product((1, 2), repeat=5)))
    def test_all_short_sequences(self, outcomes):
        """Test every outcome sequence of length <= 5."""
        config = EstimatorConfig(grid_size=10000, initial_guess=0.0)
        trajectory = run_sequence(0.0, 5, ScriptedSource(outcomes), config)
        step = trajectory.step_size
        dense = np.arange(DENSE_POINTS) * (HALF_PI / DENSE_POINTS)
        settings = trajectory.settings_rad()
        for length in range(1, 6):
            values = dense_log_likelihood(settings[:length], outcomes[:length], dense)
            dense_mle = dense[np.argmax(values)]
            coarse_mle = trajectory.mle_rad()[length - 1]
            if abs(wrapped_deviation(coarse_mle - dense_mle)) <= step:
                continue
            # two separated maximizers of equal height
            coarse_value = values[trajectory.mle_indices[length - 1] * 10]
            assert coarse_value >= values.max() - 1e-6


class TestNonAdaptiveControl:
    """Test the fixed-measurement control mode."""

    def test_settings_are_fixed(self):
        """Test every photon is measured at theta_hat_0."""
        trajectory = simulate(0.4, 50, adaptive=False)
        assert set(trajectory.setting_indices) == {trajectory.initial_index}
        trajectory.check_adaptivity()

    def test_adaptivity_check_catches_fixed_settings(self):
        """Test a fixed-setting record fails the adaptive contract."""
        trajectory = simulate(0.4, 50, adaptive=False)
        relabeled = Trajectory(
            true_value=trajectory.true_value,
            grid_size=trajectory.grid_size,
            initial_index=trajectory.initial_index,
            setting_indices=trajectory.setting_indices,
            outcomes=trajectory.outcomes,
            mle_indices=trajectory.mle_indices,
            adaptive=True,
        )
        with pytest.raises(ReplayDivergenceError):
            relabeled.check_adaptivity()

    def test_likelihood_is_mirror_symmetric(self):
        """Test l_n(theta) = l_n(2 theta_hat_0 + pi/4 - theta) on the grid."""
        outcomes = [1, 2, 2, 1, 1, 1, 2, 1, 2, 2, 1, 1]
        config = EstimatorConfig(grid_size=10000, initial_guess=0.3, adaptive=False)
        trajectory = run_sequence(0.0, len(outcomes), ScriptedSource(outcomes), config)
        [(_, _, values)] = list(likelihood_snapshots(trajectory, [len(outcomes)]))
        grid_size = trajectory.grid_size
        mirror = (2 * trajectory.initial_index + grid_size // 2 - np.arange(grid_size)) % grid_size
        assert np.array_equal(np.isneginf(values), np.isneginf(values[mirror]))
        finite = np.isfinite(values)
        assert np.allclose(values[finite], values[mirror][finite], atol=1e-9, rtol=0)


class TestLikelihoodSnapshots:
    """Test re-accumulated likelihood snapshots."""

    def test_snapshot_steps(self):
        """Test snapshots are yielded at the requested in-range steps only."""
        trajectory = simulate(0.6, 12)
        steps = [step for step, _, _ in likelihood_snapshots(trajectory, [0, 1, 3, 12, 40])]
        assert steps == [1, 3, 12]

    def test_final_snapshot_reproduces_mle(self):
        """Test the last snapshot's argmax is the recorded final MLE."""
        trajectory = simulate(0.6, 30)
        [(step, increment, values)] = list(likelihood_snapshots(trajectory, [30]))
        assert step == 30
        assert increment.shape == values.shape == (trajectory.grid_size,)
        assert values[trajectory.mle_indices[-1]] == values.max()

    def test_first_snapshot_is_the_increment(self):
        """Test l_1 equals the first per-photon term."""
        trajectory = simulate(0.6, 5)
        [(_, increment, values)] = list(likelihood_snapshots(trajectory, [1]))
        assert np.array_equal(increment, values)

    def test_true_value_recorded(self):
        """Test the trajectory keeps theta_true for the harness."""
        assert simulate(0.6, 5).true_value == AngleRad(0.6)
