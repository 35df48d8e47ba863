"""
The per-trial adaptive loop and the trajectory it produces.
"""
import logging
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from adaptive_estimator.estimator import init_estimator, update
from adaptive_estimator.grid import DEFAULT_GRID_SIZE, LikelihoodGrid, validate_grid_size
from core.exceptions import ConfigurationError, ReplayDivergenceError
from qubit_model.angles import HALF_PI, AngleRad, as_angle, wrapped_deviations

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EstimatorConfig:
    """
    Estimator knobs for one trial.

    `initial_guess` of None means "draw a grid point uniformly from the trial
    generator" and must be resolved with `resolve_initial_guess` before a
    sequence is run.
    """
    grid_size: int = DEFAULT_GRID_SIZE
    initial_guess: Optional[float] = None
    adaptive: bool = True

    def __post_init__(self):
        validate_grid_size(self.grid_size)

    def resolve_initial_guess(self, rng):
        """Fixed guess as given, otherwise a uniform grid point from `rng`."""
        if self.initial_guess is not None:
            return self
        index = int(rng.integers(self.grid_size))
        guess = LikelihoodGrid(self.grid_size).angle(index)
        return EstimatorConfig(self.grid_size, guess, self.adaptive)


class TrajectoryStep(NamedTuple):
    setting: AngleRad
    outcome: int
    mle_after: AngleRad


@dataclass(frozen=True)
class Trajectory:
    """
    Per-photon record of one trial, stored as grid indices.

    steps[i].setting is steps[i-1].mle_after (theta_hat_0 for i = 0) when
    `adaptive`; otherwise every setting is theta_hat_0.
    """
    true_value: AngleRad
    grid_size: int
    initial_index: int
    setting_indices: tuple
    outcomes: tuple
    mle_indices: tuple
    adaptive: bool = True
    seed_record: dict = field(default_factory=dict, compare=False)

    def __len__(self):
        return len(self.outcomes)

    @property
    def step_size(self):
        return HALF_PI / self.grid_size

    @property
    def initial_guess(self):
        return AngleRad(self.initial_index * self.step_size)

    @property
    def steps(self):
        step = self.step_size
        return [
            TrajectoryStep(AngleRad(setting * step), outcome, AngleRad(estimate * step))
            for setting, outcome, estimate in zip(self.setting_indices, self.outcomes, self.mle_indices)
        ]

    def settings_rad(self):
        return np.asarray(self.setting_indices, dtype=float) * self.step_size

    def mle_rad(self):
        """theta_hat_1 .. theta_hat_n in radians."""
        return np.asarray(self.mle_indices, dtype=float) * self.step_size

    def errors_rad(self):
        """Wrapped deviations theta_hat_i - theta_true for every step."""
        return wrapped_deviations(self.mle_rad() - self.true_value.value)

    @property
    def final_mle(self):
        return AngleRad(self.mle_indices[-1] * self.step_size)

    def check_adaptivity(self):
        """Raise ReplayDivergenceError if a setting breaks the adaptivity contract."""
        expected = self.initial_index
        for step, setting in enumerate(self.setting_indices):
            if setting != expected:
                raise ReplayDivergenceError(
                    trial=self.seed_record.get('trial'),
                    step=step,
                    recorded=setting * self.step_size,
                    expected=expected * self.step_size,
                )
            if self.adaptive:
                expected = self.mle_indices[step]


def run_sequence(theta_true, n, source, config, observer=None):
    """
    Run the adaptive loop for n photons.

    For i = 1..n: measure at the current setting, ask `source` which detector
    clicked, update the likelihood and record (setting, outcome, mle).
    `observer(step, setting_index, outcome, mle_index)` is called after every
    update with the 0-based step.
    Raises SourceExhaustedError or ReplayDivergenceError from a replay source.
    """
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ConfigurationError(f"Number of photons must be a positive integer, got {n!r}")
    if config.initial_guess is None:
        raise ConfigurationError('Initial guess must be resolved before running a sequence')
    state = init_estimator(config.grid_size, config.initial_guess, adaptive=config.adaptive)
    settings, outcomes, estimates = [], [], []
    for step in range(int(n)):
        setting_index = state.setting_index
        outcome = source.draw(state.grid.angle(setting_index))
        update(state, outcome)
        if observer is not None:
            observer(step, setting_index, int(outcome), state.mle_index)
        settings.append(setting_index)
        outcomes.append(int(outcome))
        estimates.append(state.mle_index)
    return Trajectory(
        true_value=as_angle(theta_true),
        grid_size=state.grid.grid_size,
        initial_index=state.initial_index,
        setting_indices=tuple(settings),
        outcomes=tuple(outcomes),
        mle_indices=tuple(estimates),
        adaptive=config.adaptive,
        seed_record=dict(getattr(source, 'seed_record', {}) or {}),
    )


def likelihood_snapshots(trajectory, at_steps):
    """
    Re-accumulate a trajectory's likelihood and yield
    (step, increment, log_likelihood) after each 1-based step in `at_steps`.
    """
    wanted = sorted({s for s in at_steps if 1 <= s <= len(trajectory)})
    if not wanted:
        return
    grid = LikelihoodGrid(trajectory.grid_size)
    for step, (setting, outcome) in enumerate(zip(trajectory.setting_indices, trajectory.outcomes), start=1):
        grid.add(setting, outcome)
        if step in wanted:
            yield step, grid.increment(setting, outcome).copy(), grid.values.copy()
        if step >= wanted[-1]:
            return
