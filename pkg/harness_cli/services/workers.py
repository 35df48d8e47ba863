"""
Per-trial work units. Everything here is pure (no settings access) and
picklable so trials can run in any pool start method.
"""
import logging
import multiprocessing as mp
from typing import NamedTuple, Optional

from adaptive_estimator.sequence import EstimatorConfig, run_sequence
from core.exceptions import ReplayDivergenceError, SourceExhaustedError, TraceIntegrityError
from harness_cli.emitters import degrees_text
from outcome_source.seeding import seed_record, trial_rng
from outcome_source.sources import ReplaySource, SimulatedSource
from qubit_model.angles import HALF_PI, as_radians

logger = logging.getLogger(__name__)


class TrialTask(NamedTuple):
    trial: int
    theta_true: float
    n_photons: int
    master_seed: int
    grid_size: int
    initial_guess: Optional[float]
    adaptive: bool


class ReplayTask(NamedTuple):
    trial: int
    records: tuple
    n_photons: int
    grid_size: int
    adaptive: bool
    theta_true: float = 0.0
    recorded_mle: Optional[tuple] = None


def simulate_trial(task):
    """
    One seeded trial. The trial generator first draws the random initial
    guess (if any), then feeds the simulated detectors.
    """
    rng = trial_rng(task.master_seed, task.trial)
    config = EstimatorConfig(task.grid_size, task.initial_guess, task.adaptive).resolve_initial_guess(rng)
    source = SimulatedSource(task.theta_true, rng, seed_record(task.master_seed, task.trial))
    trajectory = run_sequence(task.theta_true, task.n_photons, source, config)
    return task.trial, trajectory


class RecordedMleCheck:
    """
    Observer comparing each recomputed MLE with trajectories.csv (4-decimal degrees).
    """

    def __init__(self, trial, recorded, grid_size):
        self.trial = trial
        self.recorded = recorded
        self.step_size = HALF_PI / grid_size

    def __call__(self, step, setting_index, outcome, mle_index):
        computed = degrees_text(mle_index * self.step_size)
        recorded = self.recorded[step] if step < len(self.recorded) else None
        if recorded != computed:
            raise ReplayDivergenceError(self.trial, step, recorded, computed, quantity='mle')


def replay_trial(task):
    """
    Re-run the estimator on one trial's recorded outcomes.

    The initial guess is the first recorded setting. Records beyond
    `n_photons` are an integrity error; fewer raise SourceExhaustedError.
    """
    if not task.records:
        raise SourceExhaustedError(task.trial, 0)
    source = ReplaySource.from_records(task.records, trial=task.trial)
    config = EstimatorConfig(task.grid_size, as_radians(task.records[0].setting), task.adaptive)
    observer = None
    if task.recorded_mle is not None:
        observer = RecordedMleCheck(task.trial, task.recorded_mle, task.grid_size)
    trajectory = run_sequence(task.theta_true, task.n_photons, source, config, observer=observer)
    if source.cursor.has_next():
        raise TraceIntegrityError(task.trial, source.cursor.position, f"records beyond n_photons={task.n_photons}")
    return task.trial, trajectory


def map_trials(func, tasks, workers):
    """
    Yield func(task) in task order, in-process for one worker, otherwise
    over a multiprocessing pool.
    """
    tasks = list(tasks)
    workers = max(1, min(int(workers), len(tasks)))
    if workers == 1:
        for task in tasks:
            yield func(task)
        return
    chunksize = max(1, len(tasks) // (workers * 4))
    logger.debug(f"Dispatching {len(tasks)} trials to {workers} workers (chunksize={chunksize})")
    with mp.Pool(processes=workers) as pool:
        yield from pool.imap(func, tasks, chunksize=chunksize)
