"""
Ensemble execution: fan independent seeded trials out to workers and
serialize their traces in trial order.
"""
import logging
from dataclasses import dataclass
from pathlib import Path

from django.conf import settings

from core.utils import ensure_directory, resolve_worker_count
from harness_cli.emitters import (
    RUN_FILE,
    TRACE_FILE,
    TRAJECTORIES_FILE,
    TRAJECTORY_HEADER,
    CsvEmitter,
    trajectory_rows,
    write_json,
)
from harness_cli.services.workers import TrialTask, map_trials, simulate_trial
from outcome_source.seeding import SEED_MIXING
from outcome_source.traces import TraceWriter

logger = logging.getLogger(__name__)

# Execution details that never change results stay out of run.json
NON_PROVENANCE_FIELDS = ('output_dir', 'workers')


@dataclass(frozen=True)
class RunResult:
    output_dir: Path
    trials: int
    records: int
    workers: int


def run_provenance(config):
    """Everything needed to rerun or replay this ensemble; no timestamps."""
    recorded = {k: v for k, v in config.to_dict().items() if k not in NON_PROVENANCE_FIELDS}
    return {
        'config': recorded,
        'code_version': settings.AQSE_CODE_VERSION,
        'seed_mixing': SEED_MIXING,
        'files': {'trace': TRACE_FILE, 'trajectories': TRAJECTORIES_FILE},
    }


class EnsembleRunner:
    """
    Run `config.trials` adaptive sequences and write trace.csv,
    trajectories.csv and run.json into the output directory.
    """

    def __init__(self, config):
        self.config = config

    def tasks(self):
        config = self.config
        return [
            TrialTask(
                trial=trial,
                theta_true=config.theta_true.value,
                n_photons=config.n_photons,
                master_seed=config.master_seed,
                grid_size=config.grid_size,
                initial_guess=config.initial_guess_rad,
                adaptive=config.adaptive,
            )
            for trial in range(config.trials)
        ]

    def run(self):
        config = self.config
        output_dir = ensure_directory(config.output_dir)
        workers = resolve_worker_count(config.workers)
        logger.info(
            f"Running {config.trials} trials x {config.n_photons} photons at "
            f"theta_true={config.theta_true_deg} deg (grid={config.grid_size}, "
            f"seed={config.master_seed}, workers={workers})"
        )
        with TraceWriter(output_dir / TRACE_FILE) as trace, \
                CsvEmitter(output_dir / TRAJECTORIES_FILE, TRAJECTORY_HEADER) as trajectories:
            for trial, trajectory in map_trials(simulate_trial, self.tasks(), workers):
                trace.write_trajectory(trajectory, trial)
                trajectories.write_rows(trajectory_rows(trajectory, trial))
                logger.debug(f"Trial {trial} finished at {trajectory.final_mle.degrees:.4f} deg")
        write_json(output_dir / RUN_FILE, run_provenance(config))
        logger.info(f"Wrote {trace.records_written} trace records for {config.trials} trials to {output_dir}")
        return RunResult(output_dir, config.trials, trace.records_written, workers)
