"""
Replay verification: re-run the estimator against recorded outcomes and
check that every trial is reproduced.
"""
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path

from django.conf import settings

from core.exceptions import SourceExhaustedError, TraceIntegrityError
from core.utils import resolve_worker_count
from harness_cli.emitters import RUN_FILE, TRAJECTORIES_FILE, read_json, read_trajectories
from harness_cli.services.workers import ReplayTask, map_trials, replay_trial
from outcome_source.traces import read_trace

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReplayReport:
    trace_path: Path
    trials_matched: int
    trials_total: int
    checked_mle: bool
    trajectories: list = field(default_factory=list, repr=False)

    @property
    def message(self):
        return f"match: {self.trials_matched}/{self.trials_total} trials"


def load_run_info(directory, required=False):
    """
    The `config` section of run.json, or None when it is absent and not required.
    """
    path = Path(directory) / RUN_FILE
    if not path.exists() and not required:
        return None
    return read_json(path).get('config', {})


class ReplayVerifier:
    """
    Replay every trial of a trace file.

    Grid size, adaptivity, photon count and trial count come from the
    sibling run.json; when it is missing the settings defaults are used and
    each trial is replayed for as many records as it has. A sibling
    trajectories.csv, when present, is checked step by step.
    """

    def __init__(self, trace_path, workers=None, run_info=None):
        self.trace_path = Path(trace_path)
        self.workers = resolve_worker_count(settings.AQSE_WORKERS if workers is None else workers)
        if run_info is None:
            run_info = load_run_info(self.trace_path.parent)
            if run_info is None:
                logger.warning(
                    f"No {RUN_FILE} next to {self.trace_path}; assuming grid_size={settings.AQSE_GRID_SIZE}, adaptive"
                )
        self.run_info = run_info or {}

    def _recorded_mle(self):
        path = self.trace_path.parent / TRAJECTORIES_FILE
        if not path.exists():
            logger.info(f"No {TRAJECTORIES_FILE} next to {self.trace_path}; checking settings only")
            return None
        return read_trajectories(path)

    def tasks(self, traces, recorded):
        info = self.run_info
        grid_size = int(info.get('grid_size', settings.AQSE_GRID_SIZE))
        adaptive = bool(info.get('adaptive', True))
        theta_true = math.radians(float(info.get('theta_true_deg', 0.0)))
        n_photons = info.get('n_photons')
        trials = info.get('trials')
        if trials is not None:
            for trial in range(int(trials)):
                if trial not in traces:
                    raise SourceExhaustedError(trial, 0)
            extra = sorted(set(traces) - set(range(int(trials))))
            if extra:
                raise TraceIntegrityError(extra[0], 0, f"trial beyond trials={trials}")
        tasks = []
        for trial, records in traces.items():
            expected = None
            if recorded is not None:
                expected = tuple(recorded.get(trial, ()))
            tasks.append(ReplayTask(
                trial=trial,
                records=tuple(records),
                n_photons=int(n_photons) if n_photons is not None else len(records),
                grid_size=grid_size,
                adaptive=adaptive,
                theta_true=theta_true,
                recorded_mle=expected,
            ))
        return tasks

    def verify(self):
        """
        Raises ReplayDivergenceError (trial, step) on the first mismatch,
        SourceExhaustedError for short trials and TraceFormatError for
        malformed lines.
        """
        traces = read_trace(self.trace_path)
        recorded = self._recorded_mle()
        tasks = self.tasks(traces, recorded)
        trajectories = [trajectory for _, trajectory in map_trials(replay_trial, tasks, self.workers)]
        report = ReplayReport(
            trace_path=self.trace_path,
            trials_matched=len(trajectories),
            trials_total=len(traces),
            checked_mle=recorded is not None,
            trajectories=trajectories,
        )
        logger.info(f"Replayed {self.trace_path}: {report.message}")
        return report
