"""
Measurement trace files: one CSV line per detected photon.

    trial,step,setting_rad,outcome
    0,0,0.3926990817,1

Angles carry 10 significant digits; steps are 0-based and dense per trial.
"""
import csv
import logging
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path

from core.exceptions import (
    InvalidOutcomeError,
    TraceFormatError,
    TraceIntegrityError,
    TraceIOError,
)
from core.utils import format_significant
from core.validators import ParameterValidator
from qubit_model.angles import AngleRad, as_angle

logger = logging.getLogger(__name__)

TRACE_HEADER = ('trial', 'step', 'setting_rad', 'outcome')
SETTING_DIGITS = 10


@dataclass(frozen=True)
class TraceRecord:
    trial_id: int
    step: int
    setting: AngleRad
    outcome: int

    def __post_init__(self):
        object.__setattr__(self, 'setting', as_angle(self.setting))
        ParameterValidator.validate_outcome(self.outcome)

    def to_row(self):
        return [
            str(self.trial_id),
            str(self.step),
            format_significant(self.setting.value, SETTING_DIGITS),
            str(self.outcome),
        ]

    def to_line(self):
        return ','.join(self.to_row())


def trajectory_records(trajectory, trial_id):
    """TraceRecords for every step of a trajectory."""
    return [
        TraceRecord(trial_id, step, AngleRad(setting * trajectory.step_size), outcome)
        for step, (setting, outcome) in enumerate(zip(trajectory.setting_indices, trajectory.outcomes))
    ]


class TraceWriter:
    """
    Append-only trace sink. Enforces unique, dense (trial, step) pairs.

    Records of different trials may interleave; each trial's lines are
    flushed when `end_trial` is called.
    """

    def __init__(self, path):
        self.path = Path(path)
        self._next_step = {}
        self._closed_trials = set()
        try:
            self._handle = open(self.path, 'w', newline='', encoding='utf-8')
            self._handle.write(','.join(TRACE_HEADER) + '\n')
        except OSError as exc:
            raise TraceIOError(self.path, exc)
        self.records_written = 0

    def record(self, trace_record):
        trial, step = trace_record.trial_id, trace_record.step
        if trial in self._closed_trials:
            raise TraceIntegrityError(trial, step, 'trial already completed')
        expected = self._next_step.get(trial, 0)
        if step < expected:
            raise TraceIntegrityError(trial, step, 'duplicate (trial, step)')
        if step > expected:
            raise TraceIntegrityError(trial, step, f"out of order, expected step {expected}")
        try:
            self._handle.write(trace_record.to_line() + '\n')
        except (OSError, ValueError) as exc:
            raise TraceIOError(self.path, exc)
        self._next_step[trial] = step + 1
        self.records_written += 1

    def write_trajectory(self, trajectory, trial_id):
        for trace_record in trajectory_records(trajectory, trial_id):
            self.record(trace_record)
        self.end_trial(trial_id)

    def end_trial(self, trial):
        self._closed_trials.add(trial)
        try:
            self._handle.flush()
        except OSError as exc:
            raise TraceIOError(self.path, exc)

    def close(self):
        if not self._handle.closed:
            self._handle.close()

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        self.close()
        return False


def record(trace_sink, trace_record):
    """Append one record to an open TraceWriter."""
    trace_sink.record(trace_record)


def _parse_int(value, path, line, column):
    try:
        return int(value)
    except (TypeError, ValueError):
        raise TraceFormatError(path, line, f"{column} must be an integer, got {value!r}")


def _parse_row(row, path, line):
    if len(row) != len(TRACE_HEADER):
        raise TraceFormatError(path, line, f"expected {len(TRACE_HEADER)} fields, got {len(row)}")
    trial = _parse_int(row[0], path, line, 'trial')
    step = _parse_int(row[1], path, line, 'step')
    try:
        setting = float(row[2])
    except ValueError:
        raise TraceFormatError(path, line, f"setting_rad must be a number, got {row[2]!r}")
    outcome = _parse_int(row[3], path, line, 'outcome')
    try:
        return TraceRecord(trial, step, setting, outcome)
    except InvalidOutcomeError as exc:
        raise TraceFormatError(path, line, str(exc))


def read_trace(path):
    """
    Load a trace file as {trial_id: [TraceRecord, ...]} ordered by trial, then step.

    Raises TraceFormatError (with line number) for malformed lines and
    TraceIntegrityError for duplicate or missing steps.
    """
    path = Path(path)
    by_trial = defaultdict(dict)
    try:
        with open(path, newline='', encoding='utf-8') as handle:
            reader = csv.reader(handle)
            header = next(reader, None)
            if header is None or tuple(h.strip() for h in header) != TRACE_HEADER:
                raise TraceFormatError(path, 1, f"header must be {','.join(TRACE_HEADER)}")
            for line, row in enumerate(reader, start=2):
                if not row:
                    continue
                trace_record = _parse_row(row, path, line)
                steps = by_trial[trace_record.trial_id]
                if trace_record.step in steps:
                    raise TraceIntegrityError(trace_record.trial_id, trace_record.step, 'duplicate (trial, step)')
                steps[trace_record.step] = trace_record
    except OSError as exc:
        raise TraceIOError(path, exc)

    trials = {}
    for trial in sorted(by_trial):
        steps = by_trial[trial]
        for expected in range(len(steps)):
            if expected not in steps:
                raise TraceIntegrityError(trial, expected, 'missing step')
        trials[trial] = [steps[s] for s in range(len(steps))]
    logger.debug(f"Read {sum(len(r) for r in trials.values())} records for {len(trials)} trials from {path}")
    return trials
