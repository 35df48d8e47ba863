"""
Where outcomes come from: a seeded Bernoulli simulator of the two detectors,
or a cursor over a recorded trace.
"""
import logging
from typing import Protocol

from core.exceptions import ReplayDivergenceError, SourceExhaustedError
from core.validators import ParameterValidator
from outcome_source.seeding import seed_record, trial_rng
from qubit_model.angles import as_angle, as_radians, wrapped_deviation
from qubit_model.states import probability_of_first

logger = logging.getLogger(__name__)

REPLAY_TOLERANCE = 1e-9


class OutcomeSource(Protocol):
    """Anything that answers "which detector clicked" for a measurement setting."""

    def draw(self, setting) -> int:
        ...


def simulated_draw(theta_true, setting, rng):
    """
    Outcome 1 with probability cos^2(2 (setting - theta_true) + pi/4), else 2.
    Consumes exactly one uniform variate from `rng`.
    """
    p1 = probability_of_first(theta_true, setting)
    return 1 if rng.random() < p1 else 2


class SimulatedSource:
    """
    Ideal photon source and detector pair for one trial.
    """

    def __init__(self, theta_true, rng, seed_record=None):
        self.theta_true = as_angle(theta_true)
        self.rng = rng
        self.seed_record = seed_record or {}
        self.draws = 0

    @classmethod
    def for_trial(cls, theta_true, master_seed, trial):
        return cls(theta_true, trial_rng(master_seed, trial), seed_record(master_seed, trial))

    def draw(self, setting):
        self.draws += 1
        return simulated_draw(self.theta_true, setting, self.rng)


class ReplayCursor:
    """
    Position within one trial's recorded (setting, outcome) pairs.
    """

    def __init__(self, records, trial=0):
        self.records = list(records)
        self.trial = trial
        self.position = 0

    def has_next(self):
        return self.position < len(self.records)

    def peek(self):
        if not self.has_next():
            raise SourceExhaustedError(self.trial, self.position)
        return self.records[self.position]

    def advance(self):
        record = self.peek()
        self.position += 1
        return record


def replay_draw(cursor, expected_setting):
    """
    Recorded outcome of the next step, provided its recorded setting agrees
    with the setting the estimator recomputed.

    Raises SourceExhaustedError past the last record and
    ReplayDivergenceError when the settings differ by more than 1e-9 rad.
    """
    record = cursor.peek()
    expected = as_radians(expected_setting)
    recorded = as_radians(record.setting)
    if abs(wrapped_deviation(recorded - expected)) > REPLAY_TOLERANCE:
        raise ReplayDivergenceError(
            trial=cursor.trial,
            step=cursor.position,
            recorded=recorded,
            expected=expected,
        )
    cursor.advance()
    return ParameterValidator.validate_outcome(record.outcome)


class ReplaySource:
    """OutcomeSource backed by a recorded trace."""

    def __init__(self, cursor):
        self.cursor = cursor
        self.seed_record = {'trial': cursor.trial, 'replayed': True}

    @classmethod
    def from_records(cls, records, trial=0):
        return cls(ReplayCursor(records, trial=trial))

    def draw(self, setting):
        return replay_draw(self.cursor, setting)
