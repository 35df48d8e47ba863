"""
Tests for the harness services and file emitters
"""
import pickle

import pytest

from core.exceptions import (
    ReplayDivergenceError,
    SourceExhaustedError,
    TraceFormatError,
    TraceIntegrityError,
    TraceIOError,
)
from harness_cli.emitters import CsvEmitter, read_trajectories, trajectory_rows, write_json
from harness_cli.services.ensemble_analyzer import checkpoints, density_rows
from harness_cli.services.ensemble_runner import EnsembleRunner
from harness_cli.services.report_builder import report_row
from harness_cli.services.workers import ReplayTask, TrialTask, map_trials, replay_trial, simulate_trial
from outcome_source.traces import trajectory_records


def square(value):
    return value * value


def small_task(trial=0, **overrides):
    values = dict(
        trial=trial,
        theta_true=0.5,
        n_photons=15,
        master_seed=3,
        grid_size=200,
        initial_guess=None,
        adaptive=True,
    )
    values.update(overrides)
    return TrialTask(**values)


class TestMapTrials:
    """Test ordered fan-out."""

    def test_in_process(self):
        """Test one worker maps in order."""
        assert list(map_trials(square, range(5), 1)) == [0, 1, 4, 9, 16]

    def test_pool_keeps_order(self):
        """Test pool results come back in task order."""
        assert list(map_trials(square, range(50), 3)) == [n * n for n in range(50)]

    def test_empty(self):
        """Test no tasks yields nothing."""
        assert list(map_trials(square, [], 4)) == []


class TestWorkers:
    """Test per-trial work units."""

    def test_simulate_deterministic(self):
        """Test the same task reproduces the same trajectory."""
        assert simulate_trial(small_task())[1] == simulate_trial(small_task())[1]

    def test_trials_independent(self):
        """Test different trial ids give different outcome streams."""
        assert simulate_trial(small_task(0))[1].outcomes != simulate_trial(small_task(1))[1].outcomes

    def test_replay_round_trip(self):
        """Test replaying the records reproduces every MLE index."""
        trial, trajectory = simulate_trial(small_task(4))
        records = tuple(trajectory_records(trajectory, trial))
        recorded = tuple(row[2] for row in trajectory_rows(trajectory, trial))
        _, replayed = replay_trial(ReplayTask(trial, records, 15, 200, True, 0.5, recorded))
        assert replayed.mle_indices == trajectory.mle_indices
        assert replayed.setting_indices == trajectory.setting_indices

    def test_replay_extra_records(self):
        """Test records beyond n_photons are rejected."""
        trial, trajectory = simulate_trial(small_task())
        records = tuple(trajectory_records(trajectory, trial))
        with pytest.raises(TraceIntegrityError):
            replay_trial(ReplayTask(trial, records, 10, 200, True))

    def test_replay_empty(self):
        """Test a trial with no records is exhausted at step 0."""
        with pytest.raises(SourceExhaustedError):
            replay_trial(ReplayTask(0, (), 5, 200, True))

    def test_replay_wrong_mle(self):
        """Test a recorded MLE mismatch is a divergence at that step."""
        trial, trajectory = simulate_trial(small_task())
        records = tuple(trajectory_records(trajectory, trial))
        recorded = [row[2] for row in trajectory_rows(trajectory, trial)]
        recorded[7] = '-1.0000'
        with pytest.raises(ReplayDivergenceError) as excinfo:
            replay_trial(ReplayTask(trial, records, 15, 200, True, 0.5, tuple(recorded)))
        assert excinfo.value.step == 7
        assert excinfo.value.quantity == 'mle'

    @pytest.mark.parametrize('error', [
        ReplayDivergenceError(1, 2, 0.1, 0.2, quantity='mle'),
        SourceExhaustedError(3, 4),
        TraceIntegrityError(5, 6, 'duplicate'),
        TraceFormatError('trace.csv', 7, 'bad'),
        TraceIOError('trace.csv', 'denied'),
    ])
    def test_errors_cross_processes(self, error):
        """Test domain errors survive pickling with their details."""
        restored = pickle.loads(pickle.dumps(error))
        assert type(restored) is type(error)
        assert str(restored) == str(error)
        assert restored.details() == error.details()


class TestEnsembleRunner:
    """Test task construction."""

    def test_tasks(self, config_factory):
        """Test one task per trial with the resolved true angle."""
        config = config_factory(trials=4, theta_true_deg=45.0, initial_guess=10.0)
        tasks = EnsembleRunner(config).tasks()
        assert [task.trial for task in tasks] == [0, 1, 2, 3]
        assert tasks[0].theta_true == pytest.approx(0.7853981633974483)
        assert tasks[0].initial_guess == pytest.approx(0.17453292519943295)

    def test_run_result(self, config_factory):
        """Test the run result counts records."""
        result = EnsembleRunner(config_factory(trials=3, n_photons=5)).run()
        assert (result.trials, result.records, result.workers) == (3, 15, 1)


class TestEmitters:
    """Test CSV and JSON writers."""

    def test_row_length_checked(self, tmp_path):
        """Test rows must match the header."""
        with CsvEmitter(tmp_path / 'x.csv', ('a', 'b')) as emitter:
            with pytest.raises(ValueError):
                emitter.write_row([1])

    def test_json_deterministic(self, tmp_path):
        """Test sorted keys and a trailing newline."""
        path = write_json(tmp_path / 'x.json', {'b': 1, 'a': [1.5]})
        assert path.read_text() == '{\n  "a": [\n    1.5\n  ],\n  "b": 1\n}\n'

    def test_read_trajectories(self, tmp_path):
        """Test dense steps per trial."""
        path = tmp_path / 'trajectories.csv'
        path.write_text('trial,step,mle_deg\n0,0,1.0000\n0,1,2.0000\n1,0,3.0000\n')
        assert read_trajectories(path) == {0: ['1.0000', '2.0000'], 1: ['3.0000']}

    def test_read_trajectories_gap(self, tmp_path):
        """Test a skipped step is an integrity error."""
        path = tmp_path / 'trajectories.csv'
        path.write_text('trial,step,mle_deg\n0,0,1.0000\n0,2,2.0000\n')
        with pytest.raises(TraceIntegrityError):
            read_trajectories(path)

    def test_read_trajectories_header(self, tmp_path):
        """Test the header is checked."""
        path = tmp_path / 'trajectories.csv'
        path.write_text('trial,step,mle\n')
        with pytest.raises(TraceFormatError):
            read_trajectories(path)


class TestAnalysisHelpers:
    """Test checkpoints, density and report rows."""

    @pytest.mark.parametrize('n,expected', [
        (1, [1]),
        (7, [1, 2, 5, 7]),
        (300, [1, 2, 5, 10, 20, 30, 50, 100, 200, 300]),
        (500, [1, 2, 5, 10, 20, 30, 50, 100, 200, 300, 500]),
    ])
    def test_checkpoints(self, n, expected):
        """Test checkpoints are clipped to n and include n."""
        assert checkpoints(n) == expected

    def test_density(self):
        """Test 201 symmetric samples on [-4, 4]."""
        rows = density_rows()
        assert len(rows) == 201
        assert rows[0][0] == '-4.00' and rows[-1][0] == '4.00'
        assert rows[0][1] == rows[-1][1]

    def test_report_row_without_gof(self):
        """Test X2 and accept are blank when the test was skipped."""
        interval = {'lower': 0.05, 'upper': 0.07, 'estimate': 30.01, 'half_width': 0.06}
        row = report_row({
            'theta_true_deg': 30.0,
            'mean_ci': interval,
            'variance_ci': interval,
            'gof': None,
        })
        assert row == ('30.0000', '30.0100', '0.0600', '0.0500', '0.0700', '', '')
