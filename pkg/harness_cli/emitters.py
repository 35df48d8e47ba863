"""
File emitters for run and analysis artifacts: plot-ready CSVs and JSON.
"""
import csv
import json
import logging
import math
from pathlib import Path

from core.exceptions import TraceFormatError, TraceIntegrityError, TraceIOError
from core.utils import format_fixed

logger = logging.getLogger(__name__)

TRACE_FILE = 'trace.csv'
TRAJECTORIES_FILE = 'trajectories.csv'
RUN_FILE = 'run.json'
SUMMARY_FILE = 'summary.json'
HISTOGRAM_FILE = 'histogram.csv'
CONSISTENCY_FILE = 'consistency.csv'
SNAPSHOT_FILE = 'likelihood_snapshot.csv'
TRAJECTORIES_HEAD_FILE = 'trajectories_head.csv'
DENSITY_FILE = 'normal_density.csv'
REPORT_FILE = 'report.csv'

TRAJECTORY_HEADER = ('trial', 'step', 'mle_deg')
DEGREE_DECIMALS = 4


class CsvEmitter:
    """
    Write a CSV with a fixed header and LF line endings.

    Usage:
        with CsvEmitter(path, ('x', 'density')) as emitter:
            emitter.write_row([0.0, 0.3989])
    """

    def __init__(self, path, header):
        self.path = Path(path)
        self.header = tuple(header)
        self.rows_written = 0
        try:
            self._handle = open(self.path, 'w', newline='', encoding='utf-8')
            self._writer = csv.writer(self._handle, lineterminator='\n')
            self._writer.writerow(self.header)
        except OSError as exc:
            raise TraceIOError(self.path, exc)

    def write_row(self, row):
        if len(row) != len(self.header):
            raise ValueError(f"{self.path.name}: expected {len(self.header)} fields, got {len(row)}")
        try:
            self._writer.writerow(row)
        except OSError as exc:
            raise TraceIOError(self.path, exc)
        self.rows_written += 1

    def write_rows(self, rows):
        for row in rows:
            self.write_row(row)

    def close(self):
        if not self._handle.closed:
            self._handle.close()

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        self.close()
        return False


def write_csv(path, header, rows):
    with CsvEmitter(path, header) as emitter:
        emitter.write_rows(rows)
    logger.info(f"Wrote {emitter.rows_written} rows to {emitter.path}")
    return emitter.path


def write_json(path, data):
    """Deterministic JSON: sorted keys, two-space indent, trailing newline."""
    path = Path(path)
    try:
        path.write_text(json.dumps(data, sort_keys=True, indent=2) + '\n', encoding='utf-8')
    except OSError as exc:
        raise TraceIOError(path, exc)
    logger.info(f"Wrote {path}")
    return path


def read_json(path):
    path = Path(path)
    try:
        return json.loads(path.read_text(encoding='utf-8'))
    except FileNotFoundError as exc:
        raise TraceIOError(path, exc)
    except json.JSONDecodeError as exc:
        raise TraceFormatError(path, exc.lineno, f"invalid JSON: {exc.msg}")


def degrees_text(radians):
    return format_fixed(math.degrees(radians), DEGREE_DECIMALS)


def trajectory_rows(trajectory, trial_id):
    """(trial, step, mle_deg) rows; row `step` holds the MLE after trace step `step`."""
    return [
        (trial_id, step, degrees_text(estimate))
        for step, estimate in enumerate(trajectory.mle_rad())
    ]


def read_trajectories(path):
    """
    Load trajectories.csv as {trial: [mle_deg text, ...]} with dense steps.
    """
    path = Path(path)
    by_trial = {}
    try:
        with open(path, newline='', encoding='utf-8') as handle:
            reader = csv.reader(handle)
            header = next(reader, None)
            if header is None or tuple(header) != TRAJECTORY_HEADER:
                raise TraceFormatError(path, 1, f"header must be {','.join(TRAJECTORY_HEADER)}")
            for line, row in enumerate(reader, start=2):
                if not row:
                    continue
                if len(row) != len(TRAJECTORY_HEADER):
                    raise TraceFormatError(path, line, f"expected 3 fields, got {len(row)}")
                try:
                    trial, step = int(row[0]), int(row[1])
                    float(row[2])
                except ValueError:
                    raise TraceFormatError(path, line, f"malformed row {','.join(row)!r}")
                estimates = by_trial.setdefault(trial, [])
                if step != len(estimates):
                    raise TraceIntegrityError(trial, step, f"expected step {len(estimates)}")
                estimates.append(row[2])
    except OSError as exc:
        raise TraceIOError(path, exc)
    return by_trial
