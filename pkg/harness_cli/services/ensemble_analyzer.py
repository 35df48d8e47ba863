"""
Ensemble analysis: recompute final estimates from the stored trace and
emit the summary and plot-ready CSVs.
"""
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from django.conf import settings

from adaptive_estimator.sequence import likelihood_snapshots
from core.exceptions import TraceIOError
from core.utils import format_fixed, format_significant
from harness_cli.emitters import (
    CONSISTENCY_FILE,
    DENSITY_FILE,
    HISTOGRAM_FILE,
    RUN_FILE,
    SNAPSHOT_FILE,
    SUMMARY_FILE,
    TRACE_FILE,
    TRAJECTORIES_HEAD_FILE,
    degrees_text,
    read_json,
    write_csv,
    write_json,
)
from harness_cli.services.replay_verifier import ReplayVerifier
from qubit_model.information import QUANTUM_FISHER_INFORMATION
from stats_suite.distributions import normal_pdf
from stats_suite.gof import MINIMUM_SAMPLE, BinSpec, bin_counts, gof_test, normal_bin_probs
from stats_suite.intervals import mean_ci, variance_ci
from stats_suite.standardize import standardize

logger = logging.getLogger(__name__)

CONSISTENCY_CHECKPOINTS = (1, 2, 5, 10, 20, 30, 50, 100, 200, 300)
SNAPSHOT_STEPS = (1, 2, 3, 10)
HEAD_TRIALS = 10
DENSITY_POINTS = 201
DENSITY_LIMIT = 4.0

HISTOGRAM_HEADER = ('bin_index', 'lower', 'upper', 'observed', 'expected')
CONSISTENCY_HEADER = ('n', 'median_abs_error_deg', 'rmse_deg', 'sqrt_n_rmse_rad')
SNAPSHOT_HEADER = ('step', 'theta_deg', 'increment', 'log_likelihood')
DENSITY_HEADER = ('x', 'density')


def checkpoints(n_photons):
    return sorted({k for k in CONSISTENCY_CHECKPOINTS if k <= n_photons} | {n_photons})


def interval_payload(interval):
    return {
        'lower': interval.lower,
        'upper': interval.upper,
        'level': interval.level,
        'estimate': interval.estimate,
        'half_width': interval.half_width,
        'units': interval.units,
    }


def gof_payload(result):
    if result is None:
        return None
    return {
        'statistic': result.statistic,
        'dof': result.dof,
        'critical_value': result.critical_value,
        'accept': result.accept,
        'significance': result.significance,
        'p_value': result.p_value,
        'counts': [int(c) for c in result.counts],
        'expected': [float(e) for e in result.expected],
    }


def consistency_rows(trajectories, n_photons):
    """Median |error| and RMSE of the wrapped error across trials after k photons."""
    errors = np.vstack([trajectory.errors_rad() for trajectory in trajectories])
    rows = []
    for k in checkpoints(n_photons):
        column = errors[:, k - 1]
        rmse = math.sqrt(float(np.mean(column ** 2)))
        rows.append((
            k,
            format_fixed(math.degrees(float(np.median(np.abs(column)))), 4),
            format_fixed(math.degrees(rmse), 4),
            format_fixed(math.sqrt(k) * rmse, 6),
        ))
    return rows


def histogram_rows(sample):
    bins = BinSpec().shifted_for(sample)
    counts = bin_counts(sample)
    expected = sample.r * normal_bin_probs(bins)
    return [
        (b, format_significant(lower), format_significant(upper), int(count), format_significant(float(exp)))
        for b, (lower, upper, count, exp) in enumerate(
            zip(bins.lower_edges, bins.upper_edges, counts, expected)
        )
    ]


def snapshot_rows(trajectory, n_photons, stride):
    rows = []
    step_size = trajectory.step_size
    for step, increment, values in likelihood_snapshots(trajectory, SNAPSHOT_STEPS + (n_photons,)):
        for index in range(0, trajectory.grid_size, stride):
            rows.append((
                step,
                degrees_text(index * step_size),
                format_significant(float(increment[index])),
                format_significant(float(values[index])),
            ))
    return rows


def head_rows(trajectories):
    head = trajectories[:HEAD_TRIALS]
    columns = [trajectory.mle_rad() for trajectory in head]
    header = ('step',) + tuple(f"trial_{i}" for i in range(len(head)))
    rows = [
        (step,) + tuple(degrees_text(column[step]) for column in columns)
        for step in range(len(head[0]))
    ]
    return header, rows


def density_rows():
    return [
        (format_fixed(x, 2), format_significant(normal_pdf(x)))
        for x in np.linspace(-DENSITY_LIMIT, DENSITY_LIMIT, DENSITY_POINTS)
    ]


@dataclass(frozen=True)
class AnalysisResult:
    summary: dict
    files: list = field(default_factory=list)

    @property
    def accept(self):
        gof = self.summary['gof']
        return None if gof is None else gof['accept']


class EnsembleAnalyzer:
    """
    Analyze a run directory. Final estimates are always recomputed by
    replaying trace.csv; theta_true is read from run.json only to report
    errors and center the mean interval.
    """

    def __init__(self, input_dir, significance=None, ci_level=None, workers=None):
        self.input_dir = Path(input_dir)
        self.significance = significance
        self.ci_level = ci_level
        self.workers = workers

    def _run_info(self):
        path = self.input_dir / RUN_FILE
        if not path.exists():
            raise TraceIOError(path, 'run.json not found; analyze needs the run provenance')
        return read_json(path)

    def analyze(self):
        provenance = self._run_info()
        info = provenance.get('config', {})
        significance = self.significance
        if significance is None:
            significance = info.get('significance', settings.AQSE_SIGNIFICANCE)
        ci_level = self.ci_level
        if ci_level is None:
            ci_level = info.get('ci_level', settings.AQSE_CI_LEVEL)

        report = ReplayVerifier(self.input_dir / TRACE_FILE, workers=self.workers, run_info=info).verify()
        trajectories = report.trajectories
        n_photons = len(trajectories[0])
        grid_size = trajectories[0].grid_size
        theta_true = trajectories[0].true_value
        finals = [trajectory.final_mle for trajectory in trajectories]
        logger.info(f"Analyzing {len(finals)} trials of {n_photons} photons at theta_true={theta_true.degrees:.4f} deg")

        mean = mean_ci(finals, ci_level, reference=theta_true)
        variance = variance_ci(finals, n_photons, ci_level)
        sample = standardize(finals, n_photons, grid_size=grid_size)
        gof = None
        if sample.r >= MINIMUM_SAMPLE:
            gof = gof_test(sample, significance)
        else:
            logger.warning(f"Skipping goodness-of-fit: {sample.r} trials < {MINIMUM_SAMPLE}")
        target = 1.0 / QUANTUM_FISHER_INFORMATION
        if not variance.contains(target):
            logger.warning(
                f"Variance CI [{variance.lower:.5f}, {variance.upper:.5f}] rad^2 misses 1/J = {target}"
            )

        summary = {
            'theta_true_deg': theta_true.degrees,
            'n_photons': n_photons,
            'trials': len(finals),
            'mean_ci': interval_payload(mean),
            'variance_ci': interval_payload(variance),
            'gof': gof_payload(gof),
            'efficiency_ratio': variance.estimate * QUANTUM_FISHER_INFORMATION,
            'consistency': [
                {'n': row[0], 'median_abs_error_deg': float(row[1]), 'rmse_deg': float(row[2])}
                for row in consistency_rows(trajectories, n_photons)
            ],
            'provenance': {
                'config': info,
                'code_version': provenance.get('code_version'),
                'seed_mixing': provenance.get('seed_mixing'),
                'replay': report.message,
            },
        }

        out = self.input_dir
        files = [
            write_json(out / SUMMARY_FILE, summary),
            write_csv(out / HISTOGRAM_FILE, HISTOGRAM_HEADER, histogram_rows(sample)),
            write_csv(out / CONSISTENCY_FILE, CONSISTENCY_HEADER, consistency_rows(trajectories, n_photons)),
            write_csv(
                out / SNAPSHOT_FILE,
                SNAPSHOT_HEADER,
                snapshot_rows(trajectories[0], n_photons, settings.AQSE_SNAPSHOT_STRIDE),
            ),
            write_csv(out / TRAJECTORIES_HEAD_FILE, *head_rows(trajectories)),
            write_csv(out / DENSITY_FILE, DENSITY_HEADER, density_rows()),
        ]
        verdict = 'n/a' if gof is None else ('accept' if gof.accept else 'reject')
        logger.info(
            f"mu = {mean.estimate:.4f} +/- {mean.half_width:.4f} deg, "
            f"v in [{variance.lower:.4f}, {variance.upper:.4f}] rad^2, gof {verdict}"
        )
        return AnalysisResult(summary=summary, files=files)
