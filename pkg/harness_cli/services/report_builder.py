"""
Collect analysis summaries into one table, one row per true angle.
"""
import logging

from core.exceptions import ConfigurationError
from core.utils import format_fixed
from harness_cli.emitters import read_json, write_csv
from harness_cli.serializers import EnsembleSummarySerializer

logger = logging.getLogger(__name__)

REPORT_HEADER = ('theta_true_deg', 'mu_deg', 'mu_halfwidth_deg', 'v_lower', 'v_upper', 'X2', 'accept')


def load_summary(path):
    serializer = EnsembleSummarySerializer(data=read_json(path))
    if not serializer.is_valid():
        raise ConfigurationError(f"{path} is not an ensemble summary", dict(serializer.errors))
    return serializer.validated_data


def report_row(summary):
    mean, variance, gof = summary['mean_ci'], summary['variance_ci'], summary['gof']
    return (
        format_fixed(summary['theta_true_deg'], 4),
        format_fixed(mean['estimate'], 4),
        format_fixed(mean['half_width'], 4),
        format_fixed(variance['lower'], 4),
        format_fixed(variance['upper'], 4),
        '' if gof is None else format_fixed(gof['statistic'], 3),
        '' if gof is None else str(gof['accept']).lower(),
    )


def build_report(summary_paths, output_path):
    """
    Write the table in the order the summaries were given.
    """
    if not summary_paths:
        raise ConfigurationError('report needs at least one summary.json')
    rows = [report_row(load_summary(path)) for path in summary_paths]
    write_csv(output_path, REPORT_HEADER, rows)
    logger.info(f"Report of {len(rows)} settings written to {output_path}")
    return rows
