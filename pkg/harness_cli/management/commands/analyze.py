"""
Management command to analyze a run directory
"""
from django.core.management.base import BaseCommand

from core.exceptions import command_error_handler
from harness_cli.services.ensemble_analyzer import EnsembleAnalyzer


class Command(BaseCommand):
    help = 'Recompute final estimates from the trace and write summary.json and plot CSVs'

    def add_arguments(self, parser):
        parser.add_argument('--in', required=True, dest='input_dir', help='Run directory')
        parser.add_argument('--significance', type=float, help='Goodness-of-fit significance level')
        parser.add_argument('--ci', type=float, dest='ci_level', help='Confidence level')
        parser.add_argument('--workers', type=int, help='Worker processes (0 = all cores)')

    @command_error_handler
    def handle(self, *args, **options):
        result = EnsembleAnalyzer(
            options['input_dir'],
            significance=options.get('significance'),
            ci_level=options.get('ci_level'),
            workers=options.get('workers'),
        ).analyze()
        summary = result.summary
        mean, variance = summary['mean_ci'], summary['variance_ci']
        self.stdout.write(
            f"mu = {mean['estimate']:.4f} +/- {mean['half_width']:.4f} deg, "
            f"v in [{variance['lower']:.4f}, {variance['upper']:.4f}] rad^2"
        )
        gof = summary['gof']
        if gof is None:
            self.stdout.write(self.style.WARNING('Goodness-of-fit skipped (too few trials)'))
        elif gof['accept']:
            self.stdout.write(self.style.SUCCESS(f"X2 = {gof['statistic']:.3f} <= {gof['critical_value']:.3f}: accept"))
        else:
            self.stdout.write(self.style.WARNING(f"X2 = {gof['statistic']:.3f} > {gof['critical_value']:.3f}: reject"))
        self.stdout.write(self.style.SUCCESS(f'Wrote {len(result.files)} files to {options["input_dir"]}'))
