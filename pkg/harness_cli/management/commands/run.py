"""
Management command to run a seeded ensemble of adaptive estimation trials
"""
from django.core.management.base import BaseCommand

from core.exceptions import command_error_handler
from harness_cli.experiment import ExperimentConfig
from harness_cli.services.ensemble_runner import EnsembleRunner


class Command(BaseCommand):
    help = 'Simulate an ensemble of adaptive sequences and write trace.csv, trajectories.csv and run.json'

    def add_arguments(self, parser):
        parser.add_argument('--config', help='Flat JSON experiment config')
        parser.add_argument('--theta-true', type=float, dest='theta_true_deg', help='True angle in degrees')
        parser.add_argument('--n', type=int, dest='n_photons', help='Photons per trial')
        parser.add_argument('--trials', type=int, help='Number of trials')
        parser.add_argument('--grid', type=int, dest='grid_size', help='Likelihood grid size')
        parser.add_argument('--seed', type=int, dest='master_seed', help='Master seed')
        parser.add_argument('--out', dest='output_dir', help='Output directory')
        parser.add_argument('--workers', type=int, help='Worker processes (0 = all cores)')
        parser.add_argument('--initial-guess', dest='initial_guess', help='"random" or a fixed angle in degrees')
        parser.add_argument(
            '--non-adaptive',
            action='store_const',
            const=False,
            dest='adaptive',
            help='Keep the measurement fixed at the initial guess',
        )

    @command_error_handler
    def handle(self, *args, **options):
        config = ExperimentConfig.build(
            config_file=options.get('config'),
            theta_true_deg=options.get('theta_true_deg'),
            n_photons=options.get('n_photons'),
            trials=options.get('trials'),
            grid_size=options.get('grid_size'),
            master_seed=options.get('master_seed'),
            output_dir=options.get('output_dir'),
            workers=options.get('workers'),
            initial_guess=options.get('initial_guess'),
            adaptive=options.get('adaptive'),
        )
        result = EnsembleRunner(config).run()
        self.stdout.write(
            self.style.SUCCESS(
                f'Wrote {result.records} trace records for {result.trials} trials to {result.output_dir}'
            )
        )
