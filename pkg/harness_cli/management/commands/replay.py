"""
Management command to verify a trace by replaying the estimator
"""
from django.core.management.base import BaseCommand

from core.exceptions import command_error_handler
from harness_cli.services.replay_verifier import ReplayVerifier


class Command(BaseCommand):
    help = 'Replay recorded outcomes and report the first divergence or a full match'

    def add_arguments(self, parser):
        parser.add_argument('--trace', required=True, help='Trace CSV file')
        parser.add_argument('--workers', type=int, help='Worker processes (0 = all cores)')

    @command_error_handler
    def handle(self, *args, **options):
        report = ReplayVerifier(options['trace'], workers=options.get('workers')).verify()
        self.stdout.write(self.style.SUCCESS(report.message))
