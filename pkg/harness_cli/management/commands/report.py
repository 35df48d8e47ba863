"""
Management command to tabulate analysis summaries
"""
from django.core.management.base import BaseCommand

from core.exceptions import command_error_handler
from harness_cli.emitters import REPORT_FILE
from harness_cli.services.report_builder import build_report


class Command(BaseCommand):
    help = 'Build a table of mean and variance intervals from summary.json files'

    def add_arguments(self, parser):
        parser.add_argument('summaries', nargs='*', help='summary.json files')
        parser.add_argument('--out', default=REPORT_FILE, help='Output CSV (default report.csv)')

    @command_error_handler
    def handle(self, *args, **options):
        rows = build_report(options['summaries'], options['out'])
        self.stdout.write(self.style.SUCCESS(f"Wrote {len(rows)} rows to {options['out']}"))
