from django.apps import AppConfig


class StatsSuiteConfig(AppConfig):
    name = 'stats_suite'
    verbose_name = 'Statistics'
