from django.apps import AppConfig


class HarnessCliConfig(AppConfig):
    name = 'harness_cli'
    verbose_name = 'Ensemble harness'
