from django.apps import AppConfig


class OutcomeSourceConfig(AppConfig):
    name = 'outcome_source'
    verbose_name = 'Outcome sources'
