from django.apps import AppConfig


class AdaptiveEstimatorConfig(AppConfig):
    name = 'adaptive_estimator'
    verbose_name = 'Adaptive estimator'
