from django.apps import AppConfig


class QubitModelConfig(AppConfig):
    name = 'qubit_model'
    verbose_name = 'Qubit model'
