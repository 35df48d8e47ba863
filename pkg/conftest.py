"""
Pytest configuration and fixtures.
"""
import factory
import pytest

from harness_cli.experiment import ExperimentConfig


class ExperimentConfigFactory(factory.Factory):
    """
    Small, fast experiment configs; built through validation like the CLI.
    """

    class Meta:
        model = ExperimentConfig

    theta_true_deg = 30.0
    n_photons = 20
    trials = 6
    grid_size = 400
    master_seed = 20120401
    initial_guess = 'random'
    significance = 0.10
    ci_level = 0.90
    output_dir = factory.Sequence(lambda n: f"runs/test-{n}")
    adaptive = True
    workers = 1

    @classmethod
    def _create(cls, model_class, *args, **kwargs):
        return model_class.from_dict(kwargs)

    @classmethod
    def _build(cls, model_class, *args, **kwargs):
        return model_class.from_dict(kwargs)


@pytest.fixture
def config_factory(tmp_path):
    """
    Build ExperimentConfigs writing under tmp_path.
    """
    def build(name='run', **kwargs):
        kwargs.setdefault('output_dir', str(tmp_path / name))
        return ExperimentConfigFactory(**kwargs)

    return build


@pytest.fixture
def run_dir(tmp_path):
    """Output directory for a command-level run."""
    return tmp_path / 'run'


@pytest.fixture
def small_run_options(run_dir):
    """call_command options for a quick ensemble."""
    return {
        'theta_true_deg': 60.0,
        'n_photons': 20,
        'trials': 8,
        'grid_size': 400,
        'master_seed': 7,
        'output_dir': str(run_dir),
        'workers': 1,
    }
