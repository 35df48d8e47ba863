"""
Experiment configuration: settings defaults, then the JSON config file,
then command-line overrides, validated as one flat record.
"""
import json
import logging
import math
from dataclasses import asdict, dataclass
from pathlib import Path

from django.conf import settings

from adaptive_estimator.sequence import EstimatorConfig
from core.exceptions import ConfigurationError
from harness_cli.serializers import RANDOM_GUESS, ExperimentConfigSerializer
from qubit_model.angles import AngleRad

logger = logging.getLogger(__name__)


def default_values():
    """Configuration defaults from settings (environment-overridable)."""
    return {
        'theta_true_deg': 0.0,
        'n_photons': settings.AQSE_N_PHOTONS,
        'trials': settings.AQSE_TRIALS,
        'grid_size': settings.AQSE_GRID_SIZE,
        'master_seed': settings.AQSE_MASTER_SEED,
        'initial_guess': RANDOM_GUESS,
        'significance': settings.AQSE_SIGNIFICANCE,
        'ci_level': settings.AQSE_CI_LEVEL,
        'output_dir': settings.AQSE_OUTPUT_DIR,
        'adaptive': True,
        'workers': settings.AQSE_WORKERS,
    }


def load_config_file(path):
    """Parse a flat JSON config file into a dict."""
    path = Path(path)
    try:
        with open(path, encoding='utf-8') as handle:
            data = json.load(handle)
    except FileNotFoundError:
        raise ConfigurationError(f"Config file not found: {path}", {'path': str(path)})
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"Config file {path} is not valid JSON: {exc}", {'path': str(path)})
    if not isinstance(data, dict):
        raise ConfigurationError(f"Config file {path} must hold a JSON object")
    return data


@dataclass(frozen=True)
class ExperimentConfig:
    theta_true_deg: float
    n_photons: int
    trials: int
    grid_size: int
    master_seed: int
    initial_guess: object
    significance: float
    ci_level: float
    output_dir: str
    adaptive: bool = True
    workers: int = 0

    @classmethod
    def from_dict(cls, data):
        """
        Validate a flat mapping; every invalid field is reported at once.
        """
        unknown = sorted(set(data) - set(ExperimentConfigSerializer().fields))
        if unknown:
            raise ConfigurationError(
                f"Unknown config fields: {', '.join(unknown)}",
                {field: ['Unknown field.'] for field in unknown},
            )
        serializer = ExperimentConfigSerializer(data=data)
        if not serializer.is_valid():
            errors = {field: [str(message) for message in messages] for field, messages in serializer.errors.items()}
            raise ConfigurationError(f"Invalid experiment config: {', '.join(sorted(errors))}", errors)
        return cls(**serializer.validated_data)

    @classmethod
    def build(cls, config_file=None, **overrides):
        """
        Defaults < config file < overrides (None values are ignored).
        """
        data = default_values()
        if config_file:
            data.update(load_config_file(config_file))
        data.update({key: value for key, value in overrides.items() if value is not None})
        return cls.from_dict(data)

    @property
    def theta_true(self):
        return AngleRad.from_degrees(self.theta_true_deg)

    @property
    def initial_guess_rad(self):
        """Fixed initial guess in radians, or None for a per-trial random draw."""
        if self.initial_guess == RANDOM_GUESS:
            return None
        return math.radians(self.initial_guess)

    def estimator_config(self):
        return EstimatorConfig(
            grid_size=self.grid_size,
            initial_guess=self.initial_guess_rad,
            adaptive=self.adaptive,
        )

    def to_dict(self):
        return asdict(self)
