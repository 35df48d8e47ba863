"""
Exception hierarchy and command error handling for the estimation lab.
"""
import functools
import logging

from django.core.management.base import CommandError

logger = logging.getLogger(__name__)


class AqseError(Exception):
    """Base exception for all estimation lab errors."""

    def details(self):
        return {}


class InvalidOutcomeError(AqseError, ValueError):
    """Outcome label outside {1, 2}."""

    def __init__(self, outcome):
        self.outcome = outcome
        super().__init__(f"Invalid outcome label {outcome!r}; expected 1 or 2")

    def __reduce__(self):
        return (self.__class__, (self.outcome,))

    def details(self):
        return {'outcome': repr(self.outcome)}


class DegenerateMeasurementError(AqseError):
    """
    Measurement setting whose outcome probabilities are 0 or 1, so the
    classical Fisher information is singular.
    """
    pass


class GridError(AqseError, ValueError):
    """Invalid likelihood grid definition."""
    pass


class EstimatorError(AqseError):
    """Estimator state cannot produce a maximum likelihood estimate."""
    pass


class SourceExhaustedError(AqseError):
    """A replayed trace ran out of records."""

    def __init__(self, trial, step):
        self.trial = trial
        self.step = step
        super().__init__(f"Trace exhausted for trial {trial} at step {step}")

    def __reduce__(self):
        return (self.__class__, (self.trial, self.step))

    def details(self):
        return {'trial': self.trial, 'step': self.step}


class ReplayDivergenceError(AqseError):
    """
    Replayed estimator disagrees with the recorded trace.
    Usually means the trace came from a different estimator version.
    """

    def __init__(self, trial, step, recorded, expected, quantity='setting'):
        self.trial = trial
        self.step = step
        self.recorded = recorded
        self.expected = expected
        self.quantity = quantity
        super().__init__(
            f"Replay diverged at trial {trial}, step {step}: recorded {quantity} "
            f"{recorded!r}, recomputed {expected!r}"
        )

    def __reduce__(self):
        return (self.__class__, (self.trial, self.step, self.recorded, self.expected, self.quantity))

    def details(self):
        return {
            'trial': self.trial,
            'step': self.step,
            'quantity': self.quantity,
            'recorded': self.recorded,
            'expected': self.expected,
        }


class TraceFormatError(AqseError):
    """Malformed trace or trajectory file."""

    def __init__(self, path, line, reason):
        self.path = str(path)
        self.line = line
        self.reason = reason
        super().__init__(f"{self.path}:{line}: {reason}")

    def __reduce__(self):
        return (self.__class__, (self.path, self.line, self.reason))

    def details(self):
        return {'path': self.path, 'line': self.line, 'reason': self.reason}


class TraceIntegrityError(AqseError):
    """Duplicate or out-of-order trace record."""

    def __init__(self, trial, step, reason):
        self.trial = trial
        self.step = step
        self.reason = reason
        super().__init__(f"Trace record (trial {trial}, step {step}) rejected: {reason}")

    def __reduce__(self):
        return (self.__class__, (self.trial, self.step, self.reason))

    def details(self):
        return {'trial': self.trial, 'step': self.step}


class TraceIOError(AqseError):
    """Reading or writing an artifact file failed."""

    def __init__(self, path, error):
        self.path = str(path)
        self.error = str(error)
        super().__init__(f"I/O failure on {self.path}: {error}")

    def __reduce__(self):
        return (self.__class__, (self.path, self.error))

    def details(self):
        return {'path': self.path}


class DistributionDomainError(AqseError, ValueError):
    """Probability or degrees of freedom out of range."""
    pass


class InsufficientSampleError(AqseError, ValueError):
    """Too few observations for the requested statistic."""

    def __init__(self, required, actual, what='sample'):
        self.required = required
        self.actual = actual
        self.what = what
        super().__init__(f"{what} needs at least {required} values, got {actual}")

    def __reduce__(self):
        return (self.__class__, (self.required, self.actual, self.what))

    def details(self):
        return {'required': self.required, 'actual': self.actual}


class BinningError(AqseError):
    """Bin specification with a zero expected count."""
    pass


class ConfigurationError(AqseError):
    """Invalid experiment configuration."""

    def __init__(self, message, errors=None):
        self.errors = errors or {}
        super().__init__(message)

    def __reduce__(self):
        return (self.__class__, (str(self), self.errors))

    def details(self):
        return dict(self.errors)


def build_error_payload(exc):
    """
    Consistent error payload for any exception raised by a command.
    """
    if isinstance(exc, AqseError):
        return {
            'error': True,
            'type': type(exc).__name__,
            'message': str(exc),
            'details': exc.details(),
        }
    return {
        'error': True,
        'type': 'UnexpectedError',
        'message': 'An unexpected error occurred.',
        'details': {'detail': str(exc)},
    }


def command_error_handler(handle):
    """
    Wrap a management command's handle() so every failure leaves with a
    non-zero exit status and a consistent message.
    """
    @functools.wraps(handle)
    def wrapper(self, *args, **options):
        try:
            return handle(self, *args, **options)
        except CommandError:
            raise
        except AqseError as exc:
            payload = build_error_payload(exc)
            logger.error(f"{payload['type']}: {payload['message']}")
            raise CommandError(payload['message']) from exc
        except Exception as exc:
            logger.error(f"Unhandled exception: {exc}", exc_info=True)
            payload = build_error_payload(exc)
            raise CommandError(f"{payload['message']} {payload['details']['detail']}") from exc

    return wrapper
