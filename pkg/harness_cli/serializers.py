"""
Serializers for experiment configuration and stored ensemble summaries.
"""
import math
import numbers

from rest_framework import serializers

RANDOM_GUESS = 'random'


class InitialGuessField(serializers.Field):
    """
    Either the string "random" or a fixed angle in degrees.
    """
    default_error_messages = {
        'invalid': 'Must be "random" or a finite angle in degrees.',
    }

    def to_internal_value(self, data):
        if isinstance(data, str):
            if data.strip().lower() == RANDOM_GUESS:
                return RANDOM_GUESS
            try:
                data = float(data)
            except ValueError:
                self.fail('invalid')
        if isinstance(data, bool) or not isinstance(data, numbers.Real) or not math.isfinite(data):
            self.fail('invalid')
        return float(data) % 90.0

    def to_representation(self, value):
        return value


class ExperimentConfigSerializer(serializers.Serializer):
    """
    Flat experiment configuration; angles in degrees.
    """
    theta_true_deg = serializers.FloatField()
    n_photons = serializers.IntegerField(min_value=1)
    trials = serializers.IntegerField(min_value=1)
    grid_size = serializers.IntegerField(min_value=2)
    master_seed = serializers.IntegerField(min_value=0)
    initial_guess = InitialGuessField()
    significance = serializers.FloatField(min_value=0.0, max_value=1.0)
    ci_level = serializers.FloatField(min_value=0.0, max_value=1.0)
    output_dir = serializers.CharField(max_length=4096)
    adaptive = serializers.BooleanField()
    workers = serializers.IntegerField(min_value=0)

    def validate_theta_true_deg(self, value):
        """
        Wrap the true angle into [0, 90).
        """
        if not math.isfinite(value):
            raise serializers.ValidationError('Must be a finite angle in degrees.')
        wrapped = value % 90.0
        return 0.0 if wrapped >= 90.0 else wrapped

    def validate_significance(self, value):
        if not 0.0 < value < 1.0:
            raise serializers.ValidationError('Must lie strictly between 0 and 1.')
        return value

    def validate_ci_level(self, value):
        if not 0.0 < value < 1.0:
            raise serializers.ValidationError('Must lie strictly between 0 and 1.')
        return value


class IntervalSerializer(serializers.Serializer):
    lower = serializers.FloatField()
    upper = serializers.FloatField()
    level = serializers.FloatField()
    estimate = serializers.FloatField()
    half_width = serializers.FloatField()
    units = serializers.CharField(allow_blank=True)

    def validate(self, data):
        if data['lower'] > data['upper']:
            raise serializers.ValidationError('Interval bounds are out of order.')
        return data


class GofSummarySerializer(serializers.Serializer):
    statistic = serializers.FloatField()
    dof = serializers.IntegerField(min_value=1)
    critical_value = serializers.FloatField()
    accept = serializers.BooleanField()
    significance = serializers.FloatField()
    p_value = serializers.FloatField()
    counts = serializers.ListField(child=serializers.IntegerField(min_value=0))
    expected = serializers.ListField(child=serializers.FloatField())


class EnsembleSummarySerializer(serializers.Serializer):
    """
    Shape of summary.json as read back by the report command.
    """
    theta_true_deg = serializers.FloatField()
    n_photons = serializers.IntegerField(min_value=1)
    trials = serializers.IntegerField(min_value=1)
    mean_ci = IntervalSerializer()
    variance_ci = IntervalSerializer()
    gof = GofSummarySerializer(allow_null=True)
    efficiency_ratio = serializers.FloatField()
