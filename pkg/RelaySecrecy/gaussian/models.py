"""
Value types for the Gaussian relay-eavesdropper channel.

    Y1 = X1 + sqrt(b) X2 + Z1
    Y2 = sqrt(a) X1 + X2 + Z2
    Yr = sqrt(c) X1 + Zr

Gains are on a linear scale, powers are average powers with unit noise.
"""

from dataclasses import dataclass
from typing import Optional

from django.core.exceptions import ValidationError

from RelaySecrecy.validators import validate_gain, validate_power, validate_rate, validate_variance


@dataclass(frozen=True)
class GaussianScenario:
    a: float
    b: float
    c: float
    p1: float
    p2: float

    def __post_init__(self):
        for name in ('a', 'b', 'c', 'p1', 'p2'):
            object.__setattr__(self, name, float(getattr(self, name)))
        self.clean()

    def clean(self):
        """Custom validation for GaussianScenario"""
        for name in ('a', 'b', 'c'):
            validate_gain(getattr(self, name), name)
        validate_power(self.p1, 'p1')
        validate_power(self.p2, 'p2')

    def with_powers(self, p1, p2):
        return GaussianScenario(self.a, self.b, self.c, p1, p2)


@dataclass(frozen=True)
class CompressionConfig:
    """Variance of the compression noise Zc and the relay code rate.

    `delta_c=None` disables the compressed observation altogether.
    """

    delta_c: Optional[float]
    r2: float = 0.0

    def __post_init__(self):
        self.clean()

    def clean(self):
        """Custom validation for CompressionConfig"""
        validate_variance(self.delta_c)
        validate_rate(self.r2, 'r2')

    @property
    def disabled(self):
        return self.delta_c is None


@dataclass(frozen=True)
class CompressionChoice:
    """The compression variance and relay rate used by the closed-form rate.

    `degenerate` marks scenarios (b = 0 or p2 = 0) where the relay cannot
    forward anything; `delta_c` is then None and `r2` is 0.
    """

    delta_c: Optional[float]
    r2: float
    degenerate: bool = False

    def as_config(self):
        return CompressionConfig(self.delta_c, self.r2)


@dataclass(frozen=True)
class PowerBudget:
    p1_max: float
    p2_max: float

    def __post_init__(self):
        object.__setattr__(self, 'p1_max', float(self.p1_max))
        object.__setattr__(self, 'p2_max', float(self.p2_max))
        self.clean()

    def clean(self):
        """Custom validation for PowerBudget"""
        validate_power(self.p1_max, 'p1_max')
        validate_power(self.p2_max, 'p2_max')


@dataclass(frozen=True)
class PowerSolution:
    p1: float
    p2: float
    rate: float
    grid_step: tuple

    def __post_init__(self):
        self.clean()

    def clean(self):
        """Custom validation for PowerSolution"""
        if self.rate < 0:
            raise ValidationError(f'rate must be nonnegative, got {self.rate!r}.')

    def within(self, budget):
        return 0.0 <= self.p1 <= budget.p1_max and 0.0 <= self.p2 <= budget.p2_max

    def as_dict(self):
        return {
            'p1': self.p1,
            'p2': self.p2,
            'rate': self.rate,
            'grid_step': list(self.grid_step),
        }
