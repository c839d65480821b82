"""
Sweep descriptions and their result rows.
"""

from dataclasses import dataclass, field
from typing import Optional

from django.conf import settings
from django.core.exceptions import ValidationError

from RelaySecrecy.gaussian.models import PowerBudget
from RelaySecrecy.validators import validate_gain, validate_scheme_list

PROPOSED = 'proposed'
WT_HI = 'wt_hi'
DIRECT = 'direct'


@dataclass(frozen=True)
class SweepSpec:
    """A sweep over the relay-destination gain b.

    With `power_control` off every scheme runs at (p1_max, p2_max);
    otherwise each point is optimised over the power budget.
    """

    a: float
    c: float
    b_min: float
    b_max: float
    steps: int
    budget: PowerBudget
    power_control: bool = False
    schemes: tuple = field(default_factory=lambda: tuple(settings.SWEEP_SCHEMES))
    resolution: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, 'schemes', tuple(self.schemes))
        self.clean()

    def clean(self):
        """Custom validation for SweepSpec"""
        for name in ('a', 'c', 'b_min', 'b_max'):
            validate_gain(getattr(self, name), name)
        if self.b_min > self.b_max:
            raise ValidationError(f'b_min ({self.b_min}) must not exceed b_max ({self.b_max}).')
        if self.steps < 1:
            raise ValidationError('steps must be at least 1.')
        validate_scheme_list(list(self.schemes))


@dataclass(frozen=True)
class SweepRow:
    b: float
    rates: dict
    powers: Optional[dict] = None

    def __post_init__(self):
        if any(rate < 0 for rate in self.rates.values()):
            raise ValidationError(f'Sweep rates must be nonnegative: {self.rates}')
