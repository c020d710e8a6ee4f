"""Salary envelope (minimum, optimal, maximum) and the motivational-force gate."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Tuple

from .errors import DomainError, ValidationError
from .model import Money, ModelParameters, ResearcherProfile, total_salary

MODES = ("consistent", "paper_replication")

# maximum performance component as printed in the paper's extremum sum; it
# disagrees with the 2,824,150 obtained from the performance formula itself
PAPER_MAX_PERFORMANCE_KZT = 3_128_133.0

EMERGENCE_LOW = 0.5
EMERGENCE_HIGH = 1.0


def minimum_profile() -> ResearcherProfile:
    return ResearcherProfile(qualification_level=1, name="minimum")


@dataclass(frozen=True)
class SalaryEnvelope:
    minimum: Money
    maximum: Money
    optimal: Money
    min_profile: ResearcherProfile
    max_profile: ResearcherProfile
    mode: str = "consistent"


@dataclass(frozen=True)
class MotivationAssessment:
    mf: float
    band: str

    @property
    def display(self) -> str:
        return f"{self.mf:.2f}"


def salary_min(params: ModelParameters) -> Money:
    return total_salary(minimum_profile(), params).total


def salary_max(params: ModelParameters, mode: str = "consistent") -> Money:
    """Total salary at the maximum profile.

    The model is non-decreasing in every metric, so the corner of the metric
    box attains the maximum. In paper_replication mode the performance
    component is replaced by the paper's printed constant.
    """
    if mode not in MODES:
        raise ValidationError("mode", f"must be one of {MODES}, got {mode!r}")
    breakdown = total_salary(params.max_profile, params)
    if mode == "paper_replication":
        return breakdown.total - breakdown.performance_total + PAPER_MAX_PERFORMANCE_KZT
    return breakdown.total


def optimal_salary(minimum: Money, maximum: Money) -> Money:
    """Geometric mean of the envelope endpoints."""
    if not minimum > 0:
        raise DomainError(f"minimum must be positive, got {minimum}")
    if maximum < minimum:
        raise DomainError(f"maximum {maximum} is below minimum {minimum}")
    return math.sqrt(minimum * maximum)


def logarithmic_mean(minimum: Money, maximum: Money) -> Money:
    """(b - a) / (ln b - ln a), kept for comparison with the geometric mean."""
    if not minimum > 0:
        raise DomainError(f"minimum must be positive, got {minimum}")
    if maximum == minimum:
        return minimum
    return (maximum - minimum) / (math.log(maximum) - math.log(minimum))


def salary_envelope(params: ModelParameters, mode: str = "consistent") -> SalaryEnvelope:
    low = salary_min(params)
    high = salary_max(params, mode)
    return SalaryEnvelope(
        minimum=low,
        maximum=high,
        optimal=optimal_salary(low, high),
        min_profile=minimum_profile(),
        max_profile=params.max_profile,
        mode=mode,
    )


def motivational_force(expectancy: float, instrumentality: float, valence: float) -> MotivationAssessment:
    """MF = E * I * V, classified against the open band 0.5 < MF < 1.

    Exactly 0.5 or 1 is reported as ``boundary``; anything below 0.5 is
    ``sub_threshold``.
    """
    for name, value in (("expectancy", expectancy), ("instrumentality", instrumentality), ("valence", valence)):
        if isinstance(value, bool) or not isinstance(value, (int, float)) or not 0 <= value <= 1:
            raise ValidationError(name, f"must lie in [0, 1], got {value!r}")
    mf = expectancy * instrumentality * valence
    if EMERGENCE_LOW < mf < EMERGENCE_HIGH:
        band = "emergence_band"
    elif mf in (EMERGENCE_LOW, EMERGENCE_HIGH):
        band = "boundary"
    else:
        band = "sub_threshold"
    return MotivationAssessment(mf, band)


def profile_motivation(profile: ResearcherProfile) -> MotivationAssessment:
    return motivational_force(profile.expectancy, profile.instrumentality, profile.valence)


def figure_data(envelope: SalaryEnvelope) -> List[Tuple[str, Money]]:
    """(label, amount) rows for plotting, ascending."""
    return [("min", envelope.minimum), ("opt", envelope.optimal), ("max", envelope.maximum)]
