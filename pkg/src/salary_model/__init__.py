"""Nonlinear researcher salary model with envelope, motivation gate and calibration."""

from .calibration import (
    Anchor,
    CalibrationResult,
    ExponentSolve,
    SensitivityReport,
    calibrate_from_anchors,
    diminishing_marginal_check,
    sensitivity,
    solve_exponent,
)
from .envelope import (
    MotivationAssessment,
    SalaryEnvelope,
    figure_data,
    motivational_force,
    optimal_salary,
    salary_envelope,
    salary_max,
    salary_min,
)
from .errors import CalibrationError, DomainError, ValidationError
from .model import (
    ComponentBreakdown,
    ModelParameters,
    ResearcherProfile,
    base_component,
    citation_term,
    grant_term,
    performance_component,
    publication_term,
    round_kzt,
    saturating_component,
    total_salary,
)

__version__ = "0.1.0"
