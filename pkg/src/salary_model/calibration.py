"""
Inverse solving and sensitivity analysis for the salary model.

Several exponents are not stated directly; they are implied by printed
intermediate factors (125.89 = 100^d1, 63.10 = 50^d2, 9.42 = G^gif).
``solve_exponent`` recovers them by bisection, and
``calibrate_from_anchors`` solves one parameter per anchor in order, then
reports how well the fitted model reproduces every anchor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import CalibrationError, DomainError, ValidationError
from .model import (
    METRICS,
    SATURATING_COMPONENTS,
    ModelParameters,
    ResearcherProfile,
    breakdown_from_metrics,
    profile_metrics,
    publication_term,
    citation_term,
    saturating_component,
    saturating_settings,
)

BRACKET = (-10.0, 10.0)
X_TOLERANCE = 1e-9
MAX_ITERATIONS = 200


@dataclass(frozen=True)
class ExponentSolve:
    base: float
    target: float
    solution: float
    residual: float
    iterations: int


def solve_exponent(base: float, target: float) -> ExponentSolve:
    """Find x with base**x == target by bisection on [-10, 10]."""
    if not base > 0 or base == 1:
        raise DomainError(f"base must be positive and != 1, got {base}")
    if not target > 0:
        raise DomainError(f"target must be positive, got {target}")
    lo, hi = BRACKET
    # work in log space so the bracket test cannot overflow
    log_base, log_target = math.log(base), math.log(target)

    def g(x):
        return x * log_base - log_target

    g_lo, g_hi = g(lo), g(hi)
    if g_lo * g_hi > 0:
        raise DomainError(f"{target} is not bracketed by {base}**x on {BRACKET}")
    iterations = 0
    while hi - lo > X_TOLERANCE and iterations < MAX_ITERATIONS:
        mid = 0.5 * (lo + hi)
        g_mid = g(mid)
        iterations += 1
        if g_mid == 0:
            lo = hi = mid
            break
        if (g_mid < 0) == (g_lo < 0):
            lo, g_lo = mid, g_mid
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    return ExponentSolve(base, target, x, base ** x - target, iterations)


# ---------------------------------------------------------------------------
# anchors

# component name -> parameter scaling it linearly
LINEAR_PARAMETERS = {
    "base": "base_w0",
    "publication": "pub_gamma",
    "citation": "cit_gamma",
    "grant": "grant_gamma",
    "collaborative": "collab_lambda",
    "competency": "skill_lambda",
    "insignia": "insig_lambda",
    "intl_collab": "intl_lambda",
}

# component name -> exponent parameter, valid when value = K * B**exponent
EXPONENT_PARAMETERS = {
    "base": "base_beta",
    "publication": "pub_delta",
    "citation": "cit_delta",
    "grant": "grant_impact",
}

COMPONENT_FIELDS = {
    "base": "base",
    "publication": "performance_pub",
    "citation": "performance_cit",
    "grant": "performance_grant",
    "performance": "performance_total",
    "collaborative": "collaborative",
    "competency": "competency",
    "insignia": "insignia",
    "intl_collab": "intl_collab",
    "total": "total",
}

DEFAULT_FREE_PARAMETERS = ("pub_delta", "cit_delta", "grant_impact")


@dataclass(frozen=True)
class Anchor:
    """A worked value the model must reproduce.

    ``inputs`` overrides fields of the all-zero, Master's-level profile.
    ``solve_for`` names the parameter this anchor determines; None makes it
    a check-only anchor.
    """

    name: str
    component: str
    target: float
    tolerance: float
    inputs: Dict[str, float] = field(default_factory=dict)
    solve_for: Optional[str] = None

    def __post_init__(self):
        if self.component not in COMPONENT_FIELDS:
            raise ValidationError("component", f"unknown component {self.component!r}")
        if not self.target > 0:
            raise ValidationError("target", f"must be > 0, got {self.target}")
        if not 0 < self.tolerance <= 0.05:
            raise ValidationError("tolerance", f"must lie in (0, 0.05], got {self.tolerance}")
        unknown = set(self.inputs) - set(METRICS)
        if unknown:
            raise ValidationError("inputs", f"unknown metrics {sorted(unknown)}")
        if self.solve_for is not None:
            allowed = {LINEAR_PARAMETERS.get(self.component), EXPONENT_PARAMETERS.get(self.component)}
            if self.solve_for not in allowed:
                raise ValidationError(
                    "solve_for",
                    f"{self.solve_for!r} is not isolated by component {self.component!r}",
                )

    def metrics(self) -> Dict[str, float]:
        values = profile_metrics(ResearcherProfile())
        values.update(self.inputs)
        return values

    def evaluate(self, params: ModelParameters) -> float:
        breakdown = breakdown_from_metrics(self.metrics(), params)
        return getattr(breakdown, COMPONENT_FIELDS[self.component])


AnchorSet = List[Anchor]


@dataclass(frozen=True)
class AnchorResidual:
    name: str
    target: float
    fitted: float
    relative_residual: float
    tolerance: float

    @property
    def flagged(self) -> bool:
        return self.relative_residual > self.tolerance


@dataclass
class CalibrationResult:
    params: ModelParameters
    solved: Dict[str, float]
    residuals: List[AnchorResidual]

    @property
    def ok(self) -> bool:
        return not any(r.flagged for r in self.residuals)


def _solve_anchor(anchor: Anchor, params: ModelParameters) -> float:
    name = anchor.solve_for
    if name == LINEAR_PARAMETERS.get(anchor.component):
        unit = anchor.evaluate(params.with_updates(**{name: 1.0}))
        if unit == 0:
            raise CalibrationError(f"anchor {anchor.name!r}: component is zero, {name} is free", [name])
        return anchor.target / unit
    # value(e) = K * B**e; probe at e = 2, 3, 4 (base_beta must stay > 1)
    at = {e: anchor.evaluate(params.with_updates(**{name: e})) for e in (2.0, 3.0, 4.0)}
    if at[2.0] == 0:
        raise CalibrationError(f"anchor {anchor.name!r}: component is zero, {name} is free", [name])
    power_base = at[3.0] / at[2.0]
    if not math.isclose(at[4.0] / at[3.0], power_base, rel_tol=1e-9):
        raise CalibrationError(f"anchor {anchor.name!r}: {anchor.component} is not a power in {name}", [name])
    if math.isclose(power_base, 1.0, rel_tol=1e-12):
        raise CalibrationError(f"anchor {anchor.name!r}: power base is 1, {name} is free", [name])
    scale = at[2.0] / power_base ** 2
    try:
        return solve_exponent(power_base, anchor.target / scale).solution
    except DomainError as exc:
        raise CalibrationError(f"anchor {anchor.name!r}: {exc}", [name]) from exc


def calibrate_from_anchors(
    anchors: Sequence[Anchor],
    seed_params: ModelParameters,
    free_parameters: Sequence[str] = DEFAULT_FREE_PARAMETERS,
) -> CalibrationResult:
    """Solve parameters anchor by anchor and report residuals for all anchors.

    Anchors solving the same parameter are combined by averaging their
    individual solutions (least squares in log space for a shared power
    base); any disagreement then shows up as flagged residuals.
    Raises CalibrationError if a free parameter has no anchor.
    """
    solving = {a.solve_for for a in anchors if a.solve_for}
    missing = [p for p in free_parameters if p not in solving]
    if missing:
        raise CalibrationError(f"under-determined: no anchor solves {', '.join(missing)}", missing)

    params = seed_params
    solved: Dict[str, float] = {}
    candidates: Dict[str, List[float]] = {}
    for anchor in anchors:
        if anchor.solve_for is None:
            continue
        value = _solve_anchor(anchor, params)
        candidates.setdefault(anchor.solve_for, []).append(value)
        combined = sum(candidates[anchor.solve_for]) / len(candidates[anchor.solve_for])
        solved[anchor.solve_for] = combined
        try:
            params = params.with_updates(
                provenance={anchor.solve_for: "example_implied"}, **{anchor.solve_for: combined}
            )
        except ValidationError as exc:
            raise CalibrationError(f"anchor {anchor.name!r}: solved {exc}", [anchor.solve_for]) from exc

    residuals = []
    for anchor in anchors:
        fitted = anchor.evaluate(params)
        residuals.append(
            AnchorResidual(
                name=anchor.name,
                target=anchor.target,
                fitted=fitted,
                relative_residual=abs(fitted - anchor.target) / anchor.target,
                tolerance=anchor.tolerance,
            )
        )
    return CalibrationResult(params, solved, residuals)


# ---------------------------------------------------------------------------
# sensitivity

# metrics that only exist on a discrete grid get unit-step differences
DISCRETE_METRICS = ("qualification_level", "grant_count")


@dataclass(frozen=True)
class SensitivityReport:
    metric: str
    value: float
    gradient: float
    elasticity: float
    total: float
    step: float
    one_sided: bool
    profile: ResearcherProfile


def _metric_bounds(metric: str, params: ModelParameters) -> Tuple[float, float]:
    if metric == "qualification_level":
        return 1, 3
    caps = {m: getattr(params, cap) for _, m, _, _, cap in SATURATING_COMPONENTS}
    if metric == "grant_count":
        return 0, params.grant_count_cap
    return 0, caps.get(metric, math.inf)


def sensitivity(profile: ResearcherProfile, params: ModelParameters, metric: str) -> SensitivityReport:
    """Gradient of the total salary in one metric.

    Continuous metrics (and counts whose formula extends smoothly to the
    reals) use a central difference with h = max(1e-6, 1e-6*|x|).
    Qualification level and grant count use unit steps. At the edge of a
    metric's domain, including a cap where the clamp flattens the curve,
    a one-sided difference toward the interior is taken and flagged.
    """
    if metric not in METRICS:
        raise ValidationError("metric", f"unknown metric {metric!r}")
    base = profile_metrics(profile)
    x = base[metric]
    lo, hi = _metric_bounds(metric, params)
    h = 1.0 if metric in DISCRETE_METRICS else max(1e-6, 1e-6 * abs(x))

    def total_at(value):
        shifted = dict(base)
        shifted[metric] = value
        return breakdown_from_metrics(shifted, params).total

    s = total_at(x)
    if x - h >= lo and x + h <= hi:
        gradient = (total_at(x + h) - total_at(x - h)) / (2 * h)
        one_sided = False
    elif x + h <= hi:
        gradient = (total_at(x + h) - s) / h
        one_sided = True
    elif x - h >= lo:
        gradient = (s - total_at(x - h)) / h
        one_sided = True
    else:
        gradient, one_sided = 0.0, True
    elasticity = x / s * gradient if s else 0.0
    return SensitivityReport(metric, x, gradient, elasticity, s, h, one_sided, profile)


def sensitivity_table(profile: ResearcherProfile, params: ModelParameters) -> List[SensitivityReport]:
    return [sensitivity(profile, params, metric) for metric in METRICS]


# ---------------------------------------------------------------------------
# diminishing returns


@dataclass
class MarginalReport:
    component: str
    points: List[float]
    second_differences: List[float]

    @property
    def diminishing(self) -> bool:
        return all(d < 0 for d in self.second_differences)


def _component_curve(component: str, params: ModelParameters):
    if component == "publication":
        return lambda x: publication_term(x, params)
    if component == "citation":
        return lambda x: citation_term(x, params)
    lam, mu, cap = saturating_settings(component, params)
    return lambda x: saturating_component(x, lam, mu, cap)


def diminishing_marginal_check(
    component: str, params: ModelParameters, x_range: Tuple[float, float], step: float = 1.0
) -> MarginalReport:
    """Second differences of a component over a grid; negative means concave."""
    curve = _component_curve(component, params)
    lo, hi = x_range
    if hi - lo < 2 * step:
        raise ValidationError("x_range", "needs at least three grid points")
    n = int(round((hi - lo) / step))
    grid = [lo + i * step for i in range(n + 1)]
    values = [curve(x) for x in grid]
    diffs = [values[i + 1] - 2 * values[i] + values[i - 1] for i in range(1, n)]
    return MarginalReport(component, grid[1:-1], diffs)
