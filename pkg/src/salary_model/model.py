"""
Six-component researcher salary model.

    S = S_b + S_r + S_c + S_s + S_i + S_g

S_b grows logarithmically with experience and linearly with qualification,
S_r is a sum of two power terms (publications, h-index) and a grant term
damped by the golden ratio, and the last four are exponential saturation
curves lambda * (1 - exp(-mu * x)) capped at a maximum count.

All amounts are KZT floats at full precision; use ``round_kzt`` only when
presenting or serializing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields, replace
from decimal import ROUND_HALF_UP, Decimal
from functools import lru_cache
from typing import Dict, List, Optional

from .errors import ValidationError

Money = float

BASE_FORMS = ("worked_example", "additive")
GRANT_SEMANTICS = ("per_grant_average", "total")
PROVENANCE_TAGS = ("paper_stated", "example_implied", "assumed")

GRANT_SCALE_KZT = 1e6

# printed factors the example-implied exponents are solved from
CITATION_FACTOR_H50 = 63.10
GRANT_FACTOR_CASE2 = 9.42
GRANT_AVERAGE_CASE2 = 50e6 / 3 / GRANT_SCALE_KZT  # per-grant average in millions


def round_kzt(amount: float) -> int:
    """Round half-up to whole KZT."""
    return int(Decimal(repr(float(amount))).quantize(Decimal(1), rounding=ROUND_HALF_UP))


def _check_count(name: str, value) -> None:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(name, f"must be an integer, got {value!r}")
    if value < 0:
        raise ValidationError(name, f"must be >= 0, got {value}")


def _check_nonneg(name: str, value) -> None:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(name, f"must be a number, got {value!r}")
    if not math.isfinite(value) or value < 0:
        raise ValidationError(name, f"must be a finite number >= 0, got {value}")


def _check_unit(name: str, value) -> None:
    _check_nonneg(name, value)
    if value > 1:
        raise ValidationError(name, f"must lie in [0, 1], got {value}")


@dataclass(frozen=True)
class ResearcherProfile:
    experience_years: float = 0.0
    qualification_level: int = 1
    publications: int = 0
    h_index: int = 0
    grant_count: int = 0
    grant_total_kzt: float = 0.0
    internal_projects: int = 0
    certifications: int = 0
    insignia_count: int = 0
    intl_projects: int = 0
    expectancy: float = 0.0
    instrumentality: float = 0.0
    valence: float = 0.0
    name: str = "profile"

    def __post_init__(self):
        _check_nonneg("experience_years", self.experience_years)
        if self.qualification_level not in (1, 2, 3) or isinstance(self.qualification_level, bool):
            raise ValidationError(
                "qualification_level", f"must be 1, 2 or 3, got {self.qualification_level!r}"
            )
        for name in ("publications", "h_index", "grant_count", "internal_projects",
                     "certifications", "insignia_count", "intl_projects"):
            _check_count(name, getattr(self, name))
        _check_nonneg("grant_total_kzt", self.grant_total_kzt)
        for name in ("expectancy", "instrumentality", "valence"):
            _check_unit(name, getattr(self, name))


METRICS = (
    "experience_years",
    "qualification_level",
    "publications",
    "h_index",
    "grant_count",
    "grant_total_kzt",
    "internal_projects",
    "certifications",
    "insignia_count",
    "intl_projects",
)


def _default_max_profile() -> ResearcherProfile:
    return ResearcherProfile(
        experience_years=40.0,
        qualification_level=3,
        publications=100,
        h_index=50,
        grant_count=3,
        grant_total_kzt=50_000_000.0,
        internal_projects=20,
        certifications=10,
        insignia_count=10,
        intl_projects=10,
        name="maximum",
    )


@lru_cache(maxsize=None)
def _implied_exponent(base: float, target: float) -> float:
    from .calibration import solve_exponent

    return solve_exponent(base, target).solution


def _implied_citation_exponent() -> float:
    return _implied_exponent(50.0, CITATION_FACTOR_H50)


def _implied_grant_impact() -> float:
    return _implied_exponent(GRANT_AVERAGE_CASE2, GRANT_FACTOR_CASE2)


DEFAULT_PROVENANCE = {
    "base_w0": "paper_stated",
    "base_alpha": "paper_stated",
    "base_beta": "paper_stated",
    "base_t0": "example_implied",
    "base_lambda": "paper_stated",
    "base_alpha_additive": "assumed",
    "pub_gamma": "paper_stated",
    "pub_delta": "example_implied",
    "cit_gamma": "paper_stated",
    "cit_delta": "example_implied",
    "grant_gamma": "paper_stated",
    "golden_phi": "paper_stated",
    "grant_impact": "example_implied",
    "grant_count_cap": "paper_stated",
    "collab_lambda": "paper_stated",
    "collab_mu": "paper_stated",
    "skill_lambda": "paper_stated",
    "skill_mu": "paper_stated",
    "insig_lambda": "paper_stated",
    "insig_mu": "paper_stated",
    "intl_lambda": "paper_stated",
    "intl_mu": "paper_stated",
    "cap_internal_projects": "paper_stated",
    "cap_certifications": "paper_stated",
    "cap_insignia": "paper_stated",
    "cap_intl_projects": "paper_stated",
}

# coefficients denominated in KZT; scaling all of them scales every salary
MONEY_PARAMETERS = (
    "base_w0",
    "base_alpha_additive",
    "pub_gamma",
    "cit_gamma",
    "grant_gamma",
    "collab_lambda",
    "skill_lambda",
    "insig_lambda",
    "intl_lambda",
)

CAP_PARAMETERS = (
    "grant_count_cap",
    "cap_internal_projects",
    "cap_certifications",
    "cap_insignia",
    "cap_intl_projects",
)


@dataclass(frozen=True)
class ModelParameters:
    base_w0: Money = 190_000.0
    base_alpha: float = 0.05
    base_beta: float = 1.2
    base_t0: float = 5.0
    base_lambda: float = 0.1
    # KZT weight of the log-experience term, only read when base_form == "additive"
    base_alpha_additive: Optional[Money] = None
    pub_gamma: Money = 15_000.0
    pub_delta: float = 1.05
    cit_gamma: Money = 10_000.0
    cit_delta: float = field(default_factory=_implied_citation_exponent)
    grant_gamma: Money = 20_000.0
    golden_phi: float = 1.618
    grant_impact: float = field(default_factory=_implied_grant_impact)
    grant_count_cap: int = 3
    collab_lambda: Money = 50_000.0
    collab_mu: float = 0.1
    skill_lambda: Money = 40_000.0
    skill_mu: float = 0.15
    insig_lambda: Money = 70_000.0
    insig_mu: float = 0.1
    intl_lambda: Money = 100_000.0
    intl_mu: float = 0.2
    cap_internal_projects: int = 20
    cap_certifications: int = 10
    cap_insignia: int = 10
    cap_intl_projects: int = 10
    max_profile: ResearcherProfile = field(default_factory=_default_max_profile)
    base_form: str = "worked_example"
    grant_amount_semantics: str = "per_grant_average"
    provenance: Dict[str, str] = field(default_factory=lambda: dict(DEFAULT_PROVENANCE))

    def __post_init__(self):
        for name in numeric_parameter_names():
            value = getattr(self, name)
            if value is None and name == "base_alpha_additive":
                continue
            if name in CAP_PARAMETERS:
                _check_count(name, value)
                continue
            if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
                raise ValidationError(name, f"must be a finite number, got {value!r}")
            if value <= 0:
                raise ValidationError(name, f"must be > 0, got {value}")
        if self.base_beta <= 1:
            raise ValidationError("base_beta", f"must be > 1, got {self.base_beta}")
        if self.grant_count_cap < 1:
            raise ValidationError("grant_count_cap", "must be >= 1")
        if self.base_form not in BASE_FORMS:
            raise ValidationError("base_form", f"must be one of {BASE_FORMS}, got {self.base_form!r}")
        if self.grant_amount_semantics not in GRANT_SEMANTICS:
            raise ValidationError(
                "grant_amount_semantics",
                f"must be one of {GRANT_SEMANTICS}, got {self.grant_amount_semantics!r}",
            )
        if not isinstance(self.max_profile, ResearcherProfile):
            raise ValidationError("max_profile", "must be a ResearcherProfile")
        for name in numeric_parameter_names():
            if name == "base_alpha_additive" and self.base_alpha_additive is None:
                continue
            tag = self.provenance.get(name)
            if tag not in PROVENANCE_TAGS:
                raise ValidationError(f"provenance.{name}", f"must be one of {PROVENANCE_TAGS}, got {tag!r}")

    def with_updates(self, provenance: Optional[Dict[str, str]] = None, **changes) -> "ModelParameters":
        """Copy with some fields changed, merging provenance tags."""
        merged = dict(self.provenance)
        if provenance:
            merged.update(provenance)
        return replace(self, provenance=merged, **changes)

    def scaled(self, k: float) -> "ModelParameters":
        """Copy with every KZT-denominated coefficient multiplied by k."""
        changes = {
            name: getattr(self, name) * k
            for name in MONEY_PARAMETERS
            if getattr(self, name) is not None
        }
        return self.with_updates(**changes)


def numeric_parameter_names() -> List[str]:
    skip = {"max_profile", "base_form", "grant_amount_semantics", "provenance"}
    return [f.name for f in fields(ModelParameters) if f.name not in skip]


@dataclass(frozen=True)
class ComponentBreakdown:
    base: Money
    performance_pub: Money
    performance_cit: Money
    performance_grant: Money
    performance_total: Money
    collaborative: Money
    competency: Money
    insignia: Money
    intl_collab: Money
    total: Money

    def as_dict(self) -> Dict[str, float]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def rounded(self) -> Dict[str, int]:
        return {name: round_kzt(value) for name, value in self.as_dict().items()}


def _experience_log(experience_years: float, params: ModelParameters) -> float:
    return math.log1p(experience_years / params.base_t0)


def base_component(profile: ResearcherProfile, params: ModelParameters) -> Money:
    return _base_value(profile.experience_years, profile.qualification_level, params)


def _base_value(experience_years: float, qualification_level: float, params: ModelParameters) -> Money:
    if experience_years < 0:
        raise ValidationError("experience_years", f"must be >= 0, got {experience_years}")
    qualification = 1 + params.base_lambda * qualification_level
    log_term = _experience_log(experience_years, params)
    if params.base_form == "worked_example":
        return params.base_w0 * (1 + params.base_alpha * log_term) ** params.base_beta * qualification
    if params.base_alpha_additive is None:
        raise ValidationError("base_alpha_additive", "required when base_form is 'additive'")
    return params.base_w0 + params.base_alpha_additive * qualification * log_term ** params.base_beta


def publication_term(publications: float, params: ModelParameters) -> Money:
    _check_nonneg("publications", publications)
    if publications == 0:
        return 0.0
    return params.pub_gamma * publications ** params.pub_delta


def citation_term(h_index: float, params: ModelParameters) -> Money:
    _check_nonneg("h_index", h_index)
    if h_index == 0:
        return 0.0
    return params.cit_gamma * h_index ** params.cit_delta


def grant_amount(grant_count: float, grant_total_kzt: float, params: ModelParameters) -> float:
    """Grant amount fed to the volume factor, after clamping the count."""
    count = min(grant_count, params.grant_count_cap)
    if params.grant_amount_semantics == "total":
        return grant_total_kzt
    if count == 0:
        return 0.0
    return grant_total_kzt / count


def grant_term(grant_count: float, grant_total_kzt: float, params: ModelParameters) -> Money:
    _check_nonneg("grant_count", grant_count)
    _check_nonneg("grant_total_kzt", grant_total_kzt)
    count = min(grant_count, params.grant_count_cap)
    amount = grant_amount(grant_count, grant_total_kzt, params)
    if count == 0 or amount == 0:
        return 0.0
    count_factor = params.golden_phi ** (count / params.grant_count_cap)
    volume_factor = (amount / GRANT_SCALE_KZT) ** params.grant_impact
    return params.grant_gamma * (count_factor * volume_factor)


def performance_component(profile: ResearcherProfile, params: ModelParameters):
    """Return (publication, citation, grant, total) performance terms."""
    pub = publication_term(profile.publications, params)
    cit = citation_term(profile.h_index, params)
    grant = grant_term(profile.grant_count, profile.grant_total_kzt, params)
    return pub, cit, grant, pub + cit + grant


def saturating_component(x: float, lam: Money, mu: float, cap: float) -> Money:
    """lam * (1 - exp(-mu * min(x, cap))); always below lam."""
    _check_nonneg("x", x)
    return lam * -math.expm1(-mu * min(x, cap))


# (component name, profile field, lambda param, mu param, cap param)
SATURATING_COMPONENTS = (
    ("collaborative", "internal_projects", "collab_lambda", "collab_mu", "cap_internal_projects"),
    ("competency", "certifications", "skill_lambda", "skill_mu", "cap_certifications"),
    ("insignia", "insignia_count", "insig_lambda", "insig_mu", "cap_insignia"),
    ("intl_collab", "intl_projects", "intl_lambda", "intl_mu", "cap_intl_projects"),
)


def saturating_settings(component: str, params: ModelParameters):
    """(lambda, mu, cap) of a named saturating component."""
    for name, _, lam, mu, cap in SATURATING_COMPONENTS:
        if name == component:
            return getattr(params, lam), getattr(params, mu), getattr(params, cap)
    raise KeyError(component)


def breakdown_from_metrics(metrics: Dict[str, float], params: ModelParameters) -> ComponentBreakdown:
    """Evaluate the model on raw metric values.

    Unlike ``total_salary`` this accepts real-valued counts, which is what
    the finite-difference sensitivity analysis perturbs.
    """
    base = _base_value(metrics["experience_years"], metrics["qualification_level"], params)
    pub = publication_term(metrics["publications"], params)
    cit = citation_term(metrics["h_index"], params)
    grant = grant_term(metrics["grant_count"], metrics["grant_total_kzt"], params)
    performance = pub + cit + grant
    saturating = {}
    for name, metric, lam, mu, cap in SATURATING_COMPONENTS:
        saturating[name] = saturating_component(
            metrics[metric], getattr(params, lam), getattr(params, mu), getattr(params, cap)
        )
    total = base + performance + sum(saturating.values())
    return ComponentBreakdown(
        base=base,
        performance_pub=pub,
        performance_cit=cit,
        performance_grant=grant,
        performance_total=performance,
        total=total,
        **saturating,
    )


def profile_metrics(profile: ResearcherProfile) -> Dict[str, float]:
    return {name: getattr(profile, name) for name in METRICS}


def total_salary(profile: ResearcherProfile, params: ModelParameters) -> ComponentBreakdown:
    return breakdown_from_metrics(profile_metrics(profile), params)


def explain(profile: ResearcherProfile, params: ModelParameters) -> List[str]:
    """Per-component formulas with the profile's values substituted."""
    b = total_salary(profile, params)
    T, L = profile.experience_years, profile.qualification_level
    if params.base_form == "worked_example":
        base_line = (
            f"S_b = {params.base_w0:g} * (1 + {params.base_alpha:g}*ln(1 + {T:g}/{params.base_t0:g}))"
            f"^{params.base_beta:g} * (1 + {params.base_lambda:g}*{L}) = {b.base:.2f}"
        )
    else:
        base_line = (
            f"S_b = {params.base_w0:g} + {params.base_alpha_additive:g} * (1 + {params.base_lambda:g}*{L})"
            f" * ln(1 + {T:g}/{params.base_t0:g})^{params.base_beta:g} = {b.base:.2f}"
        )
    count = min(profile.grant_count, params.grant_count_cap)
    amount = grant_amount(profile.grant_count, profile.grant_total_kzt, params)
    lines = [
        base_line,
        f"S_P = {params.pub_gamma:g} * {profile.publications}^{params.pub_delta:.6g} = {b.performance_pub:.2f}",
        f"S_H = {params.cit_gamma:g} * {profile.h_index}^{params.cit_delta:.6g} = {b.performance_cit:.2f}",
        f"S_G = {params.grant_gamma:g} * ({params.golden_phi:g}^({count}/{params.grant_count_cap})"
        f" * ({amount:.2f}/1e6)^{params.grant_impact:.6g}) = {b.performance_grant:.2f}",
        f"S_r = S_P + S_H + S_G = {b.performance_total:.2f}",
    ]
    symbols = {"collaborative": "S_c", "competency": "S_s", "insignia": "S_i", "intl_collab": "S_g"}
    for name, metric, lam, mu, cap in SATURATING_COMPONENTS:
        x = getattr(profile, metric)
        lines.append(
            f"{symbols[name]} = {getattr(params, lam):g} * (1 - exp(-{getattr(params, mu):g}"
            f" * min({x}, {getattr(params, cap)}))) = {getattr(b, name):.2f}"
        )
    lines.append(f"S = {b.total:.2f}")
    return lines
