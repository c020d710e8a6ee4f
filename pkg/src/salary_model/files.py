"""
JSON readers and writers for parameters, profiles and anchors.

Parameters file: a flat object keyed by ModelParameters field names. Numeric
entries are ``{"value": <number>, "provenance": <tag>}``; ``base_form`` and
``grant_amount_semantics`` are plain strings; ``max_profile`` is a profile
object. Missing keys take their defaults.

Profiles file: a list of objects with a ``name``, an optional ``note``, and
any ResearcherProfile fields.

Anchors file: ``{"free_parameters": [...], "anchors": [...]}`` with Anchor
fields per entry.
"""

from __future__ import annotations

import json
from dataclasses import fields
from importlib import resources
from pathlib import Path
from typing import Any, Dict, List, Tuple

from .calibration import DEFAULT_FREE_PARAMETERS, Anchor
from .errors import ValidationError
from .model import ModelParameters, ResearcherProfile, numeric_parameter_names


class ParseError(ValueError):
    """A file is unreadable, not valid JSON, or has the wrong structure."""


PROFILE_FIELDS = {f.name: f.type for f in fields(ResearcherProfile)}
INT_PROFILE_FIELDS = (
    "qualification_level", "publications", "h_index", "grant_count",
    "internal_projects", "certifications", "insignia_count", "intl_projects",
)
INT_PARAMETERS = ("grant_count_cap", "cap_internal_projects", "cap_certifications",
                  "cap_insignia", "cap_intl_projects")


def data_path(name: str) -> Path:
    return Path(str(resources.files("salary_model") / "data" / name))


def _read_json(path) -> Any:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"{path}: cannot read ({exc.strerror})") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def _number(where: str, value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"{where}: expected a number, got {value!r}")
    return value


def _integer(where: str, value) -> int:
    value = _number(where, value)
    if isinstance(value, float):
        if not value.is_integer():
            raise ParseError(f"{where}: expected an integer, got {value!r}")
        value = int(value)
    return value


def profile_from_dict(data: Dict[str, Any], where: str = "profile") -> ResearcherProfile:
    if not isinstance(data, dict):
        raise ParseError(f"{where}: expected an object")
    kwargs = {}
    for key, value in data.items():
        if key == "note":
            continue
        if key not in PROFILE_FIELDS:
            raise ParseError(f"{where}: unknown field {key!r}")
        if key == "name":
            if not isinstance(value, str):
                raise ParseError(f"{where}.name: expected a string")
            kwargs[key] = value
        elif key in INT_PROFILE_FIELDS:
            kwargs[key] = _integer(f"{where}.{key}", value)
        else:
            kwargs[key] = float(_number(f"{where}.{key}", value))
    return ResearcherProfile(**kwargs)


def profile_to_dict(profile: ResearcherProfile) -> Dict[str, Any]:
    return {f.name: getattr(profile, f.name) for f in fields(profile)}


def load_profiles(path) -> List[ResearcherProfile]:
    """Read a profiles file.

    Raises ParseError for structural problems and ValidationError (with the
    profile name prefixed to the field) for out-of-range values.
    """
    data = _read_json(path)
    if not isinstance(data, list):
        raise ParseError(f"{path}: expected a list of profiles")
    profiles = []
    for i, entry in enumerate(data):
        label = entry.get("name", f"#{i}") if isinstance(entry, dict) else f"#{i}"
        try:
            profiles.append(profile_from_dict(entry, where=f"{path}[{i}]"))
        except ValidationError as exc:
            raise ValidationError(f"profile {label!r}.{exc.field}", str(exc).split(": ", 1)[1]) from exc
    return profiles


def params_from_dict(data: Dict[str, Any], where: str = "params") -> ModelParameters:
    if not isinstance(data, dict):
        raise ParseError(f"{where}: expected an object")
    numeric = set(numeric_parameter_names())
    known = numeric | {"base_form", "grant_amount_semantics", "max_profile"}
    kwargs: Dict[str, Any] = {}
    provenance: Dict[str, str] = {}
    for key, entry in data.items():
        if key not in known:
            raise ParseError(f"{where}: unknown field {key!r}")
        if key in ("base_form", "grant_amount_semantics"):
            if not isinstance(entry, str):
                raise ParseError(f"{where}.{key}: expected a string")
            kwargs[key] = entry
        elif key == "max_profile":
            kwargs[key] = profile_from_dict(entry, where=f"{where}.max_profile")
        else:
            if not isinstance(entry, dict) or set(entry) != {"value", "provenance"}:
                raise ParseError(f"{where}.{key}: expected {{\"value\": ..., \"provenance\": ...}}")
            if not isinstance(entry["provenance"], str):
                raise ParseError(f"{where}.{key}.provenance: expected a string")
            value = entry["value"]
            if value is not None:
                if key in INT_PARAMETERS:
                    value = _integer(f"{where}.{key}.value", value)
                else:
                    value = float(_number(f"{where}.{key}.value", value))
            kwargs[key] = value
            provenance[key] = entry["provenance"]
    defaults = ModelParameters()
    merged = dict(defaults.provenance)
    merged.update(provenance)
    return ModelParameters(provenance=merged, **kwargs)


def params_to_dict(params: ModelParameters) -> Dict[str, Any]:
    out: Dict[str, Any] = {}
    for name in numeric_parameter_names():
        value = getattr(params, name)
        if value is None:
            continue
        out[name] = {"value": value, "provenance": params.provenance[name]}
    out["base_form"] = params.base_form
    out["grant_amount_semantics"] = params.grant_amount_semantics
    out["max_profile"] = profile_to_dict(params.max_profile)
    return out


def load_params(path) -> ModelParameters:
    return params_from_dict(_read_json(path), where=str(path))


def dumps_params(params: ModelParameters) -> str:
    return json.dumps(params_to_dict(params), indent=2, sort_keys=True) + "\n"


def save_params(params: ModelParameters, path) -> None:
    Path(path).write_text(dumps_params(params), encoding="utf-8")


def anchor_from_dict(data: Dict[str, Any], where: str) -> Anchor:
    if not isinstance(data, dict):
        raise ParseError(f"{where}: expected an object")
    allowed = {"name", "component", "target", "tolerance", "inputs", "solve_for", "note"}
    unknown = set(data) - allowed
    if unknown:
        raise ParseError(f"{where}: unknown fields {sorted(unknown)}")
    for key in ("name", "component", "target", "tolerance"):
        if key not in data:
            raise ParseError(f"{where}: missing field {key!r}")
    inputs = data.get("inputs", {})
    if not isinstance(inputs, dict):
        raise ParseError(f"{where}.inputs: expected an object")
    return Anchor(
        name=str(data["name"]),
        component=data["component"],
        target=float(_number(f"{where}.target", data["target"])),
        tolerance=float(_number(f"{where}.tolerance", data["tolerance"])),
        inputs={k: _number(f"{where}.inputs.{k}", v) for k, v in inputs.items()},
        solve_for=data.get("solve_for"),
    )


def load_anchors(path) -> Tuple[List[Anchor], Tuple[str, ...]]:
    """Read an anchors file; returns (anchors, free parameter names)."""
    data = _read_json(path)
    if isinstance(data, list):
        data = {"anchors": data}
    if not isinstance(data, dict):
        raise ParseError(f"{path}: expected an object with an 'anchors' list")
    entries = data.get("anchors", [])
    if not isinstance(entries, list):
        raise ParseError(f"{path}.anchors: expected a list")
    free = tuple(data.get("free_parameters", DEFAULT_FREE_PARAMETERS))
    anchors = [anchor_from_dict(entry, f"{path}.anchors[{i}]") for i, entry in enumerate(entries)]
    return anchors, free
