"""JSON wire formats.

Rationals travel as strings, either "p/q" in lowest terms or a bare
integer "k"; decimal notation is rejected so nothing is silently
rounded.  Output is canonical (lowest terms, merged segments, sorted
keys) which makes written artifacts byte-stable across reruns.

Formats:
  measure   {"breakpoints": [...], "densities": [...]}
  instance  {"measures": [measure, ...], "demands": [...]}
  division  {"cuts": [...], "owners": [int, ...]}
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .division import Division, Instance
from .errors import ValidationError
from .measure import Measure

_RATIONAL_RE = re.compile(r"^-?\d+(/[1-9]\d*)?$")


def parse_rational(text, field: str = "value") -> Fraction:
    """Parse "p/q" or "k"; anything else (floats included) is an error."""
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise ValidationError(field, f"expected a rational like '3/4' or '2', got {text!r}")
    return Fraction(text)


def format_rational(value: Fraction) -> str:
    return str(Fraction(value))


def _rational_list(values, field):
    if not isinstance(values, list):
        raise ValidationError(field, f"expected a list, got {type(values).__name__}")
    return [parse_rational(v, f"{field}[{i}]") for i, v in enumerate(values)]


def measure_to_obj(m: Measure) -> dict:
    return {
        "breakpoints": [format_rational(b) for b in m.breakpoints],
        "densities": [format_rational(d) for d in m.densities],
    }


def measure_from_obj(obj, field: str = "measure") -> Measure:
    if not isinstance(obj, dict):
        raise ValidationError(field, "expected an object with 'breakpoints' and 'densities'")
    for key in ("breakpoints", "densities"):
        if key not in obj:
            raise ValidationError(f"{field}.{key}", "missing")
    try:
        return Measure(
            _rational_list(obj["breakpoints"], f"{field}.breakpoints"),
            _rational_list(obj["densities"], f"{field}.densities"),
        )
    except ValidationError as exc:
        raise ValidationError(f"{field}.{exc.field}", str(exc).split(": ", 1)[1]) from None


def instance_to_obj(inst: Instance) -> dict:
    return {
        "measures": [measure_to_obj(m) for m in inst.measures],
        "demands": [format_rational(d) for d in inst.demands],
    }


def instance_from_obj(obj, strict: bool = True) -> Instance:
    if not isinstance(obj, dict):
        raise ValidationError("instance", "expected an object with 'measures' and 'demands'")
    for key in ("measures", "demands"):
        if key not in obj:
            raise ValidationError(key, "missing")
    if not isinstance(obj["measures"], list):
        raise ValidationError("measures", "expected a list")
    measures = [measure_from_obj(m, f"measures[{i}]") for i, m in enumerate(obj["measures"])]
    inst = Instance(measures, _rational_list(obj["demands"], "demands"))
    if strict:
        inst.require_unit_demands()
    return inst


def division_to_obj(div: Division) -> dict:
    return {
        "cuts": [format_rational(c) for c in div.cuts],
        "owners": list(div.owners),
    }


def division_from_obj(obj) -> Division:
    if not isinstance(obj, dict):
        raise ValidationError("division", "expected an object with 'cuts' and 'owners'")
    for key in ("cuts", "owners"):
        if key not in obj:
            raise ValidationError(key, "missing")
    owners = obj["owners"]
    if not isinstance(owners, list) or not all(isinstance(o, int) and not isinstance(o, bool) for o in owners):
        raise ValidationError("owners", "expected a list of agent indices")
    return Division(_rational_list(obj["cuts"], "cuts"), owners)


def dumps_canonical(obj) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def dumps_compact(obj) -> str:
    """One-line canonical JSON, used for JSON-lines reports."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError("json", f"not valid JSON: {exc}") from None


def instance_to_json(inst: Instance) -> str:
    return dumps_canonical(instance_to_obj(inst))


def instance_from_json(text: str, strict: bool = True) -> Instance:
    return instance_from_obj(loads(text), strict=strict)


def division_to_json(div: Division) -> str:
    return dumps_canonical(division_to_obj(div))


def division_from_json(text: str) -> Division:
    return division_from_obj(loads(text))
