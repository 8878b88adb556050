"""JSON document formats and deterministic number formatting.

All emitted floats use %.9g so identical inputs produce byte-identical
output; every document round-trips through its parser.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import InputError
from .model import (
    EPS_FEAS,
    Measurement,
    StateEnsemble,
    StateSpace,
    validate_measurement,
    validate_space,
)
from .storability import StorabilityProfile


# emitted coordinates carry 9 significant digits, so parsers must absorb
# up to that much rounding when they re-certify membership and validity
SERIALIZATION_TOL = 1e-7


def fmt_float(x: float) -> str:
    v = float(x)
    if v == 0.0:
        v = 0.0  # normalize -0.0
    return "%.9g" % v


def _parse_tol(eps_feas: float) -> float:
    return max(eps_feas, SERIALIZATION_TOL)


def to_json(obj) -> str:
    """Serialize dicts/lists/scalars with fixed float formatting."""
    out: list = []
    _write(obj, out)
    return "".join(out)


def _write(obj, out: list) -> None:
    if obj is None:
        out.append("null")
    elif isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(fmt_float(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        out.append("{")
        for i, (k, v) in enumerate(obj.items()):
            if i:
                out.append(", ")
            out.append(json.dumps(str(k)))
            out.append(": ")
            _write(v, out)
        out.append("}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        out.append("[")
        for i, v in enumerate(obj):
            if i:
                out.append(", ")
            _write(v, out)
        out.append("]")
    else:
        raise InputError(f"cannot serialize {type(obj).__name__}")


def _vector(v) -> list:
    return [float(x) for x in v]


def _float_array(obj, what: str) -> np.ndarray:
    try:
        arr = np.asarray(obj, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{what} must be a rectangular numeric array: {exc}") from exc
    if not np.isfinite(arr).all():
        raise InputError(f"{what} contains non-finite entries")
    return arr


# -- state space ---------------------------------------------------------------


def space_document(space: StateSpace) -> dict:
    return {
        "name": space.name,
        "ambient_dim": space.ambient_dim,
        "unit_effect": _vector(space.unit_effect),
        "vertices": [_vector(v) for v in space.vertices],
    }


def parse_space_document(doc: dict, *, eps_feas: float = EPS_FEAS) -> StateSpace:
    if not isinstance(doc, dict):
        raise InputError("space document must be a JSON object")
    try:
        name = doc["name"]
        dim = int(doc["ambient_dim"])
        unit = doc["unit_effect"]
        vertices = doc["vertices"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed space document: {exc}") from exc
    space = StateSpace(name, _float_array(vertices, "vertices"),
                       _float_array(unit, "unit_effect"))
    if space.ambient_dim != dim:
        raise InputError(f"ambient_dim says {dim} but vertices have {space.ambient_dim}")
    report = validate_space(space, eps_feas=_parse_tol(eps_feas))
    if not report.valid:
        details = "; ".join(issue.detail for issue in report.issues)
        raise InputError(f"invalid state space: {details}")
    return space


# -- ensembles -----------------------------------------------------------------


def ensemble_document(ensemble: StateEnsemble) -> dict:
    return {
        "space": ensemble.space.name,
        "states": [_vector(s) for s in ensemble.states],
    }


def parse_ensemble_document(doc: dict, space: StateSpace, *,
                            eps_feas: float = EPS_FEAS) -> StateEnsemble:
    if not isinstance(doc, dict):
        raise InputError("ensemble document must be a JSON object")
    ref = doc.get("space")
    if ref is not None and ref != space.name:
        raise InputError(f"ensemble is for space {ref!r}, not {space.name!r}")
    if "states" in doc:
        return StateEnsemble.from_states(space, _float_array(doc["states"], "states"),
                                         eps_feas=_parse_tol(eps_feas))
    if "mixtures" in doc:
        return StateEnsemble.from_mixtures(space, _float_array(doc["mixtures"], "mixtures"),
                                           eps_feas=_parse_tol(eps_feas))
    raise InputError("ensemble document needs 'states' or 'mixtures'")


# -- measurements ----------------------------------------------------------------


def measurement_document(measurement: Measurement, space: StateSpace) -> dict:
    return {
        "space": space.name,
        "effects": [_vector(e) for e in measurement.effects],
    }


def parse_measurement_document(doc: dict, space: StateSpace, *,
                               eps_feas: float = EPS_FEAS) -> Measurement:
    if not isinstance(doc, dict):
        raise InputError("measurement document must be a JSON object")
    ref = doc.get("space")
    if ref is not None and ref != space.name:
        raise InputError(f"measurement is for space {ref!r}, not {space.name!r}")
    if "effects" not in doc:
        raise InputError("measurement document needs 'effects'")
    meas = Measurement(_float_array(doc["effects"], "effects"))
    validate_measurement(space, meas, eps_feas=_parse_tol(eps_feas))
    return meas


# -- profiles --------------------------------------------------------------------


def profile_document(profile: StorabilityProfile) -> dict:
    return {
        "is": profile.is_value,
        "is_n": {str(n): profile.is_n[n] for n in sorted(profile.is_n)},
        "d": profile.d,
        "m": profile.m,
        "n_star": profile.n_star,
    }
