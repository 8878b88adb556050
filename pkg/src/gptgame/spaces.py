"""Catalog of constructible state spaces.

Catalog names follow the CLI scheme: classical:<d>, polygon:<n>,
dsum:<a>,<b> and ctensor:<space>,<d>, with nesting allowed in the
composite constructors (e.g. dsum:polygon:5,polygon:7).
"""

from __future__ import annotations

import math

import numpy as np

from .errors import InputError
from .model import StateSpace


def classical_simplex(d: int) -> StateSpace:
    """Probability simplex on d outcomes: basis vertices, all-ones unit."""
    d = int(d)
    if d < 1:
        raise InputError("classical simplex needs d >= 1")
    return StateSpace(f"classical:{d}", np.eye(d), np.ones(d))


def polygon_radius(n: int) -> float:
    return math.sqrt(1.0 / math.cos(math.pi / n))


def polygon(n: int) -> StateSpace:
    """Regular n-gon state space embedded in R^3 at height 1."""
    n = int(n)
    if n < 3:
        raise InputError("polygon needs n >= 3")
    r = polygon_radius(n)
    ks = np.arange(1, n + 1)
    angles = 2.0 * np.pi * ks / n
    verts = np.column_stack([r * np.cos(angles), r * np.sin(angles), np.ones(n)])
    return StateSpace(f"polygon:{n}", verts, np.array([0.0, 0.0, 1.0]))


def polygon_extreme_effects(n: int) -> np.ndarray:
    """Closed-form indecomposable extreme effects of polygon(n), one per k."""
    n = int(n)
    if n < 3:
        raise InputError("polygon needs n >= 3")
    r = polygon_radius(n)
    ks = np.arange(1, n + 1)
    if n % 2 == 0:
        angles = (2.0 * ks - 1.0) * np.pi / n
        return 0.5 * np.column_stack([r * np.cos(angles), r * np.sin(angles), np.ones(n)])
    angles = 2.0 * np.pi * ks / n
    return np.column_stack([r * np.cos(angles), r * np.sin(angles), np.ones(n)]) / (1.0 + r * r)


def polygon_complement_effects(n: int) -> np.ndarray:
    """For odd n, the complements u - g_k; valid effects but decomposable."""
    n = int(n)
    if n % 2 == 0:
        raise InputError("complement effects are a feature of odd polygons")
    u = np.array([0.0, 0.0, 1.0])
    return u[None, :] - polygon_extreme_effects(n)


def direct_sum(first: StateSpace, second: StateSpace) -> StateSpace:
    """Block embedding: either subsystem's states, tagged by the block."""
    d1, d2 = first.ambient_dim, second.ambient_dim
    verts = []
    for v in first.vertices:
        verts.append(np.concatenate([v, np.zeros(d2)]))
    for w in second.vertices:
        verts.append(np.concatenate([np.zeros(d1), w]))
    unit = np.concatenate([first.unit_effect, second.unit_effect])
    return StateSpace(f"dsum:{first.name},{second.name}", np.array(verts), unit)


def tensor_with_classical(space: StateSpace, d: int) -> StateSpace:
    """Pair the space with a classical d-level system (unambiguous product)."""
    d = int(d)
    if d < 1:
        raise InputError("classical factor needs d >= 1")
    D = space.ambient_dim
    verts = []
    for v in space.vertices:
        for j in range(d):
            block = np.zeros(D * d)
            block[j * D:(j + 1) * D] = v
            verts.append(block)
    unit = np.tile(space.unit_effect, d)
    return StateSpace(f"ctensor:{space.name},{d}", np.array(verts), unit)


# -- catalog name parsing ------------------------------------------------------


def _parse_int(text: str, pos: int):
    end = pos
    while end < len(text) and text[end].isdigit():
        end += 1
    if end == pos:
        raise InputError(f"expected an integer at position {pos} in {text!r}")
    return int(text[pos:end]), end


def _parse_space(text: str, pos: int):
    if text.startswith("classical:", pos):
        d, pos = _parse_int(text, pos + len("classical:"))
        return classical_simplex(d), pos
    if text.startswith("polygon:", pos):
        n, pos = _parse_int(text, pos + len("polygon:"))
        return polygon(n), pos
    if text.startswith("dsum:", pos):
        first, pos = _parse_space(text, pos + len("dsum:"))
        if pos >= len(text) or text[pos] != ",":
            raise InputError(f"dsum needs two comma-separated spaces in {text!r}")
        second, pos = _parse_space(text, pos + 1)
        return direct_sum(first, second), pos
    if text.startswith("ctensor:", pos):
        space, pos = _parse_space(text, pos + len("ctensor:"))
        if pos >= len(text) or text[pos] != ",":
            raise InputError(f"ctensor needs a space and an integer in {text!r}")
        d, pos = _parse_int(text, pos + 1)
        return tensor_with_classical(space, d), pos
    raise InputError(f"unknown catalog name at position {pos} in {text!r}")


def parse_catalog(name: str) -> StateSpace:
    """Build a catalog space from its name, e.g. 'dsum:polygon:5,polygon:7'."""
    space, pos = _parse_space(name, 0)
    if pos != len(name):
        raise InputError(f"trailing characters after position {pos} in {name!r}")
    return space
