"""Encoding power, decoding power and the raw reward functional.

Encoding power of an n-state ensemble is n times the optimal uniform-prior
minimum-error discrimination success probability; it is computed by a
single LP over the n effect vectors.  Decoding power of a measurement sums
each effect's maximum over the polytope (attained at a vertex).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import lp
from .errors import InputError
from .model import (
    EPS_FEAS,
    Measurement,
    StateEnsemble,
    StateSpace,
)


@dataclass(frozen=True, eq=False)
class DiscriminationResult:
    """Optimal discrimination: value, a maximizing measurement, per-state terms."""

    value: float
    optimal_measurement: Measurement
    per_state_success: np.ndarray


class DecodingPower(NamedTuple):
    value: float
    witness_vertices: tuple


def encoding_power(space: StateSpace, ensemble: StateEnsemble, *,
                   eps_feas: float = EPS_FEAS) -> DiscriminationResult:
    """Best total success probability, summed over states, over all measurements.

    LP variables are the coordinates of one effect per state; constraints
    keep every effect nonnegative on each vertex and make the effects sum
    to the unit functional.
    """
    n = len(ensemble)
    m = space.num_vertices
    D = space.ambient_dim
    V = space.vertices

    n_eff = n * D
    n_slack = n * m
    total = n_eff + n_slack
    rows = n * m + D
    A = np.zeros((rows, total))
    b = np.zeros(rows)
    for i in range(n):
        for j in range(m):
            row = i * m + j
            A[row, i * D:(i + 1) * D] = V[j]
            A[row, n_eff + i * m + j] = -1.0
    for d in range(D):
        row = n * m + d
        for i in range(n):
            A[row, i * D + d] = 1.0
        b[row] = space.unit_effect[d]
    c = np.zeros(total)
    for i in range(n):
        c[i * D:(i + 1) * D] = ensemble.states[i]

    sol = lp.solve(lp.LpProblem(c, A, b, tuple(range(n_eff, total))), eps_feas=eps_feas)
    if not sol.is_optimal:
        raise InputError(
            f"discrimination LP reported {sol.status}; the space or ensemble is corrupted"
        )
    effects = sol.point[:n_eff].reshape(n, D)
    per_state = np.clip(np.einsum("id,id->i", effects, ensemble.states), 0.0, 1.0)
    return DiscriminationResult(
        value=float(sol.value),
        optimal_measurement=Measurement(effects),
        per_state_success=per_state,
    )


def decoding_power(space: StateSpace, measurement: Measurement) -> DecodingPower:
    """Sum over outcomes of each effect's maximum over the state polytope."""
    if measurement.effects.shape[1] != space.ambient_dim:
        raise InputError("measurement dimension does not match the space")
    vals = space.vertices @ measurement.effects.T        # (m, n)
    witnesses = tuple(int(j) for j in np.argmax(vals, axis=0))
    return DecodingPower(float(vals.max(axis=0).sum()), witnesses)


def restricted_decoding_power(space: StateSpace, measurement: Measurement,
                              ensemble: StateEnsemble) -> float:
    """Decoding power with the per-effect maxima taken over the ensemble only."""
    if len(ensemble) == 0:
        raise InputError("restricted decoding power needs a nonempty ensemble")
    vals = ensemble.states @ measurement.effects.T
    return float(vals.max(axis=0).sum())


def _check_penalty(w: float) -> float:
    w = float(w)
    if w > 0.0:
        warnings.warn("positive penalty w rewards wrong guesses; proceeding anyway")
    return w


def expected_reward(space: StateSpace, ensemble: StateEnsemble,
                    measurement: Measurement, w: float) -> float:
    """Average reward w + (1 - w/n) * sum_i A_i(s_i) of a fixed strategy."""
    w = _check_penalty(w)
    n = len(ensemble)
    if len(measurement) != n:
        raise InputError(
            f"{n} states need an {n}-outcome measurement, got {len(measurement)}"
        )
    success = float(np.clip(
        np.einsum("id,id->i", measurement.effects, ensemble.states), 0.0, 1.0
    ).sum())
    return w + (1.0 - w / n) * success


def expected_reward_states(space: StateSpace, ensemble: StateEnsemble, w: float,
                           *, eps_feas: float = EPS_FEAS) -> float:
    """Best reward achievable with this ensemble, optimizing the measurement."""
    w = _check_penalty(w)
    mu = encoding_power(space, ensemble, eps_feas=eps_feas).value
    return mu + w * (1.0 - mu / len(ensemble))


def expected_reward_measurement(space: StateSpace, measurement: Measurement,
                                w: float) -> float:
    """Best reward achievable with this measurement, optimizing the states."""
    w = _check_penalty(w)
    lam = decoding_power(space, measurement).value
    return lam + w * (1.0 - lam / len(measurement))
