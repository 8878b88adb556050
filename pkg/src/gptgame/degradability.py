"""Degradability of state sets and measurements, plus processing maps.

A state set is degradable when a proper subset already achieves its
encoding power; a measurement is degradable when merging outcomes
preserves its decoding power.  Set verdicts combine two cheap prechecks
(too many states for the affine hull, or a state that is a mixture of the
others) with an exhaustive subset search; measurement verdicts reduce to
pairwise disjointness of the effects' maximizer faces.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, InputError
from .discrimination import encoding_power
from .model import (
    EPS_CMP,
    EPS_FEAS,
    Measurement,
    StateEnsemble,
    StateSpace,
    affine_dimension,
    maximizer_face,
    membership,
)

MAX_SET_SIZE = 10

PRECHECK_AFFINE_BOUND = "affine_bound"
PRECHECK_NON_EXTREME = "non_extreme_member"


@dataclass(frozen=True, eq=False)
class StochasticMatrix:
    """Row-stochastic matrix: nonnegative entries, each row summing to 1."""

    entries: np.ndarray

    def __post_init__(self):
        M = np.atleast_2d(np.asarray(self.entries, dtype=float))
        if M.ndim != 2 or not np.isfinite(M).all():
            raise InputError("stochastic matrix must be a finite 2-d array")
        if M.min(initial=0.0) < -EPS_FEAS:
            raise InputError("stochastic matrix entries must be nonnegative")
        if np.max(np.abs(M.sum(axis=1) - 1.0)) > EPS_FEAS * 10:
            raise InputError("stochastic matrix rows must sum to 1")
        M = M.copy()
        M.setflags(write=False)
        object.__setattr__(self, "entries", M)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @classmethod
    def identity(cls, n: int) -> "StochasticMatrix":
        return cls(np.eye(n))


@dataclass(frozen=True, eq=False)
class DegradabilityVerdict:
    degradable: bool
    witness: tuple | None = None        # indices of a minimal equal-power subset
    precheck_reason: str | None = None
    margin: float | None = None         # encoding-power gap to the best proper subset


@dataclass(frozen=True, eq=False)
class MeasurementDegradability:
    nondegradable: bool
    overlapping_pair: tuple | None
    maximizer_faces: tuple


def is_degradable_set(space: StateSpace, ensemble: StateEnsemble, *,
                      max_states: int = MAX_SET_SIZE, eps_cmp: float = EPS_CMP,
                      eps_feas: float = EPS_FEAS) -> DegradabilityVerdict:
    """Decide degradability of a state set.

    Precheck order: a state inside the hull of the others (named with the
    surviving subset as witness), then more states than the affine bound
    admits; otherwise exhaustive proper-subset search from largest
    cardinality down, returning the lexicographically first witness of
    minimal cardinality.
    """
    n = len(ensemble)
    if n > max_states:
        raise CapacityError(f"set size {n} exceeds the subset-search cap {max_states}")
    if n == 1:
        return DegradabilityVerdict(degradable=False)

    # sequential redundancy elimination keeps one copy of any duplicate;
    # run before the affine bound so a redundant state is named as such
    active = list(range(n))
    for i in range(n):
        others = [j for j in active if j != i]
        if not others:
            continue
        hull = StateSpace("hull", ensemble.states[others], space.unit_effect)
        if membership(hull, ensemble.states[i], eps_feas=eps_feas) is not None:
            active.remove(i)
    if len(active) < n:
        return DegradabilityVerdict(
            degradable=True, witness=tuple(active),
            precheck_reason=PRECHECK_NON_EXTREME,
        )

    if n > affine_dimension(space, eps_cmp=eps_cmp) + 1:
        return DegradabilityVerdict(degradable=True, precheck_reason=PRECHECK_AFFINE_BOUND)

    base = encoding_power(space, ensemble, eps_feas=eps_feas).value
    best_gap = None
    witness = None
    for k in range(n - 1, 0, -1):
        found = None
        for idx in itertools.combinations(range(n), k):
            val = encoding_power(space, ensemble.subset(idx), eps_feas=eps_feas).value
            gap = base - val
            if best_gap is None or gap < best_gap:
                best_gap = gap
            if gap <= eps_cmp:
                found = idx
                break
        if found is None:
            break
        witness = found
    if witness is None:
        return DegradabilityVerdict(degradable=False, margin=best_gap)
    return DegradabilityVerdict(degradable=True, witness=witness, margin=best_gap)


def merge_measurement(measurement: Measurement, partition) -> Measurement:
    """Coarse-grain a measurement by summing effects inside each block."""
    n = len(measurement)
    blocks = [tuple(int(i) for i in block) for block in partition]
    seen = [i for block in blocks for i in block]
    if sorted(seen) != list(range(n)):
        raise InputError("partition must cover every outcome exactly once")
    if any(len(block) == 0 for block in blocks):
        raise InputError("partition blocks must be nonempty")
    merged = np.array([measurement.effects[list(block)].sum(axis=0) for block in blocks])
    return Measurement(merged)


def is_nondegradable_measurement(space: StateSpace, measurement: Measurement, *,
                                 eps_cmp: float = EPS_CMP) -> MeasurementDegradability:
    """Nondegradable iff the effects' maximizer faces are pairwise disjoint.

    Faces of a polytope intersect exactly in the face spanned by their
    shared vertices, so disjoint vertex index sets decide the question.
    """
    faces = tuple(
        maximizer_face(space, measurement.effects[i], eps_cmp=eps_cmp)
        for i in range(len(measurement))
    )
    for i in range(len(faces)):
        for j in range(i + 1, len(faces)):
            if set(faces[i]) & set(faces[j]):
                return MeasurementDegradability(False, (i, j), faces)
    return MeasurementDegradability(True, None, faces)


def preprocess_states(ensemble: StateEnsemble, matrix: StochasticMatrix) -> StateEnsemble:
    """Mix the ensemble's states through a row-stochastic matrix."""
    if matrix.cols != len(ensemble):
        raise InputError(
            f"preprocessing needs {len(ensemble)} columns, got {matrix.cols}"
        )
    states = matrix.entries @ ensemble.states
    mixtures = matrix.entries @ ensemble.mixtures
    return StateEnsemble(ensemble.space, states, mixtures, allow_repeats=True)


def postprocess_measurement(measurement: Measurement, matrix: StochasticMatrix) -> Measurement:
    """Relabel outcomes probabilistically: B_j = sum_i nu_ij A_i."""
    if matrix.rows != len(measurement):
        raise InputError(
            f"postprocessing needs {len(measurement)} rows, got {matrix.rows}"
        )
    return Measurement(matrix.entries.T @ measurement.effects)
