"""Closed-form qubit fixtures via Bloch vectors.

The qubit state body is a ball, not a polytope, so it never becomes a
StateSpace here; these verifiers only exercise the closed-form
identities.  A pure state corresponds to a unit Bloch vector n by
P = (1 + n.sigma)/2, with pairing tr(P Q) = (1 + n.m)/2, and qubit
storability equals 2 (analytic input).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError

QUBIT_STORABILITY = 2.0


def _unit_vectors(blochs, eps: float) -> np.ndarray:
    B = np.atleast_2d(np.asarray(blochs, dtype=float))
    if B.shape[1] != 3:
        raise InputError("Bloch vectors live in R^3")
    norms = np.linalg.norm(B, axis=1)
    bad = np.nonzero(np.abs(norms - 1.0) > eps)[0]
    if bad.size:
        raise InputError(f"Bloch vector {int(bad[0])} is not a unit vector (pure state)")
    return B


def pure_state_overlap(n1, n2) -> float:
    """tr(P1 P2) for the pure states of two unit Bloch vectors."""
    return 0.5 * (1.0 + float(np.dot(n1, n2)))


@dataclass(frozen=True, eq=False)
class SymmetricDecodableReport:
    balanced: bool                # do the Bloch vectors sum to zero?
    bloch_sum_norm: float
    r: float | None               # P_i sum to r * identity when balanced
    povm_residual: float | None   # deviation of sum_i P_i / r from identity
    decodable_value: float | None # sum_i tr(P_i A_i) with A_i = P_i / r
    overlaps: np.ndarray


def verify_symmetric_decodable(blochs, *, eps: float = 1e-9) -> SymmetricDecodableReport:
    """Check the balanced-pure-state construction of maximally decodable sets.

    When the unit Bloch vectors sum to zero the projections sum to (n/2)
    times the identity, A_i = P_i / r is a measurement, and the total
    self-overlap score equals the qubit storability 2.
    """
    B = _unit_vectors(blochs, eps)
    n = B.shape[0]
    total = B.sum(axis=0)
    sum_norm = float(np.linalg.norm(total))
    overlaps = 0.5 * (1.0 + B @ B.T)
    if sum_norm > eps:
        return SymmetricDecodableReport(
            balanced=False, bloch_sum_norm=sum_norm, r=None,
            povm_residual=None, decodable_value=None, overlaps=overlaps,
        )
    r = n / 2.0
    # sum_i P_i / r = (n / (2r)) * 1 + (sum_i n_i).sigma / (2r)
    povm_residual = float(abs(n / (2.0 * r) - 1.0) + sum_norm / (2.0 * r))
    decodable_value = float(sum(overlaps[i, i] for i in range(n)) / r)
    return SymmetricDecodableReport(
        balanced=True, bloch_sum_norm=sum_norm, r=r,
        povm_residual=povm_residual, decodable_value=decodable_value,
        overlaps=overlaps,
    )


# -- fixed fixtures --------------------------------------------------------------


def trine_bloch_vectors() -> np.ndarray:
    """Three coplanar unit vectors at 120 degrees."""
    angles = 2.0 * np.pi * np.arange(3) / 3.0
    return np.column_stack([np.cos(angles), np.sin(angles), np.zeros(3)])


def pentagon_bloch_vectors() -> np.ndarray:
    """Five unit vectors at regular pentagon angles in the xy-plane."""
    angles = 2.0 * np.pi * np.arange(5) / 5.0
    return np.column_stack([np.cos(angles), np.sin(angles), np.zeros(5)])


def antipodal_bloch_vectors() -> np.ndarray:
    return np.array([[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]])


def two_bases_bloch_vectors(angle: float = math.pi / 3.0) -> np.ndarray:
    """Two orthonormal bases: the +-z pair and a pair rotated by `angle`."""
    c, s = math.cos(angle), math.sin(angle)
    return np.array([
        [0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0],
        [s, 0.0, c],
        [-s, 0.0, -c],
    ])


@dataclass(frozen=True, eq=False)
class TwoBasesReport:
    """Four pure states from two bases: degradable and maximally decodable."""

    pair_success: float           # discriminating either orthogonal pair
    encoding_power: float         # equals the pair success, capped by storability
    degradable: bool
    witness_pair: tuple
    maximally_decodable: bool


def verify_two_bases_degradable(angle: float = math.pi / 3.0, *,
                                eps: float = 1e-9) -> TwoBasesReport:
    B = two_bases_bloch_vectors(angle)
    _unit_vectors(B, eps)
    # projective measurement along the first basis discriminates it perfectly
    pair_success = pure_state_overlap(B[0], B[0]) + pure_state_overlap(B[1], B[1])
    # a subset already reaches the qubit storability bound, so the full set
    # sits at the bound too and the subset is an equal-power witness
    mu = max(pair_success, QUBIT_STORABILITY)
    degradable = pair_success >= QUBIT_STORABILITY - eps
    return TwoBasesReport(
        pair_success=float(pair_success),
        encoding_power=float(min(mu, QUBIT_STORABILITY)),
        degradable=bool(degradable),
        witness_pair=(0, 1),
        maximally_decodable=bool(abs(pair_success - QUBIT_STORABILITY) <= eps),
    )


FIXTURES = {
    "trine": trine_bloch_vectors,
    "pentagon": pentagon_bloch_vectors,
    "antipodal": antipodal_bloch_vectors,
    "two-bases": two_bases_bloch_vectors,
}
