"""Core data model: polytope state spaces, effects, measurements, ensembles.

A state space is the convex hull of finitely many vertex vectors in R^D
together with a unit functional that evaluates to 1 on every state.
Effects are linear functionals with values in [0, 1] on the polytope; a
measurement is a list of effects summing to the unit functional.

Everything is immutable after construction; the heavyweight invariant
checks (vertex extremality, membership certificates) go through the LP
kernel and are exposed as validate_space / membership rather than run
implicitly on every constructor call.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import lp
from .errors import InputError

EPS_FEAS = 1e-9
EPS_CMP = 1e-7


def _readonly(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, dtype=float)
    out.setflags(write=False)
    return out


class StateSpace:
    """Polytope of states: vertices (m, D) plus the unit functional (D,)."""

    def __init__(self, name: str, vertices, unit_effect):
        V = np.atleast_2d(np.asarray(vertices, dtype=float))
        u = np.asarray(unit_effect, dtype=float)
        if V.ndim != 2 or V.shape[0] < 1 or V.shape[1] < 1:
            raise InputError("need at least one vertex of dimension >= 1")
        if u.shape != (V.shape[1],):
            raise InputError(
                f"unit effect has dimension {u.shape}, vertices have {V.shape[1]}"
            )
        if not (np.isfinite(V).all() and np.isfinite(u).all()):
            raise InputError("non-finite state space data")
        self.name = str(name)
        self.vertices = _readonly(V)
        self.unit_effect = _readonly(u)

    @property
    def ambient_dim(self) -> int:
        return self.vertices.shape[1]

    @property
    def num_vertices(self) -> int:
        return self.vertices.shape[0]

    @cached_property
    def _key(self) -> bytes:
        return (
            self.vertices.shape[0].to_bytes(4, "little")
            + self.vertices.shape[1].to_bytes(4, "little")
            + self.vertices.tobytes()
            + self.unit_effect.tobytes()
        )

    @cached_property
    def span_basis(self) -> np.ndarray:
        """Orthonormal rows spanning the linear span of the vertices (k, D)."""
        _, s, vt = np.linalg.svd(self.vertices, full_matrices=False)
        rank = int(np.sum(s > 1e-12 * max(1.0, s[0])))
        basis = vt[:rank].copy()
        basis.setflags(write=False)
        return basis

    @cached_property
    def unit_in_span(self) -> np.ndarray:
        """Component of the unit functional inside the vertex span."""
        Q = self.span_basis
        out = Q.T @ (Q @ self.unit_effect)
        out.setflags(write=False)
        return out

    def __repr__(self) -> str:
        return f"StateSpace({self.name!r}, {self.num_vertices} vertices in R^{self.ambient_dim})"


@dataclass(frozen=True, eq=False)
class Effect:
    """A linear functional on states, stored as its coefficient vector."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float)
        if c.ndim != 1 or not np.isfinite(c).all():
            raise InputError("effect coefficients must be a finite vector")
        object.__setattr__(self, "coeffs", _readonly(c))

    def __call__(self, state: np.ndarray) -> float:
        return float(self.coeffs @ np.asarray(state, dtype=float))


class Measurement:
    """Ordered effects A_1..A_n; valid when they sum to the unit functional."""

    def __init__(self, effects):
        if isinstance(effects, np.ndarray):
            E = np.atleast_2d(np.asarray(effects, dtype=float))
        else:
            E = np.atleast_2d(np.array([np.asarray(getattr(e, "coeffs", e), dtype=float)
                                        for e in effects]))
        if E.ndim != 2 or E.shape[0] < 1:
            raise InputError("measurement needs at least one effect")
        if not np.isfinite(E).all():
            raise InputError("non-finite effect coefficients")
        self.effects = _readonly(E)

    def __len__(self) -> int:
        return self.effects.shape[0]

    def __getitem__(self, i: int) -> Effect:
        return Effect(self.effects[i])

    def __repr__(self) -> str:
        return f"Measurement({len(self)} outcomes, dim {self.effects.shape[1]})"


class StateEnsemble:
    """Ordered list of states of one space, with mixture certificates.

    Each row of `mixtures` gives convex coefficients over the space's
    vertices reproducing the corresponding state; that is the membership
    certificate.  States must be pairwise distinct unless allow_repeats.
    """

    def __init__(self, space: StateSpace, states: np.ndarray, mixtures: np.ndarray,
                 allow_repeats: bool = False, *, eps_feas: float = EPS_FEAS,
                 eps_cmp: float = EPS_CMP):
        S = np.atleast_2d(np.asarray(states, dtype=float))
        M = np.atleast_2d(np.asarray(mixtures, dtype=float))
        if S.shape[0] < 1:
            raise InputError("ensemble must contain at least one state")
        if S.shape[1] != space.ambient_dim:
            raise InputError("state dimension does not match the space")
        if M.shape != (S.shape[0], space.num_vertices):
            raise InputError("one mixture row per state is required")
        norms = S @ space.unit_effect
        if np.max(np.abs(norms - 1.0)) > eps_feas * 10:
            raise InputError("states must satisfy unit_effect(s) = 1")
        if not allow_repeats:
            for i in range(S.shape[0]):
                for j in range(i + 1, S.shape[0]):
                    if np.max(np.abs(S[i] - S[j])) <= eps_cmp:
                        raise InputError(
                            f"states {i} and {j} coincide; pass allow_repeats to keep both"
                        )
        self.space = space
        self.states = _readonly(S)
        self.mixtures = _readonly(M)
        self.allow_repeats = bool(allow_repeats)

    def __len__(self) -> int:
        return self.states.shape[0]

    def subset(self, indices) -> "StateEnsemble":
        idx = list(indices)
        if not idx:
            raise InputError("subset must be nonempty")
        return StateEnsemble(
            self.space, self.states[idx], self.mixtures[idx],
            allow_repeats=self.allow_repeats,
        )

    @classmethod
    def from_vertices(cls, space: StateSpace, indices, allow_repeats: bool = False):
        idx = [int(i) for i in indices]
        if any(i < 0 or i >= space.num_vertices for i in idx):
            raise InputError("vertex index out of range")
        mix = np.zeros((len(idx), space.num_vertices))
        for row, i in enumerate(idx):
            mix[row, i] = 1.0
        return cls(space, space.vertices[idx], mix, allow_repeats=allow_repeats)

    @classmethod
    def from_states(cls, space: StateSpace, states, allow_repeats: bool = False,
                    *, eps_feas: float = EPS_FEAS):
        S = np.atleast_2d(np.asarray(states, dtype=float))
        mixtures = []
        for i, s in enumerate(S):
            mix = membership(space, s, eps_feas=eps_feas)
            if mix is None:
                raise InputError(f"state {i} lies outside the state polytope")
            mixtures.append(mix)
        return cls(space, S, np.array(mixtures), allow_repeats=allow_repeats)

    @classmethod
    def from_mixtures(cls, space: StateSpace, coefficients, allow_repeats: bool = False,
                      *, eps_feas: float = EPS_FEAS):
        M = np.atleast_2d(np.asarray(coefficients, dtype=float))
        if M.shape[1] != space.num_vertices:
            raise InputError("one coefficient per vertex is required")
        if M.min(initial=0.0) < -eps_feas or np.max(np.abs(M.sum(axis=1) - 1.0)) > eps_feas * 10:
            raise InputError("mixture rows must be convex coefficients")
        return cls(space, M @ space.vertices, M, allow_repeats=allow_repeats)

    def __repr__(self) -> str:
        return f"StateEnsemble({len(self)} states of {self.space.name!r})"


# -- operations ---------------------------------------------------------------


def evaluate(space: StateSpace, effect, state, *, eps_feas: float = EPS_FEAS) -> float:
    """Outcome probability of an effect on a state, clamped to [0, 1]."""
    e = np.asarray(getattr(effect, "coeffs", effect), dtype=float)
    s = np.asarray(state, dtype=float)
    if e.shape != (space.ambient_dim,) or s.shape != (space.ambient_dim,):
        raise InputError("dimension mismatch between effect/state and space")
    return float(min(1.0, max(0.0, e @ s)))


def membership(space: StateSpace, point, *, eps_feas: float = EPS_FEAS):
    """Convex coefficients over the vertices reproducing `point`, or None."""
    p = np.asarray(point, dtype=float)
    if p.shape != (space.ambient_dim,):
        raise InputError("point dimension does not match the space")
    m = space.num_vertices
    A = np.vstack([space.vertices.T, np.ones((1, m))])
    b = np.concatenate([p, [1.0]])
    sol = lp.feasible(lp.LpProblem(np.zeros(m), A, b, tuple(range(m))), eps_feas=eps_feas)
    if not sol.is_optimal:
        return None
    return np.clip(sol.point, 0.0, None)


def maximizer_face(space: StateSpace, effect, *, eps_cmp: float = EPS_CMP) -> tuple:
    """Indices of all vertices attaining the maximum of the effect."""
    e = np.asarray(getattr(effect, "coeffs", effect), dtype=float)
    if e.shape != (space.ambient_dim,):
        raise InputError("effect dimension does not match the space")
    vals = space.vertices @ e
    top = float(vals.max())
    return tuple(int(i) for i in np.nonzero(vals >= top - eps_cmp)[0])


def affine_dimension(space: StateSpace, *, eps_cmp: float = EPS_CMP) -> int:
    """Dimension of the affine hull of the state polytope."""
    diffs = space.vertices[1:] - space.vertices[0]
    if diffs.size == 0:
        return 0
    s = np.linalg.svd(diffs, compute_uv=False)
    return int(np.sum(s > eps_cmp * max(1.0, float(s[0]))))


def is_valid_effect(space: StateSpace, effect, *, eps_feas: float = EPS_FEAS) -> bool:
    e = np.asarray(getattr(effect, "coeffs", effect), dtype=float)
    vals = space.vertices @ e
    return bool(vals.min() >= -eps_feas and vals.max() <= 1.0 + eps_feas)


def measurement_defect(space: StateSpace, measurement: Measurement) -> float:
    """Max coordinate deviation of the effect sum from the unit functional."""
    return float(np.max(np.abs(measurement.effects.sum(axis=0) - space.unit_effect)))


def validate_measurement(space: StateSpace, measurement: Measurement,
                         *, eps_feas: float = EPS_FEAS) -> None:
    for i in range(len(measurement)):
        if not is_valid_effect(space, measurement.effects[i], eps_feas=eps_feas):
            raise InputError(f"effect {i} takes values outside [0, 1] on the space")
    if measurement_defect(space, measurement) > eps_feas * 10:
        raise InputError("effects do not sum to the unit functional")


@dataclass(frozen=True)
class ValidationIssue:
    kind: str
    vertex: int | None
    detail: str
    witness: tuple | None = None


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    issues: tuple


def validate_space(space: StateSpace, *, eps_feas: float = EPS_FEAS) -> ValidationReport:
    """Check normalization and vertex extremality, reporting every violation.

    A non-extreme vertex comes with the convex combination over the other
    vertices that reproduces it.
    """
    issues = []
    norms = space.vertices @ space.unit_effect
    for i, val in enumerate(norms):
        if abs(val - 1.0) > eps_feas * 10:
            issues.append(ValidationIssue(
                "normalization", i, f"unit_effect(vertex {i}) = {val!r}, expected 1"
            ))
    m = space.num_vertices
    if m > 1:
        for i in range(m):
            others = [j for j in range(m) if j != i]
            sub = StateSpace("check", space.vertices[others], space.unit_effect)
            mix = membership(sub, space.vertices[i], eps_feas=eps_feas)
            if mix is not None:
                witness = tuple(
                    (others[j], float(mix[j])) for j in range(len(others)) if mix[j] > eps_feas
                )
                issues.append(ValidationIssue(
                    "non_extreme", i,
                    f"vertex {i} is a mixture of the other vertices", witness,
                ))
    return ValidationReport(valid=not issues, issues=tuple(issues))
