"""Extreme rays of the positive dual cone of a state polytope.

The cone {f : f(v) >= 0 for every vertex v} is intersected with the linear
span of the vertices and its extreme rays are enumerated with the double
description method: start from a simplicial subcone picked from linearly
independent vertex constraints, then insert the remaining constraints one
at a time, combining adjacent rays across each new hyperplane.

Each returned ray is scaled so its maximum over the vertices equals 1;
those normalized functionals are the indecomposable extreme effects used
throughout the storability computations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, NumericalError
from .model import EPS_CMP, StateSpace, _readonly

MAX_AMBIENT_DIM = 8
_ZERO_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class RaySet:
    """Sup-normalized extreme rays with, per ray, the maximizing vertices."""

    rays: np.ndarray            # (R, D)
    maximizer_sets: tuple       # tuple of tuples of vertex indices

    def __len__(self) -> int:
        return self.rays.shape[0]


def _independent_rows(A: np.ndarray, tol: float = 1e-10):
    """Greedy row selection by Gram-Schmidt until full rank."""
    k = A.shape[1]
    chosen = []
    basis = []
    for i in range(A.shape[0]):
        r = A[i].astype(float)
        for b in basis:
            r = r - (r @ b) * b
        nrm = float(np.linalg.norm(r))
        if nrm > tol * max(1.0, float(np.linalg.norm(A[i]))):
            basis.append(r / nrm)
            chosen.append(i)
            if len(chosen) == k:
                break
    return chosen


def _zero_sets(rays, constraints, processed):
    sets = []
    for r in rays:
        vals = constraints[processed] @ r
        sets.append(frozenset(processed[j] for j in range(len(processed)) if abs(vals[j]) <= _ZERO_TOL))
    return sets


def _dd_rays(constraints: np.ndarray) -> np.ndarray:
    """Extreme rays of {y : constraints @ y >= 0} for a pointed cone."""
    m, k = constraints.shape
    first = _independent_rows(constraints)
    if len(first) < k:
        raise NumericalError("constraint rows do not span the reduced space")
    A0 = constraints[first]
    rays = [col / np.linalg.norm(col) for col in np.linalg.inv(A0).T]
    processed = list(first)
    for i in range(m):
        if i in first:
            continue
        a = constraints[i]
        vals = np.array([a @ r for r in rays])
        neg = [j for j in range(len(rays)) if vals[j] < -_ZERO_TOL]
        if not neg:
            processed.append(i)
            continue
        pos = [j for j in range(len(rays)) if vals[j] > _ZERO_TOL]
        zero = [j for j in range(len(rays)) if -_ZERO_TOL <= vals[j] <= _ZERO_TOL]
        zsets = _zero_sets(rays, constraints, processed)
        new_rays = []
        for jp in pos:
            for jn in neg:
                common = zsets[jp] & zsets[jn]
                adjacent = True
                for jo in range(len(rays)):
                    if jo in (jp, jn):
                        continue
                    if common <= zsets[jo]:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                combo = vals[jp] * rays[jn] - vals[jn] * rays[jp]
                nrm = float(np.linalg.norm(combo))
                if nrm > _ZERO_TOL:
                    new_rays.append(combo / nrm)
        rays = [rays[j] for j in pos] + [rays[j] for j in zero] + new_rays
        processed.append(i)
    return np.array(rays)


def extreme_indecomposable_effects(space: StateSpace, *, max_dim: int = MAX_AMBIENT_DIM,
                                   eps_cmp: float = EPS_CMP) -> RaySet:
    """Complete, duplicate-free list of extreme dual-cone rays of the space.

    Rays are represented inside the linear span of the vertices and scaled
    to sup-norm 1 over the polytope.  Raises CapacityError above the
    configured ambient-dimension cap.
    """
    if space.ambient_dim > max_dim:
        raise CapacityError(
            f"ambient dimension {space.ambient_dim} exceeds the ray cap {max_dim}"
        )
    Q = space.span_basis                     # (k, D)
    constraints = space.vertices @ Q.T       # (m, k): rows are vertices in span coords
    reduced = _dd_rays(constraints)
    if reduced.size == 0:
        raise NumericalError("ray enumeration produced no rays")

    vals = reduced @ constraints.T           # (R, m) evaluations on the vertices
    sups = vals.max(axis=1)
    if sups.min() <= _ZERO_TOL:
        raise NumericalError("found a ray vanishing on every vertex")
    reduced = reduced / sups[:, None]
    vals = vals / sups[:, None]

    # deduplicate proportional rays (safety: DD should not produce any)
    keep = []
    for i in range(reduced.shape[0]):
        if all(np.max(np.abs(vals[i] - vals[j])) > eps_cmp for j in keep):
            keep.append(i)
    reduced, vals = reduced[keep], vals[keep]

    ambient = reduced @ Q                    # back to D coordinates
    order = np.lexsort(np.round(ambient, 12).T[::-1])
    ambient, vals = ambient[order], vals[order]

    maximizers = tuple(
        tuple(int(j) for j in np.nonzero(vals[i] >= 1.0 - eps_cmp)[0])
        for i in range(ambient.shape[0])
    )
    return RaySet(rays=_readonly(ambient), maximizer_sets=maximizers)


_RAY_CACHE: dict = {}


def cached_rays(space: StateSpace, *, max_dim: int = MAX_AMBIENT_DIM,
                eps_cmp: float = EPS_CMP) -> RaySet:
    key = (space._key, max_dim, eps_cmp)
    hit = _RAY_CACHE.get(key)
    if hit is None:
        hit = extreme_indecomposable_effects(space, max_dim=max_dim, eps_cmp=eps_cmp)
        _RAY_CACHE[key] = hit
    return hit
