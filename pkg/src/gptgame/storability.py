"""Information storability: the full quantity, its length-limited variants,
characteristic numbers and the uniform-center certificate.

Two independent routes are used throughout and must agree:

* discrimination route: storability limited to n states equals the best
  encoding power over vertex subsets of size <= n (mixing states can only
  lower the encoding power, so pure states suffice);
* ray route: the same quantity as an LP over conic combinations of the
  extreme dual-cone rays, with each ray weighted by its maximum over the
  chosen vertex subset (any measurement is simulable by single-ray ones,
  which makes this route exact as well).

With no length limit both collapse to a single LP / a single subset (all
vertices), which is the headline storability value.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import lp
from .discrimination import encoding_power
from .errors import CapacityError, InputError, NumericalError
from .model import (
    EPS_CMP,
    EPS_FEAS,
    Measurement,
    StateEnsemble,
    StateSpace,
)
from .rays import MAX_AMBIENT_DIM, RaySet, cached_rays

MAX_SUBSETS = 10 ** 6

ALGORITHM_BOTH = "both"
ALGORITHM_DISCRIMINATION = "discrimination"
ALGORITHM_RAYS = "rays"


@dataclass(frozen=True, eq=False)
class StorabilityResult:
    value: float
    witness_measurement: Measurement


@dataclass(frozen=True, eq=False)
class LimitedStorability:
    n: int
    value: float
    witness_ensemble: StateEnsemble | None
    witness_measurement: Measurement | None
    by_discrimination: float | None
    by_rays: float | None


@dataclass(frozen=True, eq=False)
class StorabilityProfile:
    """Headline storability plus the length-limited sweep and its landmarks.

    d is the operational dimension (largest n with value n), n_star the
    shortest length already achieving the full value, and m the shortest
    length exceeding d (absent when the theory has no super storability).
    """

    is_value: float
    is_n: dict
    d: int
    m: int | None
    n_star: int
    witness_measurement: Measurement
    witness_ensemble: StateEnsemble

    def is_at(self, n: int) -> float:
        if n < 1:
            raise InputError("storability is defined for n >= 1")
        if n in self.is_n:
            return self.is_n[n]
        if n > max(self.is_n):
            return self.is_value
        raise InputError(f"profile has no entry for n = {n}")


@dataclass(frozen=True, eq=False)
class CenterCertificate:
    """A state seeing every extreme indecomposable effect at the same value."""

    s0: np.ndarray
    lambda0: float
    condition_i: bool
    condition_ii: bool
    predicted_is: float


def _ray_lp(space: StateSpace, ray_set: RaySet, objective: np.ndarray,
            eps_feas: float) -> lp.LpSolution:
    """Maximize objective . alpha over {alpha >= 0 : sum alpha_r ray_r = u}."""
    Q = space.span_basis
    A = (ray_set.rays @ Q.T).T          # (k, R)
    b = Q @ space.unit_effect
    return lp.solve(lp.LpProblem(objective, A, b, tuple(range(len(ray_set)))),
                    eps_feas=eps_feas)


def _measurement_from_alpha(space: StateSpace, ray_set: RaySet, alpha: np.ndarray,
                            eps_feas: float) -> Measurement:
    support = [r for r in range(len(ray_set)) if alpha[r] > eps_feas]
    if not support:
        raise NumericalError("ray solution has empty support")
    effects = np.array([alpha[r] * ray_set.rays[r] for r in support])
    # put back any unit-functional component orthogonal to the vertex span;
    # it evaluates to zero on every state, so probabilities are unchanged
    effects[0] += space.unit_effect - space.unit_in_span
    return Measurement(effects)


def information_storability(space: StateSpace, *, eps_feas: float = EPS_FEAS,
                            max_dim: int = MAX_AMBIENT_DIM,
                            eps_cmp: float = EPS_CMP) -> StorabilityResult:
    """Full storability: one LP over the extreme dual-cone rays.

    Maximizes the total weight of a conic combination of sup-normalized
    rays that reproduces the unit functional; the witness measurement keeps
    the strictly positive terms.
    """
    ray_set = cached_rays(space, max_dim=max_dim, eps_cmp=eps_cmp)
    sol = _ray_lp(space, ray_set, np.ones(len(ray_set)), eps_feas)
    if not sol.is_optimal:
        raise NumericalError(f"storability ray LP reported {sol.status}")
    return StorabilityResult(
        value=float(sol.value),
        witness_measurement=_measurement_from_alpha(space, ray_set, sol.point, eps_feas),
    )


def storability_limited(space: StateSpace, n: int, *, algorithm: str = ALGORITHM_BOTH,
                        eps_feas: float = EPS_FEAS, eps_cmp: float = EPS_CMP,
                        max_dim: int = MAX_AMBIENT_DIM,
                        max_subsets: int = MAX_SUBSETS) -> LimitedStorability:
    """Storability with messages limited to length n.

    Runs the discrimination route and/or the ray route over all vertex
    subsets of size min(n, #vertices); with algorithm='both' the two values
    must agree within eps_cmp.
    """
    n = int(n)
    if n < 1:
        raise InputError("message length must be >= 1")
    if algorithm not in (ALGORITHM_BOTH, ALGORITHM_DISCRIMINATION, ALGORITHM_RAYS):
        raise InputError(f"unknown algorithm {algorithm!r}")
    size = min(n, space.num_vertices)
    count = math.comb(space.num_vertices, size)
    if count > max_subsets:
        raise CapacityError(
            f"{count} vertex subsets of size {size} exceed the cap {max_subsets}"
        )
    key = (space._key, n, algorithm, eps_feas, eps_cmp, max_dim, max_subsets)
    hit = _LIMITED_CACHE.get(key)
    if hit is not None:
        return hit

    best_disc = None
    best_subset = None
    best_result = None
    if algorithm in (ALGORITHM_BOTH, ALGORITHM_DISCRIMINATION):
        for idx in itertools.combinations(range(space.num_vertices), size):
            ensemble = StateEnsemble.from_vertices(space, idx)
            res = encoding_power(space, ensemble, eps_feas=eps_feas)
            if best_disc is None or res.value > best_disc:
                best_disc = res.value
                best_subset = idx
                best_result = res

    best_rays = None
    rays_subset = None
    rays_alpha = None
    ray_set = None
    if algorithm in (ALGORITHM_BOTH, ALGORITHM_RAYS):
        ray_set = cached_rays(space, max_dim=max_dim, eps_cmp=eps_cmp)
        evals = ray_set.rays @ space.vertices.T       # (R, m)
        for idx in itertools.combinations(range(space.num_vertices), size):
            objective = evals[:, list(idx)].max(axis=1)
            sol = _ray_lp(space, ray_set, objective, eps_feas)
            if not sol.is_optimal:
                raise NumericalError(f"restricted ray LP reported {sol.status}")
            if best_rays is None or sol.value > best_rays:
                best_rays = sol.value
                rays_subset = idx
                rays_alpha = sol.point

    if algorithm == ALGORITHM_BOTH:
        if abs(best_disc - best_rays) > eps_cmp * max(1.0, abs(best_disc)):
            raise NumericalError(
                f"storability routes disagree at n={n}: "
                f"discrimination {best_disc!r} vs rays {best_rays!r}"
            )

    if best_result is not None:
        value = best_disc
        witness_ensemble = StateEnsemble.from_vertices(space, best_subset)
        witness_measurement = best_result.optimal_measurement
    else:
        value = best_rays
        witness_ensemble = StateEnsemble.from_vertices(space, rays_subset)
        witness_measurement = _measurement_from_alpha(space, ray_set, rays_alpha, eps_feas)

    out = LimitedStorability(
        n=n, value=float(value), witness_ensemble=witness_ensemble,
        witness_measurement=witness_measurement,
        by_discrimination=best_disc, by_rays=best_rays,
    )
    _LIMITED_CACHE[key] = out
    return out


def characteristic_numbers(space: StateSpace, *, algorithm: str = ALGORITHM_BOTH,
                           eps_feas: float = EPS_FEAS, eps_cmp: float = EPS_CMP,
                           max_dim: int = MAX_AMBIENT_DIM,
                           max_subsets: int = MAX_SUBSETS) -> StorabilityProfile:
    """Sweep the limited storability until it saturates and read off d, m, n_star."""
    key = (space._key, algorithm, eps_feas, eps_cmp, max_dim, max_subsets)
    hit = _PROFILE_CACHE.get(key)
    if hit is not None:
        return hit

    full = information_storability(space, eps_feas=eps_feas, max_dim=max_dim,
                                   eps_cmp=eps_cmp)
    is_map: dict = {}
    d = 0
    n_star = None
    witness_ensemble = None
    witness_measurement = None
    for n in range(1, space.num_vertices + 1):
        res = storability_limited(space, n, algorithm=algorithm, eps_feas=eps_feas,
                                  eps_cmp=eps_cmp, max_dim=max_dim,
                                  max_subsets=max_subsets)
        is_map[n] = res.value
        if res.value >= n - eps_cmp:
            d = n
        if res.value >= full.value - eps_cmp:
            n_star = n
            witness_ensemble = res.witness_ensemble
            witness_measurement = res.witness_measurement
            break
    if n_star is None:
        raise NumericalError(
            "limited storability never reached the ray-LP value; "
            f"last values {is_map!r} vs {full.value!r}"
        )
    m = None
    for n in sorted(is_map):
        if is_map[n] > d + eps_cmp:
            m = n
            break
    profile = StorabilityProfile(
        is_value=full.value, is_n=is_map, d=d, m=m, n_star=n_star,
        witness_measurement=witness_measurement,
        witness_ensemble=witness_ensemble,
    )
    _PROFILE_CACHE[key] = profile
    return profile


def uniform_center_certificate(space: StateSpace, *, eps_feas: float = EPS_FEAS,
                               eps_cmp: float = EPS_CMP,
                               max_dim: int = MAX_AMBIENT_DIM) -> CenterCertificate | None:
    """Search for a state on which all extreme indecomposable effects agree.

    When such a state exists the storability equals the reciprocal of the
    common value; the second condition additionally requires every ray to
    peak at its own private vertex.
    """
    ray_set = cached_rays(space, max_dim=max_dim, eps_cmp=eps_cmp)
    R = len(ray_set)
    m = space.num_vertices
    G = ray_set.rays @ space.vertices.T     # (R, m)
    # variables: mixture weights theta (m) and the common value (1)
    A = np.zeros((R + 1, m + 1))
    b = np.zeros(R + 1)
    A[:R, :m] = G
    A[:R, m] = -1.0
    A[R, :m] = 1.0
    b[R] = 1.0
    sol = lp.feasible(lp.LpProblem(np.zeros(m + 1), A, b, tuple(range(m + 1))),
                      eps_feas=eps_feas)
    if not sol.is_optimal:
        return None
    theta = np.clip(sol.point[:m], 0.0, None)
    lambda0 = float(sol.point[m])
    if lambda0 <= eps_feas:
        raise NumericalError("degenerate center certificate with vanishing value")
    singletons = all(len(s) == 1 for s in ray_set.maximizer_sets)
    distinct = len({s[0] for s in ray_set.maximizer_sets if len(s) == 1}) == R
    return CenterCertificate(
        s0=theta @ space.vertices,
        lambda0=lambda0,
        condition_i=True,
        condition_ii=bool(singletons and distinct),
        predicted_is=1.0 / lambda0,
    )


def is_maximally_decodable(space: StateSpace, ensemble: StateEnsemble, *,
                           eps_cmp: float = EPS_CMP, eps_feas: float = EPS_FEAS,
                           max_dim: int = MAX_AMBIENT_DIM) -> bool:
    """Does the ensemble's encoding power reach the space's storability?"""
    full = information_storability(space, eps_feas=eps_feas, max_dim=max_dim,
                                   eps_cmp=eps_cmp).value
    mu = encoding_power(space, ensemble, eps_feas=eps_feas).value
    return bool(mu >= full - eps_cmp)


def has_maximal_decoding_power(space: StateSpace, measurement: Measurement, *,
                               eps_cmp: float = EPS_CMP, eps_feas: float = EPS_FEAS,
                               max_dim: int = MAX_AMBIENT_DIM) -> bool:
    """Does the measurement's decoding power reach the space's storability?"""
    from .discrimination import decoding_power

    full = information_storability(space, eps_feas=eps_feas, max_dim=max_dim,
                                   eps_cmp=eps_cmp).value
    lam = decoding_power(space, measurement).value
    return bool(lam >= full - eps_cmp)


def minkowski_measure(space: StateSpace, **kwargs) -> float:
    """Point-asymmetry of the state polytope: storability minus one."""
    return information_storability(space, **kwargs).value - 1.0


_LIMITED_CACHE: dict = {}
_PROFILE_CACHE: dict = {}
