"""Seeded random generators used by the property suites.

Measurements are sampled by solving the ray LP with a random objective
(to land on a random vertex of the feasible weight polytope) and then
splitting each weighted ray across outcomes with a row-stochastic matrix;
that construction is always a valid measurement.
"""

from __future__ import annotations

import numpy as np

from . import lp
from .degradability import StochasticMatrix
from .errors import NumericalError
from .model import EPS_FEAS, Measurement, StateEnsemble, StateSpace
from .rays import cached_rays
from .spaces import classical_simplex, direct_sum, polygon

_SMALL_FAMILIES = (
    lambda: classical_simplex(2),
    lambda: classical_simplex(3),
    lambda: classical_simplex(4),
    lambda: polygon(3),
    lambda: polygon(4),
    lambda: polygon(5),
    lambda: polygon(6),
    lambda: direct_sum(classical_simplex(1), polygon(4)),
    lambda: direct_sum(classical_simplex(2), classical_simplex(3)),
)


def random_space(rng: np.random.Generator, *, max_vertices: int = 6) -> StateSpace:
    choices = [f for f in _SMALL_FAMILIES if f().num_vertices <= max_vertices]
    return choices[int(rng.integers(len(choices)))]()


def random_affine_image(rng: np.random.Generator, space: StateSpace) -> StateSpace:
    """Reparametrize by a well-conditioned invertible linear map.

    Vertices map through L, functionals through the inverse transpose, so
    every evaluation (and hence every derived quantity) is unchanged.
    """
    D = space.ambient_dim
    q, _ = np.linalg.qr(rng.normal(size=(D, D)))
    scales = rng.uniform(0.5, 2.0, size=D)
    L = q * scales
    unit = np.linalg.solve(L.T, space.unit_effect)
    return StateSpace(f"{space.name}~affine", space.vertices @ L.T, unit)


def random_stochastic(rng: np.random.Generator, rows: int, cols: int) -> StochasticMatrix:
    return StochasticMatrix(rng.dirichlet(np.ones(cols), size=rows))


def random_mixture_ensemble(rng: np.random.Generator, space: StateSpace, k: int,
                            *, allow_repeats: bool = True) -> StateEnsemble:
    mixtures = rng.dirichlet(np.ones(space.num_vertices) * 0.7, size=k)
    return StateEnsemble(space, mixtures @ space.vertices, mixtures,
                         allow_repeats=allow_repeats)


def random_vertex_ensemble(rng: np.random.Generator, space: StateSpace, k: int) -> StateEnsemble:
    k = min(k, space.num_vertices)
    idx = sorted(rng.choice(space.num_vertices, size=k, replace=False).tolist())
    return StateEnsemble.from_vertices(space, idx)


def random_ray_weights(rng: np.random.Generator, space: StateSpace,
                       *, eps_feas: float = EPS_FEAS) -> np.ndarray:
    """A random vertex of {alpha >= 0 : sum alpha_r ray_r = unit}."""
    ray_set = cached_rays(space)
    Q = space.span_basis
    A = (ray_set.rays @ Q.T).T
    b = Q @ space.unit_effect
    objective = rng.normal(size=len(ray_set))
    sol = lp.solve(lp.LpProblem(objective, A, b, tuple(range(len(ray_set)))),
                   eps_feas=eps_feas)
    if not sol.is_optimal:
        raise NumericalError(f"ray weight sampling failed: {sol.status}")
    return np.clip(sol.point, 0.0, None)


def random_indecomposable_measurement(rng: np.random.Generator,
                                      space: StateSpace) -> Measurement:
    """Measurement whose every nonzero effect is a single weighted ray."""
    ray_set = cached_rays(space)
    alpha = random_ray_weights(rng, space)
    effects = [alpha[r] * ray_set.rays[r] for r in range(len(ray_set)) if alpha[r] > 1e-12]
    effects = np.array(effects)
    effects[0] += space.unit_effect - space.unit_in_span
    return Measurement(effects)


def random_measurement(rng: np.random.Generator, space: StateSpace,
                       n_outcomes: int) -> Measurement:
    """Random n-outcome measurement: weighted rays split across outcomes."""
    ray_set = cached_rays(space)
    alpha = random_ray_weights(rng, space)
    split = rng.dirichlet(np.ones(n_outcomes), size=len(ray_set))   # (R, n)
    effects = (split * alpha[:, None]).T @ ray_set.rays             # (n, D)
    effects[0] += space.unit_effect - space.unit_in_span
    return Measurement(effects)
