"""Dense linear-program kernel: maximize c.x subject to A.x = b.

Variables are either sign-constrained (>= 0) or free; callers add their own
slacks when they need inequalities.  The solver is a deterministic
two-phase tableau simplex with Bland's anti-cycling rule, so re-solving the
same problem always walks the same pivots.

Two interchangeable backends exist: a Cython extension (gptgame._simplex)
and a pure-numpy twin (gptgame._simplex_py).  The compiled one is picked at
import time when available; set GPTGAME_LP_BACKEND=python|cython to force a
choice.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .errors import DegeneracyError, InputError

from . import _simplex_py

_backend = None
_requested = os.environ.get("GPTGAME_LP_BACKEND", "auto").strip().lower()
if _requested in ("auto", "", "cython", "c"):
    try:
        from . import _simplex as _backend  # noqa: F401
    except ImportError:
        if _requested in ("cython", "c"):
            raise
        _backend = _simplex_py
elif _requested in ("python", "py"):
    _backend = _simplex_py
else:
    raise InputError(f"unknown GPTGAME_LP_BACKEND value: {_requested!r}")

EPS_FEAS = 1e-9
PIVOT_TOL = 1e-11

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


def backend_name() -> str:
    """Name of the active pivot backend ('cython' or 'python')."""
    return _backend.BACKEND_NAME


def set_backend(name: str) -> str:
    """Swap the pivot backend at runtime (used by benchmarks/tests)."""
    global _backend
    previous = _backend.BACKEND_NAME
    if name in ("python", "py"):
        _backend = _simplex_py
    elif name in ("cython", "c"):
        from . import _simplex

        _backend = _simplex
    else:
        raise InputError(f"unknown backend {name!r}")
    return previous


@dataclass(frozen=True, eq=False)
class LpProblem:
    """Equality-form LP: maximize objective.x with eq_matrix.x = eq_rhs.

    nonneg_vars lists the indices constrained to be >= 0; every other
    variable is free.
    """

    objective: np.ndarray
    eq_matrix: np.ndarray
    eq_rhs: np.ndarray
    nonneg_vars: tuple = ()

    def __post_init__(self):
        c = np.asarray(self.objective, dtype=float)
        A = np.atleast_2d(np.asarray(self.eq_matrix, dtype=float))
        b = np.asarray(self.eq_rhs, dtype=float)
        if A.ndim != 2 or c.ndim != 1 or b.ndim != 1:
            raise InputError("objective and rhs must be vectors, matrix 2-d")
        if A.shape != (b.size, c.size):
            raise InputError(
                f"shape mismatch: matrix {A.shape}, rhs {b.size}, objective {c.size}"
            )
        if not (np.isfinite(c).all() and np.isfinite(A).all() and np.isfinite(b).all()):
            raise InputError("non-finite problem data")
        nn = tuple(sorted(int(j) for j in self.nonneg_vars))
        if len(set(nn)) != len(nn):
            raise InputError("duplicate index in nonneg_vars")
        if nn and (nn[0] < 0 or nn[-1] >= c.size):
            raise InputError("nonneg_vars index out of range")
        object.__setattr__(self, "objective", c)
        object.__setattr__(self, "eq_matrix", A)
        object.__setattr__(self, "eq_rhs", b)
        object.__setattr__(self, "nonneg_vars", nn)

    @property
    def free_vars(self) -> tuple:
        nn = set(self.nonneg_vars)
        return tuple(j for j in range(self.objective.size) if j not in nn)

    @property
    def num_vars(self) -> int:
        return self.objective.size


@dataclass(frozen=True, eq=False)
class LpSolution:
    status: str
    value: float | None = None
    point: np.ndarray | None = None
    certificate: np.ndarray | None = None
    iterations: int = 0

    @property
    def is_optimal(self) -> bool:
        return self.status == OPTIMAL


def solve(problem: LpProblem, *, eps_feas: float = EPS_FEAS,
          pivot_tol: float = PIVOT_TOL, max_iter: int | None = None) -> LpSolution:
    """Solve an LpProblem, returning value, point and equality duals.

    Raises DegeneracyError when the pivot loop breaks down numerically
    instead of returning a silently wrong optimum.
    """
    c, A, b = problem.objective, problem.eq_matrix, problem.eq_rhs
    m, n = A.shape
    nonneg = np.zeros(n, dtype=bool)
    if problem.nonneg_vars:
        nonneg[list(problem.nonneg_vars)] = True

    # split free variables into positive/negative parts
    cols_var = []
    cols_sign = []
    for j in range(n):
        cols_var.append(j)
        cols_sign.append(1.0)
        if not nonneg[j]:
            cols_var.append(j)
            cols_sign.append(-1.0)
    cols_var = np.array(cols_var, dtype=np.int64)
    cols_sign = np.array(cols_sign, dtype=float)
    n_struct = cols_var.size

    row_sign = np.where(b < 0.0, -1.0, 1.0)
    A_std = (A * row_sign[:, None])[:, cols_var] * cols_sign[None, :]
    b_std = b * row_sign
    c_std = c[cols_var] * cols_sign

    width = n_struct + m + 1
    T = np.zeros((m + 2, width), dtype=float)
    T[:m, :n_struct] = A_std
    T[:m, n_struct:n_struct + m] = np.eye(m)
    T[:m, -1] = b_std
    T[m, :n_struct] = c_std
    T[m + 1, :n_struct] = A_std.sum(axis=0)
    T[m + 1, -1] = b_std.sum()

    basis = np.arange(n_struct, n_struct + m, dtype=np.int64)
    allowed = np.ones(n_struct + m, dtype=np.uint8)
    in_basis = np.zeros(n_struct + m, dtype=np.uint8)
    in_basis[n_struct:] = 1

    if max_iter is None:
        max_iter = 1000 + 50 * (m + n_struct)

    status, iters = _backend.run_two_phase(
        T, basis, allowed, in_basis, n_struct, m, eps_feas, pivot_tol, int(max_iter)
    )

    if status == 1:
        y = -row_sign * np.asarray(T[m + 1, n_struct:n_struct + m])
        return LpSolution(INFEASIBLE, certificate=y, iterations=iters)
    if status == 2:
        return LpSolution(UNBOUNDED, iterations=iters)
    if status == 3:
        raise DegeneracyError(
            f"simplex iteration cap {max_iter} hit on a {m}x{n_struct} tableau"
        )
    if status == 4:
        raise DegeneracyError("numerical breakdown in simplex pivoting")

    x_std = np.zeros(n_struct)
    rhs_col = np.asarray(T[:m, -1])
    for i in range(m):
        if basis[i] < n_struct:
            x_std[basis[i]] = rhs_col[i]
    x = np.zeros(n)
    np.add.at(x, cols_var, cols_sign * x_std)
    value = float(c @ x)
    y = -row_sign * np.asarray(T[m, n_struct:n_struct + m])

    scale = max(1.0, float(np.abs(b).max(initial=1.0)))
    residual = float(np.max(np.abs(A @ x - b))) if m else 0.0
    lower = float(x[nonneg].min(initial=0.0))
    if not np.isfinite(value) or residual > eps_feas * scale:
        raise DegeneracyError(
            f"simplex returned an infeasible point (residual {residual:.3e})"
        )
    if lower < -eps_feas * scale:
        raise DegeneracyError(f"sign constraint violated by {lower:.3e}")
    return LpSolution(OPTIMAL, value=value, point=x, certificate=y, iterations=iters)


def feasible(problem: LpProblem, **kwargs) -> LpSolution:
    """Phase-1 feasibility check: same problem with a zero objective."""
    probe = LpProblem(
        np.zeros(problem.num_vars),
        problem.eq_matrix,
        problem.eq_rhs,
        problem.nonneg_vars,
    )
    return solve(probe, **kwargs)
