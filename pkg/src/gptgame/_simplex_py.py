"""Pure-numpy fallback for the dense two-phase simplex kernel.

Mirrors gptgame._simplex pivot for pivot: Bland's rule (smallest eligible
entering index, smallest basic index among exact ratio ties), identical
tolerances, identical elementwise tableau updates.  Backend selection
happens in gptgame.lp.

Status codes: 0 optimal, 1 infeasible, 2 unbounded, 3 iteration cap hit,
4 numerical breakdown.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND_NAME = "python"


def _pivot(T: np.ndarray, basis: np.ndarray, in_basis: np.ndarray, row: int, col: int) -> None:
    prow = T[row]
    prow /= prow[col]
    col_vals = T[:, col].copy()
    col_vals[row] = 0.0
    T -= np.outer(col_vals, prow)
    # pin the pivot column to an exact unit vector to stop roundoff drift
    T[:, col] = 0.0
    T[row, col] = 1.0
    in_basis[basis[row]] = 0
    in_basis[col] = 1
    basis[row] = col


def _optimize(T, basis, allowed, in_basis, n_struct, m, obj_row, eps, pivot_tol, iters, max_iter):
    n_all = n_struct + m
    rhs = T.shape[1] - 1
    obj = T[obj_row]
    while True:
        eligible = np.nonzero((obj[:n_all] > eps) & (allowed != 0) & (in_basis == 0))[0]
        if eligible.size == 0:
            return 0, iters
        col = int(eligible[0])
        if iters >= max_iter:
            return 3, iters
        iters += 1
        colv = T[:m, col]
        rows = np.nonzero(colv > pivot_tol)[0]
        if rows.size == 0:
            return 2, iters
        ratios = T[rows, rhs] / colv[rows]
        rmin = ratios.min()
        if not math.isfinite(rmin):
            return 4, iters
        ties = rows[ratios == rmin]
        leave = int(ties[np.argmin(basis[ties])])
        if basis[leave] >= n_struct:
            allowed[basis[leave]] = 0  # artificial never re-enters
        _pivot(T, basis, in_basis, leave, col)


def run_two_phase(T, basis, allowed, in_basis, n_struct, m, eps_feas, pivot_tol, max_iter):
    """Run both simplex phases in place on the prepared tableau.

    T has m constraint rows, then the phase-2 objective row, then the
    phase-1 objective row; columns are n_struct structurals, m artificials
    and the right-hand side.
    """
    rhs = T.shape[1] - 1
    status, iters = _optimize(
        T, basis, allowed, in_basis, n_struct, m, m + 1, eps_feas, pivot_tol, 0, max_iter
    )
    if status == 2:  # phase-1 objective is bounded; an unbounded ray is numerical noise
        status = 4
    if status != 0:
        return status, iters
    if T[m + 1, rhs] > eps_feas:
        return 1, iters
    # drive basic artificials (all at value ~0) out of the basis
    for i in range(m):
        if basis[i] >= n_struct:
            row = T[i]
            for j in range(n_struct):
                if allowed[j] and not in_basis[j] and abs(row[j]) > pivot_tol:
                    allowed[basis[i]] = 0
                    _pivot(T, basis, in_basis, i, j)
                    iters += 1
                    break
            # an all-zero row is a redundant constraint; its artificial stays
            # basic at zero and the row is inert from here on
    allowed[n_struct:] = 0
    return _optimize(
        T, basis, allowed, in_basis, n_struct, m, m, eps_feas, pivot_tol, iters, max_iter
    )
