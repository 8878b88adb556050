# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled dense two-phase simplex kernel.

Same algorithm, tolerances and tie-breaking as gptgame._simplex_py; the
pivot loop is plain C so large subset sweeps stay fast.
"""

from libc.math cimport fabs, isfinite

import numpy as np

BACKEND_NAME = "cython"


cdef void _pivot(double[:, ::1] T, long long[::1] basis,
                 unsigned char[::1] in_basis, Py_ssize_t row, Py_ssize_t col) noexcept nogil:
    cdef Py_ssize_t ncols = T.shape[1]
    cdef Py_ssize_t nrows = T.shape[0]
    cdef Py_ssize_t i, j
    cdef double p = T[row, col]
    cdef double f
    for j in range(ncols):
        T[row, j] /= p
    for i in range(nrows):
        if i == row:
            continue
        f = T[i, col]
        if f != 0.0:
            for j in range(ncols):
                T[i, j] -= f * T[row, j]
    for i in range(nrows):
        T[i, col] = 0.0
    T[row, col] = 1.0
    in_basis[basis[row]] = 0
    in_basis[col] = 1
    basis[row] = col


cdef int _optimize(double[:, ::1] T, long long[::1] basis, unsigned char[::1] allowed,
                   unsigned char[::1] in_basis, Py_ssize_t n_struct, Py_ssize_t m,
                   Py_ssize_t obj_row, double eps, double pivot_tol,
                   long* iters, long max_iter) noexcept nogil:
    cdef Py_ssize_t n_all = n_struct + m
    cdef Py_ssize_t rhs = T.shape[1] - 1
    cdef Py_ssize_t i, col, leave
    cdef long long leave_basis
    cdef double a, ratio, best
    while True:
        col = -1
        for i in range(n_all):
            if allowed[i] and not in_basis[i] and T[obj_row, i] > eps:
                col = i
                break
        if col < 0:
            return 0
        if iters[0] >= max_iter:
            return 3
        iters[0] += 1
        leave = -1
        best = 0.0
        leave_basis = 0
        for i in range(m):
            a = T[i, col]
            if a > pivot_tol:
                ratio = T[i, rhs] / a
                if leave < 0 or ratio < best or (ratio == best and basis[i] < leave_basis):
                    leave = i
                    best = ratio
                    leave_basis = basis[i]
        if leave < 0:
            return 2
        if not isfinite(best):
            return 4
        if basis[leave] >= n_struct:
            allowed[basis[leave]] = 0
        _pivot(T, basis, in_basis, leave, col)


def run_two_phase(double[:, ::1] T, long long[::1] basis, unsigned char[::1] allowed,
                  unsigned char[::1] in_basis, Py_ssize_t n_struct, Py_ssize_t m,
                  double eps_feas, double pivot_tol, long max_iter):
    """In-place two-phase simplex; see the python twin for the tableau layout."""
    cdef Py_ssize_t rhs = T.shape[1] - 1
    cdef long iters = 0
    cdef int status
    cdef Py_ssize_t i, j
    with nogil:
        status = _optimize(T, basis, allowed, in_basis, n_struct, m, m + 1,
                           eps_feas, pivot_tol, &iters, max_iter)
    if status == 2:
        status = 4
    if status != 0:
        return status, iters
    if T[m + 1, rhs] > eps_feas:
        return 1, iters
    with nogil:
        for i in range(m):
            if basis[i] >= n_struct:
                for j in range(n_struct):
                    if allowed[j] and not in_basis[j] and fabs(T[i, j]) > pivot_tol:
                        allowed[basis[i]] = 0
                        _pivot(T, basis, in_basis, i, j)
                        iters += 1
                        break
        for j in range(n_struct, n_struct + m):
            allowed[j] = 0
        status = _optimize(T, basis, allowed, in_basis, n_struct, m, m,
                           eps_feas, pivot_tol, &iters, max_iter)
    return status, iters
