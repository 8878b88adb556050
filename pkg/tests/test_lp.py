"""LP kernel: worked examples, invariants, fuzz against scipy, backend parity."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gptgame import lp
from gptgame.errors import InputError


def _solve(c, A, b, nonneg):
    return lp.solve(lp.LpProblem(np.asarray(c, float), np.asarray(A, float),
                                 np.asarray(b, float), nonneg))


def test_forced_equality():
    sol = _solve([1.0], [[1.0]], [1.0], (0,))
    assert sol.is_optimal
    assert sol.value == pytest.approx(1.0, abs=1e-12)


def test_normalized_pair():
    sol = _solve([1.0, 1.0], [[1.0, 1.0]], [1.0], (0, 1))
    assert sol.value == pytest.approx(1.0, abs=1e-12)


def test_sign_contradiction_infeasible():
    sol = _solve([0.0], [[1.0]], [-1.0], (0,))
    assert sol.status == lp.INFEASIBLE


def test_unbounded():
    # max x with x - y = 0, both nonnegative: the diagonal is an improving ray
    sol = _solve([1.0, 0.0], [[1.0, -1.0]], [0.0], (0, 1))
    assert sol.status == lp.UNBOUNDED


def test_free_variables():
    sol = _solve([-1.0], [[1.0]], [3.0], ())
    assert sol.value == pytest.approx(-3.0)
    assert sol.point[0] == pytest.approx(3.0)


def test_shape_validation():
    with pytest.raises(InputError):
        lp.LpProblem(np.ones(2), np.ones((1, 3)), np.ones(1), ())
    with pytest.raises(InputError):
        lp.LpProblem(np.ones(2), np.ones((1, 2)), np.ones(2), ())
    with pytest.raises(InputError):
        lp.LpProblem(np.ones(2), np.ones((1, 2)), np.ones(1), (0, 0))
    with pytest.raises(InputError):
        lp.LpProblem(np.ones(2), np.ones((1, 2)), np.ones(1), (5,))


def test_iteration_cap_raises_degeneracy_error():
    from gptgame.errors import DegeneracyError

    prob = lp.LpProblem(np.ones(3), np.ones((1, 3)), np.ones(1), (0, 1, 2))
    with pytest.raises(DegeneracyError):
        lp.solve(prob, max_iter=0)


def _random_problem(rng):
    m = int(rng.integers(1, 7))
    n = int(rng.integers(1, 10))
    A = rng.normal(size=(m, n)).round(3)
    x0 = rng.uniform(0.0, 1.0, size=n)
    b = A @ x0
    c = rng.normal(size=n).round(3)
    k = int(rng.integers(0, n + 1))
    nonneg = tuple(sorted(rng.choice(n, size=k, replace=False).tolist()))
    return lp.LpProblem(c, A, b, nonneg)


def test_optimal_solutions_satisfy_contract():
    rng = np.random.default_rng(7)
    checked = 0
    for _ in range(200):
        prob = _random_problem(rng)
        sol = lp.solve(prob)
        if not sol.is_optimal:
            continue
        checked += 1
        # primal feasibility
        assert np.max(np.abs(prob.eq_matrix @ sol.point - prob.eq_rhs)) <= 1e-9
        if prob.nonneg_vars:
            assert sol.point[list(prob.nonneg_vars)].min() >= -1e-9
        # weak duality: dual objective bounds the primal value from above
        assert sol.certificate @ prob.eq_rhs >= sol.value - 1e-9
        # complementary slackness
        reduced = prob.objective - prob.eq_matrix.T @ sol.certificate
        assert abs(float(sol.point @ reduced)) <= 1e-9
    assert checked > 100


def test_variable_permutation_invariance():
    rng = np.random.default_rng(11)
    for _ in range(50):
        prob = _random_problem(rng)
        sol = lp.solve(prob)
        perm = rng.permutation(prob.num_vars)
        inv = np.argsort(perm)
        nonneg = tuple(sorted(int(inv[j]) for j in prob.nonneg_vars))
        perm_prob = lp.LpProblem(prob.objective[perm], prob.eq_matrix[:, perm],
                                 prob.eq_rhs, nonneg)
        perm_sol = lp.solve(perm_prob)
        assert sol.status == perm_sol.status
        if sol.is_optimal:
            assert abs(sol.value - perm_sol.value) <= 1e-9


def test_deterministic_resolve():
    rng = np.random.default_rng(3)
    prob = _random_problem(rng)
    first = lp.solve(prob)
    second = lp.solve(prob)
    assert first.status == second.status
    if first.is_optimal:
        assert first.value == second.value
        assert np.array_equal(first.point, second.point)


@settings(max_examples=150, deadline=None, derandomize=True)
@given(st.integers(min_value=0, max_value=10 ** 9))
def test_fuzz_against_scipy(seed):
    scipy_linprog = pytest.importorskip("scipy.optimize").linprog
    rng = np.random.default_rng(seed)
    prob = _random_problem(rng)
    bounds = [(0, None) if j in prob.nonneg_vars else (None, None)
              for j in range(prob.num_vars)]
    ref = scipy_linprog(-prob.objective, A_eq=prob.eq_matrix, b_eq=prob.eq_rhs,
                        bounds=bounds, method="highs")
    sol = lp.solve(prob)
    if ref.status == 0:
        assert sol.is_optimal
        assert sol.value == pytest.approx(-ref.fun, abs=1e-7, rel=1e-7)
    elif ref.status == 2:
        assert sol.status == lp.INFEASIBLE
    elif ref.status == 3:
        assert sol.status == lp.UNBOUNDED


def test_backend_parity():
    if lp.backend_name() != "cython":
        pytest.skip("compiled kernel not built")
    rng = np.random.default_rng(23)
    problems = [_random_problem(rng) for _ in range(80)]
    results = {}
    for name in ("cython", "python"):
        lp.set_backend(name)
        try:
            results[name] = [lp.solve(p) for p in problems]
        finally:
            lp.set_backend("cython")
    for a, b in zip(results["cython"], results["python"]):
        assert a.status == b.status
        if a.is_optimal:
            assert abs(a.value - b.value) <= 1e-12
            assert np.max(np.abs(a.point - b.point)) <= 1e-12
