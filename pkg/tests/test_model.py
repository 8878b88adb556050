"""State-space model: evaluation, validation, faces, dimensions, rays."""

import numpy as np
import pytest

from gptgame import lp
from gptgame.errors import CapacityError, InputError
from gptgame.model import (
    Measurement,
    StateEnsemble,
    StateSpace,
    affine_dimension,
    evaluate,
    maximizer_face,
    membership,
    validate_space,
)
from gptgame.rays import cached_rays, extreme_indecomposable_effects
from gptgame.spaces import classical_simplex, polygon


def test_evaluate_unit_effect_on_vertices(cl3):
    for v in cl3.vertices:
        assert evaluate(cl3, cl3.unit_effect, v) == pytest.approx(1.0, abs=1e-12)


def test_evaluate_zero_functional(cl3):
    assert evaluate(cl3, np.zeros(3), cl3.vertices[1]) == 0.0


def test_evaluate_basis_effects(cl3):
    b1 = np.array([1.0, 0.0, 0.0])
    assert evaluate(cl3, b1, cl3.vertices[0]) == 1.0
    assert evaluate(cl3, b1, cl3.vertices[1]) == 0.0


def test_evaluate_dimension_mismatch(cl3):
    with pytest.raises(InputError):
        evaluate(cl3, np.zeros(2), cl3.vertices[0])


def test_evaluate_clamps(cl2):
    # slightly out-of-range dot products are clamped into [0, 1]
    e = np.array([1.0 + 5e-10, 0.0])
    assert evaluate(cl2, e, cl2.vertices[0]) == 1.0


def test_validate_catalog_space(pentagon):
    assert validate_space(pentagon).valid


def test_validate_flags_midpoint_vertex(square):
    mid = 0.5 * (square.vertices[0] + square.vertices[1])
    bad = StateSpace("bad", np.vstack([square.vertices, mid]), square.unit_effect)
    report = validate_space(bad)
    assert not report.valid
    issue = next(i for i in report.issues if i.kind == "non_extreme")
    assert issue.vertex == 4
    # witness reconstructs the midpoint as a mixture of the first two vertices
    weights = dict(issue.witness)
    assert weights.get(0, 0.0) == pytest.approx(0.5, abs=1e-7)
    assert weights.get(1, 0.0) == pytest.approx(0.5, abs=1e-7)


def test_validate_flags_bad_normalization(cl2):
    bad = StateSpace("bad", np.array([[1.0, 0.0], [0.0, 0.9]]), cl2.unit_effect)
    report = validate_space(bad)
    assert any(i.kind == "normalization" and i.vertex == 1 for i in report.issues)


def test_maximizer_face_examples(cl3, square):
    b2 = np.array([0.0, 1.0, 0.0])
    assert maximizer_face(cl3, b2) == (1,)
    assert maximizer_face(cl3, cl3.unit_effect) == (0, 1, 2)
    rays = cached_rays(square)
    for face in rays.maximizer_sets:
        assert len(face) == 2


def test_square_face_matches_direct_evaluation(square):
    # oracle: evaluate each closed-form effect on all four vertices directly
    from gptgame.spaces import polygon_extreme_effects

    for e in polygon_extreme_effects(4):
        vals = square.vertices @ e
        expect = tuple(int(i) for i in np.nonzero(vals >= vals.max() - 1e-7)[0])
        assert maximizer_face(square, e) == expect
        assert len(expect) == 2


def test_unit_effect_on_mixed_states(pentagon):
    rng = np.random.default_rng(12)
    for _ in range(10):
        mix = rng.dirichlet(np.ones(pentagon.num_vertices))
        state = mix @ pentagon.vertices
        assert evaluate(pentagon, pentagon.unit_effect, state) == pytest.approx(1.0, abs=1e-12)


def test_maximizer_face_nonempty_for_random_effects(pentagon):
    rng = np.random.default_rng(5)
    for _ in range(25):
        assert len(maximizer_face(pentagon, rng.normal(size=3))) >= 1


def test_affine_dimension_examples():
    assert affine_dimension(classical_simplex(4)) == 3
    assert affine_dimension(polygon(7)) == 2
    assert affine_dimension(classical_simplex(1)) == 0


def test_membership_certificates(square):
    center = square.vertices.mean(axis=0)
    mix = membership(square, center)
    assert mix is not None
    assert np.allclose(mix @ square.vertices, center, atol=1e-9)
    outside = center + np.array([10.0, 0.0, 0.0])
    assert membership(square, outside) is None


def test_ensemble_distinctness_guard(cl2):
    with pytest.raises(InputError):
        StateEnsemble.from_mixtures(cl2, [[0.5, 0.5], [0.5, 0.5]])
    ok = StateEnsemble.from_mixtures(cl2, [[0.5, 0.5], [0.5, 0.5]], allow_repeats=True)
    assert len(ok) == 2


def test_ensemble_outside_state_rejected(cl2):
    with pytest.raises(InputError):
        StateEnsemble.from_states(cl2, [[1.5, -0.5]])


def test_measurement_container(square):
    rays = cached_rays(square)
    meas = Measurement(rays.rays[:1])
    assert len(meas) == 1
    assert meas[0].coeffs.shape == (3,)


# -- ray enumeration ------------------------------------------------------------


def test_classical_rays_are_basis(cl4):
    rays = cached_rays(cl4)
    assert len(rays) == 4
    got = sorted(tuple(np.round(r, 9)) for r in rays.rays)
    expect = sorted(tuple(r) for r in np.eye(4))
    assert np.allclose(got, expect, atol=1e-9)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8, 9, 12])
def test_polygon_ray_count(n):
    assert len(cached_rays(polygon(n))) == n


def test_ray_normalization_and_positivity(pentagon):
    rays = cached_rays(pentagon)
    vals = rays.rays @ pentagon.vertices.T
    assert vals.min() >= -1e-9
    assert np.allclose(vals.max(axis=1), 1.0, atol=1e-9)


def test_no_two_rays_proportional(pentagon_heptagon):
    rays = cached_rays(pentagon_heptagon).rays
    for i in range(len(rays)):
        for j in range(i + 1, len(rays)):
            ni, nj = rays[i] / np.linalg.norm(rays[i]), rays[j] / np.linalg.norm(rays[j])
            assert np.max(np.abs(ni - nj)) > 1e-6


def test_rays_are_extreme(pentagon):
    # no ray is a nonnegative combination of the others
    rays = cached_rays(pentagon).rays
    Q = pentagon.span_basis
    reduced = rays @ Q.T
    for i in range(len(rays)):
        others = np.delete(reduced, i, axis=0)
        prob = lp.LpProblem(np.zeros(len(others)), others.T, reduced[i],
                            tuple(range(len(others))))
        assert not lp.feasible(prob).is_optimal


def test_ray_output_invariant_under_vertex_reorder(pentagon):
    rng = np.random.default_rng(2)
    perm = rng.permutation(pentagon.num_vertices)
    shuffled = StateSpace("shuffled", pentagon.vertices[perm], pentagon.unit_effect)
    a = extreme_indecomposable_effects(pentagon).rays
    b = extreme_indecomposable_effects(shuffled).rays
    sort = lambda arr: sorted(tuple(np.round(r, 9)) for r in arr)
    assert np.allclose(sort(a), sort(b), atol=1e-8)


def test_ray_capacity_cap():
    with pytest.raises(CapacityError):
        extreme_indecomposable_effects(classical_simplex(9))
    assert len(extreme_indecomposable_effects(classical_simplex(9), max_dim=9)) == 9


@pytest.mark.parametrize("name", ["polygon:6", "polygon:9",
                                  "dsum:polygon:5,polygon:7",
                                  "ctensor:polygon:5,2"])
def test_ray_set_generates_the_dual_cone(name):
    # completeness probe: functionals near the interior point (the unit)
    # must decompose into nonnegative combinations of the returned rays
    from gptgame.spaces import parse_catalog

    space = parse_catalog(name)
    rays = cached_rays(space).rays
    Q = space.span_basis
    reduced = rays @ Q.T
    rng = np.random.default_rng(77)
    for _ in range(15):
        g = rng.normal(size=space.ambient_dim)
        margin = space.vertices @ g
        scale = 0.9 / max(1e-12, float(np.max(np.abs(margin))))
        f = space.unit_effect + scale * g       # stays inside the dual cone
        assert (space.vertices @ f).min() >= 0.0
        prob = lp.LpProblem(np.zeros(len(rays)), reduced.T, Q @ f,
                            tuple(range(len(rays))))
        assert lp.feasible(prob).is_optimal, name
