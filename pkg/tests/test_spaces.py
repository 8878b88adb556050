"""Catalog constructions, closed-form effects, composites, catalog parsing."""

import math

import numpy as np
import pytest

from gptgame.errors import InputError
from gptgame.model import is_valid_effect, validate_space
from gptgame.rays import cached_rays
from gptgame.sampling import random_affine_image
from gptgame.spaces import (
    classical_simplex,
    direct_sum,
    parse_catalog,
    polygon,
    polygon_complement_effects,
    polygon_extreme_effects,
    tensor_with_classical,
)
from gptgame.storability import information_storability


def test_classical_examples():
    cl2 = classical_simplex(2)
    assert cl2.num_vertices == 2
    assert information_storability(cl2).value == pytest.approx(2.0, abs=1e-12)
    assert classical_simplex(1).num_vertices == 1
    assert classical_simplex(4).num_vertices == 4
    with pytest.raises(InputError):
        classical_simplex(0)


def test_polygon_radius():
    assert polygon(4).vertices[0] @ polygon(4).vertices[0] == pytest.approx(
        2 ** 0.5 + 1.0, abs=1e-12
    )  # r_4^2 + 1 with r_4 = 2**(1/4)
    r4 = math.sqrt(1.0 / math.cos(math.pi / 4))
    assert r4 == pytest.approx(2 ** 0.25, abs=1e-12)


def test_polygon_identities():
    with pytest.raises(InputError):
        polygon(2)
    P5 = polygon(5)
    assert P5.num_vertices == 5
    assert np.allclose(P5.vertices @ P5.unit_effect, 1.0)
    planar_radius = math.sqrt(1.0 / math.cos(math.pi / 5))
    assert np.allclose(np.linalg.norm(P5.vertices[:, :2], axis=1), planar_radius)
    # triangle is a relabeled three-outcome classical system
    assert information_storability(polygon(3)).value == pytest.approx(3.0, abs=1e-9)


@pytest.mark.parametrize("n", [4, 5, 6, 7, 8, 9, 10, 11, 12])
def test_polygon_closed_form_effects_match_rays(n):
    space = polygon(n)
    found = sorted(tuple(np.round(r, 9)) for r in cached_rays(space).rays)
    expect = sorted(tuple(np.round(e, 9)) for e in polygon_extreme_effects(n))
    assert np.allclose(found, expect, atol=1e-8)


@pytest.mark.parametrize("n", [5, 7, 9])
def test_polygon_complements_valid_but_not_rays(n):
    space = polygon(n)
    rays = cached_rays(space).rays
    center = np.array([0.0, 0.0, 1.0])
    r2 = 1.0 / math.cos(math.pi / n)
    for f in polygon_complement_effects(n):
        assert is_valid_effect(space, f)
        scaled = f / np.max(space.vertices @ f)
        assert all(np.max(np.abs(scaled - r)) > 1e-6 for r in rays)
        # complements sit on their own plane through the center
        assert f @ center == pytest.approx(r2 / (1.0 + r2), abs=1e-12)
    with pytest.raises(InputError):
        polygon_complement_effects(4)


def test_direct_sum_of_simplices_is_simplex():
    s = direct_sum(classical_simplex(2), classical_simplex(3))
    assert s.num_vertices == 5
    assert information_storability(s).value == pytest.approx(5.0, abs=1e-9)


def test_direct_sum_rays_are_block_embedded(pentagon_heptagon):
    # the dual cone of a block sum is the product of the block cones
    left = polygon_extreme_effects(5)
    right = polygon_extreme_effects(7)
    expect = [np.concatenate([g, np.zeros(3)]) for g in left]
    expect += [np.concatenate([np.zeros(3), g]) for g in right]
    found = cached_rays(pentagon_heptagon).rays
    sort = lambda arr: sorted(tuple(np.round(r, 9)) for r in arr)
    assert np.allclose(sort(found), sort(expect), atol=1e-8)


def test_direct_sum_with_point_raises_dimension(pentagon):
    plus_one = direct_sum(pentagon, classical_simplex(1))
    from gptgame.storability import characteristic_numbers

    prof = characteristic_numbers(plus_one)
    base = characteristic_numbers(pentagon)
    assert prof.d == base.d + 1


def test_tensor_with_classical_examples(pentagon):
    assert tensor_with_classical(classical_simplex(2), 3).num_vertices == 6
    t = tensor_with_classical(classical_simplex(2), 3)
    assert information_storability(t).value == pytest.approx(6.0, abs=1e-9)
    # identity classical factor keeps the space unchanged up to relabeling
    same = tensor_with_classical(pentagon, 1)
    assert same.num_vertices == pentagon.num_vertices
    assert np.allclose(same.vertices, pentagon.vertices)


def test_storability_additivity(pentagon):
    pairs = [
        (pentagon, polygon(7)),
        (classical_simplex(2), polygon(4)),
        (polygon(3), polygon(6)),
    ]
    for a, b in pairs:
        left = information_storability(a).value
        right = information_storability(b).value
        total = information_storability(direct_sum(a, b)).value
        assert total == pytest.approx(left + right, abs=1e-9), (a.name, b.name)
    for space, d in ((pentagon, 2), (polygon(7), 2), (classical_simplex(2), 3)):
        base = information_storability(space).value
        scaled = information_storability(tensor_with_classical(space, d)).value
        assert scaled == pytest.approx(d * base, abs=1e-9), (space.name, d)


def test_catalog_spaces_validate():
    names = ["classical:1", "classical:5", "polygon:3", "polygon:8",
             "dsum:polygon:5,polygon:7", "ctensor:polygon:5,2",
             "dsum:classical:2,polygon:4"]
    for name in names:
        space = parse_catalog(name)
        assert space.name == name
        assert validate_space(space).valid


def test_catalog_parse_errors():
    for bad in ["polygon", "polygon:x", "classical:", "dsum:polygon:5",
                "ctensor:polygon:5", "polygon:5garbage", "nope:3"]:
        with pytest.raises(InputError):
            parse_catalog(bad)


def test_affine_reparametrization_invariance(pentagon):
    rng = np.random.default_rng(42)
    base = information_storability(pentagon).value
    for _ in range(5):
        image = random_affine_image(rng, pentagon)
        assert validate_space(image).valid
        assert information_storability(image).value == pytest.approx(base, abs=1e-7)


def test_direct_sum_block_unit(pentagon, cl2):
    s = direct_sum(pentagon, cl2)
    assert s.ambient_dim == 5
    assert np.allclose(s.vertices @ s.unit_effect, 1.0)
