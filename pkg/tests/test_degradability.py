"""Degradability verdicts, processing maps, and their worked examples."""

import numpy as np
import pytest

from gptgame.degradability import (
    PRECHECK_AFFINE_BOUND,
    PRECHECK_NON_EXTREME,
    StochasticMatrix,
    is_degradable_set,
    is_nondegradable_measurement,
    merge_measurement,
    postprocess_measurement,
    preprocess_states,
)
from gptgame.discrimination import decoding_power, encoding_power
from gptgame.errors import CapacityError, InputError
from gptgame.model import Measurement, StateEnsemble
from gptgame.spaces import polygon_extreme_effects

from _oracles import brute_force_merge_degradable


def test_midpoint_makes_set_degradable(cl2):
    ens = StateEnsemble.from_mixtures(cl2, [[1, 0], [0, 1], [0.5, 0.5]])
    verdict = is_degradable_set(cl2, ens)
    assert verdict.degradable
    assert verdict.precheck_reason == PRECHECK_NON_EXTREME
    assert verdict.witness == (0, 1)


def test_simplex_mixture_set_nondegradable(cl4):
    ens = StateEnsemble.from_mixtures(cl4, [
        [0.50, 0.25, 0.25, 0.00],
        [0.25, 0.50, 0.00, 0.25],
        [0.25, 0.00, 0.50, 0.25],
        [0.00, 0.25, 0.25, 0.50],
    ])
    # the four states are affinely dependent (first + last = middle two) yet
    # nondegradable, so affine dependence alone cannot decide degradability
    assert np.allclose(ens.states[0] + ens.states[3], ens.states[1] + ens.states[2])
    assert np.linalg.matrix_rank(ens.states[1:] - ens.states[0]) == 2
    assert np.allclose(ens.states.max(axis=0), 0.5)
    verdict = is_degradable_set(cl4, ens)
    assert not verdict.degradable
    assert verdict.precheck_reason is None
    assert verdict.margin == pytest.approx(0.25, abs=1e-7)


def test_affine_bound_precheck(pentagon):
    ens = StateEnsemble.from_vertices(pentagon, [0, 1, 2, 3])
    verdict = is_degradable_set(pentagon, ens)
    assert verdict.degradable
    assert verdict.precheck_reason == PRECHECK_AFFINE_BOUND


def test_subset_search_finds_minimal_witness(square):
    # three square vertices: no precheck applies, yet any adjacent pair is
    # already perfectly distinguishable, matching the full set's power of 2
    ens = StateEnsemble.from_vertices(square, [0, 1, 2])
    verdict = is_degradable_set(square, ens)
    assert verdict.degradable
    assert verdict.precheck_reason is None
    assert verdict.witness is not None and len(verdict.witness) == 2
    base = encoding_power(square, ens).value
    wit = encoding_power(square, ens.subset(verdict.witness)).value
    assert base == pytest.approx(2.0, abs=1e-9)
    assert wit == pytest.approx(base, abs=1e-7)
    assert abs(verdict.margin) <= 1e-7


def test_single_state_nondegradable(cl2):
    ens = StateEnsemble.from_vertices(cl2, [0])
    assert not is_degradable_set(cl2, ens).degradable


def test_set_size_cap(cl2):
    reps = StateEnsemble.from_mixtures(
        cl2, [[1 - k / 100.0, k / 100.0] for k in range(11)]
    )
    with pytest.raises(CapacityError):
        is_degradable_set(cl2, reps)


def test_merge_measurement(cl3):
    basis = Measurement(np.eye(3))
    everything = merge_measurement(basis, [(0, 1, 2)])
    assert np.allclose(everything.effects, cl3.unit_effect[None, :])
    identity = merge_measurement(basis, [(0,), (1,), (2,)])
    assert np.allclose(identity.effects, basis.effects)
    merged = merge_measurement(basis, [(0, 1), (2,)])
    assert decoding_power(cl3, merged).value == pytest.approx(2.0, abs=1e-12)
    assert decoding_power(cl3, basis).value == pytest.approx(3.0, abs=1e-12)
    with pytest.raises(InputError):
        merge_measurement(basis, [(0, 1), (1, 2)])
    with pytest.raises(InputError):
        merge_measurement(basis, [(0, 1)])


def test_split_unit_measurement_degradable(cl3):
    half = Measurement(np.vstack([cl3.unit_effect / 2.0, cl3.unit_effect / 2.0]))
    res = is_nondegradable_measurement(cl3, half)
    assert not res.nondegradable
    assert res.overlapping_pair == (0, 1)


def test_basis_measurement_nondegradable(cl4):
    res = is_nondegradable_measurement(cl4, Measurement(np.eye(4)))
    assert res.nondegradable
    assert all(len(f) == 1 for f in res.maximizer_faces)


def test_square_pair_measurement_nondegradable(square):
    e = polygon_extreme_effects(4)
    meas = Measurement(np.array([(e[0] + e[1]) / 2.0, (e[2] + e[3]) / 2.0]))
    res = is_nondegradable_measurement(square, meas)
    assert res.nondegradable
    assert not brute_force_merge_degradable(square, meas)
    # merging everything collapses the decoding power from 2 to 1
    merged = merge_measurement(meas, [(0, 1)])
    assert decoding_power(square, merged).value == pytest.approx(1.0, abs=1e-9)


def test_preprocess_identity_and_selection(cl3):
    ens = StateEnsemble.from_vertices(cl3, [0, 1, 2])
    same = preprocess_states(ens, StochasticMatrix.identity(3))
    assert np.allclose(same.states, ens.states)
    select = preprocess_states(ens, StochasticMatrix(np.array([
        [0.0, 1.0, 0.0],
        [1.0, 0.0, 0.0],
    ])))
    assert np.allclose(select.states, ens.states[[1, 0]])
    uniform = preprocess_states(
        StateEnsemble.from_vertices(classical2(), [0, 1]),
        StochasticMatrix(np.array([[0.5, 0.5]])),
    )
    assert np.allclose(uniform.states, [[0.5, 0.5]])


def classical2():
    from gptgame.spaces import classical_simplex

    return classical_simplex(2)


def test_preprocess_shape_mismatch(cl3):
    ens = StateEnsemble.from_vertices(cl3, [0, 1])
    with pytest.raises(InputError):
        preprocess_states(ens, StochasticMatrix.identity(3))


def test_postprocess_examples(cl3):
    basis = Measurement(np.eye(3))
    same = postprocess_measurement(basis, StochasticMatrix.identity(3))
    assert np.allclose(same.effects, basis.effects)
    collapse = postprocess_measurement(basis, StochasticMatrix(np.ones((3, 1))))
    assert np.allclose(collapse.effects, cl3.unit_effect[None, :])
    # 0/1 postprocessing equals outcome merging
    nu = StochasticMatrix(np.array([[1.0, 0.0], [1.0, 0.0], [0.0, 1.0]]))
    merged = postprocess_measurement(basis, nu)
    direct = merge_measurement(basis, [(0, 1), (2,)])
    assert np.allclose(merged.effects, direct.effects)
    with pytest.raises(InputError):
        postprocess_measurement(basis, StochasticMatrix.identity(2))


def test_stochastic_matrix_validation():
    with pytest.raises(InputError):
        StochasticMatrix(np.array([[0.5, 0.4]]))
    with pytest.raises(InputError):
        StochasticMatrix(np.array([[1.5, -0.5]]))
