"""Polytope models of general probabilistic theories and the storability game.

The package is organized around a small dense LP kernel (gptgame.lp, with
a compiled pivot core and a pure-python fallback) on top of which sit the
state-space model, dual-cone ray enumeration, discrimination quantities,
degradability verdicts, storability profiles and the penalty-game
optimizer.  The `gptgame` console script fronts the same operations.
"""

from .model import (
    Effect,
    Measurement,
    StateEnsemble,
    StateSpace,
    affine_dimension,
    evaluate,
    maximizer_face,
    validate_space,
)
from .rays import RaySet, extreme_indecomposable_effects
from .spaces import (
    classical_simplex,
    direct_sum,
    parse_catalog,
    polygon,
    tensor_with_classical,
)
from .discrimination import (
    DiscriminationResult,
    decoding_power,
    encoding_power,
    expected_reward,
    expected_reward_measurement,
    expected_reward_states,
    restricted_decoding_power,
)
from .degradability import (
    DegradabilityVerdict,
    StochasticMatrix,
    is_degradable_set,
    is_nondegradable_measurement,
    merge_measurement,
    postprocess_measurement,
    preprocess_states,
)
from .storability import (
    CenterCertificate,
    StorabilityProfile,
    characteristic_numbers,
    has_maximal_decoding_power,
    information_storability,
    is_maximally_decodable,
    minkowski_measure,
    storability_limited,
    uniform_center_certificate,
)
from .game import (
    PERFECT_DISCRIMINATION,
    SUPER_STORABILITY,
    TIE,
    StrategyReport,
    advantage_range,
    advantage_threshold,
    optimal_strategy,
    reward_curve,
    sweep,
)
from .qubit import verify_symmetric_decodable
from .errors import CapacityError, DegeneracyError, GptGameError, InputError, NumericalError

__version__ = "0.1.0"

__all__ = [
    "Effect", "Measurement", "StateEnsemble", "StateSpace",
    "affine_dimension", "evaluate", "maximizer_face", "validate_space",
    "RaySet", "extreme_indecomposable_effects",
    "classical_simplex", "direct_sum", "parse_catalog", "polygon",
    "tensor_with_classical",
    "DiscriminationResult", "decoding_power", "encoding_power",
    "expected_reward", "expected_reward_measurement", "expected_reward_states",
    "restricted_decoding_power",
    "DegradabilityVerdict", "StochasticMatrix", "is_degradable_set",
    "is_nondegradable_measurement", "merge_measurement",
    "postprocess_measurement", "preprocess_states",
    "CenterCertificate", "StorabilityProfile", "characteristic_numbers",
    "has_maximal_decoding_power", "information_storability",
    "is_maximally_decodable", "minkowski_measure", "storability_limited",
    "uniform_center_certificate",
    "StrategyReport", "advantage_range", "advantage_threshold",
    "optimal_strategy", "reward_curve", "sweep",
    "PERFECT_DISCRIMINATION", "SUPER_STORABILITY", "TIE",
    "verify_symmetric_decodable",
    "CapacityError", "DegeneracyError", "GptGameError", "InputError",
    "NumericalError",
]
