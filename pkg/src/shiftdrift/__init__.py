"""Drift homomorphisms on automorphism groups of zero-entropy shifts."""

from .asymptotic import (
    AsymptoticPair,
    CalibratedPair,
    act,
    calibrate,
    cocycle_bound,
    drift_cocycle,
    locality_radius,
    make_pair,
)
from .automorphisms import (
    Automorphism,
    BlockMap,
    apply_block_map_point,
    apply_block_map_word,
    apply_to_point,
    compose,
    identity,
    memory_bound,
    power,
    shift_map,
    swap,
    verify_automorphism,
)
from .drift import DriftEstimate, additivity_defect, drift_estimate, theorem_pipeline
from .errors import (
    FamilyIncompleteError,
    InputError,
    InvalidCocycleError,
    NotAPairError,
    NotAsymptoticError,
    RefusedError,
    ResourceError,
    ShiftDriftError,
    SpecError,
)
from .measure import (
    CAFamily,
    Cylinder,
    EmpiricalMeasure,
    WordPair,
    empirical_measure,
    invariance_defect,
    representatives,
    select_window_sequence,
    unique_extension_fraction,
    validate_family,
    word_pairs,
)
from .spaces import (
    OrbitClosure,
    ProductShift,
    ShiftSpace,
    SoficShift,
    contains_word,
    entropy_estimate,
    infinite_shift_guard,
    is_point_in,
    words,
    zero_entropy_certificate,
)
from .symbolic import Alphabet, Point, first_difference, format_point, parse_point, shift_point, window

__version__ = "0.1.0"
