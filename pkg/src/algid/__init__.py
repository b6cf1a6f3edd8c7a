"""Algebraic unique identifiers over the 4x4 unitriangular group.

Identifiers are group elements: combining two objects multiplies their
identifiers, so the identity of a whole pipeline is computable before the
pipeline runs.  See README.md for a tour.
"""

from ._backend import BACKEND_NAME, COMPILED
from .analysis import (
    CensusResult,
    GroupFamilySpec,
    RobustnessReport,
    ambiguity_probability,
    birthday_bound,
    candidate_table,
    commuting_probability_ut,
    compatibility_gap,
    empirical_census,
    expected_expressions,
    pair_collision_probability,
    robustness_report,
)
from .codec import (
    ALPHABET,
    decode,
    encode,
    import_legacy,
    key_element,
    removal_element,
    reserved_root,
    reserved_slot,
)
from .core import (
    ElementClass,
    UtElement,
    from_coords,
    from_rank,
    identity,
    product,
    random_element,
)
from .errors import (
    AlgidError,
    BadPosition,
    ContentConflict,
    InvalidKey,
    NoDigestSupport,
    NonCanonical,
    NotAFunction,
    NotFound,
    PlanError,
    RankOutOfRange,
    RefusedSize,
    RemovalsDisabled,
    ThetaExhausted,
    VersionMismatch,
)
from .generate import ContentHash, content_hash, function_element, value_element
from .params import DEFAULT_VERSION, OFFICIAL_VERSIONS, GroupParams, test_group, version
from .plan import Plan, PlanReport, evaluate_plan, load_plan, parse_plan
from .store import FileStore
from .workflow import (
    CommutingSet,
    Composite,
    Role,
    SetConcat,
    SetExpression,
    SetLeaf,
    SetUnion,
    Single,
    Slot,
    TupleState,
    adaptor,
    compose,
    map_entry,
    nested_entry,
    set_of,
    verify_three_way,
)

__version__ = "0.1.0"
