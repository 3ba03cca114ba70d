"""Finite ball spaces: spherical-completeness hierarchy, constructions and fixed points."""

from .core import (
    BallSpace,
    BallSpaceError,
    BxAssignment,
    GroundSet,
    InputError,
    PreconditionError,
    ResourceLimitError,
    SoundnessAlarm,
    SystemKind,
    balls_within,
    intersection,
    intersection_semilattice,
    is_system,
)
from .hierarchy import (
    FailureWitness,
    Mode,
    PropertyReport,
    Reason,
    check_property,
    classify,
    closure_predicates,
    is_tree_like,
    validate_report,
)
from .constructions import (
    ClosureOp,
    ProductMode,
    Topology,
    associated_topology,
    close,
    product,
    spherical_closure,
    subspace,
    union,
    with_singletons,
    with_top,
)
from .instances import (
    CKInstance,
    MetricInstance,
    OTInstance,
    PosetInstance,
    UltrametricInstance,
    caristi_kirk_balls,
    lattice_check,
    metric_balls,
    oettli_thera_balls,
    poset_balls,
    topology_balls,
    ultrametric_balls,
)
from .fixedpoint import (
    SelfMap,
    TheoremId,
    check_bx_conditions,
    f_closed_family,
    greedy_fixed_point,
    is_f_contracting,
    knaster_tarski_suite,
    verify_theorem,
)

__all__ = [
    "BallSpace",
    "BallSpaceError",
    "BxAssignment",
    "GroundSet",
    "InputError",
    "PreconditionError",
    "ResourceLimitError",
    "SoundnessAlarm",
    "SystemKind",
    "balls_within",
    "intersection",
    "intersection_semilattice",
    "is_system",
    "FailureWitness",
    "Mode",
    "PropertyReport",
    "Reason",
    "check_property",
    "classify",
    "closure_predicates",
    "is_tree_like",
    "validate_report",
    "ClosureOp",
    "ProductMode",
    "Topology",
    "associated_topology",
    "close",
    "product",
    "spherical_closure",
    "subspace",
    "union",
    "with_singletons",
    "with_top",
    "CKInstance",
    "MetricInstance",
    "OTInstance",
    "PosetInstance",
    "UltrametricInstance",
    "caristi_kirk_balls",
    "lattice_check",
    "metric_balls",
    "oettli_thera_balls",
    "poset_balls",
    "topology_balls",
    "ultrametric_balls",
    "SelfMap",
    "TheoremId",
    "check_bx_conditions",
    "f_closed_family",
    "greedy_fixed_point",
    "is_f_contracting",
    "knaster_tarski_suite",
    "verify_theorem",
]

__version__ = "0.1.0"
