"""Exact horn filling, nerves, and descent over finite data."""

from .config import EngineConfig
from .errors import (
    CapacityError,
    ConsistencyError,
    EngineError,
    InputError,
    ValidationError,
)
from .sset import (
    LevelModel,
    SimplexRef,
    SimplicialMap,
    SimplicialSet,
    enumerate_maps,
    is_isomorphic,
    normalize,
    product,
    standard_simplex,
    subcomplex_of_simplex,
)
from .cat import (
    Finite2Category,
    FiniteCategory,
    Functor,
    categories_isomorphic,
    duskin_nerve,
    enumerate_functors,
    fundamental_category,
    homotopy_category,
    mapping_space,
    nerve,
    one_object_two_group,
    split_two_group,
    two_category_from_category,
    walking_invertible_two_cell,
    walking_two_cell,
)
from .kan import KanReport, classify, horn_fillers, horn_maps, is_isomorphism_edge
from .groupoid import (
    FiniteGroup,
    FiniteGroupoid,
    FinMap,
    GroupAction,
    SimplicialObject,
    action_bar_object,
    cech_nerve,
    check_torsor,
    cyclic_group,
    direct_product,
    equivalence_check,
    groupoid_cardinality,
    groupoid_of_groups,
    groups_isomorphic,
    is_groupoid_object,
    quotient_groupoid,
    skeleton,
    stabilizer,
    symmetric_group,
    torsor_comparison,
    trivial_group,
)
from .descent import (
    Cover,
    FiniteSpace,
    cech_descent_skeleton,
    cech_stack_report,
    check_sheaf_opens,
    check_sheaf_sets,
    check_stack_groupoids,
    constant_bg_presheaf,
    descent_groupoid,
    refinement_invariance,
    torsor_presheaf,
    truncation_agreement_sets,
)

__all__ = [
    "EngineConfig",
    "EngineError",
    "InputError",
    "ValidationError",
    "CapacityError",
    "ConsistencyError",
    "SimplexRef",
    "SimplicialSet",
    "SimplicialMap",
    "LevelModel",
    "standard_simplex",
    "subcomplex_of_simplex",
    "normalize",
    "enumerate_maps",
    "is_isomorphic",
    "product",
    "FiniteCategory",
    "Finite2Category",
    "Functor",
    "enumerate_functors",
    "categories_isomorphic",
    "nerve",
    "duskin_nerve",
    "fundamental_category",
    "homotopy_category",
    "mapping_space",
    "two_category_from_category",
    "one_object_two_group",
    "split_two_group",
    "walking_two_cell",
    "walking_invertible_two_cell",
    "KanReport",
    "classify",
    "horn_maps",
    "horn_fillers",
    "is_isomorphism_edge",
    "FinMap",
    "FiniteGroup",
    "FiniteGroupoid",
    "GroupAction",
    "SimplicialObject",
    "trivial_group",
    "cyclic_group",
    "symmetric_group",
    "direct_product",
    "groups_isomorphic",
    "stabilizer",
    "quotient_groupoid",
    "groupoid_of_groups",
    "skeleton",
    "equivalence_check",
    "groupoid_cardinality",
    "cech_nerve",
    "action_bar_object",
    "is_groupoid_object",
    "check_torsor",
    "torsor_comparison",
    "Cover",
    "FiniteSpace",
    "check_sheaf_sets",
    "check_sheaf_opens",
    "truncation_agreement_sets",
    "torsor_presheaf",
    "constant_bg_presheaf",
    "descent_groupoid",
    "check_stack_groupoids",
    "cech_descent_skeleton",
    "cech_stack_report",
    "refinement_invariance",
]

__version__ = "0.1.0"
