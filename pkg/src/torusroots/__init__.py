"""Root systems of integer vector configurations, with a toric-fan front end."""

from .classify import (
    IrreducibleComponent,
    NotASubsystem,
    TypeLabel,
    UnexpectedType,
    classify,
    classify_by_catalog,
    classify_by_criteria,
    classify_subsystem,
    components,
    conjugate_pairs,
)
from .configuration import (
    RankDeficient,
    SignAssignment,
    VectorConfiguration,
    ZeroVector,
    apply_signs,
    new_configuration,
)
from .fan import (
    Fan,
    FanError,
    NonPrimitive,
    NotComplete,
    SingularCone,
    catalog_fan,
    fan_roots,
    new_fan,
    reflection_partition,
    symmetry_report,
)
from .lattice import IntegerMatrix, determinant, hermite_normal_form, solve_diophantine
from .rootsys import (
    Root,
    RootSystem,
    ScaleError,
    compute_roots,
    compute_signed_roots,
    dual,
    oracle_roots,
    verify_closure,
)

__version__ = "0.1.0"
