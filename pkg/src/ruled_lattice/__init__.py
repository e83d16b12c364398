"""Integer intersection lattices of blown-up rational and ruled surfaces,
the reflection groups acting on them, and the bookkeeping those groups
support: fundamental-domain reduction with word certificates, orbit
membership of exceptional classes, Lagrangian sphere systems, adjunction
style integer constraints, and descriptive models of diffeotopy groups."""

from .catalog import (
    CatalogError,
    GroupDescription,
    SMALL_CASE_LABELS,
    decompose_O12,
    describe_diffeotopy,
    evaluate_o12_word,
    o12_generators,
    o12_model,
)
from .coxeter import (
    CoxeterError,
    CoxeterSystem,
    CrystallographicStructure,
    INF,
    crystallographic_lattice_invariance,
    from_name,
    is_finite_type,
    standard_crystal,
    verify_crystallographic,
)
from .lattice import (
    HomologyClass,
    Kind,
    LatticeAutomorphism,
    LatticeError,
    ManifoldModel,
    ModelMismatchError,
    UnsupportedReflectionError,
    anticanonical_class,
    exceptional_class,
    fiber_class,
    gram_matrix,
    line_class,
    pairing,
    positive_cone_contains,
    rational_model,
    reflection_along,
    ruled_model,
    section_class,
)
from .sw import (
    SWError,
    SphereCandidate,
    Verdict,
    certify_sphere_class,
    dichotomy_search,
    dolgachev_candidate,
    extremal_sequence,
    sw_inequality_holds,
)
from .weyl import (
    ClassReduction,
    GeneratorSet,
    GroupWord,
    InternalConsistencyError,
    LagrangianSystem,
    OutsideConeError,
    NotReducedError,
    PeriodReduction,
    PeriodVector,
    expected_coxeter_system,
    generator_set,
    lagrangian_system,
    maximal_system_membership,
    orbit,
    rational_periods,
    reduce_class,
    reduce_periods,
    ruled_periods,
    verify_presentation,
)

__version__ = "0.1.0"

__all__ = [
    "CatalogError",
    "GroupDescription",
    "SMALL_CASE_LABELS",
    "decompose_O12",
    "describe_diffeotopy",
    "evaluate_o12_word",
    "o12_generators",
    "o12_model",
    "CoxeterError",
    "CoxeterSystem",
    "CrystallographicStructure",
    "INF",
    "crystallographic_lattice_invariance",
    "from_name",
    "is_finite_type",
    "standard_crystal",
    "verify_crystallographic",
    "HomologyClass",
    "Kind",
    "LatticeAutomorphism",
    "LatticeError",
    "ManifoldModel",
    "ModelMismatchError",
    "UnsupportedReflectionError",
    "anticanonical_class",
    "exceptional_class",
    "fiber_class",
    "gram_matrix",
    "line_class",
    "pairing",
    "positive_cone_contains",
    "rational_model",
    "reflection_along",
    "ruled_model",
    "section_class",
    "SWError",
    "SphereCandidate",
    "Verdict",
    "certify_sphere_class",
    "dichotomy_search",
    "dolgachev_candidate",
    "extremal_sequence",
    "sw_inequality_holds",
    "ClassReduction",
    "GeneratorSet",
    "GroupWord",
    "InternalConsistencyError",
    "LagrangianSystem",
    "OutsideConeError",
    "NotReducedError",
    "PeriodReduction",
    "PeriodVector",
    "expected_coxeter_system",
    "generator_set",
    "lagrangian_system",
    "maximal_system_membership",
    "orbit",
    "rational_periods",
    "reduce_class",
    "reduce_periods",
    "ruled_periods",
    "verify_presentation",
    "__version__",
]
