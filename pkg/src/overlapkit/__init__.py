"""Overlap and grouping functions built from additive generator pairs."""
from .analysis import (
    DecompositionResult,
    HypothesisUnmet,
    NotStrict,
    ReconstructionFailed,
    build_tnorm_by_pseudo_inverse,
    check_identity_composition,
    decompose_distortion,
    dual_grouping_suite,
    dualize_overlap,
    representability_verdict,
    tnorm_equivalence_report,
)
from .axioms import (
    AxiomResult,
    Grid,
    VerificationReport,
    Witness,
    check_archimedean_diagonal,
    check_associativity,
    check_grouping_axioms,
    check_necessary_conditions,
    check_neutral,
    check_overlap_axioms,
    check_pair_conditions,
    check_tconorm,
    check_tnorm,
)
from .constructors import (
    BivariateOp,
    DualGeneratorPair,
    GeneratorPair,
    UnknownCatalogEntry,
    build,
    build_distortion,
    build_grouping_additive,
    build_overlap_additive,
    build_overlap_multiplicative,
    catalog,
    catalog_names,
    dual_pair,
    overlap_pair,
    random_pair,
)
from .extmath import INF, NonMonotoneDetected, UnaryMonotone, ext_add, probe_strictness, pseudo_inverse
from .specfile import SpecError
