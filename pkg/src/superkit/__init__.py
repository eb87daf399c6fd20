"""Exact linear algebra, derivations and triple homomorphisms for finite-dimensional Lie superalgebras."""

__version__ = "0.1.0"

from .linalg import Field, Matrix, Scalar, Subspace, image, kernel, rref, solve
from .algebra import (
    Element,
    LieSuperalgebra,
    LinearMap,
    ValidationReport,
    ad,
    bracket,
    center,
    centralizer,
    derived_subalgebra,
    direct_sum,
    enveloping_closure,
    induced_subalgebra,
    is_ideal,
    is_perfect,
    supercommutator,
    validate_structure,
)
from .catalog import SuperMatrix, builtin, from_supermatrices
from .checks import Check
from .derivations import (
    GradedEndSpace,
    delta_of_triple_derivation,
    derivation_space,
    express_as_brackets,
    inner_derivation_space,
    is_derivation,
    is_triple_derivation,
    lemma_checks,
    triple_derivation_space,
    verify_theorem_one,
)
from .decompose import DecompositionResult, centroid, decompose_indecomposable
from .triple_hom import (
    MapKind,
    TripleHomReport,
    Verdict,
    classify_linear_map,
    decompose_triple_hom,
    delta_f,
    enveloping_of_image,
    is_triple_hom,
    split_m_plus_minus,
)
from .formats import load_algebra, load_map, save_algebra, save_map
from .errors import SuperkitError

__all__ = [
    "Check",
    "DecompositionResult",
    "Element",
    "Field",
    "GradedEndSpace",
    "LieSuperalgebra",
    "LinearMap",
    "MapKind",
    "Matrix",
    "Scalar",
    "Subspace",
    "SuperMatrix",
    "SuperkitError",
    "TripleHomReport",
    "ValidationReport",
    "Verdict",
    "ad",
    "bracket",
    "builtin",
    "center",
    "centralizer",
    "centroid",
    "classify_linear_map",
    "decompose_indecomposable",
    "decompose_triple_hom",
    "delta_f",
    "delta_of_triple_derivation",
    "derivation_space",
    "derived_subalgebra",
    "direct_sum",
    "enveloping_closure",
    "enveloping_of_image",
    "express_as_brackets",
    "from_supermatrices",
    "image",
    "induced_subalgebra",
    "inner_derivation_space",
    "is_derivation",
    "is_ideal",
    "is_perfect",
    "is_triple_derivation",
    "is_triple_hom",
    "kernel",
    "lemma_checks",
    "load_algebra",
    "load_map",
    "rref",
    "save_algebra",
    "save_map",
    "solve",
    "split_m_plus_minus",
    "supercommutator",
    "triple_derivation_space",
    "validate_structure",
    "verify_theorem_one",
]
