"""Mutual-information extrema over arrangements of a fixed spectrum.

Given a probability spectrum of length m*n, every way of arranging it into
an m x n joint probability matrix yields a classical mutual information;
arrangements differing by row/column permutations (and transpose, when
square) form classes on which that value is constant.  This package
enumerates the classes, finds the extremal ones exactly and by randomized
census, derives a-priori order certificates between classes (majorisation
and an identric-mean transposition calculus), and maps the same quantities
over two-qubit states with maximally mixed marginals.
"""
from .core import (
    EPSILON,
    Marginals,
    ProbMatrix,
    Spectrum,
    arrange,
    binary_entropy,
    cmi,
    entropy_term,
    marginals,
    sample_spectra,
    sample_spectrum,
)
from .classes import (
    ClassTable,
    Honeycomb,
    MatrixClass,
    StandardFormSets,
    canonical_form,
    class_table,
    enumerate_classes,
    grid_display,
    grid_word,
    honeycomb,
    honeycomb_dot,
    involution_xi,
    r23_table,
    standard_form_sets,
    varpi,
    word_to_grid,
    xi_pairs,
)
from .orders import (
    RelationKind,
    RelationVerdict,
    SymbolicSum,
    TranspositionContext,
    cmi_diff_transposition,
    derive_relation,
    identric_mean,
    majorisation_certificate,
    vector_majorisation_certificate,
    matrix_majorises,
    symbolic_sum_compare,
    symbolic_transposition_context,
    titrate_check,
    transposition_context,
    vector_majorises,
)
from .extrema import (
    CensusReport,
    CheckpointMismatchError,
    ExtremaReport,
    brute_force_extrema,
    census,
    verify_theorem_chain,
)
from .qubit2 import (
    DOMAIN_VERTICES,
    Qubit2Informations,
    TVector,
    absolutely_separable,
    bloch_classical,
    gamma_max,
    gamma_min,
    i_max_class,
    i_max_qmi,
    i_min,
    mems_concurrence,
    octahedron_scan,
    qubit2_informations,
    separable_tstate,
    spectrum_from_tvector,
    tvector_from_spectrum,
    verify_total_order_2x2,
)

__version__ = "0.1.0"

__all__ = [
    "EPSILON",
    "Marginals",
    "ProbMatrix",
    "Spectrum",
    "arrange",
    "binary_entropy",
    "cmi",
    "entropy_term",
    "marginals",
    "sample_spectra",
    "sample_spectrum",
    "ClassTable",
    "Honeycomb",
    "MatrixClass",
    "StandardFormSets",
    "canonical_form",
    "class_table",
    "enumerate_classes",
    "grid_display",
    "grid_word",
    "honeycomb",
    "honeycomb_dot",
    "involution_xi",
    "r23_table",
    "standard_form_sets",
    "varpi",
    "word_to_grid",
    "xi_pairs",
    "RelationKind",
    "RelationVerdict",
    "SymbolicSum",
    "TranspositionContext",
    "cmi_diff_transposition",
    "derive_relation",
    "identric_mean",
    "majorisation_certificate",
    "vector_majorisation_certificate",
    "matrix_majorises",
    "symbolic_sum_compare",
    "symbolic_transposition_context",
    "titrate_check",
    "transposition_context",
    "vector_majorises",
    "CensusReport",
    "CheckpointMismatchError",
    "ExtremaReport",
    "brute_force_extrema",
    "census",
    "verify_theorem_chain",
    "DOMAIN_VERTICES",
    "Qubit2Informations",
    "TVector",
    "absolutely_separable",
    "bloch_classical",
    "gamma_max",
    "gamma_min",
    "i_max_class",
    "i_max_qmi",
    "i_min",
    "mems_concurrence",
    "octahedron_scan",
    "qubit2_informations",
    "separable_tstate",
    "spectrum_from_tvector",
    "tvector_from_spectrum",
    "verify_total_order_2x2",
    "__version__",
]
