"""Visual decompositions of finitely generated Coxeter groups."""

from .decompose import (
    EndsClass,
    EndsVerdict,
    VirtuallyFree,
    ends,
    is_virtually_free,
    maximal_fa,
    two_ended_witness,
    visual_dunwoody,
    vs_candidates,
)
from .finite_type import FinitenessVerdict, FiniteTypeLabel, classify_irreducible, is_finite
from .gog import (
    GogEdge,
    GogStructureError,
    GogVertex,
    ValidationReport,
    VisualGoG,
    check_edge_separation,
    clique_vertex_cover,
    collapse_edges,
    emit_gog,
    export_dot_gog,
    parse_gog,
    reduce,
    split_over,
    split_vertex,
    validate_visual,
)
from .refine import (
    AbstractSplitting,
    RefinementOutcome,
    SplitEdge,
    SplitStructureError,
    SplitVertex,
    emit_split,
    parse_split,
    refine_to_visual,
    splitting_from_gog,
)
from .system import (
    CoxeterSystem,
    ParseError,
    diagram_components,
    emit_system,
    export_dot,
    find_induced_circuit,
    induced_subsystem,
    is_chordal,
    is_separating,
    maximal_cliques,
    minimal_separators,
    parse_system,
    separates_within,
)
from .words import (
    BudgetError,
    CayleyBall,
    ConjugateSpecial,
    CosetDescriptor,
    IntersectionResult,
    cayley_ball,
    coset_min_rep,
    double_coset_min_rep,
    format_word,
    intersect_special_conjugates,
    inverse,
    is_geodesic,
    mult,
    normal_form,
    parse_word,
    support,
    words_equal,
)

__version__ = "0.1.0"

__all__ = [
    "AbstractSplitting",
    "BudgetError",
    "CayleyBall",
    "ConjugateSpecial",
    "CosetDescriptor",
    "CoxeterSystem",
    "EndsClass",
    "EndsVerdict",
    "FinitenessVerdict",
    "FiniteTypeLabel",
    "GogEdge",
    "GogStructureError",
    "GogVertex",
    "IntersectionResult",
    "ParseError",
    "RefinementOutcome",
    "SplitEdge",
    "SplitStructureError",
    "SplitVertex",
    "ValidationReport",
    "VirtuallyFree",
    "VisualGoG",
    "cayley_ball",
    "check_edge_separation",
    "classify_irreducible",
    "clique_vertex_cover",
    "collapse_edges",
    "coset_min_rep",
    "diagram_components",
    "double_coset_min_rep",
    "emit_gog",
    "emit_split",
    "emit_system",
    "ends",
    "export_dot",
    "export_dot_gog",
    "find_induced_circuit",
    "format_word",
    "induced_subsystem",
    "intersect_special_conjugates",
    "inverse",
    "is_chordal",
    "is_finite",
    "is_geodesic",
    "is_separating",
    "is_virtually_free",
    "maximal_cliques",
    "maximal_fa",
    "minimal_separators",
    "mult",
    "normal_form",
    "parse_gog",
    "parse_split",
    "parse_system",
    "parse_word",
    "reduce",
    "refine_to_visual",
    "separates_within",
    "split_over",
    "split_vertex",
    "splitting_from_gog",
    "support",
    "two_ended_witness",
    "validate_visual",
    "visual_dunwoody",
    "vs_candidates",
    "words_equal",
]
