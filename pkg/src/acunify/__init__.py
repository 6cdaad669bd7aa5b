"""Unification and edit distance modulo associativity and commutativity."""
from .ac import ac_equal_ground, ac_unify_do, max_bipartite_matching
from .assoc import (STAR, Star, assoc_equal_ground, assoc_match_bounded_nondo, assoc_unify_do,
                    segment_candidates, str_match_vdc)
from .commut import commut_equal_ground, commut_match, commut_unify, join, test_commut_ident
from .counters import Stats
from .edit import (string_edit_distance, string_edit_distance_do, string_edit_distance_vars,
                   string_unifiable, string_unifier, tree_edit_distance, tree_edit_distance_do_vars,
                   vstring)
from .errors import (ArityError, InvariantViolation, PreconditionError, ResourceLimitError,
                     TermSyntaxError, UndeclaredSymbolError)
from .syntactic import match_syntactic, unify
from .terms import (App, Signature, Substitution, Symbol, Term, TermDag, Theory, Var,
                    apply_substitution, build_dag, canonicalize, format_term, is_do_term, is_ground,
                    parse_term, subterms, variables_of)

__version__ = "0.1.0"

__all__ = [
    "ac_equal_ground", "ac_unify_do", "max_bipartite_matching", "STAR", "Star",
    "assoc_equal_ground", "assoc_match_bounded_nondo", "assoc_unify_do", "segment_candidates",
    "str_match_vdc", "commut_equal_ground", "commut_match", "commut_unify", "join",
    "test_commut_ident", "Stats", "string_edit_distance", "string_edit_distance_do",
    "string_edit_distance_vars", "string_unifiable", "string_unifier", "tree_edit_distance",
    "tree_edit_distance_do_vars", "vstring", "ArityError", "InvariantViolation",
    "PreconditionError", "ResourceLimitError", "TermSyntaxError", "UndeclaredSymbolError",
    "match_syntactic", "unify", "App", "Signature", "Substitution", "Symbol", "Term", "TermDag",
    "Theory", "Var", "apply_substitution", "build_dag", "canonicalize", "format_term",
    "is_do_term", "is_ground", "parse_term", "subterms", "variables_of",
]
