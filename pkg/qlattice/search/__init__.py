"""
Search and verification.

Builds compatibility graphs over the subspace lattice, finds maximum cliques
in them, and runs the brute-force lemma verifiers.

Available implementations:
- BranchAndBoundSolver: Colouring-bound branch and bound over bitsets, optionally threaded
- PowersetSolver: Exhaustive subset walk for graphs of at most 20 vertices
"""

from .extremal import (
    audit_certificate,
    conjecture_scan,
    constraint_from_name,
    max_s_union,
    max_s_union_antichain,
    max_t_intersecting,
    optimal_antichains,
)
from .graph import VERTEX_BUDGET, CompatibilityGraph
from .solvers import POWERSET_EXPONENT, BranchAndBoundSolver, PowersetSolver, SearchConfig
from .verifiers import (
    EXHAUSTIVE_LAYER_BUDGET,
    verify_cross_lemma,
    verify_disjoint_count,
    verify_layer_inequality,
    verify_shade_lemma,
    verify_shadow_theorem,
)

__all__ = [
    "BranchAndBoundSolver",
    "CompatibilityGraph",
    "EXHAUSTIVE_LAYER_BUDGET",
    "POWERSET_EXPONENT",
    "PowersetSolver",
    "SearchConfig",
    "VERTEX_BUDGET",
    "audit_certificate",
    "conjecture_scan",
    "constraint_from_name",
    "max_s_union",
    "max_s_union_antichain",
    "max_t_intersecting",
    "optimal_antichains",
    "verify_cross_lemma",
    "verify_disjoint_count",
    "verify_layer_inequality",
    "verify_shade_lemma",
    "verify_shadow_theorem",
]
