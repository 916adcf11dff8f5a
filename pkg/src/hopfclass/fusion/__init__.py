"""Character-algebra (fusion) engine."""

from .groups import GrouplikeGroup, abelian_classes, abelian_group
from .search import (
    BUDGET_EXCEEDED,
    FEASIBLE,
    INFEASIBLE,
    UNSUPPORTED,
    SearchResult,
    eliminate,
    propagate,
    residual_contradiction,
    search_consistent_table,
    structured_tables,
)
from .validate import Violation, validate
from .structure import BudgetExceeded
from .table import (
    Character,
    Contradiction,
    FusionTable,
    GroupMismatch,
    NeedsEntries,
    Stabilizer,
    Unassigned,
    build_skeleton,
    orbit_assignment,
    stabilizer_of,
    standard_subalgebra_closure,
)

__all__ = [
    "BUDGET_EXCEEDED", "FEASIBLE", "INFEASIBLE", "UNSUPPORTED", "BudgetExceeded",
    "Character", "Contradiction", "FusionTable", "GroupMismatch", "GrouplikeGroup",
    "NeedsEntries", "SearchResult", "Stabilizer", "Unassigned", "abelian_classes",
    "abelian_group", "build_skeleton", "eliminate", "orbit_assignment", "propagate",
    "residual_contradiction", "search_consistent_table", "stabilizer_of",
    "standard_subalgebra_closure", "structured_tables", "validate", "Violation",
]
