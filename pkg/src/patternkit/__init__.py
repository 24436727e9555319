"""Frequent pattern mining and formal concept analysis over binary contexts."""

from .context import BinaryContext, closure, extent, intent, support
from .ingest import (
    DiscretizationSpec,
    NumericTable,
    complement,
    discretize,
    parse_matrix,
    parse_numeric_table,
    parse_transactions,
    random_context,
    serialize,
    transpose,
)
from .itemsets import (
    EquivalenceClass,
    ItemsetFamily,
    SupportedItemset,
    equivalence_classes,
    mine_closed,
    mine_frequent,
    mine_generators,
    mine_minimal_rare,
)
from .lattice import FormalConcept, LatticeDiagram, build_concepts, export_dot, hasse
from .postprocess import RuleFilter, colorize, filter_rules, top_k
from .rules import (
    AssociationRule,
    RuleMeasures,
    compute_measures,
    mine_all_rules,
    mine_dg_basis,
    mine_mnr_rules,
    mine_rare_rules,
)

__version__ = "0.1.0"
