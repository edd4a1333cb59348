"""Edge colourings of multigraphs in which every cycle sees many colours.

The main entry points are re-exported here; see the submodules for the
oracles and checks.
"""

from __future__ import annotations

from .density import arboricity, forest_partition, max_density_subgraph, min_indegree_orientation
from .dual import arbstar_exact, colour_cuts_via_packing, tree_packing, verify_cut_colouring
from .errors import BudgetExceeded, GraphParseError, InvariantViolation
from .fraternal import complete_to_depth, conflicts, conflict_degree_bound
from .graphio import parse_graph, read_graph
from .multigraph import Multigraph
from .rainbow import EdgeColouring, arbp_exact, arbp_lower_bound, colour_arbp, verify_colouring
from .shallow import mtrdens, shallow_minor_density
from .treedepth import treedepth_exact

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "EdgeColouring",
    "GraphParseError",
    "InvariantViolation",
    "Multigraph",
    "arboricity",
    "arbp_exact",
    "arbp_lower_bound",
    "arbstar_exact",
    "colour_arbp",
    "colour_cuts_via_packing",
    "complete_to_depth",
    "conflict_degree_bound",
    "conflicts",
    "forest_partition",
    "max_density_subgraph",
    "min_indegree_orientation",
    "mtrdens",
    "parse_graph",
    "read_graph",
    "shallow_minor_density",
    "tree_packing",
    "treedepth_exact",
    "verify_colouring",
    "verify_cut_colouring",
]
