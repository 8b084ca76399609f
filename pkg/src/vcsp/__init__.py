"""Exact and approximate solvers for general-valued CSPs.

An instance pairs a sparse non-negative left-hand structure (the weighted
constraint network) with a total right-hand structure (the cost tables) over
a shared signature; solvers optimise the weighted sum of table lookups over
all assignments between the two domains.
"""

from .errors import (BudgetExceeded, InfeasibleInstance, InstanceFormatError,
                     InternalCheckFailed)
from .rational import (MINUS_INF, ONE, PLUS_INF, ZERO, ExtRat, Q, exp_bounds,
                       format_value, parse_value, rat)
from .structures import (Graph, Signature, ValuedStructure, classify_max_sol,
                         classify_min_sol, disjoint_union, gaifman, product,
                         rel_structure, rescale, restrict, value)
from .jsonio import (dumps_instance, load_instance, loads_instance,
                     parse_instance, save_instance)
from .treewidth import NiceTD, build_tree_decomposition, heuristic_width
from .exact import solve_naive, td_solve

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
