"""Good edge-labelings of graphs: verification, exact solvers, kernels and gadgets."""

from .brute import BudgetExhausted, SearchBudget, brute_c_gel, brute_gel, brute_min_gel
from .dp import dp_c_gel, min_gel_via_iteration
from .dp_orient import dp_orientation_gel
from .graph import Digraph, Graph, GraphFormatError, parse_graph, format_graph
from .kernel import kernelize, lift_labeling, reduce_graph
from .labeling import EdgeLabeling, GoodnessVerdict, is_good_labeling
from .sfm import solve_sfm
from .td import build_td, make_nice
from .upp import find_upp_orientation, is_upp

__version__ = "0.1.0"
