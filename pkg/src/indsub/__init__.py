"""Mutually induced connected subgraphs on H-free graphs: exact oracles,
class-specific algorithms, hardness gadgets and a classifier."""

__version__ = "0.1.0"

from .errors import InvalidArgument, ParseError, ResourceLimit
from .graph import Graph, parse_graph, read_graph, write_graph
from .instance import Instance, Solution, normalize, verify_flexible_solution, verify_solution
from .patterns import GENERAL, EllFixed, KFixed, classify, contains_induced, is_h_free, parse_pattern
from .solvers import dispatch, oracle_idcs

__all__ = [
    "InvalidArgument", "ParseError", "ResourceLimit",
    "Graph", "parse_graph", "read_graph", "write_graph",
    "Instance", "Solution", "normalize", "verify_solution", "verify_flexible_solution",
    "GENERAL", "EllFixed", "KFixed", "classify", "contains_induced", "is_h_free", "parse_pattern",
    "dispatch", "oracle_idcs",
]
