"""Exact graph-homomorphism solvers and verified hardness-reduction constructions."""

from .graph import Graph, VertexColoring
from .solver import ListHomInstance, SolveStats, solve_backtrack, solve_brute, verify

__all__ = ["Graph", "VertexColoring", "ListHomInstance", "SolveStats", "solve_backtrack", "solve_brute", "verify"]
__version__ = "0.1.0"
