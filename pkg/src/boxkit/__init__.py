"""Boxicity: exact search, kernelization, path-decomposition DP, and gadgets."""

from .boxrep import BoxRepresentation, Verdict, brute_force_boxicity, verify
from .graph import Graph, read_edge_list, write_edge_list
from .interval import IntervalModel, recognize_interval
from .kernel import kernelize, solve_fpt
from .pathdp import PathDecomposition, approx_boxicity, dp_feasible, reconstruct, window_pd

__all__ = [
    "BoxRepresentation", "Graph", "IntervalModel", "PathDecomposition", "Verdict",
    "approx_boxicity", "brute_force_boxicity", "dp_feasible", "kernelize", "read_edge_list",
    "recognize_interval", "reconstruct", "solve_fpt", "verify", "window_pd", "write_edge_list",
]
