"""Exact Kirchhoff-type invariants of linear crossed polyomino chains."""

from .chain_graphs import ChainSpec, Graph, build_chain, build_subchain, end_degree_sum, enumerate_subchains
from .closed_forms import FormulaVariant
from .invariant_oracles import InvariantReport, full_report

__all__ = [
    "ChainSpec",
    "FormulaVariant",
    "Graph",
    "InvariantReport",
    "build_chain",
    "build_subchain",
    "end_degree_sum",
    "enumerate_subchains",
    "full_report",
]

__version__ = "0.1.0"
