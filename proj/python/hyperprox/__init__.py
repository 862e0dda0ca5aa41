"""Finite proximity spaces and their hyperspace topologies."""

from ._hyperprox import Error, Model, compare, run_cli, search

__all__ = ["Error", "Model", "compare", "run_cli", "search"]
