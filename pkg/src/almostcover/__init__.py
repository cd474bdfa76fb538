"""Exact solvers and verifiers for almost k-covers of the n-cube."""

__version__ = "0.1.0"
