"""Exact GKM computations for Kac-Moody flag varieties.

Equivariant cohomology and K-theory rings are computed from moment graphs:
classes are tuples of point-ring elements satisfying edge divisibility
conditions, and canonical module generators are lifted level by level.
"""
from ._backend import BACKEND
from .coxeter import CartanMatrix, enumerate_cosets, inversions
from .graph import GkmGraph, GraphError, build_graph, build_graph_explicit, export, validate
from .poly import Laurent, Poly
from .ring import (
    GkmClass,
    LiftError,
    SpanError,
    canonical_generators_H,
    expand_in_basis,
    is_member,
    lift_generators_to_K,
    multiply,
    specialize_class,
)

__version__ = "0.1.0"
