"""Computational workbench for F_q-linear sets in PG(1, q^n) and PG(2, q^n)."""

from .fields import FieldCtx, Subspace, field_for
from .linearized import LinPoly
from .linset import LinearSetSpec, from_graph, linear_set, points

__all__ = ["FieldCtx", "LinPoly", "LinearSetSpec", "Subspace", "field_for", "from_graph", "linear_set", "points"]
