"""Commuting graphs of the special 2-groups H_m and their exact diameters."""

from .exceptions import CapacityError, CommGraphError, DimensionError, DomainError
from .gf2 import Gf2Matrix, Gf2Vec, nullspace, parity_and, rank, span_enumerate, xor_add
from .graph import (
    CommutingGraph,
    DiameterReport,
    DistanceMap,
    bfs,
    connected,
    diameter,
    eccentricity,
    edge_count,
    full_commuting_graph,
    lex_product_check,
    neighbors,
)
from .group import (
    GroupElement,
    GroupParams,
    cocycle_check,
    commutator,
    commutes,
    f_basis,
    f_eval,
    form_B,
    inverse,
    multiply,
    phi_matrix,
    square,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "CommGraphError",
    "CommutingGraph",
    "DiameterReport",
    "DimensionError",
    "DistanceMap",
    "DomainError",
    "Gf2Matrix",
    "Gf2Vec",
    "GroupElement",
    "GroupParams",
    "bfs",
    "cocycle_check",
    "commutator",
    "commutes",
    "connected",
    "diameter",
    "eccentricity",
    "edge_count",
    "f_basis",
    "f_eval",
    "form_B",
    "full_commuting_graph",
    "inverse",
    "lex_product_check",
    "multiply",
    "neighbors",
    "nullspace",
    "parity_and",
    "phi_matrix",
    "rank",
    "span_enumerate",
    "square",
    "xor_add",
]
