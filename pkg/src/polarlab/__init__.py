"""Finite-geometry constructions of srg(28,15,6,10) and the NO+(2n,2) family over GF(2)."""

from polarlab.gf2core import Subspace, all_points, echelon_basis, intersect, rank, subspace_points
from polarlab.graphcore import (
    AssociationScheme,
    LabeledGraph,
    SrgError,
    SrgParams,
    complement,
    complement_params,
    decode_graph6,
    edge_list,
    encode_graph6,
    srg_params,
    verify_scheme,
)
from polarlab.canon import BudgetExceeded, automorphism_order, canonical_form, certificate, isomorphism
from polarlab.constructions import ConstructionId, build

__version__ = "0.1.0"

__all__ = [
    "AssociationScheme",
    "BudgetExceeded",
    "ConstructionId",
    "LabeledGraph",
    "SrgError",
    "SrgParams",
    "Subspace",
    "all_points",
    "automorphism_order",
    "build",
    "canonical_form",
    "certificate",
    "complement",
    "complement_params",
    "decode_graph6",
    "echelon_basis",
    "edge_list",
    "encode_graph6",
    "intersect",
    "isomorphism",
    "rank",
    "srg_params",
    "subspace_points",
    "verify_scheme",
]
