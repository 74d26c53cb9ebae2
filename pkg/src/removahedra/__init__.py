"""Exact computations on weak-order congruences, permutrees and their type cones."""

__version__ = "0.1.0"

from .decoration import ALPHABET, Decoration
from .shards import (
    Congruence,
    NotPermutree,
    NotUpwardClosed,
    Shard,
    ShardIdeal,
    congruence_classes,
    ideal_decoration,
    permutree_ideal,
    quotient_rays,
    upper_ideals,
    validate_ideal,
)
from .permutrees import Permutree, enumerate_permutrees, rotate, validate, vertex_coordinates
from .polyhedra import HeightFunction, HPolytope, VPolytope, check_realizes, normal_partition, vertices
from .typecone import (
    ExchangeablePair,
    chi,
    exchangeable_pairs,
    facet_oracle,
    permutree_rays,
    phi,
    rho,
    typecone_facets,
)
from .realizations import (
    is_removahedral,
    kinematic_polytope,
    permutreehedron,
    realize_from_submodular,
    removahedron,
    simplicial_q_polytope,
    wall_crossing_defect,
)

__all__ = [
    "ALPHABET",
    "Congruence",
    "Decoration",
    "ExchangeablePair",
    "HPolytope",
    "HeightFunction",
    "NotPermutree",
    "NotUpwardClosed",
    "Permutree",
    "Shard",
    "ShardIdeal",
    "VPolytope",
    "check_realizes",
    "chi",
    "congruence_classes",
    "enumerate_permutrees",
    "exchangeable_pairs",
    "facet_oracle",
    "ideal_decoration",
    "is_removahedral",
    "kinematic_polytope",
    "normal_partition",
    "permutree_ideal",
    "permutree_rays",
    "permutreehedron",
    "phi",
    "quotient_rays",
    "realize_from_submodular",
    "removahedron",
    "rho",
    "rotate",
    "simplicial_q_polytope",
    "typecone_facets",
    "upper_ideals",
    "validate",
    "validate_ideal",
    "vertex_coordinates",
    "vertices",
    "wall_crossing_defect",
]
