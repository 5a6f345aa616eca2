"""Reaction network representation, structural invariants and file formats."""

from src.services.network.reaction_network import (
    Complex,
    ReactionNetwork,
    LinkageDecomposition,
    StoichiometricSpace,
    RateVector,
    numerical_rank,
    complex_matrix,
    reaction_vectors,
    linkage_classes,
    is_weakly_reversible,
    stoichiometric_space,
    deficiency,
    affine_transform,
)
from src.services.network.network_io import (
    parse_network,
    serialize_network,
    parse_rates,
    rates_for,
    load_network,
    load_rates,
    resolve_network,
)
from src.services.network.catalogue import example_network, list_examples

__all__ = [
    "Complex",
    "ReactionNetwork",
    "LinkageDecomposition",
    "StoichiometricSpace",
    "RateVector",
    "numerical_rank",
    "complex_matrix",
    "reaction_vectors",
    "linkage_classes",
    "is_weakly_reversible",
    "stoichiometric_space",
    "deficiency",
    "affine_transform",
    "parse_network",
    "serialize_network",
    "parse_rates",
    "rates_for",
    "load_network",
    "load_rates",
    "resolve_network",
    "example_network",
    "list_examples",
]
