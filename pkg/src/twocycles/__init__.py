"""Vertex-disjoint cycle pairs with prescribed lengths under degree-sum bounds."""

from twocycles.graphs import (
    ContractViolation,
    CyclePairCert,
    Cycle,
    Graph,
    InputError,
    Path,
    build_graph,
    encode_graph6,
    parse_graph6,
    sigma2,
    validate_cert,
)

__all__ = [
    "ContractViolation",
    "CyclePairCert",
    "Cycle",
    "Graph",
    "InputError",
    "Path",
    "build_graph",
    "encode_graph6",
    "parse_graph6",
    "sigma2",
    "validate_cert",
]

__version__ = "0.1.0"
