"""Approximate shortest paths avoiding a single failed vertex."""

from ._dsoracle import (
    CONTAINER_VERSION,
    ApaspOracle,
    Container,
    ContainerError,
    Graph,
    Sssp3Oracle,
    SsspEpsOracle,
    build_container,
    exact_replacement,
    generate_cycle,
    generate_gnp,
    generate_grid,
    generate_path,
    generate_star,
    load_container,
    load_graph,
    read_container,
    save_graph,
    verify,
)

__all__ = [
    "CONTAINER_VERSION",
    "ApaspOracle",
    "Container",
    "ContainerError",
    "Graph",
    "Sssp3Oracle",
    "SsspEpsOracle",
    "build_container",
    "exact_replacement",
    "generate_cycle",
    "generate_gnp",
    "generate_grid",
    "generate_path",
    "generate_star",
    "load_container",
    "load_graph",
    "read_container",
    "save_graph",
    "verify",
]
