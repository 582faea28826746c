"""Simulation and tail estimation for multilayer heavy-tailed random graphs."""

from ._core import (
    example31_limit,
    generate_edges,
    hill,
    hillish_pair,
    norms,
    select_kn,
    simulate_degrees,
    wedge_distance,
    xi_eta,
)

__all__ = [
    "example31_limit",
    "generate_edges",
    "hill",
    "hillish_pair",
    "norms",
    "select_kn",
    "simulate_degrees",
    "wedge_distance",
    "xi_eta",
]

__version__ = "0.1.0"
