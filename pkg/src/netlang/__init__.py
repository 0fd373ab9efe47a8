"""Seedable complex-network toolkit and agent-based language-change simulator."""

from netlang.errors import (
    ConfigError,
    DataError,
    DisconnectedGraphError,
    GenerationError,
    InsufficientDataError,
    NetlangError,
)
from netlang.graph import Graph, density, is_connected, largest_component, new_graph

__all__ = [
    "ConfigError",
    "DataError",
    "DisconnectedGraphError",
    "GenerationError",
    "Graph",
    "InsufficientDataError",
    "NetlangError",
    "density",
    "is_connected",
    "largest_component",
    "new_graph",
]

__version__ = "0.1.0"
