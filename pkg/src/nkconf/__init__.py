"""Exact analysis of combinatorial (n_k) point-line configurations."""

from .incidence import (
    Configuration,
    FormatError,
    LeviGraph,
    dual,
    levi_graph,
    load_configuration,
    parse_configuration,
    serialize,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "Configuration",
    "FormatError",
    "LeviGraph",
    "dual",
    "levi_graph",
    "load_configuration",
    "parse_configuration",
    "serialize",
    "validate",
]
