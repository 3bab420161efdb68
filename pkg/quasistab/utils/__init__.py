"""
Toolkit Utilities
Formatting and argument parsing helpers.
"""

from quasistab.utils.formatting import (
    format_fraction,
    format_multidegree,
    format_subcurve,
    format_location,
    format_graph,
    graph_to_dot,
)
from quasistab.utils.parsing import parse_degree_pairs, parse_location, parse_assignment

__all__ = [
    'format_fraction',
    'format_multidegree',
    'format_subcurve',
    'format_location',
    'format_graph',
    'graph_to_dot',
    'parse_degree_pairs',
    'parse_location',
    'parse_assignment',
]
