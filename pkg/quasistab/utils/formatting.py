"""
Text Formatting Utilities
Helper functions for rendering graphs, degrees and bounds as text.
"""

from fractions import Fraction
from typing import Iterable, List, Mapping, Sequence

from quasistab.models import AtMarking, AtNode, MarkedDualGraph, OnVertex, PointLocation


def format_fraction(value: Fraction) -> str:
    """Render an exact rational as "p/q", or "p" when integral."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_multidegree(mdeg: Mapping[str, int], order: Sequence[str]) -> str:
    return ",".join(f"{vid}={mdeg[vid]}" for vid in order)


def format_subcurve(vertices: Iterable[str], order: Sequence[str]) -> str:
    chosen = set(vertices)
    return "{" + ",".join(vid for vid in order if vid in chosen) + "}"


def format_location(location: PointLocation) -> str:
    if isinstance(location, OnVertex):
        return f"vertex:{location.vertex}"
    if isinstance(location, AtNode):
        return f"node:{location.edge}"
    if isinstance(location, AtMarking):
        return f"marking:{location.label}"
    raise TypeError(f"not a point location: {location!r}")


def format_graph(graph: MarkedDualGraph) -> List[str]:
    """One line per vertex and per edge."""
    lines = [f"markings: {graph.n}"]
    for vertex in graph.vertices:
        legs = ",".join(str(label) for label in vertex.legs) or "-"
        lines.append(f"vertex {vertex.id} genus={vertex.genus} legs={legs}")
    for edge in graph.edges:
        lines.append(f"edge {edge.id} {edge.u}-{edge.v}")
    return lines


def graph_to_dot(graph: MarkedDualGraph, exceptional: Iterable[str] = ()) -> str:
    """DOT text: genus as label, legs as point stubs, exceptional vertices as boxes."""
    boxed = set(exceptional)
    lines = ["graph dual {"]
    for vertex in graph.vertices:
        shape = "box" if vertex.id in boxed else "circle"
        lines.append(f'  "{vertex.id}" [label="{vertex.genus}", shape={shape}];')
        for label in vertex.legs:
            lines.append(f'  "leg{label}" [label="{label}", shape=point];')
            lines.append(f'  "{vertex.id}" -- "leg{label}" [style=dashed];')
    for edge in graph.edges:
        lines.append(f'  "{edge.u}" -- "{edge.v}" [label="{edge.id}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
