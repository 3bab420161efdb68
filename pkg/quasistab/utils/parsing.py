"""
Argument Parsing Utilities
Helpers turning command-line values into degrees, locations and assignments.
"""

from typing import Dict, FrozenSet

from quasistab.models import AtMarking, AtNode, MalformedInputError, OnVertex, PointLocation


def parse_degree_pairs(text: str) -> Dict[str, int]:
    """Parse "A=0,B=-1" into a vertex-to-degree mapping."""
    degrees: Dict[str, int] = {}
    for chunk in text.split(","):
        vid, sep, value = chunk.partition("=")
        vid = vid.strip()
        if not sep or not vid:
            raise MalformedInputError(f"expected id=degree, got '{chunk}'")
        if vid in degrees:
            raise MalformedInputError(f"vertex {vid} listed twice")
        try:
            degrees[vid] = int(value)
        except ValueError:
            raise MalformedInputError(f"degree of {vid} is not an integer: '{value}'") from None
    return degrees


def parse_location(text: str) -> PointLocation:
    """Parse vertex:<id>, node:<edge-id> or marking:<label>."""
    kind, sep, ref = text.partition(":")
    if not sep or not ref:
        raise MalformedInputError(f"expected vertex:, node: or marking: location, got '{text}'")
    if kind == "vertex":
        return OnVertex(ref)
    if kind == "node":
        return AtNode(ref)
    if kind == "marking":
        try:
            return AtMarking(int(ref))
        except ValueError:
            raise MalformedInputError(f"marking label is not an integer: '{ref}'") from None
    raise MalformedInputError(f"unknown location kind '{kind}'")


def parse_assignment(text: str) -> FrozenSet[str]:
    """Raised chain vertices as "E1,E2", or "none" for no raised vertex."""
    if text.strip() == "none":
        return frozenset()
    chosen = [vid.strip() for vid in text.split(",")]
    if not all(chosen):
        raise MalformedInputError(f"empty vertex id in assignment '{text}'")
    return frozenset(chosen)
