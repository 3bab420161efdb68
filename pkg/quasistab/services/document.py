"""
Document Service
Handles graph document parsing, serialization and file storage.
"""

import json
from typing import Any, Dict, FrozenSet, List

from quasistab.config import DOCUMENT_VERSION, logger
from quasistab.models import (
    Edge,
    GraphDocument,
    MalformedInputError,
    MarkedDualGraph,
    Multidegree,
    Vertex,
)


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise MalformedInputError(message)


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _parse_vertex(entry: Any) -> Vertex:
    _expect(isinstance(entry, dict), f"vertex entry must be an object, got {entry!r}")
    _expect(isinstance(entry.get("id"), str), f"vertex id must be a string in {entry!r}")
    _expect(_is_int(entry.get("genus")), f"vertex {entry['id']} needs an integer genus")
    legs = entry.get("legs", [])
    _expect(
        isinstance(legs, list) and all(_is_int(label) for label in legs),
        f"legs of vertex {entry['id']} must be a list of integers",
    )
    return Vertex(entry["id"], entry["genus"], tuple(sorted(legs)))


def _parse_edge(position: int, entry: Any) -> Edge:
    _expect(
        isinstance(entry, list) and len(entry) == 2 and all(isinstance(end, str) for end in entry),
        f"edge {position} must be a pair of vertex ids, got {entry!r}",
    )
    return Edge(f"e{position}", entry[0], entry[1])


def _parse_multidegree(name: str, entry: Any, vertex_ids: FrozenSet[str]) -> Multidegree:
    _expect(
        isinstance(entry, dict) and all(_is_int(value) for value in entry.values()),
        f"multidegree {name} must map vertex ids to integers",
    )
    unknown = sorted(set(entry) - vertex_ids)
    _expect(not unknown, f"multidegree {name} names unknown vertices: {', '.join(unknown)}")
    return Multidegree.of(entry)


def parse_document(data: Any) -> GraphDocument:
    """Build a GraphDocument from decoded JSON. Edges get ids e1, e2, ... in order."""
    _expect(isinstance(data, dict), "document must be a JSON object")
    version = data.get("version")
    _expect(version == DOCUMENT_VERSION, f"unsupported document version {version!r}")
    vertices = data.get("vertices")
    edges = data.get("edges", [])
    _expect(isinstance(vertices, list), "document needs a vertices list")
    _expect(isinstance(edges, list), "edges must be a list")
    multidegrees = data.get("multidegrees", {})
    _expect(isinstance(multidegrees, dict), "multidegrees must be an object")

    parsed = tuple(_parse_vertex(entry) for entry in vertices)
    n = max((label for vertex in parsed for label in vertex.legs), default=0)
    graph = MarkedDualGraph(
        vertices=parsed,
        edges=tuple(_parse_edge(i, entry) for i, entry in enumerate(edges, start=1)),
        n=n,
    )
    ids = frozenset(graph.vertex_ids)
    named = {name: _parse_multidegree(name, entry, ids) for name, entry in multidegrees.items()}
    return GraphDocument(graph=graph, multidegrees=named, version=version)


def serialize_document(document: GraphDocument) -> Dict[str, Any]:
    """JSON-ready form of a document; vertex and edge order are kept."""
    graph = document.graph
    order = graph.vertex_ids
    for name, mdeg in document.multidegrees.items():
        unknown = sorted(set(mdeg) - set(order))
        _expect(not unknown, f"multidegree {name} names unknown vertices: {', '.join(unknown)}")
    vertices: List[Dict[str, Any]] = [
        {"id": vertex.id, "genus": vertex.genus, "legs": list(vertex.legs)}
        for vertex in graph.vertices
    ]
    return {
        "version": document.version,
        "vertices": vertices,
        "edges": [[edge.u, edge.v] for edge in graph.edges],
        "multidegrees": {
            name: {vid: mdeg[vid] for vid in order if vid in mdeg}
            for name, mdeg in document.multidegrees.items()
        },
    }


def dumps_document(document: GraphDocument) -> str:
    return json.dumps(serialize_document(document), indent=2) + "\n"


def load_document(path: str) -> GraphDocument:
    """Load a graph document from a JSON file."""
    try:
        with open(path, 'r') as f:
            data = json.load(f)
    except OSError as e:
        logger.error(f"Error reading graph document {path}: {e}")
        raise MalformedInputError(f"cannot read {path}: {e.strerror}") from e
    except json.JSONDecodeError as e:
        logger.error(f"Error decoding graph document {path}: {e}")
        raise MalformedInputError(f"{path} is not valid JSON: {e.msg} at line {e.lineno}") from e
    return parse_document(data)


def save_document(document: GraphDocument, path: str) -> None:
    """Save a graph document to a JSON file."""
    try:
        with open(path, 'w') as f:
            f.write(dumps_document(document))
        logger.info(f"Graph document saved to {path}")
    except OSError as e:
        logger.error(f"Error saving graph document {path}: {e}")
        raise MalformedInputError(f"cannot write {path}: {e.strerror}") from e
