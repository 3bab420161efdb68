"""
Command Handlers
Graph-level commands (validate, classify, status, info, export-dot, dm-check)
and the helpers shared by every handler.
"""

import argparse
import json
import math
from typing import Any, Iterable, List

from quasistab.config import logger
from quasistab.models import (
    Classification,
    DomainError,
    GraphDocument,
    MalformedInputError,
    MarkedDualGraph,
    Multidegree,
)
from quasistab.services import (
    classify,
    dm_condition,
    load_document,
    stability_status,
    stack_dimension,
    total_genus,
    validate,
)
from quasistab.utils import format_subcurve, graph_to_dot, parse_degree_pairs


# ==================== Shared Helpers ====================


def load_graph(path: str) -> GraphDocument:
    """Load a document whose graph passes validation."""
    document = load_document(path)
    result = validate(document.graph)
    if not result.ok:
        raise DomainError(f"invalid graph: {'; '.join(result.violations)}")
    return document


def resolve_multidegree(document: GraphDocument, text: str) -> Multidegree:
    """An inline "id=deg,..." list or the name of a multidegree stored in the document."""
    if "=" in text:
        return Multidegree.of(parse_degree_pairs(text))
    if text not in document.multidegrees:
        raise MalformedInputError(f"no multidegree named '{text}' in the document")
    return Multidegree.of(document.multidegrees[text])


def emit(args: argparse.Namespace, lines: Iterable[str], payload: Any) -> None:
    """Print text lines, or the JSON payload when --json was given."""
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2))
    else:
        for line in lines:
            print(line)


def ordered(graph: MarkedDualGraph, vertices: Iterable[str]) -> List[str]:
    chosen = set(vertices)
    return [vid for vid in graph.vertex_ids if vid in chosen]


def yes_no(flag: bool) -> str:
    return "true" if flag else "false"


# ==================== Graph Commands ====================


def validate_command(args: argparse.Namespace) -> int:
    """Handle the validate command."""
    document = load_document(args.graph)
    result = validate(document.graph)
    lines = ["ok"] if result.ok else [f"violation: {text}" for text in result.violations]
    emit(args, lines, {"ok": result.ok, "violations": list(result.violations)})
    if not result.ok:
        logger.info(f"{args.graph}: {len(result.violations)} violations")
    return 0 if result.ok else 1


def _classification_payload(graph: MarkedDualGraph, classification: Classification) -> dict:
    return {
        "core": ordered(graph, classification.core_vertices),
        "tails": [
            {
                "vertices": ordered(graph, tail.vertices),
                "root": tail.root,
                "edge": tail.attaching_edge,
                "anchor": tail.anchor,
            }
            for tail in classification.maximal_tails
        ],
        "bridges": [
            {
                "chain": list(bridge.chain),
                "attaching_edges": list(bridge.attaching_edges),
                "tails": {
                    vid: [ordered(graph, tail.vertices) for tail in tails]
                    for vid, tails in zip(bridge.chain, bridge.attached_tails)
                    if tails
                },
            }
            for bridge in classification.maximal_bridges
        ],
        "exceptional": ordered(graph, classification.exceptional),
        "destabilizing": ordered(graph, classification.destabilizing),
    }


def classify_command(args: argparse.Namespace) -> int:
    """Handle the classify command."""
    graph = load_graph(args.graph).graph
    classification = classify(graph)
    order = graph.vertex_ids

    lines = [f"core: {format_subcurve(classification.core_vertices, order)}"]
    for tail in classification.maximal_tails:
        lines.append(
            f"tail: {format_subcurve(tail.vertices, order)} root={tail.root} "
            f"edge={tail.attaching_edge} anchor={tail.anchor}"
        )
    for bridge in classification.maximal_bridges:
        lines.append(f"bridge: {'>'.join(bridge.chain)} edges={','.join(bridge.attaching_edges)}")
        for vid, tails in zip(bridge.chain, bridge.attached_tails):
            for tail in tails:
                lines.append(f"  tail at {vid}: {format_subcurve(tail.vertices, order)}")
    lines.append(f"exceptional: {format_subcurve(classification.exceptional, order)}")
    lines.append(f"destabilizing: {format_subcurve(classification.destabilizing, order)}")

    emit(args, lines, _classification_payload(graph, classification))
    return 0


def status_command(args: argparse.Namespace) -> int:
    """Handle the status command."""
    status = stability_status(load_graph(args.graph).graph)
    lines = [
        f"semistable: {yes_no(status.semistable)}",
        f"stable: {yes_no(status.stable)}",
        f"quasistable: {yes_no(status.quasistable)}",
    ]
    payload = {
        "semistable": status.semistable,
        "stable": status.stable,
        "quasistable": status.quasistable,
    }
    emit(args, lines, payload)
    return 0


def info_command(args: argparse.Namespace) -> int:
    """Handle the info command."""
    graph = load_graph(args.graph).graph
    genus = total_genus(graph)
    payload = {
        "genus": genus,
        "markings": graph.n,
        "vertices": len(graph.vertices),
        "edges": len(graph.edges),
        "dimension": stack_dimension(genus, graph.n),
    }
    emit(args, [f"{key}: {value}" for key, value in payload.items()], payload)
    return 0


def export_dot_command(args: argparse.Namespace) -> int:
    """Handle the export-dot command."""
    graph = load_graph(args.graph).graph
    exceptional = classify(graph).exceptional if total_genus(graph) >= 2 else frozenset()
    print(graph_to_dot(graph, exceptional), end="")
    return 0


def dm_check_command(args: argparse.Namespace) -> int:
    """Handle the dm-check command."""
    if args.g < 3:
        raise DomainError(f"genus must be at least 3, got {args.g}")
    holds = dm_condition(args.d, args.g)
    divisor = math.gcd(args.d - args.g + 1, 2 * args.g - 2)
    emit(args, [f"{yes_no(holds)} (gcd={divisor})"], {"holds": holds, "gcd": divisor})
    return 0
