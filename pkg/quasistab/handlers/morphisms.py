"""
Morphism Handlers
Commands for forgetting markings, stabilizing, stable models, stripping to
the unpointed curve and forgetful fiber censuses.
"""

import argparse
from typing import Dict, List, Mapping, Optional

from quasistab.handlers.commands import emit, load_graph, ordered, resolve_multidegree
from quasistab.models import GraphDocument, MalformedInputError, MarkedDualGraph, Multidegree
from quasistab.services import (
    classify,
    contract_last_marking,
    forget_all_markings,
    forgetful_fiber,
    lift_multidegree,
    save_document,
    stabilize,
    stable_model,
    strip_multidegree,
    strip_to_unpointed,
)
from quasistab.utils import (
    format_graph,
    format_location,
    format_multidegree,
    parse_assignment,
    parse_degree_pairs,
    parse_location,
)

RESULT_NAME = "result"


def _map_lines(vertex_map: Mapping) -> List[str]:
    return [f"map: {old} -> {new}" for old, new in vertex_map.items() if old != new]


def _finish(
    args: argparse.Namespace,
    graph: MarkedDualGraph,
    mdeg: Optional[Multidegree],
    lines: List[str],
    payload: Dict,
) -> int:
    """Print the outcome and save it as a document when --output was given."""
    lines = lines + format_graph(graph)
    if mdeg is not None:
        lines.append(f"multidegree: {format_multidegree(mdeg, graph.vertex_ids)}")
        payload["multidegree"] = {vid: mdeg[vid] for vid in graph.vertex_ids}
    payload["graph"] = format_graph(graph)
    emit(args, lines, payload)

    if args.output:
        named = {RESULT_NAME: mdeg} if mdeg is not None else {}
        save_document(GraphDocument(graph=graph, multidegrees=named), args.output)
    return 0


def contract_command(args: argparse.Namespace) -> int:
    """Handle the contract command."""
    document = load_graph(args.graph)
    outcome = contract_last_marking(
        document.graph, resolve_multidegree(document, args.multidegree)
    )
    lines = [f"delta: {format_location(outcome.delta)}"]
    if outcome.contracted is not None:
        lines.append(f"contracted: {outcome.contracted}")
    payload = {"delta": format_location(outcome.delta), "contracted": outcome.contracted}
    return _finish(args, outcome.graph, outcome.multidegree, lines, payload)


def stabilize_command(args: argparse.Namespace) -> int:
    """Handle the stabilize command."""
    document = load_graph(args.graph)
    outcome = stabilize(
        document.graph, resolve_multidegree(document, args.multidegree), parse_location(args.at)
    )
    lines = [] if outcome.new_vertex is None else [f"new vertex: {outcome.new_vertex}"]
    payload = {"new_vertex": outcome.new_vertex}
    return _finish(args, outcome.graph, outcome.multidegree, lines, payload)


def stable_model_command(args: argparse.Namespace) -> int:
    """Handle the stable-model command."""
    mapped = stable_model(load_graph(args.graph).graph)
    payload = {"vertex_map": dict(mapped.vertex_map)}
    return _finish(args, mapped.graph, None, _map_lines(mapped.vertex_map), payload)


def strip_command(args: argparse.Namespace) -> int:
    """Handle the strip command.

    With a multidegree the bridge assignment is read off it and the stripped
    degrees are printed too; otherwise --bridges names the raised vertices.
    """
    document = load_graph(args.graph)
    graph = document.graph
    degrees = None
    if args.multidegree is not None:
        assignment, degrees = strip_multidegree(
            graph, classify(graph), resolve_multidegree(document, args.multidegree)
        )
    elif args.bridges is not None:
        assignment = parse_assignment(args.bridges)
    else:
        raise MalformedInputError("strip needs --bridges or a multidegree")

    mapped = strip_to_unpointed(graph, assignment)
    raised = ordered(graph, assignment)
    lines = [f"raised: {','.join(raised) or 'none'}"] + _map_lines(mapped.vertex_map)
    payload = {"raised": raised, "vertex_map": dict(mapped.vertex_map)}
    return _finish(args, mapped.graph, degrees, lines, payload)


def lift_command(args: argparse.Namespace) -> int:
    """Handle the lift command."""
    graph = load_graph(args.graph).graph
    assignment = parse_assignment(args.bridges)
    lifted = lift_multidegree(
        graph, classify(graph), assignment, Multidegree.of(parse_degree_pairs(args.degrees))
    )
    return _finish(args, graph, lifted, [], {})


def forget_all_command(args: argparse.Namespace) -> int:
    """Handle the forget-all command."""
    document = load_graph(args.graph)
    outcome = forget_all_markings(document.graph, resolve_multidegree(document, args.multidegree))
    payload = {"vertex_map": dict(outcome.vertex_map)}
    return _finish(
        args, outcome.graph, outcome.multidegree, _map_lines(outcome.vertex_map), payload
    )


def fibers_command(args: argparse.Namespace) -> int:
    """Handle the fibers command."""
    entries = forgetful_fiber(load_graph(args.graph).graph, args.d)
    lines = []
    payload = []
    for entry in entries:
        order = entry.graph.vertex_ids
        lines.append(f"{{{','.join(entry.edges)}}}: {entry.count}")
        lines.extend(f"  {format_multidegree(mdeg, order)}" for mdeg in entry.multidegrees)
        payload.append(
            {
                "edges": list(entry.edges),
                "count": entry.count,
                "multidegrees": [{vid: mdeg[vid] for vid in order} for mdeg in entry.multidegrees],
            }
        )
    emit(args, lines, payload)
    return 0
