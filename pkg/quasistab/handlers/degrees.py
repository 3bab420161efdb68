"""
Degree Handlers
Multidegree commands: check-balanced, enumerate, twist and criteria.
"""

import argparse
from typing import Callable, Dict, List, Tuple

from quasistab.handlers.commands import emit, load_graph, resolve_multidegree
from quasistab.models import (
    CriterionReport,
    GraphDocument,
    MalformedInputError,
    MarkedDualGraph,
    Multidegree,
)
from quasistab.services import (
    balanced_large_d_report,
    base_point_free_criterion,
    classify,
    dualizing_power_report,
    enumerate_balanced,
    h0_if_criterion,
    h1_vanishing,
    is_balanced,
    large_degree_threshold,
    normal_generation_hypothesis,
    positivity_report,
    twist_by_omega,
)
from quasistab.utils import format_fraction, format_multidegree, format_subcurve


def _degree_payload(graph: MarkedDualGraph, mdeg: Multidegree) -> Dict[str, int]:
    return {vid: mdeg[vid] for vid in graph.vertex_ids}


def check_balanced_command(args: argparse.Namespace) -> int:
    """Handle the check-balanced command."""
    document = load_graph(args.graph)
    graph = document.graph
    report = is_balanced(graph, resolve_multidegree(document, args.multidegree))
    violation = report.violation

    if violation is None:
        emit(args, ["balanced"], {"balanced": True, "violation": None})
        return 0

    subcurve = format_subcurve(violation.subcurve, graph.vertex_ids)
    line = (
        f"not balanced: {violation.kind} on {subcurve}: {violation.actual} not in "
        f"[{format_fraction(violation.lower)}, {format_fraction(violation.upper)}]"
    )
    payload = {
        "balanced": False,
        "violation": {
            "kind": violation.kind,
            "subcurve": [vid for vid in graph.vertex_ids if vid in violation.subcurve],
            "lower": format_fraction(violation.lower),
            "upper": format_fraction(violation.upper),
            "actual": violation.actual,
        },
    }
    emit(args, [line], payload)
    return 0


def enumerate_command(args: argparse.Namespace) -> int:
    """Handle the enumerate command."""
    graph = load_graph(args.graph).graph
    found = enumerate_balanced(graph, args.d)
    emit(
        args,
        [format_multidegree(mdeg, graph.vertex_ids) for mdeg in found],
        [_degree_payload(graph, mdeg) for mdeg in found],
    )
    return 0


def twist_command(args: argparse.Namespace) -> int:
    """Handle the twist command."""
    document = load_graph(args.graph)
    graph = document.graph
    mdeg = resolve_multidegree(document, args.multidegree)
    twisted = twist_by_omega(graph, classify(graph), mdeg, args.m)
    emit(args, [format_multidegree(twisted, graph.vertex_ids)], _degree_payload(graph, twisted))
    return 0


# ==================== Criteria ====================


def _report_lines(graph: MarkedDualGraph, report: CriterionReport) -> Tuple[List[str], dict]:
    witness = report.witness
    if witness is None:
        return ["holds"], {"holds": True, "witness": None}
    subcurve = format_subcurve(witness.subcurve, graph.vertex_ids)
    line = f"fails on {subcurve}: degree {witness.degree} < {witness.threshold}"
    payload = {
        "holds": False,
        "witness": {
            "subcurve": [vid for vid in graph.vertex_ids if vid in witness.subcurve],
            "degree": witness.degree,
            "threshold": witness.threshold,
        },
    }
    return [line], payload


def _needs_multidegree(document: GraphDocument, args: argparse.Namespace) -> Multidegree:
    if args.multidegree is None:
        raise MalformedInputError(f"criterion {args.name} needs a multidegree")
    return resolve_multidegree(document, args.multidegree)


def _h0(document: GraphDocument, args: argparse.Namespace) -> Tuple[List[str], dict]:
    value = h0_if_criterion(document.graph, _needs_multidegree(document, args))
    line = "not established" if value is None else f"h0 = {value}"
    return [line], {"h0": value}


def _normal_generation(document: GraphDocument, args: argparse.Namespace) -> Tuple[List[str], dict]:
    graph = document.graph
    report, shifted = normal_generation_hypothesis(graph, _needs_multidegree(document, args))
    lines, payload = _report_lines(graph, report)
    lines.append(f"shifted: {format_multidegree(shifted, graph.vertex_ids)}")
    payload["shifted"] = _degree_payload(graph, shifted)
    return lines, payload


def _threshold(document: GraphDocument, args: argparse.Namespace) -> Tuple[List[str], dict]:
    value = large_degree_threshold(document.graph, args.k, args.start)
    line = "not found" if value is None else f"threshold = {value}"
    return [line], {"threshold": value}


def _with_multidegree(check: Callable) -> Callable:
    def run(document: GraphDocument, args: argparse.Namespace) -> Tuple[List[str], dict]:
        report = check(document.graph, _needs_multidegree(document, args))
        return _report_lines(document.graph, report)

    return run


CRITERIA: Dict[str, Callable[[GraphDocument, argparse.Namespace], Tuple[List[str], dict]]] = {
    "h1": _with_multidegree(h1_vanishing),
    "base-point-free": _with_multidegree(base_point_free_criterion),
    "positivity": _with_multidegree(positivity_report),
    "h0": _h0,
    "normal-generation": _normal_generation,
    "dualizing-power": lambda document, args: _report_lines(
        document.graph, dualizing_power_report(document.graph, args.m, args.drop_last)
    ),
    "large-degree": lambda document, args: _report_lines(
        document.graph,
        balanced_large_d_report(document.graph, _needs_multidegree(document, args), args.k),
    ),
    "large-degree-threshold": _threshold,
}


def criteria_command(args: argparse.Namespace) -> int:
    """Handle the criteria command."""
    document = load_graph(args.graph)
    lines, payload = CRITERIA[args.name](document, args)
    emit(args, lines, payload)
    return 0


def criterion_names() -> List[str]:
    return list(CRITERIA)
