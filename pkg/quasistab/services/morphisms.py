"""
Morphisms Service
Contraction of the last marking, stabilization of an extra section, stable
models, reduction to unpointed curves and the fibers of the forgetful map.
"""

import itertools
from typing import Dict, Iterable, List, Mapping, Tuple

from quasistab.config import CENSUS_EDGE_LIMIT, logger
from quasistab.models import (
    AtMarking,
    AtNode,
    Classification,
    ConsistencyError,
    ContractionOutcome,
    DomainError,
    Edge,
    FiberEntry,
    ForgetOutcome,
    MappedGraph,
    MarkedDualGraph,
    Multidegree,
    OnVertex,
    PointLocation,
    StabilizationOutcome,
    Vertex,
)
from quasistab.services.balance import (
    BridgeAssignment,
    bridge_assignment_of,
    enumerate_balanced,
    forced_tail_bridge_degrees,
    is_balanced,
    is_gieseker_balanced,
)
from quasistab.services.dualgraph import (
    blow_up_edges,
    boundary_size,
    fresh_edge_ids,
    fresh_vertex_id,
    is_smooth_rational,
    require_quasistable,
    special_points,
    stability_status,
    total_genus,
)


# ==================== Graph Surgery ====================


def _replace_vertices(graph: MarkedDualGraph, updates: Mapping[str, Vertex]) -> Tuple[Vertex, ...]:
    return tuple(updates.get(vertex.id, vertex) for vertex in graph.vertices)


def _with_legs(vertex: Vertex, legs: Iterable[int]) -> Vertex:
    return Vertex(vertex.id, vertex.genus, tuple(sorted(legs)))


def _splice(graph: MarkedDualGraph, vertex_id: str) -> Tuple[Tuple[Edge, ...], str]:
    """Drop a vertex with two nodes, joining its neighbours by one edge.

    The joined edge keeps the id and position of the first of the two edges.
    """
    first, second = [edge for edge in graph.edges if edge.touches(vertex_id)]
    joined = Edge(first.id, first.other(vertex_id), second.other(vertex_id))
    edges = tuple(
        joined if edge.id == first.id else edge for edge in graph.edges if edge.id != second.id
    )
    return edges, first.id


def _identity_map(graph: MarkedDualGraph, dropped: Iterable[str] = ()) -> Dict[str, str]:
    skip = set(dropped)
    return {vid: vid for vid in graph.vertex_ids if vid not in skip}


def _require_balanced(graph: MarkedDualGraph, mdeg: Mapping[str, int]) -> None:
    report = is_balanced(graph, mdeg)
    if not report.verdict:
        violation = report.violation
        raise DomainError(
            f"multidegree is not balanced: {violation.kind} on {sorted(violation.subcurve)}"
        )


# ==================== Contraction ====================


def contract_last_marking(graph: MarkedDualGraph, mdeg: Mapping[str, int]) -> ContractionOutcome:
    """Forget marking n and contract its component when the twisted degree vanishes there."""
    if graph.n < 1:
        raise DomainError("graph has no marking to forget")
    _require_balanced(graph, mdeg)

    last = graph.n
    vid = graph.leg_owner(last)
    vertex = graph.vertex(vid)
    others = [label for label in vertex.legs if label != last]
    nodes = boundary_size(graph, [vid])
    degree = mdeg[vid]
    degrees = Multidegree.of(mdeg)

    if is_smooth_rational(graph, vid) and nodes == 1 and len(others) == 1 and degree == -1:
        (edge,) = graph.incident_edges(vid)
        anchor = edge.other(vid)
        moved = others[0]
        target = graph.vertex(anchor)
        moved_onto = {anchor: _with_legs(target, target.legs + (moved,))}
        contracted = MarkedDualGraph(
            vertices=tuple(v for v in _replace_vertices(graph, moved_onto) if v.id != vid),
            edges=tuple(e for e in graph.edges if e.id != edge.id),
            n=last - 1,
        )
        outcome = ContractionOutcome(
            graph=contracted,
            multidegree=degrees.without(vid).updated({anchor: mdeg[anchor] - 1}),
            delta=AtMarking(moved),
            vertex_map=_identity_map(graph, [vid]),
            contracted=vid,
        )
    elif is_smooth_rational(graph, vid) and nodes == 2 and not others and degree == 0:
        edges, kept = _splice(graph, vid)
        contracted = MarkedDualGraph(
            vertices=tuple(v for v in graph.vertices if v.id != vid), edges=edges, n=last - 1
        )
        outcome = ContractionOutcome(
            graph=contracted,
            multidegree=degrees.without(vid),
            delta=AtNode(kept),
            vertex_map=_identity_map(graph, [vid]),
            contracted=vid,
        )
    else:
        forgotten = MarkedDualGraph(
            vertices=_replace_vertices(graph, {vid: _with_legs(vertex, others)}),
            edges=graph.edges,
            n=last - 1,
        )
        outcome = ContractionOutcome(
            graph=forgotten,
            multidegree=degrees,
            delta=OnVertex(vid),
            vertex_map=_identity_map(graph),
        )

    logger.debug(f"Forgot marking {last}: delta {outcome.delta}, contracted {outcome.contracted}")
    return outcome


def forget_last_point(
    graph: MarkedDualGraph, mdeg: Mapping[str, int]
) -> Tuple[MarkedDualGraph, Multidegree]:
    outcome = contract_last_marking(graph, mdeg)
    return outcome.graph, outcome.multidegree


def forget_all_markings(graph: MarkedDualGraph, mdeg: Mapping[str, int]) -> ForgetOutcome:
    """Forget markings n, n-1, ..., 1 in turn, composing the vertex maps."""
    vertex_map = _identity_map(graph)
    current, degrees = graph, Multidegree.of(mdeg)
    while current.n > 0:
        outcome = contract_last_marking(current, degrees)
        vertex_map = {
            old: outcome.vertex_map[new]
            for old, new in vertex_map.items()
            if new in outcome.vertex_map
        }
        current, degrees = outcome.graph, outcome.multidegree
    logger.info(f"Forgot all markings: {len(graph.vertices)} -> {len(current.vertices)} vertices")
    return ForgetOutcome(current, degrees, vertex_map)


# ==================== Stabilization ====================


def stabilize(
    graph: MarkedDualGraph, mdeg: Mapping[str, int], delta: PointLocation
) -> StabilizationOutcome:
    """Add marking n+1 at delta, blowing up a node or a marking when delta hits one."""
    _require_balanced(graph, mdeg)
    new_label = graph.n + 1
    degrees = Multidegree.of(mdeg)

    if isinstance(delta, OnVertex):
        if not graph.has_vertex(delta.vertex):
            raise DomainError(f"unknown vertex {delta.vertex}")
        vertex = graph.vertex(delta.vertex)
        stabilized = MarkedDualGraph(
            vertices=_replace_vertices(
                graph, {vertex.id: _with_legs(vertex, vertex.legs + (new_label,))}
            ),
            edges=graph.edges,
            n=new_label,
        )
        return StabilizationOutcome(stabilized, degrees, _identity_map(graph))

    if isinstance(delta, AtNode):
        if not graph.has_edge(delta.edge):
            raise DomainError(f"unknown edge {delta.edge}")
        node = graph.edge(delta.edge)
        middle = fresh_vertex_id(graph, f"s{new_label}")
        (extra,) = fresh_edge_ids(graph, 1)
        edges = tuple(Edge(e.id, e.u, middle) if e.id == node.id else e for e in graph.edges)
        stabilized = MarkedDualGraph(
            vertices=graph.vertices + (Vertex(middle, 0, (new_label,)),),
            edges=edges + (Edge(extra, middle, node.v),),
            n=new_label,
        )
        return StabilizationOutcome(
            stabilized, degrees.updated({middle: 0}), _identity_map(graph), middle
        )

    if isinstance(delta, AtMarking):
        owner = graph.leg_owner(delta.label) if 1 <= delta.label <= graph.n else None
        if owner is None:
            raise DomainError(f"unknown marking {delta.label}")
        vertex = graph.vertex(owner)
        bubble = fresh_vertex_id(graph, f"s{new_label}")
        (extra,) = fresh_edge_ids(graph, 1)
        remaining = [label for label in vertex.legs if label != delta.label]
        stabilized = MarkedDualGraph(
            vertices=_replace_vertices(graph, {owner: _with_legs(vertex, remaining)})
            + (Vertex(bubble, 0, (delta.label, new_label)),),
            edges=graph.edges + (Edge(extra, owner, bubble),),
            n=new_label,
        )
        return StabilizationOutcome(
            stabilized,
            degrees.updated({owner: mdeg[owner] + 1, bubble: -1}),
            _identity_map(graph),
            bubble,
        )

    raise DomainError(f"unsupported point location {delta!r}")


def marking_section(
    graph: MarkedDualGraph, mdeg: Mapping[str, int], label: int
) -> StabilizationOutcome:
    """The section through marking label: stabilize with the new point on it."""
    return stabilize(graph, mdeg, AtMarking(label))


# ==================== Stable Model ====================


def stable_model(graph: MarkedDualGraph) -> MappedGraph:
    """Contract destabilizing components until the curve is stable."""
    genus = total_genus(graph)
    if 2 * genus - 2 + graph.n <= 0:
        raise DomainError("curve has no stable model (2g - 2 + n <= 0)")
    if not stability_status(graph).semistable:
        raise DomainError("graph is not semistable")

    current = graph
    vertex_map = _identity_map(graph)
    while True:
        unstable = [
            vid
            for vid in sorted(current.vertex_ids)
            if is_smooth_rational(current, vid) and special_points(current, vid) == 2
        ]
        if not unstable:
            break
        vid = unstable[0]
        vertex = current.vertex(vid)
        if vertex.legs:
            (edge,) = current.incident_edges(vid)
            target = current.vertex(edge.other(vid))
            moved_onto = {target.id: _with_legs(target, target.legs + vertex.legs)}
            current = MarkedDualGraph(
                vertices=tuple(v for v in _replace_vertices(current, moved_onto) if v.id != vid),
                edges=tuple(e for e in current.edges if e.id != edge.id),
                n=current.n,
            )
            vertex_map = {
                old: (target.id if new == vid else new) for old, new in vertex_map.items()
            }
        else:
            edges, _ = _splice(current, vid)
            current = MarkedDualGraph(
                vertices=tuple(v for v in current.vertices if v.id != vid), edges=edges, n=current.n
            )
            vertex_map = {old: new for old, new in vertex_map.items() if new != vid}
        logger.debug(f"Stable model: contracted {vid}")
    return MappedGraph(current, vertex_map)


# ==================== Unpointed Reduction ====================


def _check_assignment(classification: Classification, assignment: BridgeAssignment) -> None:
    chain_vertices = classification.chain_vertices
    stray = set(assignment) - chain_vertices
    if stray:
        raise DomainError(f"raised vertices {sorted(stray)} are not on a bridge chain")
    for bridge in classification.maximal_bridges:
        raised = [vid for vid in bridge.chain if vid in assignment]
        if len(raised) > 1:
            raise DomainError(f"bridge {list(bridge.chain)} has more than one raised vertex")
        exceptional = [vid for vid in bridge.chain if vid in classification.exceptional]
        if exceptional and raised != exceptional:
            raise DomainError(f"bridge {list(bridge.chain)} must raise its exceptional vertex")


def strip_to_unpointed(graph: MarkedDualGraph, assignment: BridgeAssignment) -> MappedGraph:
    """Drop tails, contract unraised bridges to nodes, shrink raised ones, forget markings."""
    classification = require_quasistable(graph, minimum_genus=2)
    _check_assignment(classification, assignment)

    removed = set(classification.tail_vertices)
    rewired: Dict[str, Edge] = {}
    vertex_map = {vid: vid for vid in classification.core_vertices}
    for bridge in classification.maximal_bridges:
        first, last = (graph.edge(eid) for eid in bridge.attaching_edges)
        left, right = first.other(bridge.chain[0]), last.other(bridge.chain[-1])
        raised = [vid for vid in bridge.chain if vid in assignment]
        removed |= set(bridge.chain) - set(raised)
        if raised:
            keep = raised[0]
            rewired[first.id] = Edge(first.id, left, keep)
            rewired[last.id] = Edge(last.id, keep, right)
            vertex_map.update({vid: keep for vid in bridge.chain})
        else:
            rewired[first.id] = Edge(first.id, left, right)

    edges = []
    for edge in graph.edges:
        if edge.id in rewired:
            edges.append(rewired[edge.id])
        elif edge.u not in removed and edge.v not in removed:
            edges.append(edge)
    vertices = tuple(
        Vertex(vertex.id, vertex.genus) for vertex in graph.vertices if vertex.id not in removed
    )
    stripped = MarkedDualGraph(vertices=vertices, edges=tuple(edges), n=0)
    logger.debug(f"Stripped to {len(vertices)} vertices")
    return MappedGraph(stripped, vertex_map)


def lift_multidegree(
    graph: MarkedDualGraph,
    classification: Classification,
    assignment: BridgeAssignment,
    mdeg0: Mapping[str, int],
) -> Multidegree:
    """Balanced multidegree on graph from a basic-inequality one on the stripped curve."""
    stripped = strip_to_unpointed(graph, assignment).graph
    if set(mdeg0) != set(stripped.vertex_ids):
        raise DomainError("multidegree keys do not match the stripped graph")
    if not is_gieseker_balanced(stripped, mdeg0):
        raise DomainError("multidegree does not satisfy the basic inequality")

    degrees = {
        vid: mdeg0[vid] + classification.tails_at(vid) for vid in classification.core_vertices
    }
    forced = forced_tail_bridge_degrees(graph, classification)
    degrees.update(forced.fixed)
    for choice in forced.choices:
        raised = [vid for vid in choice.bridge.chain if vid in assignment]
        degrees.update(choice.pattern(raised[0] if raised else None))

    lifted = Multidegree.of(degrees)
    if not is_balanced(graph, lifted).verdict:
        raise ConsistencyError("lifted multidegree is not balanced")
    return lifted


def strip_multidegree(
    graph: MarkedDualGraph, classification: Classification, mdeg: Mapping[str, int]
) -> Tuple[BridgeAssignment, Multidegree]:
    """Inverse of lift_multidegree: the realised assignment and the stripped degrees."""
    assignment = bridge_assignment_of(graph, classification, mdeg)
    degrees = {
        vid: mdeg[vid] - classification.tails_at(vid) for vid in classification.core_vertices
    }
    degrees.update({vid: 1 for vid in assignment})
    return assignment, Multidegree.of(degrees)


# ==================== Forgetful Fibers ====================


def forgetful_fiber(graph: MarkedDualGraph, d: int) -> List[FiberEntry]:
    """Quasistable blow-ups of a stable curve with their balanced degree-d multidegrees.

    Strata are ordered by the number of blown-up edges, then by their edge ids.
    """
    if total_genus(graph) < 3:
        raise DomainError("forgetful fibers need total genus at least 3")
    if not stability_status(graph).stable:
        raise DomainError("graph is not stable")
    if len(graph.edges) > CENSUS_EDGE_LIMIT:
        logger.warning(
            f"Fiber census over {len(graph.edges)} edges checks {2 ** len(graph.edges)} blow-ups"
        )

    edge_ids = sorted(edge.id for edge in graph.edges)
    entries = []
    for size in range(len(edge_ids) + 1):
        for subset in itertools.combinations(edge_ids, size):
            blown = blow_up_edges(graph, subset).graph
            if not stability_status(blown).quasistable:
                continue
            entries.append(FiberEntry(subset, blown, tuple(enumerate_balanced(blown, d))))
    entries.sort(key=lambda entry: (len(entry.edges), entry.edges))
    logger.info(f"Fiber census of degree {d}: {len(entries)} quasistable strata")
    return entries
