"""
Dual Graph Service
Marked dual graphs of pointed nodal curves: validation, subcurve invariants,
tail/bridge classification and (quasi)stability.
"""

import re
from collections import Counter
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Set, Tuple

import networkx as nx

from quasistab.config import logger
from quasistab.models import (
    BridgeRecord,
    Classification,
    ConsistencyError,
    DomainError,
    Edge,
    MappedGraph,
    MarkedDualGraph,
    StabilityStatus,
    SubcurveInvariants,
    TailRecord,
    ValidationResult,
    Vertex,
)


# ==================== Structure ====================


@lru_cache(maxsize=512)
def to_networkx(graph: MarkedDualGraph) -> nx.MultiGraph:
    """Return the graph as a networkx multigraph keyed by edge id (do not mutate)."""
    multigraph = nx.MultiGraph()
    for vertex in graph.vertices:
        multigraph.add_node(vertex.id, genus=vertex.genus, legs=vertex.legs)
    for edge in graph.edges:
        multigraph.add_edge(edge.u, edge.v, key=edge.id)
    return multigraph


def validate(graph: MarkedDualGraph) -> ValidationResult:
    """Collect every structural problem of the graph. Never raises."""
    violations: List[str] = []

    if not graph.vertices:
        return ValidationResult(("graph has no vertices",))

    id_counts = Counter(vertex.id for vertex in graph.vertices)
    for vid, count in id_counts.items():
        if count > 1:
            violations.append(f"duplicate vertex id {vid}")

    for vertex in graph.vertices:
        if vertex.genus < 0:
            violations.append(f"negative genus on vertex {vertex.id}")

    edge_counts = Counter(edge.id for edge in graph.edges)
    for eid, count in edge_counts.items():
        if count > 1:
            violations.append(f"duplicate edge id {eid}")

    dangling = False
    for edge in graph.edges:
        for end in (edge.u, edge.v):
            if end not in id_counts:
                violations.append(f"edge {edge.id} references unknown vertex {end}")
                dangling = True

    if graph.n < 0:
        violations.append(f"negative marking count {graph.n}")
    label_counts = Counter(label for vertex in graph.vertices for label in vertex.legs)
    for label in sorted(label_counts):
        if label_counts[label] > 1:
            violations.append(f"duplicate leg label {label}")
        if not 1 <= label <= graph.n:
            violations.append(f"leg label {label} out of range 1..{graph.n}")
    for label in range(1, graph.n + 1):
        if label not in label_counts:
            violations.append(f"missing leg label {label}")

    if not dangling and not nx.is_connected(to_networkx(graph)):
        violations.append("disconnected")

    return ValidationResult(tuple(violations))


def _require_valid(graph: MarkedDualGraph) -> None:
    result = validate(graph)
    if not result.ok:
        raise DomainError(f"invalid graph: {'; '.join(result.violations)}")


def total_genus(graph: MarkedDualGraph) -> int:
    """Arithmetic genus: sum of genera plus the first Betti number."""
    return sum(v.genus for v in graph.vertices) + len(graph.edges) - len(graph.vertices) + 1


def arithmetic_genus(graph: MarkedDualGraph, vertices: Iterable[str]) -> int:
    """Genus of the subcurve on the given vertices (the whole curve allowed)."""
    subset = frozenset(vertices)
    internal = sum(1 for edge in graph.edges if edge.u in subset and edge.v in subset)
    return sum(graph.genus_of(vid) for vid in subset) + internal - len(subset) + 1


def boundary_size(graph: MarkedDualGraph, vertices: Iterable[str]) -> int:
    """Number of edges with exactly one endpoint in the vertex set (k_Z)."""
    subset = frozenset(vertices)
    return sum(1 for edge in graph.edges if (edge.u in subset) != (edge.v in subset))


def subcurve_invariants(graph: MarkedDualGraph, subcurve: Iterable[str]) -> SubcurveInvariants:
    """Return g_Z, k_Z, w_Z = 2g_Z - 2 + k_Z and connectivity of a proper subcurve."""
    subset = frozenset(subcurve)
    if not subset:
        raise DomainError("subcurve is empty")
    unknown = subset - set(graph.vertex_ids)
    if unknown:
        raise DomainError(f"subcurve has unknown vertices {sorted(unknown)}")
    if len(subset) == len(graph.vertices):
        raise DomainError("subcurve is the whole curve")

    genus = arithmetic_genus(graph, subset)
    k = boundary_size(graph, subset)
    connected = nx.is_connected(to_networkx(graph).subgraph(subset))
    return SubcurveInvariants(genus=genus, k=k, w=2 * genus - 2 + k, connected=connected)


def is_smooth_rational(graph: MarkedDualGraph, vertex_id: str) -> bool:
    return graph.genus_of(vertex_id) == 0 and not graph.has_loop(vertex_id)


def special_points(graph: MarkedDualGraph, vertex_id: str) -> int:
    return graph.node_count(vertex_id) + len(graph.legs_of(vertex_id))


# ==================== Connected Subsets ====================


def _adjacency(graph: MarkedDualGraph, pool: FrozenSet[str]) -> Dict[str, Set[str]]:
    neighbours: Dict[str, Set[str]] = {vid: set() for vid in pool}
    for edge in graph.edges:
        if not edge.is_loop and edge.u in pool and edge.v in pool:
            neighbours[edge.u].add(edge.v)
            neighbours[edge.v].add(edge.u)
    return neighbours


def _connected_subsets(graph: MarkedDualGraph, pool: FrozenSet[str]) -> Iterator[FrozenSet[str]]:
    """Grow connected subsets of pool level by level, sorted by size then ids."""
    neighbours = _adjacency(graph, pool)
    level = {frozenset([vid]) for vid in pool}
    while level:
        yield from sorted(level, key=lambda subset: sorted(subset))
        grown = set()
        for subset in level:
            frontier = set().union(*(neighbours[vid] for vid in subset)) - subset
            for vid in frontier:
                grown.add(subset | {vid})
        level = grown


def connected_subcurves(
    graph: MarkedDualGraph, include_full: bool = False
) -> Iterator[FrozenSet[str]]:
    """Every connected vertex subset, by size then sorted ids."""
    everything = frozenset(graph.vertex_ids)
    for subset in _connected_subsets(graph, everything):
        if include_full or subset != everything:
            yield subset


def connected_core_subcurves(
    graph: MarkedDualGraph, classification: Classification
) -> Iterator[FrozenSet[str]]:
    """Connected subsets of core vertices that are proper subcurves."""
    everything = frozenset(graph.vertex_ids)
    for subset in _connected_subsets(graph, classification.core_vertices):
        if subset != everything:
            yield subset


# ==================== Classification ====================


def _tail_candidates(graph: MarkedDualGraph) -> List[TailRecord]:
    """Both sides of every separating edge that are genus-0 trees."""
    multigraph = to_networkx(graph)
    candidates = []
    for edge in graph.edges:
        if edge.is_loop:
            continue
        cut = multigraph.copy()
        cut.remove_edge(edge.u, edge.v, key=edge.id)
        if nx.is_connected(cut):
            continue
        for root in (edge.u, edge.v):
            side = frozenset(nx.node_connected_component(cut, root))
            if arithmetic_genus(graph, side) == 0:
                candidates.append(TailRecord(side, root, edge.id, edge.other(root)))
    return candidates


def _maximal_tails(graph: MarkedDualGraph) -> List[TailRecord]:
    candidates = _tail_candidates(graph)
    maximal = [
        tail
        for tail in candidates
        if not any(tail.vertices < other.vertices for other in candidates)
    ]
    for i, first in enumerate(maximal):
        for second in maximal[i + 1:]:
            if first.vertices & second.vertices:
                raise ConsistencyError(
                    f"maximal tails {sorted(first.vertices)} and {sorted(second.vertices)} overlap"
                )
    return sorted(maximal, key=lambda tail: sorted(tail.vertices))


def _order_chain(graph: MarkedDualGraph, component: FrozenSet[str]) -> Tuple[str, ...]:
    neighbours = _adjacency(graph, component)
    ends = sorted(vid for vid in component if len(neighbours[vid]) < 2)
    if not ends:
        raise ConsistencyError(f"rational chain {sorted(component)} closes into a cycle")
    chain = [ends[0]]
    while len(chain) < len(component):
        step = sorted(neighbours[chain[-1]] - set(chain))
        if not step:
            raise ConsistencyError(f"rational chain {sorted(component)} is not a path")
        chain.append(step[0])
    return tuple(chain)


def _outer_edges(graph: MarkedDualGraph, vertex_id: str, inside: FrozenSet[str]) -> List[Edge]:
    return [
        edge
        for edge in graph.incident_edges(vertex_id)
        if not edge.is_loop and edge.other(vertex_id) not in inside
    ]


def _maximal_bridges(
    graph: MarkedDualGraph, tails: List[TailRecord]
) -> Tuple[List[BridgeRecord], List[TailRecord]]:
    """Split off the bridge chains and move tails hanging on them inside the bridges."""
    tail_vertices = frozenset(vid for tail in tails for vid in tail.vertices)
    remaining = frozenset(graph.vertex_ids) - tail_vertices

    chain_candidates = set()
    for vid in remaining:
        if not is_smooth_rational(graph, vid):
            continue
        degree = sum(1 for edge in _outer_edges(graph, vid, tail_vertices))
        if degree == 2:
            chain_candidates.add(vid)

    bridges = []
    claimed: Set[str] = set()
    chain_graph = to_networkx(graph).subgraph(chain_candidates)
    for component in nx.connected_components(chain_graph):
        component = frozenset(component)
        chain = _order_chain(graph, component)
        outside = component | tail_vertices
        first_edges = _outer_edges(graph, chain[0], outside)
        last_edges = _outer_edges(graph, chain[-1], outside)
        if len(chain) == 1:
            attaching = tuple(edge.id for edge in first_edges)
        else:
            attaching = (first_edges[0].id, last_edges[0].id)
        if len(attaching) != 2:
            raise ConsistencyError(f"rational chain {list(chain)} does not meet the rest twice")

        attached = tuple(
            tuple(tail for tail in tails if tail.anchor == vid) for vid in chain
        )
        bridge = BridgeRecord(chain=chain, attached_tails=attached, attaching_edges=attaching)
        if bridge.vertices & claimed:
            overlap = sorted(bridge.vertices & claimed)
            raise ConsistencyError(f"maximal bridges overlap at {overlap}")
        claimed |= bridge.vertices
        bridges.append(bridge)

    bridges.sort(key=lambda bridge: bridge.chain)
    standalone = [tail for tail in tails if tail.anchor not in chain_candidates]
    return bridges, standalone


@lru_cache(maxsize=512)
def classify(graph: MarkedDualGraph) -> Classification:
    """Partition the vertices into core, maximal rational tails and maximal rational bridges."""
    _require_valid(graph)
    genus = total_genus(graph)
    if genus < 2:
        raise DomainError(f"classification needs total genus at least 2, got {genus}")

    tails = _maximal_tails(graph)
    bridges, standalone = _maximal_bridges(graph, tails)

    covered = frozenset(vid for tail in tails for vid in tail.vertices)
    covered |= frozenset(vid for bridge in bridges for vid in bridge.chain)
    core = frozenset(graph.vertex_ids) - covered

    destabilizing = frozenset(
        vid
        for vid in graph.vertex_ids
        if is_smooth_rational(graph, vid) and special_points(graph, vid) == 2
    )
    exceptional = frozenset(vid for vid in destabilizing if not graph.legs_of(vid))

    logger.debug(
        f"Classified graph: {len(standalone)} tails, {len(bridges)} bridges, core {sorted(core)}"
    )
    return Classification(
        maximal_tails=tuple(standalone),
        maximal_bridges=tuple(bridges),
        core_vertices=core,
        exceptional=exceptional,
        destabilizing=destabilizing,
    )


def stability_status(graph: MarkedDualGraph) -> StabilityStatus:
    """Semistable, stable and quasistable flags of a valid graph."""
    _require_valid(graph)
    genus = total_genus(graph)
    if 2 * genus - 2 + graph.n <= 0:
        return StabilityStatus(False, False, False)

    rational = [vid for vid in graph.vertex_ids if is_smooth_rational(graph, vid)]
    semistable = all(special_points(graph, vid) >= 2 for vid in rational)
    stable = all(special_points(graph, vid) >= 3 for vid in rational)
    if not semistable:
        return StabilityStatus(False, False, False)
    if genus < 2:
        return StabilityStatus(True, stable, stable)

    classification = classify(graph)
    quasistable = classification.destabilizing <= classification.exceptional
    if classification.exceptional & classification.tail_vertices:
        quasistable = False
    for bridge in classification.maximal_bridges:
        if len(classification.exceptional & set(bridge.chain)) > 1:
            quasistable = False
    return StabilityStatus(semistable=True, stable=stable, quasistable=quasistable)


def require_quasistable(graph: MarkedDualGraph, minimum_genus: int = 3) -> Classification:
    """Classification of a quasistable graph of at least the given genus, else DomainError."""
    genus = total_genus(graph)
    if genus < minimum_genus:
        raise DomainError(f"total genus must be at least {minimum_genus}, got {genus}")
    if not stability_status(graph).quasistable:
        raise DomainError("graph is not quasistable")
    return classify(graph)


# ==================== Rewriting ====================


_EDGE_ID = re.compile(r"e(\d+)$")


def fresh_edge_ids(graph: MarkedDualGraph, count: int, taken: Iterable[str] = ()) -> List[str]:
    """Return count edge ids of the form eN not used by the graph."""
    used = {edge.id for edge in graph.edges} | set(taken)
    numbers = [int(match.group(1)) for match in map(_EDGE_ID.match, used) if match]
    start = max(numbers, default=0) + 1
    return [f"e{start + i}" for i in range(count)]


def fresh_vertex_id(graph: MarkedDualGraph, stem: str, taken: Iterable[str] = ()) -> str:
    used = set(graph.vertex_ids) | set(taken)
    if stem not in used:
        return stem
    suffix = 1
    while f"{stem}_{suffix}" in used:
        suffix += 1
    return f"{stem}_{suffix}"


def blow_up_edges(graph: MarkedDualGraph, edges: Iterable[str]) -> MappedGraph:
    """Insert a legless genus-0 vertex in the middle of each listed edge.

    The first half keeps the edge id, the second half gets a fresh id appended
    at the end; new vertex ids are x_<edge-id>.
    """
    selected = set(edges)
    unknown = selected - {edge.id for edge in graph.edges}
    if unknown:
        raise DomainError(f"unknown edges {sorted(unknown)}")

    ordered = [edge for edge in graph.edges if edge.id in selected]
    extra_ids = fresh_edge_ids(graph, len(ordered))
    new_vertices: List[str] = []
    rewritten: Dict[str, Edge] = {}
    appended: List[Edge] = []
    for edge, extra_id in zip(ordered, extra_ids):
        middle = fresh_vertex_id(graph, f"x_{edge.id}", taken=new_vertices)
        new_vertices.append(middle)
        rewritten[edge.id] = Edge(edge.id, edge.u, middle)
        appended.append(Edge(extra_id, middle, edge.v))

    blown = MarkedDualGraph(
        vertices=graph.vertices + tuple(Vertex(vid, 0) for vid in new_vertices),
        edges=tuple(rewritten.get(edge.id, edge) for edge in graph.edges) + tuple(appended),
        n=graph.n,
    )
    return MappedGraph(blown, {vid: vid for vid in graph.vertex_ids}, tuple(new_vertices))


def is_relabeling(
    graph: MarkedDualGraph, other: MarkedDualGraph, vertex_map: Mapping[str, str]
) -> bool:
    """True if vertex_map carries graph onto other, ignoring edge ids."""
    if graph.n != other.n or len(graph.vertices) != len(other.vertices):
        return False
    if set(vertex_map) != set(graph.vertex_ids):
        return False
    if sorted(vertex_map.values()) != sorted(other.vertex_ids):
        return False
    for vertex in graph.vertices:
        image = vertex_map[vertex.id]
        if other.genus_of(image) != vertex.genus or other.legs_of(image) != vertex.legs:
            return False

    def pairs(edges: Iterable[Edge], rename: Optional[Mapping[str, str]] = None) -> Counter:
        rename = rename or {}
        return Counter(
            tuple(sorted((rename.get(edge.u, edge.u), rename.get(edge.v, edge.v))))
            for edge in edges
        )

    return pairs(graph.edges, vertex_map) == pairs(other.edges)
