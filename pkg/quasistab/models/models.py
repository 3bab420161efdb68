"""
Toolkit Models
Data classes and type definitions.
"""

from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple, Union

from quasistab.models.errors import DomainError


# ==================== Dual Graphs ====================


@dataclass(frozen=True)
class Vertex:
    """A component of the curve: its genus and the marking labels it carries."""
    id: str
    genus: int
    legs: Tuple[int, ...] = ()


@dataclass(frozen=True)
class Edge:
    """A node of the curve, joining two (possibly equal) vertices."""
    id: str
    u: str
    v: str

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    def other(self, vertex_id: str) -> str:
        """Return the endpoint opposite to vertex_id."""
        return self.v if self.u == vertex_id else self.u

    def touches(self, vertex_id: str) -> bool:
        return vertex_id in (self.u, self.v)


@dataclass(frozen=True)
class MarkedDualGraph:
    """Dual graph of an n-pointed nodal curve.

    Vertices and edges keep their order; edge ids are unique strings and
    parallel edges or loops are separate Edge entries.
    """
    vertices: Tuple[Vertex, ...]
    edges: Tuple[Edge, ...] = ()
    n: int = 0

    @classmethod
    def build(
        cls,
        vertices: Iterable[Tuple[str, int, Iterable[int]]],
        edges: Iterable[Tuple[str, str]] = (),
        n: Optional[int] = None,
    ) -> "MarkedDualGraph":
        """Build a graph from (id, genus, legs) triples and endpoint pairs.

        Edges are numbered e1, e2, ... in the given order. When n is omitted it
        is the largest leg label present.
        """
        vertex_tuple = tuple(
            Vertex(vid, genus, tuple(sorted(legs))) for vid, genus, legs in vertices
        )
        edge_tuple = tuple(Edge(f"e{i}", u, v) for i, (u, v) in enumerate(edges, start=1))
        if n is None:
            n = max((label for vertex in vertex_tuple for label in vertex.legs), default=0)
        return cls(vertex_tuple, edge_tuple, n)

    @cached_property
    def vertex_ids(self) -> Tuple[str, ...]:
        return tuple(vertex.id for vertex in self.vertices)

    @cached_property
    def _vertex_index(self) -> Dict[str, Vertex]:
        return {vertex.id: vertex for vertex in self.vertices}

    @cached_property
    def _edge_index(self) -> Dict[str, Edge]:
        return {edge.id: edge for edge in self.edges}

    def has_vertex(self, vertex_id: str) -> bool:
        return vertex_id in self._vertex_index

    def has_edge(self, edge_id: str) -> bool:
        return edge_id in self._edge_index

    def vertex(self, vertex_id: str) -> Vertex:
        return self._vertex_index[vertex_id]

    def edge(self, edge_id: str) -> Edge:
        return self._edge_index[edge_id]

    def genus_of(self, vertex_id: str) -> int:
        return self._vertex_index[vertex_id].genus

    def legs_of(self, vertex_id: str) -> Tuple[int, ...]:
        return self._vertex_index[vertex_id].legs

    def leg_owner(self, label: int) -> Optional[str]:
        """Return the vertex carrying marking label, if any."""
        for vertex in self.vertices:
            if label in vertex.legs:
                return vertex.id
        return None

    def incident_edges(self, vertex_id: str) -> List[Edge]:
        return [edge for edge in self.edges if edge.touches(vertex_id)]

    def has_loop(self, vertex_id: str) -> bool:
        return any(edge.is_loop and edge.u == vertex_id for edge in self.edges)

    def node_count(self, vertex_id: str) -> int:
        """Number of non-loop edges at the vertex (k_v)."""
        return sum(1 for edge in self.edges if edge.touches(vertex_id) and not edge.is_loop)


# ==================== Subcurves and Classification ====================


@dataclass(frozen=True)
class ValidationResult:
    """Outcome of structural validation; ok when no violation was found."""
    violations: Tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class SubcurveInvariants:
    """Arithmetic genus, boundary size and dualizing degree of a subcurve."""
    genus: int
    k: int
    w: int
    connected: bool


@dataclass(frozen=True)
class TailRecord:
    """A maximal rational tail: its vertices and how it hangs off the rest."""
    vertices: FrozenSet[str]
    root: str
    attaching_edge: str
    anchor: str


@dataclass(frozen=True)
class BridgeRecord:
    """A maximal rational bridge.

    The chain runs from the endpoint with the smaller id; attached_tails lists
    the tails hanging off each chain vertex, and attaching_edges are the edges
    leaving the first and the last chain vertex.
    """
    chain: Tuple[str, ...]
    attached_tails: Tuple[Tuple[TailRecord, ...], ...]
    attaching_edges: Tuple[str, str]

    @property
    def vertices(self) -> FrozenSet[str]:
        found = set(self.chain)
        for tails in self.attached_tails:
            for tail in tails:
                found |= tail.vertices
        return frozenset(found)

    @property
    def tails(self) -> Tuple[TailRecord, ...]:
        return tuple(tail for tails in self.attached_tails for tail in tails)


@dataclass(frozen=True)
class Classification:
    """Partition of the vertices into core, tails and bridges."""
    maximal_tails: Tuple[TailRecord, ...]
    maximal_bridges: Tuple[BridgeRecord, ...]
    core_vertices: FrozenSet[str]
    exceptional: FrozenSet[str]
    destabilizing: FrozenSet[str]

    @property
    def all_tails(self) -> Tuple[TailRecord, ...]:
        """Standalone tails followed by the tails recorded inside bridges."""
        return self.maximal_tails + tuple(
            tail for bridge in self.maximal_bridges for tail in bridge.tails
        )

    @property
    def tail_vertices(self) -> FrozenSet[str]:
        return frozenset(vid for tail in self.all_tails for vid in tail.vertices)

    @property
    def chain_vertices(self) -> FrozenSet[str]:
        return frozenset(vid for bridge in self.maximal_bridges for vid in bridge.chain)

    def tails_at(self, vertex_id: str) -> int:
        """Number of standalone maximal tails anchored at the vertex (t_v)."""
        return sum(1 for tail in self.maximal_tails if tail.anchor == vertex_id)

    def bridge_of(self, vertex_id: str) -> Optional[BridgeRecord]:
        for bridge in self.maximal_bridges:
            if vertex_id in bridge.chain:
                return bridge
        return None


@dataclass(frozen=True)
class StabilityStatus:
    semistable: bool
    stable: bool
    quasistable: bool


@dataclass(frozen=True)
class MappedGraph:
    """A graph produced from another one, with the old-to-new vertex map."""
    graph: MarkedDualGraph
    vertex_map: Mapping
    new_vertices: Tuple[str, ...] = ()


# ==================== Multidegrees and Balance ====================


@dataclass(frozen=True, order=True)
class Multidegree(Mapping):
    """Integer degree per vertex, stored sorted by vertex id.

    Behaves as a read-only mapping; ordering compares degrees in vertex-id order.
    """
    degrees: Tuple[Tuple[str, int], ...]

    @classmethod
    def of(cls, values: Mapping) -> "Multidegree":
        return cls(tuple(sorted((str(key), int(value)) for key, value in values.items())))

    def __getitem__(self, vertex_id: str) -> int:
        for key, value in self.degrees:
            if key == vertex_id:
                return value
        raise KeyError(vertex_id)

    def __iter__(self) -> Iterator[str]:
        return (key for key, _ in self.degrees)

    def __len__(self) -> int:
        return len(self.degrees)

    @property
    def total(self) -> int:
        return sum(value for _, value in self.degrees)

    def degree_on(self, vertices: Iterable[str]) -> int:
        lookup = dict(self.degrees)
        return sum(lookup[vid] for vid in vertices)

    def updated(self, changes: Mapping) -> "Multidegree":
        merged = dict(self.degrees)
        merged.update(changes)
        return Multidegree.of(merged)

    def without(self, vertex_id: str) -> "Multidegree":
        return Multidegree(tuple(item for item in self.degrees if item[0] != vertex_id))


@dataclass(frozen=True)
class DegreeBounds:
    """Lower and upper bound on a subcurve degree.

    The *_scaled values are the bounds multiplied by scale = 2(2g-2), so that
    membership is an integer comparison.
    """
    lower: Fraction
    upper: Fraction
    lower_scaled: int
    upper_scaled: int
    scale: int

    def contains(self, degree: int) -> bool:
        return self.lower_scaled <= degree * self.scale <= self.upper_scaled

    @property
    def integer_range(self) -> range:
        low = -(-self.lower_scaled // self.scale)
        high = self.upper_scaled // self.scale
        return range(low, high + 1)


EXCEPTIONAL_DEGREE = "exceptional-degree"
TAIL_DEGREE = "tail-degree"
TAIL_VERTEX_FORCED = "tail-vertex-forced"
BRIDGE_PATTERN = "bridge-pattern"
CORE_INEQUALITY = "core-inequality"


@dataclass(frozen=True)
class Violation:
    """The first constraint a multidegree fails."""
    kind: str
    subcurve: FrozenSet[str]
    lower: Fraction
    upper: Fraction
    actual: int


@dataclass(frozen=True)
class BalanceReport:
    violation: Optional[Violation] = None

    @property
    def verdict(self) -> bool:
        return self.violation is None


@dataclass(frozen=True)
class BridgeChoice:
    """Degree options on one maximal bridge.

    low gives k-2 per chain vertex; at most one chain vertex is raised by one,
    and an exceptional chain vertex is always the raised one.
    """
    bridge: BridgeRecord
    low: Tuple[int, ...]
    exceptional: Optional[str] = None

    @property
    def raise_options(self) -> Tuple[Optional[str], ...]:
        if self.exceptional is not None:
            return (self.exceptional,)
        return (None,) + self.bridge.chain

    def pattern(self, raised: Optional[str]) -> Dict[str, int]:
        return {
            vid: low + (1 if vid == raised else 0) for vid, low in zip(self.bridge.chain, self.low)
        }


@dataclass(frozen=True)
class ForcedDegrees:
    """Degrees fixed on tail vertices plus the choice structure on bridges."""
    fixed: Mapping
    choices: Tuple[BridgeChoice, ...]

    @property
    def determined(self) -> Dict[str, int]:
        """Fixed degrees together with bridges that admit a single pattern."""
        values = dict(self.fixed)
        for choice in self.choices:
            options = choice.raise_options
            if len(options) == 1:
                values.update(choice.pattern(options[0]))
        return values


# ==================== Morphisms ====================


@dataclass(frozen=True)
class OnVertex:
    vertex: str


@dataclass(frozen=True)
class AtNode:
    edge: str


@dataclass(frozen=True)
class AtMarking:
    label: int


PointLocation = Union[OnVertex, AtNode, AtMarking]


@dataclass(frozen=True)
class ContractionOutcome:
    graph: MarkedDualGraph
    multidegree: Multidegree
    delta: PointLocation
    vertex_map: Mapping
    contracted: Optional[str] = None


@dataclass(frozen=True)
class StabilizationOutcome:
    graph: MarkedDualGraph
    multidegree: Multidegree
    vertex_map: Mapping
    new_vertex: Optional[str] = None


@dataclass(frozen=True)
class ForgetOutcome:
    """Result of forgetting markings: unpointed graph, degrees and vertex map."""
    graph: MarkedDualGraph
    multidegree: Multidegree
    vertex_map: Mapping


@dataclass(frozen=True)
class FiberEntry:
    """One stratum of the forgetful fiber: the blown-up edges and its balanced degrees."""
    edges: Tuple[str, ...]
    graph: MarkedDualGraph
    multidegrees: Tuple[Multidegree, ...]

    @property
    def count(self) -> int:
        return len(self.multidegrees)


# ==================== Criteria ====================


@dataclass(frozen=True)
class CriterionWitness:
    subcurve: FrozenSet[str]
    degree: int
    threshold: int


@dataclass(frozen=True)
class CriterionReport:
    witness: Optional[CriterionWitness] = None

    @property
    def holds(self) -> bool:
        return self.witness is None


# ==================== Corpus and Documents ====================


@dataclass(frozen=True)
class CorpusParams:
    """Bounds for random quasistable graphs."""
    max_vertices: int = 5
    max_edges: int = 7
    max_genus_per_vertex: int = 2
    max_legs: int = 3
    degree_bound: int = 5
    seed: int = 0
    min_genus_per_vertex: int = 0
    allow_loops: bool = True
    max_total_genus: Optional[int] = None

    def __post_init__(self):
        if self.max_vertices < 1 or self.degree_bound < 1:
            raise DomainError("max_vertices and degree_bound must be positive")
        if min(self.max_edges, self.max_legs, self.min_genus_per_vertex) < 0:
            raise DomainError("edge, leg and genus bounds must be non-negative")
        if self.min_genus_per_vertex > self.max_genus_per_vertex:
            raise DomainError("min_genus_per_vertex exceeds max_genus_per_vertex")
        if self.max_total_genus is not None and self.max_total_genus < 3:
            raise DomainError("max_total_genus must be at least 3")


@dataclass(frozen=True)
class GraphDocument:
    """A graph with named multidegrees, as stored in a JSON document."""
    graph: MarkedDualGraph
    multidegrees: Mapping = field(default_factory=dict)
    version: int = 1
