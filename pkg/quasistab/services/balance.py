"""
Balance Service
Balanced multidegrees on quasistable pointed curves: exact bounds, forced
tail and bridge degrees, the balanced test, enumeration and the omega twist.
"""

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Set, Tuple

from quasistab.config import logger
from quasistab.models import (
    BRIDGE_PATTERN,
    CORE_INEQUALITY,
    EXCEPTIONAL_DEGREE,
    TAIL_DEGREE,
    TAIL_VERTEX_FORCED,
    BalanceReport,
    BridgeChoice,
    Classification,
    DegreeBounds,
    DomainError,
    ForcedDegrees,
    MarkedDualGraph,
    Multidegree,
    Violation,
)
from quasistab.services.dualgraph import (
    arithmetic_genus,
    boundary_size,
    connected_core_subcurves,
    connected_subcurves,
    require_quasistable,
    stability_status,
    subcurve_invariants,
    total_genus,
)

# A bridge assignment is the set of raised chain vertices.
BridgeAssignment = FrozenSet[str]


# ==================== Bounds ====================


def _scaled_bounds(genus: int, d: int, w: int, k: int, t: int, b: int) -> DegreeBounds:
    """m_Z and M_Z times 2(2g-2)."""
    half = 2 * genus - 2
    scale = 2 * half
    lower = 2 * (d * w + (3 * genus - 3 - d) * t) + scale * b - half * k
    upper = 2 * (d * w + (genus - 1 - d) * t) - scale * b + half * k
    return DegreeBounds(
        lower=Fraction(lower, scale),
        upper=Fraction(upper, scale),
        lower_scaled=lower,
        upper_scaled=upper,
        scale=scale,
    )


def degree_bounds(
    graph: MarkedDualGraph,
    classification: Classification,
    subcurve: Iterable[str],
    d: int,
    zero_bridges_on_z: int,
    tails_on_z: int,
) -> DegreeBounds:
    """Lower and upper bound on deg_Z for a connected core subcurve Z."""
    genus = total_genus(graph)
    if genus < 3:
        raise DomainError(f"degree bounds need total genus at least 3, got {genus}")
    subset = frozenset(subcurve)
    if not subset <= classification.core_vertices:
        raise DomainError(f"subcurve {sorted(subset)} leaves the core")
    invariants = subcurve_invariants(graph, subset)
    if not invariants.connected:
        raise DomainError(f"subcurve {sorted(subset)} is not connected")
    return _scaled_bounds(genus, d, invariants.w, invariants.k, tails_on_z, zero_bridges_on_z)


# ==================== Layout ====================


@dataclass(frozen=True)
class _CoreConstraint:
    vertices: FrozenSet[str]
    w: int
    k: int
    tails: int
    double_bridges: Tuple[int, ...]


@dataclass(frozen=True)
class _Layout:
    genus: int
    classification: Classification
    forced: ForcedDegrees
    constraints: Tuple[_CoreConstraint, ...]

    def singleton(self, vertex_id: str) -> Optional[_CoreConstraint]:
        for constraint in self.constraints:
            if constraint.vertices == {vertex_id}:
                return constraint
        return None


def _bridge_ends(graph: MarkedDualGraph, classification: Classification) -> List[Tuple[str, str]]:
    ends = []
    for bridge in classification.maximal_bridges:
        first, last = (graph.edge(eid) for eid in bridge.attaching_edges)
        ends.append((first.other(bridge.chain[0]), last.other(bridge.chain[-1])))
    return ends


def _forced(graph: MarkedDualGraph, classification: Classification) -> ForcedDegrees:
    fixed = {
        vid: boundary_size(graph, [vid]) - 2
        for tail in classification.all_tails
        for vid in sorted(tail.vertices)
    }
    choices = []
    for bridge in classification.maximal_bridges:
        low = tuple(boundary_size(graph, [vid]) - 2 for vid in bridge.chain)
        exceptional = [vid for vid in bridge.chain if vid in classification.exceptional]
        choices.append(BridgeChoice(bridge, low, exceptional[0] if exceptional else None))
    return ForcedDegrees(fixed=fixed, choices=tuple(choices))


@lru_cache(maxsize=256)
def _layout(graph: MarkedDualGraph) -> _Layout:
    classification = require_quasistable(graph)
    ends = _bridge_ends(graph, classification)
    constraints = []
    for subset in connected_core_subcurves(graph, classification):
        invariants = subcurve_invariants(graph, subset)
        tails = sum(1 for tail in classification.maximal_tails if tail.anchor in subset)
        double = tuple(i for i, (a, b) in enumerate(ends) if a in subset and b in subset)
        constraints.append(
            _CoreConstraint(subset, invariants.w, invariants.k, tails, double)
        )
    logger.debug(f"Balance layout with {len(constraints)} core subcurves")
    return _Layout(
        genus=total_genus(graph),
        classification=classification,
        forced=_forced(graph, classification),
        constraints=tuple(constraints),
    )


def _check_keys(graph: MarkedDualGraph, degrees: Mapping[str, int]) -> None:
    if set(degrees) != set(graph.vertex_ids):
        raise DomainError("multidegree keys do not match graph vertices")


def forced_tail_bridge_degrees(
    graph: MarkedDualGraph, classification: Classification
) -> ForcedDegrees:
    """Degrees pinned on tail vertices and the degree patterns allowed on each bridge."""
    if not stability_status(graph).quasistable:
        raise DomainError("graph is not quasistable")
    return _forced(graph, classification)


# ==================== Balanced Test ====================


def _constraint_bounds(
    layout: _Layout, constraint: _CoreConstraint, d: int, zero: Set[int]
) -> DegreeBounds:
    b = sum(1 for index in constraint.double_bridges if index in zero)
    return _scaled_bounds(layout.genus, d, constraint.w, constraint.k, constraint.tails, b)


def _core_violation(
    layout: _Layout, degrees: Mapping[str, int], zero: Set[int], d: int
) -> Optional[Violation]:
    for constraint in layout.constraints:
        bounds = _constraint_bounds(layout, constraint, d, zero)
        actual = sum(degrees[vid] for vid in constraint.vertices)
        if not bounds.contains(actual):
            return Violation(
                CORE_INEQUALITY, constraint.vertices, bounds.lower, bounds.upper, actual
            )
    return None


def _raised_vertex(choice: BridgeChoice, degrees: Mapping[str, int]) -> Tuple[bool, Optional[str]]:
    """Whether the bridge follows the allowed pattern, and which chain vertex is raised."""
    lifts = [degrees[vid] - low for vid, low in zip(choice.bridge.chain, choice.low)]
    if any(lift not in (0, 1) for lift in lifts) or sum(lifts) > 1:
        return False, None
    raised = [vid for vid, lift in zip(choice.bridge.chain, lifts) if lift == 1]
    return True, raised[0] if raised else None


def _first_violation(layout: _Layout, degrees: Mapping[str, int]) -> Optional[Violation]:
    classification = layout.classification

    for vid in sorted(classification.exceptional):
        if degrees[vid] != 1:
            return Violation(
                EXCEPTIONAL_DEGREE, frozenset([vid]), Fraction(1), Fraction(1), degrees[vid]
            )

    for tail in classification.all_tails:
        actual = sum(degrees[vid] for vid in tail.vertices)
        if actual != -1:
            return Violation(TAIL_DEGREE, tail.vertices, Fraction(-1), Fraction(-1), actual)
        for vid in sorted(tail.vertices):
            forced = layout.forced.fixed[vid]
            if degrees[vid] != forced:
                return Violation(
                    TAIL_VERTEX_FORCED,
                    frozenset([vid]),
                    Fraction(forced),
                    Fraction(forced),
                    degrees[vid],
                )

    zero: Set[int] = set()
    for index, choice in enumerate(layout.forced.choices):
        ok, raised = _raised_vertex(choice, degrees)
        if not ok:
            actual = sum(degrees[vid] for vid in choice.bridge.vertices)
            return Violation(
                BRIDGE_PATTERN, choice.bridge.vertices, Fraction(0), Fraction(1), actual
            )
        if raised is None:
            zero.add(index)

    return _core_violation(layout, degrees, zero, sum(degrees.values()))


def is_balanced(graph: MarkedDualGraph, mdeg: Mapping[str, int]) -> BalanceReport:
    """Check the balanced condition; the report carries the first failed constraint."""
    layout = _layout(graph)
    _check_keys(graph, mdeg)
    violation = _first_violation(layout, mdeg)
    if violation is not None:
        logger.debug(f"Not balanced: {violation.kind} on {sorted(violation.subcurve)}")
    return BalanceReport(violation)


# ==================== Enumeration ====================


def enumerate_balanced(graph: MarkedDualGraph, d: int) -> List[Multidegree]:
    """All balanced multidegrees of total d, sorted by degrees in vertex-id order."""
    layout = _layout(graph)
    if len(graph.vertices) == 1:
        return [Multidegree.of({graph.vertex_ids[0]: d})]

    choices = layout.forced.choices
    core = sorted(layout.classification.core_vertices)
    results = []
    for raised in itertools.product(*(choice.raise_options for choice in choices)):
        degrees: Dict[str, int] = dict(layout.forced.fixed)
        zero = set()
        for index, (choice, vertex) in enumerate(zip(choices, raised)):
            degrees.update(choice.pattern(vertex))
            if vertex is None:
                zero.add(index)
        remaining = d - sum(degrees.values())

        if not core:
            if remaining == 0 and _core_violation(layout, degrees, zero, d) is None:
                results.append(Multidegree.of(degrees))
            continue

        ranges = [
            _constraint_bounds(layout, layout.singleton(vid), d, zero).integer_range for vid in core
        ]
        for head in itertools.product(*ranges[:-1]):
            last = remaining - sum(head)
            if last not in ranges[-1]:
                continue
            degrees.update(zip(core[:-1], head))
            degrees[core[-1]] = last
            if _core_violation(layout, degrees, zero, d) is None:
                results.append(Multidegree.of(degrees))

    results.sort()
    logger.info(f"Enumerated {len(results)} balanced multidegrees of degree {d}")
    return results


# ==================== Unpointed Basic Inequality ====================


def is_gieseker_balanced(graph: MarkedDualGraph, mdeg: Mapping[str, int]) -> bool:
    """Basic inequality on every connected proper subcurve of a legless curve."""
    if graph.n > 0:
        raise DomainError("the basic inequality applies to curves without markings")
    classification = require_quasistable(graph, minimum_genus=2)
    _check_keys(graph, mdeg)

    if any(mdeg[vid] != 1 for vid in classification.exceptional):
        return False
    genus = total_genus(graph)
    d = sum(mdeg.values())
    half = 2 * genus - 2
    for subset in connected_subcurves(graph):
        invariants = subcurve_invariants(graph, subset)
        actual = sum(mdeg[vid] for vid in subset) * 2 * half
        center = 2 * d * invariants.w
        if not center - half * invariants.k <= actual <= center + half * invariants.k:
            return False
    return True


# ==================== Twist ====================


def omega_pullback_degrees(
    graph: MarkedDualGraph, classification: Classification
) -> Dict[str, int]:
    """Per-vertex degree of the dualizing sheaf pulled back from the unpointed curve."""
    if len(graph.vertices) == 1:
        return {graph.vertex_ids[0]: 2 * total_genus(graph) - 2}
    shifts = {vid: 0 for vid in graph.vertex_ids}
    for vid in classification.core_vertices:
        w = 2 * arithmetic_genus(graph, [vid]) - 2 + boundary_size(graph, [vid])
        shifts[vid] = w - classification.tails_at(vid)
    return shifts


def twist_by_omega(
    graph: MarkedDualGraph, classification: Classification, mdeg: Mapping[str, int], m: int
) -> Multidegree:
    """Add m times the pulled-back dualizing degrees; total grows by m(2g-2)."""
    _layout(graph)
    _check_keys(graph, mdeg)
    shifts = omega_pullback_degrees(graph, classification)
    return Multidegree.of({vid: mdeg[vid] + m * shifts[vid] for vid in graph.vertex_ids})


# ==================== Bridge Assignments ====================


def bridge_assignments(
    graph: MarkedDualGraph, classification: Classification
) -> List[BridgeAssignment]:
    """Every admissible set of raised chain vertices."""
    choices = forced_tail_bridge_degrees(graph, classification).choices
    assignments = []
    for raised in itertools.product(*(choice.raise_options for choice in choices)):
        assignments.append(frozenset(vid for vid in raised if vid is not None))
    return assignments


def bridge_assignment_of(
    graph: MarkedDualGraph, classification: Classification, mdeg: Mapping[str, int]
) -> BridgeAssignment:
    """The raised chain vertices of a multidegree that follows the bridge patterns."""
    raised = set()
    for choice in forced_tail_bridge_degrees(graph, classification).choices:
        ok, vertex = _raised_vertex(choice, mdeg)
        if not ok:
            chain = list(choice.bridge.chain)
            raise DomainError(f"bridge {chain} does not follow a bridge pattern")
        if vertex is not None:
            raised.add(vertex)
    return frozenset(raised)


# ==================== Stack Numerics ====================


def dm_condition(d: int, g: int) -> bool:
    """True iff gcd(d - g + 1, 2g - 2) = 1."""
    return math.gcd(d - g + 1, 2 * g - 2) == 1


def stack_dimension(g: int, n: int) -> int:
    return 4 * g - 3 + n
