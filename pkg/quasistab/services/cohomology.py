"""
Cohomology Service
Degree criteria on connected subcurves that guarantee vanishing, global
generation, section counts and normal generation.

A failed report means the criterion is not established, nothing more.
"""

from typing import Callable, Iterable, Mapping, Optional, Tuple

from quasistab.config import THRESHOLD_SEARCH_LIMIT, logger
from quasistab.models import (
    CriterionReport,
    CriterionWitness,
    DomainError,
    MarkedDualGraph,
    Multidegree,
)
from quasistab.services.balance import enumerate_balanced, is_balanced
from quasistab.services.dualgraph import (
    arithmetic_genus,
    connected_subcurves,
    stability_status,
    total_genus,
)


def omega_twist_multidegree(
    graph: MarkedDualGraph, a: int, legs: Iterable[int] = ()
) -> Multidegree:
    """Multidegree of omega^a twisted by the listed markings."""
    chosen = set(legs)
    degrees = {}
    for vertex in graph.vertices:
        endpoints = sum(
            (2 if edge.is_loop else 1) for edge in graph.edges if edge.touches(vertex.id)
        )
        marked = sum(1 for label in vertex.legs if label in chosen)
        degrees[vertex.id] = a * (2 * vertex.genus - 2 + endpoints) + marked
    return Multidegree.of(degrees)


def _scan(
    graph: MarkedDualGraph, mdeg: Mapping[str, int], threshold: Callable[[frozenset], int]
) -> CriterionReport:
    """First connected subcurve (whole curve included) whose degree is below threshold."""
    if set(mdeg) != set(graph.vertex_ids):
        raise DomainError("multidegree keys do not match graph vertices")
    for subset in connected_subcurves(graph, include_full=True):
        degree = sum(mdeg[vid] for vid in subset)
        bound = threshold(subset)
        if degree < bound:
            return CriterionReport(CriterionWitness(subset, degree, bound))
    return CriterionReport()


def h1_vanishing(graph: MarkedDualGraph, mdeg: Mapping[str, int]) -> CriterionReport:
    """deg_Z >= 2g_Z - 1 on every connected subcurve."""
    return _scan(graph, mdeg, lambda subset: 2 * arithmetic_genus(graph, subset) - 1)


def base_point_free_criterion(graph: MarkedDualGraph, mdeg: Mapping[str, int]) -> CriterionReport:
    """deg_Z >= 2g_Z on every connected subcurve."""
    return _scan(graph, mdeg, lambda subset: 2 * arithmetic_genus(graph, subset))


def h0_if_criterion(graph: MarkedDualGraph, mdeg: Mapping[str, int]) -> Optional[int]:
    """d - g + 1 when every connected subcurve has degree at least 2g - 2 (total genus)."""
    genus = total_genus(graph)
    report = _scan(graph, mdeg, lambda subset: 2 * genus - 2)
    if not report.holds:
        return None
    return sum(mdeg.values()) - genus + 1


def normal_generation_hypothesis(
    graph: MarkedDualGraph, mdeg: Mapping[str, int]
) -> Tuple[CriterionReport, Multidegree]:
    """Check deg_Z >= 2g everywhere; also return the degrees of L twisted by omega(p_1+...+p_n)."""
    genus = total_genus(graph)
    if genus < 2:
        raise DomainError(f"normal generation needs total genus at least 2, got {genus}")
    if not stability_status(graph).semistable:
        raise DomainError("graph is not semistable")
    report = _scan(graph, mdeg, lambda subset: 2 * genus)
    twist = omega_twist_multidegree(graph, 1, range(1, graph.n + 1))
    shifted = Multidegree.of({vid: mdeg[vid] + twist[vid] for vid in graph.vertex_ids})
    return report, shifted


def _dualizing(graph: MarkedDualGraph, drop_last: bool) -> Multidegree:
    last = graph.n - 1 if drop_last else graph.n
    return omega_twist_multidegree(graph, 1, range(1, last + 1))


def dualizing_power_report(
    graph: MarkedDualGraph, m: int, drop_last: bool = False
) -> CriterionReport:
    """Global generation test for the m-th power of omega(p_1+...+p_n), optionally without p_n."""
    if m < 2:
        raise DomainError(f"power must be at least 2, got {m}")
    if drop_last and graph.n == 0:
        raise DomainError("no marking to drop")
    genus = total_genus(graph)
    if 2 * genus - 2 + graph.n <= 0:
        raise DomainError("curve has 2g - 2 + n <= 0")
    if not stability_status(graph).quasistable:
        raise DomainError("graph is not quasistable")

    base = _dualizing(graph, drop_last)
    power = Multidegree.of({vid: m * base[vid] for vid in graph.vertex_ids})
    return _scan(graph, power, lambda subset: 2 * arithmetic_genus(graph, subset))


def balanced_large_d_report(
    graph: MarkedDualGraph, mdeg: Mapping[str, int], k: int
) -> CriterionReport:
    """Global generation test for L(p_1+...+p_{n-1}) twisted by omega(p_1+...+p_{n-1})^-k."""
    if graph.n == 0:
        raise DomainError("graph has no markings")
    if k > 1:
        raise DomainError(f"twist exponent must be at most 1, got {k}")
    if not is_balanced(graph, mdeg).verdict:
        raise DomainError("multidegree is not balanced")

    legs = range(1, graph.n)
    marked = omega_twist_multidegree(graph, 0, legs)
    dualizing = omega_twist_multidegree(graph, 1, legs)
    bundle = Multidegree.of(
        {vid: mdeg[vid] + marked[vid] - k * dualizing[vid] for vid in graph.vertex_ids}
    )
    return _scan(graph, bundle, lambda subset: 2 * arithmetic_genus(graph, subset))


def positivity_report(graph: MarkedDualGraph, mdeg: Mapping[str, int]) -> CriterionReport:
    """Positive degree of L(p_1+...+p_n) on every vertex."""
    marked = omega_twist_multidegree(graph, 0, range(1, graph.n + 1))
    for vid in graph.vertex_ids:
        degree = mdeg[vid] + marked[vid]
        if degree < 1:
            return CriterionReport(CriterionWitness(frozenset([vid]), degree, 1))
    return CriterionReport()


def section_rank(d: int, n: int, g: int, i: int) -> int:
    """Rank i(d + n) - g + 1 of the pushforward of the i-th power."""
    if i < 1:
        raise DomainError(f"power must be positive, got {i}")
    return i * (d + n) - g + 1


def large_degree_threshold(graph: MarkedDualGraph, k: int, start: int = 0) -> Optional[int]:
    """Smallest d >= start from which balanced_large_d_report holds for every balanced degree.

    A full window of 2g - 2 consecutive degrees is enough: the omega twist adds a
    non-negative vector and carries each degree to the next window.
    """
    period = 2 * total_genus(graph) - 2
    passing = 0
    for d in range(start, start + THRESHOLD_SEARCH_LIMIT + period):
        reports = (balanced_large_d_report(graph, mdeg, k) for mdeg in enumerate_balanced(graph, d))
        passing = passing + 1 if all(report.holds for report in reports) else 0
        if passing == period:
            threshold = d - period + 1
            logger.info(f"Large degree threshold {threshold} for k={k}")
            return threshold
    logger.warning(f"No large degree threshold found within {THRESHOLD_SEARCH_LIMIT} steps")
    return None
