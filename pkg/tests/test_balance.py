"""
Tests for degree bounds, the balanced test, enumeration and the omega twist.
"""

from fractions import Fraction

import pytest

from conftest import g4_degrees
from quasistab.models import (
    BRIDGE_PATTERN,
    CORE_INEQUALITY,
    EXCEPTIONAL_DEGREE,
    TAIL_DEGREE,
    TAIL_VERTEX_FORCED,
    DomainError,
    MarkedDualGraph,
    Multidegree,
)
from quasistab.services import (
    bridge_assignment_of,
    bridge_assignments,
    classify,
    connected_core_subcurves,
    degree_bounds,
    dm_condition,
    enumerate_balanced,
    forced_tail_bridge_degrees,
    is_balanced,
    is_gieseker_balanced,
    omega_pullback_degrees,
    stack_dimension,
    subcurve_invariants,
    twist_by_omega,
)


# ==================== Bounds ====================


def test_bounds_on_g2_singleton(g2):
    bounds = degree_bounds(g2, classify(g2), {"A"}, 0, 0, 0)
    assert (bounds.lower, bounds.upper) == (-1, 1)
    assert list(bounds.integer_range) == [-1, 0, 1]


def test_bounds_on_g3(g3):
    classification = classify(g3)
    single = degree_bounds(g3, classification, {"A"}, 1, 0, 0)
    assert (single.lower, single.upper) == (Fraction(-1, 2), Fraction(3, 2))
    assert list(single.integer_range) == [0, 1]
    pair = degree_bounds(g3, classification, {"A", "B"}, 1, 0, 0)
    assert (pair.lower, pair.upper) == (0, 2)


def test_bounds_are_exact_fractions(g3):
    bounds = degree_bounds(g3, classify(g3), {"A"}, 1, 0, 0)
    assert bounds.contains(0) and bounds.contains(1)
    assert not bounds.contains(2)
    assert bounds.lower_scaled == bounds.lower * bounds.scale


def test_bounds_reject_non_core_subcurve(g3):
    with pytest.raises(DomainError):
        degree_bounds(g3, classify(g3), {"A", "E"}, 1, 0, 0)


def test_bounds_need_genus_three():
    graph = MarkedDualGraph.build([("A", 1, ()), ("B", 1, ())], [("A", "B")])
    with pytest.raises(DomainError):
        degree_bounds(graph, classify(graph), {"A"}, 0, 0, 0)


# ==================== Forced Degrees ====================


def test_tail_degree_is_forced(g4):
    forced = forced_tail_bridge_degrees(g4, classify(g4))
    assert forced.fixed == {"E": -1}
    assert forced.choices == ()


def test_exceptional_degree_is_forced(g3):
    forced = forced_tail_bridge_degrees(g3, classify(g3))
    (choice,) = forced.choices
    assert choice.raise_options == ("E",)
    assert forced.determined == {"E": 1}


def test_marked_bridge_has_a_choice(g3_marked):
    (choice,) = forced_tail_bridge_degrees(g3_marked, classify(g3_marked)).choices
    assert choice.raise_options == (None, "E")
    assert choice.pattern(None) == {"E": 0}
    assert choice.pattern("E") == {"E": 1}


# ==================== Balanced Test ====================


def test_g2_balanced(g2):
    assert is_balanced(g2, {"A": 0, "B": 0}).verdict


def test_g2_unbalanced(g2):
    violation = is_balanced(g2, {"A": 2, "B": -2}).violation
    assert violation.kind == CORE_INEQUALITY
    assert violation.subcurve == {"A"}
    assert (violation.lower, violation.upper, violation.actual) == (-1, 1, 2)


def test_g3_balanced(g3):
    assert is_balanced(g3, {"A": 0, "E": 1, "B": 0}).verdict


def test_g3_violation_on_b(g3):
    violation = is_balanced(g3, {"A": 1, "E": 1, "B": -1}).violation
    assert violation.kind == CORE_INEQUALITY
    assert violation.subcurve == {"B"}


def test_g3_exceptional_degree(g3):
    violation = is_balanced(g3, {"A": 0, "E": 0, "B": 1}).violation
    assert violation.kind == EXCEPTIONAL_DEGREE
    assert violation.subcurve == {"E"}


def test_g4_tail_degree(g4):
    assert is_balanced(g4, g4_degrees(3)).verdict
    violation = is_balanced(g4, {"v0": 3, "E": 0}).violation
    assert violation.kind == TAIL_DEGREE


def test_tail_vertex_forced():
    graph = MarkedDualGraph.build(
        [("A", 3, ()), ("R", 0, (1,)), ("L", 0, (2, 3))], [("A", "R"), ("R", "L")]
    )
    # The tail {R, L} has total -1 but the split is not (0, -1).
    violation = is_balanced(graph, {"A": 1, "R": -1, "L": 0}).violation
    assert violation.kind == TAIL_VERTEX_FORCED
    assert is_balanced(graph, {"A": 1, "R": 0, "L": -1}).verdict


def test_bridge_pattern(g3_marked):
    violation = is_balanced(g3_marked, {"A": -1, "E": 2, "B": 0}).violation
    assert violation.kind == BRIDGE_PATTERN
    assert violation.subcurve == {"E"}


def test_zero_bridge_tightens_the_core_bounds(g3_marked):
    # With E unraised the bridge forces deg{A,B} = d exactly.
    assert is_balanced(g3_marked, {"A": 0, "E": 0, "B": 1}).verdict
    assert is_balanced(g3_marked, {"A": 0, "E": 1, "B": 0}).verdict


def test_is_balanced_checks_keys(g2):
    with pytest.raises(DomainError):
        is_balanced(g2, {"A": 0})


def test_is_balanced_needs_quasistable():
    graph = MarkedDualGraph.build([("A", 3, ()), ("R", 0, (1,))], [("A", "R")])
    with pytest.raises(DomainError):
        is_balanced(graph, {"A": 1, "R": -1})


# ==================== Enumeration ====================


def test_enumerate_g2(g2):
    found = enumerate_balanced(g2, 0)
    assert found == [
        Multidegree.of({"A": -1, "B": 1}),
        Multidegree.of({"A": 0, "B": 0}),
        Multidegree.of({"A": 1, "B": -1}),
    ]


def test_enumerate_g3(g3):
    assert enumerate_balanced(g3, 1) == [Multidegree.of({"A": 0, "E": 1, "B": 0})]


@pytest.mark.parametrize("d", [-3, 0, 1, 7])
def test_enumerate_g4(g4, d):
    assert enumerate_balanced(g4, d) == [Multidegree.of(g4_degrees(d))]


def test_enumerate_single_vertex():
    graph = MarkedDualGraph.build([("A", 3, ())])
    assert enumerate_balanced(graph, 5) == [Multidegree.of({"A": 5})]


def test_enumerated_degrees_are_balanced(g3_marked, g2_with_tail):
    for graph in (g3_marked, g2_with_tail):
        for d in range(-2, 4):
            for mdeg in enumerate_balanced(graph, d):
                assert mdeg.total == d
                assert is_balanced(graph, mdeg).verdict


@pytest.mark.property_based
def test_tail_and_bridge_degrees_are_forced_on_corpus(corpus):
    for graph in corpus:
        classification = classify(graph)
        for d in range(-2, 3):
            for mdeg in enumerate_balanced(graph, d):
                for tail in classification.all_tails:
                    for vid in tail.vertices:
                        assert mdeg[vid] == graph.node_count(vid) - 2
                for bridge in classification.maximal_bridges:
                    lifts = [mdeg[vid] - graph.node_count(vid) + 2 for vid in bridge.chain]
                    assert set(lifts) <= {0, 1}
                    assert sum(lifts) <= 1


# ==================== Unpointed Basic Inequality ====================


def test_gieseker_balanced(g2, g3):
    assert is_gieseker_balanced(g2, {"A": 0, "B": 0})
    assert not is_gieseker_balanced(g2, {"A": 2, "B": -2})
    assert is_gieseker_balanced(g3, {"A": 0, "E": 1, "B": 0})


def test_gieseker_rejects_markings(g4):
    with pytest.raises(DomainError):
        is_gieseker_balanced(g4, g4_degrees(0))


@pytest.mark.property_based
def test_complementary_bounds_add_up_without_markings(unpointed_corpus):
    for graph in unpointed_corpus:
        classification = classify(graph)
        everything = frozenset(graph.vertex_ids)
        for subset in connected_core_subcurves(graph, classification):
            complement = everything - subset
            if not complement <= classification.core_vertices:
                continue
            if not subcurve_invariants(graph, complement).connected:
                continue
            for d in range(-3, 4):
                first = degree_bounds(graph, classification, subset, d, 0, 0)
                second = degree_bounds(graph, classification, complement, d, 0, 0)
                assert first.lower + second.upper == d
                assert first.upper + second.lower == d


# ==================== Twist ====================


def test_twist_g2(g2):
    twisted = twist_by_omega(g2, classify(g2), {"A": -1, "B": 1}, 1)
    assert twisted == Multidegree.of({"A": 1, "B": 3})
    assert twisted.total == 4


def test_twist_g3(g3):
    twisted = twist_by_omega(g3, classify(g3), {"A": 0, "E": 1, "B": 0}, 1)
    assert twisted == Multidegree.of({"A": 2, "E": 1, "B": 2})


def test_twist_subtracts_tails(g4):
    assert omega_pullback_degrees(g4, classify(g4)) == {"v0": 4, "E": 0}
    twisted = twist_by_omega(g4, classify(g4), g4_degrees(0), 2)
    assert twisted == Multidegree.of(g4_degrees(8))


@pytest.mark.parametrize("m", [-2, -1, 1, 3])
def test_twist_is_a_bijection(g3_marked, m):
    classification = classify(g3_marked)
    period = 4
    for d in range(0, 3):
        twisted = [
            twist_by_omega(g3_marked, classification, mdeg, m)
            for mdeg in enumerate_balanced(g3_marked, d)
        ]
        assert sorted(twisted) == enumerate_balanced(g3_marked, d + m * period)


# ==================== Bridge Assignments ====================


def test_bridge_assignments(g3, g3_marked):
    assert bridge_assignments(g3, classify(g3)) == [frozenset({"E"})]
    assert bridge_assignments(g3_marked, classify(g3_marked)) == [frozenset(), frozenset({"E"})]


def test_bridge_assignment_of(g3_marked):
    classification = classify(g3_marked)
    assert bridge_assignment_of(g3_marked, classification, {"A": 0, "E": 0, "B": 1}) == frozenset()
    assert bridge_assignment_of(g3_marked, classification, {"A": 0, "E": 1, "B": 0}) == {"E"}
    with pytest.raises(DomainError):
        bridge_assignment_of(g3_marked, classification, {"A": 0, "E": 2, "B": -1})


# ==================== Stack Numerics ====================


def test_dm_condition():
    assert not dm_condition(4, 3)
    assert dm_condition(3, 3)
    assert dm_condition(4, 4)
    assert not dm_condition(5, 4)


def test_stack_dimension():
    assert stack_dimension(3, 2) == 11
