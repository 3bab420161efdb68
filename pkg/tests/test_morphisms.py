"""
Tests for contraction, stabilization, stable models, stripping and fibers.
"""

import pytest

from conftest import g4_degrees
from quasistab.models import (
    AtMarking,
    AtNode,
    DomainError,
    Edge,
    MarkedDualGraph,
    Multidegree,
    OnVertex,
    Vertex,
)
from quasistab.services import (
    blow_up_edges,
    classify,
    contract_last_marking,
    forget_all_markings,
    forget_last_point,
    forgetful_fiber,
    is_balanced,
    is_relabeling,
    lift_multidegree,
    marking_section,
    stabilize,
    stable_model,
    strip_multidegree,
    strip_to_unpointed,
)


@pytest.fixture
def g2_marked() -> MarkedDualGraph:
    return MarkedDualGraph.build([("A", 1, (1,)), ("B", 1, ())], [("A", "B"), ("A", "B")])


# ==================== Contraction ====================


@pytest.mark.parametrize("d", [0, 4])
def test_contract_tail(g4, d):
    outcome = contract_last_marking(g4, g4_degrees(d))
    assert outcome.graph == MarkedDualGraph.build([("v0", 3, (1,))])
    assert outcome.multidegree == Multidegree.of({"v0": d})
    assert outcome.delta == AtMarking(1)
    assert outcome.contracted == "E"
    assert outcome.vertex_map == {"v0": "v0"}


def test_contract_bridge(g3_marked):
    outcome = contract_last_marking(g3_marked, {"A": 0, "E": 0, "B": 1})
    assert outcome.graph == MarkedDualGraph(
        vertices=(Vertex("A", 1), Vertex("B", 1)),
        edges=(Edge("e1", "A", "B"), Edge("e3", "A", "B")),
    )
    assert outcome.multidegree == Multidegree.of({"A": 0, "B": 1})
    assert outcome.delta == AtNode("e1")


def test_contract_keeps_raised_bridge(g3_marked, g3):
    outcome = contract_last_marking(g3_marked, {"A": 0, "E": 1, "B": 0})
    assert outcome.graph == g3
    assert outcome.delta == OnVertex("E")
    assert outcome.contracted is None


def test_contract_plain_marking(g2_marked, g2):
    graph, mdeg = forget_last_point(g2_marked, {"A": 0, "B": 0})
    assert graph == g2
    assert mdeg == Multidegree.of({"A": 0, "B": 0})


def test_contract_needs_a_marking(g2):
    with pytest.raises(DomainError):
        contract_last_marking(g2, {"A": 0, "B": 0})


def test_contract_needs_balanced(g4):
    with pytest.raises(DomainError):
        contract_last_marking(g4, {"v0": 0, "E": 0})


# ==================== Stabilization ====================


def test_stabilize_at_node(g2, g3_marked):
    outcome = stabilize(g2, {"A": 0, "B": 0}, AtNode("e1"))
    assert outcome.new_vertex == "s1"
    assert outcome.graph.n == 1
    assert [edge.id for edge in outcome.graph.edges] == ["e1", "e2", "e3"]
    assert is_relabeling(outcome.graph, g3_marked, {"A": "A", "B": "B", "s1": "E"})
    assert outcome.multidegree == Multidegree.of({"A": 0, "B": 0, "s1": 0})
    assert is_balanced(outcome.graph, outcome.multidegree).verdict


def test_stabilize_at_marking(g4):
    outcome = marking_section(g4, g4_degrees(2), 1)
    assert outcome.new_vertex == "s3"
    assert outcome.graph.legs_of("E") == (2,)
    assert outcome.graph.legs_of("s3") == (1, 3)
    assert outcome.multidegree == Multidegree.of({"v0": 3, "E": 0, "s3": -1})
    assert is_balanced(outcome.graph, outcome.multidegree).verdict


def test_stabilize_on_vertex(g4):
    outcome = stabilize(g4, g4_degrees(0), OnVertex("v0"))
    assert outcome.graph.legs_of("v0") == (3,)
    assert outcome.new_vertex is None
    assert outcome.multidegree == Multidegree.of(g4_degrees(0))


@pytest.mark.parametrize("delta", [OnVertex("Q"), AtNode("e9"), AtMarking(1), AtMarking(0)])
def test_stabilize_rejects_unknown_locations(g2, delta):
    with pytest.raises(DomainError):
        stabilize(g2, {"A": 0, "B": 0}, delta)


@pytest.mark.parametrize(
    "delta", [OnVertex("v0"), OnVertex("E"), AtNode("e1"), AtMarking(1), AtMarking(2)]
)
def test_contract_undoes_stabilize(g4, delta):
    mdeg = Multidegree.of(g4_degrees(1))
    added = stabilize(g4, mdeg, delta)
    removed = contract_last_marking(added.graph, added.multidegree)
    assert removed.graph == g4
    assert removed.multidegree == mdeg
    assert removed.delta == delta


def test_stabilize_undoes_contract(g4):
    removed = contract_last_marking(g4, g4_degrees(0))
    added = stabilize(removed.graph, removed.multidegree, removed.delta)
    vertex_map = {"v0": "v0", removed.contracted: added.new_vertex}
    assert is_relabeling(g4, added.graph, vertex_map)
    assert added.multidegree == Multidegree.of({"v0": 1, added.new_vertex: -1})


# ==================== Stable Model ====================


def test_stable_model_of_g3(g2, g3):
    mapped = stable_model(g3)
    assert is_relabeling(mapped.graph, g2, {"A": "A", "B": "B"})
    assert mapped.vertex_map == {"A": "A", "B": "B"}


def test_stable_model_of_stable_graph(g2):
    assert stable_model(g2).graph == g2


def test_stable_model_of_double_blow_up(g2):
    blown = blow_up_edges(g2, ["e1", "e2"]).graph
    assert stable_model(blown).graph == g2


def test_stable_model_moves_markings():
    graph = MarkedDualGraph.build([("A", 3, ()), ("R", 0, (1,))], [("A", "R")])
    mapped = stable_model(graph)
    assert mapped.graph == MarkedDualGraph.build([("A", 3, (1,))])
    assert mapped.vertex_map == {"A": "A", "R": "A"}


def test_stable_model_needs_semistable():
    graph = MarkedDualGraph.build([("A", 3, ()), ("R", 0, ())], [("A", "R")])
    with pytest.raises(DomainError):
        stable_model(graph)


def test_stable_model_needs_positive_euler_characteristic():
    with pytest.raises(DomainError):
        stable_model(MarkedDualGraph.build([("A", 1, ())]))


# ==================== Unpointed Reduction ====================


def test_strip_tail(g4):
    mapped = strip_to_unpointed(g4, frozenset())
    assert mapped.graph == MarkedDualGraph.build([("v0", 3, ())])
    assert mapped.vertex_map == {"v0": "v0"}


def test_strip_keeps_exceptional_bridge(g3):
    assert strip_to_unpointed(g3, frozenset({"E"})).graph == g3


def test_strip_contracts_unraised_bridge(g3_marked, g2):
    mapped = strip_to_unpointed(g3_marked, frozenset())
    assert is_relabeling(mapped.graph, g2, {"A": "A", "B": "B"})
    assert mapped.graph.n == 0


@pytest.mark.parametrize("assignment", [frozenset(), frozenset({"A"})])
def test_strip_rejects_bad_assignments(g3, assignment):
    with pytest.raises(DomainError):
        strip_to_unpointed(g3, assignment)


@pytest.mark.parametrize("d", [-1, 0, 5])
def test_lift_over_tail(g4, d):
    lifted = lift_multidegree(g4, classify(g4), frozenset(), {"v0": d})
    assert lifted == Multidegree.of(g4_degrees(d))


def test_lift_keeps_bridge(g3):
    mdeg = {"A": 0, "E": 1, "B": 0}
    assert lift_multidegree(g3, classify(g3), frozenset({"E"}), mdeg) == Multidegree.of(mdeg)


def test_lift_adds_tail_counts(g2_with_tail):
    lifted = lift_multidegree(g2_with_tail, classify(g2_with_tail), frozenset(), {"A": 0, "B": 0})
    assert lifted == Multidegree.of({"A": 1, "B": 0, "T": -1})


def test_lift_rejects_unbalanced_input(g2_with_tail):
    with pytest.raises(DomainError):
        lift_multidegree(g2_with_tail, classify(g2_with_tail), frozenset(), {"A": 2, "B": -2})


def test_strip_multidegree_inverts_lift(g2_with_tail, g3_marked):
    classification = classify(g2_with_tail)
    assignment, stripped = strip_multidegree(
        g2_with_tail, classification, {"A": 1, "B": 0, "T": -1}
    )
    assert assignment == frozenset()
    assert stripped == Multidegree.of({"A": 0, "B": 0})

    classification = classify(g3_marked)
    assignment, stripped = strip_multidegree(g3_marked, classification, {"A": 0, "E": 1, "B": 0})
    assert assignment == {"E"}
    assert lift_multidegree(g3_marked, classification, assignment, stripped) == Multidegree.of(
        {"A": 0, "E": 1, "B": 0}
    )


def test_forget_all_matches_strip(g4, g2_with_tail):
    for graph, mdeg in ((g4, g4_degrees(2)), (g2_with_tail, {"A": 1, "B": 0, "T": -1})):
        outcome = forget_all_markings(graph, mdeg)
        assignment, stripped = strip_multidegree(graph, classify(graph), mdeg)
        reduced = strip_to_unpointed(graph, assignment).graph
        identity = {vid: vid for vid in outcome.graph.vertex_ids}
        assert is_relabeling(outcome.graph, reduced, identity)
        assert outcome.multidegree == stripped


# ==================== Forgetful Fibers ====================


def test_fiber_census_of_g2(g2):
    counts = {entry.edges: entry.count for entry in forgetful_fiber(g2, 1)}
    assert counts == {(): 2, ("e1",): 1, ("e2",): 1, ("e1", "e2"): 0}


def test_fiber_census_is_sorted_by_size_then_edge_ids():
    graph = MarkedDualGraph(
        vertices=(Vertex("A", 1, ()), Vertex("B", 1, ())),
        edges=(Edge("e2", "A", "B"), Edge("e1", "A", "B")),
        n=0,
    )
    census = forgetful_fiber(graph, 1)
    assert [entry.edges for entry in census] == [(), ("e1",), ("e2",), ("e1", "e2")]
    assert [entry.count for entry in census] == [2, 1, 1, 0]


def test_fiber_of_single_vertex():
    graph = MarkedDualGraph.build([("v0", 3, (1,))])
    (entry,) = forgetful_fiber(graph, 0)
    assert entry.edges == ()
    assert entry.multidegrees == (Multidegree.of({"v0": 0}),)


def test_fiber_strata_have_the_input_as_stable_model(g2):
    for entry in forgetful_fiber(g2, 0):
        assert stable_model(entry.graph).graph == g2


def test_fiber_needs_stable_graph(g3):
    with pytest.raises(DomainError):
        forgetful_fiber(g3, 1)
