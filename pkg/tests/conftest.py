"""
Shared fixtures: small reference graphs and a seeded corpus of random
quasistable graphs.
"""

import json
from typing import List

import pytest

from quasistab.models import CorpusParams, GraphDocument, MarkedDualGraph
from quasistab.services import dumps_document
from quasistab.services.oracle import generate_corpus

CORPUS_PARAMS = CorpusParams(max_vertices=4, max_edges=6, max_genus_per_vertex=2, max_legs=4)
CORPUS_SIZE = 24
UNPOINTED_PARAMS = CorpusParams(max_vertices=4, max_edges=6, max_genus_per_vertex=2, max_legs=0)
UNPOINTED_SIZE = 12
ACCEPTANCE_PARAMS = CorpusParams(
    max_vertices=7, max_edges=9, max_genus_per_vertex=2, max_legs=4, max_total_genus=6
)
ACCEPTANCE_SIZE = 500


def make_g2() -> MarkedDualGraph:
    """Two elliptic components meeting in two nodes."""
    return MarkedDualGraph.build([("A", 1, ()), ("B", 1, ())], [("A", "B"), ("A", "B")])


def make_g3() -> MarkedDualGraph:
    """G2 with one node replaced by an exceptional component E."""
    return MarkedDualGraph.build(
        [("A", 1, ()), ("E", 0, ()), ("B", 1, ())], [("A", "E"), ("E", "B"), ("A", "B")]
    )


def make_g4() -> MarkedDualGraph:
    """A genus 3 component carrying a rational tail with both markings."""
    return MarkedDualGraph.build([("v0", 3, ()), ("E", 0, (1, 2))], [("v0", "E")])


def g4_degrees(d: int) -> dict:
    return {"v0": d + 1, "E": -1}


@pytest.fixture
def g2() -> MarkedDualGraph:
    return make_g2()


@pytest.fixture
def g3() -> MarkedDualGraph:
    return make_g3()


@pytest.fixture
def g4() -> MarkedDualGraph:
    return make_g4()


@pytest.fixture
def g3_marked() -> MarkedDualGraph:
    """G3 with marking 1 on the middle component, which is then no longer exceptional."""
    return MarkedDualGraph.build(
        [("A", 1, ()), ("E", 0, (1,)), ("B", 1, ())], [("A", "E"), ("E", "B"), ("A", "B")]
    )


@pytest.fixture
def g2_with_tail() -> MarkedDualGraph:
    """G2 shape with a two-pointed rational tail on A."""
    return MarkedDualGraph.build(
        [("A", 1, ()), ("B", 1, ()), ("T", 0, (1, 2))], [("A", "B"), ("A", "B"), ("A", "T")]
    )


@pytest.fixture(scope="session")
def corpus() -> List[MarkedDualGraph]:
    return generate_corpus(CORPUS_PARAMS, CORPUS_SIZE)


@pytest.fixture(scope="session")
def unpointed_corpus() -> List[MarkedDualGraph]:
    return generate_corpus(UNPOINTED_PARAMS, UNPOINTED_SIZE)


@pytest.fixture(scope="session")
def acceptance_corpus() -> List[MarkedDualGraph]:
    """500 graphs with at most 7 components, 9 nodes and 4 markings, genus 3 to 6."""
    return generate_corpus(ACCEPTANCE_PARAMS, ACCEPTANCE_SIZE)


@pytest.fixture
def write_document(tmp_path):
    """Write a graph (and optional named multidegrees) to a JSON file, return its path."""

    def write(graph: MarkedDualGraph, multidegrees=None, name: str = "graph.json") -> str:
        path = tmp_path / name
        document = GraphDocument(graph=graph, multidegrees=multidegrees or {})
        path.write_text(dumps_document(document))
        return str(path)

    return write


@pytest.fixture
def write_raw(tmp_path):
    """Write arbitrary JSON (or text) to a file, return its path."""

    def write(data, name: str = "raw.json") -> str:
        path = tmp_path / name
        path.write_text(data if isinstance(data, str) else json.dumps(data))
        return str(path)

    return write
