"""
Tests for graph document parsing, serialization and file storage.
"""

import json

import pytest

from quasistab.models import GraphDocument, MalformedInputError, MarkedDualGraph, Multidegree
from quasistab.services import (
    dumps_document,
    load_document,
    parse_document,
    save_document,
    serialize_document,
)

G3_DOCUMENT = {
    "version": 1,
    "vertices": [
        {"id": "A", "genus": 1, "legs": []},
        {"id": "E", "genus": 0, "legs": []},
        {"id": "B", "genus": 1, "legs": []},
    ],
    "edges": [["A", "E"], ["E", "B"], ["A", "B"]],
    "multidegrees": {"balanced": {"A": 0, "E": 1, "B": 0}},
}


def test_parse_document(g3):
    document = parse_document(G3_DOCUMENT)
    assert document.graph == g3
    assert document.multidegrees == {"balanced": Multidegree.of({"A": 0, "E": 1, "B": 0})}
    assert document.version == 1


def test_parse_sets_marking_count(g4):
    data = {
        "version": 1,
        "vertices": [{"id": "v0", "genus": 3}, {"id": "E", "genus": 0, "legs": [2, 1]}],
        "edges": [["v0", "E"]],
    }
    document = parse_document(data)
    assert document.graph == g4
    assert document.graph.n == 2
    assert document.multidegrees == {}


def test_serialize_keeps_order(g3):
    document = GraphDocument(g3, {"balanced": Multidegree.of({"A": 0, "E": 1, "B": 0})})
    data = serialize_document(document)
    assert data == G3_DOCUMENT
    assert list(data["multidegrees"]["balanced"]) == ["A", "E", "B"]


def test_dumps_is_stable(g3):
    document = GraphDocument(g3)
    text = dumps_document(document)
    assert text.endswith("\n")
    assert text == dumps_document(parse_document(json.loads(text)))


@pytest.mark.parametrize(
    "data",
    [
        [],
        {"version": 2, "vertices": []},
        {"version": 1},
        {"version": 1, "vertices": [{"id": 1, "genus": 0}]},
        {"version": 1, "vertices": [{"id": "A", "genus": True}]},
        {"version": 1, "vertices": [{"id": "A", "genus": 1, "legs": ["1"]}]},
        {"version": 1, "vertices": [{"id": "A", "genus": 1}], "edges": [["A"]]},
        {"version": 1, "vertices": [{"id": "A", "genus": 1}], "edges": "A-A"},
        {"version": 1, "vertices": [{"id": "A", "genus": 3}], "multidegrees": {"x": {"A": 1.5}}},
        {"version": 1, "vertices": [{"id": "A", "genus": 3}], "multidegrees": []},
        {"version": 1, "vertices": [{"id": "A", "genus": 3}], "multidegrees": {"x": {"B": 1}}},
    ],
)
def test_parse_rejects_malformed_documents(data):
    with pytest.raises(MalformedInputError):
        parse_document(data)


def test_parse_accepts_structurally_invalid_graphs():
    document = parse_document(
        {"version": 1, "vertices": [{"id": "A", "genus": 1}], "edges": [["A", "Z"]]}
    )
    assert document.graph.edges[0].v == "Z"


def test_save_and_load(tmp_path, g4):
    path = str(tmp_path / "g4.json")
    document = GraphDocument(g4, {"d0": Multidegree.of({"v0": 1, "E": -1})})
    save_document(document, path)
    assert load_document(path) == document


def test_serialize_rejects_unknown_vertices(g2):
    document = GraphDocument(g2, {"typo": Multidegree.of({"A": 0, "C": 0})})
    with pytest.raises(MalformedInputError, match="unknown vertices: C"):
        serialize_document(document)


def test_save_into_missing_directory(tmp_path, g4):
    with pytest.raises(MalformedInputError, match="cannot write"):
        save_document(GraphDocument(g4), str(tmp_path / "missing" / "g4.json"))


def test_load_missing_file(tmp_path):
    with pytest.raises(MalformedInputError):
        load_document(str(tmp_path / "missing.json"))


def test_load_invalid_json(write_raw):
    with pytest.raises(MalformedInputError):
        load_document(write_raw("{not json"))


@pytest.mark.property_based
def test_corpus_round_trip(corpus):
    for graph in corpus:
        document = GraphDocument(graph)
        assert parse_document(serialize_document(document)) == document
        assert isinstance(document.graph, MarkedDualGraph)
