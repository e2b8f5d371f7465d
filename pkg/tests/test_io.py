import json

import pytest

from gkmtools.catalog import CATALOG_NAMES, CP4_PROJECTION, catalog, cp4_projected, \
    cpn_torus, fig3
from gkmtools.extension import lift_to_tgraph
from gkmtools.io import (ParseError, canonical, dumps, extension_to_dict, graph_from_dict,
                         graph_to_dict, load_graph, loads_graph, tgraph_from_dict,
                         tgraph_to_dict)


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_round_trip(name):
    g = catalog(name)
    text = dumps(graph_to_dict(g))
    back = loads_graph(text)
    assert dumps(graph_to_dict(back)) == text
    assert back == canonical(g)
    assert canonical(back) == back


def test_round_trip_through_file(tmp_path):
    path = tmp_path / "g.json"
    path.write_text(dumps(graph_to_dict(fig3())))
    assert load_graph(path) == canonical(fig3())


def test_connection_optional():
    doc = graph_to_dict(cpn_torus(3))
    del doc["connection"]
    assert graph_from_dict(doc) == canonical(cpn_torus(3))


@pytest.mark.parametrize("g", [fig3(), cpn_torus(3).unsigned()], ids=["fig3", "cp3"])
def test_tgraph_round_trip(g):
    t = lift_to_tgraph(g)
    doc = json.loads(dumps(tgraph_to_dict(t)))
    back = tgraph_from_dict(doc)
    assert dumps(tgraph_to_dict(back)) == dumps(tgraph_to_dict(t))


def test_extension_document():
    doc = extension_to_dict(cp4_projected(), cpn_torus(4), CP4_PROJECTION)
    assert doc["epimorphism"] == [list(r) for r in CP4_PROJECTION]
    assert graph_from_dict(doc["source"]) == canonical(cp4_projected())


def _doc():
    return json.loads(dumps(graph_to_dict(cpn_torus(2))))


@pytest.mark.parametrize("mutate,message", [
    (lambda d: d.pop("rank"), "missing field 'rank'"),
    (lambda d: d.update(rank="2"), "field 'rank' has the wrong type"),
    (lambda d: d.update(signed=1), "field 'signed' has the wrong type"),
    (lambda d: d["edges"].__setitem__(1, [0, 1]), "edge 1: expected"),
    (lambda d: d["edges"].__setitem__(0, [0, 9, [1, 0]]), "edge 0: unknown vertex"),
    (lambda d: d["edges"][2].__setitem__(2, [1]), "edge 2: label must be 2 integers"),
    (lambda d: d["edges"][2].__setitem__(2, [1, True]), "edge 2: label must be 2 integers"),
    (lambda d: d.update(valence=5), "field 'valence' is 5"),
    (lambda d: d.update(connection=[[]]), "one entry per dart"),
    (lambda d: d["connection"].__setitem__(0, [[0]]), "dart 0 is malformed"),
    (lambda d: d.update(vertices=[0, 0, 1]), "duplicate"),
])
def test_parse_errors(mutate, message):
    doc = _doc()
    mutate(doc)
    with pytest.raises(ParseError, match=message):
        graph_from_dict(doc)


def test_invalid_json_reports_line():
    with pytest.raises(ParseError, match="line 2"):
        loads_graph('{"rank": 2,\n ]')
    with pytest.raises(ParseError, match="must be an object"):
        loads_graph("[1, 2]")
