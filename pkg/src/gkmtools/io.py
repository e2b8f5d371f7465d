"""JSON interchange for GKM graphs, T-graphs and extensions.

Darts are numbered from the (canonically sorted) edge list: edge ``j`` given
as ``[u, v, label]`` has dart ``2j`` (``u -> v``, carrying ``label``) and
dart ``2j + 1`` (``v -> u``).  A connection is one list of
``[dart at origin, dart at terminus]`` pairs per dart.
"""

from __future__ import annotations

import json

from .graph import GkmError, GkmGraph, TGraph


class ParseError(GkmError):
    pass


def _canonical_order(g: GkmGraph):
    """Sorted vertex order and one dart per edge, lowest vertex first, sorted."""
    vorder = sorted(range(len(g.vertices)), key=lambda i: _sort_key(g.vertices[i]))
    pos = {v: i for i, v in enumerate(vorder)}
    edges = []
    for e in g.edges:
        u, w = g.origin[e], g.terminus(e)
        d = e if pos[u] <= pos[w] else g.opposite[e]
        edges.append(d)
    edges.sort(key=lambda d: (pos[g.origin[d]], pos[g.terminus(d)], g.labels[d], d))
    return vorder, edges


def _sort_key(name):
    return (0, name, "") if isinstance(name, int) else (1, 0, str(name))


def _dart_ids(edges, g):
    new_id = {}
    for j, d in enumerate(edges):
        new_id[d] = 2 * j
        new_id[g.opposite[d]] = 2 * j + 1
    return new_id


def graph_to_dict(g: GkmGraph) -> dict:
    labels = g.labels
    vorder, edges = _canonical_order(g)
    new_id = _dart_ids(edges, g)
    out = {
        "rank": g.rank,
        "valence": g.valence,
        "signed": g.signed,
        "vertices": [g.vertices[i] for i in vorder],
        "edges": [[g.vertices[g.origin[d]], g.vertices[g.terminus(d)], list(labels[d])]
                  for d in edges],
    }
    if g.connection is not None:
        conn = [None] * g.num_darts
        for e in g.darts:
            conn[new_id[e]] = sorted([new_id[a], new_id[b]] for a, b in g.connection[e].items())
        out["connection"] = conn
    return out


def _need(doc, key, kind):
    if key not in doc:
        raise ParseError(f"missing field {key!r}")
    val = doc[key]
    if not isinstance(val, kind) or (kind is int and isinstance(val, bool)):
        raise ParseError(f"field {key!r} has the wrong type")
    return val


def graph_from_dict(doc: dict) -> GkmGraph:
    if not isinstance(doc, dict):
        raise ParseError("graph document must be an object")
    rank = _need(doc, "rank", int)
    signed = _need(doc, "signed", bool)
    vertices = _need(doc, "vertices", list)
    raw_edges = _need(doc, "edges", list)
    if len(set(map(repr, vertices))) != len(vertices):
        raise ParseError("field 'vertices' has duplicate names")
    names = set(vertices)
    edges = []
    for j, item in enumerate(raw_edges):
        if (not isinstance(item, list) or len(item) != 3 or not isinstance(item[2], list)):
            raise ParseError(f"edge {j}: expected [u, v, [label...]], got {item!r}")
        u, v, lab = item
        if u not in names or v not in names:
            raise ParseError(f"edge {j}: unknown vertex in {item!r}")
        if len(lab) != rank or not all(isinstance(x, int) and not isinstance(x, bool)
                                       for x in lab):
            raise ParseError(f"edge {j}: label must be {rank} integers, got {lab!r}")
        edges.append((u, v, lab))
    conn_doc = doc.get("connection")
    connection = None
    if conn_doc is not None:
        if not isinstance(conn_doc, list) or len(conn_doc) != 2 * len(edges):
            raise ParseError("field 'connection' needs one entry per dart")
        connection = []
        for e, pairs in enumerate(conn_doc):
            try:
                connection.append({int(a): int(b) for a, b in pairs})
            except (TypeError, ValueError) as exc:
                raise ParseError(f"connection entry for dart {e} is malformed") from exc
    try:
        g = GkmGraph.from_edges(vertices, edges, rank=rank, signed=signed,
                                connection=connection)
    except GkmError as exc:
        raise ParseError(f"graph could not be built: {exc}") from exc
    if "valence" in doc and doc["valence"] != g.valence:
        raise ParseError(f"field 'valence' is {doc['valence']}, graph has {g.valence}")
    return g


def tgraph_to_dict(t: TGraph) -> dict:
    """The unsigned graph plus ``beta``: one vector per dart, canonical numbering."""
    g = t.graph
    out = graph_to_dict(g)
    _, edges = _canonical_order(g)
    new_id = _dart_ids(edges, g)
    beta = [None] * g.num_darts
    for e in g.darts:
        beta[new_id[e]] = list(t.beta[e])
    out["beta"] = beta
    return out


def tgraph_from_dict(doc: dict) -> TGraph:
    g = graph_from_dict(doc)
    beta = _need(doc, "beta", list)
    if len(beta) != g.num_darts:
        raise ParseError("field 'beta' needs one vector per dart")
    return TGraph(g.unsigned(), tuple(tuple(int(x) for x in b) for b in beta))


def extension_to_dict(gK: GkmGraph, gT: GkmGraph, p) -> dict:
    out = graph_to_dict(gT)
    out["epimorphism"] = [list(r) for r in p]
    out["source"] = graph_to_dict(gK)
    return out


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True)


def loads_graph(text: str) -> GkmGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}: {exc.msg}") from exc
    return graph_from_dict(doc)


def load_graph(path) -> GkmGraph:
    with open(path, encoding="utf-8") as fh:
        return loads_graph(fh.read())


def canonical(g: GkmGraph) -> GkmGraph:
    return graph_from_dict(graph_to_dict(g))
