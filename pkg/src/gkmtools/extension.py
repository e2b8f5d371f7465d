"""Extensions along lattice epimorphisms, and lifts of torus graphs to T-graphs."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import linalg
from .faces import FacePoset, enumerate_faces
from .graph import (GkmError, GkmGraph, TGraph, check_effectivity, congruence_coefficient,
                    normalize_sign, validate_tgraph)


class ExtensionError(GkmError):
    pass


@dataclass
class ExtensionWitness:
    source: GkmGraph      # rank k
    target: GkmGraph      # rank n
    p: list               # k x n


def check_extension(gK: GkmGraph, gT: GkmGraph, p) -> ExtensionWitness:
    """Verify ``p . alpha_T == alpha_K`` dart by dart (sign classes if unsigned)."""
    if (gK.vertices != gT.vertices or gK.origin != gT.origin
            or gK.opposite != gT.opposite):
        raise ExtensionError("underlying graphs differ")
    if gK.connection != gT.connection:
        raise ExtensionError("connections differ")
    if len(p) != gK.rank or any(len(row) != gT.rank for row in p):
        raise ExtensionError(f"p must be a {gK.rank} x {gT.rank} matrix")
    signed = gK.signed and gT.signed
    for e in gT.darts:
        img = linalg.matvec(p, gT.labels[e])
        want = gK.labels[e]
        if not signed:
            img, want = normalize_sign(img), normalize_sign(want)
        if img != want:
            raise ExtensionError(f"label mismatch at dart {e}: p(alpha_T) = {img}, "
                                 f"alpha_K = {want}")
    return ExtensionWitness(gK, gT, [list(r) for r in p])


def normalize_projection(p):
    """Unimodular ``Q`` (n x n) and ``A`` (k x k) with ``A p Q^{-1} = [I | 0]``.

    Relabelling the target by ``Q`` turns ``p`` into the coordinate projection.
    """
    s, u, v = linalg.smith_normal_form(p)
    k = len(p)
    if any(s[i][i] != 1 for i in range(k)):
        raise ExtensionError("p is not surjective onto Z^k")
    # u p v = [I | 0]  =>  Q = v^{-1}, A = u
    return linalg.integer_inverse(v), u


def search_extension(gK: GkmGraph, n: int, bound: int = 2) -> list[GkmGraph]:
    """All rank-``n`` labelings extending ``gK`` along the coordinate projection.

    Entries of the extra ``n - k`` coordinates range over ``[-bound, bound]``;
    solutions are listed once per sign class of each edge label.
    """
    k = gK.rank
    if n < k or bound < 0:
        raise GkmError("need n >= k and bound >= 0")
    extra = n - k
    edges = list(gK.edges)
    pos = {e: i for i, e in enumerate(edges)}
    edge_of = {}
    for e in gK.darts:
        edge_of[e] = (e, 1) if e in pos else (gK.opposite[e], -1)

    # constraints: (e, e2, img) triples, keyed by the last edge to be assigned
    checks = {i: [] for i in range(len(edges))}
    for e in gK.darts:
        for e2 in gK.star(gK.origin[e]):
            if e2 == e:
                continue
            img = gK.transport(e, e2)
            last = max(pos[edge_of[x][0]] for x in (e, e2, img))
            checks[last].append((e, e2, img))

    signed = gK.signed
    base = {}
    for e in edges:
        lab = gK.labels[e]
        base[e] = tuple(lab) if signed else normalize_sign(lab)
    choices = list(itertools.product(range(-bound, bound + 1), repeat=extra))
    assign: dict = {}

    def label(x):
        e, s = edge_of[x]
        lab = assign[e]
        return lab if (s == 1 or not signed) else tuple(-y for y in lab)

    results = []

    def rec(i):
        if i == len(edges):
            labels = [label(x) for x in gK.darts]
            cand = gK.with_labels(labels, rank=n)
            if check_effectivity(cand):
                results.append(cand)
            return
        e = edges[i]
        for tail in choices:
            assign[e] = base[e] + tail
            if all(congruence_coefficient(label(a), label(b), label(c), signed) is not None
                   for a, b, c in checks[i]):
                rec(i + 1)
        assign.pop(e, None)

    rec(0)
    return results


# -- characteristic functions --------------------------------------------------

def _dual_basis(vectors):
    """Rows ``lambda_j`` with ``<lambda_j, vectors_i> = delta_ij``."""
    # columns of B are the vectors; the dual basis is the rows of B^{-1}
    b = [[vec[i] for vec in vectors] for i in range(len(vectors))]
    try:
        inv = linalg.integer_inverse(b)
    except ValueError as exc:
        raise GkmError("labels at a vertex are not a basis of Z^n") from exc
    return [tuple(row) for row in inv]


def facets(g: GkmGraph):
    return enumerate_faces(g, g.valence - 1)


def facet_through(g: GkmGraph, facet_list, v: int, e: int) -> int:
    """Index of the facet containing ``v`` whose transversal dart at ``v`` is ``e``."""
    want = set(x for x in g.star(v) if x != e)
    for i, f in enumerate(facet_list):
        if v in f.vertices and want == {x for x in g.star(v) if x in f.darts}:
            return i
    raise GkmError(f"no facet through vertex {g.vertices[v]} transversal to dart {e}")


@dataclass
class CharacteristicFunction:
    facets: list            # Face objects
    values: list            # one primitive vector per facet

    def __eq__(self, other):
        return (isinstance(other, CharacteristicFunction)
                and [f.key for f in self.facets] == [f.key for f in other.facets]
                and [tuple(v) for v in self.values] == [tuple(v) for v in other.values])


def facet_normals(t: TGraph) -> CharacteristicFunction:
    g = t.graph
    fl = facets(g)
    values = [None] * len(fl)
    for v in range(len(g.vertices)):
        star = g.star(v)
        dual = _dual_basis([t.beta[e] for e in star])
        for e, lam in zip(star, dual):
            i = facet_through(g, fl, v, e)
            if values[i] is None:
                values[i] = lam
            elif values[i] != lam:
                raise GkmError(f"facet normal of facet {i} differs between vertices "
                               "(invalid T-graph)")
    return CharacteristicFunction(fl, values)


def check_unimodular(g: GkmGraph, chi: CharacteristicFunction) -> bool:
    for v in range(len(g.vertices)):
        vecs = [chi.values[i] for i, f in enumerate(chi.facets) if v in f.vertices]
        if len(vecs) != g.valence or abs(linalg.determinant(vecs)) != 1:
            return False
    return True


def tgraph_from_characteristic(g: GkmGraph, chi: CharacteristicFunction) -> TGraph:
    """Labels at ``v`` = dual basis of the normals of the facets through ``v``."""
    if not check_unimodular(g, chi):
        raise GkmError("characteristic function is not unimodular")
    beta = [None] * g.num_darts
    for v in range(len(g.vertices)):
        star = g.star(v)
        lams = [chi.values[facet_through(g, chi.facets, v, e)] for e in star]
        for e, b in zip(star, _dual_basis(lams)):
            beta[e] = b
    t = TGraph(g.unsigned() if g.signed else g, tuple(beta))
    problems = validate_tgraph(t)
    if problems:
        raise GkmError("characteristic function does not give a T-graph: " + problems[0])
    return t


def is_torus_graph(g: GkmGraph) -> bool:
    if g.rank != g.valence:
        return False
    for v in range(len(g.vertices)):
        if abs(linalg.determinant([g.labels[e] for e in g.star(v)])) != 1:
            return False
    return True


def lift_to_tgraph(g: GkmGraph) -> TGraph:
    """Lift an unsigned torus graph to a T-graph.

    Labels are lifted to their stored representatives; each facet takes the
    dual vector at its least vertex, signed so its first nonzero entry is
    positive.
    """
    if not is_torus_graph(g):
        raise GkmError("not a torus graph (rank != valence or vertex labels not a basis)")
    fl = facets(g)
    values = []
    for f in fl:
        v = min(f.vertices)
        star = g.star(v)
        dual = _dual_basis([normalize_sign(g.labels[e]) for e in star])
        e = next(x for x in star if x not in f.darts)
        values.append(normalize_sign(dual[star.index(e)]))
    chi = CharacteristicFunction(fl, values)
    t = tgraph_from_characteristic(g.unsigned(), chi)
    if t.unsigned().labels != g.unsigned().labels:
        raise GkmError("lift does not reduce to the input graph")
    return t
