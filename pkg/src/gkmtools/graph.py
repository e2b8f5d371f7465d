"""Abstract GKM graphs, T-graphs and their validators.

Darts (oriented edges) are the primitive objects.  Dart ``e`` has an origin
vertex, an opposite dart ``opposite[e]`` and a label.  An undirected edge is
the orbit ``{e, opposite[e]}``; edges built with :meth:`GkmGraph.from_edges`
get darts ``2j`` (as given) and ``2j + 1`` (reversed).

Unsigned labels are stored as the representative whose first nonzero entry
is positive.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

from . import linalg


class GkmError(ValueError):
    """Raised when an input does not satisfy a structural precondition."""


class NoCompatibleConnection(GkmError):
    pass


class ConnectionNotUnique(GkmError):
    pass


def normalize_sign(v: Sequence[int]) -> tuple[int, ...]:
    """Unsigned normal form: the representative with positive first nonzero entry."""
    v = tuple(int(x) for x in v)
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    return v


def integer_multiple(diff: Sequence[int], a: Sequence[int]) -> int | None:
    """The integer ``c`` with ``diff == c * a``, or None."""
    i = next((j for j, x in enumerate(a) if x), None)
    if i is None:
        return 0 if not any(diff) else None
    if diff[i] % a[i]:
        return None
    c = diff[i] // a[i]
    if all(x == c * y for x, y in zip(diff, a)):
        return c
    return None


@dataclass(frozen=True, eq=False)
class GkmGraph:
    """An abstract signed or unsigned GKM graph.

    ``connection[e]`` maps each dart at ``origin[e]`` to a dart at the
    terminus of ``e``; it may be None for a bare labelled graph.
    """

    vertices: tuple
    origin: tuple[int, ...]
    opposite: tuple[int, ...]
    labels: tuple[tuple[int, ...], ...]
    rank: int
    signed: bool = False
    connection: tuple[Mapping[int, int], ...] | None = None

    @classmethod
    def from_edges(cls, vertices, edges, rank=None, signed=False, connection=None):
        """Build a graph from ``(u, v, label)`` triples.

        ``label`` is the label of the dart ``u -> v``.  ``connection`` may be a
        dart-indexed sequence of mappings, a callable ``(graph) -> connection``,
        or None; None means: recover the unique compatible connection.
        """
        vertices = tuple(vertices)
        index = {v: i for i, v in enumerate(vertices)}
        origin, opposite, labels = [], [], []
        for j, (u, v, lab) in enumerate(edges):
            lab = tuple(int(x) for x in lab)
            origin += [index[u], index[v]]
            opposite += [2 * j + 1, 2 * j]
            if signed:
                labels += [lab, tuple(-x for x in lab)]
            else:
                labels += [normalize_sign(lab)] * 2
        if rank is None:
            rank = len(labels[0]) if labels else 0
        g = cls(vertices, tuple(origin), tuple(opposite), tuple(labels), rank, signed)
        if callable(connection):
            connection = connection(g)
        elif connection is None and labels:
            connection = unique_compatible_connection(g)
        if connection is not None:
            g = g.with_connection(connection)
        return g

    def with_connection(self, connection):
        conn = tuple(dict(c) for c in connection)
        return GkmGraph(self.vertices, self.origin, self.opposite, self.labels,
                        self.rank, self.signed, conn)

    def with_labels(self, labels, rank=None, signed=None):
        signed = self.signed if signed is None else signed
        labels = tuple(tuple(int(x) for x in lab) for lab in labels)
        if not signed:
            labels = tuple(normalize_sign(lab) for lab in labels)
        return GkmGraph(self.vertices, self.origin, self.opposite, labels,
                        self.rank if rank is None else rank, signed, self.connection)

    def transform(self, matrix):
        """Apply a linear map (``rank' x rank`` integer matrix) to every label."""
        labels = [linalg.matvec(matrix, lab) for lab in self.labels]
        return self.with_labels(labels, rank=len(matrix))

    def unsigned(self):
        return self.with_labels(self.labels, signed=False)

    # structure
    @property
    def num_darts(self):
        return len(self.origin)

    @property
    def darts(self):
        return range(len(self.origin))

    def terminus(self, e):
        return self.origin[self.opposite[e]]

    @cached_property
    def stars(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in self.vertices]
        for e, v in enumerate(self.origin):
            if 0 <= v < len(out):
                out[v].append(e)
        return tuple(tuple(s) for s in out)

    def star(self, v):
        return self.stars[v]

    @property
    def valence(self):
        return len(self.stars[0]) if self.vertices else 0

    @cached_property
    def edges(self) -> tuple[int, ...]:
        """One representative dart per undirected edge (the smaller id)."""
        return tuple(e for e in self.darts if e < self.opposite[e])

    @cached_property
    def memo(self) -> dict:
        """Per-instance cache for derived data (bases, restriction matrices)."""
        return {}

    def transport(self, e, e2):
        return self.connection[e][e2]

    def label_form(self, e):
        return self.labels[e]

    def __eq__(self, other):
        if not isinstance(other, GkmGraph):
            return NotImplemented
        return (self.vertices == other.vertices and self.origin == other.origin
                and self.opposite == other.opposite and self.labels == other.labels
                and self.rank == other.rank and self.signed == other.signed
                and self.connection == other.connection)

    __hash__ = None

    def __repr__(self):
        kind = "signed" if self.signed else "unsigned"
        return (f"GkmGraph({kind}, |V|={len(self.vertices)}, |E|={len(self.edges)}, "
                f"valence={self.valence}, rank={self.rank})")


# -- validators ----------------------------------------------------------------

def validate_graph(g: GkmGraph) -> list[str]:
    """Every violated graph/connection axiom, as human readable strings.

    Label congruences are not checked here; see :func:`check_congruence`.
    """
    out = []
    nv, nd = len(g.vertices), g.num_darts
    for e in g.darts:
        if not 0 <= g.origin[e] < nv:
            out.append(f"dart {e}: origin out of range")
        o = g.opposite[e]
        if not 0 <= o < nd:
            out.append(f"dart {e}: opposite out of range")
            continue
        if o == e:
            out.append(f"involution: dart {e} is its own opposite")
        elif g.opposite[o] != e:
            out.append(f"involution: opposite of dart {o} is not dart {e}")
        if g.origin[e] == g.origin[o] and o != e:
            out.append(f"loop: dart {e} starts and ends at vertex {g.vertices[g.origin[e]]}")
    if out:
        return out
    valences = {len(s) for s in g.stars}
    if len(valences) > 1:
        out.append(f"valence: vertex degrees {sorted(valences)} are not constant")
    # connectedness
    if nv:
        seen = {0}
        todo = deque([0])
        while todo:
            v = todo.popleft()
            for e in g.star(v):
                w = g.terminus(e)
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        if len(seen) != nv:
            out.append(f"connectedness: only {len(seen)} of {nv} vertices reachable")
    for e in g.darts:
        if len(g.labels[e]) != g.rank:
            out.append(f"label of dart {e} has length {len(g.labels[e])} != rank {g.rank}")
        elif not any(g.labels[e]):
            out.append(f"label of dart {e} is zero")
    if g.connection is None:
        out.append("connection: missing")
        return out
    if len(g.connection) != nd:
        out.append("connection: wrong number of maps")
        return out
    for e in g.darts:
        src = set(g.star(g.origin[e]))
        dst = set(g.star(g.terminus(e)))
        m = g.connection[e]
        if set(m) != src:
            out.append(f"connection at dart {e}: domain is not the star of its origin")
            continue
        if set(m.values()) != dst or len(set(m.values())) != len(m):
            out.append(f"connection at dart {e}: not a bijection onto the star of its terminus")
        if m.get(e) != g.opposite[e]:
            out.append(f"connection fixes e -> e-bar: violated at dart {e}")
        back = g.connection[g.opposite[e]]
        if any(back.get(f) != x for x, f in m.items()):
            out.append(f"connection at dart {e}: inverse is not the map at its opposite")
    if g.signed:
        for e in g.edges:
            if g.labels[g.opposite[e]] != tuple(-x for x in g.labels[e]):
                out.append(f"signed labels: dart {g.opposite[e]} is not minus dart {e}")
    else:
        for e in g.edges:
            if g.labels[g.opposite[e]] != g.labels[e]:
                out.append(f"unsigned labels: darts {e} and {g.opposite[e]} differ")
    return out


def congruence_coefficient(labels_e, labels_e2, labels_img, signed):
    """``(eps, c)`` with ``img = eps * e2 + c * e``, or None."""
    for eps in ((1,) if signed else (1, -1)):
        diff = tuple(x - eps * y for x, y in zip(labels_img, labels_e2))
        c = integer_multiple(diff, labels_e)
        if c is not None:
            return eps, c
    return None


def check_congruence(g: GkmGraph) -> list[tuple[int, int]]:
    """Pairs ``(e, e2)`` with common origin where the label congruence fails."""
    bad = []
    for e in g.darts:
        for e2 in g.star(g.origin[e]):
            img = g.transport(e, e2)
            if congruence_coefficient(g.labels[e], g.labels[e2], g.labels[img],
                                      g.signed) is None:
                bad.append((e, e2))
    return bad


def check_effectivity(g: GkmGraph, mode: str = "rational") -> bool:
    labels = [lab for lab in g.labels if any(lab)]
    if not labels:
        return g.rank == 0
    if mode == "rational":
        return linalg.rank(labels) == g.rank
    diag = linalg.smith_diagonal(labels)
    return len(diag) == g.rank and all(d == 1 for d in diag)


def gkm_independence_level(g: GkmGraph) -> int:
    """Largest ``j <= n`` such that any ``i <= j`` distinct labels at a vertex are independent."""
    n = g.valence
    level = n
    for v in range(len(g.vertices)):
        classes = sorted({normalize_sign(g.labels[e]) for e in g.star(v)})
        for j in range(1, n + 1):
            if j > level:
                break
            if any(linalg.rank(list(sub)) < j for sub in itertools.combinations(classes, j)):
                level = j - 1
                break
    return level


def unique_compatible_connection(g: GkmGraph):
    """Recover the connection from the labels by brute force over bijections."""
    conn = [None] * g.num_darts
    for e in g.darts:
        if conn[e] is not None:
            continue
        src = [x for x in g.star(g.origin[e]) if x != e]
        dst = [x for x in g.star(g.terminus(e)) if x != g.opposite[e]]
        found = []
        for perm in itertools.permutations(dst):
            ok = all(congruence_coefficient(g.labels[e], g.labels[a], g.labels[b],
                                            g.signed) is not None
                     for a, b in zip(src, perm))
            if ok:
                found.append(perm)
                if len(found) > 1:
                    raise ConnectionNotUnique(f"connection not unique along dart {e}")
        if not found:
            raise NoCompatibleConnection(f"no compatible connection along dart {e}")
        m = dict(zip(src, found[0]))
        m[e] = g.opposite[e]
        conn[e] = m
        conn[g.opposite[e]] = {b: a for a, b in m.items()}
    return tuple(conn)


# -- T-graphs ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class TGraph:
    """A graph with connection plus integer labels ``beta`` forming vertex bases."""

    graph: GkmGraph
    beta: tuple[tuple[int, ...], ...]

    @classmethod
    def from_signed(cls, g: GkmGraph):
        return cls(g.unsigned(), tuple(g.labels))

    @property
    def rank(self):
        return len(self.beta[0]) if self.beta else 0

    def delta(self, e) -> int | None:
        """``delta(e)`` with ``beta(e-bar) = -delta(e) beta(e)``, or None."""
        b, bo = self.beta[e], self.beta[self.graph.opposite[e]]
        if bo == tuple(-x for x in b):
            return 1
        if bo == b:
            return -1
        return None

    def congruence_integer(self, e, e2) -> int | None:
        g = self.graph
        img = self.beta[g.transport(e, e2)]
        diff = tuple(x - y for x, y in zip(img, self.beta[e2]))
        return integer_multiple(diff, self.beta[e])

    def unsigned(self) -> GkmGraph:
        return self.graph.with_labels(self.beta, rank=self.rank, signed=False)

    def __eq__(self, other):
        return (isinstance(other, TGraph) and self.graph == other.graph
                and self.beta == other.beta)

    __hash__ = None


def validate_tgraph(t: TGraph) -> list[str]:
    g = t.graph
    out = [f"graph: {m}" for m in validate_graph(g.with_labels(
        [normalize_sign(b) for b in t.beta], rank=t.rank, signed=False))
        if not m.startswith("unsigned labels")]
    if out:
        return out
    n = g.valence
    if t.rank != n:
        out.append(f"rank {t.rank} differs from valence {n}")
        return out
    for v in range(len(g.vertices)):
        basis = [t.beta[e] for e in g.star(v)]
        if abs(linalg.determinant(basis)) != 1:
            out.append(f"basis: labels at vertex {g.vertices[v]} are not a basis of Z^{n}")
    for e in g.darts:
        if t.delta(e) is None:
            out.append(f"sign rule: beta at dart {g.opposite[e]} is not +-beta at dart {e}")
    for e in g.darts:
        for e2 in g.star(g.origin[e]):
            if t.congruence_integer(e, e2) is None:
                out.append(f"congruence: fails for darts ({e}, {e2})")
    return out
