"""Connection-invariant faces, the face poset and incidence signs."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from . import linalg
from .graph import GkmError, GkmGraph


@dataclass(frozen=True)
class Face:
    vertices: frozenset
    darts: frozenset
    rank: int

    @property
    def key(self):
        return (self.rank, tuple(sorted(self.vertices)), tuple(sorted(self.darts)))

    def __le__(self, other):
        return self.vertices <= other.vertices and self.darts <= other.darts

    def __lt__(self, other):
        return self != other and self <= other

    def edges(self, g: GkmGraph):
        return sorted(e for e in self.darts if e < g.opposite[e])


def _close(g: GkmGraph, v: int, seed, i: int):
    sets = {v: frozenset(seed)}
    todo = [v]
    while todo:
        u = todo.pop()
        here = sets[u]
        for e in here:
            w = g.terminus(e)
            image = frozenset(g.transport(e, x) for x in here)
            old = sets.get(w)
            if old == image:
                continue
            new = image if old is None else old | image
            if len(new) > i:
                return None
            sets[w] = new
            todo.append(w)
    if any(len(s) != i for s in sets.values()):
        return None
    darts = frozenset().union(*sets.values()) if sets else frozenset()
    return Face(frozenset(sets), darts, i)


def enumerate_faces(g: GkmGraph, i: int) -> list[Face]:
    """All rank-``i`` faces, by seeding at every (vertex, i-subset of darts)."""
    n = g.valence
    if not 0 <= i <= n:
        raise GkmError(f"face rank {i} outside 0..{n}")
    found = {}
    for v in range(len(g.vertices)):
        for seed in itertools.combinations(g.star(v), i):
            face = _close(g, v, seed, i)
            if face is not None:
                found.setdefault(face.key, face)
    return [found[k] for k in sorted(found)]


def transversal_facet_seed(g: GkmGraph, v: int, e: int):
    return [x for x in g.star(v) if x != e]


class FacePoset:
    """All faces of a graph, ranked by valence and ordered by inclusion."""

    def __init__(self, faces, graph: GkmGraph | None = None):
        self.graph = graph
        self.faces: list[Face] = sorted(faces, key=lambda f: f.key)
        self.index = {f.key: i for i, f in enumerate(self.faces)}
        self.top_rank = max((f.rank for f in self.faces), default=0)

    @classmethod
    def of_graph(cls, g: GkmGraph):
        faces = []
        for i in range(g.valence + 1):
            faces += enumerate_faces(g, i)
        return cls(faces, g)

    def __len__(self):
        return len(self.faces)

    def rank_of(self, i):
        return self.faces[i].rank

    def by_rank(self, r) -> list[int]:
        return [i for i, f in enumerate(self.faces) if f.rank == r]

    def rank_profile(self):
        return tuple(len(self.by_rank(r)) for r in range(self.top_rank + 1))

    def leq(self, a, b):
        return self.faces[a] <= self.faces[b]

    @cached_property
    def covers(self) -> list[tuple[int, int]]:
        """Covering pairs ``(lower, upper)``, consecutive ranks, inclusion order."""
        out = []
        for r in range(self.top_rank):
            for a in self.by_rank(r):
                for b in self.by_rank(r + 1):
                    if self.faces[a] <= self.faces[b]:
                        out.append((a, b))
        return out

    @cached_property
    def upper_covers(self):
        up = {i: [] for i in range(len(self.faces))}
        for a, b in self.covers:
            up[a].append(b)
        return up

    @cached_property
    def lower_covers(self):
        down = {i: [] for i in range(len(self.faces))}
        for a, b in self.covers:
            down[b].append(a)
        return down

    def up_set(self, a) -> list[int]:
        return [b for b in range(len(self.faces)) if self.faces[a] <= self.faces[b]]

    def find(self, face: Face) -> int:
        return self.index[face.key]

    @property
    def top(self) -> int | None:
        tops = self.by_rank(self.top_rank)
        return tops[0] if len(tops) == 1 else None

    def truncated(self, r: int) -> "FacePoset":
        return FacePoset([f for f in self.faces if f.rank <= r], self.graph)

    def is_chain(self, elements) -> bool:
        els = sorted(set(elements), key=lambda i: self.faces[i].rank)
        return all(self.faces[a] <= self.faces[b] for a, b in zip(els, els[1:]))

    def meet_components(self, a, b) -> list[int]:
        """Connected components of the intersection of two faces, as faces."""
        fa, fb = self.faces[a], self.faces[b]
        verts = fa.vertices & fb.vertices
        darts = fa.darts & fb.darts
        if not verts:
            return []
        g = self.graph
        out = []
        left = set(verts)
        while left:
            v = min(left)
            comp_v, comp_d = {v}, set()
            todo = [v]
            while todo:
                u = todo.pop()
                for e in g.star(u):
                    if e in darts:
                        comp_d.update((e, g.opposite[e]))
                        w = g.terminus(e)
                        if w not in comp_v:
                            comp_v.add(w)
                            todo.append(w)
            left -= comp_v
            degs = {sum(1 for e in g.star(u) if e in comp_d) for u in comp_v}
            if len(degs) != 1:
                raise GkmError("intersection component is not of constant valence")
            face = Face(frozenset(comp_v), frozenset(comp_d), degs.pop())
            if face.key not in self.index:
                raise GkmError("intersection component is not a face")
            out.append(self.index[face.key])
        return sorted(out)

    def join(self, a, b) -> int:
        """The least face containing both; errors if absent or not unique."""
        fa, fb = self.faces[a], self.faces[b]
        uppers = [i for i, f in enumerate(self.faces) if fa <= f and fb <= f]
        if not uppers:
            raise GkmError("no common upper face")
        minimal = [i for i in uppers
                   if not any(j != i and self.faces[j] <= self.faces[i] for j in uppers)]
        if len(minimal) != 1:
            raise GkmError("least upper face not unique")
        return minimal[0]


def face_poset(g: GkmGraph) -> FacePoset:
    return FacePoset.of_graph(g)


# -- regular CW structure of S_2 and incidence signs ---------------------------

def check_regular_cw(poset: FacePoset) -> bool:
    faces = poset.faces
    for e in poset.by_rank(1):
        if len(poset.lower_covers[e]) != 2:
            return False
    for f in poset.by_rank(2):
        face = faces[f]
        edges = poset.lower_covers[f]
        if len(edges) != len(face.vertices):
            return False
        for v in poset.by_rank(0):
            if faces[v] <= face:
                between = [e for e in edges if faces[v] <= faces[e]]
                if len(between) != 2:
                    return False
    return True


@dataclass
class SignAssignment:
    """Incidence signs ``[upper : lower]`` on covering pairs of ranks <= 2."""

    signs: dict

    def __getitem__(self, pair):
        return self.signs[pair]

    def flipped(self, pair):
        s = dict(self.signs)
        s[pair] = -s[pair]
        return SignAssignment(s)


def diamonds(poset: FacePoset):
    """``(covering pairs involved)`` for every length-2 interval in S_2.

    The augmentation below vertices is included: for an edge with ends ``u``,
    ``w`` the signs ``[e:u]`` and ``[e:w]`` must be opposite.
    """
    out = []
    for e in poset.by_rank(1):
        ends = poset.lower_covers[e]
        out.append([(e, v) for v in ends])
    for f in poset.by_rank(2):
        for v in poset.by_rank(0):
            if not poset.faces[v] <= poset.faces[f]:
                continue
            mids = [e for e in poset.lower_covers[f] if poset.faces[v] <= poset.faces[e]]
            pairs = []
            for e in mids:
                pairs += [(f, e), (e, v)]
            out.append(pairs)
    return out


def solve_sign_system(pairs, diamond_list, count: int = 1):
    """Solve the GF(2) system ``sum = 1`` per diamond; one bit per pair.

    Returns up to ``count`` distinct :class:`SignAssignment`s.
    """
    pairs = list(pairs)
    var = {p: i for i, p in enumerate(pairs)}
    eqs = []
    for dia in diamond_list:
        bits = {}
        for p in dia:
            bits[var[p]] = bits.get(var[p], 0) ^ 1
        eqs.append(([v for v, b in bits.items() if b], 1))
    sol = linalg.gf2_solve(eqs, len(pairs))
    if sol is None:
        raise GkmError("no sign assignment exists")
    particular, null = sol
    out = []
    for extra in [None] + null:
        if len(out) >= count:
            break
        bits = particular if extra is None else [a ^ b for a, b in zip(particular, extra)]
        out.append(SignAssignment({p: (-1) ** bits[var[p]] for p in pairs}))
    return out


def solve_signs(poset: FacePoset, count: int = 1):
    """Incidence signs for S_2; a list with up to ``count`` distinct solutions."""
    pairs = [(b, a) for a, b in poset.covers if poset.faces[b].rank <= 2]
    return solve_sign_system(pairs, diamonds(poset), count)


# -- face ideals ---------------------------------------------------------------

@dataclass(frozen=True)
class FaceAnnihilator:
    generators: tuple            # one label per unsigned edge of the face
    annihilator: tuple           # Z-basis of {xi : <alpha, xi> = 0 on the face}
    saturated: bool
    k: int

    @property
    def basis_matrix(self):
        """``k x m`` matrix whose columns are the annihilator basis."""
        return [[vec[i] for vec in self.annihilator] for i in range(self.k)]


def face_ideal(g: GkmGraph, face: Face, mode: str = "rational") -> FaceAnnihilator:
    gens = tuple(g.labels[e] for e in face.edges(g))
    k = g.rank
    rows = [list(x) for x in gens]
    ann = tuple(linalg.integer_kernel_basis(rows, cols=k)) if rows else tuple(
        tuple(int(i == j) for j in range(k)) for i in range(k))
    saturated = linalg.is_saturated(rows, k)
    if mode == "integer" and not saturated:
        raise GkmError("label span of face is not saturated (integer mode)")
    return FaceAnnihilator(gens, ann, saturated, k)
