"""The three-term ABFP-type complex of a GKM graph.

Positions 0, 1, 2 are sums over vertices, edges and 2-faces of polynomial
rings ``S(t_F^*)``, where ``t_F`` is the annihilator lattice of the labels
on ``F``.  A polynomial on ``t_F`` is stored in coordinates of a Z-basis of
``t_F``; the projection ``S(t_F^*) -> S(t_G^*)`` for ``F < G`` is restriction
to the sublattice ``t_G``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from . import linalg
from .cohomology import cohomology_basis
from .faces import FacePoset, SignAssignment, check_regular_cw, face_ideal, face_poset, \
    solve_signs
from .graph import GkmError, GkmGraph
from .poly import substitution_matrix


def _relative_basis(outer, inner):
    """Integer ``R`` with ``outer @ R == inner`` (columns are lattice bases)."""
    m_out = len(outer[0]) if outer and outer[0] else 0
    cols = [[outer[i][j] for i in range(len(outer))] for j in range(m_out)]
    m_in = len(inner[0]) if inner and inner[0] else 0
    r = [[0] * m_in for _ in range(m_out)]
    for j in range(m_in):
        target = [inner[i][j] for i in range(len(inner))]
        sol = linalg.solve(cols, target)
        if sol is None or any(x.denominator != 1 for x in sol):
            raise GkmError("face lattices are not nested")
        for i, x in enumerate(sol):
            r[i][j] = int(x)
    return r


def _bump(vec, key, x):
    y = vec.get(key, 0) + x
    if y:
        vec[key] = y
    else:
        vec.pop(key, None)


@dataclass
class DegreeSlice:
    degree: int
    dims: tuple                 # (AB^0, AB^1, AB^2)
    d0: list                    # columns: dict row -> value
    d1: list


@dataclass
class AbfpComplex:
    graph: GkmGraph
    poset: FacePoset            # S_2
    signs: SignAssignment
    bases: dict                 # face index -> k x m annihilator basis
    mode: str = "rational"
    _slices: dict = field(default_factory=dict, repr=False)

    def terms(self, r):
        return self.poset.by_rank(r)

    def _offsets(self, r, d):
        offs, pos = {}, 0
        for f in self.terms(r):
            m = len(self.bases[f][0]) if self.bases[f] and self.bases[f][0] else 0
            offs[f] = pos
            pos += comb(d + m - 1, m - 1) if m else int(d == 0)
        return offs, pos

    def _map(self, lower_rank, d):
        src_offs, src_dim = self._offsets(lower_rank, d)
        dst_offs, dst_dim = self._offsets(lower_rank + 1, d)
        cols = [dict() for _ in range(src_dim)]
        for low in self.terms(lower_rank):
            for up in self.poset.upper_covers[low]:
                sign = self.signs[(up, low)]
                rel = _relative_basis(self.bases[low], self.bases[up])
                if not rel or not rel[0]:
                    # a zero lattice on either side: only constants survive
                    if d == 0:
                        _bump(cols[src_offs[low]], dst_offs[up], sign)
                    continue
                _, sub = substitution_matrix(rel, d)
                for i, col in enumerate(sub):
                    target = cols[src_offs[low] + i]
                    for j, c in col.items():
                        _bump(target, dst_offs[up] + j, sign * c)
        return cols, src_dim, dst_dim

    def slice(self, two_d: int) -> DegreeSlice:
        if two_d in self._slices:
            return self._slices[two_d]
        d = two_d // 2
        d0, n0, n1 = self._map(0, d)
        d1, _, n2 = self._map(1, d)
        s = DegreeSlice(two_d, (n0, n1, n2), d0, d1)
        self._slices[two_d] = s
        return s


def build_abfp(g: GkmGraph, signs: SignAssignment | None = None,
               mode: str = "rational") -> AbfpComplex:
    poset = face_poset(g).truncated(2)
    if not check_regular_cw(poset):
        raise GkmError("complex undefined: S_2 is not a regular CW cell poset")
    if signs is None:
        signs = solve_signs(poset)[0]
    bases = {}
    for i, f in enumerate(poset.faces):
        bases[i] = face_ideal(g, f, mode).basis_matrix
    return AbfpComplex(g, poset, signs, bases, mode)


def _apply(cols, vec):
    out: dict = {}
    for j, x in vec.items():
        for i, c in cols[j].items():
            _bump(out, i, x * c)
    return out


def _rank_of_columns(cols):
    ech = linalg.Echelon()
    for c in cols:
        if c:
            ech.add(c)
    return ech.rank


def check_cochain(c: AbfpComplex, D: int) -> bool:
    for two_d in range(0, D + 1, 2):
        s = c.slice(two_d)
        for col in s.d0:
            if _apply(s.d1, col):
                return False
    return True


def homology_at(c: AbfpComplex, position, D: int) -> tuple:
    """Per-degree homology dimensions at ``"H"``, ``0`` or ``1``."""
    out = []
    for two_d in range(0, D + 1, 2):
        s = c.slice(two_d)
        n0, n1, _ = s.dims
        if position == "H":
            basis = cohomology_basis(c.graph, two_d, c.mode)
            out.append(basis.dim - linalg.rank(basis.vectors))
        elif position == 0:
            basis = cohomology_basis(c.graph, two_d, c.mode)
            nullity = n0 - _rank_of_columns(s.d0)
            out.append(nullity - linalg.rank(basis.vectors))
        elif position == 1:
            nullity = n1 - _rank_of_columns(s.d1)
            out.append(nullity - _rank_of_columns(s.d0))
        else:
            raise ValueError(f"unknown position {position!r}")
    return tuple(out)


def homology_table(c: AbfpComplex, D: int) -> dict:
    return {str(pos): homology_at(c, pos, D) for pos in ("H", 0, 1)}


def torsion_report(c: AbfpComplex, two_d: int) -> list[int]:
    """Smith invariants > 1 of ``d0`` in one degree (informational)."""
    s = c.slice(two_d)
    n0, n1, _ = s.dims
    dense = [[s.d0[j].get(i, 0) for j in range(n0)] for i in range(n1)]
    if not dense or not n0:
        return []
    return [x for x in linalg.smith_diagonal(dense) if x > 1]


@dataclass
class SignIndependence:
    skipped: bool
    equal: bool | None
    tables: list


def sign_independence_check(g: GkmGraph, D: int) -> SignIndependence:
    poset = face_poset(g).truncated(2)
    sols = solve_signs(poset, count=2)
    if len(sols) < 2:
        return SignIndependence(True, None, [])
    tables = [homology_table(build_abfp(g, s), D) for s in sols]
    return SignIndependence(False, tables[0] == tables[1], tables)
