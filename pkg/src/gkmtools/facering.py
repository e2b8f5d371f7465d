"""Face rings of torus graphs and their comparison with graph cohomology.

A face ``F`` of an ``n``-valent torus graph gives a generator ``tau_F`` of
degree ``2 (n - rk F)``: facets sit in degree 2 and vertices in degree
``2n``; the whole graph is ``tau = 1``.  Monomials are tuples of
``(face index, exponent)`` sorted by face index; an element is a dict from
monomials to coefficients.  Normal forms are supported on chains.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import linalg
from .cohomology import CohomologyClass, cohomology_basis, hilbert_function, \
    kernel_of_projection, thom_class
from .extension import check_extension, lift_to_tgraph
from .faces import FacePoset, face_poset
from .graph import GkmError, GkmGraph, TGraph
from .poly import Polynomial


# -- simplicial poset check ----------------------------------------------------

@dataclass
class SimplicialPosetCheck:
    simplicial: bool
    failures: list = field(default_factory=list)   # (face index, reason)


def check_simplicial_opposite(poset: FacePoset) -> SimplicialPosetCheck:
    """Every up-set ``{G >= F}`` must be Boolean of rank ``n - rk F``."""
    n = poset.top_rank
    fails = []
    for a, face in enumerate(poset.faces):
        atoms = poset.upper_covers[a]
        if len(atoms) != n - face.rank:
            fails.append((a, f"{len(atoms)} upper covers, expected {n - face.rank}"))
            continue
        ups = poset.up_set(a)
        shadow = {}
        for b in ups:
            shadow[b] = frozenset(x for x in atoms if poset.leq(x, b)) if b != a \
                else frozenset()
        if len(set(shadow.values())) != len(ups) or len(ups) != 2 ** len(atoms):
            fails.append((a, "up-set is not a Boolean lattice"))
            continue
        if any(poset.leq(b, c) != (shadow[b] <= shadow[c]) for b in ups for c in ups):
            fails.append((a, "up-set order differs from subset order"))
    return SimplicialPosetCheck(not fails, fails)


# -- monomials and straightening -----------------------------------------------

def _mono_mul(*monos):
    exps: dict = {}
    for m in monos:
        for f, a in m:
            exps[f] = exps.get(f, 0) + a
    return tuple(sorted(exps.items()))


def _add_into(out, mono, c):
    y = out.get(mono, 0) + c
    if y:
        out[mono] = y
    else:
        out.pop(mono, None)


@dataclass
class FaceRingElement:
    poset: FacePoset
    terms: dict            # monomial -> coefficient

    def degree_of(self, mono):
        n = self.poset.top_rank
        return sum(2 * (n - self.poset.faces[f].rank) * a for f, a in mono)

    def is_zero(self):
        return not self.terms

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms):
            c = self.terms[mono]
            body = "*".join(f"t{f}" + (f"^{a}" if a > 1 else "") for f, a in mono) or "1"
            parts.append(f"{c}*{body}")
        return " + ".join(parts)


class Straightener:
    """Rewrites products of ``tau``'s into chain-supported normal form.

    ``hook(F, G, join, meets)`` is called for every relation applied.  With
    ``rng`` the incomparable pair rewritten is chosen at random, otherwise the
    first in index order; results are cached only in the deterministic case.
    """

    def __init__(self, poset: FacePoset, hook=None, rng: random.Random | None = None):
        check = check_simplicial_opposite(poset)
        if not check.simplicial:
            raise GkmError("face poset is not simplicial: " + check.failures[0][1])
        self.poset = poset
        self.top = poset.top
        self.hook = hook
        self.rng = rng
        self._cache: dict = {}

    def _pairs(self, mono):
        support = [f for f, _ in mono]
        out = []
        for i, f in enumerate(support):
            for g in support[i + 1:]:
                if not (self.poset.leq(f, g) or self.poset.leq(g, f)):
                    out.append((f, g))
        return out

    def monomial(self, mono) -> dict:
        mono = tuple((f, a) for f, a in mono if f != self.top)
        if self.rng is None and mono in self._cache:
            return self._cache[mono]
        pairs = self._pairs(mono)
        if not pairs:
            out = {mono: 1}
        else:
            f, g = self.rng.choice(pairs) if self.rng else pairs[0]
            meets = self.poset.meet_components(f, g)
            out = {}
            if meets:
                j = self.poset.join(f, g)
                if self.hook:
                    self.hook(f, g, j, meets)
                rest = dict(mono)
                for x in (f, g):
                    rest[x] -= 1
                base = tuple((x, a) for x, a in sorted(rest.items()) if a)
                for h in meets:
                    for m, c in self.monomial(_mono_mul(base, ((j, 1),), ((h, 1),))).items():
                        _add_into(out, m, c)
            elif self.hook:
                self.hook(f, g, None, [])
        if self.rng is None:
            self._cache[mono] = out
        return out

    def element(self, terms: dict) -> dict:
        out: dict = {}
        for mono, c in terms.items():
            for m, c2 in self.monomial(mono).items():
                _add_into(out, m, c * c2)
        return out


def straighten(poset: FacePoset, terms, rng=None) -> FaceRingElement:
    """Normal form of a product (a tuple of face indices) or of a dict element."""
    if not isinstance(terms, dict):
        terms = {_mono_mul(*(((f, 1),) for f in terms)): 1}
    return FaceRingElement(poset, Straightener(poset, rng=rng).element(terms))


# -- chain monomial basis ------------------------------------------------------

def _face_degree(poset, f):
    return 2 * (poset.top_rank - poset.faces[f].rank)


def chain_monomials(poset: FacePoset, two_d: int) -> list[tuple]:
    """Chain-supported monomials of degree ``two_d``, sorted."""
    cache = poset.__dict__.setdefault("_chain_monomials", {})
    if two_d in cache:
        return cache[two_d]
    faces = [f for f in range(len(poset)) if f != poset.top]
    above = {f: [g for g in faces if g != f and poset.leq(f, g)] for f in faces}
    out = []

    def rec(candidates, left, acc):
        if left == 0:
            out.append(tuple(sorted(acc)))
            return
        for f in candidates:
            deg = _face_degree(poset, f)
            for a in range(1, left // deg + 1):
                acc.append((f, a))
                rec(above[f], left - a * deg, acc)
                acc.pop()

    rec(faces, two_d, [])
    out.sort()
    cache[two_d] = out
    return out


def face_ring_hilbert(poset: FacePoset, D: int) -> tuple[int, ...]:
    return tuple(len(chain_monomials(poset, two_d)) for two_d in range(0, D + 1, 2))


# -- the morphism to graph cohomology ------------------------------------------

class FaceMap:
    """``tau_F -> Th_F`` for a T-graph, with relation checks on demand."""

    def __init__(self, t: TGraph, poset: FacePoset | None = None):
        self.t = t
        self.graph = t.unsigned()
        self.poset = poset or face_poset(t.graph)
        self._values = {}
        self._checked: set = set()

    def face_values(self, f):
        if f not in self._values:
            face = self.poset.faces[f]
            self._values[f] = thom_class(self.t, face).values
        return self._values[f]

    def monomial_values(self, mono):
        k = self.t.rank
        vals = [Polynomial.constant(k, 1)] * len(self.graph.vertices)
        for f, a in mono:
            fv = self.face_values(f)
            for _ in range(a):
                vals = [x * y for x, y in zip(vals, fv)]
        return vals

    def image(self, terms: dict, two_d: int) -> CohomologyClass:
        k = self.t.rank
        vals = [Polynomial(k)] * len(self.graph.vertices)
        for mono, c in terms.items():
            mv = self.monomial_values(mono)
            vals = [x + Polynomial.constant(k, c) * y for x, y in zip(vals, mv)]
        return CohomologyClass.from_values(self.graph, two_d, vals)

    def check_relation(self, f, g, j, meets):
        key = (min(f, g), max(f, g))
        if key in self._checked:
            return
        lhs = self.monomial_values(((f, 1),) if f == g else tuple(sorted(((f, 1), (g, 1)))))
        k = self.t.rank
        rhs = [Polynomial(k)] * len(lhs)
        for h in meets:
            mv = self.monomial_values(_mono_mul(((j, 1),), ((h, 1),)))
            rhs = [x + y for x, y in zip(rhs, mv)]
        if lhs != rhs:
            raise GkmError(f"relation violation for faces {f}, {g}")
        self._checked.add(key)


def _tgraph(g):
    if isinstance(g, TGraph):
        return g
    return lift_to_tgraph(g.unsigned() if g.signed else g)


def facemap_morphism(gT, face_or_element, two_d: int | None = None) -> CohomologyClass:
    """Image of a face (as ``tau_F``) or of a face-ring element.

    Elements are straightened first; every relation applied is checked on
    the image side.
    """
    t = _tgraph(gT)
    if isinstance(face_or_element, FaceRingElement):
        el = face_or_element
        fm = FaceMap(t, el.poset)
        normal = Straightener(el.poset, hook=fm.check_relation).element(el.terms)
        if two_d is None:
            degs = {el.degree_of(m) for m in el.terms} or {0}
            if len(degs) != 1:
                raise GkmError("element is not homogeneous")
            two_d = degs.pop()
        return fm.image(normal, two_d)
    return thom_class(t, face_or_element)


@dataclass
class IsoRow:
    degree: int
    monomials: int
    image_rank: int
    cohomology_dim: int
    images_are_classes: bool

    @property
    def iso(self):
        return (self.images_are_classes and self.monomials == self.image_rank
                == self.cohomology_dim)


def check_facemap_iso(gT, D: int) -> list[IsoRow]:
    t = _tgraph(gT)
    poset = face_poset(t.graph)
    fm = FaceMap(t, poset)
    rows = []
    for two_d in range(0, D + 1, 2):
        monos = chain_monomials(poset, two_d)
        images = [fm.image({m: 1}, two_d).vector for m in monos]
        basis = cohomology_basis(fm.graph, two_d)
        ech = linalg.Echelon()
        for v in basis.vectors:
            ech.add(v)
        inside = all(ech.contains(v) for v in images)
        rows.append(IsoRow(two_d, len(monos), linalg.rank(images), basis.dim, inside))
    return rows


def verify_relations(gT) -> list[tuple[int, int]]:
    """All incomparable face pairs whose relation fails on Thom classes."""
    t = _tgraph(gT)
    poset = face_poset(t.graph)
    fm = FaceMap(t, poset)
    bad = []
    for f in range(len(poset)):
        for g in range(f + 1, len(poset)):
            if poset.leq(f, g) or poset.leq(g, f):
                continue
            meets = poset.meet_components(f, g)
            j = poset.join(f, g) if meets else None
            try:
                fm.check_relation(f, g, j, meets)
            except GkmError:
                bad.append((f, g))
    return bad


# -- quotient comparison -------------------------------------------------------

@dataclass
class QuotientRow:
    degree: int
    face_ring_dim: int
    ideal_dim: int
    target_dim: int

    @property
    def quotient_dim(self):
        return self.face_ring_dim - self.ideal_dim

    @property
    def agree(self):
        return self.quotient_dim == self.target_dim


@dataclass
class QuotientCheck:
    generators: list          # FaceRingElements of degree 2
    rows: list

    @property
    def agree(self):
        return all(r.agree for r in self.rows)


def theorem2_quotient_check(gK: GkmGraph, gT: GkmGraph, p, D: int) -> QuotientCheck:
    """Compare ``k[S]/I`` with ``H_K(gK)`` degreewise.

    ``I`` is generated by the degree-2 face-ring preimages of the constant
    classes ``a . 1`` with ``a`` in ``ker p``.
    """
    check_extension(gK, gT, p)
    t = _tgraph(gT)
    poset = face_poset(gT)
    fm = FaceMap(t, poset)
    facets = chain_monomials(poset, 2)
    cols = [list(fm.image({m: 1}, 2).vector) for m in facets]
    if linalg.rank(cols) != len(cols) or len(cols) != cohomology_basis(fm.graph, 2).dim:
        raise GkmError("facemap is not an isomorphism in degree 2")

    n = gT.rank
    gens = []
    for a in kernel_of_projection(p, n):
        one = Polynomial.linear(a)
        target = CohomologyClass.from_values(fm.graph, 2, [one] * len(gT.vertices)).vector
        sol = linalg.solve(cols, list(target))
        if sol is None:
            raise GkmError("kernel form has no face-ring preimage")
        coeffs = linalg.clear_denominators(sol)
        gens.append(FaceRingElement(poset, {m: c for m, c in zip(facets, coeffs) if c}))

    st = Straightener(poset)
    target_dims = hilbert_function(gK, D)
    rows = []
    for d, two_d in enumerate(range(0, D + 1, 2)):
        basis = chain_monomials(poset, two_d)
        index = {m: i for i, m in enumerate(basis)}
        ech = linalg.Echelon(len(basis))
        if two_d >= 2:
            for gen in gens:
                for m in chain_monomials(poset, two_d - 2):
                    prod = {}
                    for gm, c in gen.terms.items():
                        _add_into(prod, _mono_mul(gm, m), c)
                    normal = st.element(prod)
                    ech.add({index[x]: c for x, c in normal.items()})
        rows.append(QuotientRow(two_d, len(basis), ech.rank, target_dims[d]))
    return QuotientCheck(gens, rows)
