import random

import pytest

from gkmtools import linalg
from gkmtools.catalog import CP4_PROJECTION, FLAG_PROJECTION, cp4_projected, cpn_torus, \
    fig3, flag_su3
from gkmtools.cohomology import hilbert_function, thom_class
from gkmtools.extension import lift_to_tgraph
from gkmtools.faces import FacePoset, face_poset
from gkmtools.facering import (FaceRingElement, Straightener, chain_monomials,
                               check_facemap_iso, check_simplicial_opposite,
                               face_ring_hilbert, facemap_morphism, straighten,
                               theorem2_quotient_check, verify_relations)
from gkmtools.graph import GkmError, GkmGraph


def test_simplicial_check():
    assert check_simplicial_opposite(face_poset(cpn_torus(3))).simplicial
    assert check_simplicial_opposite(face_poset(fig3())).simplicial
    # drop one triangle of the simplex: its edges lose an upper cover
    full = face_poset(cpn_torus(3))
    dropped = full.by_rank(2)[0]
    p = FacePoset([f for i, f in enumerate(full.faces) if i != dropped])
    check = check_simplicial_opposite(p)
    assert not check.simplicial and check.failures
    with pytest.raises(GkmError, match="not simplicial"):
        Straightener(p)


def test_disjoint_vertices_multiply_to_zero():
    p = face_poset(cpn_torus(3))
    v0, v1 = p.by_rank(0)[:2]
    assert straighten(p, (v0, v1)).is_zero()


def test_two_facets_of_cp3():
    # tau_F tau_G for two facets (triangles) of the simplex: meet is their
    # common edge, join is the top, so the product is tau_edge
    p = face_poset(cpn_torus(3))
    f, g = p.by_rank(2)[:2]
    (edge,) = p.meet_components(f, g)
    el = straighten(p, (f, g))
    assert el.terms == {((edge, 1),): 1}


def test_chain_normal_form_is_fixed():
    p = face_poset(fig3())
    for mono in chain_monomials(p, 4):
        assert straighten(p, {mono: 1}).terms == {mono: 1}


@pytest.mark.parametrize("g", [cpn_torus(3), fig3()], ids=["cp3", "fig3"])
def test_straightening_is_confluent(g):
    p = face_poset(g)
    faces = [f for f in range(len(p)) if f != p.top]
    rng = random.Random(11)
    for _ in range(25):
        prod = tuple(rng.choice(faces) for _ in range(3))
        ref = straighten(p, prod).terms
        for seed in range(3):
            assert straighten(p, prod, rng=random.Random(seed)).terms == ref


def test_face_degrees_and_top():
    p = face_poset(cpn_torus(3))
    el = FaceRingElement(p, {((p.top, 1),): 1})
    assert el.degree_of(((p.top, 1),)) == 0
    v = p.by_rank(0)[0]
    assert el.degree_of(((v, 1),)) == 6
    assert straighten(p, (p.top, v)).terms == {((v, 1),): 1}


@pytest.mark.parametrize("g,expected", [(cpn_torus(3), (1, 4, 10, 20, 34)),
                                        (cpn_torus(4), (1, 5, 15, 35, 70)),
                                        (fig3(), (1, 3, 12, 27, 48))],
                         ids=["cp3", "cp4", "fig3"])
def test_face_ring_hilbert_matches_cohomology(g, expected):
    assert face_ring_hilbert(face_poset(g), 8) == hilbert_function(g, 8) == expected


def test_facemap_iso_small():
    for row in check_facemap_iso(cpn_torus(3), 6):
        assert row.iso


def test_facemap_on_faces_is_thom_class():
    t = lift_to_tgraph(fig3())
    p = face_poset(t.graph)
    for f in range(len(p)):
        assert facemap_morphism(t, p.faces[f]).vector == thom_class(t, p.faces[f]).vector


def test_facemap_respects_products():
    t = lift_to_tgraph(cpn_torus(3).unsigned())
    p = face_poset(t.graph)
    a, b = p.by_rank(2)[:2]
    el = FaceRingElement(p, {((a, 1), (b, 1)): 1})
    prod = thom_class(t, p.faces[a]) * thom_class(t, p.faces[b])
    assert facemap_morphism(t, el).vector == prod.vector


def test_no_relation_violations():
    assert verify_relations(cpn_torus(3)) == []
    assert verify_relations(fig3()) == []


def test_theorem2_cp4():
    res = theorem2_quotient_check(cp4_projected(), cpn_torus(4), CP4_PROJECTION, 8)
    assert res.agree
    assert len(res.generators) == 1
    assert [(r.face_ring_dim, r.ideal_dim, r.target_dim) for r in res.rows] == \
        [(1, 0, 1), (5, 1, 4), (15, 5, 10), (35, 15, 20), (70, 35, 35)]


def test_theorem2_identity_has_no_generators():
    g = cpn_torus(3)
    res = theorem2_quotient_check(g, g, linalg.identity(3), 6)
    assert res.generators == [] and res.agree


def test_theorem2_fig3_flag_disagrees():
    # the hypotheses fail here (flag_su3 is only GKM_2); degree 2 already differs
    res = theorem2_quotient_check(flag_su3(), fig3(), FLAG_PROJECTION, 2)
    assert not res.agree
    assert (res.rows[1].quotient_dim, res.rows[1].target_dim) == (2, 4)


def test_doubled_facet_is_simplicial():
    # two edges over the same pair of vertices; both are facets
    g = GkmGraph.from_edges("ab", [("a", "b", (1, 0)), ("a", "b", (0, 1))], rank=2)
    p = face_poset(g)
    assert p.rank_profile() == (2, 2, 1)
    assert check_simplicial_opposite(p).simplicial
    assert face_ring_hilbert(p, 6) == hilbert_function(g, 6) == (1, 2, 4, 6)
    assert all(r.iso for r in check_facemap_iso(g, 6))


def test_edge_square_is_normal():
    p = face_poset(cpn_torus(3))
    e = p.by_rank(1)[0]
    assert straighten(p, (e, e)).terms == {((e, 2),): 1}
