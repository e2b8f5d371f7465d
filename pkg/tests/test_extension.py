import pytest

from gkmtools import linalg
from gkmtools.catalog import CP4_PROJECTION, FLAG_PROJECTION, cp4_projected, cpn_torus, \
    fig3, flag_su3
from gkmtools.extension import (CharacteristicFunction, ExtensionError, check_extension,
                                check_unimodular, facet_normals, facets, is_torus_graph,
                                lift_to_tgraph, normalize_projection, search_extension,
                                tgraph_from_characteristic)
from gkmtools.graph import GkmError, normalize_sign, validate_tgraph


def test_catalog_extensions_hold():
    check_extension(flag_su3(), fig3(), FLAG_PROJECTION)
    check_extension(cp4_projected(), cpn_torus(4), CP4_PROJECTION)
    check_extension(fig3(), fig3(), linalg.identity(3))


def test_wrong_projection_rejected():
    with pytest.raises(ExtensionError, match="label mismatch"):
        check_extension(flag_su3(), fig3(), [[1, 0, 0], [0, 1, 1]])
    with pytest.raises(ExtensionError, match="matrix"):
        check_extension(flag_su3(), fig3(), [[1, 0], [0, 1]])
    with pytest.raises(ExtensionError, match="underlying graphs differ"):
        check_extension(flag_su3(), cpn_torus(3), [[1, 0, 1], [0, 1, 1]])


def test_normalize_projection():
    for p in (FLAG_PROJECTION, CP4_PROJECTION):
        q, a = normalize_projection(p)
        k, n = len(p), len(p[0])
        lhs = linalg.matmul(linalg.matmul(a, p), linalg.integer_inverse(q))
        assert lhs == [[int(i == j) for j in range(n)] for i in range(k)]
    with pytest.raises(ExtensionError):
        normalize_projection([[2, 0]])


def _sign_classes(g):
    return tuple(normalize_sign(g.labels[e]) for e in g.edges)


def test_search_finds_known_extensions():
    for gK, gT, p in ((flag_su3(), fig3(), FLAG_PROJECTION),
                      (cp4_projected(), cpn_torus(4), CP4_PROJECTION)):
        q, a = normalize_projection(p)
        # move the problem to the coordinate projection
        source = gK.transform(a)
        target = gT.transform(q)
        check_extension(source, target, [[int(i == j) for j in range(gT.rank)]
                                         for i in range(gK.rank)])
        found = {_sign_classes(s) for s in search_extension(source, gT.rank, bound=1)}
        assert _sign_classes(target) in found


def test_search_same_rank_is_identity():
    g = fig3()
    (only,) = search_extension(g, 3, bound=2)
    assert only.labels == g.labels


def test_search_solutions_are_extensions():
    sols = search_extension(flag_su3(), 3, bound=1)
    assert sols
    for s in sols:
        check_extension(flag_su3(), s, [[1, 0, 0], [0, 1, 0]])


def test_facet_normals():
    assert len(facet_normals(lift_to_tgraph(cpn_torus(3).unsigned())).values) == 4
    chi = facet_normals(lift_to_tgraph(fig3()))
    assert len(chi.values) == 3
    assert sorted(map(tuple, map(normalize_sign, chi.values))) == \
        [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


@pytest.mark.parametrize("g", [fig3(), cpn_torus(2).unsigned(), cpn_torus(3).unsigned(),
                               cpn_torus(4).unsigned()], ids=["fig3", "cp2", "cp3", "cp4"])
def test_lift_and_round_trip(g):
    assert is_torus_graph(g)
    t = lift_to_tgraph(g)
    assert validate_tgraph(t) == []
    assert t.unsigned().labels == g.unsigned().labels
    chi = facet_normals(t)
    assert check_unimodular(t.graph, chi)
    back = tgraph_from_characteristic(t.graph, chi)
    assert back.beta == t.beta
    assert facet_normals(back) == chi


def test_simplex_characteristic_function():
    g = cpn_torus(3)
    fl = facets(g)
    # the standard fan of the simplex: e1, e2, e3 and -(e1+e2+e3)
    missing = [next(iter(set(range(4)) - f.vertices)) for f in fl]
    basis = {1: (1, 0, 0), 2: (0, 1, 0), 3: (0, 0, 1), 0: (-1, -1, -1)}
    chi = CharacteristicFunction(fl, [basis[m] for m in missing])
    t = tgraph_from_characteristic(g, chi)
    assert validate_tgraph(t) == []
    assert facet_normals(t) == chi


def test_non_unimodular_rejected():
    g = cpn_torus(3)
    fl = facets(g)
    chi = CharacteristicFunction(fl, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 2)])
    assert not check_unimodular(g, chi)
    with pytest.raises(GkmError, match="not unimodular"):
        tgraph_from_characteristic(g, chi)


def test_corrupted_tgraph_normals_inconsistent():
    t = lift_to_tgraph(cpn_torus(3).unsigned())
    beta = list(t.beta)
    beta[0] = tuple(-x for x in beta[0])
    bad = type(t)(t.graph, tuple(beta))
    with pytest.raises(GkmError):
        facet_normals(bad)


def test_lift_rejects_non_torus_graphs():
    with pytest.raises(GkmError, match="not a torus graph"):
        lift_to_tgraph(cp4_projected())
    with pytest.raises(GkmError, match="not a torus graph"):
        lift_to_tgraph(flag_su3())
