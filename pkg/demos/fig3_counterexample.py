"""
A six-vertex graph that extends but does not stay free
======================================================

Run with ``python demos/fig3_counterexample.py``.
"""

from gkmtools import linalg
from gkmtools.catalog import FLAG_PROJECTION, fig3, flag_su3
from gkmtools.cohomology import (CohomologyClass, cohomology_basis, find_signed_relation, freeness_probe,
                                 hilbert_function, restriction_map, thom_class)
from gkmtools.extension import check_extension
from gkmtools.faces import Face
from gkmtools.graph import gkm_independence_level
from gkmtools.poly import Polynomial

# The 3-valent graph: K_{3,3} drawn as a hexagon 1..6 plus its three long
# diagonals, with the three perfect matchings labelled x, y, z.
g = fig3()
for e in g.edges:
    print(g.vertices[g.origin[e]], "--", g.vertices[g.terminus(e)], g.labels[e])

# Pushing the labels down along p = [[1,0,1],[0,1,1]] gives a rank-2
# labelling of the same graph; p is an extension in the strict sense.
k = flag_su3()
check_extension(k, g, FLAG_PROJECTION)
print("independence levels:", gkm_independence_level(g), gkm_independence_level(k))

# Low degrees first.  Degree 2 is only the linear forms times 1.
print("H_T(fig3) :", hilbert_function(g, 6))
print("H_K(flag) :", hilbert_function(k, 6))
print("dim H^2 =", cohomology_basis(g, 2).dim)

# The restriction in degree 2 misses part of the target.
res = restriction_map(g, k, FLAG_PROJECTION, 2)
print(f"p_* in degree 2: rank {res.rank} into dim {res.dim_target}")
print("class outside the image:", CohomologyClass(k, 2, res.witness).table())

# Thom classes of the four edges of the quadrangle 1-2-3-6.
def edge(u, w):
    iu, iw = g.vertices.index(u), g.vertices.index(w)
    e = next(d for d in g.star(iu) if g.terminus(d) == iw)
    return Face(frozenset((iu, iw)), frozenset((e, g.opposite[e])), 1)

quad = [thom_class(g, edge(u, w)) for u, w in ((1, 2), (2, 3), (3, 6), (1, 6))]
for name, th in zip(("Th12", "Th23", "Th36", "Th16"), quad):
    print(name, th.table())

x, y, z = (Polynomial.variable(3, i) for i in range(3))
coeffs = [y, -z, y, -x]
signs = find_signed_relation(quad, coeffs)
print("signs making the combination vanish:", signs)

total = None
for th, s, f in zip(quad, signs, coeffs):
    total = th * (f * s) if total is None else total + th * (f * s)
print("all vertex values zero:", total.is_zero())

# That relation is exactly what the freeness probe finds on its own.
verdict = freeness_probe(g, 6)
print(verdict.describe())

# Sanity check: with the identity instead of p the restriction is onto.
print("identity surjective:", restriction_map(g, g, linalg.identity(3), 2).surjective)
