"""Built-in example graphs.

``fig3``
    K_{3,3} on parts {1,3,5}, {2,4,6}; the perfect matchings
    x = {16, 25, 34}, y = {12, 45, 36}, z = {23, 14, 56} are labelled by the
    standard basis of Z^3.  Unsigned torus graph.
``flag_su3``
    The same graph and connection with labels p(x) = a, p(y) = b,
    p(z) = a + b in Z^2 (the GKM graph of the flag manifold SU(3)/T^2).
``cpn_torus(n)``
    The complete graph K_{n+1} on vertices 0..n with signed labels
    e_j - e_i on the dart i -> j (e_0 = 0).
``cp4_projected``
    ``cpn_torus(4)`` pushed through Z^4 -> Z^3, e_1, e_2, e_3 to the standard
    basis and e_4 to (1, 1, 1).
"""

from __future__ import annotations

from .graph import GkmError, GkmGraph

FIG3_MATCHINGS = {
    "x": ((1, 6), (2, 5), (3, 4)),
    "y": ((1, 2), (4, 5), (3, 6)),
    "z": ((2, 3), (1, 4), (5, 6)),
}
FIG3_LABELS = {"x": (1, 0, 0), "y": (0, 1, 0), "z": (0, 0, 1)}
FLAG_LABELS = {"x": (1, 0), "y": (0, 1), "z": (1, 1)}

# p : Z^3 -> Z^2 with x -> a, y -> b, z -> a + b  (columns are images)
FLAG_PROJECTION = [[1, 0, 1], [0, 1, 1]]
CP4_PROJECTION = [[1, 0, 0, 1], [0, 1, 0, 1], [0, 0, 1, 1]]


def _matching_connection(g: GkmGraph):
    """Connection sending each dart to the dart of the same matching colour."""
    colour = {}
    for e in g.darts:
        colour[e] = g.labels[e]
    conn = []
    for e in g.darts:
        m = {}
        for e2 in g.star(g.origin[e]):
            m[e2] = next(f for f in g.star(g.terminus(e)) if colour[f] == colour[e2])
        conn.append(m)
    return conn


def _k33(labels):
    edges = []
    for name, pairs in FIG3_MATCHINGS.items():
        for u, v in pairs:
            edges.append((min(u, v), max(u, v), labels[name]))
    edges.sort(key=lambda t: (t[0], t[1]))
    return edges


def fig3() -> GkmGraph:
    edges = _k33(FIG3_LABELS)
    return GkmGraph.from_edges(range(1, 7), edges, rank=3, signed=False,
                               connection=_matching_connection)


def flag_su3() -> GkmGraph:
    # the connection of fig3, transported verbatim (same dart numbering)
    return fig3().transform(FLAG_PROJECTION)


def _standard_connection(g: GkmGraph):
    """On K_{n+1}: the dart i->k is sent along i->j to j->k (and i->j to j->i)."""
    conn = []
    for e in g.darts:
        i, j = g.origin[e], g.terminus(e)
        by_target = {g.terminus(f): f for f in g.star(j)}
        m = {}
        for e2 in g.star(i):
            k = g.terminus(e2)
            m[e2] = g.opposite[e] if k == j else by_target[k]
        conn.append(m)
    return conn


def cpn_torus(n: int) -> GkmGraph:
    if n < 1:
        raise GkmError("cpn_torus needs n >= 1")

    def basis(i):
        return tuple(int(i == j + 1) for j in range(n))

    edges = []
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            lab = tuple(b - a for a, b in zip(basis(i), basis(j)))
            edges.append((i, j, lab))
    return GkmGraph.from_edges(range(n + 1), edges, rank=n, signed=True,
                               connection=_standard_connection)


def cp4_projected() -> GkmGraph:
    return cpn_torus(4).transform(CP4_PROJECTION)


def catalog(name: str) -> GkmGraph:
    """Look up a catalog graph; parameters use a colon (``cpn_torus:4``)."""
    base, _, arg = name.partition(":")
    if base == "fig3":
        return fig3()
    if base == "flag_su3":
        return flag_su3()
    if base == "cp4_projected":
        return cp4_projected()
    if base == "cpn_torus":
        if not arg.isdigit():
            raise GkmError("cpn_torus needs a parameter, e.g. cpn_torus:3")
        return cpn_torus(int(arg))
    raise GkmError(f"unknown catalog graph {name!r}")


CATALOG_NAMES = ("fig3", "flag_su3", "cpn_torus:2", "cpn_torus:3", "cpn_torus:4",
                 "cp4_projected")

# source -> (target, p) for the catalog extensions
EXTENSIONS = {
    "flag_su3": ("fig3", FLAG_PROJECTION),
    "cp4_projected": ("cpn_torus:4", CP4_PROJECTION),
}
