"""Equivariant graph cohomology, degree by degree.

A class of degree ``2d`` is a tuple of homogeneous degree-``d`` polynomials,
one per vertex, whose differences along each edge are divisible by the edge
label.  Classes are handled as coordinate vectors: vertex ``v`` owns the
block ``[v * M, (v + 1) * M)`` where ``M`` is the number of degree-``d``
monomials, in grlex order.

Divisibility by a label ``a`` is tested by restricting to the annihilator
lattice of ``a``: for primitive ``a`` the restriction has kernel exactly the
ideal ``(a)``, over Q and over Z.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from . import linalg
from .graph import GkmError, GkmGraph, TGraph
from .poly import Polynomial, divide_by_linear, homogeneous_monomials, monomial_index, \
    substitution_matrix


def _check_degree(two_d):
    if two_d < 0 or two_d % 2:
        raise GkmError(f"degree must be even and non-negative, got {two_d}")
    return two_d // 2


def edge_annihilator(g: GkmGraph, e: int):
    """``k x (k-1)`` matrix whose columns are a Z-basis of ``{xi : <a(e), xi> = 0}``."""
    key = ("ann", e)
    if key not in g.memo:
        a = g.labels[e]
        basis = linalg.integer_kernel_basis([list(a)], cols=g.rank)
        g.memo[key] = [[vec[i] for vec in basis] for i in range(g.rank)]
    return g.memo[key]


def congruence_rows(g: GkmGraph, d: int, mode: str = "rational"):
    """Sparse equations ``(f_w - f_u)|_{ann(e)} = 0``, one block per edge."""
    key = ("rows", d)
    if key in g.memo:
        return g.memo[key]
    k = g.rank
    size = comb(d + k - 1, k - 1)
    rows = []
    for e in g.edges:
        if mode == "integer" and not linalg.is_primitive(g.labels[e]):
            raise GkmError(f"label {g.labels[e]} of dart {e} is not primitive (integer mode)")
        u, w = g.origin[e], g.terminus(e)
        tdim, cols = substitution_matrix(edge_annihilator(g, e), d)
        block = [dict() for _ in range(tdim)]
        for i, col in enumerate(cols):
            for j, c in col.items():
                block[j][w * size + i] = block[j].get(w * size + i, 0) + c
                block[j][u * size + i] = block[j].get(u * size + i, 0) - c
        rows += [{c: x for c, x in r.items() if x} for r in block]
    g.memo[key] = rows
    return rows


@dataclass
class CohomologyClass:
    graph: GkmGraph
    degree: int                 # 2d
    vector: tuple

    @property
    def values(self) -> tuple[Polynomial, ...]:
        d, k = self.degree // 2, self.graph.rank
        size = comb(d + k - 1, k - 1)
        return tuple(Polynomial.from_vector(k, d, self.vector[v * size:(v + 1) * size])
                     for v in range(len(self.graph.vertices)))

    @classmethod
    def from_values(cls, graph, degree, values):
        d = degree // 2
        vec = []
        for f in values:
            vec += f.to_vector(d) if not f.is_zero() else \
                [0] * len(homogeneous_monomials(graph.rank, d))
        return cls(graph, degree, tuple(vec))

    def is_zero(self):
        return not any(self.vector)

    def satisfies_congruences(self, mode="rational") -> bool:
        vals = self.values
        g = self.graph
        for e in g.edges:
            diff = vals[g.terminus(e)] - vals[g.origin[e]]
            if diff.is_zero():
                continue
            _, ok = divide_by_linear(diff, g.labels[e], mode)
            if not ok:
                return False
        return True

    def __mul__(self, other):
        if isinstance(other, CohomologyClass):
            vals = [a * b for a, b in zip(self.values, other.values)]
            return CohomologyClass.from_values(self.graph, self.degree + other.degree, vals)
        if isinstance(other, Polynomial):
            if other.is_zero():
                return CohomologyClass.from_values(
                    self.graph, self.degree, [Polynomial(self.graph.rank)] * len(self.values))
            return CohomologyClass.from_values(self.graph, self.degree + 2 * other.degree(),
                                               [other * a for a in self.values])
        return CohomologyClass(self.graph, self.degree, tuple(x * other for x in self.vector))

    __rmul__ = __mul__

    def __add__(self, other):
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return CohomologyClass(self.graph, self.degree,
                               tuple(a + b for a, b in zip(self.vector, other.vector)))

    def __neg__(self):
        return CohomologyClass(self.graph, self.degree, tuple(-x for x in self.vector))

    def __sub__(self, other):
        return self + (-other)

    def table(self):
        """``{vertex name: polynomial string}`` for reports."""
        return {str(self.graph.vertices[v]): repr(f) for v, f in enumerate(self.values)}


@dataclass
class GradedClassBasis:
    graph: GkmGraph
    degree: int
    vectors: list = field(default_factory=list)

    @property
    def dim(self):
        return len(self.vectors)

    @property
    def classes(self):
        return [CohomologyClass(self.graph, self.degree, v) for v in self.vectors]

    def __len__(self):
        return len(self.vectors)


def ambient_dim(g: GkmGraph, two_d: int) -> int:
    d = two_d // 2
    return len(g.vertices) * comb(d + g.rank - 1, g.rank - 1)


def cohomology_basis(g: GkmGraph, two_d: int, mode: str = "rational") -> GradedClassBasis:
    """Basis of ``H^{2d}_T(g)`` (a Z-basis of the saturated lattice in integer mode)."""
    d = _check_degree(two_d)
    key = ("basis", two_d, mode)
    if key in g.memo:
        return g.memo[key]
    n = ambient_dim(g, two_d)
    rows = congruence_rows(g, d, mode)
    if mode == "integer":
        dense = [[r.get(c, 0) for c in range(n)] for r in rows]
        vecs = linalg.integer_kernel_basis(dense, cols=n) if dense else \
            [tuple(int(i == j) for j in range(n)) for i in range(n)]
        vecs = _hermite_rows(vecs)
    else:
        ech = linalg.Echelon(n)
        for r in rows:
            ech.add(r)
        vecs = [linalg.clear_denominators(v) for v in ech.kernel_basis()]
    basis = GradedClassBasis(g, two_d, [tuple(v) for v in vecs])
    g.memo[key] = basis
    return basis


def _hermite_rows(vecs):
    """Row-style Hermite form of a lattice basis, for reproducible integer output."""
    rows = [list(v) for v in vecs]
    if not rows:
        return []
    ncols = len(rows[0])
    out = []
    r = 0
    for c in range(ncols):
        piv = [i for i in range(r, len(rows)) if rows[i][c]]
        if not piv:
            continue
        while True:
            piv = [i for i in range(r, len(rows)) if rows[i][c]]
            best = min(piv, key=lambda i: abs(rows[i][c]))
            rows[r], rows[best] = rows[best], rows[r]
            done = True
            for i in range(r + 1, len(rows)):
                if rows[i][c]:
                    q = rows[i][c] // rows[r][c]
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
                    if rows[i][c]:
                        done = False
            if done:
                break
        if rows[r][c] < 0:
            rows[r] = [-x for x in rows[r]]
        for i in range(r):
            q = rows[i][c] // rows[r][c]
            if q:
                rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return [tuple(x) for x in rows[:r]]


def hilbert_function(g: GkmGraph, D: int, mode: str = "rational", jobs: int = 1):
    """``dim H^{2d}`` for ``2d = 0, 2, ..., D``."""
    degrees = list(range(0, D + 1, 2))
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(jobs) as pool:
            dims = list(pool.map(_dim_worker, [(g, t, mode) for t in degrees]))
        return tuple(dims)
    return tuple(cohomology_basis(g, t, mode).dim for t in degrees)


def _dim_worker(args):
    g, t, mode = args
    return cohomology_basis(g, t, mode).dim


# -- products with polynomials -------------------------------------------------

def multiply_by_monomial(g: GkmGraph, vec, d: int, mono) -> dict:
    """Sparse vector of ``x^mono * f`` for a degree-``d`` class vector ``f``."""
    k = g.rank
    src = homogeneous_monomials(k, d)
    dm = sum(mono)
    dst = monomial_index(k, d + dm)
    ssize, tsize = len(src), len(dst)
    out = {}
    for v in range(len(g.vertices)):
        for i in range(ssize):
            c = vec[v * ssize + i]
            if c:
                e = tuple(a + b for a, b in zip(src[i], mono))
                out[v * tsize + dst[e]] = c
    return out


def multiply_by_form(g: GkmGraph, vec, d: int, form) -> dict:
    """Sparse vector of ``l * f`` for a linear form ``l`` (a coefficient vector)."""
    k = g.rank
    out: dict = {}
    for i, c in enumerate(form):
        if not c:
            continue
        mono = tuple(int(j == i) for j in range(k))
        for col, x in multiply_by_monomial(g, vec, d, mono).items():
            y = out.get(col, 0) + c * x
            if y:
                out[col] = y
            else:
                out.pop(col, None)
    return out


def _dense(sparse, n):
    v = [0] * n
    for c, x in sparse.items():
        v[c] = x
    return tuple(v)


# -- restriction along an extension --------------------------------------------

@dataclass
class RestrictionResult:
    degree: int
    matrix: list            # dim_target x dim_source, in the two bases
    rank: int
    dim_source: int
    dim_target: int
    witness: tuple | None   # a target basis vector outside the image

    @property
    def surjective(self):
        return self.rank == self.dim_target

    @property
    def cokernel_dim(self):
        return self.dim_target - self.rank


def push_forward_vector(gT: GkmGraph, gK: GkmGraph, p, vec, d: int):
    """Apply ``p`` to every vertex polynomial: ``x = p^T y``."""
    pt = linalg.transpose(p, cols=gT.rank)
    tdim, cols = substitution_matrix(pt, d)
    sdim = len(cols)
    out = [0] * (len(gK.vertices) * tdim)
    for v in range(len(gT.vertices)):
        for i in range(sdim):
            c = vec[v * sdim + i]
            if c:
                for j, x in cols[i].items():
                    out[v * tdim + j] += c * x
    return tuple(out)


def restriction_map(gT: GkmGraph, gK: GkmGraph, p, two_d: int,
                    mode: str = "rational") -> RestrictionResult:
    from .extension import check_extension

    check_extension(gK, gT, p)
    d = _check_degree(two_d)
    src = cohomology_basis(gT, two_d, mode)
    dst = cohomology_basis(gK, two_d, mode)
    images = [push_forward_vector(gT, gK, p, v, d) for v in src.vectors]
    matrix_cols = []
    for img in images:
        coords = linalg.solve(dst.vectors, img)
        if coords is None:
            raise GkmError("image of a class is not a class (extension is inconsistent)")
        matrix_cols.append(coords)
    matrix = [[col[i] for col in matrix_cols] for i in range(dst.dim)]
    ech = linalg.Echelon(ambient_dim(gK, two_d))
    for img in images:
        ech.add(img)
    r = ech.rank
    witness = None
    if r < dst.dim:
        witness = next(v for v in dst.vectors if not ech.contains(v))
    return RestrictionResult(two_d, matrix, r, src.dim, dst.dim, witness)


def kernel_of_projection(p, n: int):
    """Z-basis of ``ker p`` as linear forms in ``n`` variables."""
    return linalg.integer_kernel_basis([list(r) for r in p], cols=n)


@dataclass
class KernelIdealRow:
    degree: int
    kernel_dim: int
    ideal_dim: int
    contained: bool

    @property
    def equal(self):
        return self.kernel_dim == self.ideal_dim and self.contained


def kernel_ideal_check(gT, gK, p, D, mode="rational") -> list[KernelIdealRow]:
    """Compare ``ker p_*`` with ``ker p * H_T`` degree by degree."""
    ker = kernel_of_projection(p, gT.rank)
    out = []
    for two_d in range(0, D + 1, 2):
        res = restriction_map(gT, gK, p, two_d, mode)
        kdim = res.dim_source - res.rank
        n = ambient_dim(gT, two_d)
        ech = linalg.Echelon(n)
        contained = True
        if two_d >= 2:
            prev = cohomology_basis(gT, two_d - 2, mode)
            for form in ker:
                for h in prev.vectors:
                    prod = _dense(multiply_by_form(gT, h, two_d // 2 - 1, form), n)
                    if any(push_forward_vector(gT, gK, p, prod, two_d // 2)):
                        contained = False
                    ech.add(prod)
        out.append(KernelIdealRow(two_d, kdim, ech.rank, contained))
    return out


# -- module generators and freeness ---------------------------------------------

@dataclass
class ModuleGenerators:
    graph: GkmGraph
    generators: list          # CohomologyClass, in degree order
    quotient_dims: tuple      # dim of H / H^+(BT) H per degree 0..D

    @property
    def degrees(self):
        return [c.degree for c in self.generators]


def decomposables(g: GkmGraph, two_d: int, mode="rational") -> linalg.Echelon:
    """Echelon form of ``H^2(BT) * H^{2d-2}`` inside degree ``2d``."""
    n = ambient_dim(g, two_d)
    ech = linalg.Echelon(n)
    if two_d >= 2:
        d = two_d // 2
        for h in cohomology_basis(g, two_d - 2, mode).vectors:
            for i in range(g.rank):
                mono = tuple(int(j == i) for j in range(g.rank))
                ech.add(multiply_by_monomial(g, h, d - 1, mono))
    return ech


def module_generators(g: GkmGraph, D: int, mode: str = "rational") -> ModuleGenerators:
    gens, qdims = [], []
    for two_d in range(0, D + 1, 2):
        ech = decomposables(g, two_d, mode)
        basis = cohomology_basis(g, two_d, mode)
        qdims.append(basis.dim - ech.rank)
        for v in basis.vectors:
            if ech.add(v):
                gens.append(CohomologyClass(g, two_d, v))
    return ModuleGenerators(g, gens, tuple(qdims))


@dataclass
class FreenessVerdict:
    free: bool
    D: int
    generator_degrees: list
    witness_degree: int | None = None
    witness: list | None = None     # [(generator index, Polynomial coefficient)]

    def describe(self):
        if self.free:
            return f"free-up-to-{self.D}"
        return f"not-free (relation in degree {self.witness_degree})"


def freeness_probe(g: GkmGraph, D: int, mode: str = "rational") -> FreenessVerdict:
    gens = module_generators(g, D, mode)
    k = g.rank
    for two_d in range(0, D + 1, 2):
        d = two_d // 2
        n = ambient_dim(g, two_d)
        cols, labels = [], []
        for gi, gen in enumerate(gens.generators):
            gd = gen.degree // 2
            if gd > d:
                continue
            for mono in homogeneous_monomials(k, d - gd):
                cols.append(_dense(multiply_by_monomial(g, gen.vector, gd, mono), n))
                labels.append((gi, mono))
        ech = linalg.Echelon(n)
        kept = []
        for j, col in enumerate(cols):
            if ech.add(col):
                kept.append(j)
                continue
            coeffs = linalg.solve([cols[i] for i in kept], col)
            relation: dict = {}
            for i, c in zip(kept, coeffs):
                if c:
                    gi, mono = labels[i]
                    relation[gi] = relation.get(gi, Polynomial(k)) + \
                        Polynomial(k, {mono: -c})
            gi, mono = labels[j]
            relation[gi] = relation.get(gi, Polynomial(k)) + Polynomial(k, {mono: 1})
            witness = [(i, f) for i, f in sorted(relation.items()) if not f.is_zero()]
            return FreenessVerdict(False, D, gens.degrees, two_d, witness)
    return FreenessVerdict(True, D, gens.degrees)


def free_hilbert_function(generator_degrees, k: int, D: int):
    """Hilbert function of a free module over ``k`` variables."""
    return tuple(sum(comb(d - gd // 2 + k - 1, k - 1)
                     for gd in generator_degrees if gd // 2 <= d)
                 for d in range(0, D // 2 + 1))


# -- Thom classes ---------------------------------------------------------------

def thom_class(t, face) -> CohomologyClass:
    """Class supported on ``face`` with value the product of transversal labels.

    ``t`` is a :class:`TGraph`, or an unsigned torus graph which is lifted
    first.
    """
    from .extension import lift_to_tgraph

    if isinstance(t, GkmGraph):
        t = lift_to_tgraph(t)
    g = t.graph
    k = t.rank
    if face.rank > g.valence or not face.vertices:
        raise GkmError("not a face")
    gk = t.unsigned()
    degree = 2 * (g.valence - face.rank)
    values = []
    for v in range(len(g.vertices)):
        if v in face.vertices:
            f = Polynomial.constant(k, 1)
            for e in g.star(v):
                if e not in face.darts:
                    f = f * Polynomial.linear(t.beta[e])
            values.append(f)
        else:
            values.append(Polynomial(k))
    return CohomologyClass.from_values(gk, degree, values)


def find_signed_relation(classes, coefficients):
    """Signs ``s`` with ``sum s_i * c_i * classes_i == 0``, or None.

    Thom classes of an unsigned graph are defined up to sign per face; this
    searches all sign patterns (first sign fixed to +1).
    """
    import itertools

    terms = [cls * coeff for cls, coeff in zip(classes, coefficients)]
    for rest in itertools.product((1, -1), repeat=len(terms) - 1):
        signs = (1,) + rest
        total = [0] * len(terms[0].vector)
        for s, term in zip(signs, terms):
            for i, x in enumerate(term.vector):
                total[i] += s * x
        if not any(total):
            return signs
    return None
