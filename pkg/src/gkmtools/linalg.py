"""Exact integer and rational linear algebra.

Matrices are plain lists of rows of Python ints (or ``Fraction``).  Nothing
here touches floating point.  The elimination routines work on sparse rows
(``dict`` column -> value) because the systems that come out of graph
cohomology are block sparse.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

IntVector = tuple
IntMatrix = list


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a, b):
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][t] * b[t][j] for t in range(inner)) for j in range(cols)]
            for i in range(len(a))]


def matvec(a, v):
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def transpose(a, cols: int | None = None):
    if not a:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*a)]


def vector_gcd(v: Iterable[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g


def is_primitive(a: Sequence[int]) -> bool:
    """True iff the entries of ``a`` have gcd 1 (the zero vector is not primitive)."""
    return vector_gcd(a) == 1


def determinant(m) -> Fraction:
    """Exact determinant by fraction Gaussian elimination."""
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            if a[r][c]:
                f = a[r][c] / a[c][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


def inverse(m) -> list[list[Fraction]]:
    """Exact inverse over the rationals; raises ``ValueError`` if singular."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            raise ValueError("matrix is singular")
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def integer_inverse(m) -> list[list[int]]:
    """Inverse of a unimodular integer matrix."""
    inv = inverse(m)
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out


# -- Smith normal form -------------------------------------------------------

def smith_normal_form(m):
    """Return ``(S, U, V)`` with ``U @ m @ V == S`` and ``S`` in Smith form.

    ``U`` and ``V`` are unimodular; the diagonal of ``S`` is non-negative and
    each entry divides the next.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [[int(x) for x in r] for r in m]
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):
        # row[dst] -= q * row[src]
        a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for r in a:
            r[dst] -= q * r[src]
        for r in v:
            r[dst] -= q * r[src]

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    x = a[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                return a, u, v
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
            p = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, a[i][t] // p)
                    clean &= a[i][t] == 0
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, a[t][j] // p)
                    clean &= a[t][j] == 0
            if not clean:
                continue
            bad = next((i for i in range(t + 1, rows)
                        if any(a[i][j] % p for j in range(t + 1, cols))), None)
            if bad is None:
                break
            add_row(t, bad, -1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return a, u, v


def smith_diagonal(m) -> list[int]:
    s, _, _ = smith_normal_form(m)
    return [s[i][i] for i in range(min(len(s), len(s[0]) if s else 0)) if s[i][i]]


def integer_kernel_basis(m, cols: int | None = None) -> list[tuple[int, ...]]:
    """A Z-basis of ``{x in Z^cols : m x = 0}`` (a saturated lattice)."""
    if not m:
        n = cols or 0
        return [tuple(r) for r in identity(n)]
    n = len(m[0])
    s, _, v = smith_normal_form(m)
    r = sum(1 for i in range(min(len(s), n)) if s[i][i])
    return [tuple(v[i][j] for i in range(n)) for j in range(r, n)]


def is_saturated(vectors, k: int) -> bool:
    """True iff the Z-span of ``vectors`` is a direct summand of Z^k."""
    vectors = [v for v in vectors if any(v)]
    if not vectors:
        return True
    return all(d == 1 for d in smith_diagonal(vectors))


def complete_to_unimodular(a: Sequence[int]) -> list[list[int]]:
    """Unimodular ``M`` with ``a^T M = e_1^T`` for primitive ``a``.

    Columns ``2..k`` of ``M`` are then a Z-basis of the annihilator of ``a``.
    """
    if not is_primitive(a):
        raise ValueError(f"vector {tuple(a)} is not primitive")
    s, u, v = smith_normal_form([list(a)])
    sign = u[0][0]  # 1x1 unimodular, so +-1
    m = [row[:] for row in v]
    if sign == -1:
        for row in m:
            row[0] = -row[0]
    return m


# -- sparse rational elimination ---------------------------------------------

def _normalize_row(row: dict) -> dict:
    """Scale an integer row to be primitive with positive leading entry."""
    g = 0
    for x in row.values():
        g = gcd(g, x)
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        row = {c: x // g for c, x in row.items()}
    return row


def _to_int_row(vec) -> dict:
    if isinstance(vec, dict):
        items = vec.items()
    else:
        items = ((c, x) for c, x in enumerate(vec) if x)
    items = [(c, Fraction(x)) for c, x in items if x]
    if not items:
        return {}
    den = 1
    for _, x in items:
        den = den * x.denominator // gcd(den, x.denominator)
    return _normalize_row({c: int(x * den) for c, x in items})


class Echelon:
    """Incremental reduced row echelon form over Q with integer rows.

    Rows are stored primitive and fully reduced: every pivot column is zero in
    all other stored rows.  Pivots are the leftmost nonzero column, so the
    result depends only on the column order (the global monomial order).
    """

    def __init__(self, ncols: int | None = None):
        self.ncols = ncols
        self.rows: dict[int, dict] = {}  # pivot column -> row

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec) -> dict:
        row = _to_int_row(vec)
        return self._reduce(row)

    def _reduce(self, row: dict) -> dict:
        rows = self.rows
        while row:
            hit = None
            for c in sorted(row):
                if c in rows:
                    hit = c
                    break
            if hit is None:
                return row
            p = rows[hit]
            a, b = p[hit], row[hit]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            new = {c: fa * x for c, x in row.items()}
            for c, x in p.items():
                y = new.get(c, 0) - fb * x
                if y:
                    new[c] = y
                else:
                    new.pop(c, None)
            row = _normalize_row(new) if new else new
        return row

    def add(self, vec) -> bool:
        """Insert a vector; return True iff it increased the rank."""
        row = self.reduce(vec)
        if not row:
            return False
        piv = min(row)
        # back-substitute into existing rows to keep the form reduced
        for c, other in list(self.rows.items()):
            if piv in other:
                a, b = row[piv], other[piv]
                g = gcd(a, b)
                fa, fb = a // g, b // g
                new = {cc: fa * x for cc, x in other.items()}
                for cc, x in row.items():
                    y = new.get(cc, 0) - fb * x
                    if y:
                        new[cc] = y
                    else:
                        new.pop(cc, None)
                self.rows[c] = _normalize_row(new)
        self.rows[piv] = row
        return True

    def contains(self, vec) -> bool:
        return not self.reduce(vec)

    def kernel_basis(self, ncols: int | None = None) -> list[tuple[Fraction, ...]]:
        """Basis of the right kernel of the stored rows, one vector per free column."""
        n = self.ncols if ncols is None else ncols
        pivots = self.rows
        out = []
        for f in range(n):
            if f in pivots:
                continue
            vec = [Fraction(0)] * n
            vec[f] = Fraction(1)
            for c, row in pivots.items():
                x = row.get(f)
                if x:
                    vec[c] = Fraction(-x, row[c])
            out.append(tuple(vec))
        return out


def rank(rows) -> int:
    ech = Echelon()
    for r in rows:
        ech.add(r)
    return ech.rank


def rational_kernel_basis(m, cols: int | None = None) -> list[tuple[Fraction, ...]]:
    """Basis of the right kernel of ``m`` over Q (empty iff ``m`` is injective)."""
    n = cols if cols is not None else (len(m[0]) if m else 0)
    ech = Echelon(n)
    for r in m:
        ech.add(r)
    return ech.kernel_basis()


def solve(columns, target) -> tuple[Fraction, ...] | None:
    """Coefficients ``c`` with ``sum c_i columns[i] == target``, or None.

    ``columns`` and ``target`` are dense vectors of equal length.
    """
    m = len(columns)
    if m == 0:
        return () if not any(target) else None
    length = len(target)
    # augmented system: rows = coordinates, unknowns = column weights
    rows = []
    for i in range(length):
        row = {j: columns[j][i] for j in range(m) if columns[j][i]}
        if target[i]:
            row[m] = target[i]
        if row:
            rows.append(row)
    ech = Echelon(m + 1)
    for r in rows:
        ech.add(r)
    if m in ech.rows:
        return None
    sol = [Fraction(0)] * m
    for c, row in ech.rows.items():
        sol[c] = Fraction(row.get(m, 0), row[c])
    return tuple(sol)


def clear_denominators(vec) -> tuple[int, ...]:
    """Smallest positive rational multiple of ``vec`` with integer entries."""
    vec = [Fraction(x) for x in vec]
    den = 1
    for x in vec:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in vec]
    g = vector_gcd(ints)
    return tuple(x // g for x in ints) if g else tuple(ints)


def gf2_solve(equations, nvars: int):
    """Solve a GF(2) system ``sum_{v in vars} x_v = rhs``.

    ``equations`` is a list of ``(vars, rhs)``.  Returns ``(particular,
    nullspace)`` as bit lists, or None when the system is inconsistent.
    """
    pivots: dict[int, tuple[int, int]] = {}  # pivot var -> (mask, rhs)
    for vars_, rhs in equations:
        mask = 0
        for v in vars_:
            mask ^= 1 << v
        rhs &= 1
        for p, (pm, pr) in pivots.items():
            if mask >> p & 1:
                mask ^= pm
                rhs ^= pr
        if mask == 0:
            if rhs:
                return None
            continue
        p = (mask & -mask).bit_length() - 1
        for q, (qm, qr) in list(pivots.items()):
            if qm >> p & 1:
                pivots[q] = (qm ^ mask, qr ^ rhs)
        pivots[p] = (mask, rhs)
    particular = [0] * nvars
    for p, (_, r) in pivots.items():
        particular[p] = r
    nullspace = []
    for f in range(nvars):
        if f in pivots:
            continue
        vec = [0] * nvars
        vec[f] = 1
        for p, (pm, _) in pivots.items():
            if pm >> f & 1:
                vec[p] = 1
        nullspace.append(vec)
    return particular, nullspace
