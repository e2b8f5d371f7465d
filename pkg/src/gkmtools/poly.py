"""Multivariate polynomials with exact coefficients.

Polynomials live in ``k`` variables and are stored as a mapping from exponent
tuples to nonzero ``int``/``Fraction`` coefficients.  The monomial order is
graded lexicographic everywhere: within one degree, exponent tuples are
listed in decreasing lexicographic order (``x`` before ``y`` before ``z``).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Mapping, Sequence

from . import linalg

VARIABLE_NAMES = "xyzw"


def _clean(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


@lru_cache(maxsize=None)
def homogeneous_monomials(k: int, d: int) -> tuple[tuple[int, ...], ...]:
    """All exponent vectors of total degree ``d`` in ``k`` variables, grlex order."""
    if k < 1 or d < 0:
        raise ValueError("need k >= 1 and d >= 0")
    out = []

    def rec(prefix, left, slots):
        if slots == 1:
            out.append(prefix + (left,))
            return
        for e in range(left, -1, -1):
            rec(prefix + (e,), left - e, slots - 1)

    rec((), d, k)
    assert len(out) == comb(d + k - 1, k - 1)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(k: int, d: int) -> dict:
    return {m: i for i, m in enumerate(homogeneous_monomials(k, d))}


class Polynomial:
    """An immutable polynomial in ``k`` variables."""

    __slots__ = ("k", "terms", "_hash")

    def __init__(self, k: int, terms: Mapping[tuple, object] | None = None):
        self.k = k
        clean = {}
        for e, c in (terms or {}).items():
            if c:
                e = tuple(e)
                if len(e) != k:
                    raise ValueError(f"exponent {e} has wrong length for k={k}")
                clean[e] = _clean(c)
        self.terms = clean
        self._hash = None

    # constructors
    @classmethod
    def zero(cls, k):
        return cls(k)

    @classmethod
    def constant(cls, k, c):
        return cls(k, {(0,) * k: c})

    @classmethod
    def variable(cls, k, i):
        e = [0] * k
        e[i] = 1
        return cls(k, {tuple(e): 1})

    @classmethod
    def linear(cls, a: Sequence[int]):
        """The linear form ``sum a_i x_i``."""
        k = len(a)
        terms = {}
        for i, c in enumerate(a):
            e = [0] * k
            e[i] = 1
            terms[tuple(e)] = c
        return cls(k, terms)

    @classmethod
    def from_vector(cls, k, d, vec):
        mons = homogeneous_monomials(k, d)
        return cls(k, {m: c for m, c in zip(mons, vec) if c})

    # queries
    def is_zero(self):
        return not self.terms

    def degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def coefficient(self, e):
        return self.terms.get(tuple(e), 0)

    def to_vector(self, d):
        """Coefficient vector in the degree-``d`` monomial basis."""
        idx = monomial_index(self.k, d)
        vec = [0] * len(idx)
        for e, c in self.terms.items():
            if sum(e) != d:
                raise ValueError("polynomial is not homogeneous of degree %d" % d)
            vec[idx[e]] = c
        return vec

    def __call__(self, *point):
        total = 0
        for e, c in self.terms.items():
            t = c
            for x, p in zip(point, e):
                t *= x ** p
            total += t
        return total

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.k != self.k:
                raise ValueError("rank mismatch")
            return other
        return Polynomial.constant(self.k, other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return Polynomial(self.k, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.k, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return Polynomial(self.k, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return Polynomial(self.k, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Polynomial.constant(self.k, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.k == other.k and self.terms == other.terms
        if other == 0:
            return not self.terms
        return self == Polynomial.constant(self.k, other)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.k, frozenset(self.terms.items())))
        return self._hash

    def substitute(self, w):
        """Compose with the linear map ``x = W s``; ``W`` is ``k x m``."""
        m = len(w[0]) if w else 0
        images = [Polynomial(m, {tuple(int(j == i) for j in range(m)): row[i]
                                 for i in range(m)}) if m else Polynomial.constant(0, 0)
                  for row in w]
        out = Polynomial(m)
        for e, c in self.terms.items():
            t = Polynomial.constant(m, c)
            for img, p in zip(images, e):
                for _ in range(p):
                    t = t * img
            out = out + t
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        names = (VARIABLE_NAMES if self.k <= len(VARIABLE_NAMES)
                 else [f"t{i + 1}" for i in range(self.k)])
        parts = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
            c = self.terms[e]
            mono = "*".join(names[i] + (f"^{p}" if p > 1 else "")
                            for i, p in enumerate(e) if p)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


@lru_cache(maxsize=None)
def _substitution_matrix(w: tuple, d: int):
    k = len(w)
    m = len(w[0]) if w else 0
    src = homogeneous_monomials(k, d)
    if m == 0:
        # S(0 vars) is the constants
        return (1, [{0: 1}]) if d == 0 else (0, [{} for _ in src])
    dst_idx = monomial_index(m, d)
    images = [Polynomial(m, {tuple(int(j == i) for j in range(m)): row[i]
                             for i in range(m)}) for row in w]
    powers = [[Polynomial.constant(m, 1)] for _ in range(k)]
    for i in range(k):
        for _ in range(d):
            powers[i].append(powers[i][-1] * images[i])
    cols = []
    for e in src:
        t = Polynomial.constant(m, 1)
        for i, p in enumerate(e):
            if p:
                t = t * powers[i][p]
        cols.append({dst_idx[x]: c for x, c in t.terms.items()})
    return len(dst_idx), cols


def substitution_matrix(w, d: int):
    """Linear map ``S^d(k vars) -> S^d(m vars)`` induced by ``x = W s``.

    Returns ``(target_dim, columns)`` where ``columns[j]`` is a sparse dict
    image of the ``j``-th source monomial.
    """
    key = tuple(tuple(int(x) for x in row) for row in w)
    return _substitution_matrix(key, d)


def divide_by_linear(f: Polynomial, a: Sequence[int], mode: str = "rational"):
    """Divide ``f`` by the linear form ``a``.

    Returns ``(quotient, divisible)``; when ``divisible`` is true,
    ``quotient * a == f`` exactly.  The division changes coordinates by a
    unimodular matrix sending ``a`` to the first coordinate.
    """
    a = tuple(int(x) for x in a)
    if not any(a):
        raise ValueError("cannot divide by the zero form")
    g = linalg.vector_gcd(a)
    if g != 1:
        if mode == "integer":
            raise ValueError(f"linear form {a} is not primitive")
    prim = tuple(x // g for x in a)
    m = linalg.complete_to_unimodular(prim)  # prim^T m = e1^T
    # g(y) = f(m y); the form a becomes y_1
    fy = f.substitute(m)
    q_terms = {}
    divisible = True
    for e, c in fy.terms.items():
        if e[0] == 0:
            divisible = False
            break
        q_terms[(e[0] - 1,) + e[1:]] = c
    if not divisible:
        return Polynomial(f.k), False
    q = Polynomial(f.k, q_terms).substitute(linalg.integer_inverse(m))
    if g != 1:
        q = q * Fraction(1, g)
    return q, True
