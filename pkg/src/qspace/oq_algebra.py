"""Normal-form arithmetic in O_q(k^n) = k<x_1..x_n> / (x_j x_i - q_ij x_i x_j).

Elements are stored as ``{exponent tuple: coefficient}`` with monomials
written in the order x_1 < x_2 < ... < x_n.  This module is the ground-truth
oracle for membership: a matrix induces a graded automorphism exactly when
substituting ``x_i -> sum_j m[i, j] x_j`` kills every defining relator.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

from .errors import CapExceededError, FieldError, SchemaError
from .matrix import FieldMatrix
from .qmatrix import QMatrix
from .scalar import Field, Scalar

DEGREE_CAP = 8

Monomial = tuple[int, ...]


class SkewPoly:
    """Immutable element of O_q(k^n) in normal form (no zero coefficients)."""

    __slots__ = ("field", "n", "terms")

    def __init__(self, field: Field, n: int, terms=None):
        clean = {}
        for mono, c in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != n or any(e < 0 for e in mono):
                raise SchemaError(f"bad exponent vector {mono} for n={n}")
            c = field(c)
            if c:
                clean[mono] = clean.get(mono, field.zero) + c
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "terms", {k: v for k, v in clean.items() if v})

    def __setattr__(self, name, value):
        raise AttributeError("SkewPoly is immutable")

    @classmethod
    def _from_clean(cls, field: Field, n: int, terms: dict) -> SkewPoly:
        p = object.__new__(cls)
        object.__setattr__(p, "field", field)
        object.__setattr__(p, "n", n)
        object.__setattr__(p, "terms", terms)
        return p

    @classmethod
    def constant(cls, field: Field, n: int, c=1) -> SkewPoly:
        return cls(field, n, {(0,) * n: c})

    @classmethod
    def variable(cls, field: Field, n: int, i: int) -> SkewPoly:
        """x_i (1-based)."""
        e = [0] * n
        e[i - 1] = 1
        return cls(field, n, {tuple(e): 1})

    @classmethod
    def monomial(cls, field: Field, exponents, c=1) -> SkewPoly:
        return cls(field, len(exponents), {tuple(exponents): c})

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def degree(self) -> int:
        return max(self.degrees(), default=-1)

    def _check(self, other: SkewPoly):
        if other.field != self.field:
            raise FieldError(f"field mismatch: {self.field!r} vs {other.field!r}")
        if other.n != self.n:
            raise SchemaError(f"generator count mismatch: {self.n} vs {other.n}")

    def __add__(self, other: SkewPoly) -> SkewPoly:
        self._check(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            v = out.get(mono)
            v = c if v is None else v + c
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
        return SkewPoly._from_clean(self.field, self.n, out)

    def __neg__(self) -> SkewPoly:
        return SkewPoly._from_clean(self.field, self.n, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: SkewPoly) -> SkewPoly:
        return self + (-other)

    def scale(self, c) -> SkewPoly:
        c = self.field(c)
        if not c:
            return SkewPoly._from_clean(self.field, self.n, {})
        return SkewPoly._from_clean(self.field, self.n, {k: c * v for k, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, SkewPoly):
            return NotImplemented
        return self.field == other.field and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.field, self.n, frozenset(self.terms.items())))

    def sorted_terms(self) -> list[tuple[Monomial, Scalar]]:
        """Terms in graded lexicographic order (x_1 > x_2 > ... within a degree)."""
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), tuple(-e for e in kv[0])))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            factors = [f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(mono, 1) if e]
            parts.append("*".join([str(c)] + factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"SkewPoly({self})"


def twist(q: QMatrix, a: Monomial, b: Monomial) -> Scalar:
    """Coefficient c with x^a * x^b == c * x^(a+b).

    Every x_j of the left factor passes every x_i (i < j) of the right one,
    each crossing contributing q_ij.
    """
    c = q.field.one
    n = q.n
    for j in range(1, n):
        if not a[j]:
            continue
        for i in range(j):
            if b[i]:
                c = c * q.rows[i][j] ** (a[j] * b[i])
    return c


def normal_multiply(q: QMatrix, f: SkewPoly, g: SkewPoly, degree_cap: int = DEGREE_CAP) -> SkewPoly:
    f._check(g)
    if f.n != q.n or f.field != q.field:
        raise SchemaError("polynomial does not belong to this algebra")
    if f.terms and g.terms and f.degree() + g.degree() > degree_cap:
        raise CapExceededError(f"product degree exceeds the cap {degree_cap}")
    out: dict = {}
    for a, ca in f.terms.items():
        for b, cb in g.terms.items():
            mono = tuple(x + y for x, y in zip(a, b))
            v = ca * cb * twist(q, a, b)
            w = out.get(mono)
            out[mono] = v if w is None else w + v
    return SkewPoly._from_clean(f.field, f.n, {k: v for k, v in out.items() if v})


def linear_images(m: FieldMatrix) -> list[SkewPoly]:
    """f(x_i) = sum_j m[i, j] x_j for each i."""
    n = m.n
    out = []
    for i in range(n):
        terms = {}
        for j in range(n):
            if m.rows[i][j]:
                e = [0] * n
                e[j] = 1
                terms[tuple(e)] = m.rows[i][j]
        out.append(SkewPoly._from_clean(m.field, n, terms))
    return out


def apply_linear_map(m: FieldMatrix, f: SkewPoly, q: QMatrix, degree_cap: int = DEGREE_CAP) -> SkewPoly:
    """Substitute x_i -> sum_j m[i, j] x_j into ``f``, expanding left to right."""
    if m.n != f.n or m.field != f.field:
        raise SchemaError("matrix and polynomial do not match")
    images = linear_images(m)
    result = SkewPoly._from_clean(f.field, f.n, {})
    for mono, c in f.terms.items():
        acc = SkewPoly.constant(f.field, f.n, c)
        for i, e in enumerate(mono):
            for _ in range(e):
                acc = normal_multiply(q, acc, images[i], degree_cap)
        result = result + acc
    return result


def relator_image(q: QMatrix, m: FieldMatrix, i: int, j: int) -> SkewPoly:
    """f(x_j) f(x_i) - q_ij f(x_i) f(x_j), for 1-based i, j."""
    images = linear_images(m)
    fi, fj = images[i - 1], images[j - 1]
    return normal_multiply(q, fj, fi) - normal_multiply(q, fi, fj).scale(q[i, j])


def relations_preserved(q: QMatrix, m: FieldMatrix) -> bool:
    """True iff the substitution sends every relator x_j x_i - q_ij x_i x_j to 0.

    Degree two suffices: the relators generate the ideal and the map is graded.
    """
    if q.n != m.n or q.field != m.field:
        raise SchemaError("q and m do not match")
    n = q.n
    images = linear_images(m)
    for i in range(n):
        for j in range(i + 1, n):
            fi, fj = images[i], images[j]
            lhs = normal_multiply(q, fj, fi)
            rhs = normal_multiply(q, fi, fj).scale(q.rows[i][j])
            if lhs != rhs:
                return False
    return True


@dataclass(frozen=True)
class GradedPiece:
    degree: int
    basis: tuple[Monomial, ...]


def graded_basis(n: int, d: int) -> GradedPiece:
    """All monomials of total degree ``d`` in graded lexicographic order."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    basis = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        basis.append(tuple(e))
    return GradedPiece(d, tuple(basis))
