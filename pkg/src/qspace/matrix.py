"""Dense square matrices over a :class:`~qspace.scalar.Field`.

Public indexing is 1-based: ``m[i, j]`` is the entry in row ``i``, column ``j``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import lcm
from pathlib import Path

from .errors import FieldError, NotInvertibleError, SchemaError
from .scalar import QQ, Field, Scalar


def det_values(rows, prime: int | None):
    """Determinant of a square array of raw values (``Fraction`` or residues).

    Over Q the rows are scaled to integers and reduced with Bareiss'
    fraction-free elimination; over GF(p) plain Gaussian elimination is used.
    """
    n = len(rows)
    if n == 0:
        return Fraction(1) if prime is None else 1
    if prime is not None:
        a = [list(r) for r in rows]
        det = 1
        for c in range(n):
            piv = next((r for r in range(c, n) if a[r][c]), None)
            if piv is None:
                return 0
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                det = -det
            det = det * a[c][c] % prime
            inv = pow(a[c][c], prime - 2, prime)
            for r in range(c + 1, n):
                f = a[r][c] * inv % prime
                if f:
                    ar, ac = a[r], a[c]
                    for k in range(c, n):
                        ar[k] = (ar[k] - f * ac[k]) % prime
        return det % prime

    scale = Fraction(1)
    a = []
    for row in rows:
        d = lcm(*(Fraction(x).denominator for x in row))
        scale /= d
        a.append([int(Fraction(x) * d) for x in row])
    sign = 1
    prev = 1
    for c in range(n - 1):
        if a[c][c] == 0:
            piv = next((r for r in range(c + 1, n) if a[r][c]), None)
            if piv is None:
                return Fraction(0)
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        pc = a[c][c]
        for r in range(c + 1, n):
            ar, ac = a[r], a[c]
            arc = ar[c]
            for k in range(c + 1, n):
                ar[k] = (ar[k] * pc - arc * ac[k]) // prev
            ar[c] = 0
        prev = pc
    return sign * a[n - 1][n - 1] * scale


class FieldMatrix:
    """Immutable n x n matrix of :class:`Scalar` entries."""

    __slots__ = ("field", "rows", "_det")

    def __init__(self, field: Field, rows):
        rows = tuple(tuple(field(x) for x in r) for r in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise SchemaError("matrix must be square")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "_det", None)

    def __setattr__(self, name, value):
        raise AttributeError("FieldMatrix is immutable")

    def __reduce__(self):
        return (FieldMatrix, (self.field, self.rows))

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> FieldMatrix:
        return cls(field, [[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int, field: Field = QQ) -> FieldMatrix:
        return cls(field, [[0] * n for _ in range(n)])

    @classmethod
    def diagonal(cls, entries, field: Field = QQ) -> FieldMatrix:
        n = len(entries)
        return cls(field, [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        if i < 1 or j < 1:
            raise IndexError("indices are 1-based")
        return self.rows[i - 1][j - 1]

    def values(self):
        """Rows as tuples of raw values (for tight loops)."""
        return [tuple(x.value for x in r) for r in self.rows]

    def __eq__(self, other):
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        return self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash((self.field, self.rows))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"FieldMatrix({self.field!r}, [{body}])"

    def _check(self, other: FieldMatrix):
        if other.field != self.field:
            raise FieldError(f"field mismatch: {self.field!r} vs {other.field!r}")
        if other.n != self.n:
            raise SchemaError(f"dimension mismatch: {self.n} vs {other.n}")

    def __matmul__(self, other: FieldMatrix) -> FieldMatrix:
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        self._check(other)
        n = self.n
        cols = list(zip(*other.rows))
        zero = self.field.zero
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = zero
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return FieldMatrix(self.field, out) if n else self

    def scale(self, c) -> FieldMatrix:
        c = self.field(c)
        return FieldMatrix(self.field, [[c * x for x in r] for r in self.rows])

    def transpose(self) -> FieldMatrix:
        return FieldMatrix(self.field, list(zip(*self.rows)))

    @property
    def T(self) -> FieldMatrix:
        return self.transpose()

    def submatrix(self, rows, cols) -> FieldMatrix:
        """Submatrix on 1-based ``rows`` x ``cols`` (kept in the given order)."""
        return FieldMatrix(self.field, [[self.rows[i - 1][j - 1] for j in cols] for i in rows])

    def det(self) -> Scalar:
        if self._det is None:
            object.__setattr__(self, "_det", self.field(det_values(self.values(), self.field.prime)))
        return self._det

    def is_invertible(self) -> bool:
        return not self.det().is_zero()

    def inverse(self) -> FieldMatrix:
        """Gauss-Jordan inverse."""
        n = self.n
        one, zero = self.field.one, self.field.zero
        a = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(self.rows)]
        for c in range(n):
            piv = next((r for r in range(c, n) if a[r][c]), None)
            if piv is None:
                raise NotInvertibleError("matrix is singular")
            a[c], a[piv] = a[piv], a[c]
            inv = a[c][c].inv()
            a[c] = [x * inv for x in a[c]]
            for r in range(n):
                if r != c and a[r][c]:
                    f = a[r][c]
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        return FieldMatrix(self.field, [r[n:] for r in a])

    def nonzero_positions(self):
        """1-based ``(row, col)`` pairs of nonzero entries, row-major."""
        return [(i + 1, j + 1) for i, r in enumerate(self.rows) for j, x in enumerate(r) if x]

    # serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "n": self.n,
            "entries": [[str(x) for x in r] for r in self.rows],
        }

    @classmethod
    def from_json(cls, obj, field: Field | None = None) -> FieldMatrix:
        """Accept ``{"field", "n", "entries"}`` or a bare array of strings.

        A bare array uses ``field`` (default Q).
        """
        if isinstance(obj, list):
            entries, fld, n = obj, field or QQ, len(obj)
        elif isinstance(obj, dict):
            if "entries" not in obj:
                raise SchemaError("missing 'entries'")
            entries = obj["entries"]
            fld = Field.from_json(obj.get("field", "rational")) if "field" in obj else (field or QQ)
            n = obj.get("n", len(entries) if isinstance(entries, list) else None)
        else:
            raise SchemaError("matrix must be a JSON object or array")
        _check_entries(entries, n)
        return cls(fld, [[fld.parse(x) for x in r] for r in entries])

    @classmethod
    def load(cls, path, field: Field | None = None) -> FieldMatrix:
        try:
            obj = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: invalid JSON ({exc})") from exc
        return cls.from_json(obj, field)

    def save(self, path):
        Path(path).write_text(json.dumps(self.to_json(), indent=2) + "\n")


def _check_entries(entries, n):
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise SchemaError(f"'n' must be a positive integer, got {n!r}")
    if not isinstance(entries, list) or len(entries) != n:
        raise SchemaError(f"expected {n} rows")
    for k, row in enumerate(entries, 1):
        if not isinstance(row, list) or len(row) != n:
            raise SchemaError(f"row {k}: expected {n} entries")
        for x in row:
            if not isinstance(x, str):
                raise SchemaError(f"row {k}: entries must be strings, got {x!r}")
