"""The parameter matrix q of a quantum affine space and its block decomposition."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import FieldError, SchemaError, ValidationError
from .matrix import FieldMatrix, _check_entries
from .scalar import QQ, Field, Scalar


class QMatrix:
    """Validated parameter matrix: ``q[i, i] == 1`` and ``q[i, j] * q[j, i] == 1``.

    Entries are read with 1-based indices, ``q[i, j]``.
    """

    __slots__ = ("field", "rows", "_blocks")

    def __init__(self, field: Field, rows):
        rows = tuple(tuple(field(x) for x in r) for r in rows)
        n = len(rows)
        if n < 1:
            raise ValidationError("q must be at least 1 x 1")
        if any(len(r) != n for r in rows):
            raise SchemaError("q must be square")
        for i in range(n):
            if not rows[i][i].is_one():
                raise ValidationError(
                    f"diagonal entry q[{i + 1},{i + 1}] = {rows[i][i]} is not 1", (i + 1, i + 1)
                )
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j].is_zero():
                    raise ValidationError(f"q[{i + 1},{j + 1}] is zero", (i + 1, j + 1))
                if not (rows[i][j] * rows[j][i]).is_one():
                    raise ValidationError(
                        f"q[{i + 1},{j + 1}] * q[{j + 1},{i + 1}] = "
                        f"{rows[i][j]} * {rows[j][i]} != 1",
                        (i + 1, j + 1),
                    )
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "_blocks", None)

    def __setattr__(self, name, value):
        raise AttributeError("QMatrix is immutable")

    def __reduce__(self):
        return (QMatrix, (self.field, self.rows))

    @classmethod
    def from_upper(cls, field: Field, n: int, upper: dict) -> QMatrix:
        """Build q from its strictly-upper entries ``{(i, j): q_ij}`` (1-based, i < j).

        Missing entries default to 1.
        """
        rows = [[field.one] * n for _ in range(n)]
        for (i, j), v in upper.items():
            if not 1 <= i < j <= n:
                raise ValueError(f"expected 1 <= i < j <= {n}, got {(i, j)}")
            v = field(v)
            if v.is_zero():
                raise ValidationError(f"q[{i},{j}] is zero", (i, j))
            rows[i - 1][j - 1] = v
            rows[j - 1][i - 1] = v.inv()
        return cls(field, rows)

    @classmethod
    def all_ones(cls, n: int, field: Field = QQ) -> QMatrix:
        return cls(field, [[1] * n for _ in range(n)])

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        if i < 1 or j < 1:
            raise IndexError("indices are 1-based")
        return self.rows[i - 1][j - 1]

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash((self.field, self.rows))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"QMatrix({self.field!r}, [{body}])"

    def as_matrix(self) -> FieldMatrix:
        return FieldMatrix(self.field, self.rows)

    def rows_equal(self, i: int, j: int) -> bool:
        return self.rows[i - 1] == self.rows[j - 1]

    def permuted(self, pi) -> QMatrix:
        """The matrix q' with q'[pi(i), pi(j)] = q[i, j]."""
        n = self.n
        out = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                out[pi(i + 1) - 1][pi(j + 1) - 1] = self.rows[i][j]
        return QMatrix(self.field, out)

    def reduce_mod(self, p: int) -> QMatrix:
        """Image of a rational q in GF(p); raises if an entry does not reduce."""
        if not self.field.is_rational:
            raise FieldError("only rational matrices can be reduced")
        f = Field(p)
        return QMatrix(f, [[f(x.value) for x in r] for r in self.rows])

    def block_decomposition(self) -> BlockPartition:
        if self._blocks is None:
            object.__setattr__(self, "_blocks", block_decomposition(self))
        return self._blocks

    # serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "n": self.n,
            "entries": [[str(x) for x in r] for r in self.rows],
        }

    @classmethod
    def from_json(cls, obj) -> QMatrix:
        if not isinstance(obj, dict):
            raise SchemaError("q-matrix file must hold a JSON object")
        missing = {"field", "n", "entries"} - set(obj)
        if missing:
            raise SchemaError(f"missing keys: {sorted(missing)}")
        try:
            field = Field.from_json(obj["field"])
        except FieldError as exc:
            raise SchemaError(str(exc)) from exc
        _check_entries(obj["entries"], obj["n"])
        return cls(field, [[field.parse(x) for x in r] for r in obj["entries"]])

    @classmethod
    def load(cls, path) -> QMatrix:
        try:
            obj = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: invalid JSON ({exc})") from exc
        return cls.from_json(obj)

    def save(self, path):
        Path(path).write_text(json.dumps(self.to_json(), indent=2) + "\n")


@dataclass(frozen=True)
class BlockPartition:
    """Partition of {1..n} into classes of identical q-rows, ordered by minimum."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen = sorted(i for b in self.blocks for i in b)
        if seen != list(range(1, len(seen) + 1)) or any(not b for b in self.blocks):
            raise ValueError(f"not a partition of 1..n: {self.blocks}")
        if any(list(b) != sorted(b) for b in self.blocks):
            raise ValueError("blocks must be sorted")
        if [b[0] for b in self.blocks] != sorted(b[0] for b in self.blocks):
            raise ValueError("blocks must be ordered by their minimum")

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def m(self) -> int:
        return len(self.blocks)

    @property
    def sizes(self) -> list[int]:
        return [len(b) for b in self.blocks]

    @property
    def block_of(self) -> dict[int, int]:
        """Map index -> 1-based block number."""
        return {i: k for k, b in enumerate(self.blocks, 1) for i in b}

    def block(self, i: int) -> frozenset:
        """B(i) as a set."""
        for b in self.blocks:
            if i in b:
                return frozenset(b)
        raise KeyError(i)

    def image(self, pi) -> BlockPartition:
        """The partition {pi(B) : B a block}, canonically ordered."""
        return BlockPartition(tuple(sorted(tuple(sorted(pi(i) for i in b)) for b in self.blocks)))

    def to_json(self):
        return [list(b) for b in self.blocks]


def block_decomposition(q: QMatrix) -> BlockPartition:
    # Hash rows to bucket candidates, then confirm with exact comparison.
    buckets: dict[int, list[list[int]]] = {}
    for i, row in enumerate(q.rows, 1):
        groups = buckets.setdefault(hash(row), [])
        for g in groups:
            if q.rows[g[0] - 1] == row:
                g.append(i)
                break
        else:
            groups.append([i])
    blocks = sorted((tuple(g) for gs in buckets.values() for g in gs), key=lambda b: b[0])
    return BlockPartition(tuple(blocks))


def color_codes(q: QMatrix) -> list[list[int]]:
    """q with each distinct entry replaced by a small integer label."""
    codes: dict = {}
    return [[codes.setdefault(x.value, len(codes)) for x in r] for r in q.rows]
