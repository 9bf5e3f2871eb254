"""Parameter matrices used throughout the tests, the acceptance suite and the CLI demos.

A formal parameter ``a`` is stood in for by a concrete field element that
avoids the coincidences the structure depends on (``a != +-1``); ``2`` over
Q is the default.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import FieldError, ValidationError
from .qmatrix import QMatrix
from .scalar import QQ, Field


def two_by_two_blocks(field: Field = QQ) -> QMatrix:
    """The 4 x 4 +-1 matrix with blocks {1,2}, {3,4}."""
    s = [1, 1, -1, -1]
    return QMatrix(field, [[s[i] * s[j] for j in range(4)] for i in range(4)])


def swapped_pair(a=2, field: Field = QQ) -> QMatrix:
    """3 x 3 matrix whose first two generators anticommute and may be swapped."""
    a = field(a)
    return QMatrix(field, [[1, -1, a], [-1, 1, a], [a.inv(), a.inv(), 1]])


def cyclic_triple(a=2, field: Field = QQ) -> QMatrix:
    """3 x 3 matrix with q_12 = q_23 = q_31 = a, invariant under 3-cycles."""
    a = field(a)
    return QMatrix(field, [[1, a, a.inv()], [a.inv(), 1, a], [a, a.inv(), 1]])


def all_ones(n: int, field: Field = QQ) -> QMatrix:
    return QMatrix.all_ones(n, field)


def quantum_plane(c, field: Field = QQ) -> QMatrix:
    return QMatrix.from_upper(field, 2, {(1, 2): c})


def uniform(n: int, c, field: Field = QQ) -> QMatrix:
    """q_ij = c for every i < j."""
    return QMatrix.from_upper(field, n, {(i, j): c for i in range(1, n + 1) for j in range(i + 1, n + 1)})


def cyclic_blocks(sizes, a=2, field: Field = QQ) -> QMatrix:
    """Blocks of the given sizes; consecutive blocks (cyclically) get q = a.

    With three equal blocks the compatible group is (S_b)^3 x| C_3.
    """
    a = field(a)
    owner = [k for k, b in enumerate(sizes) for _ in range(b)]
    m = len(sizes)
    n = len(owner)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            bi, bj = owner[i], owner[j]
            if bi == bj:
                row.append(field.one)
            elif (bi + 1) % m == bj:
                row.append(a)
            elif (bj + 1) % m == bi:
                row.append(a.inv())
            else:
                row.append(field.one)
        rows.append(row)
    return QMatrix(field, rows)


def signed_blocks(sizes, field: Field = QQ) -> QMatrix:
    """q_ij = s_i s_j with s = +1 on even-numbered blocks and -1 on odd ones."""
    s = [(-1) ** k for k, b in enumerate(sizes) for _ in range(b)]
    n = len(s)
    return QMatrix(field, [[s[i] * s[j] for j in range(n)] for i in range(n)])


def mixed_blocks(a=2, field: Field = QQ) -> QMatrix:
    """Blocks {1,2,3}, {4,5}; nothing maps one block to the other."""
    a = field(a)
    return QMatrix.from_upper(field, 5, {(i, j): a for i in (1, 2, 3) for j in (4, 5)})


def three_blocks_12(a=2, field: Field = QQ) -> QMatrix:
    """12 x 12, three blocks of size 4 arranged cyclically."""
    return cyclic_blocks([4, 4, 4], a, field)


# name -> (builder, description); every builder takes no arguments.
FIXTURES = {
    "two-by-two-blocks": (two_by_two_blocks, "4x4 +-1 matrix, blocks {1,2},{3,4}"),
    "swapped-pair": (swapped_pair, "3x3, a=2, compatible group {(), (1,2)}"),
    "cyclic-triple": (cyclic_triple, "3x3, a=2, compatible group generated by (1,2,3)"),
    "ones-1": (lambda: all_ones(1), "commutative, n=1"),
    "ones-2": (lambda: all_ones(2), "commutative, n=2"),
    "ones-3": (lambda: all_ones(3), "commutative, n=3"),
    "ones-4": (lambda: all_ones(4), "commutative, n=4"),
    "ones-5": (lambda: all_ones(5), "commutative, n=5"),
    "plane-minus-one": (lambda: quantum_plane(-1), "quantum plane q_12 = -1"),
    "plane-two": (lambda: quantum_plane(2), "quantum plane q_12 = 2"),
    "plane-half": (lambda: quantum_plane(Fraction(1, 2)), "quantum plane q_12 = 1/2"),
    "minus-one-3": (lambda: uniform(3, -1), "q_ij = -1 for i != j, n=3"),
    "minus-one-4": (lambda: uniform(4, -1), "q_ij = -1 for i != j, n=4"),
    "uniform-two-4": (lambda: uniform(4, 2), "q_ij = 2 for i < j, n=4"),
    "mixed-blocks-5": (mixed_blocks, "blocks {1,2,3},{4,5}"),
    "cyclic-blocks-6": (lambda: cyclic_blocks([2, 2, 2]), "three cyclic blocks of size 2"),
    "signed-blocks-6": (lambda: signed_blocks([3, 3]), "+-1 pattern, two blocks of size 3"),
    "signed-blocks-7": (lambda: signed_blocks([2, 2, 3]), "+-1 pattern over runs 2,2,3 (blocks of sizes 5,2)"),
    "signed-blocks-8": (lambda: signed_blocks([4, 4]), "+-1 pattern, two blocks of size 4"),
    "cyclic-blocks-8": (lambda: cyclic_blocks([2, 2, 2, 2]), "four cyclic blocks of size 2"),
    "three-blocks-12": (three_blocks_12, "12x12, three cyclic blocks of size 4"),
    "plane-two-gf5": (lambda: quantum_plane(2, Field(5)), "quantum plane q_12 = 2 over GF(5)"),
    "plane-minus-one-gf3": (lambda: quantum_plane(2, Field(3)), "quantum plane q_12 = -1 over GF(3)"),
}


def fixture(name: str) -> QMatrix:
    try:
        return FIXTURES[name][0]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; choose from {sorted(FIXTURES)}") from None


def rational_fixtures() -> dict[str, QMatrix]:
    return {k: b() for k, (b, _) in FIXTURES.items() if b().field.is_rational}


def fixtures_over(p: int, n: int) -> dict[str, QMatrix]:
    """Every fixture of size n that lives in, or reduces validly to, GF(p)."""
    out = {}
    for name, (build, _) in FIXTURES.items():
        q = build()
        if q.n != n:
            continue
        if q.field == Field(p):
            out[name] = q
        elif q.field.is_rational:
            try:
                out[f"{name}-mod{p}"] = q.reduce_mod(p)
            except (FieldError, ValidationError):
                continue
    return out
