import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qspace.errors import NotInvertibleError, SchemaError
from qspace.matrix import FieldMatrix
from qspace.scalar import QQ, Field


def leibniz_det(rows, field):
    """Independent oracle: sum over permutations with sign by inversion count."""
    n = len(rows)
    total = field.zero
    for perm in itertools.permutations(range(n)):
        inversions = sum(perm[a] > perm[b] for a in range(n) for b in range(a + 1, n))
        term = field.one if inversions % 2 == 0 else -field.one
        for i in range(n):
            term = term * rows[i][perm[i]]
        total = total + term
    return total


entries = st.fractions(min_value=-20, max_value=20, max_denominator=7)


@st.composite
def rational_matrices(draw, max_n=4):
    n = draw(st.integers(1, max_n))
    return FieldMatrix(QQ, [[draw(entries) for _ in range(n)] for _ in range(n)])


@given(rational_matrices())
def test_det_matches_leibniz_over_q(m):
    assert m.det() == leibniz_det(m.rows, QQ)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_det_matches_leibniz_over_gf(p):
    f = Field(p)
    rng = random.Random(p)
    for _ in range(300):
        n = rng.randint(1, 4)
        m = FieldMatrix(f, [[rng.randrange(p) for _ in range(n)] for _ in range(n)])
        assert m.det() == leibniz_det(m.rows, f)


@given(rational_matrices())
def test_inverse(m):
    if m.det().is_zero():
        with pytest.raises(NotInvertibleError):
            m.inverse()
    else:
        ident = FieldMatrix.identity(m.n)
        assert m @ m.inverse() == ident and m.inverse() @ m == ident


@settings(max_examples=50)
@given(rational_matrices(3), rational_matrices(3))
def test_det_multiplicative(a, b):
    if a.n == b.n:
        assert (a @ b).det() == a.det() * b.det()


def test_indexing_is_one_based():
    m = FieldMatrix(QQ, [[1, 2], [3, 4]])
    assert m[1, 2] == 2 and m[2, 1] == 3
    assert m.T[1, 2] == 3
    with pytest.raises(IndexError):
        m[0, 1]


def test_json_round_trip_and_bare_arrays():
    m = FieldMatrix(QQ, [[Fraction(1, 2), -3], [0, 1]])
    assert FieldMatrix.from_json(m.to_json()) == m
    assert FieldMatrix.from_json([["1/2", "-3"], ["0", "1"]]) == m
    g = FieldMatrix.from_json([["4", "1"], ["0", "3"]], field=Field(5))
    assert g.field == Field(5) and g[1, 1].value == 4


@pytest.mark.parametrize(
    "bad",
    [
        [["1", "2"], ["3"]],
        {"field": "rational", "n": 2, "entries": [["1", "2"]]},
        {"field": {"prime": 4}, "n": 1, "entries": [["1"]]},
        [[1, 2], [3, 4]],
    ],
)
def test_schema_errors(bad):
    with pytest.raises((SchemaError, ValueError)):
        FieldMatrix.from_json(bad)


def test_nonzero_positions():
    m = FieldMatrix(QQ, [[0, 1], [2, 0]])
    assert sorted(m.nonzero_positions()) == [(1, 2), (2, 1)]
