import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from qspace import fixtures
from qspace.errors import CapExceededError, GroupError
from qspace.matrix import FieldMatrix
from qspace.membership import skeleton_all
from qspace.perm import (
    Permutation,
    PermGroup,
    compatible_group,
    identify_small_group,
    invariant_subgroup,
    is_compatible,
    permutation_matrix,
    quotient_cosets,
)
from qspace.scalar import QQ

SMALL = [name for name, (b, _) in fixtures.FIXTURES.items() if b().n <= 8]


def cyc(text, n):
    return Permutation.from_cycles(text, n)


def perm_set(texts, n):
    return {cyc(t, n) for t in texts}


# --- permutations -------------------------------------------------------------


def test_composition_applies_right_factor_first():
    a, b = cyc("(1,2)", 3), cyc("(2,3)", 3)
    assert (a * b)(2) == a(b(2)) == 3
    assert str(a * b) == "(1,2,3)"


def test_cycle_notation_round_trip():
    for p in itertools.permutations(range(1, 6)):
        pi = Permutation(p)
        assert Permutation.from_cycles(str(pi), 5) == pi
    assert str(Permutation.identity(4)) == "()"


def test_bad_permutations():
    with pytest.raises(ValueError):
        Permutation((1, 1, 2))
    with pytest.raises(ValueError):
        Permutation.from_cycles("(1,5)", 3)


def test_permutation_matrix_definition():
    assert permutation_matrix(Permutation.identity(3)) == FieldMatrix.identity(3)
    assert permutation_matrix(cyc("(1,2)", 2)) == FieldMatrix(QQ, [[0, 1], [1, 0]])
    pi = cyc("(1,3,2)", 3)
    r = permutation_matrix(pi)
    assert all((r[i, j] == 1) == (i == pi(j)) for i in range(1, 4) for j in range(1, 4))


def test_permutation_matrices_multiply_like_permutations():
    perms = [Permutation(p) for p in itertools.permutations(range(1, 5))]
    for a in perms:
        for b in perms:
            assert permutation_matrix(a) @ permutation_matrix(b) == permutation_matrix(a * b)


def test_skeleton_of_permutation_matrix_is_itself():
    for p in itertools.permutations(range(1, 5)):
        pi = Permutation(p)
        assert skeleton_all(permutation_matrix(pi)) == [pi]


# --- compatible permutations -------------------------------------------------


def test_is_compatible_examples():
    q1 = fixtures.swapped_pair()
    assert is_compatible(q1, cyc("(1,2)", 3))
    assert not is_compatible(q1, cyc("(1,3)", 3))
    for name in SMALL:
        q = fixtures.fixture(name)
        assert is_compatible(q, Permutation.identity(q.n))


def test_swapped_pair_group():
    assert set(compatible_group(fixtures.swapped_pair())) == perm_set(["()", "(1,2)"], 3)


def test_cyclic_triple_group():
    P = compatible_group(fixtures.cyclic_triple())
    assert set(P) == perm_set(["()", "(1,2,3)", "(1,3,2)"], 3)


def test_two_by_two_blocks_group():
    listed = ["()", "(1,2)", "(3,4)", "(1,2)(3,4)", "(1,4)(2,3)", "(1,3)(2,4)", "(1,4,2,3)", "(1,3,2,4)"]
    q = fixtures.two_by_two_blocks()
    P = compatible_group(q)
    assert set(P) == perm_set(listed, 4)
    I = invariant_subgroup(q, P)
    assert set(I) == perm_set(["()", "(1,2)", "(3,4)", "(1,2)(3,4)"], 4)


@pytest.mark.parametrize("n", range(1, 6))
def test_all_ones_gives_symmetric_group(n):
    q = fixtures.all_ones(n)
    P = compatible_group(q)
    assert P == PermGroup.symmetric(n)
    assert invariant_subgroup(q, P) == P


def test_distinct_rows_give_trivial_invariant_subgroup():
    for name in SMALL:
        q = fixtures.fixture(name)
        if all(s == 1 for s in q.block_decomposition().sizes):
            assert invariant_subgroup(q, compatible_group(q)).order == 1


def brute_force_compatible(q):
    n = q.n
    out = set()
    for p in itertools.permutations(range(1, n + 1)):
        if all(q[p[i - 1], p[j - 1]] == q[i, j] for i in range(1, n + 1) for j in range(1, n + 1)):
            out.add(Permutation(p))
    return out


@pytest.mark.parametrize("name", [n for n in SMALL if fixtures.fixture(n).n <= 6])
def test_compatible_group_matches_definition(name):
    q = fixtures.fixture(name)
    assert set(compatible_group(q)) == brute_force_compatible(q)


@pytest.mark.parametrize("name", SMALL)
def test_engines_agree(name):
    q = fixtures.fixture(name)
    naive = compatible_group(q, engine="naive")
    pruned = compatible_group(q, engine="pruned")
    assert naive.elements == pruned.elements


@pytest.mark.parametrize("name", SMALL)
def test_group_closure(name):
    P = compatible_group(fixtures.fixture(name))
    for a in P:
        assert a.inverse() in P
    if P.order <= 400:
        for a in P:
            for b in P:
                assert a * b in P


def test_search_caps():
    big = fixtures.all_ones(11)
    with pytest.raises(CapExceededError):
        compatible_group(big, engine="naive")
    with pytest.raises(CapExceededError):
        compatible_group(fixtures.all_ones(5), engine="pruned", cap=4)


def test_twelve_by_twelve_group():
    q = fixtures.three_blocks_12()
    P = compatible_group(q)
    I = invariant_subgroup(q, P)
    assert P.order == 3 * math.factorial(4) ** 3
    assert I.order == math.factorial(4) ** 3
    assert str(identify_small_group(quotient_cosets(P, I))) == "C_3"


# --- cosets and normality -----------------------------------------------------


def test_cosets_of_two_by_two_blocks():
    q = fixtures.two_by_two_blocks()
    P = compatible_group(q)
    C = quotient_cosets(P, invariant_subgroup(q, P))
    assert C.order == 2
    assert list(C.representatives) == [Permutation.identity(4), cyc("(1,3)(2,4)", 4)]


def test_trivial_quotient_and_trivial_subgroup():
    P = PermGroup.symmetric(3)
    C = quotient_cosets(P, P)
    assert C.order == 1 and list(C.representatives) == [Permutation.identity(3)]
    q2 = fixtures.cyclic_triple()
    P2 = compatible_group(q2)
    assert quotient_cosets(P2, invariant_subgroup(q2, P2)).order == 3


def test_non_normal_subgroup_is_rejected():
    S3 = PermGroup.symmetric(3)
    H = PermGroup.generated_by(3, [cyc("(1,2)", 3)])
    with pytest.raises(GroupError):
        quotient_cosets(S3, H)


@pytest.mark.parametrize("name", SMALL)
def test_invariant_subgroup_is_normal(name):
    q = fixtures.fixture(name)
    P = compatible_group(q)
    I = invariant_subgroup(q, P)
    gens = P.elements if P.order * I.order <= 10**6 else P.generators
    for s in gens:
        for p in I:
            assert s.inverse() * p * s in I


@pytest.mark.parametrize("name", [n for n in SMALL if fixtures.fixture(n).n <= 6])
def test_blocks_are_permuted_as_sets(name):
    q = fixtures.fixture(name)
    blocks = q.block_decomposition()
    b = blocks.block_of
    for pi in compatible_group(q):
        for i in range(1, q.n + 1):
            assert frozenset(pi(x) for x in blocks.block(i)) == blocks.block(pi(i))
            for j in range(1, q.n + 1):
                assert (b[i] == b[j]) == (b[pi(i)] == b[pi(j)])


# --- naming -------------------------------------------------------------------


def table_invariants(elements):
    """Oracle: abelian flag and element-order multiset from a full multiplication table."""
    elements = list(elements)
    ident = next(e for e in elements if e.is_identity())
    table = {(a, b): a * b for a in elements for b in elements}
    abelian = all(table[a, b] == table[b, a] for a in elements for b in elements)
    orders = []
    for a in elements:
        k, x = 1, a
        while x != ident:
            x, k = table[x, a], k + 1
        orders.append(k)
    return abelian, sorted(orders)


def q8():
    i = cyc("(1,2,3,4)(5,6,7,8)", 8)
    j = cyc("(1,5,3,7)(2,8,4,6)", 8)
    return PermGroup.generated_by(8, [i, j])


NAMED = [
    ("C_1", lambda: PermGroup.generated_by(3, [])),
    ("C_2", lambda: PermGroup.generated_by(2, [cyc("(1,2)", 2)])),
    ("C_3", lambda: PermGroup.generated_by(3, [cyc("(1,2,3)", 3)])),
    ("C_4", lambda: PermGroup.generated_by(4, [cyc("(1,2,3,4)", 4)])),
    ("C_2^2", lambda: PermGroup.generated_by(4, [cyc("(1,2)", 4), cyc("(3,4)", 4)])),
    ("C_5", lambda: PermGroup.generated_by(5, [cyc("(1,2,3,4,5)", 5)])),
    ("C_6", lambda: PermGroup.generated_by(5, [cyc("(1,2,3)(4,5)", 5)])),
    ("S_3", lambda: PermGroup.symmetric(3)),
    ("C_7", lambda: PermGroup.generated_by(7, [cyc("(1,2,3,4,5,6,7)", 7)])),
    ("C_8", lambda: PermGroup.generated_by(8, [cyc("(1,2,3,4,5,6,7,8)", 8)])),
    ("C_4 × C_2", lambda: PermGroup.generated_by(6, [cyc("(1,2,3,4)", 6), cyc("(5,6)", 6)])),
    ("C_2^3", lambda: PermGroup.generated_by(6, [cyc("(1,2)", 6), cyc("(3,4)", 6), cyc("(5,6)", 6)])),
    ("D_8", lambda: PermGroup.generated_by(4, [cyc("(1,2,3,4)", 4), cyc("(1,3)", 4)])),
    ("Q_8", q8),
]


@pytest.mark.parametrize("name, build", NAMED, ids=[n for n, _ in NAMED])
def test_small_group_names(name, build):
    G = build()
    assert str(identify_small_group(G)) == name
    assert identify_small_group(G).order == G.order


def test_named_groups_have_distinct_table_invariants():
    seen = {}
    for name, build in NAMED:
        G = build()
        key = (G.order,) + tuple(map(str, table_invariants(G)))
        assert key not in seen, (name, seen.get(key))
        seen[key] = name
    assert table_invariants(q8())[0] is False


def test_two_by_two_blocks_names():
    q = fixtures.two_by_two_blocks()
    P = compatible_group(q)
    I = invariant_subgroup(q, P)
    abelian, orders = table_invariants(P)
    assert not abelian and orders.count(4) == 2 and orders.count(2) == 5
    assert str(identify_small_group(P)) == "D_8"
    assert str(identify_small_group(I)) == "C_2^2"
    assert str(identify_small_group(quotient_cosets(P, I))) == "C_2"


def test_large_groups_are_described_by_order():
    name = identify_small_group(PermGroup.symmetric(4))
    assert str(name) == "group of order 24"
    gens = [Permutation.from_cycles(g, 4) for g in name.generators]
    assert PermGroup.generated_by(4, gens) == PermGroup.symmetric(4)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(NAMED), st.data())
def test_naming_is_invariant_under_relabeling(named, data):
    name, build = named
    G = build()
    sigma = Permutation(tuple(data.draw(st.permutations(range(1, G.n + 1)))))
    assert str(identify_small_group(G.conjugate(sigma))) == name
