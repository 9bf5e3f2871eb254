"""Acceptance criteria, one marker per criterion.

A summary line per criterion is printed at the end of the pytest run.
"""

import json
import math
import random
import time
from functools import lru_cache

import pytest

from qspace import fixtures
from qspace.cli import bench_naive, main
from qspace.membership import is_member
from qspace.oq_algebra import relations_preserved
from qspace.perm import Permutation, PermGroup, compatible_group
from qspace.report import analyze, census
from qspace.scalar import Field
from qspace.sweep import (
    all_matrices,
    check_block_images,
    check_block_relation,
    check_normality,
    run_sweep,
)


def perm_set(texts, n):
    return {Permutation.from_cycles(t, n) for t in texts}


# 1 -----------------------------------------------------------------------------

LISTED_P = ["()", "(1,2)", "(3,4)", "(1,2)(3,4)", "(1,4)(2,3)", "(1,3)(2,4)", "(1,4,2,3)", "(1,3,2,4)"]
LISTED_I = ["()", "(1,2)", "(3,4)", "(1,2)(3,4)"]


@pytest.mark.criterion(1)
def test_two_by_two_blocks_reproduction():
    t0 = time.perf_counter()
    r = analyze(fixtures.two_by_two_blocks())
    elapsed = time.perf_counter() - t0
    assert r.blocks.to_json() == [[1, 2], [3, 4]]
    assert r.p_order == 8 and set(r.P) == perm_set(LISTED_P, 4)
    assert r.i_order == 4 and set(r.I) == perm_set(LISTED_I, 4)
    assert r.quotient_order == 2 and r.quotient_name == "C_2"
    assert r.structure == "(GL_2 × GL_2) ⋊ C_2"
    assert elapsed < 1.0


# 2 -----------------------------------------------------------------------------


@pytest.mark.criterion(2)
def test_swapped_pair_compatible_set():
    assert set(compatible_group(fixtures.swapped_pair(2))) == perm_set(["()", "(1,2)"], 3)


@pytest.mark.criterion(2)
def test_cyclic_triple_compatible_set():
    assert set(compatible_group(fixtures.cyclic_triple(2))) == perm_set(["()", "(1,2,3)", "(1,3,2)"], 3)


# 3 -----------------------------------------------------------------------------


@pytest.mark.criterion(3)
@pytest.mark.parametrize("n", range(1, 6))
def test_commutative_case(n):
    r = analyze(fixtures.all_ones(n))
    assert r.structure == f"GL_{n}(k)"
    assert r.P == r.I == PermGroup.symmetric(n)


# 4 -----------------------------------------------------------------------------

DISTINCT_ROWS = [
    name for name, (build, _) in fixtures.FIXTURES.items() if all(b == 1 for b in build().block_decomposition().sizes)
]


@pytest.mark.criterion(4)
@pytest.mark.parametrize("name", DISTINCT_ROWS)
def test_distinct_rows(name):
    r = analyze(fixtures.fixture(name))
    assert r.i_order == 1
    assert r.quotient_order == r.p_order and r.quotient_name == r.p_name
    if r.n == 1:
        # one singleton block is also the commutative case; GL_1(k) is k*
        assert r.structure == "GL_1(k)"
        return
    rendered = r.p_name if r.p_order <= 8 else f"Q(order {r.p_order})"
    assert r.structure == f"(k*)^{r.n} ⋊ {rendered}"


def test_distinct_rows_cases_exist():
    assert {"swapped-pair", "cyclic-triple", "plane-two"} <= set(DISTINCT_ROWS)


# 5 -----------------------------------------------------------------------------

CENSUS_CASES = {
    "n=2 q12=-1 p=3": (lambda: fixtures.quantum_plane(-1, Field(3)), 8),
    "n=2 q12=2 p=5": (lambda: fixtures.quantum_plane(2, Field(5)), 16),
    "4x4 +-1 matrix p=2": (lambda: fixtures.two_by_two_blocks().reduce_mod(2), 72),
}


@lru_cache(maxsize=None)
def census_case(label):
    t0 = time.perf_counter()
    result = census(CENSUS_CASES[label][0]())
    return result, time.perf_counter() - t0


@pytest.mark.criterion(5)
@pytest.mark.parametrize("label", CENSUS_CASES)
def test_census_counted_equals_predicted(label):
    result, _ = census_case(label)
    assert result.counted_members == result.predicted


@pytest.mark.criterion(5)
@pytest.mark.parametrize("label", CENSUS_CASES)
def test_census_stated_value(label):
    result, _ = census_case(label)
    assert result.counted_members == CENSUS_CASES[label][1], result.to_json()


@pytest.mark.criterion(5)
def test_census_runtime():
    assert sum(census_case(label)[1] for label in CENSUS_CASES) < 30


# 6 -----------------------------------------------------------------------------

ORACLE_CASES = [(p, n, name) for p in (2, 3) for n in (2, 3) for name in sorted(fixtures.fixtures_over(p, n))]


@pytest.mark.criterion(6)
@pytest.mark.parametrize("p, n, name", ORACLE_CASES)
def test_oracle_equivalence_exhaustive(p, n, name):
    q = fixtures.fixtures_over(p, n)[name]
    disagreements = 0
    count = 0
    for m in all_matrices(q):
        count += 1
        if is_member(q, m) != (relations_preserved(q, m) and m.is_invertible()):
            disagreements += 1
    assert count == p ** (n * n)
    assert disagreements == 0


# 7 -----------------------------------------------------------------------------

SWEEP_FIXTURES = ["two-by-two-blocks", "swapped-pair", "cyclic-triple", "plane-two-gf5", "plane-minus-one-gf3"]
SWEEP_SAMPLES = 1000


@lru_cache(maxsize=None)
def sweep(name):
    return run_sweep(fixtures.fixture(name), samples=SWEEP_SAMPLES, seed=2024)


@pytest.mark.criterion(7)
@pytest.mark.parametrize("name", SWEEP_FIXTURES)
def test_property_sweep(name):
    checks = sweep(name)
    assert all(c.passed for c in checks), [c.line() for c in checks if not c.passed]


@pytest.mark.criterion(7)
@pytest.mark.parametrize("name", ["two-by-two-blocks", "swapped-pair", "cyclic-triple"])
def test_sampled_checks_reach_a_thousand(name):
    counts = {c.name: c.cases for c in sweep(name)}
    for key in (
        "transpose closure",
        "members closed under product and inverse",
        "skeletons of members are compatible",
        "block-diagonal subgroup is stable under conjugation",
        "members factor as r_sigma times block-diagonal",
        "gamma is a homomorphism",
    ):
        assert counts[key] >= 1000, (key, counts[key])


@pytest.mark.criterion(7)
@pytest.mark.parametrize("name", ["plane-minus-one-gf3", "plane-two-gf5"])
def test_gamma_kernel_is_census_exhaustive(name):
    q = fixtures.fixture(name)
    members = sum(1 for m in all_matrices(q) if is_member(q, m))
    kernel = {c.name: c.cases for c in sweep(name)}["gamma kernel is the block-diagonal subgroup"]
    assert kernel == members == census(q).counted_members


SMALL = [name for name, (build, _) in fixtures.FIXTURES.items() if build().n <= 6]


@pytest.mark.criterion(7)
@pytest.mark.parametrize("name", SMALL)
def test_blocks_and_normality_exhaustive(name):
    q = fixtures.fixture(name)
    r = analyze(q)
    rng = random.Random(0)
    for check in (check_block_images(q, r, rng), check_block_relation(q, r, rng), check_normality(q, r)):
        assert check.passed, check.line()
    assert r.P.order <= 5000


# 8 -----------------------------------------------------------------------------

UP_TO_8 = [name for name, (build, _) in fixtures.FIXTURES.items() if build().n <= 8]


@pytest.mark.criterion(8)
@pytest.mark.parametrize("name", UP_TO_8)
def test_engines_agree(name):
    q = fixtures.fixture(name)
    assert compatible_group(q, engine="naive").elements == compatible_group(q, engine="pruned").elements


@lru_cache(maxsize=None)
def twelve_by_twelve():
    q = fixtures.three_blocks_12()
    t0 = time.perf_counter()
    P = compatible_group(q, engine="pruned")
    pruned = time.perf_counter() - t0
    naive = bench_naive(q, 200_000)
    return P, pruned, naive


@pytest.mark.criterion(8)
def test_twelve_by_twelve_pruned_time():
    P, pruned, _ = twelve_by_twelve()
    assert P.order == 3 * math.factorial(4) ** 3
    assert pruned < 5.0


@pytest.mark.criterion(8)
def test_twelve_by_twelve_naive_projection():
    _, pruned, naive = twelve_by_twelve()
    assert naive["projected"] and naive["scanned"] == 200_000
    assert naive["seconds"] > 10 * pruned


@pytest.mark.criterion(8)
def test_bench_command_shows_gap(capsys):
    assert main(["bench", "fixture:three-blocks-12", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["naive_over_pruned"] > 10
